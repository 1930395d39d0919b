"""Exact classification of form-preserving matrices and braid machinery.

Every matrix handled here is expected to lie in SU(H) for a signature
(2,1) form H; reflections and their centers are detected through the exact
eigenvalue structure, loxodromics through the sign of the trace
discriminant, so no numerical tolerance enters any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclo import Cyclotomic, rational
from .errors import ClassificationError
from .forms import HermitianForm, Mat3, Vec3, box, identity
from . import words

INF = math.inf

REGULAR_ELLIPTIC = "regular_elliptic"
COMPLEX_REFLECTION = "complex_reflection"
POINT_REFLECTION = "point_reflection"
PARABOLIC = "parabolic"
LOXODROMIC = "loxodromic"

DEFAULT_ORDER_CAP = 200


@dataclass(frozen=True)
class IsometryClass:
    kind: str
    order: float  # positive integer or math.inf
    mirror_polar: Vec3 | None = None
    fixed_point: Vec3 | None = None
    multiplier: Cyclotomic | None = None

    def is_reflection(self) -> bool:
        return self.kind == COMPLEX_REFLECTION


def _char_poly(m: Mat3):
    """Coefficients (c0, c1, c2) of t^3 + c2 t^2 + c1 t + c0."""
    tr = m.trace()
    tr2 = (m * m).trace()
    s2 = (tr * tr - tr2) / rational(2)
    det = m.det()
    return (-det, s2, -tr)


def _poly_gcd(a, b):
    """Monic gcd of polynomials over the cyclotomic field (ascending coeffs)."""

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if not p[i].is_zero():
                return i
        return -1

    def rem(p, q):
        p = list(p)
        dq = deg(q)
        lead = q[dq]
        while deg(p) >= dq >= 0:
            dp = deg(p)
            c = p[dp] / lead
            for j in range(dq + 1):
                p[dp - dq + j] = p[dp - dq + j] - c * q[j]
        return p

    while deg(b) >= 0:
        a, b = b, rem(a, b)
    d = deg(a)
    if d < 0:
        return [rational(0)]
    lead = a[d]
    return [c / lead for c in a[:d + 1]]


def _kernel_basis(m: Mat3) -> list[Vec3]:
    """Basis of the kernel by fraction-free Gaussian elimination."""
    rows = [list(r) for r in m.rows]
    pivots = []
    col = 0
    r = 0
    pivot_cols = []
    while r < 3 and col < 3:
        pivot = None
        for i in range(r, 3):
            if not rows[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(3):
            if i != r and not rows[i][col].is_zero():
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        col += 1
    free = [c for c in range(3) if c not in pivot_cols]
    basis = []
    zero = rational(0)
    one = rational(1)
    for f in free:
        v = [zero, zero, zero]
        v[f] = one
        for i, pc in enumerate(pivot_cols):
            v[pc] = -rows[i][f]
        basis.append(Vec3(tuple(v)))
    return basis


def _scalar_order(z: Cyclotomic, cap: int) -> float:
    power = z
    one = rational(1)
    for k in range(1, cap + 1):
        if power == one:
            return k
        power = power * z
    return INF


def classify(m: Mat3, h: HermitianForm, cap: int = DEFAULT_ORDER_CAP) -> IsometryClass:
    """Exact isometry class of a determinant-1 form-preserving matrix."""
    if not h.preserves(m):
        raise ClassificationError("matrix does not preserve the form")
    one = rational(1)
    if m.det() != one:
        raise ClassificationError("classification expects det = 1")
    if m.is_scalar():
        # projective identity; by convention an elliptic element of order 1
        return IsometryClass(REGULAR_ELLIPTIC, 1)
    c0, c1, c2 = _char_poly(m)
    chi = [c0, c1, c2, one]
    dchi = [c1, c2 * rational(2), rational(3)]
    g = _poly_gcd(chi, dchi)
    gdeg = len(g) - 1
    if gdeg == 0:
        # distinct eigenvalues: regular elliptic or loxodromic, decided by
        # the sign of the trace discriminant
        tau = m.trace()
        taub = tau.conjugate()
        t2 = tau * taub
        f = t2 * t2 - rational(4) * (tau ** 3 + taub ** 3) + rational(18) * t2 - rational(27)
        s = f.real_sign()
        if s < 0:
            return IsometryClass(REGULAR_ELLIPTIC, _matrix_order(m, cap))
        if s > 0:
            return IsometryClass(LOXODROMIC, INF)
        raise ClassificationError("vanishing discriminant with simple spectrum")
    if gdeg == 1:
        lam = -g[0]
    else:
        # triple eigenvalue
        lam = -c2 / rational(3)
    mlam = m + identity().scale(-lam)
    kernel = _kernel_basis(mlam)
    if len(kernel) == 1:
        return IsometryClass(PARABOLIC, INF)
    if len(kernel) == 3:
        raise ClassificationError("scalar matrix slipped through")
    if gdeg == 2:
        # triple eigenvalue but not scalar
        return IsometryClass(PARABOLIC, INF)
    # two-dimensional eigenspace: reflection in a line or in a point
    mu = -c2 - lam - lam
    other = _kernel_basis(m + identity().scale(-mu))
    if len(other) != 1:
        raise ClassificationError("unexpected eigenspace structure")
    v = other[0]
    vsign = h.norm_sq(v).real_sign()
    multiplier = mu / lam
    if vsign > 0:
        order = _scalar_order(multiplier, cap)
        return IsometryClass(COMPLEX_REFLECTION, order, mirror_polar=v,
                             multiplier=multiplier)
    if vsign < 0:
        order = _scalar_order(multiplier, cap)
        return IsometryClass(POINT_REFLECTION, order, fixed_point=v)
    raise ClassificationError("repeated-eigenvalue element with null eigenvector")


def _matrix_order(m: Mat3, cap: int) -> float:
    power = m
    for k in range(1, cap + 1):
        if power.is_scalar():
            return k
        power = power * m
    return INF


def order(m: Mat3, h: HermitianForm, cap: int = DEFAULT_ORDER_CAP) -> float:
    """Projective order (least k with m^k scalar), or math.inf."""
    cls = classify(m, h, cap=cap)
    return cls.order


def braids(a: Mat3, b: Mat3, nmax: int = 16):
    """Least n <= nmax with (ab)^{n/2} = (ba)^{n/2} projectively, else None."""
    s = identity()
    t = identity()
    for n in range(1, nmax + 1):
        s = s * (a if n % 2 == 1 else b)
        t = t * (b if n % 2 == 1 else a)
        if s.proportional_to(t):
            return n
    return None


def braid_holds(a: Mat3, b: Mat3, n: int) -> bool:
    s = identity()
    t = identity()
    for k in range(1, n + 1):
        s = s * (a if k % 2 == 1 else b)
        t = t * (b if k % 2 == 1 else a)
    return s.proportional_to(t)


def center_element(a: Mat3, b: Mat3, n: int, h: HermitianForm,
                   cap: int = DEFAULT_ORDER_CAP):
    """The braid center Z ((ab)^n for odd n, (ab)^{n/2} for even) and its class.

    Verifies br_n(a,b), the commutation of Z with both factors, and the
    agreement of the classification of Z with the sign of the box product
    of the two mirror polars.  A projectively trivial Z is reported with
    kind 'regular_elliptic' and order 1; the trichotomy is vacuous there.
    """
    if not braid_holds(a, b, n):
        raise ClassificationError(f"braid relation of length {n} fails")
    ca = classify(a, h, cap=cap)
    cb = classify(b, h, cap=cap)
    if not (ca.is_reflection() and cb.is_reflection()):
        raise ClassificationError("center element needs two complex reflections")
    if ca.mirror_polar.proportional_to(cb.mirror_polar):
        raise ClassificationError("mirrors must be distinct")
    ab = a * b
    z = ab.power(n) if n % 2 == 1 else ab.power(n // 2)
    if not (z * a).proportional_to(a * z) or not (z * b).proportional_to(b * z):
        raise ClassificationError("center fails to commute with the factors")
    cz = classify(z, h, cap=cap)
    x = box(ca.mirror_polar, cb.mirror_polar, h)
    sign = h.norm_sq(x).real_sign()
    expected = {1: COMPLEX_REFLECTION, 0: PARABOLIC, -1: POINT_REFLECTION}[sign]
    degenerate = z.is_scalar()
    consistent = degenerate or cz.kind == expected
    return z, cz, sign, consistent


def reflection_conjugacy_witness(wa: words.Word, wb: words.Word, n: int, g):
    """For odd braid length n, the word (wa wb)^{-(n-1)/2} conjugating a to b.

    Checks the matrix identity b = c^{-1} a c projectively and returns the
    conjugator word c.
    """
    if n % 2 != 1:
        raise ClassificationError("witness only exists for odd braid length")
    if n == 1:
        return words.IDENTITY_WORD
    k = (n - 1) // 2
    conj_word = words.Word((words.Power(wa * wb, -k),))
    a = words.evaluate(wa, g)
    b = words.evaluate(wb, g)
    c = words.evaluate(conj_word, g)
    # b = c^{-1} a c, i.e. b = (ab)^k a (ab)^{-k}
    if not (c.inverse() * a * c).proportional_to(b):
        raise ClassificationError("conjugacy witness identity fails")
    return conj_word
