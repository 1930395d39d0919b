"""Exact 3-dimensional Hermitian linear algebra over the cyclotomic field.

Convention: vectors are columns, the form pairs as
    inner(x, y) = conj(y)^T H x,
linear in the first argument and conjugate-linear in the second.  With the
catalog's generator matrices this is the pairing they preserve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import Cyclotomic, rational
from .errors import ClassificationError, VerificationError

_ZERO = rational(0)
_ONE = rational(1)


@dataclass(frozen=True)
class Vec3:
    entries: tuple

    def __post_init__(self):
        assert len(self.entries) == 3

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other):
        return Vec3(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return Vec3(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c):
        return Vec3(tuple(a * c for a in self.entries))

    def conjugate(self):
        return Vec3(tuple(a.conjugate() for a in self.entries))

    def is_zero(self):
        return all(a.is_zero() for a in self.entries)

    def first_nonzero(self):
        for i, a in enumerate(self.entries):
            if not a.is_zero():
                return i, a
        return None, None

    def proportional_to(self, other: "Vec3") -> bool:
        """Projective equality (nonzero scalar multiple)."""
        i, a = self.first_nonzero()
        j, b = other.first_nonzero()
        if i is None or j is None:
            return i == j
        if i != j:
            return False
        lam = a / b
        return all(x == y * lam for x, y in zip(self.entries, other.entries))

    def __str__(self):
        return "[" + ", ".join(str(a) for a in self.entries) + "]"


def vec(a, b, c) -> Vec3:
    return Vec3((_as_cyclo(a), _as_cyclo(b), _as_cyclo(c)))


def _as_cyclo(x):
    if isinstance(x, Cyclotomic):
        return x
    return rational(x)


E1 = vec(1, 0, 0)
E2 = vec(0, 1, 0)
E3 = vec(0, 0, 1)


@dataclass(frozen=True)
class Mat3:
    rows: tuple

    def __post_init__(self):
        assert len(self.rows) == 3 and all(len(r) == 3 for r in self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, Vec3):
            return Vec3(tuple(
                sum((self.rows[i][k] * other.entries[k] for k in range(3)), _ZERO)
                for i in range(3)))
        if isinstance(other, Mat3):
            return Mat3(tuple(
                tuple(sum((self.rows[i][k] * other.rows[k][j] for k in range(3)), _ZERO)
                      for j in range(3))
                for i in range(3)))
        return NotImplemented

    def __add__(self, other):
        return Mat3(tuple(tuple(a + b for a, b in zip(r, s))
                          for r, s in zip(self.rows, other.rows)))

    def scale(self, c):
        c = _as_cyclo(c)
        return Mat3(tuple(tuple(a * c for a in r) for r in self.rows))

    def transpose(self):
        return Mat3(tuple(tuple(self.rows[j][i] for j in range(3)) for i in range(3)))

    def conjugate(self):
        return Mat3(tuple(tuple(a.conjugate() for a in r) for r in self.rows))

    def conj_transpose(self):
        return self.conjugate().transpose()

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def det(self):
        r = self.rows
        return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))

    def adjugate(self):
        r = self.rows

        def cof(i, j):
            rows = [k for k in range(3) if k != i]
            cols = [k for k in range(3) if k != j]
            m = (r[rows[0]][cols[0]] * r[rows[1]][cols[1]]
                 - r[rows[0]][cols[1]] * r[rows[1]][cols[0]])
            return m if (i + j) % 2 == 0 else -m

        return Mat3(tuple(tuple(cof(j, i) for j in range(3)) for i in range(3)))

    def inverse(self):
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        return self.adjugate().scale(d.inverse())

    def power(self, k: int):
        if k < 0:
            return self.inverse().power(-k)
        out = identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def is_scalar(self):
        r = self.rows
        if not (r[0][1].is_zero() and r[0][2].is_zero() and r[1][0].is_zero()
                and r[1][2].is_zero() and r[2][0].is_zero() and r[2][1].is_zero()):
            return False
        return r[0][0] == r[1][1] == r[2][2]

    def first_nonzero(self):
        for i in range(3):
            for j in range(3):
                if not self.rows[i][j].is_zero():
                    return (i, j), self.rows[i][j]
        return None, None

    def proportional_to(self, other: "Mat3") -> bool:
        ij, a = self.first_nonzero()
        kl, b = other.first_nonzero()
        if ij is None or kl is None:
            return ij == kl
        if ij != kl:
            return False
        lam = a / b
        return all(self.rows[i][j] == other.rows[i][j] * lam
                   for i in range(3) for j in range(3))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"


def mat(rows) -> Mat3:
    return Mat3(tuple(tuple(_as_cyclo(x) for x in r) for r in rows))


def identity() -> Mat3:
    return mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def proportional(a: Mat3, b: Mat3) -> bool:
    return a.proportional_to(b)


class HermitianForm:
    """A Hermitian 3x3 form; the signature is computed exactly on demand."""

    def __init__(self, matrix: Mat3):
        if matrix != matrix.conj_transpose():
            raise VerificationError("matrix is not Hermitian")
        self.matrix = matrix
        self._signature = None

    def inner(self, x: Vec3, y: Vec3) -> Cyclotomic:
        hx = self.matrix * x
        yc = y.conjugate()
        return sum((yc.entries[i] * hx.entries[i] for i in range(3)), _ZERO)

    def norm_sq(self, x: Vec3) -> Cyclotomic:
        return self.inner(x, x)

    def preserves(self, m: Mat3) -> bool:
        return m.conj_transpose() * self.matrix * m == self.matrix

    @property
    def signature(self):
        if self._signature is None:
            self._signature = _signature_of(self.matrix)
        return self._signature


def inner(h: HermitianForm, x: Vec3, y: Vec3) -> Cyclotomic:
    return h.inner(x, y)


def _signature_of(matrix: Mat3):
    """Inertia (pos, null, neg) by conjugate-congruence diagonalization."""
    # Work on a mutable copy of the Gram matrix of basis vectors.
    basis = [list(r) for r in identity().rows]

    def gram(u, v):
        # <u, v> for coordinate lists
        total = _ZERO
        for i in range(3):
            for j in range(3):
                total = total + v[i].conjugate() * matrix.rows[i][j] * u[j]
        return total

    vectors = [Vec3(tuple(b)) for b in basis]
    pos = neg = null = 0
    remaining = [list(v.entries) for v in vectors]
    while remaining:
        # find a vector with nonzero self-pairing, possibly after mixing
        pivot_idx = None
        for idx, v in enumerate(remaining):
            if not gram(v, v).is_zero():
                pivot_idx = idx
                break
        if pivot_idx is None:
            # all self-pairings vanish; mix a hyperbolic pair if any pairing
            # is nonzero, else the rest is the radical
            mixed = False
            for i in range(len(remaining)):
                for j in range(i + 1, len(remaining)):
                    c = gram(remaining[i], remaining[j])
                    if not c.is_zero():
                        remaining[i] = [a + c * b for a, b in
                                        zip(remaining[i], remaining[j])]
                        mixed = True
                        break
                if mixed:
                    break
            if not mixed:
                null += len(remaining)
                break
            continue
        v = remaining.pop(pivot_idx)
        d = gram(v, v)
        if d.real_sign() > 0:
            pos += 1
        else:
            neg += 1
        dinv = d.inverse()
        for k, w in enumerate(remaining):
            c = gram(w, v) * dinv
            remaining[k] = [a - c * b for a, b in zip(w, v)]
    return (pos, null, neg)


def signature(h: HermitianForm):
    return h.signature


def box(u1: Vec3, u2: Vec3, h: HermitianForm) -> Vec3:
    """Vector orthogonal to both inputs: the mirrors' projective meet."""
    a = (h.matrix * u1).conjugate()
    b = (h.matrix * u2).conjugate()
    out = Vec3((
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ))
    if out.is_zero():
        raise VerificationError("box product of proportional vectors")
    return out


def point_position(h: HermitianForm, x: Vec3) -> str:
    """Position of the projective point: 'negative', 'null' or 'positive'."""
    if x.is_zero():
        raise VerificationError("zero vector has no position")
    s = h.norm_sq(x).real_sign()
    return "negative" if s < 0 else ("null" if s == 0 else "positive")


def cosh_half_dist_sq(h: HermitianForm, x: Vec3, y: Vec3) -> Cyclotomic:
    """cosh^2 of half the distance between two negative points, exactly."""
    nx = h.norm_sq(x)
    ny = h.norm_sq(y)
    if nx.real_sign() >= 0 or ny.real_sign() >= 0:
        raise VerificationError("distance needs negative vectors")
    ip = h.inner(x, y)
    return (ip * ip.conjugate()) / (nx * ny)


def mirror_relation(h: HermitianForm, u1: Vec3, u2: Vec3):
    """How two mirrors with positive polar vectors meet.

    Returns ('intersecting', cos^2 alpha) / ('asymptotic', None) /
    ('ultraparallel', None).  The classification by the quotient
    |<u1,u2>|^2 / (|u1|^2 |u2|^2) against 1 is cross-checked against the
    sign of the box product's self-pairing.
    """
    n1 = h.norm_sq(u1)
    n2 = h.norm_sq(u2)
    if n1.real_sign() <= 0 or n2.real_sign() <= 0:
        raise VerificationError("mirror polars must be positive vectors")
    ip = h.inner(u1, u2)
    csq = (ip * ip.conjugate()) / (n1 * n2)
    cmp1 = (csq - rational(1)).real_sign()
    bx = box(u1, u2, h)
    bsign = h.norm_sq(bx).real_sign()
    if cmp1 < 0:
        kind = "intersecting"
        expect = -1
    elif cmp1 == 0:
        kind = "asymptotic"
        expect = 0
    else:
        kind = "ultraparallel"
        expect = 1
    if bsign != expect:
        raise VerificationError(
            f"mirror relation mismatch: cos^2 test says {kind}, box norm sign {bsign}")
    return (kind, csq if kind == "intersecting" else None)
