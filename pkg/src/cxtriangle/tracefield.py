"""Trace fields of restricted mirror stabilizers and triangle arithmeticity.

The field Q(Tr^2) of a mirror stabilizer is generated by the values
tr(M)^2/det(M) of the restricted matrices; that quotient is invariant
under rescaling M, so no determinant-1 lift (and no square root) is ever
needed.  Field arithmetic is exact; the word enumeration walks a numeric
shadow of the group and recomputes every new sample exactly.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import stabilizer as _stab
from .catalog import FuchsianSignature, GroupInstance, StabilizerRow
from .cyclo import (Cyclotomic, FieldDescriptor, contains_element,
                    contains_named_sqrt, field_generated, parse_value,
                    rational, root_of_unity)
from .errors import VerificationError

INF = math.inf


@dataclass(frozen=True)
class TraceSample:
    word: str
    trace_sq: Cyclotomic


@dataclass
class TraceFieldResult:
    field: FieldDescriptor
    samples: list
    degrees_by_length: list
    stabilized: bool
    exhausted: bool   # search explored the full ball up to max_len

    @property
    def degree(self):
        return self.field.degree


def trace_field(g: GroupInstance, row: StabilizerRow, max_len: int = 8,
                budget: int = 24_000) -> TraceFieldResult:
    """Field generated by tr^2/det over words of length <= max_len.

    The Cayley ball is walked through a numeric shadow (projective
    fingerprints); each new trace value is recomputed exactly and the field
    is tracked through a small core of samples that actually enlarge it.
    Stabilization = the field did not grow between the last two completely
    enumerated lengths; it is reported, never assumed.  `exhausted` records
    whether the ball of radius max_len was fully explored within budget.
    """
    f = _stab.frame_for_row(g, row)
    exact_gens = []
    for w in row.generator_words:
        m = g.evaluate(w)
        exact_gens.append(_stab.restrict(m, f))
    alphabet = []
    for a2 in exact_gens:
        alphabet.append(a2)
        alphabet.append(_stab._inv2(a2))

    num_alpha = []
    for a2 in alphabet:
        m = ((complex(a2[0][0]), complex(a2[0][1])),
             (complex(a2[1][0]), complex(a2[1][1])))
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        s = cmath.sqrt(det)
        num_alpha.append(((m[0][0] / s, m[0][1] / s), (m[1][0] / s, m[1][1] / s)))

    def exact_sample(word) -> Cyclotomic:
        prod = None
        for i in word:
            prod = alphabet[i] if prod is None else _stab._mul2(prod, alphabet[i])
        tr = _stab.restricted_trace(prod)
        det = _stab.restricted_det(prod)
        return tr * tr / det

    samples: list[TraceSample] = []
    core: list[Cyclotomic] = []
    current = field_generated([])
    sample_keys = set()
    degrees = []
    seen = {(1.0, 0.0, 0.0, 1.0)}
    frontier = [(((1 + 0j, 0j), (0j, 1 + 0j)), ())]
    total = 0
    exhausted = True

    def take_sample(word):
        nonlocal current
        value = exact_sample(word)
        if not value.is_real():
            raise VerificationError(
                "non-real trace-square sample: restriction is broken")
        samples.append(TraceSample("*".join(map(str, word)), value))
        if not contains_element(current, value):
            core.append(value)
            current = field_generated(core)

    for _level in range(max_len):
        new = []
        for m, word in frontier:
            for idx, a in enumerate(num_alpha):
                if word and (word[-1] ^ 1) == idx:
                    continue
                p00 = m[0][0] * a[0][0] + m[0][1] * a[1][0]
                p01 = m[0][0] * a[0][1] + m[0][1] * a[1][1]
                p10 = m[1][0] * a[0][0] + m[1][1] * a[1][0]
                p11 = m[1][0] * a[0][1] + m[1][1] * a[1][1]
                key = (round(p00.real, 6), round(p00.imag, 6),
                       round(p01.real, 6), round(p01.imag, 6),
                       round(p10.real, 6), round(p10.imag, 6),
                       round(p11.real, 6), round(p11.imag, 6))
                nkey = tuple(-x for x in key)
                if key in seen or nkey in seen:
                    continue
                seen.add(key)
                total += 1
                if total > budget:
                    exhausted = False
                    break
                nword = word + (idx,)
                new.append((((p00, p01), (p10, p11)), nword))
                tr = p00 + p11
                t = tr * tr  # det-normalized
                tkey = (round(t.real, 8), round(abs(t.imag), 8))
                if tkey not in sample_keys:
                    sample_keys.add(tkey)
                    take_sample(nword)
            if not exhausted:
                break
        if not exhausted:
            break
        degrees.append(current.degree)
        frontier = new
    stabilized = len(degrees) >= 2 and degrees[-1] == degrees[-2]
    return TraceFieldResult(current, samples, degrees, stabilized, exhausted)


def _fields_equal(a: FieldDescriptor, b: FieldDescriptor) -> bool:
    return a.conductor == b.conductor and a.fixing_set == b.fixing_set


# ---------------------------------------------------------------------------
# matching computed fields against the table's claims


def match_field_claim(result: TraceFieldResult, spec: dict):
    """Compare a computed trace field with a claimed one.

    Returns (status, details) where status is 'pass', 'fail' or
    'degree_match' (for claims only checkable up to degree).
    """
    f = result.field
    kind = spec["type"]
    if kind == "Q":
        ok = f.degree == 1
        return ("pass" if ok else "fail", f"degree {f.degree}")
    if kind == "sqrt":
        ds = spec["ds"]
        expected_degree = 2 ** len(ds)
        if f.degree != expected_degree:
            return ("fail", f"degree {f.degree} != {expected_degree}")
        missing = [d for d in ds if not contains_named_sqrt(f, d)]
        if missing:
            return ("fail", f"missing sqrt of {missing}")
        return ("pass", f"degree {f.degree}, contains sqrt of {ds}")
    if kind == "cos":
        n = spec["n"]
        gen = (root_of_unity(n) + root_of_unity(n, -1)) / rational(2)
        from .cyclo import _phi
        expected_degree = _phi(n) // 2
        if f.degree != expected_degree:
            return ("fail", f"degree {f.degree} != {expected_degree}")
        if not contains_element(f, gen):
            return ("fail", f"cos(2*pi/{n}) not contained")
        return ("pass", f"equals the real subfield of conductor {n}")
    if kind == "nested_sqrt":
        expected_degree = spec["degree"]
        square = parse_value(spec["square"])
        deg_ok = f.degree == expected_degree
        sq_ok = contains_element(f, square)
        if deg_ok and sq_ok:
            return ("degree_match",
                    f"degree {f.degree} matches and the claimed generator's "
                    f"square lies in the computed field")
        return ("fail", f"degree_ok={deg_ok} square_in_field={sq_ok}")
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# arithmeticity of triangle groups


@lru_cache(maxsize=1)
def _takeuchi_triples() -> frozenset:
    with resources.files("cxtriangle.data").joinpath("takeuchi.json").open() as fobj:
        data = json.load(fobj)
    out = set()
    for t in data["triples"]:
        out.add(tuple(INF if x == "inf" else x for x in t))
    return frozenset(out)


def takeuchi_triangle_check(sig: FuchsianSignature) -> str:
    """'A' / 'NA' for (0;p,q,r) signatures, else 'not_applicable'."""
    if not sig.is_triangle():
        return "not_applicable"
    triple = tuple(sorted(sig.cone_orders))
    return "A" if triple in _takeuchi_triples() else "NA"


def takeuchi_criterion(e1, e2, e3) -> bool:
    """Exact arithmeticity test for the hyperbolic triangle group (e1,e2,e3).

    With a_i = cos(pi/e_i) (1 for infinite entries) the group is arithmetic
    iff every non-identity real embedding of the invariant trace field
    k = Q(cos 2pi/e_1, cos 2pi/e_2, cos 2pi/e_3, a_1 a_2 a_3) makes
    mu = a_1^2 + a_2^2 + a_3^2 + 2 a_1 a_2 a_3 - 1 negative.
    """
    from fractions import Fraction
    entries = (e1, e2, e3)
    if sum((Fraction(0) if e == INF else Fraction(1, e)) for e in entries) >= 1:
        raise ValueError("not a hyperbolic triple")
    half = rational(1) / rational(2)

    def cos_pi_over(e):
        if e == INF:
            return rational(1)
        return (root_of_unity(2 * e) + root_of_unity(2 * e, -1)) * half

    def cos_2pi_over(e):
        if e == INF:
            return rational(1)
        return (root_of_unity(e) + root_of_unity(e, -1)) * half

    a1, a2, a3 = (cos_pi_over(e) for e in entries)
    prod = a1 * a2 * a3
    mu = a1 * a1 + a2 * a2 + a3 * a3 + rational(2) * prod - rational(1)
    if mu.real_sign() <= 0:
        raise ValueError("triple is not hyperbolic (mu <= 0)")
    k = field_generated([cos_2pi_over(e) for e in entries] + [prod])
    n = k.conductor
    if n == 1:
        return True
    m = mu.conductor
    # mu lies in k, so its conductor divides k's
    seen_classes = set()
    for u in range(1, n):
        if math.gcd(u, n) != 1:
            continue
        if u in k.fixing_set:
            continue
        cls = frozenset((u * s) % n for s in k.fixing_set)
        if cls in seen_classes:
            continue
        seen_classes.add(cls)
        img = mu.galois(u % m if m > 1 else 1) if m > 1 else mu
        if img.real_sign() >= 0:
            return False
    return True
