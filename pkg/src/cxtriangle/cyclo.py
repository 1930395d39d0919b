"""Exact arithmetic in the union of the cyclotomic fields Q(zeta_n).

Values are stored on a canonical basis of Q(zeta_n) (a Zumbroich-style
tensor basis over the prime power factors of n) with the conductor reduced
to the minimal one for the value.  Equality is therefore a syntactic check.
Coefficients are kept as integer numerators over one common denominator so
that the inner loops of multiplication stay in machine/big integers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import ConductorLimitError, NonRealError

# Largest conductor an operation is allowed to produce.  Everything in the
# catalog stays below lcm(36, 28, 180, 20, 5, 7) by a wide margin.
_CONDUCTOR_CAP = 10080

# Starting bit precision for interval sign refinement.
_SIGN_START_BITS = 64
_SIGN_MAX_BITS = 1 << 22


def set_conductor_cap(cap: int) -> None:
    global _CONDUCTOR_CAP
    if cap < 1:
        raise ValueError("cap must be positive")
    _CONDUCTOR_CAP = cap


def set_sign_start_bits(bits: int) -> None:
    global _SIGN_START_BITS
    if bits < 8:
        raise ValueError("need at least 8 bits")
    _SIGN_START_BITS = bits


@lru_cache(maxsize=None)
def _prime_powers(n: int) -> tuple[tuple[int, int], ...]:
    """Factor n into (prime, prime_power) pairs."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append((p, q))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, m))
    return tuple(out)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    out = 1
    for p, q in _prime_powers(n):
        out *= q - q // p
    return out


@lru_cache(maxsize=1 << 20)
def _basis_expansion(n: int, j: int) -> tuple[tuple[int, int], ...]:
    """Express zeta_n^j as a signed sum of canonical basis powers of zeta_n.

    Basis exponents have, for every prime power q = p^v dividing n, a
    component (j * (n/q)^{-1} mod q) that is >= q/p for odd p and < q/2 for
    p = 2.  Non-basis components are rewritten with the relation
    1 + zeta_p + ... + zeta_p^{p-1} = 0 (odd p) or zeta^{q/2} = -1 (p = 2).
    """
    j %= n
    if n == 1:
        return ((0, 1),)
    terms = [(j, 1)]
    for p, q in _prime_powers(n):
        nq = n // q
        inv = pow(nq, -1, q)
        step = (q // p) * nq
        new_terms = []
        for e, s in terms:
            comp = (e * inv) % q
            if p == 2:
                if comp < q // 2:
                    new_terms.append((e, s))
                else:
                    new_terms.append(((e - step) % n, -s))
            else:
                if comp >= q // p:
                    new_terms.append((e, s))
                else:
                    for k in range(1, p):
                        new_terms.append(((e + k * step) % n, -s))
        terms = new_terms
    return tuple(terms)


def _descend_once(n: int, num: dict[int, int]):
    """Try to rewrite (n, num) over a conductor n/p; return None if stuck."""
    for p, q in _prime_powers(n):
        if q > p or p == 2:
            # Remove one factor p (all of 4 when q == 4): possible iff every
            # exponent is divisible by p (resp. 4).
            d = 4 if (p == 2 and q == 4) else p
            if q == 2:
                # n == 2 mod 4 never occurs in canonical form
                continue
            if all(e % d == 0 for e in num):
                return n // d, {e // d: c for e, c in num.items()}
        else:
            # v == 1, p odd: an element descends iff within each class of
            # exponents sharing all other components, the p-components
            # 1..p-1 appear with one common coefficient.
            npart = n // p
            inv = pow(npart % p, -1, p)
            groups: dict[int, list[tuple[int, int]]] = {}
            ok = True
            for e, c in num.items():
                groups.setdefault(e % npart, []).append((e, c))
            new: dict[int, int] = {}
            for r, members in groups.items():
                if len(members) != p - 1:
                    ok = False
                    break
                coeffs = {c for _, c in members}
                if len(coeffs) != 1:
                    ok = False
                    break
                e0, c0 = members[0]
                comp = (e0 * inv) % p
                estar = (e0 - comp * npart) % n
                new[estar // p] = -c0
            if ok and groups:
                return npart, new
    return None


def _rewrite_twice_odd(n: int, num: dict[int, int]):
    """Rewrite conductor n == 2 mod 4 over the odd part n/2."""
    m = n // 2
    half = (m + 1) // 2
    out: dict[int, int] = {}
    for e, c in num.items():
        sign = -1 if e % 2 else 1
        e2 = (e * half) % m
        out[e2] = out.get(e2, 0) + sign * c
    return m, {e: c for e, c in out.items() if c}


class Cyclotomic:
    """An exact element of some Q(zeta_n), canonical and immutable."""

    __slots__ = ("_n", "_den", "_num", "_hash")

    def __init__(self, n: int, num: dict[int, int], den: int, _raw: bool = False):
        if not _raw:
            n, num, den = _canonical(n, num, den)
        self._n = n
        self._num = num
        self._den = den
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Cyclotomic":
        return _ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _ONE

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        q = Fraction(q)
        if q == 0:
            return _ZERO
        return Cyclotomic(1, {0: q.numerator}, q.denominator, _raw=True)

    # -- accessors ----------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    def coefficients(self) -> dict[int, Fraction]:
        """Canonical basis coefficients {exponent: rational}."""
        return {e: Fraction(c, self._den) for e, c in self._num.items()}

    def is_zero(self) -> bool:
        return not self._num

    def is_rational(self) -> bool:
        return self._n == 1

    def as_fraction(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"not rational: {self}")
        if not self._num:
            return Fraction(0)
        return Fraction(self._num[0], self._den)

    def is_real(self) -> bool:
        return self.conjugate() == self

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        n1, n2 = self._n, other._n
        if n1 == n2:
            # basis exponents stay in basis: merge directly
            den = _lcm(self._den, other._den)
            f1 = den // self._den
            f2 = den // other._den
            num = {e: c * f1 for e, c in self._num.items()}
            for e, c in other._num.items():
                num[e] = num.get(e, 0) + c * f2
            return Cyclotomic(n1, {e: c for e, c in num.items() if c}, den)
        n = _lcm_checked(n1, n2)
        den = _lcm(self._den, other._den)
        num: dict[int, int] = {}
        for src in (self, other):
            f = den // src._den
            lift = n // src._n
            for e, c in src._num.items():
                for e2, s in _basis_expansion(n, e * lift):
                    num[e2] = num.get(e2, 0) + s * f * c
        return Cyclotomic(n, num, den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Cyclotomic(self._n, {e: -c for e, c in self._num.items()},
                          self._den, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return _ZERO
        n = _lcm_checked(self._n, other._n)
        l1, l2 = n // self._n, n // other._n
        raw: dict[int, int] = {}
        items2 = [((e * l2) % n, c) for e, c in other._num.items()]
        for e1, c1 in self._num.items():
            b = (e1 * l1) % n
            for e2, c2 in items2:
                e = b + e2
                if e >= n:
                    e -= n
                raw[e] = raw.get(e, 0) + c1 * c2
        num: dict[int, int] = {}
        for e, c in raw.items():
            if not c:
                continue
            for e2, s in _basis_expansion(n, e):
                num[e2] = num.get(e2, 0) + s * c
        return Cyclotomic(n, num, self._den * other._den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic")
        if self._n == 1:
            return Cyclotomic.from_rational(1 / self.as_fraction())
        if len(self._num) == 1:
            # monomial c * zeta^e
            (e, c), = self._num.items()
            inv = Cyclotomic(self._n, {(-e) % self._n: self._den}, abs(c), _raw=False)
            return inv if c > 0 else -inv
        n = self._n
        poly = [Fraction(0)] * _phi_degree_bound(n)
        for e, c in self._num.items():
            poly = _poly_addterm(poly, e, Fraction(c, self._den), n)
        inv_poly = _poly_invert(poly, n)
        num: dict[int, int] = {}
        den = 1
        for coes in inv_poly:
            den = _lcm(den, coes.denominator)
        for e, coef in enumerate(inv_poly):
            if coef:
                for e2, s in _basis_expansion(n, e):
                    num[e2] = num.get(e2, 0) + s * coef.numerator * (den // coef.denominator)
        return Cyclotomic(n, num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return _ONE
        base = self if k > 0 else self.inverse()
        k = abs(k)
        out = _ONE
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- equality -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self._n == other._n and self._den == other._den
                and self._num == other._num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._den,
                               tuple(sorted(self._num.items()))))
        return self._hash

    # -- Galois actions ---------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^k; k must be prime to the conductor."""
        n = self._n
        if n == 1:
            return self
        if math.gcd(k, n) != 1:
            raise ValueError(f"galois exponent {k} not prime to conductor {n}")
        num: dict[int, int] = {}
        for e, c in self._num.items():
            for e2, s in _basis_expansion(n, e * k):
                num[e2] = num.get(e2, 0) + s * c
        return Cyclotomic(n, num, self._den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self._n - 1) if self._n > 1 else self

    # -- numeric embeddings ----------------------------------------------

    def __complex__(self) -> complex:
        n = self._n
        out = 0j
        for e, c in self._num.items():
            out += c * cmath.exp(2j * math.pi * e / n)
        return out / self._den

    def embed_mp(self, dps: int = 50):
        """mpmath complex embedding at the given decimal precision."""
        with mpmath.workdps(dps):
            n = self._n
            out = mpmath.mpc(0)
            for e, c in self._num.items():
                out += c * mpmath.expjpi(mpmath.mpf(2 * e) / n)
            return out / self._den

    def real_sign(self) -> int:
        """Exact sign (-1, 0, 1); the value must be real."""
        if not self.is_real():
            raise NonRealError(f"not a real value: {self}")
        if self.is_zero():
            return 0
        n = self._n
        prec = _SIGN_START_BITS
        while prec <= _SIGN_MAX_BITS:
            iv = mpmath.iv
            saved = iv.prec
            try:
                iv.prec = prec
                two_pi = 2 * iv.pi
                total = iv.mpf(0)
                for e, c in self._num.items():
                    total += iv.mpf(c) * iv.cos(two_pi * e / n)
                total /= self._den
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
            finally:
                iv.prec = saved
            prec *= 2
        raise ConductorLimitError("sign refinement exceeded precision bound")

    # -- textual form -----------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self._num):
            coef = Fraction(self._num[e], self._den)
            mag = abs(coef)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = _zeta_str(self._n, e)
            else:
                body = f"{mag}*{_zeta_str(self._n, e)}"
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coef > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"


def _zeta_str(n: int, e: int) -> str:
    return f"z({n})" if e == 1 else f"z({n})^{e}"


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _lcm_checked(a: int, b: int) -> int:
    n = _lcm(a, b)
    if n > _CONDUCTOR_CAP:
        raise ConductorLimitError(f"conductor {n} exceeds cap {_CONDUCTOR_CAP}")
    return n


def _canonical(n, num, den):
    num = {e % n: c for e, c in num.items() if c}
    if den < 0:
        den = -den
        num = {e: -c for e, c in num.items()}
    if not num:
        return 1, {}, 1
    if n % 4 == 2:
        n, num = _rewrite_twice_odd(n, num)
        if not num:
            return 1, {}, 1
    # ensure exponents are on the basis
    ppows = _prime_powers(n)
    on_basis = True
    for e in num:
        for p, q in ppows:
            comp = (e * pow(n // q, -1, q)) % q
            if (p == 2 and comp >= q // 2) or (p != 2 and comp < q // p):
                on_basis = False
                break
        if not on_basis:
            break
    if not on_basis:
        flat: dict[int, int] = {}
        for e, c in num.items():
            for e2, s in _basis_expansion(n, e):
                flat[e2] = flat.get(e2, 0) + s * c
        num = {e: c for e, c in flat.items() if c}
        if not num:
            return 1, {}, 1
    while n > 1:
        step = _descend_once(n, num)
        if step is None:
            break
        n, num = step
        if n % 4 == 2:
            n, num = _rewrite_twice_odd(n, num)
        if not num:
            return 1, {}, 1
    g = 0
    for c in num.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    g = math.gcd(g, den)
    if g > 1:
        num = {e: c // g for e, c in num.items()}
        den //= g
    return n, num, den


_ZERO = Cyclotomic(1, {}, 1, _raw=True)
_ONE = Cyclotomic(1, {0: 1}, 1, _raw=True)


# -- public operations ------------------------------------------------------


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k, canonicalized."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > _CONDUCTOR_CAP:
        raise ConductorLimitError(f"conductor {n} exceeds cap {_CONDUCTOR_CAP}")
    return Cyclotomic(n, {k % n: 1}, 1)


def rational(q) -> Cyclotomic:
    return Cyclotomic.from_rational(q)


def arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    """Dispatch form of the four ring operations (used by the service layer)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def conjugate(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def real_sign(a: Cyclotomic) -> int:
    return a.real_sign()


def galois_orbit(a: Cyclotomic) -> list[Cyclotomic]:
    n = a.conductor
    seen = []
    for k in range(1, n + 1) if n > 1 else [1]:
        if math.gcd(k, n) != 1:
            continue
        img = a.galois(k) if n > 1 else a
        if img not in seen:
            seen.append(img)
    return seen


# -- polynomial helpers for inversion ----------------------------------------


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial (ascending)."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in range(1, n):
        if n % d == 0:
            poly = _intpoly_div(poly, list(_cyclotomic_poly(d)))
    return tuple(poly)


def _intpoly_div(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must vanish)."""
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] // b[-1]
        out[i] = coef
        if coef:
            for j, bc in enumerate(b):
                a[i + j] -= coef * bc
    assert not any(a), "non-exact polynomial division"
    return out


def _phi_degree_bound(n: int) -> int:
    return len(_cyclotomic_poly(n)) - 1


def _poly_addterm(poly: list[Fraction], e: int, c: Fraction, n: int) -> list[Fraction]:
    """Add c*x^e to poly, reduced modulo the n-th cyclotomic polynomial."""
    phi_n = list(_cyclotomic_poly(n))
    deg = len(phi_n) - 1
    if e < deg:
        poly[e] += c
        return poly
    # reduce x^e mod phi_n by repeated subtraction
    tmp = [Fraction(0)] * (e + 1)
    tmp[e] = c
    for i in range(e, deg - 1, -1):
        coef = tmp[i]
        if coef:
            for j in range(deg + 1):
                tmp[i - deg + j] -= coef * phi_n[j]
    for i in range(deg):
        poly[i] += tmp[i]
    return poly


def _poly_invert(poly: list[Fraction], n: int) -> list[Fraction]:
    """Inverse of poly modulo the n-th cyclotomic polynomial (xgcd)."""
    mod = [Fraction(c) for c in _cyclotomic_poly(n)]

    def pdeg(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    def pdivmod(a, b):
        a = a[:]
        db, lb = pdeg(b), None
        lb = b[pdeg(b)]
        q = [Fraction(0)] * (max(pdeg(a) - db + 1, 1))
        while pdeg(a) >= db and pdeg(a) >= 0:
            da = pdeg(a)
            coef = a[da] / lb
            q[da - db] += coef
            for j in range(db + 1):
                a[da - db + j] -= coef * b[j]
        return q, a

    r0, r1 = mod[:], poly[:]
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while pdeg(r1) > 0:
        q, r = pdivmod(r0, r1)
        # s = s0 - q*s1
        s = s0[:] + [Fraction(0)] * max(0, pdeg(q) + pdeg(s1) + 1 - len(s0))
        for i in range(pdeg(q) + 1):
            if q[i]:
                for j in range(pdeg(s1) + 1):
                    if i + j >= len(s):
                        s.append(Fraction(0))
                    s[i + j] -= q[i] * s1[j]
        r0, r1, s0, s1 = r1, r, s1, s
    d = pdeg(r1)
    if d != 0:
        raise ZeroDivisionError("element has no inverse (zero mod cyclotomic)")
    c = r1[0]
    return [x / c for x in s1]


# -- field descriptors --------------------------------------------------------


@dataclass(frozen=True)
class FieldDescriptor:
    """A subfield of Q(zeta_n) given by the Galois exponents that fix it."""

    conductor: int
    fixing_set: frozenset
    degree: int

    def __str__(self):
        return f"Field(conductor={self.conductor}, degree={self.degree})"


_Q_FIELD = FieldDescriptor(1, frozenset({0}), 1)


def _units(n: int):
    if n == 1:
        return [0]
    return [k for k in range(1, n) if math.gcd(k, n) == 1]


def _reduce_descriptor(n: int, fixing: frozenset) -> FieldDescriptor:
    """Shrink the conductor while the Galois kernel stays inside fixing."""
    if n == 1:
        return _Q_FIELD
    best = n
    changed = True
    while changed:
        changed = False
        for p, _q in _prime_powers(best):
            m = best // p
            if m % 4 == 2:
                m //= 2
            if m < 1:
                continue
            kernel_ok = all(
                (k % best) in fixing
                for k in _units(best)
                if m == 1 or k % m == 1 % m
            )
            if kernel_ok and m < best:
                new_fix = frozenset({k % m for k in fixing}) if m > 1 else frozenset({0})
                best, fixing = m, new_fix
                changed = True
                break
    if best == 1:
        return _Q_FIELD
    degree = _phi(best) // len(fixing)
    return FieldDescriptor(best, frozenset(fixing), degree)


def field_generated(elems) -> FieldDescriptor:
    """Smallest field Q(elems) as a FieldDescriptor."""
    elems = [e for e in elems if not e.is_rational()]
    if not elems:
        return _Q_FIELD
    n = 1
    for e in elems:
        n = _lcm_checked(n, e.conductor)
    lifted = elems
    fixing = frozenset(
        k for k in _units(n)
        if all(e.galois(_adapt(k, n, e.conductor)) == e for e in lifted)
    )
    return _reduce_descriptor(n, fixing)


def _adapt(k: int, n: int, m: int) -> int:
    # restriction of the Galois exponent k (mod n) to Q(zeta_m), m | n
    return k % m if m > 1 else 1


def contains_element(f: FieldDescriptor, a: Cyclotomic) -> bool:
    """Is the exact value a an element of the field f describes?"""
    if a.is_rational():
        return True
    m = a.conductor
    if f.conductor % m != 0:
        # a could still lie in the field only if Q(a) is inside it; since the
        # descriptor's conductor is minimal, m must divide it.
        return False
    return all(a.galois(_adapt(k, f.conductor, m)) == a
               for k in f.fixing_set if f.conductor > 1)


def sqrt_int(d: int) -> Cyclotomic:
    """An exact cyclotomic square root of the integer d (Gauss sums)."""
    if d == 0:
        return _ZERO
    neg = d < 0
    d = abs(d)
    square = 1
    s = 1
    m = d
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            square *= p
        if m % p == 0:
            m //= p
            s *= p
        p += 1
    s *= m
    out = Cyclotomic.from_rational(square)
    rem = s
    if rem % 2 == 0:
        out = out * (root_of_unity(8) + root_of_unity(8, -1))
        rem //= 2
    for p, _ in _prime_powers(rem):
        g = _gauss_sum(p)
        if p % 4 == 1:
            out = out * g
        else:
            out = out * g * root_of_unity(4, -1)
    if neg:
        out = out * root_of_unity(4)
    return out


@lru_cache(maxsize=None)
def _gauss_sum(p: int) -> Cyclotomic:
    """Quadratic Gauss sum over F_p: sqrt(p) for p=1 mod 4, i*sqrt(p) else."""
    residues = {pow(t, 2, p) for t in range(1, p)}
    num = {}
    for t in range(1, p):
        num[t] = 1 if t in residues else -1
    return Cyclotomic(p, num, 1)


def contains_named_sqrt(f: FieldDescriptor, d: int) -> bool:
    """True iff sqrt(d) lies in the field f describes."""
    if d == 0:
        raise ValueError("d must be nonzero")
    w = sqrt_int(d)
    if w.is_rational():
        return True
    n = _lcm_checked(f.conductor, w.conductor)
    for k in _units(n):
        kf = _adapt(k, n, f.conductor)
        if f.conductor > 1 and kf not in f.fixing_set:
            continue
        if w.galois(_adapt(k, n, w.conductor)) != w:
            return False
    return True


# -- parsing the textual form -------------------------------------------------


def parse_value(text: str) -> Cyclotomic:
    """Parse 'c0 + c1*z(n)^k + ...' with exact rational coefficients."""
    s = text.strip()
    if not s:
        raise ValueError("empty value")
    pos = 0
    total = _ZERO

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        if pos < len(s) and s[pos] in "+-":
            pos += 1
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if pos == start or not s[start:pos].lstrip("+-"):
            raise ValueError(f"expected integer at {start} in {text!r}")
        return int(s[start:pos])

    first = True
    while True:
        skip_ws()
        if pos >= len(s):
            break
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
            skip_ws()
        elif not first:
            raise ValueError(f"expected +/- at {pos} in {text!r}")
        first = False
        coef = Fraction(1)
        have_coef = False
        if pos < len(s) and s[pos].isdigit():
            numv = read_int()
            if pos < len(s) and s[pos] == "/":
                pos += 1
                denv = read_int()
                coef = Fraction(numv, denv)
            else:
                coef = Fraction(numv)
            have_coef = True
            skip_ws()
            if pos < len(s) and s[pos] == "*":
                pos += 1
                skip_ws()
        if pos < len(s) and s[pos] == "z":
            pos += 1
            if pos >= len(s) or s[pos] != "(":
                raise ValueError(f"expected ( after z at {pos} in {text!r}")
            pos += 1
            order = read_int()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ) at {pos} in {text!r}")
            pos += 1
            expo = 1
            if pos < len(s) and s[pos] == "^":
                pos += 1
                expo = read_int()
            term = root_of_unity(order, expo) * Cyclotomic.from_rational(coef)
        elif have_coef:
            term = Cyclotomic.from_rational(coef)
        else:
            raise ValueError(f"expected term at {pos} in {text!r}")
        total = total + (term if sign > 0 else -term)
    return total
