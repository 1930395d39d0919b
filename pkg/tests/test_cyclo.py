"""Exact cyclotomic arithmetic against an independent polynomial oracle."""

import math
from fractions import Fraction

import pytest

from cxtriangle.cyclo import (Cyclotomic, FieldDescriptor, contains_element,
                              contains_named_sqrt, field_generated,
                              galois_orbit, parse_value, rational,
                              root_of_unity, set_conductor_cap, sqrt_int, arith)
from cxtriangle.errors import ConductorLimitError, NonRealError


def oracle_equal(a: Cyclotomic, n: int, coeffs: dict):
    """Compare a with sum(coeffs[k] * zeta_n^k) by brute-force polynomial
    arithmetic modulo the n-th cyclotomic polynomial (sympy)."""
    import sympy
    x = sympy.symbols("x")
    phi = sympy.cyclotomic_poly(n, x)
    target = sum(sympy.Rational(c) * x ** k for k, c in coeffs.items())
    mine = sympy.Integer(0)
    lift = n // a.conductor * 1 if n % a.conductor == 0 else None
    assert lift is not None, "oracle conductor must be a multiple"
    for e, c in a.coefficients().items():
        mine += sympy.Rational(c) * x ** (e * lift)
    return sympy.rem(sympy.expand(mine - target), phi, x) == 0


def test_root_of_unity_identity():
    assert root_of_unity(1, 0) == rational(1)
    assert root_of_unity(4, 1) ** 2 == rational(-1)


def test_minimal_polynomial_of_zeta3():
    # zeta_3 + zeta_3^2 = -1, checked against the polynomial oracle
    v = root_of_unity(3) + root_of_unity(3, 2)
    assert v == rational(-1)
    assert oracle_equal(v, 3, {0: -1})


def test_add_zero_neutral():
    a = root_of_unity(7, 3) * rational(Fraction(2, 5))
    assert a + rational(0) == a


def test_i_sqrt2_squares_to_minus_two():
    # the catalog's i*sqrt(2); note zeta_8 - zeta_8^5 = 2 zeta_8 is NOT it
    v = root_of_unity(8) - root_of_unity(8, -1)
    assert v * v == rational(-2)
    w = root_of_unity(8) - root_of_unity(8, 5)
    assert w * w != rational(-2)


def test_golden_ratio_products():
    # (z5 + z5^4)(z5^2 + z5^3) = -1, brute force in Q(zeta_5)
    v = (root_of_unity(5) + root_of_unity(5, 4)) * (root_of_unity(5, 2) + root_of_unity(5, 3))
    assert v == rational(-1)
    assert oracle_equal(v, 5, {0: -1})


def test_mixed_conductor_product_oracle():
    a = root_of_unity(8) + rational(Fraction(1, 2))
    b = root_of_unity(3) - rational(2)
    prod = a * b
    # oracle at conductor 24: zeta_8 = x^3, zeta_3 = x^8
    import sympy
    x = sympy.symbols("x")
    phi = sympy.cyclotomic_poly(24, x)
    target = sympy.expand((x ** 3 + sympy.Rational(1, 2)) * (x ** 8 - 2))
    mine = sum(sympy.Rational(c) * x ** e for e, c in prod.coefficients().items())
    assert sympy.rem(sympy.expand(mine - target), phi, x) == 0


def test_division_exact_and_by_zero():
    a = rational(3) + root_of_unity(9, 2)
    assert a / a == rational(1)
    b = (rational(1) + root_of_unity(12, 5))
    assert (a * b) / b == a
    with pytest.raises(ZeroDivisionError):
        a / rational(0)


def test_conductor_descends_to_minimal():
    assert (root_of_unity(12, 4)).conductor == 3
    assert (root_of_unity(12) * root_of_unity(12, -1)).conductor == 1
    v = root_of_unity(15) * root_of_unity(15, 14)
    assert v == rational(1)
    # an element of Q(zeta_4) assembled at conductor 60
    w = root_of_unity(60, 15) + root_of_unity(60, 45)
    assert w.conductor == 1 and w == rational(0)


def test_conjugate_involution_and_rationals():
    q = rational(Fraction(-7, 3))
    assert q.conjugate() == q
    z = root_of_unity(3)
    assert z.conjugate() == root_of_unity(3, 2)
    a = root_of_unity(36, 7) * rational(3) - root_of_unity(5, 2)
    assert a.conjugate().conjugate() == a


def test_conjugate_sigma1():
    tau = rational(-1) + root_of_unity(8) - root_of_unity(8, -1)
    bar = tau.conjugate()
    # real part -1, imaginary part negated: tau + bar = -2
    assert tau + bar == rational(-2)
    assert complex(bar).imag == pytest.approx(-complex(tau).imag)


def test_real_sign():
    assert rational(0).real_sign() == 0
    assert (root_of_unity(5) + root_of_unity(5, 4)).real_sign() == 1  # ~0.618
    alpha = rational(2) - root_of_unity(3) - root_of_unity(3, 2)  # 2-2cos(2pi/3)=3
    assert alpha.real_sign() == 1
    assert (rational(-1) * alpha).real_sign() == -1
    with pytest.raises(NonRealError):
        root_of_unity(5).real_sign()


def test_real_sign_tiny_value():
    # sign refinement must survive a value close to zero:
    # sqrt(2) - 577/408 ~ -1.5e-6
    v = sqrt_int(2) - rational(Fraction(577, 408))
    assert v.real_sign() == -1


def test_galois_orbit_sizes():
    assert galois_orbit(rational(5)) == [rational(5)]
    assert len(galois_orbit(root_of_unity(3))) == 2
    assert len(galois_orbit(root_of_unity(5) + root_of_unity(5, 4))) == 2
    assert len(galois_orbit(root_of_unity(7))) == 6


def test_field_generated():
    q = field_generated([])
    assert q.degree == 1 and q.conductor == 1
    f5 = field_generated([root_of_unity(5) + root_of_unity(5, 4)])
    assert f5.degree == 2 and f5.conductor == 5
    fi2 = field_generated([root_of_unity(8) - root_of_unity(8, -1)])
    assert fi2.degree == 2
    # monotonicity under adding generators
    bigger = field_generated([root_of_unity(5) + root_of_unity(5, 4), sqrt_int(2)])
    assert bigger.degree == 4


def test_fixing_set_is_subgroup():
    f = field_generated([sqrt_int(5), sqrt_int(3)])
    n = f.conductor
    for a in f.fixing_set:
        for b in f.fixing_set:
            assert (a * b) % n in f.fixing_set


def test_contains_named_sqrt():
    assert contains_named_sqrt(field_generated([]), 1)
    assert contains_named_sqrt(field_generated([]), 9)
    assert not contains_named_sqrt(field_generated([]), 2)
    f5 = field_generated([root_of_unity(5) + root_of_unity(5, 4)])
    assert contains_named_sqrt(f5, 5)
    assert contains_named_sqrt(f5, 20)
    assert not contains_named_sqrt(f5, -5)
    f = field_generated([sqrt_int(2), sqrt_int(7)])
    for d, expect in [(2, True), (7, True), (14, True), (3, False), (5, False)]:
        assert contains_named_sqrt(f, d) is expect


def test_sqrt_int_squares():
    for d in (1, 2, 3, 5, 6, 7, 15, 21, 30, -1, -2, -3, -7, 4, 12, 45):
        w = sqrt_int(d)
        assert w * w == rational(d), d


def test_contains_element():
    f = field_generated([sqrt_int(5)])
    phi = (rational(1) + sqrt_int(5)) / rational(2)
    assert contains_element(f, phi)
    assert not contains_element(f, sqrt_int(2))
    assert contains_element(f, rational(Fraction(22, 7)))


def test_textual_roundtrip_bit_exact():
    vals = [
        rational(0),
        rational(Fraction(-3, 4)),
        root_of_unity(8) - root_of_unity(8, -1),
        sqrt_int(21) * rational(Fraction(2, 9)) - rational(1),
        root_of_unity(45, 7) + root_of_unity(45, 44) * rational(Fraction(5, 3)),
    ]
    for v in vals:
        s = str(v)
        assert parse_value(s) == v
        assert str(parse_value(s)) == s


def test_parse_value_errors():
    for bad in ["", "z(8", "1 +", "q", "z(8)^", "3//4"]:
        with pytest.raises(ValueError):
            parse_value(bad)


def test_arith_dispatch():
    a, b = rational(3), root_of_unity(7)
    assert arith(a, b, "add") == a + b
    assert arith(a, b, "sub") == a - b
    assert arith(a, b, "mul") == a * b
    assert arith(a, b, "div") == a / b
    with pytest.raises(ValueError):
        arith(a, b, "pow")


def test_conductor_cap():
    set_conductor_cap(100)
    try:
        with pytest.raises(ConductorLimitError):
            root_of_unity(101)
        with pytest.raises(ConductorLimitError):
            root_of_unity(64) * root_of_unity(81)
    finally:
        set_conductor_cap(10080)


def test_embedding_matches_floating_recomputation():
    import cmath
    a = root_of_unity(360, 77) * rational(Fraction(3, 7)) + root_of_unity(8, 3)
    direct = (3 / 7) * cmath.exp(2j * math.pi * 77 / 360) + cmath.exp(2j * math.pi * 3 / 8)
    assert abs(complex(a) - direct) < 1e-9 * abs(direct)
    hi = a.embed_mp(dps=40)
    assert abs(complex(hi) - direct) < 1e-9 * abs(direct)
