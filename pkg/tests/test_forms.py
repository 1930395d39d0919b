"""Hermitian linear algebra: inner products, signatures, box products."""

import pytest

from cxtriangle import catalog
from cxtriangle.cyclo import rational, root_of_unity, sqrt_int
from cxtriangle.errors import VerificationError
from cxtriangle.forms import (E1, E2, E3, HermitianForm, box,
                              cosh_half_dist_sq, identity, mat,
                              mirror_relation, point_position, vec)


@pytest.fixture(scope="module")
def s1_3():
    return catalog.build("S", "sigma1", 3)


@pytest.fixture(scope="module")
def s1_6():
    return catalog.build("S", "sigma1", 6)


def test_inner_diagonal_is_alpha(s1_3):
    # <e1, e1> = alpha = 2 - u^3 - conj(u)^3 with u = zeta_9
    u = root_of_unity(9)
    alpha = rational(2) - u ** 3 - u.conjugate() ** 3
    assert s1_3.form.inner(E1, E1) == alpha


def test_inner_hermitian_symmetry(s1_3):
    h = s1_3.form
    x = vec(1, root_of_unity(8), rational(2))
    y = vec(root_of_unity(5), 0, rational(-1))
    assert h.inner(x, y) == h.inner(y, x).conjugate()


def test_inner_offdiagonal_is_beta(s1_3):
    # the pairing of the first two basis vectors is beta_1 = (ub^2-u)*tau
    # up to the Hermitian-symmetry orientation (<e2,e1> = beta_1)
    u = root_of_unity(9)
    tau = rational(-1) + root_of_unity(8) - root_of_unity(8, -1)
    beta1 = (u.conjugate() ** 2 - u) * tau
    assert s1_3.form.inner(E2, E1) == beta1
    assert s1_3.form.inner(E1, E2) == beta1.conjugate()


def test_signature_identity_form():
    h = HermitianForm(identity())
    assert h.signature == (3, 0, 0)


def test_signature_of_catalog_form(s1_3):
    # oracle: numpy eigenvalues of the numeric form
    import numpy as np
    hn = np.array([[complex(x) for x in row] for row in s1_3.form.matrix.rows])
    ev = np.linalg.eigvalsh(hn)
    assert (ev > 0).sum() == 2 and (ev < 0).sum() == 1
    assert s1_3.form.signature == (2, 0, 1)


def test_signature_degenerate_and_hyperbolic():
    h = HermitianForm(mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    assert h.signature == (2, 0, 1)
    h2 = HermitianForm(mat([[1, 0, 0], [0, 0, 0], [0, 0, -1]]))
    assert h2.signature == (1, 1, 1)


def test_signature_sigma1_p2_not_hyperbolic():
    # p=2 is absent from the sigma1 row of the parameter table; the form is
    # definite there, which the builder must reject
    with pytest.raises(Exception):
        catalog.build("S", "sigma1", 2, override=True)


def test_box_orthogonal_to_inputs(s1_3):
    h = s1_3.form
    x = box(E1, E2, h)
    assert h.inner(x, E1).is_zero()
    assert h.inner(x, E2).is_zero()
    u1 = vec(1, root_of_unity(3), 0)
    u2 = vec(0, rational(2), root_of_unity(8, 3))
    y = box(u1, u2, h)
    assert h.inner(y, u1).is_zero()
    assert h.inner(y, u2).is_zero()


def test_box_antisymmetry_projective(s1_3):
    h = s1_3.form
    a = box(E2, E3, h)
    b = box(E3, E2, h)
    assert a.proportional_to(b)
    assert h.inner(a, E2).is_zero() and h.inner(a, E3).is_zero()


def test_box_proportional_inputs_error(s1_3):
    with pytest.raises(VerificationError):
        box(E1, E1.scale(rational(2)), s1_3.form)


def test_point_position_examples(s1_3, s1_6):
    assert point_position(s1_3.form, E1) == "positive"
    # e1 box R2^-1 R1^-1 e3 is a null vector exactly when p = 6
    for g, expect in ((s1_3, "negative"), (s1_6, "null")):
        v = box(E1, (g.r2.inverse() * g.r1.inverse()) * E3, g.form)
        assert point_position(g.form, v) == expect
    with pytest.raises(VerificationError):
        point_position(s1_3.form, vec(0, 0, 0))


def test_cosh_half_dist_sq(s1_3):
    h = s1_3.form
    # a vertex of the mirror polygon, inside the ball at p=3
    x = box(E1, (s1_3.r2.inverse() * s1_3.r1.inverse()) * E3, h)
    assert point_position(h, x) == "negative"
    assert cosh_half_dist_sq(h, x, x) == rational(1)
    # scale invariance
    lam = root_of_unity(5) + rational(2)
    assert cosh_half_dist_sq(h, x.scale(lam), x) == rational(1)
    y = s1_3.r2 * x
    val = cosh_half_dist_sq(h, x, y)
    assert (val - rational(1)).real_sign() >= 0
    with pytest.raises(VerificationError):
        cosh_half_dist_sq(h, E1, x)


def test_mirror_relation(s1_3, s1_6):
    # orthogonal mirrors: cos^2 = 0
    hid = HermitianForm(mat([[1, 0, 0], [0, 1, 0], [0, 0, -1]]))
    kind, csq = mirror_relation(hid, E1, E2)
    assert kind == "intersecting" and csq == rational(0)
    # (e1, e2) for S(6,sigma1) are ultraparallel (their braid center (12)^3
    # is a complex reflection on the common perpendicular)
    kind6, _ = mirror_relation(s1_6.form, E1, E2)
    assert kind6 == "ultraparallel"
    # for S(3,sigma4bar) the braid center (12)^2 is a reflection in a point,
    # so those mirrors meet inside the ball
    g43 = catalog.build("S", "sigma4bar", 3)
    kind3, csq3 = mirror_relation(g43.form, E1, E2)
    assert kind3 == "intersecting"
    assert (csq3 - rational(1)).real_sign() < 0
    with pytest.raises(VerificationError):
        mirror_relation(s1_3.form, E1, E1.scale(rational(3)))


def test_mirror_relation_asymptotic():
    # sigma1 p=3: braid pair (2,3) has parabolic center, mirrors asymptotic
    g = catalog.build("S", "sigma1", 3)
    kind, _ = mirror_relation(g.form, E2, E3)
    assert kind == "asymptotic"


def test_form_preservation_of_generators():
    for family, param, p in [("S", "sigma1", 4), ("T", "H2", 5), ("T", "E2", 6)]:
        g = catalog.build(family, param, p)
        for m in (g.r1, g.r2, g.r3):
            assert g.form.preserves(m)
            assert m.det() == rational(1)


def test_adjugate_inverse():
    g = catalog.build("T", "H1", 2)
    m = g.r1 * g.r2 * g.r3
    assert m * m.inverse() == identity()
    assert m.adjugate() * m == identity().scale(m.det())
