import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from alphafarey.arith import IDENTITY, NEG_INF, DomainError, MobiusMatrix, PoleError, is_neg_inf, sqrt_surd
from alphafarey.extension import (
    D1,
    D2,
    OMEGA_STAR,
    SHIFTED,
    VFLAT_MINUS,
    VFLAT_PLUS,
    Box,
    DivergentIntegralError,
    PlanarPoint,
    TaggedPoint,
    TagError,
    branch_matrices,
    classify_cylinder,
    cloud_components,
    conjugacy_residual,
    cylinder_interval,
    density_ratio,
    fhat_alpha_step,
    fhat_flat_step,
    flat1_step,
    flat2_step,
    ghat_star_step,
    in_vflat2,
    measure_estimate,
    psi_forward,
    psi_inverse,
    sample_domain,
    v1_orbit,
)
from alphafarey.farey import flat_step

R2 = sqrt_surd(2)
A = R2 - 1


def test_ghat_star_examples():
    assert ghat_star_step(1, PlanarPoint(F(5, 12), F(-2))) == PlanarPoint(F(2, 5), F(-5, 2))
    assert ghat_star_step(F(2, 5), PlanarPoint(F(-3, 10), F(-3))) == PlanarPoint(F(1, 3), F(-8, 3))
    p = ghat_star_step(A, PlanarPoint(R2 - 2, F(-3)))
    assert p.x == (R2 - 2) / 2
    with pytest.raises(DomainError):
        ghat_star_step(F(2, 5), PlanarPoint(F(0), F(-2)))


def test_fhat_alpha_examples():
    a = F(1, 4)
    assert fhat_alpha_step(a, PlanarPoint(F(-1, 2), F(-3))) == PlanarPoint(F(1), F(-3, 2))
    assert fhat_alpha_step(a, PlanarPoint(F(2), F(-1))) == PlanarPoint(F(-1, 2), F(-2))
    assert fhat_alpha_step(a, PlanarPoint(F(0), F(-3))) == PlanarPoint(F(0), F(-3, 4))


def test_fhat_flat_examples():
    a = F(3, 10)
    p = fhat_flat_step(a, PlanarPoint(F(-3, 5), F(-3)))
    assert (p.x, p.y) == (F(-1, 3), F(-5, 3))
    p = fhat_flat_step(a, PlanarPoint(F(3, 5), F(-1)))
    assert (p.x, p.y, p.tag) == (F(-1, 3), F(-3), VFLAT_MINUS)
    p = fhat_flat_step(a, PlanarPoint(F(4, 5), F(-4)))
    assert (p.x, p.y, p.tag) == (F(1, 4), F(-5, 4), VFLAT_PLUS)


def test_classify_cylinder_examples():
    c = classify_cylinder(A, F(1, 5))
    assert (c.sign, c.k) == ("+", 5)
    c = classify_cylinder(A, F(-1, 4))
    assert (c.sign, c.k) == ("-", 4)
    assert cylinder_interval(A, "+", 2) is None
    assert cylinder_interval(A, "+", 3) is not None
    with pytest.raises(DomainError):
        classify_cylinder(A, F(0))


def test_psi_examples():
    p = TaggedPoint(F(1, 3), F(-2), D1)
    assert psi_forward(p) == TaggedPoint(F(-2, 3), F(-3), VFLAT_MINUS)
    q = TaggedPoint(F(1, 3), F(-2), D2)
    assert (psi_forward(q).x, psi_forward(q).y) == (F(1, 3), F(-2))
    for r in (p, q):
        assert psi_inverse(psi_forward(r)) == r
    assert is_neg_inf(psi_forward(TaggedPoint(F(1, 2), NEG_INF, D1)).y)
    with pytest.raises(TagError):
        psi_forward(TaggedPoint(F(1, 3), F(-2), OMEGA_STAR))


def test_conjugacy_examples():
    a = F(3, 10)
    assert conjugacy_residual(a, TaggedPoint(F(1, 3), F(-2), D2)) == 0
    assert conjugacy_residual(a, TaggedPoint(F(3, 5), F(-2), D2)) == 0
    assert conjugacy_residual(a, TaggedPoint(F(7, 10), NEG_INF, D1)) == 0


def test_density_examples():
    assert density_ratio(MobiusMatrix(1, 0, -1, 1), F(1, 3), F(-1)) == 1
    assert density_ratio(IDENTITY, F(2, 7), F(-5)) == 1
    assert density_ratio(MobiusMatrix(0, 1, 1, 1), F(3, 11), F(-9, 4)) == 1
    with pytest.raises(DomainError):
        density_ratio(IDENTITY, F(1, 2), F(1, 2))


def test_flat1_cases():
    a = F(3, 10)
    # alpha - 1 <= x < -1/2 and x >= 0: one Gauss step
    p = flat1_step(a, TaggedPoint(F(-3, 5), F(-2), OMEGA_STAR))
    assert p.point == ghat_star_step(a, PlanarPoint(F(-3, 5), F(-2)))
    p = flat1_step(a, TaggedPoint(F(2, 7), F(-2), OMEGA_STAR))
    assert p.point == ghat_star_step(a, PlanarPoint(F(2, 7), F(-2)))
    # -1/2 <= x < 0 passes through the shifted copy
    p = flat1_step(a, TaggedPoint(F(-1, 4), F(-3), OMEGA_STAR))
    assert (p.tag, p.j, p.x, p.y) == (SHIFTED, 4, F(1, 3), F(-3, 2))
    q = flat1_step(a, p)
    assert (q.x, q.y) == (1 / p.x - 3, 1 / p.y - 3)
    assert q.point == ghat_star_step(a, PlanarPoint(F(-1, 4), F(-3)))


def test_flat2_alpha_one_is_gauss():
    for x, y in ((F(5, 12), F(-2)), (F(3, 7), F(-7, 5)), (F(9, 10), NEG_INF)):
        p = TaggedPoint(x, y, OMEGA_STAR)
        q, t = flat2_step(1, p)
        assert t == 1
        assert q.point == ghat_star_step(1, PlanarPoint(x, y))


def test_measure_examples():
    full = measure_estimate(Box(0.0, 1.0, -math.inf, -1.0), method="quad")
    assert abs(full.value - math.log(2)) < 1e-6
    strip = measure_estimate(Box(0.5, 1.0, -math.inf, -1.0), method="quad")
    assert abs(strip.value / full.value - math.log2(4 / 3)) < 1e-6
    assert measure_estimate(Box(0.5, 0.5, -math.inf, -1.0)).value == 0
    with pytest.raises(DivergentIntegralError):
        measure_estimate(Box(-1.0, 1.0, -2.0, -0.5))


def test_measure_mc_within_three_sigma():
    r = measure_estimate(Box(0.0, 1.0, -math.inf, -1.0), n_samples=50_000, seed=3)
    assert abs(r.value - math.log(2)) < 3 * r.stderr


def test_cloud_alpha_one_inside_v1():
    c = sample_domain(1, "v", 5000, seed=1)
    assert len(c) == 5000
    assert np.all((c.xs >= 0) & (c.xs <= 1) & (c.ys <= 0))


def test_cloud_is_deterministic():
    a = sample_domain(F(3, 10), "vflat", 2000, seed=7)
    b = sample_domain(F(3, 10), "vflat", 2000, seed=7)
    assert a.to_csv() == b.to_csv()


def test_cloud_components_simple():
    pts = np.array([[0.0, 0.0], [0.01, 0.0], [1.0, 1.0]])
    n, _ = cloud_components(pts, 0.05, resolution=0.001)
    assert n == 2


# -- properties ------------------------------------------------------------

alphas = st.sampled_from([F(1, 10), F(3, 10), F(2, 5), F(9, 20), F(11, 20), F(7, 10), F(4, 5)])
# y = -1 sits on a pole of the negative branch
ys = st.fractions(min_value=-50, max_value=-1, max_denominator=1000).filter(lambda v: v < -1)


@st.composite
def alpha_and_x(draw):
    a = draw(alphas)
    x = draw(st.fractions(min_value=a - 1, max_value=a, max_denominator=10**4))
    assume(x < a and x != 0)
    return a, x


@given(alpha_and_x(), ys)
def test_density_ratio_is_one_for_every_branch(ax, y):
    a, x = ax
    for ms in branch_matrices(a).values():
        for m in ms:
            try:
                assert density_ratio(m, x, y) == 1
            except (ZeroDivisionError, DomainError):
                pass


@given(alpha_and_x(), ys)
def test_fhat_flat_is_fhat_power(ax, y):
    a, x = ax
    assume(x <= 1)
    _, k = flat_step(a, x)
    p = PlanarPoint(x, y)
    try:
        for _ in range(k):
            p = fhat_alpha_step(a, p)
    except PoleError:
        assume(False)
    q = fhat_flat_step(a, PlanarPoint(x, y))
    assert (q.x, q.y) == (p.x, p.y)


@given(alpha_and_x(), st.integers(5, 40))
def test_conjugacy_on_tagged_orbits(ax, n):
    a, x = ax
    for p in v1_orbit(a, x, n)[:-1]:
        if p.x == 0 or p.x == 1:
            break
        assert conjugacy_residual(a, p) == 0


@given(alpha_and_x(), ys)
def test_flat1_two_steps_through_shift_is_gauss(ax, y):
    a, x = ax
    p = flat1_step(a, TaggedPoint(x, y, OMEGA_STAR))
    if p.tag == SHIFTED:
        p = flat1_step(a, p)
    assert p.point == ghat_star_step(a, PlanarPoint(x, y))


@given(alpha_and_x(), ys)
def test_flat2_return_time(ax, y):
    a, x = ax
    p = TaggedPoint(x, y, OMEGA_STAR)
    assume(in_vflat2(p))
    try:
        q, t = flat2_step(a, p)
    except DomainError:
        return  # orbit hit x = 0 before returning
    assert t >= 1 and in_vflat2(q)
