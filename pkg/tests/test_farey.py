from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from alphafarey.arith import IDENTITY, DomainError, MobiusMatrix, NEG_INF, mobius_apply, sqrt_surd
from alphafarey.expansions import alpha_expand, alpha_gauss_step
from alphafarey.farey import (
    SYM_ID,
    SYM_MINUS,
    SYM_R,
    alpha_farey_step,
    duplication_pair,
    farey_orbit,
    farey_step,
    flat_indices,
    flat_mediant_sequence,
    flat_step,
    induced_FJ,
    j_index,
    mediant_sequence,
    pi_product,
    predicted_flat_skips,
    sharp_step,
    symbol_of,
)
from alphafarey.suites import literal_flat_skips, mediant_matrix

from . import oracles

R2 = sqrt_surd(2)


def test_farey_step_examples():
    assert farey_step(F(1, 3)) == F(1, 2)
    assert farey_step(F(1, 2)) == 1
    assert farey_step(F(0)) == 0


def test_alpha_farey_examples():
    a = F(1, 4)
    assert alpha_farey_step(a, F(-1, 2)) == 1
    assert alpha_farey_step(a, F(2)) == F(-1, 2)
    assert alpha_farey_step(a, F(0)) == 0
    with pytest.raises(DomainError):
        alpha_farey_step(a, F(5))


def test_symbol_examples():
    a = F(1, 4)
    assert symbol_of(a, F(-1, 2)) is SYM_MINUS
    assert symbol_of(a, F(0)) is SYM_ID
    assert symbol_of(a, F(2)) is SYM_R


def test_pi_product_examples():
    assert pi_product(1, F(3, 10), 3) == MobiusMatrix(0, 1, 1, 3)
    assert pi_product(F(2, 5), F(-3, 8), 0) == IDENTITY
    assert pi_product(F(2, 5), F(-3, 8), 6) == MobiusMatrix(-1, -3, 3, 8)


def test_mediant_stream_examples():
    s = mediant_sequence(1, F(3, 10), 3)
    assert s.values() == [F(1), F(1, 2), F(0)]
    s = mediant_sequence(F(2, 5), F(-3, 8), 6)
    kinds = {(e.kind, e.n, e.ell): e.value for e in s.entries}
    assert kinds[("principal", 1, 0)] == F(-1, 3)
    assert kinds[("mediant", 2, 2)] == F(-2, 5)


def test_rational_stream_ends_constant():
    s = mediant_sequence(F(3, 10), F(2, 7), 30)
    tail = [e for e in s.entries if e.kind == "terminal"]
    assert tail and all(e.value == F(2, 7) for e in tail)


def test_stream_csv_columns():
    text = mediant_sequence(1, F(3, 10), 3).to_csv({"seed": 0})
    lines = text.splitlines()
    assert lines[0] == "# seed: 0"
    assert lines[1] == "k,p,q,kind,n,ell"
    assert lines[2] == "1,1,1,mediant,1,1"


def test_j_index_examples():
    assert j_index(F(9, 20), F(21, 50)) == 1
    assert j_index(F(9, 20), F(0)) == 0
    assert j_index(F(4, 5), F(7, 10)) == 0


def test_induced_examples():
    assert induced_FJ(F(2, 5), F(-3, 10)) == F(1, 3)
    assert induced_FJ(F(2, 5), F(0)) == 0
    assert induced_FJ(F(4, 5), F(7, 10)) == F(3, 7)


def test_flat_step_examples():
    a = F(3, 10)
    assert flat_step(a, F(-3, 5)) == (F(-1, 3), 2)
    assert flat_step(a, F(3, 5)) == (F(-1, 3), 2)
    assert flat_step(a, F(4, 5)) == (F(1, 4), 1)


def test_flat_step_alpha_one_is_farey():
    for x in (F(1, 5), F(1, 2), F(2, 3), F(1)):
        assert flat_step(1, x) == (alpha_farey_step(1, x), 1)


def test_sharp_step_examples():
    a = F(3, 10)
    assert sharp_step(a, F(-1, 4)) == F(1, 2)
    assert sharp_step(a, F(1, 2)) == 1
    assert sharp_step(a, F(2)) == F(-1, 2)


def test_flat_stream_examples():
    full = mediant_sequence(F(2, 5), F(-3, 8), 6)
    flat = flat_mediant_sequence(F(2, 5), F(-3, 8), 4)
    assert F(-2, 5) in full.values()
    assert F(-2, 5) not in flat.values()
    assert [e.k for e in flat.entries] == [1, 3, 4, 6]
    # alpha = 1: nothing is skipped
    x = F(13, 47)
    assert flat_mediant_sequence(1, x, 10).values() == mediant_sequence(1, x, 10).values()
    # all eps = +1 (sqrt2 - 1 = [0; 2, 2, ...]): nothing is skipped either
    y = R2 - 1
    assert all(e == 1 for e in alpha_expand(F(1, 2), y, 10).eps)
    assert flat_mediant_sequence(F(1, 2), y, 12).values() == mediant_sequence(F(1, 2), y, 12).values()


def test_skip_sign_comes_from_next_digit():
    # digits (-,4), (-,5), (+,22): the (2, 4) mediant at k = 8 is kept because
    # the orbit point after block 2 is positive
    a, x = F(1, 10), F(-2034, 7733)
    e = alpha_expand(a, x, 3)
    assert list(zip(e.eps, e.digits)) == [(-1, 4), (-1, 5), (1, 22)]
    top = flat_indices(a, x, 12)[-1]
    skipped = set(range(1, top + 1)) - set(flat_indices(a, x, 12))
    assert skipped == predicted_flat_skips(a, x, top) == {3}
    assert literal_flat_skips(a, x, top) == {3, 8}


def test_flat_orbit_inconsistent_boundary_rejected():
    with pytest.raises(DomainError):
        flat_step(F(3, 10), F(3, 2))


# -- properties ------------------------------------------------------------

alphas = st.sampled_from([F(1, 10), F(3, 10), F(2, 5), F(9, 20), F(11, 20), F(7, 10), F(4, 5), F(1)])


@st.composite
def alpha_and_x(draw):
    a = draw(alphas)
    x = draw(st.fractions(min_value=a - 1, max_value=a, max_denominator=10**5))
    assume(x < a)
    return a, x


@given(alpha_and_x())
def test_induced_slow_map_is_gauss(ax):
    a, x = ax
    assert induced_FJ(a, x) == alpha_gauss_step(a, x)


@given(alpha_and_x(), st.integers(0, 40))
def test_pi_product_matches_oracle(ax, k):
    a, x = ax
    assert pi_product(a, x, k).rows() == oracles.pi_product(a, x, k)


@given(alpha_and_x())
def test_products_are_convergent_columns(ax):
    a, x = ax
    e = alpha_expand(a, x, 12)
    sums = e.partial_sums()
    assume(sums[-1] < 300)
    for n in range(len(e.digits)):
        m = pi_product(a, x, sums[n + 1])
        assert m == e.matrix(n + 1)
        for ell in range(1, e.digits[n]):
            m = pi_product(a, x, sums[n] + ell)
            assert (m.a11, m.a12, m.a21, m.a22) == mediant_matrix(e, n, ell)


@given(alpha_and_x())
def test_symbol_grammar(ax):
    """Between R symbols: a_n - 1 others, the first Minus iff eps_n = -1."""
    a, x = ax
    e = alpha_expand(a, x, 10)
    assume(sum(e.digits) < 800)
    _, syms = farey_orbit(a, x, sum(e.digits))
    pos = 0
    for eps, d in zip(e.eps, e.digits):
        block = [s.tag for s in syms[pos:pos + d]]
        assert block[-1] == "R"
        assert "R" not in block[:-1]
        if d > 1:
            assert (block[0] == "Minus") == (eps == -1)
            assert "Minus" not in block[1:-1]
        pos += d


@given(alpha_and_x())
def test_mediant_error_bound(ax):
    a, x = ax
    e = alpha_expand(a, x, 10)
    assume(sum(e.digits) < 800)
    s = mediant_sequence(a, x, sum(e.digits))
    for entry in s.entries:
        if entry.kind == "mediant":
            q_prev = e.convergent(entry.n - 2)[1] if entry.n >= 2 else 1
            assert abs(x - entry.value) < F(1, q_prev)
            _, qn = e.convergent(entry.n - 1)
            assert entry.ell * qn + e.eps[entry.n - 1] * e.convergent(entry.n - 2)[1] > 0


@given(alpha_and_x())
def test_flat_skips_brute_force(ax):
    a, x = ax
    idx = flat_indices(a, x, 30)
    top = idx[-1]
    assert set(range(1, top + 1)) - set(idx) == predicted_flat_skips(a, x, top)
    assert all(k in (1, 2) for k in (b - c for b, c in zip(idx, [0] + idx)))


@given(alpha_and_x())
def test_duplication_identity(ax):
    a, x = ax
    e = alpha_expand(a, x, 10)
    for n in range(1, len(e.digits) - 1):
        lhs, rhs = duplication_pair(e, n)
        assert lhs == rhs


@given(st.sampled_from([R2 - 1, (R2 - 1) / 2, 2 * R2 - 2]),
       st.integers(1, 400), st.integers(3, 97))
def test_stream_converges_for_surds(alpha, num, den):
    x = alpha - 1 + F(num % den, den) * (1 - F(1, 10**6))
    if x == 0 or not (alpha - 1 <= x < alpha):
        return
    if alpha > 1:
        return
    s = mediant_sequence(alpha, x, 40)
    v = [e.value for e in s.entries if e.kind == "principal"]
    errs = [abs(x - t) for t in v]
    assert all(b < c for b, c in zip(errs[1:], errs))
    assert mobius_apply(pi_product(alpha, x, 0), NEG_INF) is NEG_INF
