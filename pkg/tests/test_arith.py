from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from alphafarey.arith import (
    IDENTITY,
    NEG_INF,
    BigFloat,
    FieldMismatchError,
    MobiusMatrix,
    NotASurd,
    PoleError,
    PrecisionError,
    Surd,
    algebraic_conjugate,
    compare_exact,
    floor_exact,
    format_real,
    make_surd,
    mobius_apply,
    mobius_compose,
    parse_real,
    sqrt_surd,
    with_precision_retry,
)

from . import oracles

R2 = sqrt_surd(2)


# -- mobius ---------------------------------------------------------------

def test_mobius_apply_examples():
    assert mobius_apply(MobiusMatrix(1, 0, -1, 1), F(1, 3)) == F(1, 2)
    assert mobius_apply(IDENTITY, F(7, 5)) == F(7, 5)
    assert mobius_apply(MobiusMatrix(1, 0, 1, 1), NEG_INF) == F(1)


def test_mobius_neg_inf_fixed_and_pole():
    assert mobius_apply(MobiusMatrix(2, 1, 0, 1), NEG_INF) is NEG_INF
    with pytest.raises(PoleError):
        mobius_apply(MobiusMatrix(-1, 0, 0, 1), NEG_INF)
    with pytest.raises(PoleError):
        mobius_apply(MobiusMatrix(1, 0, 1, 1), F(-1))


def test_mobius_float_neg_inf_stays_float():
    v = mobius_apply(MobiusMatrix(1, 0, 1, 1), float("-inf"))
    assert isinstance(v, float) and v == 1.0


def test_mobius_compose_examples():
    p, r = MobiusMatrix(1, 0, 1, 1), MobiusMatrix(0, 1, 1, 1)
    assert mobius_compose(p, p) == MobiusMatrix(1, 0, 2, 1)
    assert mobius_compose(MobiusMatrix(1, 0, 2, 1), r) == MobiusMatrix(0, 1, 1, 3)
    assert mobius_compose(r, r.inverse()) == IDENTITY


# -- floors and comparisons -----------------------------------------------

def test_floor_examples():
    assert floor_exact(F(10, 3)) == 3
    assert floor_exact(R2) == 1
    assert floor_exact(-R2) == -2


@pytest.mark.parametrize("a,b,c,d", [(3, 5, 7, 2), (-11, 4, 3, 5), (1, -9, 13, 7), (0, -1, 1, 3)])
def test_floor_matches_mp_oracle(a, b, c, d):
    assert floor_exact(make_surd(a, b, c, d)) == oracles.surd_floor(a, b, c, d)


def test_compare_examples():
    assert compare_exact(1 / (2 + R2 - 1), R2 - 1) == 0
    assert compare_exact(F(0), F(1, 2)) == -1
    assert compare_exact(R2 - 1, F(2, 5)) == 1


def test_conjugate_examples():
    assert algebraic_conjugate(1 + R2) == 1 - R2
    assert algebraic_conjugate(R2 - 1) == -R2 - 1
    x = make_surd(3, -2, 7, 5)
    assert algebraic_conjugate(algebraic_conjugate(x)) == x
    with pytest.raises(NotASurd):
        algebraic_conjugate(F(1, 2))


def test_surd_rationalises_and_rejects_mixed_fields():
    assert (R2 - 1) * (R2 + 1) == 1
    assert isinstance((R2 - 1) * (R2 + 1), F)
    with pytest.raises(FieldMismatchError):
        R2 + sqrt_surd(3)
    with pytest.raises(FieldMismatchError):
        R2 < sqrt_surd(3)


def test_bigfloat_floor_near_integer_raises():
    x = BigFloat(F(1), 64) + BigFloat(mpmath.mpf(2) ** -70, 64)
    with pytest.raises(PrecisionError):
        floor_exact(x)


def test_bigfloat_negation_keeps_precision():
    b = parse_real("1.3")
    assert abs((-b + R2).value - (mpmath.sqrt(2) - mpmath.mpf("1.3"))) < mpmath.mpf(10) ** -70


def test_precision_retry_doubles():
    seen = []

    def fn(prec):
        seen.append(prec)
        if prec < 1024:
            raise PrecisionError("more")
        return prec

    assert with_precision_retry(fn, 256) == 1024
    assert seen == [256, 512, 1024]


# -- text forms ------------------------------------------------------------

@pytest.mark.parametrize("text,value", [
    ("3/7", F(3, 7)),
    ("-3/8", F(-3, 8)),
    ("sqrt2-1", R2 - 1),
    ("(1+sqrt(5))/2", make_surd(1, 1, 2, 5)),
    ("(-16+5*sqrt(5))/10", make_surd(-16, 5, 10, 5)),
])
def test_parse_real(text, value):
    assert parse_real(text) == value


def test_format_round_trip():
    for v in (F(-3, 8), R2 - 1, make_surd(-16, 5, 10, 5)):
        assert parse_real(format_real(v)) == v
    b = parse_real("0.55")
    assert isinstance(b, BigFloat)
    assert parse_real(format_real(b)) == b
    assert format_real(NEG_INF) == "-inf"


# -- properties ------------------------------------------------------------

ints = st.integers(-50, 50)
mats = st.tuples(ints, ints, ints, ints).map(lambda t: MobiusMatrix(*t))
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=500)
surds = st.tuples(st.integers(-200, 200), st.integers(-30, 30).filter(bool),
                  st.integers(1, 200), st.sampled_from([2, 3, 5, 7, 10])).map(lambda t: Surd(*t))


@given(mats, mats, fracs)
def test_compose_is_action(m1, m2, v):
    try:
        lhs = mobius_apply(m1 @ m2, v)
        rhs = mobius_apply(m1, mobius_apply(m2, v))
    except PoleError:
        return
    assert lhs == rhs


@given(st.one_of(fracs, surds))
def test_floor_brackets(x):
    n = floor_exact(x)
    assert n <= x < n + 1


@given(surds)
def test_normalisation_idempotent(x):
    y = Surd(x.a, x.b, x.c, x.d)
    assert (y.a, y.b, y.c, y.d) == (x.a, x.b, x.c, x.d)
    assert algebraic_conjugate(algebraic_conjugate(x)) == x


@given(surds, surds)
def test_compare_agrees_with_mp(x, y):
    if x.d != y.d:
        return
    want = mpmath.sign(oracles.surd_value(x.a, x.b, x.c, x.d) - oracles.surd_value(y.a, y.b, y.c, y.d))
    assert compare_exact(x, y) == int(want)
