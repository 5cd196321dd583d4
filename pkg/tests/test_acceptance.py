"""The ten acceptance criteria at their stated sizes and tolerances.

Each test prints one PASS/FAIL line; the lines are repeated in the
terminal summary.
"""
import time
from fractions import Fraction

import pytest

from alphafarey.suites import (
    SQRT2_M1,
    literal_flat_skips,
    suite_conjugacy,
    suite_density,
    suite_geometry,
    suite_products,
    suite_matching,
    suite_measure,
    suite_induced,
    suite_skips,
    suite_recoding,
    suite_vahlen,
)

from .conftest import ACCEPTANCE_LINES

WIDE_ALPHAS = [Fraction(1, 10), Fraction(3, 10), Fraction(2, 5), SQRT2_M1, Fraction(9, 20),
                Fraction(11, 20), Fraction(7, 10), Fraction(4, 5), Fraction(1)]


def report(number, result, seconds, extra=""):
    line = f"[{number:2d}] {result.line()} in {seconds:.1f}s{extra}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    r = fn(*args, **kwargs)
    return r, time.perf_counter() - t


def test_01_induced_map():
    r, s = timed(suite_induced, samples=10_000, alphas=WIDE_ALPHAS)
    report(1, r, s)
    assert r.passed and r.checked == 10_000
    assert s < 30


def test_02_symbol_products():
    r, s = timed(suite_products, samples=1000, nmax=20)
    report(2, r, s)
    assert r.passed


def test_03_flat_stream_skips():
    # skips are governed by the sign of the block after the mediant's own block;
    # the literal eps_{n+1} reading is run alongside and its mismatch count reported
    r, s = timed(suite_skips, samples=500)
    lit = suite_skips(samples=500, rule=literal_flat_skips)
    report(3, r, s, f"; literal eps_(n+1) reading: {len(lit.failures)}/{lit.checked} mismatches")
    assert r.passed


def test_04_conjugacy():
    r, s = timed(suite_conjugacy, points=10_000)
    report(4, r, s)
    assert r.passed


def test_05_density_invariance():
    r, s = timed(suite_density, points=1000)
    report(5, r, s)
    assert r.passed


def test_06_vahlen_borel():
    r, s = timed(suite_vahlen, samples=1000, nmax=50)
    report(6, r, s)
    assert r.passed


def test_07_matching():
    r, s = timed(suite_matching)
    report(7, r, s)
    assert r.passed
    assert s < 10


def test_08_measure_numerics():
    r, s = timed(suite_measure, N=10**6)
    report(8, r, s)
    assert r.passed


def test_09_geometry():
    r, s = timed(suite_geometry, points=100_000)
    report(9, r, s)
    assert r.passed


def test_10_recoding():
    r, s = timed(suite_recoding, words=1000, steps=10**6)
    report(10, r, s)
    assert r.passed
