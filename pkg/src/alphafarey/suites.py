"""Named verification suites shared by the CLI and the acceptance tests."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .arith import IDENTITY, PoleError, Surd, make_surd, sqrt_surd, to_float
from .expansions import alpha_expand, alpha_gauss_step, rcf_expand, vahlen_borel_check
from .extension import (
    Box,
    branch_matrices,
    cloud_components,
    conjugacy_residual,
    density_ratio,
    measure_estimate,
    sample_domain,
    v1_orbit,
)
from .farey import farey_orbit, flat_indices, induced_FJ, pi_product, predicted_flat_skips
from .lab import (
    CylinderSpec,
    c_from_delta,
    cylinder_frequency,
    delta_from_c,
    delta_to_eta,
    eta_to_delta,
    flat1_symbols,
    matching_detect,
    orbit_decomposition,
    random_delta_word,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{verdict} {self.name}: {self.checked} checks, {len(self.failures)} failures" + (
            f" ({extra})" if extra else "")

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "failures": [str(f) for f in self.failures[:20]], "detail": self.detail}


SQRT2_M1 = sqrt_surd(2) - 1

ALPHAS_WIDE = [Fraction(1, 10), Fraction(3, 10), Fraction(2, 5), SQRT2_M1, Fraction(9, 20),
                Fraction(11, 20), Fraction(7, 10), Fraction(4, 5), Fraction(1)]


def random_rational_in(rng: np.random.Generator, alpha, max_den: int = 1000) -> Fraction:
    """Seeded rational in [alpha - 1, alpha)."""
    lo = to_float(alpha) - 1.0
    while True:
        q = int(rng.integers(2, max_den + 1))
        p = math.floor(lo * q) + int(rng.integers(0, q + 2))
        x = Fraction(p, q)
        if alpha - 1 <= x < alpha:
            return x


def random_surd_in(rng: np.random.Generator, alpha, d: int = 2) -> Surd:
    """Seeded irrational (a + b sqrt d)/c in [alpha - 1, alpha)."""
    lo = to_float(alpha) - 1.0
    r = math.sqrt(d)
    while True:
        b = int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1)
        c = int(rng.integers(7, 200))
        t = lo + rng.random()
        a = round(t * c - b * r)
        x = make_surd(a, b, c, d)
        if isinstance(x, Surd) and alpha - 1 <= x < alpha:
            return x


# ---------------------------------------------------------------------------

def suite_induced(samples: int = 10_000, seed: int = 0, alphas=None) -> SuiteResult:
    """Induced slow map equals the alpha-Gauss map, exactly."""
    rng = np.random.default_rng(seed)
    alphas = alphas or ALPHAS_WIDE
    fails = []
    for i in range(samples):
        a = alphas[i % len(alphas)]
        x = random_rational_in(rng, a)
        if induced_FJ(a, x) != alpha_gauss_step(a, x):
            fails.append((a, x))
    return SuiteResult("induced", not fails, samples, fails)


def mediant_matrix(exp, n: int, ell: int):
    """[[l p_n + e p_{n-1}, p_n], [l q_n + e q_{n-1}, q_n]] with e = eps_{n+1}."""
    e = exp.eps[n]
    pm, qm = exp.convergent(n - 1)
    p, q = exp.convergent(n)
    return (ell * p + e * pm, p, ell * q + e * qm, q)


def suite_products(samples: int = 1000, seed: int = 0, nmax: int = 20, alphas=None) -> SuiteResult:
    """Pi_k against convergent and mediant-column matrices."""
    rng = np.random.default_rng(seed)
    alphas = alphas or ALPHAS_WIDE
    fails, checked = [], 0
    for i in range(samples):
        a = alphas[i % len(alphas)]
        x = random_rational_in(rng, a, 10**6)
        exp = alpha_expand(a, x, nmax)
        sums = exp.partial_sums()
        _, syms = farey_orbit(a, x, sums[-1])
        prod, k = IDENTITY, 0
        for n in range(len(exp.digits)):
            for ell in range(1, exp.digits[n] + 1):
                prod = prod @ syms[k].matrix
                k += 1
                got = (prod.a11, prod.a12, prod.a21, prod.a22)
                if ell == exp.digits[n]:
                    m = exp.matrix(n + 1)
                    want = (m.a11, m.a12, m.a21, m.a22)
                else:
                    want = mediant_matrix(exp, n, ell)
                checked += 1
                if got != want:
                    fails.append((a, x, k))
    return SuiteResult("products", not fails, checked, fails)


def literal_flat_skips(alpha, x, K: int) -> set[int]:
    """Skips read with eps_{n+1} (the sign of the mediant's own block)."""
    exp = alpha_expand(alpha, x, max(K, 1))
    out, s = set(), 0
    for n, a in enumerate(exp.digits):
        if a >= 2 and exp.eps[n] == -1 and s + a - 1 <= K:
            out.add(s + a - 1)
        s += a
    return out


def suite_skips(samples: int = 500, seed: int = 0, K: int = 40, alphas=None,
                 rule: Callable = predicted_flat_skips) -> SuiteResult:
    """Brute-force set difference between full and accelerated streams."""
    rng = np.random.default_rng(seed)
    alphas = alphas or [Fraction(1, 10), Fraction(3, 10), Fraction(2, 5), SQRT2_M1,
                        Fraction(9, 20), Fraction(11, 20), Fraction(7, 10), Fraction(1)]
    fails, checked = [], 0
    for a in alphas:
        for _ in range(samples):
            x = random_rational_in(rng, a, 10**5)
            idx = flat_indices(a, x, K)
            top = idx[-1]
            skipped = set(range(1, top + 1)) - set(idx)
            checked += 1
            if skipped != rule(a, x, top):
                fails.append((a, x))
    return SuiteResult("skips", not fails, checked, fails)


def suite_conjugacy(points: int = 10_000, seed: int = 0, alphas=None, orbit: int = 50) -> SuiteResult:
    """psi^-1 F_flat psi = F on V_1 along tagged orbits, exact residual 0."""
    rng = np.random.default_rng(seed)
    alphas = alphas or [Fraction(1, 10), Fraction(3, 10), SQRT2_M1, Fraction(2, 5)]
    fails, checked, worst = [], 0, 0
    for a in alphas:
        done = 0
        while done < points:
            x = random_surd_in(rng, a) if isinstance(a, Surd) else random_rational_in(rng, a, 10**4)
            for p in v1_orbit(a, x, min(orbit, points - done) - 1):
                r = conjugacy_residual(a, p)
                worst = max(worst, r)
                if r != 0:
                    fails.append((a, p))
                done += 1
                checked += 1
    return SuiteResult("conjugacy", not fails, checked, fails, {"max_residual": str(worst)})


def suite_density(points: int = 1000, seed: int = 0) -> SuiteResult:
    """density_ratio == 1 for every planar branch matrix."""
    rng = np.random.default_rng(seed)
    fails, checked = [], 0
    mats = {str(m): m for ms in branch_matrices(Fraction(3, 10)).values() for m in ms}
    for m in mats.values():
        done = 0
        while done < points:
            x = Fraction(int(rng.integers(-10**6, 10**6)), int(rng.integers(1, 10**6)))
            y = Fraction(int(rng.integers(-10**6, 10**6)), int(rng.integers(1, 10**6)))
            if x == y:
                continue
            try:
                r = density_ratio(m, x, y)
            except PoleError:
                continue
            done += 1
            checked += 1
            if r != 1:
                fails.append((m, x, y))
    return SuiteResult("density", not fails, checked, fails)


def suite_vahlen(samples: int = 1000, seed: int = 0, nmax: int = 50) -> SuiteResult:
    """Vahlen and Borel bounds on irrational surds, n = 1..nmax."""
    rng = np.random.default_rng(seed)
    fails, checked = [], 0
    for _ in range(samples):
        d = int(rng.choice([2, 3, 5, 6, 7, 10, 11, 13]))
        x = random_surd_in(rng, Fraction(1), d)
        exp = rcf_expand(x, nmax + 2)
        for n in range(1, nmax + 1):
            rep = vahlen_borel_check(exp, n)
            checked += 1
            if not (rep.vahlen and rep.borel):
                fails.append((x, n))
    return SuiteResult("vahlen", not fails, checked, fails)


def suite_matching() -> SuiteResult:
    want = {Fraction(11, 20): (2, 2), Fraction(7, 10): (2, 1)}
    fails, detail = [], {}
    for a, nm in want.items():
        m = matching_detect(a)
        detail[str(a)] = None if m is None else (m.n0, m.m0)
        if m is None or (m.n0, m.m0) != nm:
            fails.append((a, m))
    m = matching_detect(Fraction(3, 10))
    detail["3/10"] = None if m is None else (m.n0, m.m0, m.tail_len)
    if m is None or m.tail_len < 100:
        fails.append((Fraction(3, 10), m))
    return SuiteResult("matching", not fails, 3, fails, detail)


def suite_measure(n_samples: int = 400_000, N: int = 10**6, seed: int = 0) -> SuiteResult:
    """Gauss-measure numerics on the alpha = 1 extension."""
    full = Box(0.0, 1.0, -math.inf, -1.0)
    quad = measure_estimate(full, method="quad")
    mc = measure_estimate(full, n_samples=n_samples, seed=seed)
    cyl = measure_estimate(Box(0.5, 1.0, -math.inf, -1.0), method="quad")
    mass = cyl.value / quad.value
    target = math.log2(4 / 3)
    x0 = float(np.random.default_rng(seed).random())
    freq = cylinder_frequency(1, x0, CylinderSpec("AlphaCF", (1,)), N)
    checks = {
        "quad": abs(quad.value - math.log(2)) < 1e-3,
        "mc": abs(mc.value - math.log(2)) < 3 * mc.stderr,
        "cylinder_mass": abs(mass - target) < 0.005,
        "frequency": abs(freq.freq - target) < 0.01,
    }
    fails = [k for k, ok in checks.items() if not ok]
    detail = {"quad": f"{quad.value:.6f}", "mc": f"{mc.value:.5f}+-{mc.stderr:.5f}",
              "mass": f"{mass:.5f}", "freq": f"{freq.freq:.5f}"}
    return SuiteResult("measure", not fails, len(checks), fails, detail)


def suite_geometry(points: int = 100_000, seed: int = 0) -> SuiteResult:
    want = {"sqrt2-1": (SQRT2_M1, 2), "4/5": (Fraction(4, 5), 1)}
    fails, detail = [], {}
    for name, (a, n) in want.items():
        cloud = sample_domain(a, "omega-star", points, seed)
        got, _ = cloud_components(cloud.xw(), 0.05)
        detail[name] = got
        if got != n:
            fails.append((name, got))
    return SuiteResult("geometry", not fails, len(want), fails, detail)


def suite_recoding(words: int = 1000, steps: int = 10**6, orbits: int = 1000,
                   seed: int = 0) -> SuiteResult:
    """delta/eta round trips, c <-> delta reconstruction and orbit transition rules."""
    rng = np.random.default_rng(seed)
    fails, checked = [], 0
    for _ in range(words):
        w = random_delta_word(rng, int(rng.integers(1, 1001)))
        checked += 1
        e = delta_to_eta(w)
        if eta_to_delta(e) != w or delta_to_eta(eta_to_delta(e)) != e:
            fails.append(("roundtrip", w[:10]))
    a = to_float(SQRT2_M1)
    for _ in range(orbits):
        x = float(rng.uniform(a - 1, a))
        deltas, _ = flat1_symbols(SQRT2_M1, x, 60)
        cs = c_from_delta(deltas)
        # drop the tail so the last c is unambiguous and the delta prefix is complete
        cs = cs[:-2]
        while cs and cs[-1] == -2:
            cs.pop()
        rebuilt = delta_from_c(cs)
        checked += 1
        if rebuilt != deltas[:len(rebuilt)]:
            fails.append(("reconstruct", x))
    viol = 0
    for a in (SQRT2_M1, Fraction(3, 10)):
        dec = orbit_decomposition(a, float(rng.uniform(to_float(a) - 1, to_float(a))), steps)
        viol += len(dec.violations)
        checked += 1
        if dec.violations:
            fails.append(("transitions", a, dec.violations[:5]))
    return SuiteResult("recoding", not fails, checked, fails, {"violations": viol})


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "induced": suite_induced,
    "products": suite_products,
    "skips": suite_skips,
    "conjugacy": suite_conjugacy,
    "density": suite_density,
    "vahlen": suite_vahlen,
    "matching": suite_matching,
    "measure": suite_measure,
    "geometry": suite_geometry,
    "recoding": suite_recoding,
}
