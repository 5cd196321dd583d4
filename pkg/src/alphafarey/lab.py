"""Digit codings, finite-orbit normality diagnostics, matching and thin cylinders."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import (
    AlphaFareyError,
    BigFloat,
    DEFAULT_PRECISION,
    DomainError,
    NEG_INF,
    format_real,
    is_exact,
    to_exact,
    to_float,
    with_precision_retry,
)
from .expansions import alpha_digit, alpha_expand, alpha_gauss_step, check_alpha
from .extension import (
    OMEGA_STAR,
    SHIFTED,
    Box,
    CloudRegion,
    TaggedPoint,
    cylinder_interval,
    k0_of,
    measure_estimate,
    sample_domain,
)


class GrammarError(AlphaFareyError):
    exit_code = 2


class TerminatedOrbitError(AlphaFareyError):
    exit_code = 2


class NotFound(AlphaFareyError):
    exit_code = 1


# ---------------------------------------------------------------------------
# delta symbols
# ---------------------------------------------------------------------------

MINUS, PLUS, ZERO = "Minus", "Plus", "Zero"
_SIGIL = {MINUS: "-", PLUS: "+", ZERO: "0"}


@dataclass(frozen=True)
class DeltaSymbol:
    cls: str
    k: int

    def __str__(self):
        return f"d{_SIGIL[self.cls]}{self.k}"

    @classmethod
    def parse(cls, text: str) -> "DeltaSymbol":
        text = text.strip()
        if len(text) < 3 or text[0] != "d" or text[1] not in "-+0":
            raise GrammarError(f"bad delta symbol {text!r}")
        kind = {"-": MINUS, "+": PLUS, "0": ZERO}[text[1]]
        return cls(kind, int(text[2:]))


def delta_digit(alpha, p) -> DeltaSymbol:
    """delta of a point of V_flat1: the Omega* cylinder, or Zero on the shifted part."""
    alpha = check_alpha(alpha)
    tag = getattr(p, "tag", OMEGA_STAR)
    if tag == SHIFTED:
        return DeltaSymbol(ZERO, p.j)
    if tag != OMEGA_STAR:
        raise DomainError(f"delta_digit needs a point of V_flat1, got tag {tag}")
    x = p.x
    if x == 0:
        raise DomainError("delta is undefined at x = 0")
    eps, b = _digit(alpha, x)
    return DeltaSymbol(PLUS if eps > 0 else MINUS, b)


def _digit(alpha, x):
    if isinstance(x, float):
        a = to_float(alpha)
        inv = 1.0 / x
        if inv < 0:
            return -1, math.floor(1.0 - a - inv)
        return 1, math.floor(inv + 1.0 - a)
    return alpha_digit(alpha, x)


def validate_delta_word(word: Sequence[DeltaSymbol], k0: int = 1) -> None:
    """Raise GrammarError unless the word obeys the flat1 transition rules."""
    for i, s in enumerate(word):
        nxt = word[i + 1] if i + 1 < len(word) else None
        if s.cls not in (MINUS, PLUS, ZERO):
            raise GrammarError(f"unknown class at {i}")
        if s.cls == PLUS and s.k < max(k0, 1):
            raise GrammarError(f"{s} below k0={k0} at {i}")
        if s.cls in (MINUS, ZERO) and s.k < 2:
            raise GrammarError(f"{s} needs k >= 2 at {i}")
        if s.cls == ZERO and (i == 0 or word[i - 1] != DeltaSymbol(MINUS, s.k)):
            raise GrammarError(f"{s} at {i} not preceded by d-{s.k}")
        if nxt is None:
            continue
        if s.cls == MINUS and s.k >= 3 and nxt != DeltaSymbol(ZERO, s.k):
            raise GrammarError(f"{s} at {i} not followed by d0{s.k}")
        if s.cls == MINUS and s.k == 2 and nxt.cls == PLUS:
            raise GrammarError(f"d-2 at {i} followed by {nxt}")
        if s == DeltaSymbol(ZERO, 2) and nxt.cls != PLUS:
            raise GrammarError(f"d02 at {i} followed by {nxt}")


def validate_eta_word(word: Sequence[DeltaSymbol], k0: int = 1) -> None:
    """eta words: d0k (k >= 3) after d-k; d02 followed by a plus digit.

    A d-2 d02 pair is legal here: it comes from d-2 d-2 d02, the first d-2
    lying left of -1/2.
    """
    for i, s in enumerate(word):
        nxt = word[i + 1] if i + 1 < len(word) else None
        if s.cls == PLUS and s.k < max(k0, 1):
            raise GrammarError(f"{s} below k0={k0} at {i}")
        if s.cls in (MINUS, ZERO) and s.k < 2:
            raise GrammarError(f"{s} needs k >= 2 at {i}")
        if s.cls == ZERO and s.k >= 3 and (i == 0 or word[i - 1] != DeltaSymbol(MINUS, s.k)):
            raise GrammarError(f"{s} at {i} not preceded by d-{s.k}")
        if nxt is None:
            continue
        if s.cls == MINUS and s.k >= 3 and nxt != DeltaSymbol(ZERO, s.k):
            raise GrammarError(f"{s} at {i} not followed by d0{s.k}")
        if s == DeltaSymbol(ZERO, 2) and nxt.cls != PLUS:
            raise GrammarError(f"d02 at {i} followed by {nxt}")


def delta_to_eta(word: Sequence[DeltaSymbol], k0: int = 1) -> list[DeltaSymbol]:
    """Delete every d-2 that is immediately followed by d02."""
    validate_delta_word(word, k0)
    d02 = DeltaSymbol(ZERO, 2)
    m2 = DeltaSymbol(MINUS, 2)
    return [s for i, s in enumerate(word)
            if not (s == m2 and i + 1 < len(word) and word[i + 1] == d02)]


def eta_to_delta(word: Sequence[DeltaSymbol], k0: int = 1) -> list[DeltaSymbol]:
    """Insert d-2 before every d02."""
    validate_eta_word(word, k0)
    out: list[DeltaSymbol] = []
    for s in word:
        if s == DeltaSymbol(ZERO, 2):
            out.append(DeltaSymbol(MINUS, 2))
        out.append(s)
    return out


def random_delta_word(rng: np.random.Generator, length: int, k0: int = 2, kmax: int = 6) -> list[DeltaSymbol]:
    """A random grammar-valid delta word of exactly the given length."""
    out: list[DeltaSymbol] = []
    while len(out) < length:
        prev = out[-1] if out else None
        if prev is not None and prev.cls == MINUS and (prev.k >= 3 or rng.random() < 0.5):
            out.append(DeltaSymbol(ZERO, prev.k))
            continue
        if prev == DeltaSymbol(ZERO, 2):
            out.append(DeltaSymbol(PLUS, int(rng.integers(max(k0, 1), kmax + 1))))
            continue
        if prev is not None and prev.cls == MINUS:  # d-2 heading left
            out.append(DeltaSymbol(MINUS, int(rng.integers(2, kmax + 1))))
            continue
        if rng.random() < 0.5:
            out.append(DeltaSymbol(PLUS, int(rng.integers(max(k0, 1), kmax + 1))))
        else:
            out.append(DeltaSymbol(MINUS, int(rng.integers(2, kmax + 1))))
    if out and out[-1].cls == MINUS and out[-1].k >= 3:
        out[-1] = DeltaSymbol(PLUS, max(k0, 1))
        if len(out) >= 2 and out[-2].cls == MINUS:
            out[-1] = DeltaSymbol(MINUS, 2) if out[-2].k == 2 else out[-1]
    validate_delta_word(out, k0)
    return out


def delta_from_c(cs: Sequence[int]) -> list[DeltaSymbol]:
    """Rebuild the delta sequence from signed alpha-digits (last digit must not be -2)."""
    out = []
    for i, c in enumerate(cs):
        if c > 0:
            out.append(DeltaSymbol(PLUS, c))
            continue
        k = -c
        out.append(DeltaSymbol(MINUS, k))
        if k >= 3:
            out.append(DeltaSymbol(ZERO, k))
        elif i + 1 < len(cs):
            if cs[i + 1] > 0:
                out.append(DeltaSymbol(ZERO, 2))
        else:
            raise GrammarError("a trailing -2 does not determine the next delta")
    return out


def c_from_delta(word: Sequence[DeltaSymbol]) -> list[int]:
    return [s.k if s.cls == PLUS else -s.k for s in word if s.cls != ZERO]


# ---------------------------------------------------------------------------
# flat1 orbits in x alone (the digits never depend on y)
# ---------------------------------------------------------------------------

def flat1_symbols(alpha, x, n: int) -> tuple[list[DeltaSymbol], list]:
    """delta_1..delta_n and the first coordinates along the flat1 orbit of (x, -inf)."""
    alpha = check_alpha(alpha)
    if not isinstance(x, float):
        x = to_exact(x)
    fl = isinstance(x, float)
    syms: list[DeltaSymbol] = []
    xs: list = []
    tag, k = OMEGA_STAR, 0
    for _ in range(n):
        if tag == SHIFTED:
            syms.append(DeltaSymbol(ZERO, k))
            xs.append(x)
            x = 1 / x - (k - 1)
            tag = OMEGA_STAR
            continue
        if x == 0:
            raise TerminatedOrbitError("flat1 orbit reached x = 0")
        eps, b = _digit(alpha, x)
        syms.append(DeltaSymbol(PLUS if eps > 0 else MINUS, b))
        xs.append(x)
        if eps < 0 and 2 * x >= -1:
            x = -x / (1 + x)
            tag, k = SHIFTED, b
        else:
            x = (1.0 if fl else 1) / x * eps - b
    return syms, xs


@dataclass
class OrbitDecomposition:
    r: list[int]
    N1: list[int]
    N2: list[int]
    deltas: list[DeltaSymbol]
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def transition_violations(deltas: Sequence[DeltaSymbol], xs: Sequence) -> list[tuple[int, str]]:
    """Indices (1-based) breaking the flat1 transition rules."""
    bad = []
    n = len(deltas)
    r = [i + 1 for i, s in enumerate(deltas) if s.cls != ZERO]
    for a, b in zip(r, r[1:]):
        if b - a not in (1, 2):
            bad.append((a, "gap"))
    for i, s in enumerate(deltas):
        nxt = deltas[i + 1] if i + 1 < n else None
        prev = deltas[i - 1] if i > 0 else None
        if s.cls == ZERO and prev != DeltaSymbol(MINUS, s.k):
            bad.append((i + 1, "zero-without-minus"))
        if nxt is None:
            continue
        if s.cls == MINUS and s.k >= 3 and nxt != DeltaSymbol(ZERO, s.k):
            bad.append((i + 1, "minus-k-then-zero-k"))
        if s == DeltaSymbol(MINUS, 2):
            if 2 * xs[i] >= -1 and nxt != DeltaSymbol(ZERO, 2):
                bad.append((i + 1, "minus2-right-then-zero2"))
            if 2 * xs[i] < -1 and nxt.cls != MINUS:
                bad.append((i + 1, "minus2-left-then-minus"))
        if s.cls == PLUS and nxt.cls == ZERO:
            bad.append((i + 1, "plus-then-omega"))
        if s == DeltaSymbol(ZERO, 2) and nxt.cls != PLUS:
            bad.append((i + 1, "zero2-then-plus"))
    return bad


def orbit_decomposition(alpha, x, N: int) -> OrbitDecomposition:
    """Return times r_j to Omega* along the flat1 orbit, with rule checks."""
    if N < 1:
        raise DomainError("N must be >= 1")
    deltas, xs = flat1_symbols(alpha, x, N)
    n1 = [i + 1 for i, s in enumerate(deltas) if s.cls != ZERO]
    n2 = [i + 1 for i, s in enumerate(deltas) if s.cls == ZERO]
    return OrbitDecomposition(n1, n1, n2, deltas, transition_violations(deltas, xs))


# ---------------------------------------------------------------------------
# Cylinder frequencies
# ---------------------------------------------------------------------------

FAMILIES = ("AlphaCF", "Flat1", "Flat2")


@dataclass(frozen=True)
class CylinderSpec:
    family: str
    word: tuple

    def __str__(self):
        return f"{self.family}<{','.join(str(w) for w in self.word)}>"


def alpha_cf_digits(alpha, x, n: int) -> list[int]:
    """First n signed digits c_j of x; floats follow the rounded orbit."""
    alpha = check_alpha(alpha)
    out = []
    if isinstance(x, float):
        a = to_float(alpha)
        for _ in range(n):
            if x == 0.0:
                raise TerminatedOrbitError("float orbit hit 0")
            inv = 1.0 / x
            if inv < 0:
                b = math.floor(1.0 - a - inv)
                out.append(-b)
                x = -inv - b
            else:
                b = math.floor(inv + 1.0 - a)
                out.append(b)
                x = inv - b
        return out
    x = to_exact(x)
    for _ in range(n):
        if x == 0:
            raise TerminatedOrbitError("rational orbit terminated")
        e, b = alpha_digit(alpha, x)
        out.append(e * b)
        x = alpha_gauss_step(alpha, x)
    return out


@dataclass(frozen=True)
class Frequency:
    freq: float
    count: int
    N: int


def _count_word(seq: Sequence, word: Sequence, N: int) -> int:
    ell = len(word)
    w = list(word)
    return sum(1 for m in range(N) if list(seq[m:m + ell]) == w)


def flat2_symbols(alpha, x, n: int) -> list[DeltaSymbol]:
    """eta digits read along the induced orbit: the flat1 symbols at V_flat2 points."""
    from .extension import flat1_step, in_vflat2
    alpha = check_alpha(alpha)
    p = TaggedPoint(x if isinstance(x, float) else to_exact(x), -math.inf if isinstance(x, float) else NEG_INF, OMEGA_STAR)
    out = []
    while len(out) < n:
        if p.x == 0:
            raise TerminatedOrbitError("orbit reached x = 0")
        if in_vflat2(p):
            out.append(delta_digit(alpha, p))
        p = flat1_step(alpha, p)
    return out


def cylinder_frequency(alpha, x, spec: CylinderSpec, N: int) -> Frequency:
    """Birkhoff frequency of the cylinder over the first N orbit positions."""
    if N < 1:
        raise DomainError("N must be >= 1")
    ell = len(spec.word)
    if spec.family == "AlphaCF":
        seq = alpha_cf_digits(alpha, x, N + ell - 1)
    elif spec.family == "Flat1":
        seq, _ = flat1_symbols(alpha, x, N + ell - 1)
    elif spec.family == "Flat2":
        seq = flat2_symbols(alpha, x, N + ell - 1)
    else:
        raise DomainError(f"unknown family {spec.family!r}")
    c = _count_word(seq, spec.word, N)
    return Frequency(c / N, c, N)


def _omega_star_ratio(alpha, num, den, n_points: int, n_samples: int, seed: int,
                      resolution: float = 0.004) -> tuple[float, float]:
    """MC estimate of int num / int den over Omega*, num and den being weights in x.

    Omega* is approximated by the occupancy grid of a seeded orbit cloud; the
    standard error comes from the delta method on the ratio of means.
    """
    cloud = sample_domain(alpha, "omega-star", n_points, seed)
    region = CloudRegion(cloud, resolution)
    rng = np.random.default_rng(seed + 1)
    box = region.box
    w0, w1 = box.w_range()
    xs = rng.uniform(box.x0, box.x1, n_samples)
    ws = rng.uniform(w0, w1, n_samples)
    with np.errstate(divide="ignore"):
        ys = np.where(ws == 0, -np.inf, -1.0 / ws)
    dens = region(xs, ys) / (1.0 + xs * ws) ** 2
    a = dens * num(xs)
    b = dens * den(xs)
    ma, mb = a.mean(), b.mean()
    if mb == 0:
        raise DomainError("empty reference region")
    ga, gb = 1.0 / mb, -ma / (mb * mb)
    cov = np.cov(np.vstack([a, b]))
    var = ga * ga * cov[0, 0] + gb * gb * cov[1, 1] + 2 * ga * gb * cov[0, 1]
    return float(ma / mb), float(math.sqrt(max(var, 0.0) / n_samples))


def n2_measure_fraction(alpha, n_points: int = 200_000, n_samples: int = 400_000,
                        seed: int = 0) -> tuple[float, float]:
    """mu(shifted part) / mu(V_flat1).

    The shifted part is the image of Omega* on -1/2 <= x < 0 under a
    measure-preserving branch, so only Omega* needs sampling.
    """
    def strip(x):
        return ((x >= -0.5) & (x < 0)).astype(float)

    return _omega_star_ratio(alpha, strip, lambda x: 1.0 + strip(x), n_points, n_samples, seed)


def cylinder_measure(alpha, spec: CylinderSpec, n_points: int = 200_000,
                     n_samples: int = 400_000, seed: int = 0) -> tuple[float, float]:
    """(mu, stderr) of a cylinder under the normalised invariant measure.

    AlphaCF words of any length; Flat1 single symbols only.  For alpha = 1
    the domain is the unit square in (x, -1/y) and quadrature is used.
    """
    alpha = check_alpha(alpha)
    if spec.family == "AlphaCF":
        cyl = word_cylinder(alpha, spec.word)
        if cyl is None:
            return 0.0, 0.0
        lo, hi = (to_float(v) for v in cyl.interval)
        if alpha == 1:
            r = measure_estimate(Box(lo, hi, -math.inf, -1.0), method="quad")
            return r.value / math.log(2), r.stderr / math.log(2)
        return _omega_star_ratio(alpha, lambda x: ((x >= lo) & (x <= hi)).astype(float),
                                 lambda x: np.ones_like(x), n_points, n_samples, seed)
    if spec.family == "Flat1" and len(spec.word) == 1:
        s = spec.word[0]
        sign = "+" if s.cls == PLUS else "-"
        iv = cylinder_interval(alpha, sign, s.k)
        if iv is None:
            return 0.0, 0.0
        lo, hi = (to_float(v) for v in iv)
        if s.cls == ZERO:
            lo = max(lo, -0.5)

        def strip(x):
            return ((x >= -0.5) & (x < 0)).astype(float)

        return _omega_star_ratio(alpha, lambda x: ((x >= lo) & (x <= hi)).astype(float),
                                 lambda x: 1.0 + strip(x), n_points, n_samples, seed)
    raise DomainError(f"no measure estimate for {spec}")


def farey_normality_report(alpha, x, specs: Sequence[CylinderSpec], N: int,
                           seed: int = 0) -> dict:
    """Empirical flat1/alpha-CF frequencies with the N2-fraction diagnostic."""
    alpha = check_alpha(alpha)
    deltas, _ = flat1_symbols(alpha, x, N)
    n2 = sum(1 for s in deltas if s.cls == ZERO)
    report = {
        "alpha": format_real(alpha),
        "N": N,
        "n1_fraction": 1 - n2 / N,
        "n2_fraction": n2 / N,
        "specs": [],
    }
    if alpha == 1:
        report["n2_measure"] = 0.0
        report["n2_stderr"] = 0.0
    else:
        m, se = n2_measure_fraction(alpha, seed=seed)
        report["n2_measure"] = m
        report["n2_stderr"] = se
    for spec in specs:
        f = cylinder_frequency(alpha, x, spec, N)
        report["specs"].append({"spec": str(spec), "freq": f.freq, "count": f.count})
    return report


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Match:
    n0: int  # steps on alpha
    m0: int  # steps on alpha - 1
    tail_len: int
    value: object

    def to_dict(self) -> dict:
        return {"n0": self.n0, "m0": self.m0, "tail_len": self.tail_len,
                "value": format_real(self.value)}


def _gauss_orbit(alpha, x, n: int) -> list:
    out = [x]
    for _ in range(n):
        if out[-1] == 0:
            out.append(out[-1])
        else:
            out.append(alpha_gauss_step(alpha, out[-1]))
    return out


def _signed_digits(alpha, orbit: Sequence) -> list[tuple[int, int]]:
    return [(0, 0) if v == 0 else alpha_digit(alpha, v) for v in orbit]


def matching_detect(alpha, max_steps: int = 200, precision: int = DEFAULT_PRECISION,
                    tail: int = 100) -> Match | None:
    """Least n0 + m0 (then least n0) with G^n0(alpha) = G^m0(alpha - 1).

    Exact inputs compare exactly; inexact ones need `tail` agreeing digits.
    """
    alpha = check_alpha(alpha)
    if alpha == 1:
        raise DomainError("matching needs alpha < 1")
    if is_exact(alpha):
        return _match_exact(alpha, max_steps, tail)

    def run(prec: int):
        a = BigFloat(alpha.value, prec) if isinstance(alpha, BigFloat) else BigFloat(alpha, prec)
        return _match_inexact(a, max_steps, tail)

    return with_precision_retry(run, precision)


def _match_exact(alpha, max_steps, tail):
    up = _gauss_orbit(alpha, alpha, max_steps + tail)
    lo = _gauss_orbit(alpha, alpha - 1, max_steps + tail)
    first = {}
    for m, v in enumerate(lo[:max_steps + 1]):
        first.setdefault(v, m)
    best = None
    for n, v in enumerate(up[:max_steps + 1]):
        m = first.get(v)
        if m is None:
            continue
        if best is None or (n + m, n) < (best[0] + best[1], best[0]):
            best = (n, m)
    if best is None:
        return None
    n, m = best
    du = _signed_digits(alpha, up[n:n + tail])
    dl = _signed_digits(alpha, lo[m:m + tail])
    agree = 0
    for a, b in zip(du, dl):
        if a != b:
            break
        agree += 1
    return Match(n, m, agree, up[n])


def _match_inexact(alpha: BigFloat, max_steps, tail):
    up = _gauss_orbit(alpha, alpha, max_steps + tail)
    lo = _gauss_orbit(alpha, alpha - 1, max_steps + tail)
    du = _signed_digits(alpha, up)
    dl = _signed_digits(alpha, lo)
    best = None
    for s in range(max_steps + 1):
        for n in range(s + 1):
            m = s - n
            if du[n:n + tail] == dl[m:m + tail] and len(du[n:n + tail]) == tail:
                best = (n, m)
                break
        if best:
            break
    if best is None:
        return None
    n, m = best
    return Match(n, m, tail, up[n])


# ---------------------------------------------------------------------------
# Thin cylinders
# ---------------------------------------------------------------------------

def digit_interval(alpha, c: int):
    """Closure of the one-digit cylinder <c>, or None when empty."""
    return cylinder_interval(alpha, "+" if c > 0 else "-", abs(c))


def _branch_image(c: int, lo, hi):
    """Image of [lo, hi] (inside <c>) under x -> eps/x - |c|."""
    a = abs(c)
    if c > 0:
        return 1 / hi - a, 1 / lo - a
    return -1 / lo - a, -1 / hi - a


@dataclass(frozen=True)
class WordCylinder:
    word: tuple
    interval: tuple  # closure of the cylinder in I_alpha
    image: tuple     # closure of G^l of the cylinder

    @property
    def length(self):
        return self.interval[1] - self.interval[0]

    @property
    def image_length(self):
        return self.image[1] - self.image[0]

    def to_dict(self) -> dict:
        return {"word": list(self.word),
                "interval": [format_real(v) for v in self.interval],
                "image_interval": [format_real(v) for v in self.image],
                "length": format_real(self.image_length)}


def word_cylinder(alpha, word: Sequence[int]) -> WordCylinder | None:
    """Cylinder <c_1..c_l> and its image, by pushing intervals through each branch."""
    alpha = check_alpha(alpha)
    img = (alpha - 1, alpha)
    # inverse branches composed to recover the cylinder in x
    from .arith import IDENTITY, MobiusMatrix, mobius_apply
    inv = IDENTITY
    for c in word:
        cyl = digit_interval(alpha, c)
        if cyl is None:
            return None
        lo, hi = max(img[0], cyl[0]), min(img[1], cyl[1])
        if not lo < hi:
            return None
        img = _branch_image(c, lo, hi)
        eps = 1 if c > 0 else -1
        # x = eps / (y + |c|)
        inv = inv @ MobiusMatrix(0, eps, 1, abs(c))
    ends = sorted([mobius_apply(inv, img[0]), mobius_apply(inv, img[1])])
    return WordCylinder(tuple(word), tuple(ends), img)


@dataclass(frozen=True)
class ThinCylinder:
    cylinder: WordCylinder
    source: str

    def to_dict(self) -> dict:
        return {**self.cylinder.to_dict(), "source": self.source}


def thin_cylinder_search(alpha, eps, max_len: int = 200, x=None,
                         measure: str = "image") -> ThinCylinder:
    """Shortest eps-thin prefix cylinder along the orbits of alpha-1 then alpha.

    With x given, prefixes of the orbit of x are searched instead.
    measure='image' tests the length of G^l of the cylinder; measure='cylinder'
    tests the length of the cylinder itself.
    """
    alpha = check_alpha(alpha)
    eps = to_exact(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    if measure not in ("image", "cylinder"):
        raise DomainError(f"unknown measure {measure!r}")
    if 1 < eps:
        return ThinCylinder(WordCylinder((), (alpha - 1, alpha), (alpha - 1, alpha)), "empty")
    if x is not None:
        sources = [("x", x)]
    else:
        sources = [("alpha-1", alpha - 1)] + ([("alpha", alpha)] if alpha != 1 else [])
    words = {}
    for name, start in sources:
        if isinstance(start, float):
            words[name] = alpha_cf_digits(alpha, start, max_len)
            continue
        exp = alpha_expand(alpha, start, max_len)
        words[name] = exp.signed_digits
    for ell in range(1, max_len + 1):
        for name, _ in sources:
            w = words[name]
            if ell > len(w):
                continue
            cyl = word_cylinder(alpha, w[:ell])
            if cyl is None:
                continue
            size = cyl.image_length if measure == "image" else cyl.length
            if size < eps:
                return ThinCylinder(cyl, name)
    ended = [n for n, _ in sources if len(words[n]) < max_len]
    why = f" (orbit of {', '.join(ended)} terminated)" if ended else ""
    raise NotFound(f"no {format_real(eps)}-thin cylinder within length {max_len}{why}")
