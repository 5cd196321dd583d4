"""Slow alpha-Farey maps, their symbol sequences and mediant streams."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (
    IDENTITY,
    DomainError,
    MobiusMatrix,
    format_real,
    mobius_apply,
    NEG_INF,
    to_exact,
)
from .expansions import alpha_expand, check_alpha

MINUS = MobiusMatrix(-1, 0, 1, 1)
PLUS = MobiusMatrix(1, 0, 1, 1)
RMAT = MobiusMatrix(0, 1, 1, 1)

# forward branch matrices (inverses of the symbols)
BRANCH_MINUS = MINUS.inverse()       # -x/(1+x)
BRANCH_PLUS = PLUS.inverse()         # x/(1-x)
BRANCH_R = RMAT.inverse()            # (1-x)/x
BRANCH_MINUS2 = MobiusMatrix(-2, -1, 1, 0)   # -(1+2x)/x
BRANCH_R2 = MobiusMatrix(-2, 1, 1, 0)        # (1-2x)/x
BRANCH_SHARP_MINUS = MobiusMatrix(-1, 0, 2, 1)  # -x/(1+2x)


@dataclass(frozen=True)
class FareySymbol:
    tag: str  # "Minus", "Plus", "R" or "Id"
    matrix: MobiusMatrix

    def __str__(self):
        return self.tag


SYM_MINUS = FareySymbol("Minus", MINUS)
SYM_PLUS = FareySymbol("Plus", PLUS)
SYM_R = FareySymbol("R", RMAT)
SYM_ID = FareySymbol("Id", IDENTITY)


@lru_cache(maxsize=256)
def farey_bounds(alpha):
    """(alpha - 1, 1/(1 + alpha), 1/alpha) for a checked alpha."""
    return alpha - 1, 1 / (1 + alpha), 1 / alpha


def farey_step(x):
    """The Farey map on [0, 1]."""
    x = to_exact(x)
    if not (0 <= x <= 1):
        raise DomainError(f"farey_step needs 0 <= x <= 1, got {format_real(x)}")
    if 2 * x < 1:
        return x / (1 - x)
    return (1 - x) / x


def _farey_branch(alpha, x) -> FareySymbol:
    lo, mid, hi = farey_bounds(alpha)
    if not (lo <= x <= hi):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, 1/alpha]")
    if x < 0:
        return SYM_MINUS
    if x == 0:
        return SYM_ID
    if x <= mid:
        return SYM_PLUS
    return SYM_R


def symbol_of(alpha, x) -> FareySymbol:
    alpha = check_alpha(alpha)
    return _farey_branch(alpha, to_exact(x))


def alpha_farey_step(alpha, x):
    """F_alpha on [alpha - 1, 1/alpha]."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    sym = _farey_branch(alpha, x)
    if sym is SYM_MINUS:
        return -x / (1 + x)
    if sym is SYM_ID:
        return x
    if sym is SYM_PLUS:
        return x / (1 - x)
    return (1 - x) / x


def farey_orbit(alpha, x, k: int) -> tuple[list, list[FareySymbol]]:
    """Points F^0..F^k of x and the symbols A_1..A_k."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    pts = [x]
    syms: list[FareySymbol] = []
    for _ in range(k):
        syms.append(_farey_branch(alpha, pts[-1]))
        pts.append(alpha_farey_step(alpha, pts[-1]))
    return pts, syms


def pi_product(alpha, x, k: int) -> MobiusMatrix:
    """A_1 A_2 ... A_k by brute-force multiplication."""
    _, syms = farey_orbit(alpha, x, k)
    prod = IDENTITY
    for s in syms:
        prod = prod @ s.matrix
    return prod


def _above_golden(alpha) -> bool:
    # alpha > (sqrt5 - 1)/2  <=>  alpha^2 + alpha > 1 for alpha > 0
    return alpha * alpha + alpha > 1


def j_index(alpha, x, limit: int = 10**7) -> int:
    """Least k >= 0 with F_alpha^k(x) in (1/(1+alpha), 1/alpha]; 0 at x = 0."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    lo, mid, hi = farey_bounds(alpha)
    if not (lo <= x <= alpha):
        raise DomainError(f"x={format_real(x)} outside I_alpha")
    if x == 0:
        return 0
    k = 0
    while not (mid < x <= hi):
        x = alpha_farey_step(alpha, x)
        k += 1
        if k > limit:
            raise DomainError("j(x) exceeds iteration limit")
    return k


def induced_FJ(alpha, x):
    """F_alpha^{j(x)+1}(x), the first-return map to I_alpha."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    j = j_index(alpha, x)
    for _ in range(j + 1):
        x = alpha_farey_step(alpha, x)
    return x


def flat_step(alpha, x) -> tuple[object, int]:
    """The accelerated map on [alpha-1, 1]; returns (value, K)."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    lo, mid, _ = farey_bounds(alpha)
    if not (lo <= x <= 1):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, 1]")
    half = Fraction(1, 2)
    if alpha == 1:
        # the accelerated map and F_1 coincide
        return alpha_farey_step(alpha, x), 1
    if 2 * alpha < 1:
        if x < -half:
            return -(1 + 2 * x) / x, 2
        if x < 0:
            return -x / (1 + x), 1
        if x < half:
            return x / (1 - x), 1
        if x <= mid:
            return (1 - 2 * x) / x, 2
        return (1 - x) / x, 1
    if x < 0:
        return -x / (1 + x), 1
    if x < half:
        return x / (1 - x), 1
    if x <= mid:
        return (1 - 2 * x) / x, 2
    return (1 - x) / x, 1


def sharp_step(alpha, x):
    """The jump map that squares F_alpha on the negative part."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    lo, mid, hi = farey_bounds(alpha)
    if not (lo <= x <= hi):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, 1/alpha]")
    if x < 0:
        return -x / (1 + 2 * x)
    if x < mid:
        return x / (1 - x)
    return (1 - x) / x


# ---------------------------------------------------------------------------
# Mediant streams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MediantEntry:
    k: int
    value: Fraction
    kind: str  # "principal", "mediant" or "terminal"
    n: int
    ell: int

    def row(self) -> list:
        return [self.k, self.value.numerator, self.value.denominator, self.kind, self.n, self.ell]


@dataclass(frozen=True)
class MediantStream:
    alpha: object
    x: object
    entries: list[MediantEntry]
    flat: bool = False

    def values(self) -> list[Fraction]:
        return [e.value for e in self.entries]

    def to_csv(self, header: dict | None = None) -> str:
        buf = io.StringIO()
        for key, val in (header or {}).items():
            buf.write(f"# {key}: {val}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "p", "q", "kind", "n", "ell"])
        for e in self.entries:
            w.writerow(e.row())
        return buf.getvalue()

    def to_json(self, header: dict | None = None) -> str:
        return json.dumps({
            **(header or {}),
            "alpha": format_real(self.alpha),
            "x": format_real(self.x),
            "flat": self.flat,
            "entries": [dict(zip(["k", "p", "q", "kind", "n", "ell"], e.row())) for e in self.entries],
        })


def _classify(exp, k: int) -> tuple[str, int, int]:
    """Kind of step k given the digit partial sums of exp."""
    s = 0
    for n, a in enumerate(exp.digits):
        # block n+1 covers S_n < k <= S_{n+1}
        if k < s + a:
            return "mediant", n + 1, k - s
        if k == s + a:
            return "principal", n, 0
        s += a
    return "terminal", len(exp.digits), k - s


def _expansion_for(alpha, x, K: int):
    exp = alpha_expand(alpha, x, max(K, 1))
    return exp


def mediant_sequence(alpha, x, K: int) -> MediantStream:
    """t_k = Pi_k(-inf) for k = 1..K with principal/mediant labels.

    Principal entries carry the index of the convergent shown.  After a
    rational x terminates, entries are labelled 'terminal' and hold x.
    """
    alpha = check_alpha(alpha)
    x = to_exact(x)
    if K < 0:
        raise DomainError("K must be >= 0")
    exp = _expansion_for(alpha, x, K)
    pts, syms = farey_orbit(alpha, x, K)
    entries = []
    prod = IDENTITY
    for k in range(1, K + 1):
        prod = prod @ syms[k - 1].matrix
        kind, n, ell = _classify(exp, k)
        if kind == "principal":
            entries.append(MediantEntry(k, mobius_apply(prod, NEG_INF), kind, n, 0))
        elif kind == "mediant":
            entries.append(MediantEntry(k, mobius_apply(prod, NEG_INF), kind, n, ell))
        else:
            entries.append(MediantEntry(k, mobius_apply(prod, pts[k]), kind, n, ell))
    return MediantStream(alpha, x, entries)


def flat_indices(alpha, x, K: int) -> list[int]:
    """k-hat(1..K): the F_alpha times visited by the accelerated orbit."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    out = []
    kh = 0
    for _ in range(K):
        x, step = flat_step(alpha, x)
        kh += step
        out.append(kh)
    return out


def flat_mediant_sequence(alpha, x, K: int) -> MediantStream:
    """Pi_{flat,k}(-inf) for k = 1..K; entry.k is the full-stream index."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    if K < 0:
        raise DomainError("K must be >= 0")
    idx = flat_indices(alpha, x, K)
    full = mediant_sequence(alpha, x, idx[-1] if idx else 0)
    pts, _ = farey_orbit(alpha, x, idx[-1] if idx else 0)
    y = x
    entries = []
    for kh in idx:
        y, _ = flat_step(alpha, y)
        if y != pts[kh]:
            raise AssertionError("accelerated orbit left the F_alpha orbit")
        entries.append(full.entries[kh - 1])
    return MediantStream(alpha, x, entries, flat=True)


def predicted_flat_skips(alpha, x, K: int) -> set[int]:
    """Full-stream indices k <= K that the accelerated stream omits.

    The (n+1, a_{n+1}-1) mediant is dropped exactly when the following
    orbit point G^{n+1}(x) is negative; for rational x whose orbit ends in
    0 the dropped point is x = 1 reached from 1/2.
    """
    alpha = check_alpha(alpha)
    x = to_exact(x)
    exp = alpha_expand(alpha, x, max(K, 1))
    out = set()
    s = 0
    for n, a in enumerate(exp.digits):
        if a >= 2:
            nxt = exp.orbit[n + 1]
            drop = nxt < 0
            if nxt == 0 and alpha != 1:
                drop = not (a == 2 and exp.eps[n] == -1)
            if drop and s + a - 1 <= K:
                out.add(s + a - 1)
        s += a
    return out


def duplication_pair(exp, n: int) -> tuple[Fraction, Fraction]:
    """((a-1)p_n + eps p_{n-1})/((a-1)q_n + eps q_{n-1}) and (p_{n+1}-p_n)/(q_{n+1}-q_n)."""
    a, e = exp.digits[n], exp.eps[n]
    pm, qm = exp.convergent(n - 1)
    p, q = exp.convergent(n)
    p1, q1 = exp.convergent(n + 1)
    return Fraction((a - 1) * p + e * pm, (a - 1) * q + e * qm), Fraction(p1 - p, q1 - q)
