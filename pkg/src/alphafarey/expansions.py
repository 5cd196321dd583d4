"""Regular and alpha-continued fraction expansions."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import (
    DomainError,
    MobiusMatrix,
    IDENTITY,
    floor_exact,
    format_real,
    to_exact,
)


class PreconditionError(DomainError):
    pass


# ---------------------------------------------------------------------------
# Regular continued fractions
# ---------------------------------------------------------------------------

def gauss_step(x):
    """One step of the Gauss map on [0, 1)."""
    x = to_exact(x)
    if not (0 <= x < 1):
        raise DomainError(f"gauss_step needs 0 <= x < 1, got {format_real(x)}")
    if x == 0:
        return x
    y = 1 / x
    return y - floor_exact(y)


@dataclass(frozen=True)
class RcfExpansion:
    x: object
    a0: int
    digits: list[int]
    convergents: list[tuple[int, int]]  # (p_n, q_n) for n = 0..len(digits)
    terminated: bool

    def __len__(self):
        return len(self.digits)

    def convergent(self, n: int) -> tuple[int, int]:
        if n == -1:
            return (1, 0)
        return self.convergents[n]

    def to_dict(self) -> dict:
        return {
            "x": format_real(self.x),
            "a0": self.a0,
            "digits": list(self.digits),
            "convergents": [list(pq) for pq in self.convergents],
            "terminated": self.terminated,
        }


def rcf_expand(x, max_n: int) -> RcfExpansion:
    if max_n < 1:
        raise DomainError("max_n must be >= 1")
    x = to_exact(x)
    a0 = floor_exact(x)
    t = x - a0
    p_prev, p, q_prev, q = 1, a0, 0, 1
    digits: list[int] = []
    convs = [(p, q)]
    while len(digits) < max_n and t != 0:
        y = 1 / t
        a = floor_exact(y)
        t = y - a
        digits.append(a)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        convs.append((p, q))
    return RcfExpansion(x, a0, digits, convs, t == 0)


def theta_n(exp: RcfExpansion, n: int):
    """Approximation coefficient q_n^2 |x - p_n/q_n|."""
    if n < 0:
        raise IndexError("n must be >= 0")
    if n >= len(exp.convergents):
        if exp.terminated:
            return Fraction(0)
        raise IndexError(f"theta_{n} needs {n} digits, only {len(exp.digits)} computed")
    p, q = exp.convergents[n]
    return abs(exp.x * (q * q) - p * q)


@dataclass(frozen=True)
class ApproximationReport:
    vahlen: bool
    borel: bool
    sharp_borel: bool
    thetas: tuple


def vahlen_borel_check(exp: RcfExpansion, n: int) -> ApproximationReport:
    """Check the classical bounds on Theta_{n-1}, Theta_n, Theta_{n+1}."""
    if n < 1:
        raise IndexError("n must be >= 1")
    th = tuple(theta_n(exp, k) for k in (n - 1, n, n + 1))
    m2 = min(th[:2])
    m3 = min(th)
    vahlen = m2 < Fraction(1, 2)
    # m < 1/sqrt(5)  <=>  5 m^2 < 1 for m >= 0
    borel = 5 * m3 * m3 < 1
    if n < len(exp.digits):
        a_next = exp.digits[n]
        sharp = (a_next * a_next + 4) * m3 * m3 < 1
    elif exp.terminated:
        sharp = m3 == 0
    else:
        raise IndexError(f"a_{n + 1} not computed")
    return ApproximationReport(vahlen, borel, sharp, th)


@dataclass(frozen=True)
class LegendreResult:
    is_convergent: bool
    index: int | None


def legendre_check(x, p: int, q: int, max_n: int = 10_000) -> LegendreResult:
    """Locate p/q among the convergents of x when |x - p/q| < 1/(2q^2)."""
    from math import gcd

    if q <= 0 or gcd(p, q) != 1:
        raise PreconditionError("need q > 0 and gcd(p, q) = 1")
    x = to_exact(x)
    if not abs(x - Fraction(p, q)) < Fraction(1, 2 * q * q):
        raise PreconditionError(f"|x - {p}/{q}| >= 1/(2q^2)")
    t = x - floor_exact(x)
    a0 = floor_exact(x)
    p_prev, pn, q_prev, qn = 1, a0, 0, 1
    n = 0
    while True:
        if (pn, qn) == (p, q):
            return LegendreResult(True, n)
        if qn > q or t == 0 or n >= max_n:
            return LegendreResult(False, None)
        y = 1 / t
        a = floor_exact(y)
        t = y - a
        p_prev, pn = pn, a * pn + p_prev
        q_prev, qn = qn, a * qn + q_prev
        n += 1


# ---------------------------------------------------------------------------
# alpha-continued fractions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _alpha_checked(alpha):
    alpha = to_exact(alpha)
    if not (0 < alpha <= 1):
        raise DomainError(f"alpha must lie in (0, 1], got {format_real(alpha)}")
    return alpha


def check_alpha(alpha):
    return _alpha_checked(to_exact(alpha))


def alpha_digit(alpha, x) -> tuple[int, int]:
    """(eps, a) of the first alpha-digit of x != 0."""
    inv = 1 / x
    if inv < 0:
        return -1, floor_exact(1 - alpha - inv)
    return 1, floor_exact(inv + 1 - alpha)


def alpha_gauss_step(alpha, x):
    """G_alpha on [alpha - 1, alpha).

    The endpoint x = alpha is accepted and treated as a left limit, which
    the half-open floors already do.
    """
    alpha = check_alpha(alpha)
    x = to_exact(x)
    if not (alpha - 1 <= x <= alpha):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, alpha)")
    if x == 0:
        return x
    inv = 1 / x
    if inv < 0:
        inv = -inv
    return inv - floor_exact(inv + 1 - alpha)


@dataclass(frozen=True)
class AlphaExpansion:
    alpha: object
    x: object
    eps: list[int]
    digits: list[int]
    convergents: list[tuple[int, int]]  # (p_n, q_n) for n = 0..N
    orbit: list  # orbit[n] = G_alpha^n(x)
    terminated: bool

    def __len__(self):
        return len(self.digits)

    def convergent(self, n: int) -> tuple[int, int]:
        if n == -1:
            return (1, 0)
        return self.convergents[n]

    @property
    def signed_digits(self) -> list[int]:
        return [e * a for e, a in zip(self.eps, self.digits)]

    def matrix(self, n: int) -> MobiusMatrix:
        """[[p_{n-1}, p_n], [q_{n-1}, q_n]]."""
        pm, qm = self.convergent(n - 1)
        p, q = self.convergent(n)
        return MobiusMatrix(pm, p, qm, q)

    def partial_sums(self) -> list[int]:
        """S_n = a_1 + ... + a_n for n = 0..N."""
        out = [0]
        for a in self.digits:
            out.append(out[-1] + a)
        return out

    def to_dict(self) -> dict:
        return {
            "alpha": format_real(self.alpha),
            "x": format_real(self.x),
            "digits": [[e, a] for e, a in zip(self.eps, self.digits)],
            "convergents": [list(pq) for pq in self.convergents],
            "orbit": [format_real(v) for v in self.orbit],
            "terminated": self.terminated,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def alpha_expand(alpha, x, max_n: int) -> AlphaExpansion:
    if max_n < 0:
        raise DomainError("max_n must be >= 0")
    alpha = check_alpha(alpha)
    x = to_exact(x)
    if not (alpha - 1 <= x <= alpha):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, alpha)")
    eps: list[int] = []
    digits: list[int] = []
    orbit = [x]
    prod = IDENTITY
    convs = [(0, 1)]
    t = x
    while len(digits) < max_n and t != 0:
        e, a = alpha_digit(alpha, t)
        t = (1 / t if e > 0 else -1 / t) - a
        eps.append(e)
        digits.append(a)
        orbit.append(t)
        prod = prod @ MobiusMatrix(0, e, 1, a)
        convs.append((prod.a12, prod.a22))
    return AlphaExpansion(alpha, x, eps, digits, convs, orbit, t == 0)


def first_digit_of_alpha(alpha) -> int:
    """k0 with 1/(k0 + alpha) <= alpha < 1/(k0 - 1 + alpha)."""
    alpha = check_alpha(alpha)
    if alpha >= 1:
        raise DomainError("first_digit_of_alpha needs alpha < 1")
    return -floor_exact(alpha - 1 / alpha)
