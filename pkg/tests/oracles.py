"""Independent reference computations used to derive frozen test values.

Nothing here imports the package: rationals use Fraction and integer
floors, irrationals use mpmath at high precision.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

mpmath.mp.dps = 120


def matmul(a, b):
    return [[a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]]]


def alpha_digits(alpha: Fraction, x: Fraction, n: int):
    """Signed digits (eps, a) and orbit by the textbook recursion, rationals only."""
    out, orbit = [], [x]
    for _ in range(n):
        if x == 0:
            break
        eps = 1 if x > 0 else -1
        inv = 1 / abs(x)
        a = math.floor(inv + 1 - alpha)
        out.append((eps, a))
        x = inv - a
        orbit.append(x)
    return out, orbit


def convergents(digits):
    """(p_n, q_n) from p_n = a p_{n-1} + eps p_{n-2}, seeds (1, 0), (0, 1)."""
    pm, p, qm, q = 1, 0, 0, 1
    out = [(p, q)]
    for eps, a in digits:
        pm, p = p, a * p + eps * pm
        qm, q = q, a * q + eps * qm
        out.append((p, q))
    return out


SYM = {"Minus": [[-1, 0], [1, 1]], "Plus": [[1, 0], [1, 1]], "R": [[0, 1], [1, 1]],
       "Id": [[1, 0], [0, 1]]}


def farey_symbols(alpha: Fraction, x: Fraction, k: int):
    out = []
    for _ in range(k):
        if x < 0:
            out.append("Minus")
            x = -x / (1 + x)
        elif x == 0:
            out.append("Id")
        elif x <= 1 / (1 + alpha):
            out.append("Plus")
            x = x / (1 - x)
        else:
            out.append("R")
            x = (1 - x) / x
    return out


def pi_product(alpha, x, k):
    m = SYM["Id"]
    for s in farey_symbols(alpha, x, k):
        m = matmul(m, SYM[s])
    return m


def gauss_mass(lo: float, hi: float) -> float:
    """Gauss measure of [lo, hi] in [0, 1]: log2((1 + hi)/(1 + lo))."""
    return math.log((1 + hi) / (1 + lo)) / math.log(2)


def surd_value(a: int, b: int, c: int, d: int) -> mpmath.mpf:
    return (a + b * mpmath.sqrt(d)) / c


def surd_floor(a: int, b: int, c: int, d: int) -> int:
    return int(mpmath.floor(surd_value(a, b, c, d)))


def rcf_digits_mp(x: mpmath.mpf, n: int):
    out = []
    for _ in range(n):
        a = int(mpmath.floor(1 / x))
        out.append(a)
        x = 1 / x - a
    return out
