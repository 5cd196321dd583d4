"""Exact number tower and integer Mobius matrices.

Values are plain ``fractions.Fraction`` for rationals, :class:`Surd` for
quadratic irrationals ``(a + b*sqrt(d))/c`` and :class:`BigFloat` as an
inexact fallback.  Python floats are accepted by the generic helpers so
the map code can also run in fast float mode when sampling clouds.
"""
from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, TypeVar, Union

import mpmath


class AlphaFareyError(Exception):
    exit_code = 1


class DomainError(AlphaFareyError, ValueError):
    exit_code = 2


class PoleError(AlphaFareyError, ZeroDivisionError):
    exit_code = 2


class PrecisionError(AlphaFareyError, ArithmeticError):
    exit_code = 3


class FieldMismatchError(AlphaFareyError, TypeError):
    exit_code = 2


class NotASurd(AlphaFareyError, TypeError):
    exit_code = 2


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (k, m) with d = k*k*m and m squarefree."""
    k, m, p = 1, d, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, m


class Surd:
    """The number (a + b*sqrt(d)) / c with b != 0 and d squarefree > 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        a, b, c, d = int(a), int(b), int(c), int(d)
        if c == 0:
            raise PoleError("zero denominator")
        if d < 2:
            raise ValueError("d must be > 1")
        k, d = _squarefree_split(d)
        b *= k
        if d == 1:
            raise ValueError("d is a perfect square")
        if b == 0:
            raise ValueError("b == 0 is a rational; use make_surd")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        self.a, self.b, self.c, self.d = a // g, b // g, c // g, d

    @classmethod
    def _new(cls, a: int, b: int, c: int, d: int) -> "Surd":
        # d is trusted to be squarefree here; only sign and gcd are fixed
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(a, b, c)
        self = object.__new__(cls)
        if g != 1:
            a, b, c = a // g, b // g, c // g
        self.a, self.b, self.c, self.d = a, b, c, d
        return self

    # -- construction helpers -------------------------------------------
    @staticmethod
    def _lift(v, d):
        if isinstance(v, Surd):
            if v.d != d:
                raise FieldMismatchError(f"sqrt({v.d}) mixed with sqrt({d})")
            return v.a, v.b, v.c
        if isinstance(v, (int, Fraction)):
            v = Fraction(v)
            return v.numerator, 0, v.denominator
        raise TypeError

    def _coerce(self, other):
        if isinstance(other, BigFloat):
            return None
        try:
            return self._lift(other, self.d)
        except FieldMismatchError:
            raise
        except TypeError:
            return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (float, BigFloat)):
            return _as_inexact(self, other) + other
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        a2, b2, c2 = t
        return make_surd(self.a * c2 + a2 * self.c, self.b * c2 + b2 * self.c, self.c * c2, self.d)

    __radd__ = __add__

    def __neg__(self):
        return make_surd(-self.a, -self.b, self.c, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (float, BigFloat)):
            return _as_inexact(self, other) - other
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        a2, b2, c2 = t
        return make_surd(self.a * c2 - a2 * self.c, self.b * c2 - b2 * self.c, self.c * c2, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, BigFloat)):
            return _as_inexact(self, other) * other
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        a2, b2, c2 = t
        a, b, d = self.a, self.b, self.d
        return make_surd(a * a2 + b * b2 * d, a * b2 + a2 * b, self.c * c2, d)

    __rmul__ = __mul__

    def inverse(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        n = a * a - b * b * d
        return make_surd(c * a, -c * b, n, d)

    def __truediv__(self, other):
        if isinstance(other, (float, BigFloat)):
            return _as_inexact(self, other) / other
        if isinstance(other, Surd):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PoleError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        if isinstance(other, (float, BigFloat)):
            return other / _as_inexact(self, other)
        return NotImplemented

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order --------------------------------------------------------------
    def sign(self) -> int:
        return _sign_ab(self.a, self.b, self.d)

    def _cmp(self, other) -> int:
        if isinstance(other, (float, BigFloat)):
            return compare_exact(_as_inexact(self, other), other)
        t = self._coerce(other)
        if t is None:
            raise TypeError(f"cannot compare Surd with {type(other).__name__}")
        a2, b2, c2 = t
        return _sign_ab(self.a * c2 - a2 * self.c, self.b * c2 - b2 * self.c, self.d)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Fraction)):
            return False
        if isinstance(other, (float, BigFloat)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __floor__(self) -> int:
        return floor_exact(self)

    def __float__(self) -> float:
        return float(_surd_to_fraction(self, 80))

    def conjugate(self) -> "Surd":
        return Surd._new(self.a, -self.b, self.c, self.d)

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        return format_real(self)


def _sign_ab(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for squarefree d > 1."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with b^2 d, never equal
    if a * a > b * b * d:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


def make_surd(a: int, b: int, c: int, d: int):
    """Normalising constructor: returns a Fraction when b vanishes."""
    if c == 0:
        raise PoleError("zero denominator")
    if b == 0:
        return Fraction(a, c)
    return Surd._new(a, b, c, d)


def sqrt_surd(d: int):
    """sqrt(d) as an exact value (an integer Fraction for perfect squares)."""
    k, m = _squarefree_split(d)
    if m == 1:
        return Fraction(k)
    return Surd(0, k, 1, m)


def _surd_to_fraction(s: Surd, bits: int) -> Fraction:
    scale = 1 << bits
    r = math.isqrt(s.b * s.b * s.d * scale * scale)
    if s.b < 0:
        r = -r
    return Fraction(s.a * scale + r, s.c * scale)


# ---------------------------------------------------------------------------
# BigFloat
# ---------------------------------------------------------------------------

DEFAULT_PRECISION = 256
MAX_PRECISION = 8192


class BigFloat:
    """Binary floating point value carrying its precision in bits.

    Comparisons and floors that cannot be decided at the carried precision
    raise :class:`PrecisionError` instead of guessing.
    """

    __slots__ = ("value", "prec")

    def __init__(self, value, prec: int = DEFAULT_PRECISION):
        if prec < 64:
            raise ValueError("precision must be at least 64 bits")
        self.prec = int(prec)
        with mpmath.workprec(self.prec):
            if isinstance(value, Surd):
                value = (mpmath.mpf(value.a) + value.b * mpmath.sqrt(value.d)) / value.c
            elif isinstance(value, Fraction):
                value = mpmath.mpf(value.numerator) / value.denominator
            self.value = mpmath.mpf(value)

    @classmethod
    def from_decimal(cls, text: str, prec: int = DEFAULT_PRECISION) -> "BigFloat":
        with mpmath.workprec(prec):
            return cls(mpmath.mpf(text), prec)

    def _binop(self, other, op):
        if isinstance(other, BigFloat):
            prec = max(self.prec, other.prec)
            o = other.value
        elif isinstance(other, (int, Fraction, Surd, float)):
            prec = self.prec
            o = BigFloat(other, prec).value
        else:
            return NotImplemented
        with mpmath.workprec(prec):
            return BigFloat(op(self.value, o), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binop(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binop(other, lambda a, b: b * a)

    def _div(self, a, b):
        if b == 0:
            raise PoleError("division by zero")
        return a / b

    def __truediv__(self, other):
        return self._binop(other, self._div)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: self._div(b, a))

    def __neg__(self):
        with mpmath.workprec(self.prec):
            return BigFloat(-self.value, self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        with mpmath.workprec(self.prec):
            return BigFloat(abs(self.value), self.prec)

    def ulp(self) -> mpmath.mpf:
        if self.value == 0:
            return mpmath.mpf(2) ** (-self.prec)
        return mpmath.mpf(2) ** (mpmath.mag(self.value) - self.prec)

    def _cmp(self, other) -> int:
        return compare_exact(self, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Surd, BigFloat, float)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __floor__(self):
        return floor_exact(self)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"BigFloat({mpmath.nstr(self.value, 20)}, prec={self.prec})"

    def __str__(self):
        return format_real(self)


def _as_inexact(x, like):
    if isinstance(like, float):
        return float(x)
    return BigFloat(x, like.prec)


ExactReal = Union[Fraction, Surd, BigFloat]
T = TypeVar("T")


def with_precision_retry(fn: Callable[[int], T], prec: int = DEFAULT_PRECISION) -> T:
    """Call ``fn(prec)``, doubling ``prec`` on PrecisionError up to the cap."""
    while True:
        try:
            return fn(prec)
        except PrecisionError:
            if prec >= MAX_PRECISION:
                raise
            prec = min(2 * prec, MAX_PRECISION)


# ---------------------------------------------------------------------------
# Extended values and generic helpers
# ---------------------------------------------------------------------------

class _NegInf:
    __slots__ = ()

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return "NEG_INF"


NEG_INF = _NegInf()


def is_neg_inf(v) -> bool:
    return v is NEG_INF or (isinstance(v, float) and v == -math.inf)


def to_exact(v) -> ExactReal:
    if isinstance(v, bool):
        raise TypeError("bool is not a number")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, (Fraction, Surd, BigFloat, float)):
        return v
    raise TypeError(f"not a real value: {v!r}")


def floor_exact(x) -> int:
    """Greatest integer <= x.

    Exact for rationals and surds; BigFloat raises PrecisionError when the
    value sits within one ulp of an integer.
    """
    if isinstance(x, (int, Fraction)):
        return math.floor(x)
    if isinstance(x, Surd):
        bb = x.b * x.b * x.d
        r = math.isqrt(bb)
        m = r if x.b > 0 else -r - 1
        # b*sqrt(d) is irrational, so floor((a + t)/c) = (a + floor t) // c
        return (x.a + m) // x.c
    if isinstance(x, BigFloat):
        with mpmath.workprec(x.prec):
            n = int(mpmath.floor(x.value))
            u = x.ulp() * 4
            if x.value - n < u or (n + 1) - x.value < u:
                raise PrecisionError(f"floor undecidable at {x.prec} bits")
            return n
    if isinstance(x, float):
        return math.floor(x)
    raise TypeError(f"not a real value: {x!r}")


def compare_exact(x, y) -> int:
    """Return -1, 0 or 1 according to x <, ==, > y."""
    if isinstance(x, BigFloat) or isinstance(y, BigFloat):
        prec = max(v.prec for v in (x, y) if isinstance(v, BigFloat))
        bx = x if isinstance(x, BigFloat) else BigFloat(x, prec)
        by = y if isinstance(y, BigFloat) else BigFloat(y, prec)
        with mpmath.workprec(prec):
            diff = bx.value - by.value
            scale = max(abs(bx.value), abs(by.value), mpmath.mpf(1))
            tol = scale * mpmath.mpf(2) ** (4 - prec)
            if diff == 0:
                return 0
            if abs(diff) <= tol:
                raise PrecisionError(f"comparison undecidable at {prec} bits")
            return 1 if diff > 0 else -1
    if isinstance(x, Surd):
        return x._cmp(y)
    if isinstance(y, Surd):
        return -y._cmp(x)
    return (x > y) - (x < y)


def sign(x) -> int:
    return compare_exact(x, 0)


def algebraic_conjugate(x) -> Surd:
    if not isinstance(x, Surd):
        raise NotASurd(f"{type(x).__name__} has no algebraic conjugate")
    return x.conjugate()


def field_of(*values) -> int | None:
    """The common d of any surds among values (None when all rational)."""
    d = None
    for v in values:
        if isinstance(v, Surd):
            if d is not None and d != v.d:
                raise FieldMismatchError(f"sqrt({d}) mixed with sqrt({v.d})")
            d = v.d
    return d


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Surd))


def to_float(v) -> float:
    if is_neg_inf(v):
        return -math.inf
    return float(v)


# ---------------------------------------------------------------------------
# Mobius matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class MobiusMatrix:
    a11: int
    a12: int
    a21: int
    a22: int

    @property
    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __matmul__(self, other: "MobiusMatrix") -> "MobiusMatrix":
        return MobiusMatrix(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def inverse(self) -> "MobiusMatrix":
        det = self.det
        if det not in (1, -1):
            raise ValueError("only unimodular matrices are invertible over Z")
        return MobiusMatrix(det * self.a22, -det * self.a12, -det * self.a21, det * self.a11)

    def __call__(self, v):
        return mobius_apply(self, v)

    def rows(self) -> list[list[int]]:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __str__(self):
        return f"[[{self.a11},{self.a12}],[{self.a21},{self.a22}]]"


IDENTITY = MobiusMatrix(1, 0, 0, 1)


def mobius_compose(m1: MobiusMatrix, m2: MobiusMatrix) -> MobiusMatrix:
    return m1 @ m2


def mobius_apply(m: MobiusMatrix, v):
    """Linear fractional action with the limit convention at -infinity."""
    if is_neg_inf(v):
        if m.a21 == 0:
            if m.a11 * m.a22 > 0:
                return v
            raise PoleError("image of -inf is +inf")
        if isinstance(v, float):
            return m.a11 / m.a21
        return Fraction(m.a11, m.a21)
    den = m.a21 * v + m.a22
    if den == 0:
        raise PoleError(f"pole of {m} at {v}")
    num = m.a11 * v + m.a12
    if isinstance(den, int) and isinstance(num, int):
        return Fraction(num, den)
    return num / den


# ---------------------------------------------------------------------------
# Text forms
# ---------------------------------------------------------------------------

def format_real(v) -> str:
    """Canonical text: 'p/q', '(a+b*sqrt(d))/c' or 'digits@bits'."""
    if is_neg_inf(v):
        return "-inf"
    if isinstance(v, int):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, Surd):
        op = "+" if v.b > 0 else "-"
        return f"({v.a}{op}{abs(v.b)}*sqrt({v.d}))/{v.c}"
    if isinstance(v, BigFloat):
        digits = max(int(v.prec * 0.30103) - 2, 15)
        return f"{mpmath.nstr(v.value, digits, strip_zeros=False)}@{v.prec}"
    if isinstance(v, float):
        return repr(v)
    raise TypeError(f"cannot format {v!r}")


_SQRT_SHORT = re.compile(r"sqrt\s*(\d+)")


def parse_real(text: str, prec: int = DEFAULT_PRECISION):
    """Parse an exact or decimal value.

    Accepts integers, 'p/q', 'sqrt2-1', '(a+b*sqrt(d))/c', any arithmetic
    combination of those, decimals (routed to BigFloat) and 'digits@bits'.
    """
    text = text.strip()
    if text in ("-inf", "-oo"):
        return NEG_INF
    if "@" in text:
        body, bits = text.split("@", 1)
        return BigFloat.from_decimal(body.strip(), int(bits))
    src = _SQRT_SHORT.sub(r"sqrt(\1)", text)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse number {text!r}") from exc
    return _eval_node(tree.body, prec, src)


def _eval_node(node, prec, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool):
            raise DomainError(f"cannot parse number {text!r}")
        if isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node.value, float):
            seg = ast.get_source_segment(text, node) or repr(node.value)
            return BigFloat.from_decimal(seg, prec)
        raise DomainError(f"cannot parse number {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, prec, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, prec, text)
        right = _eval_node(node.right, prec, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right == 0:
                raise DomainError("division by zero")
            return left / right
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1):
        arg = _eval_node(node.args[0], prec, text)
        if isinstance(arg, Fraction) and arg.denominator == 1 and arg >= 0:
            return sqrt_surd(arg.numerator)
        raise DomainError("sqrt takes a non-negative integer")
    raise DomainError(f"cannot parse number {text!r}")
