"""Exact arithmetic in the quadratic field Q(sqrt 5).

Elements are stored as ``a + b*sqrt(5)`` with reduced :class:`fractions.Fraction`
components, so equality is structural and cheap.  The real embedding always
takes the positive square root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

__all__ = [
    "Q5Number",
    "FibPair",
    "ZERO",
    "ONE",
    "SQRT5",
    "ALPHA",
    "BETA",
    "q5_add",
    "q5_mul",
    "q5_inv",
    "alpha_pow",
    "beta_pow",
    "fib_lucas",
    "parse_rational",
    "format_rational",
]

RationalLike = Union[int, Fraction]


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def format_rational(q: Fraction) -> str:
    """Render as ``num/den`` (always with the denominator)."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``num`` or ``num/den``; raises ValueError on a zero denominator."""
    num, sep, den = text.strip().partition("/")
    if sep:
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), d)
    return Fraction(int(num))


@dataclass(frozen=True)
class Q5Number:
    """The field element ``a + b*sqrt(5)``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    @classmethod
    def coerce(cls, x: Q5Number | RationalLike) -> Q5Number:
        if isinstance(x, Q5Number):
            return x
        return cls(_as_fraction(x), Fraction(0))

    # field operations -------------------------------------------------

    def __add__(self, other: Q5Number | RationalLike) -> Q5Number:
        o = Q5Number.coerce(other)
        return Q5Number(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> Q5Number:
        return Q5Number(-self.a, -self.b)

    def __sub__(self, other: Q5Number | RationalLike) -> Q5Number:
        o = Q5Number.coerce(other)
        return Q5Number(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Q5Number | RationalLike) -> Q5Number:
        return Q5Number.coerce(other) - self

    def __mul__(self, other: Q5Number | RationalLike) -> Q5Number:
        if isinstance(other, (int, Fraction)):
            return Q5Number(self.a * other, self.b * other)
        o = Q5Number.coerce(other)
        return Q5Number(self.a * o.a + 5 * self.b * o.b, self.a * o.b + o.a * self.b)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 5 b^2``."""
        return self.a * self.a - 5 * self.b * self.b

    def conjugate(self) -> Q5Number:
        return Q5Number(self.a, -self.b)

    def inverse(self) -> Q5Number:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        return Q5Number(self.a / n, -self.b / n)

    def __truediv__(self, other: Q5Number | RationalLike) -> Q5Number:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt 5)")
            return Q5Number(self.a / other, self.b / other)
        return self * Q5Number.coerce(other).inverse()

    def __rtruediv__(self, other: Q5Number | RationalLike) -> Q5Number:
        return Q5Number.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Q5Number:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # predicates / rendering --------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of the real embedding."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sb == 0 or sa == sb:
            return sa or sb
        # opposite signs: compare a^2 with 5 b^2
        n = self.norm()
        return sa if n > 0 else sb

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __str__(self) -> str:
        return f"{format_rational(self.a)}+{format_rational(self.b)}√5"

    def __repr__(self) -> str:
        return f"Q5Number({self.a!s}, {self.b!s})"


ZERO = Q5Number(0, 0)
ONE = Q5Number(1, 0)
SQRT5 = Q5Number(0, 1)
ALPHA = Q5Number(Fraction(1, 2), Fraction(1, 2))
BETA = Q5Number(Fraction(1, 2), Fraction(-1, 2))


def q5_add(x: Q5Number, y: Q5Number) -> Q5Number:
    return x + y


def q5_mul(x: Q5Number, y: Q5Number) -> Q5Number:
    return x * y


def q5_inv(x: Q5Number) -> Q5Number:
    return x.inverse()


@lru_cache(maxsize=4096)
def alpha_pow(k: int) -> Q5Number:
    """Exact ``alpha**k``; negative ``k`` goes through ``1/alpha = -beta``."""
    if k < 0:
        return (-BETA) ** (-k)
    return ALPHA ** k


@lru_cache(maxsize=4096)
def beta_pow(k: int) -> Q5Number:
    """Exact ``beta**k``; negative ``k`` goes through ``1/beta = -alpha``."""
    if k < 0:
        return (-ALPHA) ** (-k)
    return BETA ** k


class FibPair(NamedTuple):
    f: int
    l: int  # noqa: E741


def _fib_doubling(n: int) -> tuple[int, int]:
    # (F_n, F_{n+1})
    if n == 0:
        return 0, 1
    f, g = _fib_doubling(n >> 1)
    c = f * (2 * g - f)
    d = f * f + g * g
    if n & 1:
        return d, c + d
    return c, d


def fib_lucas(n: int) -> FibPair:
    """``(F_n, L_n)`` by integer fast doubling; ``L_n = 2 F_{n+1} - F_n``."""
    if n < 0:
        raise ValueError(f"fib_lucas needs n >= 0, got {n}")
    f, g = _fib_doubling(n)
    return FibPair(f, 2 * g - f)
