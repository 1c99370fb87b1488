"""Rigorous fixed-point evaluation of P-expansions, plus independent oracles.

Numbers are dyadic: an integer mantissa ``m`` at ``scale_bits`` ``S`` stands
for ``m / 2**S``.  Every numeric result is an :class:`Enclosure` whose lower
end is rounded down and upper end rounded up, so the true value is always
inside.

The oracles (``ln`` via atanh, ``arctan`` via Taylor series with half-angle
reduction, ``pi`` via Machin) share no code path with the series evaluator
beyond the embedding of Q(sqrt 5) numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactfield import ONE, Q5Number, alpha_pow, fib_lucas
from .pseries import ConstantTag, PExpansion, TagKind, ValidationError

__all__ = [
    "PrecisionSpec",
    "FixedReal",
    "Enclosure",
    "PrecisionError",
    "UndecidableDigitError",
    "sqrt5_enclosure",
    "embed",
    "term_count",
    "tail_bound",
    "partial_sum",
    "block_values",
    "eval_expansion",
    "oracle_ln",
    "oracle_atanh",
    "oracle_arctan",
    "oracle_pi4",
    "oracle_value",
    "agree_digits",
    "phi_digits",
]

LOG2_10 = math.log2(10)
LN_ALPHA = math.log((1 + 5 ** 0.5) / 2)


class PrecisionError(ArithmeticError):
    """An enclosure stayed wider than requested after all retries."""


class UndecidableDigitError(ValueError):
    """The enclosure straddles a digit boundary; ``index`` digits were decided."""

    def __init__(self, index: int):
        super().__init__(f"digit {index} is undecidable at this precision")
        self.index = index


def _cdiv(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class PrecisionSpec:
    decimal_digits: int
    guard_bits: int = 64

    def __post_init__(self) -> None:
        if self.decimal_digits < 1:
            raise ValueError("decimal_digits must be positive")
        if self.guard_bits < 1:
            raise ValueError("guard_bits must be positive")

    @property
    def scale_bits(self) -> int:
        # (10**D).bit_length() == ceil(D log2 10) since 10**D is never a power of two
        return (10 ** self.decimal_digits).bit_length() + self.guard_bits

    def with_guard(self, guard_bits: int) -> PrecisionSpec:
        return PrecisionSpec(self.decimal_digits, guard_bits)


@dataclass(frozen=True)
class FixedReal:
    mantissa: int
    scale_bits: int

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale_bits)


@dataclass(frozen=True)
class Enclosure:
    lo: FixedReal
    hi: FixedReal

    def __post_init__(self) -> None:
        if self.lo.scale_bits != self.hi.scale_bits:
            raise ValueError("enclosure endpoints must share a scale")
        if self.lo.mantissa > self.hi.mantissa:
            raise ValueError("enclosure has lo > hi")

    @classmethod
    def from_mantissas(cls, lo: int, hi: int, scale_bits: int) -> Enclosure:
        return cls(FixedReal(lo, scale_bits), FixedReal(hi, scale_bits))

    @classmethod
    def exact_int(cls, n: int, scale_bits: int) -> Enclosure:
        m = n << scale_bits
        return cls.from_mantissas(m, m, scale_bits)

    @classmethod
    def from_fraction(cls, q: Fraction, scale_bits: int) -> Enclosure:
        num = q.numerator << scale_bits
        return cls.from_mantissas(num // q.denominator, _cdiv(num, q.denominator), scale_bits)

    # accessors
    @property
    def scale_bits(self) -> int:
        return self.lo.scale_bits

    @property
    def lo_m(self) -> int:
        return self.lo.mantissa

    @property
    def hi_m(self) -> int:
        return self.hi.mantissa

    def lower(self) -> Fraction:
        return self.lo.to_fraction()

    def upper(self) -> Fraction:
        return self.hi.to_fraction()

    def width(self) -> Fraction:
        return Fraction(self.hi_m - self.lo_m, 1 << self.scale_bits)

    def midpoint(self) -> Fraction:
        return Fraction(self.lo_m + self.hi_m, 2 << self.scale_bits)

    def magnitude_upper(self) -> Fraction:
        return Fraction(max(abs(self.lo_m), abs(self.hi_m)), 1 << self.scale_bits)

    def contains(self, x: Union[Fraction, int, Enclosure]) -> bool:
        if isinstance(x, Enclosure):
            return self.lower() <= x.lower() and x.upper() <= self.upper()
        return self.lower() <= x <= self.upper()

    def intersects(self, other: Enclosure) -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    # arithmetic at a shared scale
    def _same(self, other: Enclosure) -> int:
        if other.scale_bits != self.scale_bits:
            raise ValueError("enclosures at different scales")
        return self.scale_bits

    def __add__(self, other: Enclosure) -> Enclosure:
        S = self._same(other)
        return Enclosure.from_mantissas(self.lo_m + other.lo_m, self.hi_m + other.hi_m, S)

    def __neg__(self) -> Enclosure:
        return Enclosure.from_mantissas(-self.hi_m, -self.lo_m, self.scale_bits)

    def __sub__(self, other: Enclosure) -> Enclosure:
        return self + (-other)

    def __mul__(self, other: Union[int, Enclosure]) -> Enclosure:
        S = self.scale_bits
        if isinstance(other, int):
            a, b = self.lo_m * other, self.hi_m * other
            return Enclosure.from_mantissas(min(a, b), max(a, b), S)
        self._same(other)
        prods = [x * y for x in (self.lo_m, self.hi_m) for y in (other.lo_m, other.hi_m)]
        return Enclosure.from_mantissas(min(prods) >> S, _cdiv(max(prods), 1 << S), S)

    __rmul__ = __mul__

    def divide_int(self, k: int) -> Enclosure:
        if k == 0:
            raise ZeroDivisionError("enclosure divided by zero")
        if k < 0:
            return (-self).divide_int(-k)
        return Enclosure.from_mantissas(self.lo_m // k, _cdiv(self.hi_m, k), self.scale_bits)

    def rescale(self, scale_bits: int) -> Enclosure:
        d = scale_bits - self.scale_bits
        if d >= 0:
            return Enclosure.from_mantissas(self.lo_m << d, self.hi_m << d, scale_bits)
        return Enclosure.from_mantissas(self.lo_m >> -d, _cdiv(self.hi_m, 1 << -d), scale_bits)

    def format(self, digits: int) -> str:
        """``lo/hi`` as decimal strings with ``digits`` places, rounded outward."""
        return f"{_format_decimal(self.lower(), digits, -1)}/{_format_decimal(self.upper(), digits, 1)}"

    def format_midpoint(self, digits: int) -> str:
        return _format_decimal(self.midpoint(), digits, 0)

    def __str__(self) -> str:
        return self.format(20)


def _format_decimal(q: Fraction, digits: int, direction: int) -> str:
    scaled = q * 10 ** digits
    if direction < 0:
        n = math.floor(scaled)
    elif direction > 0:
        n = math.ceil(scaled)
    else:
        n = math.floor(scaled + Fraction(1, 2))
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


# ---------------------------------------------------------------------------
# embedding Q(sqrt 5) numbers


def sqrt5_enclosure(P: PrecisionSpec) -> Enclosure:
    S = P.scale_bits
    s = math.isqrt(5 << (2 * S))
    return Enclosure.from_mantissas(s, s + 1, S)


def _embed_mantissas(c: Q5Number, S: int) -> tuple[int, int]:
    # 2^S (a + b sqrt5) = (x + y sqrt5) / d with integers x, y, d; y sqrt5 is
    # bracketed by an integer square root, so there is no cancellation error
    a, b = c.a, c.b
    if b == 0:
        num = a.numerator << S
        return num // a.denominator, _cdiv(num, a.denominator)
    d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    x = (a.numerator * (d // a.denominator)) << S
    y = (b.numerator * (d // b.denominator)) << S
    s = math.isqrt(5 * y * y)
    if y > 0:
        lo_r, hi_r = s, s + 1
    else:
        lo_r, hi_r = -s - 1, -s
    return (x + lo_r) // d, _cdiv(x + hi_r, d)


def embed(c: Q5Number | Fraction | int, scale_bits: int) -> Enclosure:
    """Enclosure of the real embedding of ``c`` with width at most 2 ulps."""
    lo, hi = _embed_mantissas(Q5Number.coerce(c), scale_bits)
    return Enclosure.from_mantissas(lo, hi, scale_bits)


# ---------------------------------------------------------------------------
# series evaluation


def _magnitude_bound(c: Q5Number) -> Fraction:
    if c.is_zero():
        return Fraction(0)
    lo, hi = _embed_mantissas(c, 64)
    return Fraction(max(abs(lo), abs(hi)), 1 << 64)


def _coefficient_bound(E: PExpansion) -> Fraction:
    return max(_magnitude_bound(c) for c in E.coeffs)


def tail_bound(E: PExpansion, K: int, M: Optional[Fraction] = None) -> Fraction:
    """Upper bound on ``|sum_{k >= K} block_k|``: ``M n/(nK+1) rho^K / (1 - rho)``, ``rho = alpha^-p``."""
    if M is None:
        M = _coefficient_bound(E)
    if M == 0:
        return Fraction(0)
    n, p = E.length, E.base_exp
    rho_hi = _magnitude_bound(alpha_pow(-p))
    # rho^K needs enough bits to resolve its own size
    bits = int(p * K * 0.7) + 64
    rho_k = embed(alpha_pow(-p * K), bits).upper()
    return M * Fraction(n, n * K + 1) * rho_k / (1 - rho_hi)


def _tail_target(digits: int) -> Fraction:
    return Fraction(1, 4 * 10 ** digits)


def term_count(E: PExpansion, digits: int) -> int:
    """Smallest block count ``K`` whose tail bound is at most ``10**-digits / 4``."""
    M = _coefficient_bound(E)
    if M == 0:
        return 0
    n, p = E.length, E.base_exp
    target = _tail_target(digits)
    # float estimate, then settle exactly
    est = (math.log(float(M) * n) - math.log(1 - math.exp(-p * LN_ALPHA)) + digits * math.log(10) + math.log(4))
    K = max(0, math.ceil(est / (p * LN_ALPHA)))
    while tail_bound(E, K, M) > target:
        K += 1
    while K > 0 and tail_bound(E, K - 1, M) <= target:
        K -= 1
    return K


def _blocks(E: PExpansion, K: int):
    n = E.length
    nonzero = [(j, a) for j, a in enumerate(E.coeffs, start=1) if not a.is_zero()]
    rho = alpha_pow(-E.base_exp)
    pw = ONE
    for k in range(K):
        a_part = Fraction(0)
        b_part = Fraction(0)
        for j, a in nonzero:
            den = n * k + j
            a_part += a.a / den
            b_part += a.b / den
        yield Q5Number(a_part, b_part) * pw
        pw = pw * rho


def partial_sum(E: PExpansion, K: int, scale_bits: int) -> Enclosure:
    """Enclosure of the first ``K`` blocks (no tail term)."""
    if E.degree != 1:
        raise ValidationError(f"only degree 1 expansions can be evaluated (got {E.degree})")
    lo_sum = hi_sum = 0
    for block in _blocks(E, K):
        lo, hi = _embed_mantissas(block, scale_bits)
        lo_sum += lo
        hi_sum += hi
    return Enclosure.from_mantissas(lo_sum, hi_sum, scale_bits)


def block_values(E: PExpansion, K: int, scale_bits: int) -> list[Enclosure]:
    return [embed(b, scale_bits) for b in _blocks(E, K)]


def _eval_once(E: PExpansion, digits: int, S: int) -> Enclosure:
    K = term_count(E, digits)
    enc = partial_sum(E, K, S)
    t = tail_bound(E, K)
    tm = _cdiv(t.numerator << S, t.denominator)
    return Enclosure.from_mantissas(enc.lo_m - tm, enc.hi_m + tm, S)


def eval_expansion(E: PExpansion, P: PrecisionSpec, retries: int = 3) -> Enclosure:
    """Enclose the value of a degree-1 expansion with width at most ``10**-D``.

    If the enclosure comes out too wide the guard bits are doubled, up to
    ``retries`` times.
    """
    if E.degree != 1:
        raise ValidationError(f"only degree 1 expansions can be evaluated (got {E.degree})")
    limit = Fraction(1, 10 ** P.decimal_digits)
    spec = P
    for _ in range(retries + 1):
        enc = _eval_once(E, P.decimal_digits, spec.scale_bits)
        if enc.width() <= limit:
            return enc
        spec = spec.with_guard(spec.guard_bits * 2)
    raise PrecisionError(
        f"enclosure width {float(enc.width()):.3g} exceeds 1e-{P.decimal_digits} "
        f"after {retries} guard-bit doublings"
    )


# ---------------------------------------------------------------------------
# oracles


def _atanh_point(X: int, S: int) -> tuple[int, int]:
    """Bounds for ``atanh(X / 2^S)`` with ``0 <= X / 2^S <= 1/2``."""
    if X == 0:
        return 0, 0
    one = 1 << S
    x2 = X * X
    two_S = 2 * S
    t_lo = t_hi = X
    s_lo = s_hi = 0
    d = 1
    while True:
        s_lo += t_lo // d
        s_hi += _cdiv(t_hi, d)
        t_lo = (t_lo * x2) >> two_S
        t_hi = _cdiv(t_hi * x2, 1 << two_S)
        d += 2
        if t_hi <= d:
            break
    # remainder <= x^d / (d (1 - x^2)) and 1/(1 - x^2) <= 4/3
    rem = _cdiv(4 * t_hi * one, 3 * d * (one - _cdiv(x2, one)))
    return s_lo, s_hi + rem


def _arctan_small(X: int, S: int) -> tuple[int, int]:
    """Bounds for ``arctan(X / 2^S)`` with ``0 <= X / 2^S <= 1/2`` (alternating series)."""
    if X == 0:
        return 0, 0
    x2 = X * X
    two_S = 2 * S
    t_lo = t_hi = X
    s_lo = s_hi = 0
    d = 1
    positive = True
    while True:
        if positive:
            s_lo += t_lo // d
            s_hi += _cdiv(t_hi, d)
        else:
            s_lo -= _cdiv(t_hi, d)
            s_hi -= t_lo // d
        t_lo = (t_lo * x2) >> two_S
        t_hi = _cdiv(t_hi * x2, 1 << two_S)
        d += 2
        positive = not positive
        r = _cdiv(t_hi, d)
        if r <= 1:
            # first omitted term bounds the remainder
            return s_lo - r, s_hi + r


def _arctan_point(X: int, S: int) -> tuple[int, int]:
    if X < 0:
        lo, hi = _arctan_point(-X, S)
        return -hi, -lo
    half = 1 << (S - 1)
    if X <= half:
        return _arctan_small(X, S)
    # arctan x = 2 arctan(x / (1 + sqrt(1 + x^2))), each end rounded outward
    one = 1 << S
    s = math.isqrt((one << S) + X * X)
    y_lo = (X << S) // (one + s + 1)
    y_hi = _cdiv(X << S, one + s)
    lo = _arctan_point(y_lo, S)[0]
    hi = _arctan_point(y_hi, S)[1]
    return 2 * lo, 2 * hi


def _arctan_enclosure(x: Enclosure) -> Enclosure:
    S = x.scale_bits
    return Enclosure.from_mantissas(_arctan_point(x.lo_m, S)[0], _arctan_point(x.hi_m, S)[1], S)


def _atanh_enclosure(x: Enclosure) -> Enclosure:
    S = x.scale_bits
    lo_m, hi_m = x.lo_m, x.hi_m
    if not (-(1 << (S - 1)) <= lo_m and hi_m <= 1 << (S - 1)):
        raise ValidationError("atanh argument must lie in [-1/2, 1/2]")

    def point(X: int) -> tuple[int, int]:
        if X < 0:
            lo, hi = _atanh_point(-X, S)
            return -hi, -lo
        return _atanh_point(X, S)

    return Enclosure.from_mantissas(point(lo_m)[0], point(hi_m)[1], S)


def _work_bits(P: PrecisionSpec) -> int:
    return P.scale_bits + 16


def oracle_atanh(x: Q5Number | Fraction, P: PrecisionSpec) -> Enclosure:
    """atanh of a number with ``|x| <= 1/2``."""
    S = _work_bits(P)
    return _atanh_enclosure(embed(x, S)).rescale(P.scale_bits)


def _ln2(S: int) -> Enclosure:
    return _atanh_enclosure(Enclosure.from_fraction(Fraction(1, 3), S)) * 2


def oracle_ln(q: Fraction | int, P: PrecisionSpec) -> Enclosure:
    """ln q for rational ``q > 0``: ``q = 2^e q'``, ``q'`` in [2/3, 4/3], ``ln q' = 2 atanh((q'-1)/(q'+1))``."""
    q = Fraction(q)
    if q <= 0:
        raise ValidationError(f"ln needs a positive argument, got {q}")
    S = _work_bits(P)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    qr = q / Fraction(2) ** e
    while qr > Fraction(4, 3):
        qr /= 2
        e += 1
    while qr < Fraction(2, 3):
        qr *= 2
        e -= 1
    z = (qr - 1) / (qr + 1)
    enc = _atanh_enclosure(Enclosure.from_fraction(z, S)) * 2
    if e:
        enc = enc + _ln2(S) * e
    return enc.rescale(P.scale_bits)


def oracle_arctan(x: Q5Number | Fraction | int, P: PrecisionSpec) -> Enclosure:
    """arctan of a real number in Q(sqrt 5); half-angle reductions bring ``|x|`` below 1/2."""
    S = _work_bits(P)
    return _arctan_enclosure(embed(Q5Number.coerce(x), S)).rescale(P.scale_bits)


def oracle_pi4(P: PrecisionSpec) -> Enclosure:
    """pi/4 = 4 arctan(1/5) - arctan(1/239)."""
    S = _work_bits(P)
    a = _arctan_enclosure(Enclosure.from_fraction(Fraction(1, 5), S))
    b = _arctan_enclosure(Enclosure.from_fraction(Fraction(1, 239), S))
    return (a * 4 - b).rescale(P.scale_bits)


def oracle_value(tag: ConstantTag, P: PrecisionSpec) -> Enclosure:
    """Enclosure of the constant a tag names, computed without any base-alpha series."""
    k, r = tag.kind, tag.r
    S = P.scale_bits
    if k is TagKind.CUSTOM:
        raise ValidationError("custom tags have no oracle")
    if k is TagKind.ZERO:
        return Enclosure.from_mantissas(0, 0, S)
    if k is TagKind.LOG_ALPHA:
        # ln alpha = 2 atanh(alpha^-3) and alpha^-3 = sqrt5 - 2
        v = oracle_atanh(Q5Number(-2, 1), P) * 2
    elif k is TagKind.LOG_SQRT5:
        v = oracle_ln(5, P).divide_int(2)
    elif k is TagKind.LOG2:
        v = oracle_ln(2, P)
    elif k is TagKind.LOG5:
        v = oracle_ln(5, P)
    elif k is TagKind.LOG_FIB:
        v = oracle_ln(fib_lucas(r).f, P)
    elif k is TagKind.LOG_LUCAS:
        v = oracle_ln(fib_lucas(r).l, P)
    elif k is TagKind.ARCTAN_INV_FIB:
        v = oracle_arctan(Fraction(1, fib_lucas(r).f), P)
    elif k is TagKind.ARCTAN_INV_LUCAS:
        v = oracle_arctan(Fraction(1, fib_lucas(r).l), P)
    elif k is TagKind.ARCTAN_INV_FIB_SQRT5:
        # 1/(F sqrt5) = sqrt5 / (5 F)
        v = oracle_arctan(Q5Number(0, Fraction(1, 5 * fib_lucas(r).f)), P)
    elif k is TagKind.ARCTAN_2_OVER_LUCAS:
        v = oracle_arctan(Fraction(2, fib_lucas(r).l), P)
    elif k is TagKind.ARCTAN_2_OVER_FIB_SQRT5:
        v = oracle_arctan(Q5Number(0, Fraction(2, 5 * fib_lucas(r).f)), P)
    elif k is TagKind.ARCTAN_INV_ALPHA_POW:
        v = oracle_arctan(alpha_pow(-r), P)
    elif k is TagKind.PI4:
        v = oracle_pi4(P)
    else:  # pragma: no cover - enum is exhaustive
        raise ValidationError(f"no oracle for {k}")
    return v if tag.sign > 0 else -v


def agree_digits(a: Enclosure, b: Enclosure, cap: int) -> int:
    """Decimal places to which the two midpoints agree, capped at ``cap``; -1 if disjoint."""
    if not a.intersects(b):
        return -1
    delta = abs(a.midpoint() - b.midpoint())
    if delta == 0:
        return cap
    n = 0
    # largest n with delta < 10^-n
    n = max(0, int(-math.log10(delta.numerator) + math.log10(delta.denominator)) - 2)
    while n < cap and delta * 10 ** (n + 1) < 1:
        n += 1
    while n > 0 and delta * 10 ** n >= 1:
        n -= 1
    return min(n, cap)


# ---------------------------------------------------------------------------
# base-phi digits


def _dyadic_ge(v: Fraction, t: Q5Number) -> bool:
    return (Q5Number(v) - t).sign() >= 0


def phi_digits(x: Enclosure, count: int) -> str:
    """Greedy base-phi expansion of a non-negative enclosure, ``count`` digits from the leading one.

    Digits are decided by exact comparison of the enclosure ends against
    sums of powers of alpha, so exact inputs such as 2 expand exactly.
    """
    if count < 1:
        raise ValueError("count must be positive")
    lo, hi = x.lower(), x.upper()
    if lo < 0:
        if hi < 0:
            raise ValidationError("phi_digits needs a non-negative value")
        raise UndecidableDigitError(0)
    if hi == 0:
        return "0"
    e = 0
    while _dyadic_ge(hi, alpha_pow(e + 1)):
        e += 1
    while not _dyadic_ge(hi, alpha_pow(e)):
        e -= 1
    acc = Q5Number(0)
    digits: dict[int, int] = {}
    for i in range(count):
        pos = e - i
        t = acc + alpha_pow(pos)
        if _dyadic_ge(lo, t):
            digits[pos] = 1
            acc = t
        elif not _dyadic_ge(hi, t):
            digits[pos] = 0
        else:
            raise UndecidableDigitError(i)
    top = max(e, 0)
    bottom = min(e - count + 1, 0)
    int_part = "".join(str(digits.get(p, 0)) for p in range(top, -1, -1))
    frac_part = "".join(str(digits.get(p, 0)) for p in range(-1, bottom - 1, -1)).rstrip("0")
    return int_part + ("." + frac_part if frac_part else "")
