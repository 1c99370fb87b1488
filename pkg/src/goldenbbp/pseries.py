"""P-notation expansions in base ``alpha**p`` and their exact algebra.

A :class:`PExpansion` with base exponent ``p``, length ``n`` and coefficients
``a_1..a_n`` denotes the series

    sum_{k>=0} alpha^(-p k) * sum_{j=1..n} a_j / (n k + j)

All operations here are exact over Q(sqrt 5); numeric evaluation lives in
:mod:`goldenbbp.bignum`.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exactfield import (
    ONE,
    ZERO,
    Q5Number,
    alpha_pow,
    beta_pow,
    fib_lucas,
    format_rational,
    parse_rational,
)

__all__ = [
    "PExpansion",
    "TagKind",
    "ConstantTag",
    "ValidationError",
    "ParseError",
    "rebase",
    "stretch",
    "scale",
    "combine",
    "common_form",
    "is_scalar_multiple",
    "beta_power_form",
    "render_coefficient",
    "render_pnotation",
    "parse_coefficient",
    "parse_pnotation",
    "serialize",
    "deserialize",
    "tag_to_dict",
    "tag_from_dict",
]

FORMAT_VERSION = 1

Scalar = Union[Q5Number, int, Fraction]


class ValidationError(ValueError):
    """A structurally invalid expansion, tag or document."""


class ParseError(ValueError):
    """Malformed text; ``pos`` is the offset where parsing failed."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


@dataclass(frozen=True)
class PExpansion:
    degree: int
    base_exp: int
    length: int
    coeffs: tuple[Q5Number, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Q5Number.coerce(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.degree < 1:
            raise ValidationError(f"degree must be >= 1, got {self.degree}")
        if self.base_exp < 1:
            raise ValidationError(f"base exponent must be >= 1, got {self.base_exp}")
        if self.length < 1:
            raise ValidationError(f"length must be >= 1, got {self.length}")
        if len(coeffs) != self.length:
            raise ValidationError(
                f"coefficient vector has {len(coeffs)} entries, length is {self.length}"
            )

    @classmethod
    def of(cls, base_exp: int, coeffs: Sequence[Scalar], degree: int = 1) -> PExpansion:
        return cls(degree, base_exp, len(coeffs), tuple(coeffs))

    def is_zero_vector(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __neg__(self) -> PExpansion:
        return scale(self, -1)

    def __str__(self) -> str:
        return render_pnotation(self)


# ---------------------------------------------------------------------------
# constant tags


class TagKind(str, enum.Enum):
    LOG_ALPHA = "LogAlpha"
    LOG_SQRT5 = "LogSqrt5"
    LOG_FIB = "LogFib"
    LOG_LUCAS = "LogLucas"
    LOG2 = "Log2"
    LOG5 = "Log5"
    ARCTAN_INV_FIB = "ArctanInvFib"
    ARCTAN_INV_LUCAS = "ArctanInvLucas"
    ARCTAN_INV_FIB_SQRT5 = "ArctanInvFibSqrt5"
    ARCTAN_2_OVER_LUCAS = "Arctan2OverLucas"
    ARCTAN_2_OVER_FIB_SQRT5 = "Arctan2OverFibSqrt5"
    ARCTAN_INV_ALPHA_POW = "ArctanInvAlphaPow"
    PI4 = "Pi4"
    ZERO = "Zero"
    CUSTOM = "Custom"


_PARAMETRIC = {
    TagKind.LOG_FIB,
    TagKind.LOG_LUCAS,
    TagKind.ARCTAN_INV_FIB,
    TagKind.ARCTAN_INV_LUCAS,
    TagKind.ARCTAN_INV_FIB_SQRT5,
    TagKind.ARCTAN_2_OVER_LUCAS,
    TagKind.ARCTAN_2_OVER_FIB_SQRT5,
    TagKind.ARCTAN_INV_ALPHA_POW,
}


@dataclass(frozen=True)
class ConstantTag:
    """Which constant an expansion claims to equal, times ``sign``."""

    kind: TagKind
    r: Optional[int] = None
    name: Optional[str] = None
    text: Optional[str] = None
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", TagKind(self.kind))
        if self.sign not in (1, -1):
            raise ValidationError(f"tag sign must be +1 or -1, got {self.sign}")
        if self.kind in _PARAMETRIC:
            if not isinstance(self.r, int) or self.r < 0:
                raise ValidationError(f"{self.kind.value} needs a parameter r >= 0")
        elif self.r is not None:
            raise ValidationError(f"{self.kind.value} takes no parameter")
        if self.kind is TagKind.ZERO and not self.name:
            raise ValidationError("Zero tags need a relation name")
        if self.kind is TagKind.CUSTOM and self.text is None:
            raise ValidationError("Custom tags need a text")

    def negated(self) -> ConstantTag:
        return ConstantTag(self.kind, self.r, self.name, self.text, -self.sign)

    def describe(self) -> str:
        r = self.r
        body = {
            TagKind.LOG_ALPHA: "log α",
            TagKind.LOG_SQRT5: "log √5",
            TagKind.LOG_FIB: f"log F_{r}",
            TagKind.LOG_LUCAS: f"log L_{r}",
            TagKind.LOG2: "log 2",
            TagKind.LOG5: "log 5",
            TagKind.ARCTAN_INV_FIB: f"arctan(1/F_{r})",
            TagKind.ARCTAN_INV_LUCAS: f"arctan(1/L_{r})",
            TagKind.ARCTAN_INV_FIB_SQRT5: f"arctan(1/(F_{r}√5))",
            TagKind.ARCTAN_2_OVER_LUCAS: f"arctan(2/L_{r})",
            TagKind.ARCTAN_2_OVER_FIB_SQRT5: f"arctan(2/(F_{r}√5))",
            TagKind.ARCTAN_INV_ALPHA_POW: f"arctan(α^-{r})",
            TagKind.PI4: "π/4",
            TagKind.ZERO: f"0 [{self.name}]",
            TagKind.CUSTOM: f"{self.text}",
        }[self.kind]
        return body if self.sign > 0 else f"-{body}"

    def __str__(self) -> str:
        return self.describe()


def tag_to_dict(tag: ConstantTag) -> dict:
    d: dict = {"kind": tag.kind.value}
    if tag.r is not None:
        d["r"] = tag.r
    if tag.name is not None:
        d["name"] = tag.name
    if tag.text is not None:
        d["text"] = tag.text
    d["sign"] = tag.sign
    return d


def tag_from_dict(d: dict) -> ConstantTag:
    if not isinstance(d, dict) or "kind" not in d:
        raise ValidationError("tag must be an object with a 'kind'")
    try:
        kind = TagKind(d["kind"])
    except ValueError:
        raise ValidationError(f"unknown tag kind {d['kind']!r}") from None
    extra = set(d) - {"kind", "r", "name", "text", "sign"}
    if extra:
        raise ValidationError(f"unexpected tag fields {sorted(extra)}")
    return ConstantTag(kind, d.get("r"), d.get("name"), d.get("text"), d.get("sign", 1))


# ---------------------------------------------------------------------------
# algebra


def _require_degree_one(E: PExpansion, op: str) -> None:
    if E.degree != 1:
        raise ValidationError(f"{op} is only defined for degree 1 expansions (got {E.degree})")


def rebase(E: PExpansion, m: int) -> PExpansion:
    """Group the outer index into blocks of ``m``: base ``alpha^(p m)``, length ``n m``.

    The coefficient at position ``n*i + j`` is ``a_j * alpha^(-p*i)``.
    """
    if m < 1:
        raise ValidationError(f"rebase factor must be >= 1, got {m}")
    if m == 1:
        return E
    p = E.base_exp
    coeffs: list[Q5Number] = []
    for i in range(m):
        w = alpha_pow(-p * i)
        coeffs.extend(a * w for a in E.coeffs)
    return PExpansion(E.degree, p * m, E.length * m, tuple(coeffs))


def stretch(E: PExpansion, c: int) -> PExpansion:
    """Same base, length ``c n``, using ``1/(nk+j) = c/(c n k + c j)``."""
    _require_degree_one(E, "stretch")
    if c < 1:
        raise ValidationError(f"stretch factor must be >= 1, got {c}")
    if c == 1:
        return E
    coeffs = [ZERO] * (E.length * c)
    for j, a in enumerate(E.coeffs, start=1):
        coeffs[c * j - 1] = a * c
    return PExpansion(1, E.base_exp, E.length * c, tuple(coeffs))


def scale(E: PExpansion, c: Scalar) -> PExpansion:
    c = Q5Number.coerce(c)
    return PExpansion(E.degree, E.base_exp, E.length, tuple(a * c for a in E.coeffs))


def common_form(expansions: Sequence[PExpansion]) -> list[PExpansion]:
    """Rewrite every expansion in base ``alpha^P`` and length ``N`` (lcm choices)."""
    if not expansions:
        raise ValidationError("need at least one expansion")
    for E in expansions:
        _require_degree_one(E, "combine")
    P = math.lcm(*(E.base_exp for E in expansions))
    rebased = [rebase(E, P // E.base_exp) for E in expansions]
    N = math.lcm(*(E.length for E in rebased))
    return [stretch(E, N // E.length) for E in rebased]


def combine(terms: Iterable[tuple[Scalar, PExpansion]]) -> PExpansion:
    """Exact linear combination ``sum c_i E_i`` in a common base and length."""
    terms = list(terms)
    if not terms:
        raise ValidationError("combine needs at least one term")
    degrees = {E.degree for _, E in terms}
    if len(degrees) != 1:
        raise ValidationError(f"cannot combine mixed degrees {sorted(degrees)}")
    forms = common_form([E for _, E in terms])
    n = forms[0].length
    acc = [ZERO] * n
    for (c, _), F in zip(terms, forms):
        c = Q5Number.coerce(c)
        if c.is_zero():
            continue
        for i, a in enumerate(F.coeffs):
            if not a.is_zero():
                acc[i] = acc[i] + a * c
    return PExpansion(1, forms[0].base_exp, n, tuple(acc))


def is_scalar_multiple(E1: PExpansion, E2: PExpansion) -> Optional[Q5Number]:
    """Return ``c`` with ``E1 == scale(E2, c)``, or None if no such ``c`` exists."""
    if (E1.degree, E1.base_exp, E1.length) != (E2.degree, E2.base_exp, E2.length):
        raise ValidationError(
            "dimension mismatch: "
            f"(s={E1.degree}, p={E1.base_exp}, n={E1.length}) vs "
            f"(s={E2.degree}, p={E2.base_exp}, n={E2.length})"
        )
    ratio: Optional[Q5Number] = None
    for a, b in zip(E1.coeffs, E2.coeffs):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        q = a / b
        if ratio is None:
            ratio = q
        elif q != ratio:
            return None
    if ratio is None:
        # E2 vanishes identically, so E1 does too
        return ONE
    return ratio


# ---------------------------------------------------------------------------
# P-notation text


def beta_power_form(c: Q5Number) -> Optional[tuple[Fraction, int]]:
    """Find ``(q, k)`` with ``c == q * beta**k``, ``q`` rational, ``k >= 0``.

    Uses ``beta^k = (L_k - F_k sqrt5)/2``: ``c`` qualifies iff
    ``a F_k == -b L_k``.  Since ``gcd(F_k, L_k) <= 2`` only ``L_k`` up to twice
    the reduced denominator of ``-b/a`` need checking.
    """
    if c.is_zero():
        return None
    if c.b == 0:
        return c.a, 0
    if c.a == 0:
        return None
    bound = 2 * (c.b / c.a).denominator + 2
    k, (F, L) = 1, fib_lucas(1)
    F_next = 1
    while L <= bound:
        if c.a * F == -c.b * L:
            return 2 * c.a / L, k
        # advance (F_k, L_k) -> (F_{k+1}, L_{k+1})
        F, F_next = F_next, F + F_next
        L = 2 * F_next - F
        k += 1
    return None


def _fmt_beta(k: int) -> str:
    return "β" if k == 1 else f"β^{k}"


def render_coefficient(c: Q5Number) -> str:
    if c.is_zero():
        return "0"
    form = beta_power_form(c)
    if form is None:
        return str(c)
    q, k = form
    if k == 0:
        return str(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    if q == 1:
        mag = ""
    elif q.denominator == 1:
        mag = str(q.numerator)
    else:
        mag = f"({q})"
    return f"{sign}{mag}{_fmt_beta(k)}"


def render_pnotation(E: PExpansion) -> str:
    body = ", ".join(render_coefficient(c) for c in E.coeffs)
    return f"P({E.degree}, α^{E.base_exp}, {E.length}, ({body}))"


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str) -> None:
        self.skip_ws()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            raise ParseError(f"expected {s!r}, found {found!r}", self.pos)
        self.pos += len(s)

    def accept(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start : self.pos]
        if not digits.lstrip("+-"):
            self.pos = start
            raise ParseError("expected an integer", start)
        return int(digits)

    def rational(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            den_pos = self.pos
            den = self.integer()
            if den <= 0:
                raise ParseError("denominator must be positive", den_pos)
            return Fraction(num, den)
        return Fraction(num)


def _parse_coefficient(rd: _Reader) -> Q5Number:
    rd.skip_ws()
    start = rd.pos
    sign = 1
    if rd.accept("-"):
        sign = -1
    elif rd.accept("+"):
        pass
    q: Optional[Fraction] = None
    if rd.accept("("):
        q = rd.rational()
        rd.expect(")")
    elif rd.peek().isdigit():
        q = rd.rational()
        if rd.accept("+"):
            # general form a+b√5
            b = rd.rational()
            rd.expect("√5")
            return Q5Number(sign * q, b)
    if rd.accept("β"):
        k = rd.integer() if rd.accept("^") else 1
        if k < 0:
            raise ParseError("negative β powers are not supported", rd.pos)
        return beta_pow(k) * (sign * (q if q is not None else 1))
    if q is None:
        raise ParseError("expected a coefficient", start)
    return Q5Number(sign * q, 0)


def parse_coefficient(text: str) -> Q5Number:
    """Parse one coefficient such as ``-3β^4``, ``(1/2)β``, ``7`` or ``1/2+-1/2√5``."""
    rd = _Reader(text)
    c = _parse_coefficient(rd)
    rd.skip_ws()
    if rd.pos != len(text):
        raise ParseError("trailing characters", rd.pos)
    return c


def parse_pnotation(text: str) -> PExpansion:
    """Parse ``P(s, α^p, n, (c_1, ..., c_n))`` as emitted by :func:`render_pnotation`.

    The leading ``P`` is optional and ``α`` alone means ``α^1``.
    """
    rd = _Reader(text)
    rd.accept("P")
    rd.expect("(")
    degree = rd.integer()
    rd.expect(",")
    rd.expect("α")
    p = rd.integer() if rd.accept("^") else 1
    rd.expect(",")
    n = rd.integer()
    rd.expect(",")
    rd.expect("(")
    coeffs = [_parse_coefficient(rd)]
    while rd.accept(","):
        coeffs.append(_parse_coefficient(rd))
    rd.expect(")")
    rd.expect(")")
    rd.skip_ws()
    if rd.pos != len(text):
        raise ParseError("trailing characters", rd.pos)
    if len(coeffs) != n:
        raise ParseError(f"declared length {n} but {len(coeffs)} coefficients", rd.pos)
    return PExpansion(degree, p, n, tuple(coeffs))


# ---------------------------------------------------------------------------
# JSON documents


def serialize(E: PExpansion, tag: ConstantTag) -> str:
    """Canonical single-line JSON; key order is fixed so output is byte-comparable."""
    doc = {
        "version": FORMAT_VERSION,
        "degree": E.degree,
        "base_exp": E.base_exp,
        "length": E.length,
        "tag": tag_to_dict(tag),
        "coeffs": [{"a": format_rational(c.a), "b": format_rational(c.b)} for c in E.coeffs],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def _int_field(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValidationError(f"field {key!r} must be an integer")
    return v


def deserialize(text: str) -> tuple[PExpansion, ConstantTag]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from None
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise ValidationError(f"unsupported version {doc.get('version')!r}")
    missing = [k for k in ("degree", "base_exp", "length", "tag", "coeffs") if k not in doc]
    if missing:
        raise ValidationError(f"missing fields {missing}")
    coeffs = []
    raw = doc["coeffs"]
    if not isinstance(raw, list):
        raise ValidationError("'coeffs' must be a list")
    for i, c in enumerate(raw):
        if not isinstance(c, dict) or set(c) != {"a", "b"}:
            raise ValidationError(f"coefficient {i} must have exactly fields 'a' and 'b'")
        try:
            coeffs.append(Q5Number(parse_rational(c["a"]), parse_rational(c["b"])))
        except (ValueError, TypeError, AttributeError) as exc:
            raise ValidationError(f"coefficient {i}: {exc}") from None
    E = PExpansion(
        _int_field(doc, "degree"), _int_field(doc, "base_exp"), _int_field(doc, "length"), tuple(coeffs)
    )
    return E, tag_from_dict(doc["tag"])
