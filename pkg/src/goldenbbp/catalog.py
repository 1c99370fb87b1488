"""Generators for golden-ratio-base expansions of logs and inverse tangents.

Every generator returns an exact :class:`~goldenbbp.pseries.PExpansion`.  The
catalog wraps them as named :class:`CatalogEntry` objects; names take the form
``family/r`` (``logF/3``, ``atanL/2``, ...), plain names for constants
(``log2``, ``logAlpha``) and ``zero/<relation>`` for the zero relations.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .exactfield import ZERO, Q5Number, alpha_pow, beta_pow
from .literals import ZERO_VECTORS, literal_expansion
from .pseries import (
    ConstantTag,
    PExpansion,
    TagKind,
    ValidationError,
    combine,
    is_scalar_multiple,
    scale,
    stretch,
)

__all__ = [
    "Provenance",
    "CatalogEntry",
    "ZeroRelation",
    "UnknownEntryError",
    "DomainError",
    "li1_expansion",
    "log_alpha",
    "log_sqrt5",
    "arctan_inv_alpha_pow",
    "log_fib",
    "log_lucas",
    "build_via_li1",
    "arctan_inv_fib",
    "arctan_inv_lucas",
    "arctan_family12",
    "arctan_double",
    "zero_relation",
    "list_zero_relations",
    "ZERO_RELATION_NAMES",
    "FAMILIES",
    "CONSTANTS",
    "get_entry",
    "list_catalog",
]


class Provenance(str, enum.Enum):
    THEOREM_FORMULA = "TheoremFormula"
    PAPER_LITERAL = "PaperLiteralVector"
    DERIVED = "DerivedCombination"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    tag: ConstantTag
    expansion: PExpansion
    provenance: Provenance


class UnknownEntryError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown catalog entry"


class DomainError(ValueError):
    """Generator parameter outside the range its formula covers."""


def _need_positive(r: int, what: str = "r") -> None:
    if not isinstance(r, int) or isinstance(r, bool):
        raise DomainError(f"{what} must be an integer")
    if r == 0:
        raise DomainError(f"{what} ≠ 0 required")
    if r < 0:
        raise DomainError(f"{what} >= 1 required (got {r})")


def _nb(k: int) -> Q5Number:
    """``(-beta)**k == alpha**(-k)``."""
    return alpha_pow(-k)


# ---------------------------------------------------------------------------
# building blocks


def li1_expansion(t: int, m: int, negated: bool = False) -> PExpansion:
    """Li_1(1/alpha^t) (or Li_1(-1/alpha^t)) grouped into blocks of ``m`` terms.

    Non-negated: base ``alpha^(t m)``, length ``m``, ``a_j = alpha^(-t j)``.
    Negated: base ``alpha^(2 t m)``, length ``2 m``, ``a_j = (-1)^j alpha^(-t j)``.
    """
    _need_positive(t, "t")
    _need_positive(m, "m")
    if not negated:
        return PExpansion.of(t * m, [_nb(t * j) for j in range(1, m + 1)])
    return PExpansion.of(
        2 * t * m, [_nb(t * j) * (-1 if j % 2 else 1) for j in range(1, 2 * m + 1)]
    )


def log_alpha() -> PExpansion:
    """log(alpha) = Li_1(1/alpha^2) = P(1, alpha^2, 1, (beta^2))."""
    return li1_expansion(2, 1)


def log_sqrt5() -> PExpansion:
    return build_via_li1("LogSqrt5")


def arctan_inv_alpha_pow(t: int) -> PExpansion:
    """arctan(alpha^-t) = P(1, alpha^(4t), 4, ((-beta)^t, 0, -(-beta)^(3t), 0))."""
    _need_positive(t, "t")
    return PExpansion.of(4 * t, [_nb(t), ZERO, -_nb(3 * t), ZERO])


# ---------------------------------------------------------------------------
# logarithms


def log_fib(r: int) -> PExpansion:
    """log F_r in base alpha^(4r), length 2r."""
    _need_positive(r)
    coeffs = [ZERO] * (2 * r)
    for j in range(1, r + 1):
        if r % 2:
            odd = beta_pow(4 * j - 2) * (r - 2 + (r if j == (r + 1) // 2 else 0))
            even = beta_pow(4 * j) * (0 if j == r else r)
        else:
            odd = beta_pow(4 * j - 2) * (r - 2)
            even = beta_pow(4 * j) * (0 if j in (r // 2, r) else r)
        coeffs[2 * j - 2] = odd
        coeffs[2 * j - 1] = even
    return PExpansion.of(4 * r, coeffs)


def log_lucas(r: int) -> PExpansion:
    """log L_r: base alpha^(2r), length r for odd r; base alpha^(4r), length 2r for even r."""
    _need_positive(r)
    if r % 2:
        return PExpansion.of(2 * r, [beta_pow(2 * j) * (0 if j == r else r) for j in range(1, r + 1)])
    coeffs = []
    for j in range(1, 2 * r + 1):
        mult = r + (r if j == r else 0) - (r if j == 2 * r else 0)
        coeffs.append(beta_pow(2 * j) * mult)
    return PExpansion.of(4 * r, coeffs)


_LI1_KINDS = ("LogFib", "LogLucas", "LogSqrt5", "Log2Alt", "Log5Alt", "LogAlphaV1", "LogAlphaV2")


def build_via_li1(kind: str, r: Optional[int] = None) -> PExpansion:
    """Assemble a logarithm from Li_1 pieces with :func:`combine`.

    ``LogFib``/``LogLucas`` take ``r``; the rest are fixed constants.
    """
    if kind == "LogFib":
        _need_positive(r)
        # (r-2) Li1(1/a^2) + Li1(1/a^4) - Li1((-1)^r / a^(2r))
        return combine(
            [
                (r - 2, li1_expansion(2, 1)),
                (1, li1_expansion(4, 1)),
                (-1, li1_expansion(2 * r, 1, negated=r % 2 == 1)),
            ]
        )
    if kind == "LogLucas":
        _need_positive(r)
        # r Li1(1/a^2) - Li1((-1)^(r+1) / a^(2r))
        return combine([(r, li1_expansion(2, 1)), (-1, li1_expansion(2 * r, 1, negated=r % 2 == 0))])
    if kind == "LogSqrt5":
        return combine([(2, li1_expansion(2, 1)), (-1, li1_expansion(4, 1))])
    if kind == "Log2Alt":
        return combine([(1, li1_expansion(1, 3)), (-1, li1_expansion(3, 1))])
    if kind == "Log5Alt":
        return combine([(2, li1_expansion(2, 1)), (-2, li1_expansion(2, 1, negated=True))])
    if kind == "LogAlphaV1":
        # (1/2) Li1(1/a), written at length 2
        return scale(stretch(combine([(1, li1_expansion(1, 1))]), 2), Fraction(1, 2))
    if kind == "LogAlphaV2":
        return stretch(combine([(1, li1_expansion(2, 1))]), 2)
    raise ValidationError(f"unknown Li_1 construction {kind!r}; expected one of {_LI1_KINDS}")


# ---------------------------------------------------------------------------
# inverse tangents


def _sparse_families(
    length: int, lo: int, hi: int, lo_sign: int, hi_sign: int
) -> list[Q5Number]:
    """Accumulate the two grouped arctan(alpha^-lo), arctan(alpha^-hi) families.

    For ``s`` in {lo, hi} with ``g`` the other one, positions ``s(4j-3)`` get
    ``-sign*s*beta^pos`` and positions ``s(4j-1)`` get ``+sign*s*beta^pos`` for
    ``j = 1..g``; overlapping positions add.
    """
    coeffs = [ZERO] * length
    for s, g, sign in ((lo, hi, lo_sign), (hi, lo, hi_sign)):
        for j in range(1, g + 1):
            p1 = s * (4 * j - 3)
            p3 = s * (4 * j - 1)
            coeffs[p1 - 1] = coeffs[p1 - 1] - beta_pow(p1) * (sign * s)
            coeffs[p3 - 1] = coeffs[p3 - 1] + beta_pow(p3) * (sign * s)
    return coeffs


def arctan_inv_fib(r: int) -> PExpansion:
    """arctan(1/F_r) for odd r >= 3 (base alpha^(4(r^2-4))) or even r >= 2 (alpha^(4(r^2-1)))."""
    _need_positive(r)
    if r % 2:
        if r < 3:
            raise DomainError("arctan(1/F_r) needs r >= 2 (odd r must be >= 3)")
        # arctan(1/a^(r-2)) - arctan(1/a^(r+2))
        n = 4 * (r * r - 4)
        return PExpansion.of(n, _sparse_families(n, r - 2, r + 2, 1, -1))
    # arctan(1/a^(r-1)) + arctan(1/a^(r+1))
    n = 4 * (r * r - 1)
    return PExpansion.of(n, _sparse_families(n, r - 1, r + 1, 1, 1))


def arctan_inv_lucas(r: int) -> PExpansion:
    """arctan(1/L_r): sparse base alpha^(4(r^2-1)) form for even r, negated length-12 form for odd r."""
    _need_positive(r)
    if r % 2:
        return scale(_family12_vector(r), -1)
    n = 4 * (r * r - 1)
    # arctan(1/a^(r-1)) - arctan(1/a^(r+1))
    return PExpansion.of(n, _sparse_families(n, r - 1, r + 1, 1, -1))


def _family12_vector(r: int) -> PExpansion:
    b = [beta_pow(k * r) for k in (1, 3, 5, 7, 9, 11)]
    return PExpansion.of(
        12 * r, [b[0], ZERO, 2 * b[1], ZERO, b[2], ZERO, -b[3], ZERO, -2 * b[4], ZERO, -b[5], ZERO]
    )


def arctan_family12(r: int) -> CatalogEntry:
    """Length-12 expansion in base alpha^(12 r): -arctan(1/L_r) (r odd), arctan(1/(F_r sqrt5)) (r even)."""
    _need_positive(r)
    if r % 2:
        tag = ConstantTag(TagKind.ARCTAN_INV_LUCAS, r, sign=-1)
    else:
        tag = ConstantTag(TagKind.ARCTAN_INV_FIB_SQRT5, r)
    return CatalogEntry(f"atan12/{r}", tag, _family12_vector(r), Provenance.THEOREM_FORMULA)


def arctan_double(r: int) -> CatalogEntry:
    """P(1, alpha^(4r), 4, (2 beta^r, 0, -2 beta^(3r), 0)): -arctan(2/L_r) or arctan(2/(F_r sqrt5))."""
    _need_positive(r)
    E = PExpansion.of(4 * r, [2 * beta_pow(r), ZERO, -2 * beta_pow(3 * r), ZERO])
    if r % 2:
        tag = ConstantTag(TagKind.ARCTAN_2_OVER_LUCAS, r, sign=-1)
    else:
        tag = ConstantTag(TagKind.ARCTAN_2_OVER_FIB_SQRT5, r)
    return CatalogEntry(f"atan2L/{r}", tag, E, Provenance.THEOREM_FORMULA)


# ---------------------------------------------------------------------------
# zero relations


ZERO_RELATION_NAMES = (
    "thm4.1",
    "thm4.2",
    "thm4.3",
    "thm4.4",
    "thm4.5",
    "len2",
    "len12",
    "len10",
    "len5",
)


@dataclass(frozen=True)
class ZeroRelation:
    """A vanishing expansion as printed, plus its reconstruction when one exists."""

    name: str
    literal: CatalogEntry
    derived: Optional[CatalogEntry]
    relation: str

    @property
    def ratio(self) -> Optional[Q5Number]:
        """``c`` with ``literal == c * derived`` (None if not proportional or not derivable)."""
        if self.derived is None:
            return None
        return is_scalar_multiple(self.literal.expansion, self.derived.expansion)


def _ad(r: int) -> PExpansion:
    return arctan_double(r).expansion


# name -> (human-readable relation, builder of the combination or None)
_ZERO_DERIVATIONS: dict[str, tuple[str, Optional[Callable[[], PExpansion]]]] = {
    "thm4.1": ("2 log F_3 - log L_3", lambda: combine([(2, log_fib(3)), (-1, log_lucas(3))])),
    "thm4.2": (
        "log L_6 - 2 log F_4 - log F_3",
        lambda: combine([(1, log_lucas(6)), (-2, log_fib(4)), (-1, log_fib(3))]),
    ),
    "thm4.3": (
        "log F_12 - 4 log F_3 - 2 log L_2",
        lambda: combine([(1, log_fib(12)), (-4, log_fib(3)), (-2, log_lucas(2))]),
    ),
    # each atan2L/r entry equals -arctan(2/L_r) for odd r
    "thm4.4": (
        "2 arctan(2/L_3) + arctan(2/L_5) - arctan(2/L_1)",
        lambda: combine([(-2, _ad(3)), (-1, _ad(5)), (1, _ad(1))]),
    ),
    "thm4.5": (
        "2 arctan(1/L_1) - 2 arctan(2/(F_2 √5)) - arctan(2/(F_6 √5))",
        lambda: combine([(2, arctan_inv_lucas(1)), (-2, _ad(2)), (-1, _ad(6))]),
    ),
    "len2": (
        "Li_1(1/α^2) + Li_1(-1/α)",
        lambda: combine([(1, li1_expansion(2, 1)), (1, li1_expansion(1, 1, negated=True))]),
    ),
    "len12": (
        "log F_3 - log 2",
        lambda: combine([(1, log_fib(3)), (-1, build_via_li1("Log2Alt"))]),
    ),
    "len10": (
        "log F_5 - log 5",
        lambda: combine([(1, log_fib(5)), (-1, build_via_li1("Log5Alt"))]),
    ),
    "len5": ("Σ (2cos(2π/5))^k cos(2πk/5)/k", None),
}


@lru_cache(maxsize=None)
def zero_relation(name: str) -> ZeroRelation:
    if name.startswith("zero/"):
        name = name[len("zero/") :]
    if name not in ZERO_VECTORS:
        raise UnknownEntryError(
            f"unknown zero relation {name!r}; known: {', '.join(ZERO_RELATION_NAMES)}"
        )
    lit = ZERO_VECTORS[name]
    literal = CatalogEntry(f"zero/{name}", lit.tag, literal_expansion(lit), Provenance.PAPER_LITERAL)
    relation, build = _ZERO_DERIVATIONS[name]
    derived = None
    if build is not None:
        derived = CatalogEntry(f"zero/{name}/derived", lit.tag, build(), Provenance.DERIVED)
    return ZeroRelation(name, literal, derived, relation)


def list_zero_relations() -> list[ZeroRelation]:
    return [zero_relation(n) for n in ZERO_RELATION_NAMES]


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Family:
    key: str
    min_r: int
    build: Callable[[int], CatalogEntry]
    description: str


def _generated(name: str, tag: ConstantTag, E: PExpansion) -> CatalogEntry:
    return CatalogEntry(name, tag, E, Provenance.THEOREM_FORMULA)


def _check_atan_f(r: int) -> None:
    _need_positive(r)
    if r == 1:
        raise DomainError("arctan(1/F_r) needs r >= 2 (F_1 = F_2; use atanF/2)")


FAMILIES: dict[str, Family] = {
    "logF": Family(
        "logF", 1,
        lambda r: _generated(f"logF/{r}", ConstantTag(TagKind.LOG_FIB, r), log_fib(r)),
        "log F_r",
    ),
    "logL": Family(
        "logL", 1,
        lambda r: _generated(f"logL/{r}", ConstantTag(TagKind.LOG_LUCAS, r), log_lucas(r)),
        "log L_r",
    ),
    "atanF": Family(
        "atanF", 2,
        lambda r: _generated(f"atanF/{r}", ConstantTag(TagKind.ARCTAN_INV_FIB, r), arctan_inv_fib(r)),
        "arctan(1/F_r)",
    ),
    "atanL": Family(
        "atanL", 1,
        lambda r: _generated(
            f"atanL/{r}", ConstantTag(TagKind.ARCTAN_INV_LUCAS, r), arctan_inv_lucas(r)
        ),
        "arctan(1/L_r)",
    ),
    "atan12": Family("atan12", 1, arctan_family12, "length-12 arctan family"),
    "atan2L": Family("atan2L", 1, arctan_double, "doubled arctan family"),
    "atanA": Family(
        "atanA", 1,
        lambda r: _generated(
            f"atanA/{r}", ConstantTag(TagKind.ARCTAN_INV_ALPHA_POW, r), arctan_inv_alpha_pow(r)
        ),
        "arctan(α^-r)",
    ),
    "li1.logF": Family(
        "li1.logF", 1,
        lambda r: CatalogEntry(
            f"li1.logF/{r}", ConstantTag(TagKind.LOG_FIB, r), build_via_li1("LogFib", r),
            Provenance.DERIVED,
        ),
        "log F_r from Li_1 terms",
    ),
    "li1.logL": Family(
        "li1.logL", 1,
        lambda r: CatalogEntry(
            f"li1.logL/{r}", ConstantTag(TagKind.LOG_LUCAS, r), build_via_li1("LogLucas", r),
            Provenance.DERIVED,
        ),
        "log L_r from Li_1 terms",
    ),
}


def _derived(name: str, kind: TagKind, E: PExpansion) -> CatalogEntry:
    return CatalogEntry(name, ConstantTag(kind), E, Provenance.DERIVED)


CONSTANTS: dict[str, Callable[[], CatalogEntry]] = {
    "logAlpha": lambda: _derived("logAlpha", TagKind.LOG_ALPHA, log_alpha()),
    "logAlpha.v1": lambda: _derived("logAlpha.v1", TagKind.LOG_ALPHA, build_via_li1("LogAlphaV1")),
    "logAlpha.v2": lambda: _derived("logAlpha.v2", TagKind.LOG_ALPHA, build_via_li1("LogAlphaV2")),
    "logSqrt5": lambda: _derived("logSqrt5", TagKind.LOG_SQRT5, log_sqrt5()),
    "log2": lambda: _derived("log2", TagKind.LOG2, build_via_li1("Log2Alt")),
    "log5": lambda: _derived("log5", TagKind.LOG5, build_via_li1("Log5Alt")),
}

_NAME_RE = re.compile(r"^(?P<family>[A-Za-z0-9.]+)/(?P<r>-?\d+)$")


@lru_cache(maxsize=1024)
def get_entry(name: str) -> CatalogEntry:
    """Resolve a catalog name such as ``logF/3``, ``log2`` or ``zero/thm4.1``."""
    if name in CONSTANTS:
        return CONSTANTS[name]()
    if name.startswith("zero/"):
        rest = name[len("zero/") :]
        if rest.endswith("/derived"):
            rel = zero_relation(rest[: -len("/derived")])
            if rel.derived is None:
                raise UnknownEntryError(f"zero relation {rel.name!r} has no derived form")
            return rel.derived
        return zero_relation(rest).literal
    m = _NAME_RE.match(name)
    if not m or m.group("family") not in FAMILIES:
        raise UnknownEntryError(f"unknown catalog entry {name!r}")
    fam = FAMILIES[m.group("family")]
    r = int(m.group("r"))
    if fam.key == "atanF":
        _check_atan_f(r)
    else:
        _need_positive(r)
    return fam.build(r)


def list_catalog(rmax: int = 10) -> list[CatalogEntry]:
    """Every entry with parameter ``r <= rmax``, sorted by name."""
    names = list(CONSTANTS)
    for key, fam in FAMILIES.items():
        names.extend(f"{key}/{r}" for r in range(fam.min_r, rmax + 1))
    for rel in ZERO_RELATION_NAMES:
        names.append(f"zero/{rel}")
        if _ZERO_DERIVATIONS[rel][1] is not None:
            names.append(f"zero/{rel}/derived")
    return [get_entry(n) for n in sorted(names)]
