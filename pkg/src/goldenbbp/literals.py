"""Published coefficient vectors, transcribed verbatim as P-notation text.

Each entry maps a label to ``(tag, text, factor)``; ``factor`` is an optional
coefficient the whole expansion is multiplied by (the ``log L_4`` vector is
printed with one pulled out).  Labels reuse catalog naming where a generator
produces the same constant.

The three ``atan12/*:printed`` vectors carry the base exactly as printed
(``α^12``) even though the generating family uses ``α^(12 r)``; the numeric
tests show which base is right.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .pseries import ConstantTag, PExpansion, TagKind, parse_coefficient, parse_pnotation, scale

__all__ = ["Literal", "PRINTED_VECTORS", "ZERO_VECTORS", "literal_expansion"]


class Literal(NamedTuple):
    tag: ConstantTag
    text: str
    factor: Optional[str] = None


def _t(kind: TagKind, r: Optional[int] = None, sign: int = 1) -> ConstantTag:
    return ConstantTag(kind, r, sign=sign)


PRINTED_VECTORS: dict[str, Literal] = {
    # logarithms of Fibonacci numbers
    "logF/3": Literal(_t(TagKind.LOG_FIB, 3), "P(1,α^12,6,(β^2,3β^4,4β^6,3β^8,β^10,0))"),
    "logF/5": Literal(
        _t(TagKind.LOG_FIB, 5),
        "P(1,α^20,10,(3β^2,5β^4,3β^6,5β^8,8β^10,5β^12,3β^14,5β^16,3β^18,0))",
    ),
    "logF/4": Literal(_t(TagKind.LOG_FIB, 4), "P(1,α^16,8,(2β^2,4β^4,2β^6,0,2β^10,4β^12,2β^14,0))"),
    "logF/8": Literal(
        _t(TagKind.LOG_FIB, 8),
        "P(1,α^32,16,(6β^2,8β^4,6β^6,8β^8,6β^10,8β^12,6β^14,0,"
        "6β^18,8β^20,6β^22,8β^24,6β^26,8β^28,6β^30,0))",
    ),
    "logF/12": Literal(
        _t(TagKind.LOG_FIB, 12),
        "P(1,α^48,24,(10β^2,12β^4,10β^6,12β^8,10β^10,12β^12,10β^14,12β^16,10β^18,12β^20,"
        "10β^22,0,10β^26,12β^28,10β^30,12β^32,10β^34,12β^36,10β^38,12β^40,10β^42,12β^44,"
        "10β^46,0))",
    ),
    # logarithms of Lucas numbers
    "logL/2": Literal(_t(TagKind.LOG_LUCAS, 2), "P(1,α^8,4,(2β^2,4β^4,2β^6,0))"),
    "logL/3": Literal(_t(TagKind.LOG_LUCAS, 3), "P(1,α^6,3,(3β^2,3β^4,0))"),
    "logL/3:base12": Literal(_t(TagKind.LOG_LUCAS, 3), "P(1,α^12,6,(3β^2,3β^4,0,3β^8,3β^10,0))"),
    "logL/4": Literal(
        _t(TagKind.LOG_LUCAS, 4), "P(1,α^16,8,(1,β^2,β^4,2β^6,β^8,β^10,β^12,0))", factor="4β^2"
    ),
    "logL/6": Literal(
        _t(TagKind.LOG_LUCAS, 6),
        "P(1,α^24,12,(6β^2,6β^4,6β^6,6β^8,6β^10,12β^12,6β^14,6β^16,6β^18,6β^20,6β^22,0))",
    ),
    # inverse tangents of Fibonacci numbers
    "atanF/2": Literal(
        _t(TagKind.ARCTAN_INV_FIB, 2), "P(1,α^12,12,(-β,0,-2β^3,0,-β^5,0,β^7,0,2β^9,0,β^11,0))"
    ),
    "atanF/3": Literal(
        _t(TagKind.ARCTAN_INV_FIB, 3),
        "P(1,α^20,20,(-β,0,β^3,0,4β^5,0,β^7,0,-β^9,0,β^11,0,-β^13,0,-4β^15,0,-β^17,0,β^19,0))",
    ),
    "atanF/4": Literal(
        _t(TagKind.ARCTAN_INV_FIB, 4),
        "P(1,α^60,60,(0,0,-3β^3,0,-5β^5,0,0,0,3β^9,0,0,0,0,0,2β^15,0,0,0,0,0,3β^21,0,0,0,"
        "-5β^25,0,-3β^27,0,0,0,0,0,3β^33,0,5β^35,0,0,0,-3β^39,0,0,0,0,0,-2β^45,0,0,0,0,0,"
        "-3β^51,0,0,0,5β^55,0,3β^57,0,0,0))",
    ),
    "atanF/5": Literal(
        _t(TagKind.ARCTAN_INV_FIB, 5),
        "P(1,α^84,84,(0,0,-3β^3,0,0,0,7β^7,0,3β^9,0,0,0,0,0,-3β^15,0,0,0,0,0,-4β^21,0,0,0,"
        "0,0,-3β^27,0,0,0,0,0,3β^33,0,7β^35,0,0,0,-3β^39,0,0,0,0,0,3β^45,0,0,0,-7β^49,0,"
        "-3β^51,0,0,0,0,0,3β^57,0,0,0,0,0,4β^63,0,0,0,0,0,3β^69,0,0,0,0,0,-3β^75,0,-7β^77,"
        "0,0,0,3β^81,0,0,0))",
    ),
    "atanF/7": Literal(
        _t(TagKind.ARCTAN_INV_FIB, 7),
        "P(1,α^180,180,(0,0,0,0,-5β^5,0,0,0,9β^9,0,0,0,0,0,5β^15,0,0,0,0,0,0,0,0,0,-5β^25,"
        "0,-9β^27,0,0,0,0,0,0,0,5β^35,0,0,0,0,0,0,0,0,0,4β^45,0,0,0,0,0,0,0,0,0,5β^55,0,0,"
        "0,0,0,0,0,-9β^63,0,-5β^65,0,0,0,0,0,0,0,0,0,5β^75,0,0,0,0,0,9β^81,0,0,0,-5β^85,0,"
        "0,0,0,0,0,0,0,0,5β^95,0,0,0,-9β^99,0,0,0,0,0,-5β^105,0,0,0,0,0,0,0,0,0,5β^115,0,"
        "9β^117,0,0,0,0,0,0,0,-5β^125,0,0,0,0,0,0,0,0,0,-4β^135,0,0,0,0,0,0,0,0,0,-5β^145,"
        "0,0,0,0,0,0,0,9β^153,0,5β^155,0,0,0,0,0,0,0,0,0,-5β^165,0,0,0,0,0,-9β^171,0,0,0,"
        "5β^175,0,0,0,0,0))",
    ),
    # inverse tangents of Lucas numbers
    "atanL/2": Literal(
        _t(TagKind.ARCTAN_INV_LUCAS, 2), "(1,α^12,12,(-β,0,4β^3,0,-β^5,0,β^7,0,-4β^9,0,β^11,0))"
    ),
    "atanL/4": Literal(
        _t(TagKind.ARCTAN_INV_LUCAS, 4),
        "(1,α^60,60,(0,0,-3β^3,0,5β^5,0,0,0,3β^9,0,0,0,0,0,-8β^15,0,0,0,0,0,3β^21,0,0,0,"
        "5β^25,0,-3β^27,0,0,0,0,0,3β^33,0,-5β^35,0,0,0,-3β^39,0,0,0,0,0,8β^45,0,0,0,0,0,"
        "-3β^51,0,0,0,-5β^55,0,3β^57,0,0,0))",
    ),
    "atanL/1": Literal(
        _t(TagKind.PI4), "P(1,α^12,12,(-β,0,-2β^3,0,-β^5,0,β^7,0,2β^9,0,β^11,0))"
    ),
    # length-12 family as printed (base exponent 12 for every r)
    "atan12/3:printed": Literal(
        _t(TagKind.ARCTAN_INV_LUCAS, 3),
        "P(1,α^12,12,(-β^3,0,-2β^9,0,-β^15,0,β^21,0,2β^27,0,β^33,0))",
    ),
    "atan12/2:printed": Literal(
        _t(TagKind.ARCTAN_INV_FIB_SQRT5, 2),
        "P(1,α^12,12,(β^2,0,2β^6,0,β^10,0,-β^14,0,-2β^18,0,-β^22,0))",
    ),
    "atan12/4:printed": Literal(
        _t(TagKind.ARCTAN_INV_FIB_SQRT5, 4),
        "P(1,α^12,12,(β^4,0,2β^12,0,β^20,0,-β^28,0,-2β^36,0,-β^44,0))",
    ),
    # doubled inverse tangents
    "atan2L/3": Literal(_t(TagKind.ARCTAN_2_OVER_LUCAS, 3), "P(1,α^12,4,(-2β^3,0,2β^9,0))"),
    "atan2L/2": Literal(_t(TagKind.ARCTAN_2_OVER_FIB_SQRT5, 2), "P(1,α^8,4,(2β^2,0,-2β^6,0))"),
    # other constants
    "logAlpha.v1": Literal(_t(TagKind.LOG_ALPHA), "P(1,α,2,(0,-β))"),
    "logAlpha.v2": Literal(_t(TagKind.LOG_ALPHA), "P(1,α^2,2,(0,2β^2))"),
    "log2": Literal(_t(TagKind.LOG2), "P(1,α^3,3,(-β,β^2,2β^3))"),
    "log5": Literal(_t(TagKind.LOG5), "P(1,α^4,2,(4β^2,0))"),
}


def _z(name: str) -> ConstantTag:
    return ConstantTag(TagKind.ZERO, name=name)


ZERO_VECTORS: dict[str, Literal] = {
    "thm4.1": Literal(_z("thm4.1"), "P(1,α^12,6,(1,-3β^2,-8β^4,-3β^6,β^8,0))"),
    "thm4.2": Literal(
        _z("thm4.2"),
        "P(1,α^48,24,(1,-5β^2,-2β^4,3β^6,β^8,4β^10,β^12,3β^14,-2β^16,-5β^18,β^20,0,β^24,"
        "-5β^26,-2β^28,3β^30,β^32,4β^34,β^36,3β^38,-2β^40,-5β^42,β^44,0))",
    ),
    "thm4.3": Literal(
        _z("thm4.3"),
        "P(1,α^48,24,(1,-4β^2,-5β^4,0,β^8,2β^10,β^12,0,-5β^16,-4β^18,β^20,0,β^24,-4β^26,"
        "-5β^28,0,β^32,2β^34,β^36,0,-5β^40,-4β^42,β^44,0))",
    ),
    # the printed source has a stray "b^12" at position 13, read as β^12
    "thm4.4": Literal(
        _z("thm4.4"),
        "P(1,α^60,60,(1,0,-7β^2,0,-4β^4,0,-β^6,0,7β^8,0,-β^10,0,β^12,0,-2β^14,0,β^16,0,"
        "-β^18,0,7β^20,0,-β^22,0,-4β^24,0,-7β^26,0,β^28,0,-β^30,0,7β^32,0,4β^34,0,β^36,0,"
        "-7β^38,0,β^40,0,-β^42,0,2β^44,0,-β^46,0,β^48,0,-7β^50,0,β^52,0,4β^54,0,7β^56,0,"
        "-β^58,0))",
    ),
    "thm4.5": Literal(
        _z("thm4.5"),
        "P(1,α^24,24,(1,4β,2β^2,0,β^4,2β^5,-β^6,0,-2β^8,4β^9,-β^10,0,β^12,-4β^13,2β^14,0,"
        "β^16,-2β^17,-β^18,0,-2β^20,-4β^21,-β^22,0))",
    ),
    "len2": Literal(_z("len2"), "P(1,α^2,2,(1,3β))"),
    "len12": Literal(
        _z("len12"),
        "P(1,α^12,12,(1,β,-2β^2,5β^3,β^4,10β^5,β^6,5β^7,-2β^8,β^9,β^10,2β^11))",
    ),
    "len10": Literal(
        _z("len10"), "P(1,α^20,10,(1,-5β^2,β^4,-5β^6,-4β^8,-5β^10,β^12,-5β^14,β^16,0))"
    ),
    "len5": Literal(_z("len5"), "P(1,α^5,5,(β,1,-β,-β^4,-2β^4))"),
}


def literal_expansion(lit: Literal) -> PExpansion:
    E = parse_pnotation(lit.text)
    if lit.factor is not None:
        E = scale(E, parse_coefficient(lit.factor))
    return E
