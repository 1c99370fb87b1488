from __future__ import annotations

from fractions import Fraction

import pytest

from goldenbbp.bignum import PrecisionSpec, agree_digits, eval_expansion, oracle_arctan, oracle_ln, oracle_value
from goldenbbp.catalog import (
    DomainError,
    Provenance,
    UnknownEntryError,
    ZERO_RELATION_NAMES,
    arctan_double,
    arctan_family12,
    arctan_inv_alpha_pow,
    arctan_inv_fib,
    arctan_inv_lucas,
    build_via_li1,
    get_entry,
    li1_expansion,
    list_catalog,
    list_zero_relations,
    log_fib,
    log_lucas,
    zero_relation,
)
from goldenbbp.exactfield import ONE, Q5Number, alpha_pow, beta_pow, fib_lucas
from goldenbbp.literals import PRINTED_VECTORS, literal_expansion
from goldenbbp.pseries import PExpansion, TagKind, common_form, is_scalar_multiple, rebase, scale

P50 = PrecisionSpec(50)
P60 = PrecisionSpec(60)


def generator_for(label: str) -> PExpansion:
    """The generator output a printed vector should reproduce."""
    if label == "logL/3:base12":
        return rebase(log_lucas(3), 2)
    if label == "atan2L/3":
        # printed as arctan(1/2) = -(doubled family at r = 3)
        return -arctan_double(3).expansion
    return get_entry(label).expansion


@pytest.mark.parametrize("label", [k for k in PRINTED_VECTORS if not k.endswith(":printed")])
def test_golden_vector(label):
    assert literal_expansion(PRINTED_VECTORS[label]) == generator_for(label)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_family12_printed_examples_use_base_twelve(r):
    printed = literal_expansion(PRINTED_VECTORS[f"atan12/{r}:printed"])
    entry = arctan_family12(r)
    # the coefficient vectors agree (up to the tag sign); only the base exponent differs
    sign = entry.tag.sign * PRINTED_VECTORS[f"atan12/{r}:printed"].tag.sign
    assert printed.coeffs == scale(entry.expansion, sign).coeffs
    assert printed.base_exp == 12 and entry.expansion.base_exp == 12 * r
    target = oracle_value(PRINTED_VECTORS[f"atan12/{r}:printed"].tag, P50)
    assert agree_digits(eval_expansion(entry.expansion, P50), oracle_value(entry.tag, P50), 50) >= 45
    assert not eval_expansion(printed, P50).intersects(target)


def test_family12_r1_printed_base_is_consistent():
    E = arctan_family12(1).expansion
    assert E.base_exp == 12
    assert -E == literal_expansion(PRINTED_VECTORS["atanL/1"])


def test_log_fib_examples():
    assert log_fib(1).is_zero_vector() and log_fib(1).base_exp == 4
    assert log_lucas(1).is_zero_vector()
    with pytest.raises(DomainError, match="r ≠ 0 required"):
        log_fib(0)
    with pytest.raises(DomainError):
        log_lucas(-2)


def test_pi_vector_two_ways():
    assert arctan_inv_fib(2) == -arctan_family12(1).expansion
    assert arctan_inv_lucas(1) == arctan_inv_fib(2)


def _sparse_family_vector(r: int, kind: str) -> list[Q5Number]:
    """Sparse inverse-tangent families, accumulated position by position."""
    if kind == "F_odd":
        lo, hi, n = r - 2, r + 2, 4 * (r * r - 4)
        signs = (-1, 1, 1, -1)
    elif kind == "F_even":
        lo, hi, n = r - 1, r + 1, 4 * (r * r - 1)
        signs = (-1, 1, -1, 1)
    else:  # L_even
        lo, hi, n = r - 1, r + 1, 4 * (r * r - 1)
        signs = (-1, 1, 1, -1)
    v = [Q5Number(0)] * n
    for j in range(1, hi + 1):
        for off, s in ((3, signs[0]), (1, signs[1])):
            pos = lo * (4 * j - off)
            v[pos - 1] = v[pos - 1] + beta_pow(pos) * (s * lo)
    for j in range(1, lo + 1):
        for off, s in ((3, signs[2]), (1, signs[3])):
            pos = hi * (4 * j - off)
            v[pos - 1] = v[pos - 1] + beta_pow(pos) * (s * hi)
    return v


def test_arctan_generators_match_sparse_formulas():
    for r in (3, 5, 7, 9):
        assert list(arctan_inv_fib(r).coeffs) == _sparse_family_vector(r, "F_odd")
    for r in (2, 4, 6, 8):
        assert list(arctan_inv_fib(r).coeffs) == _sparse_family_vector(r, "F_even")
        assert list(arctan_inv_lucas(r).coeffs) == _sparse_family_vector(r, "L_even")


def test_merged_closed_forms():
    for r in (3, 5, 7):
        a = arctan_inv_fib(r).coeffs
        q = r * r - 4
        assert a[q - 1] == beta_pow(q) * (4 * (-1) ** ((r + 1) // 2))
        assert a[3 * q - 1] == beta_pow(3 * q) * (4 * (-1) ** ((r - 1) // 2))
    for r in (2, 4, 6):
        q = r * r - 1
        a = arctan_inv_fib(r).coeffs
        assert a[q - 1] == beta_pow(q) * (2 * (-1) ** (r // 2))
        assert a[3 * q - 1] == beta_pow(3 * q) * (2 * (-1) ** ((r + 2) // 2))
        a = arctan_inv_lucas(r).coeffs
        assert a[q - 1] == beta_pow(q) * (2 * r * (-1) ** ((r + 2) // 2))
        assert a[3 * q - 1] == beta_pow(3 * q) * (2 * r * (-1) ** (r // 2))


def test_arctan_domains():
    with pytest.raises(DomainError):
        get_entry("atanF/1")
    with pytest.raises(DomainError):
        get_entry("atanF/0")
    with pytest.raises(DomainError):
        arctan_inv_lucas(0)


def test_arctan_double_is_twice_alpha_power():
    for r in range(1, 7):
        sign = -1 if r % 2 else 1
        # (-beta)^r = -beta^r for odd r, which is where the negative tag comes from
        assert arctan_double(r).expansion == scale(arctan_inv_alpha_pow(r), 2 * sign)
        assert arctan_double(r).tag.sign == sign


def test_li1_examples():
    assert li1_expansion(2, 1) == PExpansion.of(2, [beta_pow(2)])
    two_log_alpha = oracle_value(get_entry("logAlpha").tag, P50) * 2
    assert eval_expansion(li1_expansion(1, 2), P50).intersects(two_log_alpha)
    # Li_1(-1/alpha^2) = -log(1 + alpha^-2) = log alpha - log sqrt5
    v = oracle_value(get_entry("logAlpha").tag, P50) - oracle_ln(5, P50).divide_int(2)
    assert agree_digits(eval_expansion(li1_expansion(2, 1, negated=True), P50), v, 50) >= 45


def test_arctan_alpha_power_values():
    v = eval_expansion(arctan_inv_alpha_pow(2), P50)
    assert v.format_midpoint(9) == "0.364863828"
    assert agree_digits(v, oracle_arctan(alpha_pow(-2), P50), 50) >= 45
    for t in range(1, 6):
        assert eval_expansion(arctan_inv_alpha_pow(t), P50).lower() > 0


def test_li1_composition_matches_closed_forms():
    for r in range(1, 31):
        a, b = common_form([build_via_li1("LogFib", r), log_fib(r)])
        assert a == b, r
        a, b = common_form([build_via_li1("LogLucas", r), log_lucas(r)])
        assert a == b, r
    assert build_via_li1("LogAlphaV1") == literal_expansion(PRINTED_VECTORS["logAlpha.v1"])
    assert build_via_li1("Log5Alt") == literal_expansion(PRINTED_VECTORS["log5"])


def test_zero_relations_are_proportional():
    expected = {
        "thm4.1": -alpha_pow(2),
        "len10": -alpha_pow(2),
    }
    for rel in list_zero_relations():
        assert rel.literal.provenance is Provenance.PAPER_LITERAL
        if rel.name == "len5":
            assert rel.derived is None
            continue
        assert rel.derived.provenance is Provenance.DERIVED
        c = rel.ratio
        assert c is not None, rel.name
        if rel.name in expected:
            assert c == expected[rel.name]


def test_len5_vector_from_cosines():
    # 2cos(2 pi/5) = -beta and 2cos(4 pi/5) = -alpha, so the length-5 block
    # of sum (-beta)^k cos(2 pi k/5)/k has coefficients (-beta)^j cos(2 pi j/5)
    alpha = alpha_pow(1)
    beta = beta_pow(1)
    cos = [ONE, -beta / 2, -alpha / 2, -alpha / 2, -beta / 2]
    coeffs = [(-beta) ** j * cos[j % 5] for j in range(1, 6)]
    derived = PExpansion.of(5, coeffs)
    assert is_scalar_multiple(zero_relation("len5").literal.expansion, derived) is not None


def test_unknown_names():
    with pytest.raises(UnknownEntryError):
        get_entry("logQ/3")
    with pytest.raises(UnknownEntryError):
        zero_relation("thm9.9")
    assert len(ZERO_RELATION_NAMES) == 9


def test_catalog_listing_sorted_and_unique():
    entries = list_catalog(6)
    names = [e.name for e in entries]
    assert names == sorted(names) and len(set(names)) == len(names)
    assert {"logF/6", "atanL/6", "zero/thm4.1", "zero/len5", "log2"} <= set(names)


def test_numerical_truth_r_le_10():
    for e in list_catalog(10):
        s = eval_expansion(e.expansion, P60)
        if e.tag.kind is TagKind.ZERO:
            assert s.contains(0) and abs(s.midpoint()) <= Fraction(1, 10**55), e.name
        else:
            assert s.intersects(oracle_value(e.tag, P60)), e.name


def _pair_rhs(m: int, r: int, plus: bool) -> Q5Number:
    Fm, Lm = fib_lucas(m)
    Fr, Lr = fib_lucas(r)
    sqrt5 = Q5Number(0, 1)
    table_minus = {
        (1, 1): Q5Number(Lm) / (sqrt5 * Fr),
        (1, 0): Q5Number(Fraction(Lm, Lr)),
        (0, 1): Q5Number(Fraction(Fm, Fr)),
        (0, 0): sqrt5 * Fraction(Fm, Lr),
    }
    table_plus = {
        (1, 1): sqrt5 * Fraction(Fm, Lr),
        (1, 0): Q5Number(Fraction(Fm, Fr)),
        (0, 1): Q5Number(Fraction(Lm, Lr)),
        (0, 0): Q5Number(Lm) / (sqrt5 * Fr),
    }
    return (table_plus if plus else table_minus)[(m % 2, r % 2)]


def test_arctan_power_identities():
    for m in range(1, 9):
        for r in range(1, 9):
            a = oracle_arctan(alpha_pow(m - r), P50)
            b = oracle_arctan(alpha_pow(-(r + m)), P50)
            assert (a - b).intersects(oracle_arctan(_pair_rhs(m, r, False), P50)), (m, r)
            assert (a + b).intersects(oracle_arctan(_pair_rhs(m, r, True), P50)), (m, r)
