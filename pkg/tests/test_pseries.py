from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from goldenbbp.bignum import PrecisionSpec, eval_expansion
from goldenbbp.catalog import get_entry, list_catalog, log_fib, log_lucas, build_via_li1
from goldenbbp.exactfield import ALPHA, BETA, ONE, Q5Number, alpha_pow, beta_pow
from goldenbbp.pseries import (
    ConstantTag,
    ParseError,
    PExpansion,
    TagKind,
    ValidationError,
    combine,
    deserialize,
    is_scalar_multiple,
    parse_coefficient,
    parse_pnotation,
    rebase,
    render_coefficient,
    render_pnotation,
    scale,
    serialize,
    stretch,
)

P60 = PrecisionSpec(60)
P50 = PrecisionSpec(50)


def b(k: int, q=1) -> Q5Number:
    return beta_pow(k) * q


def test_rebase_log_lucas_3():
    assert rebase(log_lucas(3), 2) == PExpansion.of(12, [b(2, 3), b(4, 3), 0, b(8, 3), b(10, 3), 0])
    assert rebase(log_lucas(3), 1) == log_lucas(3)


def test_rebase_preserves_value():
    E = PExpansion.of(2, [0, b(2, 2)])
    assert eval_expansion(rebase(E, 3), P50).intersects(eval_expansion(E, P50))


def test_stretch_examples():
    assert stretch(PExpansion.of(4, [b(2, 4), 0]), 2) == PExpansion.of(4, [0, b(2, 8), 0, 0])
    assert stretch(PExpansion.of(2, [b(2)]), 2) == PExpansion.of(2, [0, b(2, 2)])
    E = log_fib(3)
    assert stretch(E, 1) == E


def test_stretch_rejects_higher_degree():
    E = PExpansion.of(2, [1, 1], degree=2)
    with pytest.raises(ValidationError):
        stretch(E, 2)
    with pytest.raises(ValidationError):
        combine([(1, E)])


def test_scale_examples():
    E = log_fib(3)
    assert scale(E, 1) == E
    assert scale(E, 0).is_zero_vector()
    derived = combine([(2, log_fib(3)), (-1, log_lucas(3))])
    printed = PExpansion.of(12, [1, b(2, -3), b(4, -8), b(6, -3), b(8), 0])
    assert scale(derived, -ALPHA * ALPHA) == printed


def test_combine_log_fib_lucas_3():
    got = combine([(2, log_fib(3)), (-1, log_lucas(3))])
    assert got == PExpansion.of(12, [b(2, -1), b(4, 3), b(6, 8), b(8, 3), b(10, -1), 0])
    assert combine([(1, log_fib(3))]) == log_fib(3)


def test_combine_length_ten_relation():
    got = combine([(1, log_fib(5)), (-1, build_via_li1("Log5Alt"))])
    printed = PExpansion.of(
        20, [1, b(2, -5), b(4), b(6, -5), b(8, -4), b(10, -5), b(12), b(14, -5), b(16), 0]
    )
    assert is_scalar_multiple(printed, got) == -alpha_pow(2)


def test_combine_rejects_mixed_degrees_and_empty():
    with pytest.raises(ValidationError):
        combine([(1, log_fib(3)), (1, PExpansion.of(1, [1], degree=2))])
    with pytest.raises(ValidationError):
        combine([])


def test_is_scalar_multiple():
    E = log_fib(4)
    assert is_scalar_multiple(E, E) == ONE
    assert is_scalar_multiple(E, scale(E, b(3))) == beta_pow(-3)
    assert is_scalar_multiple(E, -E) == -ONE
    assert is_scalar_multiple(log_fib(3), PExpansion.of(12, [1] * 6)) is None
    # zero positions must agree
    assert is_scalar_multiple(PExpansion.of(1, [1, 1]), PExpansion.of(1, [1, 0])) is None
    with pytest.raises(ValidationError):
        is_scalar_multiple(log_fib(3), log_fib(4))


def test_algebraic_laws_on_catalog():
    for e in list_catalog(4):
        E = e.expansion
        assert rebase(rebase(E, 2), 3) == rebase(E, 6)
        assert stretch(rebase(E, 2), 3) == rebase(stretch(E, 3), 2)
        if not E.is_zero_vector():
            for c in (Q5Number(Fraction(-2, 3)), BETA, Q5Number(1, 1)):
                assert is_scalar_multiple(scale(E, c), E) == c


def test_value_preservation():
    for e in list_catalog(3):
        if e.name.startswith("zero/"):
            continue
        E = e.expansion
        v = eval_expansion(E, P60)
        for m in (2, 3, 4):
            assert eval_expansion(rebase(E, m), P60).intersects(v), (e.name, m)
            assert eval_expansion(stretch(E, m), P60).intersects(v), (e.name, m)


def test_combine_linearity():
    pairs = [("logF/3", "atanL/2"), ("log5", "atan2L/2"), ("logL/4", "logAlpha")]
    for n1, n2 in pairs:
        E1, E2 = get_entry(n1).expansion, get_entry(n2).expansion
        c1, c2 = 3, -2
        v = eval_expansion(E1, P60) * c1 + eval_expansion(E2, P60) * c2
        assert eval_expansion(combine([(c1, E1), (c2, E2)]), P60).intersects(v)


def test_render_examples():
    assert render_pnotation(log_fib(3)) == "P(1, α^12, 6, (β^2, 3β^4, 4β^6, 3β^8, β^10, 0))"
    assert render_pnotation(log_lucas(2)) == "P(1, α^8, 4, (2β^2, 4β^4, 2β^6, 0))"
    assert render_pnotation(PExpansion.of(3, [0, 0])) == "P(1, α^3, 2, (0, 0))"
    assert render_coefficient(-BETA) == "-β"
    assert render_coefficient(b(3, Fraction(1, 2))) == "(1/2)β^3"
    assert render_coefficient(Q5Number(7)) == "7"


small_coeffs = st.one_of(
    st.builds(lambda q, k: beta_pow(k) * q, st.fractions(max_denominator=9), st.integers(0, 30)),
    st.builds(Q5Number, st.fractions(max_denominator=9), st.fractions(max_denominator=9)),
)
expansions = st.builds(
    lambda p, cs: PExpansion.of(p, cs), st.integers(1, 60), st.lists(small_coeffs, min_size=1, max_size=12)
)


@settings(max_examples=200)
@given(expansions)
def test_render_parse_round_trip(E):
    assert parse_pnotation(render_pnotation(E)) == E


@given(small_coeffs)
def test_coefficient_round_trip(c):
    assert parse_coefficient(render_coefficient(c)) == c


def test_parse_accepts_printed_forms():
    assert parse_pnotation("(1,α^12,4,(-2β^3,0,2β^9,0))") == PExpansion.of(12, [b(3, -2), 0, b(9, 2), 0])
    assert parse_pnotation("P(1,α,2,(0,-β))") == PExpansion.of(1, [0, -BETA])


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_pnotation("P(1, α^12, 6, (β^2, 3β^4")
    assert exc.value.pos == len("P(1, α^12, 6, (β^2, 3β^4")
    with pytest.raises(ParseError):
        parse_pnotation("P(1, α^3, 3, (1, 2))")


def test_serialize_round_trip_catalog():
    for e in list_catalog(5):
        text = serialize(e.expansion, e.tag)
        assert deserialize(text) == (e.expansion, e.tag)
        assert list(json.loads(text)) == ["version", "degree", "base_exp", "length", "tag", "coeffs"]


def test_serialize_is_canonical():
    tag = ConstantTag(TagKind.LOG2)
    E = PExpansion.of(3, [-BETA, b(2), b(3, 2)])
    assert serialize(E, tag) == (
        '{"version":1,"degree":1,"base_exp":3,"length":3,"tag":{"kind":"Log2","sign":1},'
        '"coeffs":[{"a":"-1/2","b":"1/2"},{"a":"3/2","b":"-1/2"},{"a":"4/1","b":"-2/1"}]}'
    )


def test_deserialize_errors():
    text = serialize(log_fib(3), ConstantTag(TagKind.LOG_FIB, 3))
    with pytest.raises(ParseError) as exc:
        deserialize(text[:40])
    assert exc.value.pos >= 0
    with pytest.raises(ValidationError):
        deserialize(text.replace('"a":"3/2"', '"a":"3/0"'))
    with pytest.raises(ValidationError):
        deserialize(text.replace('"version":1', '"version":2'))
    with pytest.raises(ValidationError):
        deserialize(text.replace('"length":6', '"length":5'))
    with pytest.raises(ValidationError):
        deserialize(text.replace('"LogFib"', '"LogPi"'))
