from __future__ import annotations

import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from goldenbbp import catalog
from goldenbbp.cli import LinearExpr, parse_expr, run, verify_entry
from goldenbbp.catalog import CatalogEntry, get_entry
from goldenbbp.pseries import ParseError, PExpansion, deserialize


def call(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_parse_expr_examples():
    assert parse_expr("2*logF(3) - logL(3)") == LinearExpr(((Fraction(2), "logF/3"), (Fraction(-1), "logL/3")))
    assert parse_expr("logF(1)").terms == ((Fraction(1), "logF/1"),)
    assert parse_expr("  -1/2 * log2+atan2L( 2 )").terms == (
        (Fraction(-1, 2), "log2"),
        (Fraction(1), "atan2L/2"),
    )
    assert parse_expr("atanA(2)").terms == ((Fraction(1), "atanA/2"),)
    assert parse_expr("zero(1) + 3*zero").terms == ((1, "zero/thm4.1"), (3, "zero"))


@pytest.mark.parametrize(
    "text, offset",
    [
        ("2*logF(3", 8),
        ("2*logF(0)", 7),
        ("2*foo(3)", 2),
        ("logF", 4),
        ("1/0*log2", 2),
        ("log2 log5", 5),
        ("zero(10)", 5),
        ("", 0),
    ],
)
def test_parse_expr_errors(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_expr(text)
    assert exc.value.pos == offset


def test_parse_offsets_are_bytes():
    with pytest.raises(ParseError) as exc:
        parse_expr("logF(3) + é")
    assert exc.value.pos == len("logF(3) + ".encode())


def test_gen_outputs():
    code, out = call("gen", "logF/3")
    assert code == 0
    assert out.strip() == "log F_3 = P(1, α^12, 6, (β^2, 3β^4, 4β^6, 3β^8, β^10, 0))"
    assert call("gen", "logF/3", "--pnotation") == (code, out)


def test_gen_json_round_trips():
    for name in ("logF/5", "atanL/1", "atan12/3", "zero/thm4.4", "log2"):
        code, out = call("gen", name, "--json")
        assert code == 0
        e = get_entry(name)
        assert deserialize(out) == (e.expansion, e.tag)


def test_gen_rejects_r_zero(capsys):
    code, _ = call("gen", "logF/0")
    assert code == 2
    assert "r ≠ 0 required" in capsys.readouterr().err


def test_usage_errors():
    assert call("gen", "nothing/3")[0] == 2
    assert call("eval", "logF/3")[0] == 2  # missing --digits
    assert call("eval", "logF/3", "--digits", "0")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("combine", "2*logF(3")[0] == 2


def test_eval_text_and_json():
    code, out = call("eval", "logF/3", "--digits", "30")
    assert code == 0 and "0.693147180559945309417232121458" in out
    code, out = call("eval", "log5", "--digits", "20", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["midpoint"] == "1.60943791243410037460"
    lo, hi, mid = Fraction(doc["lo"]), Fraction(doc["hi"]), Fraction(doc["midpoint"])
    assert lo <= hi and abs(mid - (lo + hi) / 2) <= Fraction(1, 10**20)
    assert doc["terms"] > 0


def test_verify_reports():
    code, out = call("verify", "logF/3", "--digits", "100")
    assert code == 0
    assert out.startswith("logF/3: pass, agrees to") and "log F_3" in out
    code, out = call("verify", "atanF/4", "--digits", "40", "--json")
    rep = json.loads(out)
    assert code == 0
    assert list(rep) == ["name", "digits", "status", "agree_digits", "midpoint"]
    assert rep["status"] == "pass" and rep["agree_digits"] >= 35


def test_verify_all_and_mutation(monkeypatch):
    code, out = call("verify-all", "--rmax", "8", "--digits", "60")
    assert code == 0, out
    assert out.strip().endswith("passed")

    original = catalog.log_fib

    def corrupted(r):
        E = original(r)
        if r != 5:
            return E
        coeffs = list(E.coeffs)
        coeffs[4] = coeffs[4] * 2
        return PExpansion(E.degree, E.base_exp, E.length, tuple(coeffs))

    def clear():
        catalog.get_entry.cache_clear()
        catalog.zero_relation.cache_clear()

    monkeypatch.setattr(catalog, "log_fib", corrupted)
    clear()
    try:
        code, out = call("verify-all", "--rmax", "8", "--digits", "60")
        assert code == 1
        report = json.loads(out.strip().splitlines()[-1])
        # the corrupted generator also feeds the derived length-10 zero relation
        assert [f["name"] for f in report["failures"]] == ["logF/5", "zero/len10/derived"]
    finally:
        monkeypatch.undo()
        clear()


def test_verify_all_json_is_sorted():
    code, out = call("verify-all", "--rmax", "3", "--digits", "30", "--json")
    reports = json.loads(out)
    names = [r["name"] for r in reports]
    assert code == 0 and names == sorted(names)


def test_verify_entry_detects_sign_flip():
    e = get_entry("logF/3")
    coeffs = list(e.expansion.coeffs)
    coeffs[1] = -coeffs[1]
    bad = CatalogEntry(e.name, e.tag, PExpansion.of(12, coeffs), e.provenance)
    assert verify_entry(bad, 60)["status"] == "fail"
    assert verify_entry(e, 60)["status"] == "pass"


def test_zeros_command():
    code, out = call("zeros", "--digits", "60")
    assert code == 0
    assert out.count(": pass") == 9


def test_combine_command():
    code, out = call("combine", "2*logF(3) - logL(3)", "--digits", "60")
    assert code == 0
    assert "P(1, α^12, 6, (-β^2, 3β^4, 8β^6, 3β^8, -β^10, 0))" in out
    assert "proportional to zero/thm4.1" in out
    mid = out.split("value ≈ ")[1].split()[0]
    assert Fraction(mid) == 0


def test_phidigits_command(capsys):
    code, out = call("phidigits", "atanL/1", "--digits", "40", "--count", "20")
    assert code == 0 and "11" not in out.strip()
    code, _ = call("phidigits", "atanL/1", "--digits", "5", "--count", "60")
    assert code == 1
    assert "undecidable" in capsys.readouterr().err


def test_catalog_command():
    code, out = call("catalog", "--rmax", "3")
    assert code == 0 and "logF/3\tlog F_3\tTheoremFormula" in out
    code, out = call("catalog", "--rmax", "2", "--json")
    lines = out.strip().splitlines()
    index = json.loads(lines[0])["index"]
    assert len(index) == len(lines) - 1
    assert deserialize(lines[1])[1].kind.value == index[0]["tag"]["kind"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "goldenbbp", "gen", "logL/3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "P(1, α^6, 3, (3β^2, 3β^4, 0))" in proc.stdout
