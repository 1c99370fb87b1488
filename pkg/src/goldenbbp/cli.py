"""Command-line front end: generate, evaluate, verify and combine expansions.

Catalog names use the registry form ``family/r`` (``logF/3``); expressions
given to ``combine`` use call form (``2*logF(3) - logL(3)``).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .bignum import (
    Enclosure,
    PrecisionSpec,
    UndecidableDigitError,
    agree_digits,
    eval_expansion,
    oracle_value,
    phi_digits,
    term_count,
)
from .catalog import (
    CatalogEntry,
    DomainError,
    UnknownEntryError,
    Provenance,
    ZERO_RELATION_NAMES,
    get_entry,
    list_catalog,
    list_zero_relations,
)
from .pseries import (
    ConstantTag,
    ParseError,
    PExpansion,
    TagKind,
    ValidationError,
    combine,
    common_form,
    is_scalar_multiple,
    render_pnotation,
    serialize,
    tag_to_dict,
)

__all__ = ["LinearExpr", "parse_expr", "verify_entry", "run", "main"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# names accepted in expressions, with and without a "(r)" argument
_CALL_NAMES = {"logF", "logL", "atanF", "atanL", "atan12", "atan2L", "atanA", "zero"}
_BARE_NAMES = {"logAlpha", "log2", "log5", "logSqrt5", "zero"}


@dataclass(frozen=True)
class LinearExpr:
    """``sum c_i * entry_i`` over catalog entries (registry names)."""

    terms: tuple[tuple[Fraction, str], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a linear expression needs at least one term")

    def expansions(self) -> list[tuple[Fraction, PExpansion]]:
        return [(c, _resolve(name).expansion) for c, name in self.terms]

    def __str__(self) -> str:
        parts = []
        for i, (c, name) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("-" + body if sign == "-" else body) if i == 0 else f" {sign} {body}")
        return "".join(parts)


ZERO_EXPANSION_NAME = "zero"


def _resolve(name: str) -> CatalogEntry:
    if name == ZERO_EXPANSION_NAME:
        return CatalogEntry(
            "zero", ConstantTag(TagKind.ZERO, name="trivial"), PExpansion.of(1, [0]), Provenance.DERIVED
        )
    return get_entry(name)


class _ExprReader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: Optional[int] = None) -> ParseError:
        p = self.pos if pos is None else pos
        # offsets are reported in bytes of the UTF-8 input
        offset = len(self.text[:p].encode("utf-8"))
        return ParseError(msg, offset)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def name(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start : self.pos], start


def _parse_term(rd: _ExprReader, sign: int) -> tuple[Fraction, str]:
    coeff = Fraction(sign)
    if rd.peek().isdigit():
        num = rd.integer()
        den = 1
        if rd.peek() == "/":
            rd.pos += 1
            den_pos = rd.pos
            den = rd.integer()
            if den == 0:
                raise rd.error("denominator must be positive", den_pos)
        rd.expect("*")
        coeff *= Fraction(num, den)
    name, start = rd.name()
    if rd.peek() == "(":
        if name not in _CALL_NAMES:
            raise rd.error(f"unknown function name {name!r}", start)
        rd.pos += 1
        arg_pos = rd.pos
        r = rd.integer()
        rd.expect(")")
        if name == "zero":
            if not 1 <= r <= len(ZERO_RELATION_NAMES):
                raise rd.error(f"zero(k) needs 1 <= k <= {len(ZERO_RELATION_NAMES)}", arg_pos)
            entry = f"zero/{ZERO_RELATION_NAMES[r - 1]}"
        else:
            entry = f"{name}/{r}"
        try:
            get_entry(entry)
        except DomainError as exc:
            raise rd.error(str(exc), arg_pos) from None
        return coeff, entry
    if name not in _BARE_NAMES:
        if name in _CALL_NAMES:
            raise rd.error(f"{name} needs a parameter, as in {name}(3)")
        raise rd.error(f"unknown name {name!r}", start)
    return coeff, name


def parse_expr(text: str) -> LinearExpr:
    """Parse ``[c*]name(r) +/- ...``; a leading sign on the first term is allowed."""
    rd = _ExprReader(text)
    sign = 1
    if rd.peek() in ("+", "-"):
        sign = -1 if rd.peek() == "-" else 1
        rd.pos += 1
    terms = [_parse_term(rd, sign)]
    while rd.peek():
        op = rd.peek()
        if op not in ("+", "-"):
            raise rd.error(f"expected '+' or '-', found {op!r}")
        rd.pos += 1
        terms.append(_parse_term(rd, 1 if op == "+" else -1))
    return LinearExpr(tuple(terms))


# ---------------------------------------------------------------------------
# verification


def verify_entry(entry: CatalogEntry, digits: int) -> dict:
    """Series enclosure against the oracle; passes at ``digits - 5`` agreeing places."""
    P = PrecisionSpec(digits)
    series = eval_expansion(entry.expansion, P)
    oracle = oracle_value(entry.tag, P)
    agree = agree_digits(series, oracle, digits)
    ok = series.intersects(oracle) and agree >= digits - 5
    return {
        "name": entry.name,
        "digits": digits,
        "status": "pass" if ok else "fail",
        "agree_digits": agree,
        "midpoint": series.format_midpoint(digits),
    }


def _fmt_q5(c) -> str:
    if c.b == 0:
        return str(c.a)
    b = "√5" if abs(c.b) == 1 else f"{abs(c.b)}√5"
    if c.a == 0:
        return b if c.b > 0 else f"-{b}"
    return f"{c.a} {'+' if c.b > 0 else '-'} {b}"


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _print_enclosure(name: str, enc: Enclosure, digits: int, out: TextIO) -> None:
    out.write(f"{name} ≈ {enc.format_midpoint(digits)}\n")
    out.write(f"  enclosure {enc.format(digits + 2)}\n")


def _cmd_catalog(args, out: TextIO) -> int:
    entries = list_catalog(args.rmax)
    if args.json:
        # index document first, then one expansion document per entry in the same order
        index = [
            {"name": e.name, "tag": tag_to_dict(e.tag), "provenance": e.provenance.value}
            for e in entries
        ]
        out.write(json.dumps({"index": index}, ensure_ascii=False, separators=(",", ":")) + "\n")
        for e in entries:
            out.write(serialize(e.expansion, e.tag) + "\n")
        return EXIT_OK
    for e in entries:
        out.write(f"{e.name}\t{e.tag.describe()}\t{e.provenance.value}\n")
    return EXIT_OK


def _cmd_gen(args, out: TextIO) -> int:
    e = get_entry(args.name)
    if args.json:
        out.write(serialize(e.expansion, e.tag) + "\n")
    else:
        out.write(f"{e.tag.describe()} = {render_pnotation(e.expansion)}\n")
    return EXIT_OK


def _cmd_eval(args, out: TextIO) -> int:
    e = get_entry(args.name)
    enc = eval_expansion(e.expansion, PrecisionSpec(args.digits))
    if args.json:
        lo, hi = enc.format(args.digits + 2).split("/")
        _dump(
            {
                "name": e.name,
                "digits": args.digits,
                "midpoint": enc.format_midpoint(args.digits),
                "lo": lo,
                "hi": hi,
                "terms": term_count(e.expansion, args.digits),
            },
            out,
        )
    else:
        _print_enclosure(e.name, enc, args.digits, out)
        out.write(f"  blocks summed: {term_count(e.expansion, args.digits)}\n")
    return EXIT_OK


def _report_text(rep: dict, entry: CatalogEntry, out: TextIO) -> None:
    out.write(
        f"{rep['name']}: {rep['status']}, agrees to {rep['agree_digits']} digits "
        f"with {entry.tag.describe()}\n"
    )


def _cmd_verify(args, out: TextIO) -> int:
    e = get_entry(args.name)
    rep = verify_entry(e, args.digits)
    if args.json:
        _dump(rep, out)
    else:
        _report_text(rep, e, out)
    return EXIT_OK if rep["status"] == "pass" else EXIT_FAIL


def _cmd_verify_all(args, out: TextIO) -> int:
    entries = list_catalog(args.rmax)
    reports = [verify_entry(e, args.digits) for e in entries]
    failures = [r for r in reports if r["status"] != "pass"]
    if args.json:
        _dump(reports, out)
    else:
        for rep, e in zip(reports, entries):
            _report_text(rep, e, out)
        out.write(f"{len(reports) - len(failures)}/{len(reports)} passed\n")
        if failures:
            _dump({"failures": failures}, out)
    return EXIT_FAIL if failures else EXIT_OK


def _cmd_zeros(args, out: TextIO) -> int:
    D = args.digits
    P = PrecisionSpec(D)
    limit = Fraction(1, 10 ** (D - 5)) if D > 5 else Fraction(1)
    failures = []
    for rel in list_zero_relations():
        enc = eval_expansion(rel.literal.expansion, P)
        ok = enc.contains(0) and abs(enc.midpoint()) <= limit
        ratio = rel.ratio
        note = "" if rel.derived is None else f", ratio to derived form {_fmt_q5(ratio) if ratio else 'none'}"
        if rel.derived is not None and ratio is None:
            ok = False
        out.write(f"zero/{rel.name}: {'pass' if ok else 'fail'}, |mid| ≤ {float(abs(enc.midpoint())):.3g}{note}\n")
        if not ok:
            failures.append({"name": f"zero/{rel.name}", "digits": D, "status": "fail",
                             "midpoint": enc.format_midpoint(D)})
    if failures:
        _dump({"failures": failures}, out)
    return EXIT_FAIL if failures else EXIT_OK


def _cmd_combine(args, out: TextIO) -> int:
    expr = parse_expr(args.expr)
    E = combine(expr.expansions())
    out.write(f"{expr} = {render_pnotation(E)}\n")
    if not E.is_zero_vector():
        for rel in list_zero_relations():
            lit, mine = common_form([rel.literal.expansion, E])
            c = is_scalar_multiple(lit, mine)
            if c is not None:
                out.write(f"  proportional to zero/{rel.name}: zero/{rel.name} = ({_fmt_q5(c)}) × this\n")
    if args.digits:
        enc = eval_expansion(E, PrecisionSpec(args.digits))
        _print_enclosure("value", enc, args.digits, out)
    return EXIT_OK


def _cmd_phidigits(args, out: TextIO) -> int:
    e = get_entry(args.name)
    enc = eval_expansion(e.expansion, PrecisionSpec(args.digits))
    try:
        out.write(phi_digits(enc, args.count) + "\n")
    except UndecidableDigitError as exc:
        sys.stderr.write(f"error: {exc}; raise --digits\n")
        return EXIT_FAIL
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="goldenbbp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list catalog names and tags")
    c.add_argument("--rmax", type=_positive, default=10)
    c.add_argument("--json", action="store_true", help="index document, then one document per entry")
    c.set_defaults(func=_cmd_catalog)

    g = sub.add_parser("gen", help="print an expansion")
    g.add_argument("name")
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--pnotation", action="store_true")
    g.set_defaults(func=_cmd_gen)

    e = sub.add_parser("eval", help="enclose the value of an expansion")
    e.add_argument("name")
    e.add_argument("--digits", type=_positive, required=True)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=_cmd_eval)

    v = sub.add_parser("verify", help="compare series and oracle")
    v.add_argument("name")
    v.add_argument("--digits", type=_positive, required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    va = sub.add_parser("verify-all", help="verify every entry up to rmax")
    va.add_argument("--rmax", type=_positive, required=True)
    va.add_argument("--digits", type=_positive, required=True)
    va.add_argument("--json", action="store_true")
    va.set_defaults(func=_cmd_verify_all)

    z = sub.add_parser("zeros", help="check the registered zero relations")
    z.add_argument("--digits", type=_positive, required=True)
    z.set_defaults(func=_cmd_zeros)

    cb = sub.add_parser("combine", help="combine expansions linearly")
    cb.add_argument("expr")
    cb.add_argument("--digits", type=_positive)
    cb.set_defaults(func=_cmd_combine)

    ph = sub.add_parser("phidigits", help="base-phi digits of a constant")
    ph.add_argument("name")
    ph.add_argument("--digits", type=_positive, required=True)
    ph.add_argument("--count", type=_positive, required=True)
    ph.set_defaults(func=_cmd_phidigits)
    return p


def run(argv: Sequence[str], out: Optional[TextIO] = None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UnknownEntryError, DomainError, ParseError, ValidationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
