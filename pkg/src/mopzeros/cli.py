"""Command line interface.

Subcommands::

    coeffs     nearest-neighbour coefficients b_{n,k}, a_{n,j}
    poly       P_n from recurrence, explicit sum and moment solve
    zeros      isolating intervals of the zeros of P_n
    interlace  exact interlacing verdict for P_n and P_{n+e_k}
    scan       coefficient signs and interlacing over |n| <= max-len
    verify     every cross-oracle identity over |n| <= max-len

Rationals are given and printed as ``p/q``.  Exit codes for ``interlace``:
0 interlace, 2 fail, 3 shared root.  Any command exits 1 on invalid input and
``verify`` exits 1 on the first discrepancy.

CSV columns (``scan``): family,params,n,k,b,a_list,sum_a,real_simple,verdict
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from .exact import Poly, as_fraction, refine_root
from .families import (DEFAULT_PARAMS, FAMILIES, DomainError, FamilySpec, InvalidParameters,
                       make_family)
from .lattice import Lattice, plus
from .oracle import NotNormal, solve_from_moments
from .verify import CorruptedProvider, verify_family
from .zeros import Verdict, interlace, theorem2_scan, zero_set

CSV_HEADER = ["family", "params", "n", "k", "b", "a_list", "sum_a", "real_simple", "verdict"]
EXIT_CODES = {Verdict.INTERLACE: 0, Verdict.FAIL: 2, Verdict.SHARED_ROOT: 3}
DEFAULT_WIDTH = Fraction(1, 10 ** 12)

# family name -> (flag destination, parameter name)
PARAM_FLAGS = {"c": "c", "a": "a", "beta": "beta", "p": "p", "alpha": "alpha", "bigN": "N"}


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value file; flags override it")
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--c", help="rational or comma list (hermite, meixner1, laguerre2, meixner2)")
    p.add_argument("--a", help="comma list (charlier)")
    p.add_argument("--beta", help="rational or comma list (meixner1, meixner2)")
    p.add_argument("--p", help="comma list (krawtchouk)")
    p.add_argument("--alpha", help="rational or comma list (laguerre2, laguerre1)")
    p.add_argument("--bigN", help="N (krawtchouk)")
    p.add_argument("--n", help="comma separated multi-index")
    p.add_argument("--k", type=int, help="direction, 1-based")
    p.add_argument("--max-len", dest="max_len", type=int)
    p.add_argument("--format", choices=["table", "csv", "jsonl"])
    p.add_argument("--width", help="display width for decimal approximations, p/q")
    p.add_argument("--seed", type=int, help="seed for path sampling")
    p.add_argument("--decimals", action="store_true", default=None,
                   help="also print certified decimal approximations")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mopzeros", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("coeffs", "poly", "zeros", "interlace", "scan", "verify"):
        sp = sub.add_parser(name)
        _common(sp)
        if name == "interlace":
            sp.add_argument("--debug-inject-fail", action="store_true", default=None,
                            help="ignore the family and compare x-2 with x^2-1")
        if name == "verify":
            sp.add_argument("--debug-corrupt", help="multi-index whose b-coefficient is perturbed by 1")
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CLIError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if not args.config:
        return args
    for key, value in read_config(args.config).items():
        if not hasattr(args, key):
            raise CLIError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            if key in ("k", "max_len", "seed"):
                value = int(value)
            elif key in ("decimals", "debug_inject_fail"):
                value = value.lower() in ("1", "true", "yes", "on")
            setattr(args, key, value)
    return args


def parse_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(as_fraction(t) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CLIError(f"bad rational list {text!r}: {exc}") from None


def parse_index(text: str | None) -> tuple[int, ...]:
    if not text:
        raise CLIError("--n is required")
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CLIError(f"bad multi-index {text!r}") from None


def family_from_args(args: argparse.Namespace) -> FamilySpec:
    if not args.family:
        raise CLIError("--family is required")
    cls = FAMILIES[args.family]
    fields = {f.name: f for f in dataclasses.fields(cls)}
    wanted = set(fields)
    given = {}
    for flag, pname in PARAM_FLAGS.items():
        value = getattr(args, flag)
        if value is None:
            continue
        if pname not in wanted:
            raise CLIError(f"--{flag} does not apply to {args.family}")
        if pname == "N":
            given[pname] = value
        elif fields[pname].metadata.get("vector"):
            given[pname] = parse_list(value)
        else:
            vals = parse_list(value)
            if len(vals) != 1:
                raise CLIError(f"--{flag} takes a single rational for {args.family}")
            given[pname] = vals[0]
    if not given:
        given = dict(DEFAULT_PARAMS[args.family])
    missing = wanted - set(given)
    if missing:
        raise CLIError(f"{args.family} also needs: {', '.join(sorted(missing))}")
    try:
        return make_family(args.family, **given)
    except InvalidParameters as exc:
        raise CLIError("invalid parameters: " + "; ".join(exc.violations)) from None
    except (TypeError, ValueError) as exc:
        raise CLIError(f"invalid parameters: {exc}") from None


# formatting


def fmt_index(n: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in n) + ")"


def fmt_list(vals: Sequence[Fraction]) -> str:
    return "[" + ", ".join(str(v) for v in vals) + "]"


def decimal(value: Fraction, width: Fraction) -> str:
    """Decimal within ``width`` of ``value``: rounded to the fewest places with ``10^-places <= width``."""
    digits = 0
    while Fraction(1, 10 ** digits) > width:
        digits += 1
    scaled = value * 10 ** digits
    q = math.floor(scaled + Fraction(1, 2))
    sign = "-" if q < 0 else ""
    q = abs(q)
    if digits == 0:
        return f"{sign}{q}"
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def approx(value: Fraction, width: Fraction) -> str:
    return f"{decimal(value, width)} (±{width})"


def emit_rows(rows: list[dict], fmt: str, out, header: list[str] | None = None) -> None:
    if not rows:
        return
    header = header or list(rows[0])
    if fmt == "jsonl":
        for row in rows:
            out.write(json.dumps(row) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([row[h] for h in header])
    else:
        widths = [max(len(h), *(len(str(r[h])) for r in rows)) for h in header]
        out.write("  ".join(h.ljust(wd) for h, wd in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(r[h]).ljust(wd) for h, wd in zip(header, widths)).rstrip() + "\n")


# commands


def cmd_coeffs(args, out) -> int:
    spec = family_from_args(args)
    n = parse_index(args.n)
    ks = [args.k] if args.k else list(range(1, spec.r + 1))
    width = as_fraction(args.width) if args.width else DEFAULT_WIDTH
    fmt = args.format or "table"
    rows = []
    for k in ks:
        c = spec.nn_coefficients(n, k)
        row = {"family": spec.name, "n": fmt_index(n), "k": k, "b": str(c.b),
               "a_list": fmt_list(c.a), "sum_a": str(sum(c.a, Fraction(0)))}
        if args.decimals:
            row["b_approx"] = approx(c.b, width)
            row["a_approx"] = "[" + ", ".join(approx(v, width) for v in c.a) + "]"
        rows.append(row)
    if fmt == "table":
        for row in rows:
            line = f"k={row['k']}: b={row['b']} a={row['a_list']}"
            if args.decimals:
                line += f"  b≈{row['b_approx']} a≈{row['a_approx']}"
            out.write(line + "\n")
    else:
        emit_rows(rows, fmt, out)
    return 0


def cmd_poly(args, out) -> int:
    spec = family_from_args(args)
    n = parse_index(args.n)
    rec = Lattice(spec)(n)
    exp = spec.explicit(n)
    orc = solve_from_moments(spec, n)
    agree = rec == exp == orc
    fmt = args.format or "table"
    if fmt == "table":
        out.write(f"{rec}\n")
        if agree:
            out.write("# recurrence, explicit sum and moment solve agree\n")
        else:
            out.write(f"# MISMATCH explicit: {exp}\n# MISMATCH moment solve: {orc}\n")
    else:
        row = {"family": spec.name, "params": spec.describe(), "n": fmt_index(n), "poly": str(rec),
               "coeffs": fmt_list(rec.coeffs), "agree": agree}
        emit_rows([row], fmt, out)
    return 0 if agree else 1


def cmd_zeros(args, out) -> int:
    spec = family_from_args(args)
    n = parse_index(args.n)
    P = Lattice(spec)(n)
    width = as_fraction(args.width) if args.width else DEFAULT_WIDTH
    zs = zero_set(P)
    rows = []
    for i, iv in enumerate(zs.intervals, 1):
        fine = refine_root(P, iv, width)
        rows.append({"i": i, "lo": str(iv.lo), "hi": str(iv.hi), "approx": approx(fine.mid, width)})
    fmt = args.format or "table"
    if fmt == "table":
        out.write(f"P_{fmt_index(n)} = {P}\n")
        out.write(f"real and simple: {'yes' if zs.real_simple else 'no'} "
                  f"({len(zs.intervals)} real zeros, degree {P.degree})\n")
    emit_rows(rows, fmt, out, ["i", "lo", "hi", "approx"])
    return 0


def cmd_interlace(args, out) -> int:
    if args.debug_inject_fail:
        P, Q, label = Poly((-2, 1)), Poly((-1, 0, 1)), "x - 2 vs x^2 - 1"
    else:
        spec = family_from_args(args)
        n = parse_index(args.n)
        if not args.k:
            raise CLIError("--k is required")
        lat = Lattice(spec)
        P, Q = lat(n), lat(plus(n, args.k))
        label = f"P_{fmt_index(n)} vs P_{fmt_index(plus(n, args.k))}"
    rep = interlace(P, Q)
    width = as_fraction(args.width) if args.width else DEFAULT_WIDTH
    out.write(f"{label}: {rep.verdict.value}\n")
    if rep.detail:
        out.write(f"detail: {rep.detail}\n")
    for owner, iv in rep.witness:
        poly = P if owner == "P" else Q
        fine = refine_root(poly, iv, width)
        out.write(f"  {owner} ({iv.lo}, {iv.hi})  ≈ {approx(fine.mid, width)}\n")
    return EXIT_CODES[rep.verdict]


def scan_rows(report) -> list[dict]:
    rows = []
    for r in report.rows:
        rows.append({
            "family": report.family,
            "params": report.params,
            "n": fmt_index(r.n),
            "k": r.k,
            "b": "" if r.b is None else str(r.b),
            "a_list": fmt_list(r.a),
            "sum_a": str(r.sum_a),
            "real_simple": "" if r.real_simple is None else str(r.real_simple).lower(),
            "verdict": r.verdict,
        })
    return rows


def scan_footer(report) -> str:
    neg = "yes" if report.negative_a else "no"
    sums = "all" if report.sums_positive else "not all"
    inter = "all" if report.interlacing_all else "not all"
    return f"negative a present: {neg}; Σa>0: {sums}; interlacing: {inter}"


def cmd_scan(args, out) -> int:
    spec = family_from_args(args)
    if args.max_len is None:
        raise CLIError("--max-len is required")
    try:
        report = theorem2_scan(spec, args.max_len)
    except DomainError as exc:
        raise CLIError(f"rejected: {exc}") from None
    fmt = args.format or "csv"
    rows = scan_rows(report)
    footer = scan_footer(report)
    if fmt == "jsonl":
        emit_rows(rows, fmt, out, CSV_HEADER)
        out.write(json.dumps({"summary": footer, "negative_a": bool(report.negative_a),
                              "sums_positive": report.sums_positive,
                              "interlacing_all": report.interlacing_all,
                              "errors": report.errors}) + "\n")
    else:
        emit_rows(rows, fmt, out, CSV_HEADER)
        out.write(f"# {footer}\n")
        for err in report.errors:
            out.write(f"# error: {err}\n")
    return 0


def cmd_verify(args, out) -> int:
    spec = family_from_args(args)
    max_len = 8 if args.max_len is None else args.max_len
    provider = None
    if args.debug_corrupt:
        provider = CorruptedProvider(spec, parse_index(args.debug_corrupt))
    results = verify_family(spec, max_len, provider, seed=args.seed or 0)
    out.write(f"{spec.name} {spec.describe()} |n|<={max_len}\n")
    for res in results:
        out.write(f"{'PASS' if res.passed else 'FAIL'}  {res.name}" + (f": {res.detail}" if res.detail else "") + "\n")
    failed = [r for r in results if not r.passed]
    if failed:
        out.write(f"first violated identity: {failed[0].name}\n")
        return 1
    out.write("all identities hold\n")
    return 0


COMMANDS = {
    "coeffs": cmd_coeffs,
    "poly": cmd_poly,
    "zeros": cmd_zeros,
    "interlace": cmd_interlace,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = merge_config(args)
        return COMMANDS[args.command](args, out)
    except CLIError as exc:
        print(f"mopzeros: {exc}", file=sys.stderr)
        return 1
    except (DomainError, NotNormal, ValueError, ArithmeticError) as exc:
        print(f"mopzeros: {exc}", file=sys.stderr)
        return 1


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (used by the tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
