"""Command-line interface: ``nsize <subcommand> ...``.

Exit codes: 0 success, 2 parse error, 3 precondition error, 4 resource cap.
Data goes to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional, TextIO

from .alpha import Ordering
from .config import DEFAULT_HORIZON
from .density import Exact, UnknownDensity, decimal_text, density_profile, natural_density, profile_csv, profile_text
from .dsl import ParseError, parse
from .errors import PreconditionError, ResourceError
from .experiments import (
    histogram_csv,
    histogram_svg,
    histogram_text,
    random_subset_trial,
    s_table,
    s_table_csv,
    s_table_text,
    subset_histogram,
    trials_csv,
    trials_text,
)
from .numerosity import (
    ExactNum,
    Profile,
    RangeNum,
    alpha_compare,
    alpha_numerosity,
    cnum,
    cnum_compare,
    cnum_notes,
    supervaluation,
)
from .output import _row, comparison_lines, format_output
from .seqcore import partial_sums
from .setmodel import classify_finiteness, membership
from .sizescales import lottery_compare, lottery_value, size_report

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 2, 3, 4

_POW = re.compile(r"^\(?(\d+)\)?(?:(?:\^|\*\*)(.+))?$")


def parse_int(text: str) -> int:
    """Integer literal, optionally a right-associative power such as ``2^(2^5)``."""
    s = text.strip().replace(" ", "")
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    m = _POW.match(s)
    if not m:
        raise PreconditionError(f"not an integer: {text!r}")
    base = int(m.group(1))
    if m.group(2) is None:
        return base
    exp = parse_int(m.group(2))
    if exp > 1 << 16:
        raise PreconditionError(f"exponent too large in {text!r}")
    return base**exp


def parse_int_list(text: str) -> list[int]:
    out = [parse_int(t) for t in text.split(",") if t.strip()]
    if not out:
        raise PreconditionError("empty list")
    return out


def _density_order(a, b) -> str:
    if isinstance(a, UnknownDensity) or isinstance(b, UnknownDensity):
        return "Unknown"
    lo_a, hi_a = (a.value, a.value) if isinstance(a, Exact) else (a.lower, a.upper)
    lo_b, hi_b = (b.value, b.value) if isinstance(b, Exact) else (b.lower, b.upper)
    if hi_a < lo_b:
        return str(Ordering.LESS)
    if lo_a > hi_b:
        return str(Ordering.GREATER)
    if isinstance(a, Exact) and isinstance(b, Exact):
        return str(Ordering.EQUAL)
    return "Incomparable"


def _alpha_order(a, b) -> str:
    if isinstance(a, ExactNum) and isinstance(b, ExactNum):
        return str(alpha_compare(a.value, b.value))
    ha = (a.value, a.value) if isinstance(a, ExactNum) else a.hull if isinstance(a, RangeNum) else None
    hb = (b.value, b.value) if isinstance(b, ExactNum) else b.hull if isinstance(b, RangeNum) else None
    if ha and hb:
        if ha[1] < hb[0]:
            return str(Ordering.LESS)
        if ha[0] > hb[1]:
            return str(Ordering.GREATER)
    return "Unknown"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args, out: TextIO) -> None:
    out.write(format_output(classify_finiteness(parse(args.expr)), args.format))


def cmd_density(args, out: TextIO) -> None:
    e = parse(args.expr)
    d = natural_density(e)
    if args.profile_checkpoints:
        rows = density_profile(e, parse_int_list(args.profile_checkpoints))
        if args.format == "csv":
            out.write(profile_csv(rows))
            return
        out.write(format_output(d, "text"))
        out.write(profile_text(rows))
        return
    out.write(format_output(d, args.format))


def cmd_numerosity(args, out: TextIO) -> None:
    e = parse(args.expr)
    mode = args.mode
    if mode in ("canonical", "free"):
        out.write(format_output(alpha_numerosity(e, Profile(mode)), args.format))
    elif mode == "super":
        out.write(format_output(supervaluation(e), args.format))
    else:
        seq = cnum(e).representative
        vals = [(n, seq.eval(n)) for n in range(1, 11)]
        if args.format == "csv":
            out.write(_row("n", "f_n") + "".join(_row(n, v) for n, v in vals))
        else:
            out.write(f"cnum [f({args.expr})]\n")
            out.write("density " + format_output(natural_density(e), "text"))
            out.write("prefix " + " ".join(str(v) for _, v in vals) + "\n")


def cmd_compare(args, out: TextIO) -> None:
    a, b = parse(args.expr_a), parse(args.expr_b)
    if args.horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    m = args.measure
    if m == "cnum":
        res = cnum_compare(cnum(a), cnum(b), args.horizon)
        if args.format == "csv":
            out.write(format_output(res, "csv"))
        else:
            out.write("".join(line + "\n" for line in comparison_lines(res, cnum_notes(a, b, res))))
        return
    if m == "density":
        va, vb = natural_density(a), natural_density(b)
        verdict, sa, sb = _density_order(va, vb), format_output(va), format_output(vb)
    elif m == "alpha":
        va, vb = alpha_numerosity(a), alpha_numerosity(b)
        verdict, sa, sb = _alpha_order(va, vb), format_output(va), format_output(vb)
    else:
        va, vb = lottery_value(a), lottery_value(b)
        verdict, sa, sb = str(lottery_compare(va, vb)), format_output(va), format_output(vb)
    sa, sb = sa.strip(), sb.strip()
    if args.format == "csv":
        out.write(_row("verdict", "a", "b") + _row(verdict, sa, sb))
    else:
        out.write(f"verdict {verdict}\na {sa}\nb {sb}\n")


def cmd_table(args, out: TextIO) -> None:
    e = parse(args.expr)
    ns = parse_int_list(args.at)
    if any(n < 1 for n in ns):
        raise PreconditionError("indices must be >= 1")
    seq = partial_sums(e)
    rows = [(n, membership(e, n), seq.eval(n)) for n in ns]
    if args.format == "csv":
        out.write(_row("n", "chi", "f_n", "ratio_num", "ratio_den"))
        for n, chi, f in rows:
            q = Fraction(f, n)
            out.write(_row(n, chi, f, q.numerator, q.denominator))
    else:
        for n, chi, f in rows:
            q = Fraction(f, n)
            out.write(f"n={n} chi={chi} f_n={f} f_n/n={q} ({decimal_text(q)})\n")


def cmd_hist(args, out: TextIO) -> None:
    rows = subset_histogram(args.n)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(histogram_svg(rows))
    out.write(histogram_csv(rows) if args.format == "csv" else histogram_text(rows))


def cmd_s_table(args, out: TextIO) -> None:
    rows = s_table(args.kmax)
    out.write(s_table_csv(rows) if args.format == "csv" else s_table_text(rows))


def cmd_sample_random(args, out: TextIO) -> None:
    stats = random_subset_trial(args.n, args.trials, args.seed, workers=args.workers)
    out.write(trials_csv(stats) if args.format == "csv" else trials_text(stats))


def cmd_report(args, out: TextIO) -> None:
    out.write(format_output(size_report(parse(args.expr)), args.format))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default=argparse.SUPPRESS,
                        help="output format (default: text)")
    p = argparse.ArgumentParser(prog="nsize", description="Sizes of symbolic subsets of the positive integers.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="finite / co-finite / infinite co-infinite")
    s.add_argument("expr")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("density", parents=[common], help="natural density or lower/upper bounds")
    s.add_argument("expr")
    s.add_argument("--profile-checkpoints", help="comma-separated n values (2^64 style allowed)")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("numerosity", parents=[common], help="alpha- or c-numerosity")
    s.add_argument("expr")
    s.add_argument("--mode", choices=("canonical", "free", "cnum", "super"), default="canonical")
    s.set_defaults(func=cmd_numerosity)

    s = sub.add_parser("compare", parents=[common], help="compare two sets under one measure")
    s.add_argument("expr_a")
    s.add_argument("expr_b")
    s.add_argument("--measure", choices=("cnum", "density", "alpha", "lottery"), default="cnum")
    s.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("table", parents=[common], help="chi, f and f/n at given indices")
    s.add_argument("expr")
    s.add_argument("--at", required=True)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("hist", parents=[common], help="subset counts by size")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--svg", help="also write an SVG chart to this path")
    s.set_defaults(func=cmd_hist)

    s = sub.add_parser("s-table", parents=[common], help="block-set counts at n = 2^(2^k)")
    s.add_argument("--kmax", type=int, required=True)
    s.set_defaults(func=cmd_s_table)

    s = sub.add_parser("sample-random", parents=[common], help="density of seeded random subsets")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sample_random)

    s = sub.add_parser("report", parents=[common], help="all measures for one set")
    s.add_argument("expr")
    s.set_defaults(func=cmd_report)
    return p


def run(argv: Optional[list[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return int(exc.code or 0) and EXIT_PARSE
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        args.func(args, out)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ResourceError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (PreconditionError, ValueError) as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
