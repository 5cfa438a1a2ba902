"""Command-line front end.

Exit statuses: 0 success, 1 verification failure, 2 parse error,
3 expression outside the catalog, 4 numeric error (pole, non-summable),
5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence, TextIO

from .errors import FracSumError, ParseError
from .essence import essence, essence_numeric
from .expr import CatalogExpr
from .fracsum import SumResult, frac_sum, frac_sum_series, frac_sum_taylor, pole_distance
from .parser import parse_expr, parse_scalar
from .regularize import hash_sum
from .verify import SUITES, run_suite

__all__ = ["main", "build_parser", "format_number", "format_complex", "grid_rows", "write_grid"]

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3, 4, 5

# options whose values may start with '-'
_SIGNED_OPTS = ("--from", "--to", "--re", "--im")


def format_number(v: float) -> str:
    """Twelve significant digits, no negative zero."""
    return "%.12g" % (v + 0.0)


def format_complex(z: complex) -> str:
    """Display form: the imaginary part is dropped when it is round-off."""
    z = complex(z)
    scale = max(1.0, abs(z))
    re = 0.0 if abs(z.real) <= 1e-13 * scale else z.real
    im = 0.0 if abs(z.imag) <= 1e-13 * scale else z.imag
    if im == 0:
        return format_number(re)
    if re == 0:
        return format_number(im) + "i"
    sign = "-" if im < 0 else "+"
    return f"{format_number(re)}{sign}{format_number(abs(im))}i"


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if not lo <= hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracsums", description="Fractional finite sums over a catalog of functions.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log engine diagnostics")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="evaluate sum_{k=FROM}^{TO} EXPR")
    p.add_argument("expr")
    p.add_argument("--from", dest="lo", default="1", help="lower bound (default 1)")
    p.add_argument("--to", dest="hi", required=True, help="upper bound")
    p.add_argument("--method", choices=("closed", "series", "taylor"), default="closed")
    p.add_argument("--tol", type=_positive, default=1e-8, help="series tolerance")
    p.add_argument("--max-terms", type=int, default=10**7, help="series term cap")
    p.add_argument("--terms", type=int, default=40, help="Taylor terms")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("essence", help="essence of EXPR")
    p.add_argument("expr")
    p.add_argument("--numeric", action="store_true", help="use the numeric limit definition")
    p.add_argument("--h-min", type=_positive, default=2.0 ** -10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("regularize", help="#-sum of EXPR over k >= 1")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("grid", help="CSV of sum_{k=1}^{z} EXPR over a rectangle")
    p.add_argument("expr")
    p.add_argument("--re", type=_parse_range, default=(-4.5, 1.5))
    p.add_argument("--im", type=_parse_range, default=(-3.0, 3.0))
    p.add_argument("--step", type=_positive, default=0.05)
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    return ap


def _join_signed(argv: Sequence[str]) -> list[str]:
    # argparse reads "--re -4.5:1.5" as two options; glue such values on
    out, it = [], iter(argv)
    for a in it:
        if a in _SIGNED_OPTS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def _emit(out: TextIO, value: complex, method: str, err: float, terms: int, as_json: bool, extra=()) -> None:
    if as_json:
        doc = {"value_re": value.real + 0.0, "value_im": value.imag + 0.0,
               "method": method, "err": err, "terms": terms}
        doc.update(extra)
        out.write(json.dumps(doc) + "\n")
        return
    out.write(f"value   {format_complex(value)}\n")
    out.write(f"method  {method}\n")
    out.write(f"err     {format_number(err)}\n")
    for k, v in extra:
        out.write(f"{k:<8}{v}\n")


def _engine_sum(e: CatalogExpr, t: complex, args) -> SumResult:
    if args.method == "series":
        return frac_sum_series(e, t, tol=args.tol, max_terms=args.max_terms)
    return frac_sum_taylor(e, t, args.terms)


def cmd_sum(args, out: TextIO) -> int:
    e = parse_expr(args.expr)
    lo, hi = parse_scalar(args.lo), parse_scalar(args.hi)
    if args.method == "closed":
        r = frac_sum(e, lo, hi)
    else:
        top = _engine_sum(e, hi, args)
        if lo == 1:
            r = top
        else:
            bottom = _engine_sum(e, lo - 1, args)
            r = SumResult(top.value - bottom.value, top.method,
                          top.err_estimate + bottom.err_estimate,
                          top.terms_used + bottom.terms_used,
                          top.converged and bottom.converged)
    extra = () if r.converged else (("converged", False),)
    _emit(out, r.value, r.method, r.err_estimate, r.terms_used, args.json, extra)
    return EXIT_OK


def cmd_essence(args, out: TextIO) -> int:
    e = parse_expr(args.expr)
    r = essence_numeric(e, args.h_min) if args.numeric else essence(e)
    _emit(out, r.value, r.provenance, r.err_estimate, 0, args.json)
    return EXIT_OK


def cmd_regularize(args, out: TextIO) -> int:
    e = parse_expr(args.expr)
    r = hash_sum(e)
    if args.json:
        _emit(out, r.value, "hash_sum", 0.0, 0, True, {"classically_convergent": r.classically_convergent})
    else:
        out.write(f"value   {format_complex(r.value)}\n")
        out.write(f"classically convergent: {'yes' if r.classically_convergent else 'no'}\n")
    return EXIT_OK


def _axis(lo: float, hi: float, step: float) -> list[float]:
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [round(lo + i * step, 12) for i in range(n + 1)]


def grid_rows(e: CatalogExpr, re_range, im_range, step: float, workers: int = 1) -> list[str]:
    """CSV lines (without header) over the rectangle, rows of constant im."""
    xs = _axis(*re_range, step)
    ys = _axis(*im_range, step)

    def row(y: float) -> str:
        lines = []
        for x in xs:
            t = complex(x, y)
            head = f"{format_number(x)},{format_number(y)}"
            if pole_distance(e, t) < step / 2:
                lines.append(f"{head},,,pole")
                continue
            try:
                v = frac_sum(e, 1, t).value
            except (FracSumError, ArithmeticError, ValueError):
                lines.append(f"{head},,,error")
                continue
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                lines.append(f"{head},,,error")
                continue
            lines.append(f"{head},{format_number(v.real)},{format_number(v.imag)},ok")
        return "\n".join(lines)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(row, ys))
    else:
        chunks = [row(y) for y in ys]
    return [c for c in chunks if c]


def write_grid(out: TextIO, e: CatalogExpr, re_range, im_range, step: float, workers: int = 1) -> int:
    rows = grid_rows(e, re_range, im_range, step, workers)
    out.write("re,im,val_re,val_im,status\n")
    for chunk in rows:
        out.write(chunk + "\n")
    return sum(c.count("\n") + 1 for c in rows)


def cmd_grid(args, out: TextIO) -> int:
    e = parse_expr(args.expr)
    frac_sum(e, 1, 0)  # surfaces NonSummable before any output
    if args.out:
        try:
            with open(args.out, "w", encoding="ascii", newline="\n") as fh:
                write_grid(fh, e, args.re, args.im, args.step, args.workers)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        write_grid(out, e, args.re, args.im, args.step, args.workers)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    rep = run_suite(args.suite, args.seed, args.count)
    out.write("\n".join(rep.lines()) + "\n")
    return EXIT_OK if rep.passed else EXIT_VERIFY


_COMMANDS = {
    "sum": cmd_sum,
    "essence": cmd_essence,
    "regularize": cmd_regularize,
    "grid": cmd_grid,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(_join_signed(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args, out)
    except FracSumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_status
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
