"""Command-line front end: ``chowgw {betti,table,det,invariants,eval}``."""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import List, Optional, Sequence

from . import gw
from .exact import format_rational
from .series import poincare

EXIT_OK, EXIT_ASSERT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> List[int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _ns(args, default: Optional[List[int]] = None) -> Optional[List[int]]:
    if args.n is not None and args.n_range is not None:
        raise UsageError("give --n or --n-range, not both")
    if args.n is not None:
        return [args.n]
    return args.n_range if args.n_range is not None else default


def _check_min(ns, lo: int, what: str):
    for n in ns or ():
        if n < lo:
            raise UsageError(f"{what} needs n >= {lo}, got {n}")


def _emit(args, objs: list, texts: List[str]):
    if args.format == "json":
        payload = objs[0] if len(objs) == 1 else objs
        print(json.dumps(payload))
    else:
        print("\n\n".join(texts))


# -- subcommands --------------------------------------------------------------
def cmd_betti(args) -> int:
    ns = _ns(args)
    if ns is None:
        raise UsageError("betti needs --n or --n-range")
    _check_min(ns, 1, "betti")
    objs, texts = [], []
    for n in ns:
        p = poincare(n)
        obj = {"n": n, "betti": list(p.betti)}
        obj.update({f"b{i}": b for i, b in enumerate(p.betti)})
        objs.append(obj)
        w = max(len(str(b)) for b in p.betti)
        lines = [f"n = {n}  (dim {p.dimension}, euler {p.euler_characteristic()})"]
        lines += [f"  b{i:<3} {b:>{w}}" for i, b in enumerate(p.betti)]
        texts.append("\n".join(lines))
    _emit(args, objs, texts)
    return EXIT_OK


def _table_text(js: dict) -> str:
    cells = [[""] + js["cols"]] + [[r] + row for r, row in zip(js["rows"], js["entries"])]
    widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    head = f"n = {js['n']}"
    body = ["  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join([head] + body)


def cmd_table(args) -> int:
    ns = _ns(args, [None])
    _check_min([n for n in ns if n is not None], 3, "table")
    table = gw.intersection_table()
    objs = [table.to_json(n) for n in ns]
    _emit(args, objs, [_table_text(js) for js in objs])
    return EXIT_OK


def cmd_det(args) -> int:
    ns = _ns(args, [None])
    _check_min([n for n in ns if n is not None], 3, "det")
    objs, texts = [], []
    for n in ns:
        v = gw.basis_determinant(n)
        s = str(v) if n is None else format_rational(v)
        objs.append({"n": "symbolic" if n is None else n, "det": s})
        texts.append(f"det(n = {'symbolic' if n is None else n}) = {s}")
    if args.format == "json":
        _emit(args, objs, texts)
    else:
        print("\n".join(texts))
    return EXIT_OK


def cmd_invariants(args) -> int:
    ns = _ns(args, [3])
    _check_min(ns, 3, "invariants")
    ds = [args.d] if args.d is not None else [1]
    if any(d < 1 for d in ds):
        raise UsageError("--d must be positive")
    objs, texts = [], []
    for n in ns:
        for d in ds:
            res = [gw.invariant(i, d) for i in range(1, 7)]
            objs.append({"n": n, "d": d, "invariants": [r.to_json() for r in res]})
            lines = [f"n = {n}, d = {d}"]
            for r in res:
                tag = f" [{r.provenance}]" if r.provenance == gw.LOCALIZED else ""
                lines.append(f"Xi{r.i}: {format_rational(r.value)}{tag}")
            texts.append("\n".join(lines))
    _emit(args, objs, texts)
    return EXIT_OK


def corpus_names() -> List[str]:
    root = resources.files("chowgw") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".chow"))


def read_script(ref: str) -> str:
    if ref.startswith("corpus:"):
        name = ref[len("corpus:"):]
        if name not in corpus_names():
            raise UsageError(f"no corpus script {name!r}; have {', '.join(corpus_names())}")
        return (resources.files("chowgw") / "corpus" / f"{name}.chow").read_text("utf-8")
    try:
        with open(ref, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {ref}: {exc.strerror}") from None


def cmd_eval(args) -> int:
    from .dsl import DslError, run_source
    ref = args.script or args.path
    if ref is None:
        raise UsageError("eval needs --script PATH (or corpus:NAME)")
    text = read_script(ref)
    try:
        results = run_source(text)
    except DslError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps([r.to_json() for r in results]))
    else:
        for r in results:
            print(r.text)
    return EXIT_OK if all(r.ok for r in results) else EXIT_ASSERT


# -- entry point -------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chowgw", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if n:
            p.add_argument("--n", type=int)
            p.add_argument("--n-range", type=parse_range, metavar="A..B")
        return p

    common(sub.add_parser("betti", help="Betti numbers of the moduli space"))
    common(sub.add_parser("table", help="6x6 intersection table (symbolic without --n)"))
    common(sub.add_parser("det", help="determinant of the intersection table"))
    p = common(sub.add_parser("invariants", help="extremal genus-0 invariants"))
    p.add_argument("--d", type=int, help="curve degree (default 1)")
    p = common(sub.add_parser("eval", help="run a script"), n=False)
    p.add_argument("--script", metavar="PATH", help="script file or corpus:NAME")
    p.add_argument("path", nargs="?", help=argparse.SUPPRESS)
    return ap


COMMANDS = {"betti": cmd_betti, "table": cmd_table, "det": cmd_det,
            "invariants": cmd_invariants, "eval": cmd_eval}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"chowgw {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
