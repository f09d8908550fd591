"""Command-line front end.

    mcgpres generate mapo --g 2 --n 3 [--mode paper|corrected] [--format json]
    mcgpres generate b1r --r 3
    mcgpres generate b21
    mcgpres verify counts --input b21.json
    mcgpres nf --type A2 --word "x1 x2 x1"
    mcgpres enumerate --coxeter A3

Exit codes: 0 success, 1 verification violations, 2 bad arguments or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import arb, mcg, verify
from .artin import ArtinError, Mode, builtin_graph, coxeter_presentation, parse_type
from .coset import EnumerationExhausted, todd_coxeter
from .export import FORMATS, render
from .garside import build_root_system, normal_form, parse_word_expr
from .presentations import Presentation
from .words import WordError

CHECKS = ("counts", "perm", "abelian", "homogeneity", "structure", "enumerate")


class UsageError(Exception):
    pass


def _positive(minimum: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return value
    return convert


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcgpres", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a presentation")
    gen.add_argument("family", choices=("mapo", "b1r", "b21"))
    gen.add_argument("--g", type=_positive(1))
    gen.add_argument("--n", type=_positive(2))
    gen.add_argument("--r", type=_positive(3))
    gen.add_argument("--mode", choices=("paper", "corrected"), default="paper")
    gen.add_argument("--format", choices=FORMATS, default="json")
    gen.add_argument("--out", type=Path)

    ver = sub.add_parser("verify", help="run a check on a presentation JSON file")
    ver.add_argument("check", choices=CHECKS)
    ver.add_argument("--input", type=Path, required=True)
    ver.add_argument("--scope", choices=("all", "per-vertex"))
    ver.add_argument("--max-cosets", type=_positive(1), default=100_000)
    ver.add_argument("--out", type=Path)

    nf = sub.add_parser("nf", help="left-greedy normal form of a braid word")
    nf.add_argument("--type", required=True, dest="type_name")
    nf.add_argument("--word", required=True)
    nf.add_argument("--out", type=Path)

    en = sub.add_parser("enumerate", help="Todd-Coxeter order of a finite presentation")
    src = en.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path)
    src.add_argument("--coxeter")
    en.add_argument("--max-cosets", type=_positive(1), default=100_000)
    en.add_argument("--out", type=Path)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _report(data: dict, out: Path | None) -> None:
    _emit(json.dumps(data, sort_keys=True, indent=1) + "\n", out)


def _load(path: Path) -> Presentation:
    try:
        return Presentation.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path} is not a presentation: {exc}") from None


def _generate(args) -> int:
    mode = Mode.coerce(args.mode)
    if args.family == "mapo":
        if args.g is None or args.n is None:
            raise UsageError("generate mapo needs --g and --n")
        p = mcg.mapo_presentation(mcg.MapoParams(args.g, args.n), mode)
    elif args.family == "b1r":
        if args.r is None:
            raise UsageError("generate b1r needs --r")
        p = arb.b1r_presentation(args.r, mode)
    else:
        p = arb.b21_presentation(mode)
    _emit(render(p, args.format), args.out)
    return 0


def _verify(args) -> int:
    p = _load(args.input)
    check = args.check
    report: dict = {"check": check, "input": str(args.input)}
    if check == "counts":
        res = verify.count_check(p)
        report.update(res)
        ok = res["ok"]
    elif check == "perm":
        scope = args.scope or ("per-vertex" if p.meta.get("family") == "b21" else "all")
        bad = verify.perm_eval(p, scope=scope)
        report.update(scope=scope, violations=bad, **verify.perm_scope_summary(p, scope))
        ok = not bad
    elif check == "abelian":
        report.update(verify.abelianization(p))
        ok = True
    elif check == "homogeneity":
        try:
            bad = verify.delta_homogeneity_audit(p)
        except verify.MissingTagsError as exc:
            raise UsageError(str(exc)) from None
        report.update(mode=p.meta.get("mode"), violations=bad)
        ok = not bad
    elif check == "structure":
        res = verify.structural_check(p)
        report.update(res)
        ok = res["ok"]
    else:
        try:
            report["order"] = todd_coxeter(p, args.max_cosets)
            ok = True
        except EnumerationExhausted as exc:
            report.update(order=None, exhausted=exc.max_cosets)
            ok = False
    report["ok"] = ok
    _report(report, args.out)
    return 0 if ok else 1


def _nf(args) -> int:
    family, rank = parse_type(args.type_name)
    rs = build_root_system(family, rank)
    word = parse_word_expr(args.word, rs.rank)
    _report(normal_form(word, rs).to_json(rs), args.out)
    return 0


def _enumerate(args) -> int:
    if args.input is not None:
        p = _load(args.input)
        source = str(args.input)
    else:
        p = coxeter_presentation(builtin_graph(args.coxeter))
        source = args.coxeter
    try:
        order = todd_coxeter(p, args.max_cosets)
    except EnumerationExhausted as exc:
        _report({"source": source, "order": None, "exhausted": exc.max_cosets}, args.out)
        return 1
    _report({"source": source, "order": order}, args.out)
    return 0


COMMANDS = {"generate": _generate, "verify": _verify, "nf": _nf, "enumerate": _enumerate}


def run(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ArtinError, WordError, mcg.ParamError) as exc:
        parser.print_usage(sys.stderr)
        print(f"mcgpres: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
