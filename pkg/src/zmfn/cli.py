"""Command line interface.

Exit codes: 0 yes (or success), 10 no, 20 unknown, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import endo
from .decider import WhiteheadQuery, decide, verify
from .diophantine import Family
from .search import Decision, Verdict
from .whitehead import aut_equivalent, is_primitive, minimize_cyclic
from .words import Element, format_element, format_word, invert, multiply, parse_element, parse_word

EXIT_CODES = {Verdict.YES: 0, Verdict.NO: 10, Verdict.UNKNOWN: 20}
USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _ranks(parser: argparse.ArgumentParser, free_only: bool = False) -> None:
    if not free_only:
        parser.add_argument("--m", type=int, required=True, help="rank of the free-abelian factor")
    parser.add_argument("--n", type=int, required=True, help="rank of the free factor")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zmfn", description="Whitehead problems in Z^m x F_n")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide whether an endomorphism of a family maps SRC to TGT")
    p.add_argument("family", choices=[f.value for f in Family])
    _ranks(p)
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--bound", type=int, default=None, help="image length bound for the free-side search")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("endo", help="work with serialized endomorphisms")
    p.add_argument("action", choices=["apply", "compose", "classify"])
    p.add_argument("args", nargs="+", help="endomorphisms (JSON text or file) and, for apply, an element")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("free", help="free group utilities")
    p.add_argument("action", choices=["min", "equiv", "primitive"])
    _ranks(p, free_only=True)
    p.add_argument("words", nargs="+")

    p = sub.add_parser("el", help="element arithmetic")
    p.add_argument("action", choices=["mul", "inv", "parse"])
    _ranks(p)
    p.add_argument("elements", nargs="+")
    return parser


def _load_endo(text: str) -> endo.Endomorphism:
    if not text.lstrip().startswith("{") and os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return endo.loads(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read endomorphism: {exc}") from exc


def _decision_text(d: Decision) -> str:
    if d.is_yes:
        return "yes\n" + endo.describe(d.witness)
    if d.is_no:
        return f"no ({d.reason})"
    return f"unknown ({d.reason})"


def _run_decide(args, out) -> int:
    family = Family(args.family)
    src = parse_element(args.source, args.m, args.n)
    tgt = parse_element(args.target, args.m, args.n)
    if args.bound is not None and args.bound < 1:
        raise UsageError("--bound must be at least 1")
    d = decide(WhiteheadQuery(family, src, tgt, args.bound))
    verified = d.is_yes and verify(d.witness, src, tgt, family)
    if args.json:
        doc = {
            "decision": d.verdict.value,
            "family": family.value,
            "source": format_element(src),
            "target": format_element(tgt),
        }
        if d.is_yes:
            doc["witness"] = endo.to_dict(d.witness)
            doc["verified"] = verified
        elif d.is_no:
            doc["reason"] = d.reason
        else:
            doc["bound"] = d.bound
            doc["reason"] = d.reason
        print(json.dumps(doc), file=out)
    else:
        print(_decision_text(d), file=out)
        if d.is_yes:
            print(f"verified: {str(verified).lower()}", file=out)
    return EXIT_CODES[d.verdict]


def _run_endo(args, out) -> int:
    if args.action == "apply":
        if len(args.args) != 2:
            raise UsageError("endo apply needs ENDO ELEMENT")
        psi = _load_endo(args.args[0])
        g = parse_element(args.args[1], psi.m, psi.n)
        print(format_element(endo.apply_endo(psi, g)), file=out)
    elif args.action == "compose":
        if len(args.args) < 2:
            raise UsageError("endo compose needs at least two endomorphisms")
        psi = _load_endo(args.args[0])
        for text in args.args[1:]:
            psi = endo.compose(psi, _load_endo(text))
        print(endo.dumps(psi) if args.json else endo.describe(psi), file=out)
    else:
        if len(args.args) != 1:
            raise UsageError("endo classify needs one endomorphism")
        c = endo.classify(_load_endo(args.args[0]))
        doc = {"type": c.kind, "mono": c.is_mono, "epi": c.is_epi, "auto": c.is_auto}
        if args.json:
            print(json.dumps(doc), file=out)
        else:
            print(" ".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in doc.items()), file=out)
    return 0


def _run_free(args, out) -> int:
    words = [parse_word(w, args.n) for w in args.words]
    if args.action == "min":
        if len(words) != 1:
            raise UsageError("free min needs one word")
        cyc, trace = minimize_cyclic(words[0])
        print(f"minimal cyclic word: {cyc} (length {len(cyc)})", file=out)
        for t in trace:
            print(f"  {t}", file=out)
        return 0
    if args.action == "equiv":
        if len(words) != 2:
            raise UsageError("free equiv needs two words")
        phi = aut_equivalent(*words)
    else:
        if len(words) != 1:
            raise UsageError("free primitive needs one word")
        if not words[0]:
            raise UsageError("the trivial word is not primitive")
        phi = is_primitive(words[0])[1]
    if phi is None:
        print("no", file=out)
        return EXIT_CODES[Verdict.NO]
    print("yes", file=out)
    for j, img in enumerate(phi, 1):
        print(f"  x{j} -> {format_word(img)}", file=out)
    return EXIT_CODES[Verdict.YES]


def _run_el(args, out) -> int:
    elements = [parse_element(e, args.m, args.n) for e in args.elements]
    if args.action == "mul":
        result = Element.identity(args.m, args.n)
        for g in elements:
            result = multiply(result, g)
        print(format_element(result), file=out)
    elif args.action == "inv":
        for g in elements:
            print(format_element(invert(g)), file=out)
    else:
        for g in elements:
            print(format_element(g), file=out)
    return 0


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    if getattr(args, "m", 0) < 0 or getattr(args, "n", 0) < 0:
        print("zmfn: ranks must be nonnegative", file=err)
        return USAGE_ERROR
    runners = {"decide": _run_decide, "endo": _run_endo, "free": _run_free, "el": _run_el}
    try:
        return runners[args.command](args, out)
    except (UsageError, ValueError) as exc:
        print(f"zmfn: {exc}", file=err)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
