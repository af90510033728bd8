"""Command line entry point: ``shuffle-duality``.

Exit codes: 0 pass, 1 property violation (report written), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import harness
from .pairing import FPBWDMonomial, pair, pair_via_words
from .shuffle import EPBWDMonomial, ShuffleElement, build_e_pbwd, check_relations, star
from .special import is_good


class InputError(Exception):
    pass


def _modes(text: str):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")


def _element(n: int, spec: str) -> ShuffleElement:
    """An element given as a JSON file path or an E-monomial such as e[1..2]@0^1."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            x = ShuffleElement.from_json(json.load(fh))
        if x.rank != n:
            raise InputError(f"{spec}: element has rank {x.rank}, expected {n}")
        return x
    return build_e_pbwd(EPBWDMonomial.parse(spec), n)


def _config(args) -> harness.WindowConfig:
    lo, hi = args.modes
    return harness.WindowConfig.from_decomp(args.n, args.max_degree, lo, hi, args.decomp)


def _emit(args, payload: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _cmd_star(args) -> int:
    x = star(_element(args.n, args.a), _element(args.n, args.b))
    _emit(args, _dump(x.to_json()))
    return 0


def _cmd_good(args) -> int:
    x = _element(args.n, args.element)
    res = is_good(x)
    _emit(args, _dump({"good": res.ok, "certificate": res.certificate}))
    return 0 if res.ok else 1


def _cmd_pair(args) -> int:
    x = _element(args.n, args.e)
    m = FPBWDMonomial.parse(args.f, ordered=False)
    val = pair_via_words(x, m) if args.words else pair(x, m)
    print(val)
    return 0


def _gram(args):
    inject = []
    for path in args.inject or ():
        inject.append((f"inject:{os.path.basename(path)}", _element(args.n, path)))
    return harness.verify_duality(_config(args), workers=args.workers, inject=inject)


def _cmd_gram(args) -> int:
    rep = _gram(args)
    _emit(args, rep.to_csv() if args.format == "csv" else rep.dumps())
    return 0 if rep.passed else 1


def _cmd_verify(args) -> int:
    what = args.suite
    if what == "duality":
        rep = _gram(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(rep.to_csv() if args.format == "csv" else rep.dumps())
        summary = rep.to_json()["summary"]
        print(json.dumps(summary, sort_keys=True))
        return 0 if rep.passed else 1
    if what == "relations":
        lo, hi = args.modes
        res = check_relations(args.n, range(lo, hi + 1))
    elif what == "good":
        elements = None
        if args.inject:
            elements = harness.sample_good_elements(_config(args))
            elements += [(os.path.basename(p), _element(args.n, p)) for p in args.inject]
        res = harness.verify_good_criterion(_config(args), elements)
    elif what == "dual-bases":
        res = harness.verify_dual_bases(_config(args), workers=args.workers, ordering=args.ordering)
    elif what == "oracle":
        res = harness.verify_oracle(_config(args))
    else:
        res = harness.verify_key_specialization(args.n)
    text = _dump(res)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(json.dumps({"passed": res["passed"]}))
    else:
        sys.stdout.write(text)
    return 0 if res["passed"] else 1


def _window_flags(p: argparse.ArgumentParser):
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--modes", type=_modes, default=(-2, 2), metavar="LO..HI")
    p.add_argument("--decomp", default="zero", help="zero, slope or file:PATH")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--inject", action="append", metavar="JSON",
                   help="extra element rows (repeatable)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shuffle-duality",
                                 description="Exact shuffle algebra products, good-element tests and pairings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="rank of sl_n")
    common.add_argument("--out", help="write the result to this file")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("star", parents=[common], help="shuffle product of two elements")
    p.add_argument("--a", required=True, help="JSON file or E-monomial text")
    p.add_argument("--b", required=True, help="JSON file or E-monomial text")
    p.set_defaults(func=_cmd_star)

    p = sub.add_parser("good", parents=[common], help="test the good-element criterion")
    p.add_argument("--element", required=True, help="JSON file or E-monomial text")
    p.set_defaults(func=_cmd_good)

    p = sub.add_parser("pair", parents=[common], help="pair an element with an F-monomial")
    p.add_argument("--e", required=True, help="JSON file or E-monomial text")
    p.add_argument("--f", required=True, help='e.g. "f[1..2]@(-3,0)*f[1..1]@(2)"')
    p.add_argument("--words", action="store_true", help="use the word-expansion route")
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("gram", parents=[common], help="Gram matrix report over a window")
    _window_flags(p)
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=("duality", "good", "dual-bases", "oracle", "relations", "key-spec"))
    _window_flags(p)
    p.add_argument("--ordering", choices=("e-op", "e-slope"), default="e-op",
                   help="factor ordering for dual-bases")
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--modes -2..2" would otherwise be read as an unknown option
    for t in range(len(argv) - 1):
        if argv[t] == "--modes":
            argv[t:t + 2] = [f"--modes={argv[t + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
