"""``semiconj`` command line.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 numerically inconclusive.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import reports
from .monodromy import TrackingError
from .poincare import NoAdmissiblePointError
from .ratfun import ParseError, parse_expression
from .ratfun.roots import RootPrecisionError
from .semiconjugacy import NotSemiconjugateError, Triple
from .suite import (
    Settings,
    corpus_listing,
    provenance,
    run_check,
    run_corpus,
    run_genus,
    run_invariance,
    run_monodromy,
    run_orbifold,
    run_poincare_function,
    run_poincare_triple,
    run_primitivity,
    run_reduce,
    run_theorem,
)

EXIT = {"pass": 0, "fail": 1, "inconclusive": 3}


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--precision", type=int, default=256, help="working precision in bits (default 256)")
    p.add_argument("--series-order", type=int, default=64, help="Poincaré series order (default 64)")
    p.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance (default 1e-8)")
    p.add_argument("--samples", type=int, default=100, help="random samples (default 100)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.add_argument("-v", "--verbose", action="store_true")


def _triple_args(p):
    p.add_argument("--A", dest="A")
    p.add_argument("--B", dest="B")
    p.add_argument("--X", dest="X")
    p.add_argument("--triple", metavar="FILE", help='JSON file {"A": ..., "B": ..., "X": ...}')


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semiconj", description="Semiconjugate rational functions A o X = X o B.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, helptext in [
        ("check", "exact test of A o X = X o B and primitivity"),
        ("reduce", "reduce a solution to a primitive one"),
        ("poincare", "Poincaré linearizers: fixed points of --f, or the parametrization identity for a triple"),
        ("invariance", "fiber-product invariance and product-diagram checks"),
        ("theorem61", "orbifold conditions for a primitive triple"),
    ]:
        p = sub.add_parser(name, help=helptext)
        _triple_args(p)
        _common(p)
        if name == "poincare":
            p.add_argument("--f", dest="f")
            p.add_argument("--z0", help="fixed point (exact expression) for the series of --f")
            p.add_argument("--radius", type=float, help="grid radius for the triple check")

    p = sub.add_parser("primitivity", help="fiber-field degree [C(z) : C(X, B)]")
    p.add_argument("--X", dest="X")
    p.add_argument("--B", dest="B")
    p.add_argument("--triple", metavar="FILE")
    _common(p)

    for name, helptext in [
        ("orbifold", "ramification portrait, signature orbifolds and chi"),
        ("genus", "Galois-closure genus and monodromy group order"),
        ("monodromy", "monodromy permutations"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--f", dest="f", required=True)
        _common(p)
        if name == "monodromy":
            p.add_argument("--k", type=int, help="also count orbits on injective k-tuples")

    p = sub.add_parser("corpus", help="built-in example triples")
    p.add_argument("action", choices=["list", "run"])
    _common(p)
    return ap


EXPR_FLAGS = ("--A", "--B", "--X", "--f", "--z0")


def _glue_expressions(argv):
    """``--X -z^2`` -> ``--X=-z^2`` so expressions with a leading minus are not taken for flags."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in EXPR_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def _parse(text: str, what: str):
    try:
        return parse_expression(text)
    except ParseError as e:
        raise UsageError(f"{what}: {e}") from e


def _load_triple_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read triple file {path}: {e}") from e
    if not isinstance(data, dict):
        raise UsageError("triple file must hold a JSON object")
    return data


def _functions(args, names) -> dict:
    src = _load_triple_file(args.triple) if getattr(args, "triple", None) else {}
    out = {}
    for n in names:
        text = getattr(args, n, None) or src.get(n)
        if text is None:
            raise UsageError(f"missing --{n}")
        out[n] = _parse(text, n)
    return out


def _triple(args) -> Triple:
    fs = _functions(args, ["A", "B", "X"])
    return Triple(fs["A"], fs["B"], fs["X"])


def _dispatch(args, s: Settings):
    cmd = args.command
    if cmd == "check":
        fs = _functions(args, ["A", "B", "X"])
        return {k: str(v) for k, v in fs.items()}, run_check(fs["A"], fs["B"], fs["X"], s)
    if cmd == "primitivity":
        fs = _functions(args, ["X", "B"])
        return {k: str(v) for k, v in fs.items()}, run_primitivity(fs["X"], fs["B"], s)
    if cmd in ("orbifold", "genus", "monodromy"):
        f = _parse(args.f, "f")
        if f.degree < 2:
            raise UsageError("f must have degree at least two")
        runner = {"orbifold": run_orbifold, "genus": run_genus}.get(cmd)
        if runner is None:
            return {"f": str(f)}, run_monodromy(f, s, args.k)
        return {"f": str(f)}, runner(f, s)
    if cmd == "poincare" and args.f:
        f = _parse(args.f, "f")
        z0 = None
        if args.z0:
            c = _parse(args.z0, "z0")
            if not c.is_const():
                raise UsageError("--z0 must be a constant")
            z0 = c.num[0]
        return {"f": str(f), "z0": args.z0}, run_poincare_function(f, z0, s)
    if cmd == "corpus":
        if args.action == "list":
            return {}, corpus_listing()
        return {}, run_corpus(s)
    t = _triple(args)
    inputs = t.describe()
    if cmd == "reduce":
        return inputs, run_reduce(t, s)
    if cmd == "poincare":
        return inputs, run_poincare_triple(t, s, args.radius)
    if cmd == "invariance":
        return inputs, run_invariance(t, s)
    if cmd == "theorem61":
        return inputs, run_theorem(t, s)
    raise UsageError(f"unknown command {cmd}")


def _summary(report: dict) -> str:
    lines = [f"{report['command']}: {report['verdict']}"]
    for k, v in report["results"].items():
        if isinstance(v, (bool, int, float, str)):
            lines.append(f"  {k}: {v}")
        elif isinstance(v, dict) and "verdict" in v:
            lines.append(f"  {k}: {v['verdict']}")
    return "\n".join(lines)


def run(argv=None) -> tuple[int, dict | None]:
    ap = build_parser()
    try:
        args = ap.parse_args(_glue_expressions(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as e:
        return int(e.code or 0), None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    s = Settings(args.precision, args.series_order, args.tol, args.samples, args.seed)
    params = {"precision": s.precision, "series_order": s.series_order, "tol": s.tol,
              "samples": s.samples, "seed": s.seed}
    t0 = time.perf_counter()
    command = args.command + (f" {args.action}" if args.command == "corpus" else "")
    try:
        inputs, (results, verdict) = _dispatch(args, s)
    except UsageError as e:
        print(f"semiconj: error: {e}", file=sys.stderr)
        return 2, None
    except NotSemiconjugateError as e:
        inputs, results, verdict = {}, {"semiconjugate": False, "error": str(e)}, "fail"
    except (RootPrecisionError, TrackingError, NoAdmissiblePointError) as e:
        inputs, results, verdict = {}, {"error": str(e)}, "inconclusive"
    except ValueError as e:
        print(f"semiconj: error: {e}", file=sys.stderr)
        return 2, None
    report = reports.make_report(command, inputs, params, results, verdict,
                                 time.perf_counter() - t0 if args.timing else None,
                                 provenance(command, results))
    if args.json:
        reports.write(report, args.json)
    if args.json != "-":
        print(_summary(report))
    return EXIT[verdict], report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
