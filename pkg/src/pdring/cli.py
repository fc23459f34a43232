"""Command line entry point: ``pdring <command> ...``.

Exit codes: 0 success, 1 negative verdict under ``--expect``, 2 input
error, 3 failed internal cross-check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classify
from .divisor import is_rational_singularity, normalize
from .errors import PdringError
from .frational import candidate_primes, failing_primes
from .hj import hj_expand, hj_tails, t_signature
from .parsing import parse_divisor, parse_rational
from .render import render_graph
from .report import analyze, q
from .resolution import dual_graph, fundamental_cycle

OK, NEGATIVE, INPUT_ERROR, CHECK_FAILED = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_hj(args) -> int:
    x = parse_rational(args.rational)
    seq = hj_expand(x)
    out = {"value": q(x), "expansion": list(seq),
           "tails": [q(e) for e in hj_tails(seq)], "t_signature": list(t_signature(seq))}
    if args.json:
        sys.stdout.write(_dump(out))
    else:
        sys.stdout.write(f"{q(x)} = [[{', '.join(map(str, seq))}]]\n"
                         f"tails        {' '.join(out['tails'])}\n"
                         f"T-signature  {tuple(out['t_signature'])}\n")
    return OK


def cmd_analyze(args) -> int:
    rep = analyze(parse_divisor(args.divisor), args.p or None, verify=args.verify)
    sys.stdout.write(rep.to_json() if args.json else rep.summary())
    if rep.failed_checks:
        sys.stderr.write("cross-check failed: " + ", ".join(rep.failed_checks) + "\n")
        return CHECK_FAILED
    data = rep.to_dict()
    if args.expect == "rational" and data["rationality"]["outcome"] != "rational":
        return NEGATIVE
    if args.expect == "f-rational":
        if data["rationality"]["outcome"] != "rational":
            return NEGATIVE
        if any(v["outcome"] != "f_rational" for v in data["f_rationality"].values()):
            return NEGATIVE
    return OK


def cmd_failing_primes(args) -> int:
    d = normalize(parse_divisor(args.divisor))
    fails = sorted(failing_primes(d))
    if args.json:
        sys.stdout.write(_dump({"divisor": str(d), "candidates": candidate_primes(d),
                                "failing_primes": fails}))
    else:
        sys.stdout.write(" ".join(map(str, fails)) + "\n" if fails else "none\n")
    return NEGATIVE if args.expect_none and fails else OK


def cmd_classify(args) -> int:
    bounds = classify.EnumerationBounds(args.max_s, args.max_points,
                                        args.max_denominator, args.max_param)
    rep = classify.enumerate_and_verify(bounds, args.multiplicity, workers=args.workers,
                                        instance_max_denominator=args.instance_max_denominator)
    if args.json:
        sys.stdout.write(_dump(rep))
    else:
        sys.stdout.write(
            f"multiplicity {rep['target_e']}: {rep['families']} families\n"
            f"corpus: {rep['corpus_ample']} ample divisors, "
            f"{rep['corpus_with_target_e']} with multiplicity {rep['target_e']}\n"
            f"unmatched: {len(rep['unmatched'])}\n"
            f"instances checked: {rep['instances_checked']}, unsound: {len(rep['unsound'])}\n")
        for u in rep["unmatched"]:
            sys.stdout.write(f"  unmatched {u}\n")
        for u in rep["unsound"]:
            sys.stdout.write(f"  unsound {u['family']} {u['params']} {u['divisor']}: {u['reason']}\n")
    return OK if rep["ok"] else CHECK_FAILED


def cmd_threshold(args) -> int:
    rep = classify.threshold_report(args.multiplicity, args.primes, max_param=args.max_param)
    if args.json:
        sys.stdout.write(_dump(rep))
    else:
        sys.stdout.write(f"multiplicity {rep['target_e']}: {rep['instances']} instances\n")
        for p, entry in rep["primes"].items():
            sys.stdout.write(f"p={p}: {entry['count']} failures\n")
            for f in entry["failures"][:args.show]:
                sys.stdout.write(f"  {f['divisor']} [{f['family']}] n={f['witness_n']}\n")
            if "ex1_witness" in entry:
                w = entry["ex1_witness"]
                sys.stdout.write(f"  sharpness witness {w['divisor']}: "
                                 f"{'F-rational' if w['f_rational'] else 'not F-rational'}\n")
    if args.expect_none and any(e["count"] for e in rep["primes"].values()):
        return NEGATIVE
    return OK


def cmd_render(args) -> int:
    d = normalize(parse_divisor(args.divisor))
    g = dual_graph(d)
    z = None
    if not args.no_cycle and is_rational_singularity(d).is_rational:
        z = fundamental_cycle(d)
    sys.stdout.write(render_graph(g, z, args.format))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdring",
                                 description="Invariants of graded rings R(P^1, D).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hj", help="Hirzebruch-Jung expansion of a rational > 1")
    p.add_argument("rational")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hj)

    p = sub.add_parser("analyze", help="full analysis of a divisor")
    p.add_argument("divisor")
    p.add_argument("--p", type=int, action="append", metavar="PRIME")
    p.add_argument("--verify", action="store_true", help="run oracle and theorem cross-checks")
    p.add_argument("--json", action="store_true")
    p.add_argument("--expect", choices=["rational", "f-rational"])
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("failing-primes", help="primes where F-rationality fails")
    p.add_argument("divisor")
    p.add_argument("--json", action="store_true")
    p.add_argument("--expect-none", action="store_true")
    p.set_defaults(func=cmd_failing_primes)

    p = sub.add_parser("classify", help="check a classification table at bounded scale")
    p.add_argument("--multiplicity", type=int, choices=[3, 4], required=True)
    p.add_argument("--max-denominator", type=int, default=9)
    p.add_argument("--max-param", type=int, default=8)
    p.add_argument("--max-s", type=int, default=4)
    p.add_argument("--max-points", type=int, default=5)
    p.add_argument("--instance-max-denominator", type=int, default=60)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("threshold", help="F-rationality of table instances per prime")
    p.add_argument("--multiplicity", type=int, choices=[3, 4], required=True)
    p.add_argument("--primes", type=int, nargs="+", required=True)
    p.add_argument("--max-param", type=int, default=8)
    p.add_argument("--show", type=int, default=5, help="failures listed per prime")
    p.add_argument("--expect-none", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("render", help="dual graph as DOT or ASCII")
    p.add_argument("divisor")
    p.add_argument("--format", choices=["dot", "ascii"], default="ascii")
    p.add_argument("--no-cycle", action="store_true")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except PdringError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
