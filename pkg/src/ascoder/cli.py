"""Command-line client for the calculator.

Thin layer over the same handlers the HTTP service uses: argv is packed
into a request model, the handler runs in-process, and the response model
is rendered as text or JSON.

Exit codes: 0 success; 1 malformed input or domain violation; 2 precision
shortfall (pinned --prec or the escalation cap); 3 the counterexample demo
failed to reproduce.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ops
from .errors import AscoderError, PrecisionExceededError
from .schemas import (CheckRequest, ChooseNRequest, DemoRequest, EvalRequest,
                      ScanRequest, SolveRequest, ValuationRequest)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PRECISION = 2
EXIT_DEMO_FAILED = 3


def _dump(model) -> str:
    return json.dumps(model.model_dump(), indent=2)


def _anchor_args(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha", help="the anchor element, an exact Laurent "
                       "polynomial of positive valuation")
    group.add_argument("--alpha-inv", dest="alpha_inv",
                       help="the anchor's reciprocal as an exact Laurent polynomial")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ascoder",
        description="Exact Laurent-series arithmetic over finite fields, an "
                    "Artin-Schreier solvability decider, and existential "
                    "coding of p-divisibility.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(s, series_arg=True):
        s.add_argument("--field", required=True,
                       help="field description: 'p' or 'p^n/modulus', "
                            "e.g. 3 or 3^2/x^2+1")
        s.add_argument("--json", action="store_true", help="emit JSON")
        if series_arg:
            s.add_argument("expr", help="series expression, e.g. 't^-3 + 1 + t + t^2'")

    s = sub.add_parser("eval", help="parse and normalize a series expression")
    common(s)

    s = sub.add_parser("vt", help="t-adic valuation")
    common(s)

    s = sub.add_parser("vhat", help="least exponent not divisible by p "
                                    "carrying a nonzero coefficient")
    common(s)

    s = sub.add_parser("solve-as", help="solve a^p - a = x over the series field")
    common(s)
    s.add_argument("--prec", type=int, default=None,
                   help="witness precision (default: derived from the input)")

    s = sub.add_parser("choose-n", help="select the coding multiplier N")
    common(s, series_arg=False)
    _anchor_args(s)

    s = sub.add_parser("check", help="evaluate the coded relation at one (m, n)")
    common(s, series_arg=False)
    _anchor_args(s)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--N", type=int, default=None, help="force the multiplier")
    s.add_argument("--prec", type=int, default=None,
                   help="pin the working precision; disables escalation")

    s = sub.add_parser("scan", help="compare coding against the arithmetic "
                                    "oracle on a box")
    common(s, series_arg=False)
    _anchor_args(s)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--N", type=int, default=None, help="force the multiplier")
    s.add_argument("--prec", type=int, default=None,
                   help="pin the working precision; disables escalation")

    s = sub.add_parser("demo-counterexample",
                       help="reproduce the standard counterexample narrative "
                            "over F_3")
    s.add_argument("--bound", type=int, default=10, help="rescan box size")
    s.add_argument("--json", action="store_true", help="emit JSON transcript")

    return parser


def _run(args) -> tuple[int, str]:
    cmd = args.subcommand
    if cmd == "eval":
        resp = ops.eval_series(EvalRequest(field=args.field, expr=args.expr))
        return EXIT_OK, _dump(resp.series) if args.json else resp.text
    if cmd in ("vt", "vhat"):
        req = ValuationRequest(field=args.field, expr=args.expr)
        resp = ops.t_adic_valuation(req) if cmd == "vt" else ops.coprime_valuation(req)
        return EXIT_OK, _dump(resp) if args.json else resp.text
    if cmd == "solve-as":
        resp = ops.solve_artin_schreier(
            SolveRequest(field=args.field, expr=args.expr, prec=args.prec))
        if args.json:
            return EXIT_OK, _dump(resp)
        if resp.status == "solvable":
            return EXIT_OK, f"Solvable\nwitness: {resp.witness_text}"
        if resp.status == "unsolvable":
            o = resp.obstruction
            if o.kind == "non_p_divisible_valuation":
                detail = f"valuation {o.exponent} is negative and not divisible by p"
            else:
                detail = f"constant term {o.constant} has nonzero trace"
            return EXIT_OK, f"Unsolvable: {detail}"
        return EXIT_OK, f"Indeterminate: need precision >= {resp.needed_prec}"
    if cmd == "choose-n":
        resp = ops.choose_multiplier(
            ChooseNRequest(field=args.field, alpha=args.alpha,
                           alpha_inv=args.alpha_inv))
        return EXIT_OK, _dump(resp) if args.json else resp.text
    if cmd == "check":
        resp = ops.check_relation(
            CheckRequest(field=args.field, alpha=args.alpha,
                         alpha_inv=args.alpha_inv, m=args.m, n=args.n,
                         N=args.N, prec=args.prec))
        return EXIT_OK, _dump(resp) if args.json else str(resp.holds).lower()
    if cmd == "scan":
        resp = ops.scan_relation(
            ScanRequest(field=args.field, alpha=args.alpha,
                        alpha_inv=args.alpha_inv, bound=args.bound,
                        N=args.N, prec=args.prec))
        if args.json:
            return EXIT_OK, _dump(resp)
        lines = [f"checked {resp.checked} pairs up to bound {resp.bound}: "
                 f"{len(resp.mismatches)} mismatch(es)"]
        for m, n, coded, oracle in resp.mismatches:
            lines.append(f"  (m={m}, n={n}): coding={str(coded).lower()} "
                         f"oracle={str(oracle).lower()}")
        return EXIT_OK, "\n".join(lines)
    if cmd == "demo-counterexample":
        resp = ops.demo_counterexample(DemoRequest(bound=args.bound))
        code = EXIT_OK if resp.ok else EXIT_DEMO_FAILED
        if args.json:
            return code, _dump(resp)
        f = resp.facts
        lines = [
            f"field F_{resp.field}, anchor reciprocal {resp.alpha_inv}",
            f"equation solvable at (m, n) = (2, 1): {str(f.equation_solvable_at_2_1).lower()}",
            f"arithmetic relation 1 |_p 2: {str(f.oracle_1_divides_2).lower()}",
            f"multiplier N = 1 mismatches at (2, 1): "
            f"{str(f.naive_multiplier_mismatch_at_2_1).lower()}",
            f"chosen parameters: {f.chosen.text}",
            f"rescan up to bound {f.rescan_bound} clean: {str(f.rescan_clean).lower()}",
            "reproduced" if resp.ok else "FAILED to reproduce",
        ]
        return code, "\n".join(lines)
    raise AssertionError(f"unhandled subcommand {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, output = _run(args)
    except PrecisionExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (AscoderError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
