"""Operation handlers shared by the HTTP endpoints and the CLI.

Each handler takes a request model, runs the corresponding core routine and
returns a response model.  Domain problems surface as package exceptions;
the transport layers translate them into HTTP status codes or exit codes.
"""

from __future__ import annotations

from . import pdivision
from .artin_schreier import (NonPDivisibleValuation, Solvable, Unsolvable,
                             solve)
from .errors import DomainError
from .finite_field import FiniteField
from .pdivision import PRECISION_GUARD, CodingParams, choose_n, p_divides
from .schemas import (CheckRequest, CheckResponse, ChooseNRequest,
                      ChooseNResponse, DemoFacts, DemoRequest, DemoResponse,
                      EvalRequest, EvalResponse, ScanRequest, ScanResponse,
                      SeriesPayload, SolveRequest, SolveResponse,
                      ObstructionPayload, ValuationRequest, ValuationResponse)
from .series import INF, Finite, Series, parse_series

EXAMPLE_FIELD = "3"
EXAMPLE_ALPHA_INV = "t^-3 + 1 + t + t^2"


def _parse(field_text: str, expr: str) -> Series:
    field = FiniteField.parse(field_text)
    return parse_series(expr, field)


def eval_series(req: EvalRequest) -> EvalResponse:
    s = _parse(req.field, req.expr)
    return EvalResponse(series=SeriesPayload.from_series(s), text=str(s))


def _valuation_response(v) -> ValuationResponse:
    if isinstance(v, Finite):
        return ValuationResponse(kind="finite", value=v.value)
    return ValuationResponse(kind="at_least",
                             bound=None if v.bound == INF else int(v.bound))


def t_adic_valuation(req: ValuationRequest) -> ValuationResponse:
    return _valuation_response(_parse(req.field, req.expr).valuation())


def coprime_valuation(req: ValuationRequest) -> ValuationResponse:
    return _valuation_response(_parse(req.field, req.expr).coprime_valuation())


def solve_artin_schreier(req: SolveRequest) -> SolveResponse:
    x = _parse(req.field, req.expr)
    if req.prec is not None:
        witness_prec = req.prec
    else:
        v = x.valuation()
        depth = abs(v.value) if isinstance(v, Finite) else 0
        witness_prec = 2 * depth * x.field.p + PRECISION_GUARD
        if x.prec != INF:
            witness_prec = min(witness_prec, int(x.prec))
    outcome = solve(x, witness_prec=witness_prec)
    if isinstance(outcome, Solvable):
        return SolveResponse(status="solvable",
                             witness=SeriesPayload.from_series(outcome.witness),
                             witness_text=str(outcome.witness))
    if isinstance(outcome, Unsolvable):
        reason = outcome.reason
        if isinstance(reason, NonPDivisibleValuation):
            payload = ObstructionPayload(kind="non_p_divisible_valuation",
                                         exponent=reason.exponent)
        else:
            payload = ObstructionPayload(kind="trace_obstruction",
                                         constant=str(reason.constant))
        return SolveResponse(status="unsolvable", obstruction=payload)
    return SolveResponse(status="indeterminate", needed_prec=outcome.needed_prec)


def _params(field_text: str, alpha: str | None, alpha_inv: str | None,
            forced_N: int | None = None) -> CodingParams:
    if (alpha is None) == (alpha_inv is None):
        raise DomainError("provide exactly one of alpha, alpha_inv")
    field = FiniteField.parse(field_text)
    if alpha is not None:
        params = choose_n(alpha=parse_series(alpha, field))
    else:
        params = choose_n(alpha_inv=parse_series(alpha_inv, field))
    if forced_N is not None:
        params = params.with_multiplier(forced_N)
    return params


def _choose_response(params: CodingParams) -> ChooseNResponse:
    return ChooseNResponse(C=params.C, D=params.D, k=params.k, N=params.N)


def choose_multiplier(req: ChooseNRequest) -> ChooseNResponse:
    return _choose_response(_params(req.field, req.alpha, req.alpha_inv))


def check_relation(req: CheckRequest) -> CheckResponse:
    params = _params(req.field, req.alpha, req.alpha_inv, req.N)
    holds = pdivision.check_pair(params, req.m, req.n, prec=req.prec)
    return CheckResponse(m=req.m, n=req.n, N=params.N, holds=holds)


def scan_relation(req: ScanRequest) -> ScanResponse:
    params = _params(req.field, req.alpha, req.alpha_inv, req.N)
    report = pdivision.scan(params, req.bound, prec=req.prec)
    d = report.to_json_dict()
    return ScanResponse(bound=d["bound"], checked=d["checked"],
                        mismatches=d["mismatches"])


def demo_counterexample(req: DemoRequest,
                        rescan_N: int | None = None) -> DemoResponse:
    """Reproduce the counterexample narrative for the standard anchor.

    Over F_3 with anchor given by its reciprocal t^-3 + 1 + t + t^2, the
    naive multiplier N = 1 wrongly codes "1 divides 2": the equation at
    (m, n) = (2, 1) is solvable although the arithmetic relation fails.
    Choosing the multiplier properly yields N = 2, and a rescan is clean.

    `rescan_N` can force a different multiplier into the final rescan; it
    exists so the failure path (exit code 3) is reachable in tests.
    """
    field = FiniteField.parse(EXAMPLE_FIELD)
    alpha_inv = parse_series(EXAMPLE_ALPHA_INV, field)
    params = choose_n(alpha_inv=alpha_inv)

    x = alpha_inv.int_pow(2) - alpha_inv
    solvable = isinstance(solve(x, witness_prec=55), Solvable)
    oracle = p_divides(field.p, 1, 2)
    naive = pdivision.scan(params.with_multiplier(1), 2)
    naive_mismatch = (2, 1, True, False) in naive.mismatches

    rescan_params = params if rescan_N is None else params.with_multiplier(rescan_N)
    rescan = pdivision.scan(rescan_params, req.bound)

    facts = DemoFacts(
        equation_solvable_at_2_1=solvable,
        oracle_1_divides_2=oracle,
        naive_multiplier_mismatch_at_2_1=naive_mismatch,
        chosen=_choose_response(params),
        rescan_bound=req.bound,
        rescan_clean=rescan.clean,
    )
    ok = (solvable and not oracle and naive_mismatch
          and params.N == 2 and rescan.clean)
    return DemoResponse(field=EXAMPLE_FIELD, alpha_inv=EXAMPLE_ALPHA_INV,
                        facts=facts, ok=ok)
