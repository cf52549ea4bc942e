"""HTTP service exposing the calculator over JSON.

Run with e.g. `uvicorn ascoder.app:app`.  Every endpoint is a pure
request/response computation; the CLI drives the same handlers in-process.

Error mapping: malformed input or domain violations answer 400, precision
shortfalls (including the escalation cap) answer 422; both carry
{"error": <exception class>, "detail": <message>}.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, ops
from .errors import AscoderError, PrecisionExceededError
from .schemas import (CheckRequest, CheckResponse, ChooseNRequest,
                      ChooseNResponse, DemoRequest, DemoResponse, EvalRequest,
                      EvalResponse, ScanRequest, ScanResponse, SolveRequest,
                      SolveResponse, ValuationRequest, ValuationResponse)

app = FastAPI(
    title="ascoder",
    version=__version__,
    description="Exact Laurent-series arithmetic over finite fields, an "
                "Artin-Schreier solvability decider, and existential coding "
                "of p-divisibility.",
)


@app.exception_handler(AscoderError)
async def _ascoder_error(request: Request, exc: AscoderError):
    status = 422 if isinstance(exc, PrecisionExceededError) else 400
    return JSONResponse(status_code=status,
                        content={"error": type(exc).__name__, "detail": str(exc)})


@app.exception_handler(ZeroDivisionError)
async def _division_error(request: Request, exc: ZeroDivisionError):
    return JSONResponse(status_code=400,
                        content={"error": "ZeroDivisionError", "detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return JSONResponse(status_code=400,
                        content={"error": "ValueError", "detail": str(exc)})


@app.get("/")
def root():
    return {"name": "ascoder", "version": __version__}


@app.post("/eval", response_model=EvalResponse)
def eval_series(req: EvalRequest):
    return ops.eval_series(req)


@app.post("/vt", response_model=ValuationResponse)
def t_adic_valuation(req: ValuationRequest):
    return ops.t_adic_valuation(req)


@app.post("/vhat", response_model=ValuationResponse)
def coprime_valuation(req: ValuationRequest):
    return ops.coprime_valuation(req)


@app.post("/solve-as", response_model=SolveResponse)
def solve_artin_schreier(req: SolveRequest):
    return ops.solve_artin_schreier(req)


@app.post("/choose-n", response_model=ChooseNResponse)
def choose_multiplier(req: ChooseNRequest):
    return ops.choose_multiplier(req)


@app.post("/check", response_model=CheckResponse)
def check_relation(req: CheckRequest):
    return ops.check_relation(req)


@app.post("/scan", response_model=ScanResponse)
def scan_relation(req: ScanRequest):
    return ops.scan_relation(req)


@app.post("/demo-counterexample", response_model=DemoResponse)
def demo_counterexample(req: DemoRequest | None = None):
    return ops.demo_counterexample(req or DemoRequest())
