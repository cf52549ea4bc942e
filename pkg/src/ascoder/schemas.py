"""Request/response models for the HTTP service and the CLI.

The JSON form of a series is {"field": "3", "prec": 64, "coeffs":
[[-3, "1"], ...]} with prec null for exact values; a scan report is
{"bound": 12, "checked": 144, "mismatches": [[m, n, coded, oracle], ...]}.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from .series import Series, series_from_json


class SeriesPayload(BaseModel):
    field: str
    prec: int | None = None
    coeffs: list[tuple[int, str]]

    @classmethod
    def from_series(cls, s: Series) -> "SeriesPayload":
        d = s.to_json_dict()
        return cls(field=d["field"], prec=d["prec"], coeffs=d["coeffs"])

    def to_series(self) -> Series:
        return series_from_json(self.model_dump())


class EvalRequest(BaseModel):
    field: str
    expr: str


class EvalResponse(BaseModel):
    series: SeriesPayload
    text: str


class ValuationRequest(BaseModel):
    field: str
    expr: str


class ValuationResponse(BaseModel):
    kind: str  # "finite" | "at_least"
    value: int | None = None   # set when kind == "finite"
    bound: int | None = None   # set when kind == "at_least"; null encodes infinity

    @property
    def text(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.value})"
        return f"AtLeast({'inf' if self.bound is None else self.bound})"


class SolveRequest(BaseModel):
    field: str
    expr: str
    prec: int | None = Field(default=None, description="witness precision; "
                             "defaults to a policy derived from the input")


class ObstructionPayload(BaseModel):
    kind: str  # "non_p_divisible_valuation" | "trace_obstruction"
    exponent: int | None = None
    constant: str | None = None


class SolveResponse(BaseModel):
    status: str  # "solvable" | "unsolvable" | "indeterminate"
    witness: SeriesPayload | None = None
    witness_text: str | None = None
    obstruction: ObstructionPayload | None = None
    needed_prec: int | None = None


class ChooseNRequest(BaseModel):
    field: str
    alpha: str | None = None
    alpha_inv: str | None = None


class ChooseNResponse(BaseModel):
    C: int
    D: int | None = None
    k: int
    N: int

    @property
    def text(self) -> str:
        inner = [f"C: {self.C}"]
        if self.D is not None:
            inner.append(f"D: {self.D}")
        inner += [f"k: {self.k}", f"N: {self.N}"]
        return "{" + ", ".join(inner) + "}"


class CheckRequest(BaseModel):
    field: str
    alpha: str | None = None
    alpha_inv: str | None = None
    m: int
    n: int
    N: int | None = Field(default=None, description="force the multiplier "
                          "instead of choosing it")
    prec: int | None = Field(default=None, description="pin the working "
                             "precision; disables escalation")


class CheckResponse(BaseModel):
    m: int
    n: int
    N: int
    holds: bool


class ScanRequest(BaseModel):
    field: str
    alpha: str | None = None
    alpha_inv: str | None = None
    bound: int
    N: int | None = None
    prec: int | None = None


class ScanResponse(BaseModel):
    bound: int
    checked: int
    mismatches: list[tuple[int, int, bool, bool]]


class DemoRequest(BaseModel):
    bound: int = 10


class DemoFacts(BaseModel):
    equation_solvable_at_2_1: bool
    oracle_1_divides_2: bool
    naive_multiplier_mismatch_at_2_1: bool
    chosen: ChooseNResponse
    rescan_bound: int
    rescan_clean: bool


class DemoResponse(BaseModel):
    field: str
    alpha_inv: str
    facts: DemoFacts
    ok: bool
