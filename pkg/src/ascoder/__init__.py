"""Exact Laurent-series arithmetic over finite fields with an
Artin-Schreier solvability decider and existential coding of p-divisibility."""

__version__ = "0.1.0"

from .artin_schreier import (Indeterminate, NonPDivisibleValuation, Solvable,
                             TraceObstruction, Unsolvable, solve, verify)
from .errors import (AscoderError, DomainError, MixedFieldsError, ParseError,
                     PrecisionCapError, PrecisionExceededError)
from .finite_field import FieldElement, FiniteField
from .pdivision import (Anchor, CodingParams, ScanReport, check_pair,
                        choose_n, divisibility_witness, p_divides, scan,
                        strip_pth_powers)
from .series import (INF, AtLeast, Finite, IndeterminateAtPrecision,
                     NotAPthPower, Series, format_series, parse_series,
                     series_from_json)

__all__ = [
    "__version__",
    "AscoderError", "DomainError", "MixedFieldsError", "ParseError",
    "PrecisionCapError", "PrecisionExceededError",
    "FiniteField", "FieldElement",
    "INF", "Series", "Finite", "AtLeast", "NotAPthPower",
    "IndeterminateAtPrecision", "parse_series", "format_series",
    "series_from_json",
    "solve", "verify", "Solvable", "Unsolvable", "Indeterminate",
    "NonPDivisibleValuation", "TraceObstruction",
    "p_divides", "divisibility_witness", "strip_pth_powers", "choose_n",
    "check_pair", "scan", "Anchor", "CodingParams", "ScanReport",
]
