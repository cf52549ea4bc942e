"""Decide solvability of a^p - a = x over the Laurent series field.

The image of the additive map a -> a^p - a is cut out by two obstructions:

* a negative-exponent coefficient whose exponent is not divisible by p can
  never be produced (the p-th power of a pole sits at a p-divisible
  exponent, and the subtracted a cannot reach below its own pole);
* the constant coefficient must have zero trace, because the constant part
  of a^p - a is the image of the residue field's own Artin-Schreier map.

Everything of positive valuation is always in the image via the convergent
sum -(x + x^p + x^{p^2} + ...).  The solver runs these three phases in
order, building a canonical witness as it goes; any other witness differs
from the canonical one by an additive constant in F_p.

The verdict only needs the coefficients at exponents <= 0, so an input
whose precision does not cover exponent 0 yields Indeterminate rather than
a guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PrecisionExceededError
from .finite_field import FieldElement
from .series import INF, Finite, Series


@dataclass(frozen=True)
class NonPDivisibleValuation:
    """Reduction got stuck at a negative exponent not divisible by p."""

    exponent: int


@dataclass(frozen=True)
class TraceObstruction:
    """The residual constant term has nonzero trace."""

    constant: FieldElement


@dataclass(frozen=True)
class Solvable:
    witness: Series


@dataclass(frozen=True)
class Unsolvable:
    reason: NonPDivisibleValuation | TraceObstruction


@dataclass(frozen=True)
class Indeterminate:
    """Input precision does not cover exponent 0; supply at least this much."""

    needed_prec: int


ASOutcome = Solvable | Unsolvable | Indeterminate


def solve(x: Series, witness_prec: int = 64) -> ASOutcome:
    """Solve a^p - a = x, returning a canonical witness known below witness_prec.

    The witness is exact whenever the reduction terminates on an exact
    input; otherwise its coefficients are certified below witness_prec.
    Raises PrecisionExceededError when a truncated input cannot support the
    requested witness precision.
    """
    field = x.field
    p = field.p
    if x.prec != INF and x.prec <= 0:
        return Indeterminate(needed_prec=1)
    if x.prec != INF and witness_prec > x.prec:
        raise PrecisionExceededError(
            f"witness precision {witness_prec} exceeds input precision {x.prec}")

    witness = Series.zero(field)
    rem = x

    # Phase 1: clear the pole part.  Each step replaces the leading term
    # c*t^v (p | v < 0) by the tail of (b^p - b) for b = c^(1/p) * t^(v/p),
    # strictly raising the valuation, so this terminates.
    while True:
        val = rem.valuation()
        if not isinstance(val, Finite) or val.value >= 0:
            break
        v = val.value
        if v % p != 0:
            return Unsolvable(NonPDivisibleValuation(v))
        b = Series.from_term(field, v // p, rem.coeffs[v].frobenius_inverse())
        witness = witness + b
        rem = rem - (b.frobenius() - b)

    # Phase 2: the constant term lives in the residue field.
    c0 = rem.coeffs.get(0, field.zero())
    if c0.trace() != 0:
        return Unsolvable(TraceObstruction(c0))
    e = field.solve_artin_schreier_constant(c0)
    if not e.is_zero():
        witness = witness + Series.constant(field, e)
    if not c0.is_zero():
        rem = rem - Series.constant(field, c0)

    # Phase 3: positive-valuation tail via -(rem + rem^p + rem^{p^2} + ...);
    # terms whose valuation reaches witness_prec contribute nothing below it,
    # but dropping them caps the witness precision.
    tail = rem
    dropped_tail = False
    while True:
        val = tail.valuation()
        if not isinstance(val, Finite):
            break
        if val.value >= witness_prec:
            dropped_tail = True
            break
        witness = witness - tail.truncate(witness_prec)
        tail = tail.frobenius()

    if dropped_tail or x.prec != INF:
        witness = witness.truncate(witness_prec)
    return Solvable(witness)


def verify(witness: Series, x: Series, bound: int) -> bool:
    """Check witness^p - witness = x at every exponent < bound.

    The left side is known below min(p*prec, prec) of the witness; asking
    beyond what either side knows raises PrecisionExceededError.
    """
    lhs = witness.frobenius() - witness
    return lhs.agrees_below(x, bound)
