"""Existential coding of p-divisibility inside the Laurent series field.

`n` p-divides `m` when m = n * p^k for some k >= 0.  For a series alpha of
positive valuation this arithmetic relation is mirrored by solvability of
an Artin-Schreier equation:

    n |_p m   <=>   m >= n  and  alpha^(-mN) - alpha^(-nN) = a^p - a solvable,

for a suitable positive multiplier N coprime to p.  When the valuation of
alpha (after stripping p-th powers) is itself coprime to p, N = 1 works.
When p divides it, a too-small N admits false positives; the correct bound
comes from the least non-p-divisible exponent D of the inverse: N must be
the smallest p-coprime integer with N > D/C + 1, C the valuation.

`choose_n` computes these parameters from either presentation of alpha (the
element itself, or its inverse, as an exact Laurent polynomial); `check_pair`
evaluates the coded relation for one (m, n); `scan` sweeps a box and
cross-validates against the direct arithmetic oracle `p_divides`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .artin_schreier import Solvable, solve
from .errors import DomainError, PrecisionCapError, PrecisionExceededError
from .finite_field import FiniteField
from .series import INF, Finite, Series

PRECISION_GUARD = 64
PRECISION_CAP = 1 << 20


def p_divides(p: int, n: int, m: int) -> bool:
    """True iff m = n * p^k for some k >= 0 (both m, n positive)."""
    if n <= 0 or m <= 0:
        raise DomainError(f"p-divisibility is defined for positive integers, "
                          f"got n={n}, m={m}")
    if m % n != 0:
        return False
    q = m // n
    while q % p == 0:
        q //= p
    return q == 1


def divisibility_witness(alpha: Series, n: int, k: int,
                         witness_prec: int | None = None) -> Series:
    """The explicit witness for alpha^(-n*p^k) - alpha^(-n) = a^p - a.

    It is the geometric chain alpha^(-n*p^(k-1)) + ... + alpha^(-n): applying
    frobenius shifts the chain by one step, so the difference telescopes.
    k = 0 yields the empty sum.
    """
    if n <= 0 or k < 0:
        raise DomainError(f"need n > 0 and k >= 0, got n={n}, k={k}")
    val = alpha.valuation()
    if not isinstance(val, Finite) or val.value <= 0:
        raise DomainError("witness construction needs positive valuation")
    p = alpha.field.p
    acc = Series.zero(alpha.field)
    for j in range(k):
        acc = acc + alpha.int_pow(-n * p**j, witness_prec)
    return acc


def _strip_roots(x: Series) -> tuple[Series, int]:
    """Write exact x as y^(p^k) with y not a p-th power; works for any sign."""
    k = 0
    while True:
        root = x.pth_root()
        if not isinstance(root, Series):
            return x, k
        x = root
        k += 1


def strip_pth_powers(alpha: Series) -> tuple[Series, int]:
    """Maximal p-th-root extraction of an exact series of positive valuation."""
    if alpha.prec != INF:
        raise DomainError("p-th power structure is undecidable on truncated input")
    val = alpha.valuation()
    if not isinstance(val, Finite) or val.value <= 0:
        raise DomainError("positive valuation required")
    return _strip_roots(alpha)


@dataclass(frozen=True)
class Anchor:
    """An element of positive valuation, pinned by an exact presentation.

    Exactly one of `direct` (the element itself) or `inverse` (its
    reciprocal) is stored as an exact Laurent polynomial; negative powers of
    the element are positive powers of `inverse`, or exact powering followed
    by one series inversion when only `direct` is available.
    """

    field: FiniteField
    direct: Series | None = None
    inverse: Series | None = None

    def __post_init__(self):
        given = self.direct if self.direct is not None else self.inverse
        if given is None:
            raise DomainError("anchor needs a series")
        if given.prec != INF:
            raise DomainError("anchor presentation must be exact")
        if given.is_zero():
            raise DomainError("anchor must be nonzero")

    def valuation(self) -> int:
        """Valuation of the element itself (positive for a coding anchor)."""
        if self.direct is not None:
            return min(self.direct.coeffs)
        return -min(self.inverse.coeffs)

    def neg_power(self, j: int, prec: int) -> Series:
        """The element to the power -j (j >= 0), known below prec (or exact)."""
        if j == 0:
            return Series.one(self.field)
        if self.inverse is not None:
            return self.inverse.int_pow(j)
        return self.direct.int_pow(-j, prec)

    def strip(self) -> tuple["Anchor", int]:
        """Both presentations strip roots in lockstep: x = y^(p^k) iff
        1/x = (1/y)^(p^k), so the exact side carries the extraction."""
        if self.direct is not None:
            root, k = _strip_roots(self.direct)
            return Anchor(self.field, direct=root), k
        root, k = _strip_roots(self.inverse)
        return Anchor(self.field, inverse=root), k

    def inverse_coprime_valuation(self) -> int:
        """Least non-p-divisible exponent of the element's reciprocal.

        Directly readable when the reciprocal is the exact side; otherwise
        found by expanding it under doubling precision.  Termination needs
        the element not to be a p-th power (then neither is the reciprocal,
        so a qualifying exponent exists).
        """
        if self.inverse is not None:
            got = self.inverse.coprime_valuation()
            if isinstance(got, Finite):
                return got.value
            raise DomainError("reciprocal is a p-th power; no qualifying exponent")
        hinted = self.direct.coprime_valuation()
        hint = abs(hinted.value) if isinstance(hinted, Finite) else 0
        prec = hint + 2 * abs(self.valuation()) + PRECISION_GUARD
        while True:
            got = self.direct.int_pow(-1, prec).coprime_valuation()
            if isinstance(got, Finite):
                return got.value
            if prec >= PRECISION_CAP:
                raise PrecisionCapError(
                    f"no qualifying exponent of the reciprocal below {prec}")
            prec = min(2 * prec, PRECISION_CAP)


@dataclass(frozen=True)
class CodingParams:
    """Everything needed to evaluate the coded relation for one anchor.

    alpha = beta^(p^k) with beta not a p-th power; C is the valuation of
    beta; D is the least non-p-divisible exponent of 1/beta, present exactly
    when p divides C; N is the chosen multiplier (1 in the coprime case,
    else the smallest p-coprime integer exceeding D/C + 1).
    """

    field: FiniteField
    alpha: Anchor
    beta: Anchor
    k: int
    C: int
    D: int | None
    N: int

    def with_multiplier(self, N: int) -> "CodingParams":
        """Same anchor with a forced N (e.g. to demonstrate a false positive)."""
        if N <= 0:
            raise DomainError(f"multiplier must be positive, got {N}")
        return replace(self, N=N)


def choose_n(alpha: Series | None = None,
             alpha_inv: Series | None = None) -> CodingParams:
    """Select the multiplier N for the given anchor (either presentation).

    Strips p-th powers first; then N = 1 when the reduced valuation C is
    coprime to p, else the smallest p-coprime N with N*C > D + C, where D is
    the least non-p-divisible exponent of the reduced reciprocal.
    """
    if (alpha is None) == (alpha_inv is None):
        raise DomainError("provide exactly one of alpha, alpha_inv")
    if alpha is not None:
        anchor = Anchor(alpha.field, direct=alpha)
    else:
        anchor = Anchor(alpha_inv.field, inverse=alpha_inv)
    if anchor.valuation() <= 0:
        raise DomainError("the anchor element must have positive valuation")
    beta, k = anchor.strip()
    p = anchor.field.p
    C = beta.valuation()
    if C % p != 0:
        return CodingParams(anchor.field, anchor, beta, k, C, None, 1)
    D = beta.inverse_coprime_valuation()
    N = 1
    while N % p == 0 or N * C <= D + C:
        N += 1
    return CodingParams(anchor.field, anchor, beta, k, C, D, N)


def _solve_pair(params: CodingParams, m: int, n: int,
                powers: dict[int, Series] | None = None,
                prec: int | None = None, pinned: bool = False) -> bool:
    """Solvability of alpha^(-mN) - alpha^(-nN) = a^p - a, assuming m >= n.

    The verdict depends only on coefficients at exponents <= 0, which any
    working precision >= 1 pins down exactly, so escalation can only be
    triggered by the power computations themselves.  A pinned precision
    turns a shortfall into a hard error instead of escalating.
    """
    if prec is None:
        prec = 2 * m * params.N * params.alpha.valuation() + PRECISION_GUARD
    while True:
        try:
            am = _neg_power(params, m * params.N, prec, powers)
            an = _neg_power(params, n * params.N, prec, powers)
            outcome = solve(am - an, witness_prec=1)
            return isinstance(outcome, Solvable)
        except PrecisionExceededError:
            if pinned:
                raise
        if prec >= PRECISION_CAP:
            raise PrecisionCapError(f"verdict for (m={m}, n={n}) undecided below "
                                    f"precision {prec}")
        prec = min(2 * prec, PRECISION_CAP)


def _neg_power(params: CodingParams, j: int, prec: int,
               powers: dict[int, Series] | None) -> Series:
    if powers is None:
        return params.alpha.neg_power(j, prec)
    got = powers.get(j)
    if got is None or (got.prec != INF and got.prec < prec):
        got = params.alpha.neg_power(j, prec)
        powers[j] = got
    return got


def check_pair(params: CodingParams, m: int, n: int,
               prec: int | None = None) -> bool:
    """Evaluate the coded relation at one pair: m >= n and the equation solves.

    An explicit prec pins the working precision and disables escalation.
    """
    if m <= 0 or n <= 0:
        raise DomainError(f"pairs must be positive, got m={m}, n={n}")
    if m < n:
        return False
    return _solve_pair(params, m, n, prec=prec, pinned=prec is not None)


@dataclass(frozen=True)
class ScanReport:
    """Comparison of the coded relation against the arithmetic oracle."""

    bound: int
    checked: int
    mismatches: tuple[tuple[int, int, bool, bool], ...]

    @property
    def clean(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound,
            "checked": self.checked,
            "mismatches": [list(row) for row in self.mismatches],
        }


def scan(params: CodingParams, bound: int, prec: int | None = None) -> ScanReport:
    """Compare coding vs oracle on all 1 <= m, n <= bound.

    Mismatch rows are (m, n, coding verdict, oracle verdict), sorted.
    Negative powers of the anchor are cached across pairs; the verdict for
    each pair is identical to an isolated check_pair call.  An explicit prec
    pins the working precision and disables escalation.
    """
    if bound < 1:
        raise DomainError(f"bound must be >= 1, got {bound}")
    p = params.field.p
    pinned = prec is not None
    if prec is None:
        prec = 2 * bound * params.N * params.alpha.valuation() + PRECISION_GUARD
    powers: dict[int, Series] = {}
    mismatches = []
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            oracle = p_divides(p, n, m)
            if m < n:
                coded = False
            else:
                coded = _solve_pair(params, m, n, powers, prec=prec, pinned=pinned)
            if coded != oracle:
                mismatches.append((m, n, coded, oracle))
    return ScanReport(bound, bound * bound, tuple(sorted(mismatches)))
