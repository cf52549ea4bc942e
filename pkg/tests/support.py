"""Shared helpers for the test suite: standard fields, random generators,
and small brute-force oracles that are independent of the code under test."""

from __future__ import annotations

import itertools
import random

from ascoder.finite_field import FieldElement, FiniteField
from ascoder.series import INF, Series


def standard_fields() -> dict[int, FiniteField]:
    return {q: FiniteField.of_order(q) for q in (2, 3, 4, 9)}


def random_series(field: FiniteField, rng: random.Random,
                  min_exp: int = -8, max_exp: int = 8, max_terms: int = 6,
                  truncated: bool | None = None) -> Series:
    """Random sparse series; truncated=None mixes exact and truncated."""
    n_terms = rng.randint(0, max_terms)
    coeffs = {}
    for _ in range(n_terms):
        e = rng.randint(min_exp, max_exp)
        c = random_nonzero_element(field, rng)
        coeffs[e] = c
    if truncated is None:
        truncated = rng.random() < 0.5
    prec = rng.randint(max_exp + 1, max_exp + 12) if truncated else INF
    return Series(field, coeffs, prec)


def random_nonzero_element(field: FiniteField, rng: random.Random) -> FieldElement:
    while True:
        x = field.random_element(rng)
        if not x.is_zero():
            return x


def min_precision(*series: Series):
    return min(s.prec for s in series)


def assert_agree(a: Series, b: Series, msg: str = ""):
    """Equality at the precision both sides certify."""
    bound = min(a.prec, b.prec)
    if bound == INF:
        assert a == b, msg or f"{a} != {b}"
    else:
        assert a.agrees_below(b, int(bound)), msg or f"{a} != {b} below {bound}"


# -- brute-force oracles -----------------------------------------------------

def const_as_solutions(field: FiniteField, c: FieldElement) -> list[FieldElement]:
    """All e with e^p - e = c, by enumeration of the whole field."""
    p = field.p
    return [e for e in field.elements() if e**p - e == c]


def series_window_key(s: Series, lo: int, hi: int) -> tuple:
    """Canonical fingerprint of the coefficients on [lo, hi)."""
    return tuple(s.coeffs.get(e, s.field.zero()).coeffs for e in range(lo, hi))


def enumerate_support_series(field: FiniteField, exponents: list[int],
                             max_nonzero: int):
    """All exact series supported on the given exponents with a bounded
    number of nonzero coefficients."""
    nonzero = [e for e in field.elements() if not e.is_zero()]
    for k in range(max_nonzero + 1):
        for support in itertools.combinations(exponents, k):
            for values in itertools.product(nonzero, repeat=k):
                yield Series(field, dict(zip(support, values)))


def artin_schreier_image_table(field: FiniteField, cand_lo: int, cand_hi: int,
                               cmp_lo: int, cmp_hi: int):
    """Map from coefficient window of w^p - w to the list of witnesses w.

    Enumerates every exact series w supported on [cand_lo, cand_hi) and
    fingerprints w^p - w on [cmp_lo, cmp_hi).  An exact polynomial x with
    support inside the comparison window is solvable iff its fingerprint
    appears: matching below the window's top leaves a remainder of positive
    valuation, which is always in the image.
    """
    table: dict[tuple, list[Series]] = {}
    exps = list(range(cand_lo, cand_hi))
    all_values = list(field.elements())
    for values in itertools.product(all_values, repeat=len(exps)):
        coeffs = {e: v for e, v in zip(exps, values) if not v.is_zero()}
        w = Series(field, coeffs)
        image = w.frobenius() - w
        key = series_window_key(image, cmp_lo, cmp_hi)
        table.setdefault(key, []).append(w)
    return table
