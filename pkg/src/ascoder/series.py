"""Truncated Laurent series over a finite field, with certified precision.

A Series stores a sparse map exponent -> nonzero coefficient together with a
precision bound `prec`: every coefficient at an exponent strictly below
`prec` is known (absent means zero), everything at or above `prec` is
unknown.  `prec = INF` marks an exact finite Laurent polynomial.  Every
operation computes the exact precision of its result from the precisions of
its inputs, so valuation reads and equality checks are certificates, never
heuristics.

Two valuations are provided as tri-state values (`Finite` / `AtLeast`): the
usual t-adic valuation, and the least exponent NOT divisible by the field
characteristic that carries a nonzero coefficient.  The latter is the tool
that distinguishes p-th powers: it is infinite exactly on series in t^p.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import MixedFieldsError, ParseError, PrecisionExceededError
from .finite_field import FieldElement, FiniteField

INF = math.inf


@dataclass(frozen=True)
class Finite:
    """A valuation that was actually observed: the exponent is certain."""

    value: int


@dataclass(frozen=True)
class AtLeast:
    """No qualifying exponent below `bound`; beyond it nothing is known.

    `bound == INF` certifies there is no qualifying exponent at all.
    """

    bound: int | float


class NotAPthPower:
    """Marker: a known exponent indivisible by p rules out a p-th root."""

    def __repr__(self):
        return "NotAPthPower"


class IndeterminateAtPrecision:
    """Marker: the known window looks like a p-th power but is truncated."""

    def __repr__(self):
        return "IndeterminateAtPrecision"


NOT_A_PTH_POWER = NotAPthPower()
INDETERMINATE_AT_PRECISION = IndeterminateAtPrecision()


def _dict_mul(a: dict, b: dict, bound, field: FiniteField) -> dict:
    """Sparse convolution of coefficient dicts, dropping exponents >= bound."""
    out: dict[int, FieldElement] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e >= bound:
                continue
            prod = c1 * c2
            cur = out.get(e)
            acc = prod if cur is None else cur + prod
            if acc.is_zero():
                out.pop(e, None)
            else:
                out[e] = acc
    return out


class Series:
    """Sparse truncated Laurent series; immutable after construction."""

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: FiniteField, coeffs, prec=INF):
        if prec != INF and not isinstance(prec, int):
            raise TypeError(f"precision must be an int or INF, got {prec!r}")
        clean: dict[int, FieldElement] = {}
        for e, c in coeffs.items():
            if not isinstance(e, int):
                raise TypeError(f"exponent {e!r} is not an integer")
            elem = field.element(c) if isinstance(c, int) else c
            if elem.field != field:
                raise MixedFieldsError("coefficient from a different field")
            if e < prec and not elem.is_zero():
                clean[e] = elem
        self.field = field
        self.coeffs = clean
        self.prec = prec

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: FiniteField) -> "Series":
        return cls(field, {})

    @classmethod
    def one(cls, field: FiniteField) -> "Series":
        return cls(field, {0: 1})

    @classmethod
    def constant(cls, field: FiniteField, c) -> "Series":
        return cls(field, {0: c})

    @classmethod
    def from_term(cls, field: FiniteField, exponent: int, c) -> "Series":
        return cls(field, {exponent: c})

    # -- ring operations ------------------------------------------------------

    def _same_field(self, other) -> "Series":
        if isinstance(other, (int, FieldElement)):
            return Series.constant(self.field, other)
        if not isinstance(other, Series):
            raise TypeError(f"cannot combine Series with {type(other).__name__}")
        if other.field != self.field:
            raise MixedFieldsError(
                f"series over {self.field} and {other.field} never mix")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e)
            acc = c if cur is None else cur + c
            if acc.is_zero():
                out.pop(e, None)
            else:
                out[e] = acc
        return Series(self.field, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.field, {e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._same_field(other))

    def __rsub__(self, other):
        return self._same_field(other) - self

    def _effective_valuation(self):
        """Lower bound on the valuation: exact if a term is visible."""
        return min(self.coeffs) if self.coeffs else self.prec

    def __mul__(self, other):
        other = self._same_field(other)
        prec = min(self._effective_valuation() + other.prec,
                   other._effective_valuation() + self.prec)
        out = _dict_mul(self.coeffs, other.coeffs, prec, self.field)
        return Series(self.field, out, prec if prec == INF else int(prec))

    __rmul__ = __mul__

    # -- valuations -----------------------------------------------------------

    def valuation(self):
        """t-adic valuation: Finite(least exponent) or AtLeast(prec)."""
        if self.coeffs:
            return Finite(min(self.coeffs))
        return AtLeast(self.prec)

    def coprime_valuation(self):
        """Least exponent not divisible by the characteristic, as a tri-state.

        AtLeast(INF) on an exact series certifies membership in the subfield
        of p-th powers.
        """
        p = self.field.p
        candidates = [e for e in self.coeffs if e % p != 0]
        if candidates:
            return Finite(min(candidates))
        return AtLeast(self.prec)

    # -- precision handling -----------------------------------------------------

    def truncate(self, bound: int) -> "Series":
        """Forget everything at exponents >= bound; lowers prec to bound."""
        return Series(self.field,
                      {e: c for e, c in self.coeffs.items() if e < bound},
                      min(self.prec, bound))

    def agrees_below(self, other, bound: int) -> bool:
        """Coefficient-exact comparison at every exponent < bound."""
        other = self._same_field(other)
        if bound > min(self.prec, other.prec):
            raise PrecisionExceededError(
                f"comparison below {bound} exceeds known precision "
                f"{min(self.prec, other.prec)}")
        for e in set(self.coeffs) | set(other.coeffs):
            if e >= bound:
                continue
            if self.coeffs.get(e) != other.coeffs.get(e):
                return False
        return True

    # -- inversion and powers ---------------------------------------------------

    def inverse(self, target_prec: int | None = None) -> "Series":
        """Multiplicative inverse, known below target_prec.

        The inverse of an exact monomial is exact and needs no target.  For
        anything else the expansion is infinite; the caller names the
        precision, which must satisfy target_prec <= prec - 2*valuation for
        truncated input (coefficients of the inverse up to exponent k depend
        on coefficients of the input up to k + 2*valuation).
        """
        if not self.coeffs:
            if self.prec == INF:
                raise ZeroDivisionError("inverse of the zero series")
            raise PrecisionExceededError(
                "leading coefficient unknown at this precision")
        v = min(self.coeffs)
        lead_inv = self.coeffs[v].inverse()
        if len(self.coeffs) == 1 and self.prec == INF:
            return Series(self.field, {-v: lead_inv})
        if target_prec is None:
            raise ValueError("target_prec is required for a non-monomial inverse")
        if self.prec != INF and target_prec > self.prec - 2 * v:
            raise PrecisionExceededError(
                f"inverse to precision {target_prec} needs input precision "
                f"{target_prec + 2 * v}, have {self.prec}")
        needed = target_prec + v  # precision of the unit-part inverse
        if needed <= 0:
            return Series(self.field, {}, target_prec)
        # Peel the leading monomial, then Newton-double the unit inverse:
        # if u*w = 1 + err mod t^k then u*(w*(2 - u*w)) = 1 - err^2 mod t^2k.
        unit = {e - v: c * lead_inv for e, c in self.coeffs.items() if e - v < needed}
        two = self.field.element(2)
        w = {0: self.field.one()}
        known = 1
        while known < needed:
            known = min(2 * known, needed)
            uw = _dict_mul(unit, w, known, self.field)
            corr = {e: -c for e, c in uw.items() if e != 0}
            head = two - uw.get(0, self.field.zero())
            if not head.is_zero():
                corr[0] = head
            w = _dict_mul(w, corr, known, self.field)
        return Series(self.field,
                      {e - v: lead_inv * c for e, c in w.items()},
                      target_prec)

    def int_pow(self, e: int, target_prec: int | None = None) -> "Series":
        """Integer power by square-and-multiply, inverting first if e < 0.

        target_prec is consumed by the inversion step; positive powers keep
        the precision that multiplication naturally assigns (exact input,
        exact output).
        """
        if e == 0:
            return Series.one(self.field)
        if e < 0:
            k = -e
            if self.prec == INF:
                return self.int_pow(k).inverse(target_prec)
            if not self.coeffs:
                raise PrecisionExceededError(
                    "leading coefficient unknown at this precision")
            if target_prec is None:
                raise ValueError("target_prec is required for negative powers "
                                 "of truncated series")
            v = min(self.coeffs)
            base = self.inverse(target_prec + (k - 1) * v)
            return base.int_pow(k)
        result = None
        base = self
        n = e
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- characteristic-p structure ----------------------------------------------

    def frobenius(self) -> "Series":
        """The p-th power: coefficients to the p, exponents times p."""
        p = self.field.p
        return Series(self.field,
                      {p * e: c.frobenius() for e, c in self.coeffs.items()},
                      self.prec if self.prec == INF else p * self.prec)

    def pth_root(self):
        """Inverse of frobenius when it exists.

        Returns a Series when the input is exact and all exponents are
        divisible by p; NOT_A_PTH_POWER when some known exponent is not;
        INDETERMINATE_AT_PRECISION when a truncated window merely looks like
        a p-th power (the hidden tail could break it).
        """
        p = self.field.p
        if any(e % p != 0 for e in self.coeffs):
            return NOT_A_PTH_POWER
        if self.prec != INF:
            return INDETERMINATE_AT_PRECISION
        return Series(self.field,
                      {e // p: c.frobenius_inverse() for e, c in self.coeffs.items()})

    def split_p_exponents(self) -> tuple["Series", "Series"]:
        """Split into (exponents divisible by p, the rest), both at same prec."""
        p = self.field.p
        div = {e: c for e, c in self.coeffs.items() if e % p == 0}
        rest = {e: c for e, c in self.coeffs.items() if e % p != 0}
        return (Series(self.field, div, self.prec),
                Series(self.field, rest, self.prec))

    # -- comparison and display ----------------------------------------------------

    def is_zero(self) -> bool:
        """True when no known coefficient is nonzero (exact zero iff also exact)."""
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.field == other.field and self.prec == other.prec
                and self.coeffs == other.coeffs)

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"Series({self} over F_{self.field.order})"

    def to_json_dict(self) -> dict:
        return {
            "field": str(self.field),
            "prec": None if self.prec == INF else self.prec,
            "coeffs": [[e, str(c)] for e, c in sorted(self.coeffs.items())],
        }


def series_from_json(obj: dict) -> Series:
    field = FiniteField.parse(obj["field"])
    prec = obj.get("prec")
    coeffs = {int(e): field.element_from_string(c) for e, c in obj["coeffs"]}
    return Series(field, coeffs, INF if prec is None else int(prec))


def format_series(s: Series) -> str:
    """Render in the input grammar; truncation shows as a trailing O(t^k)."""
    terms = []
    for e in sorted(s.coeffs):
        c = s.coeffs[e]
        c_str = str(c)
        if e == 0:
            terms.append(c_str)
            continue
        t_part = "t" if e == 1 else f"t^{e}"
        if c == 1:
            terms.append(t_part)
        elif sum(1 for x in c.coeffs if x != 0) > 1:
            terms.append(f"({c_str})*{t_part}")
        else:
            terms.append(f"{c_str}*{t_part}")
    if s.prec != INF:
        terms.append(f"O(t^{s.prec})")
    if not terms:
        return "0"
    return " + ".join(terms)


# -- parsing ---------------------------------------------------------------------

_SERIES_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|([\^\*\+\-\(\)]))")


class _Parser:
    """Recursive-descent parser for the series grammar.

    expr   := ['-'] term (('+'|'-') term)* ['+' 'O' '(' 't' '^' int ')']
    term   := atom ('*' atom)*
    atom   := INT | 't' ['^' sint] | 'g' ['^' int] | '(' expr ')' ['^' sint]

    Negative exponents are allowed only where the result stays exact, i.e.
    on t itself and on single-monomial subexpressions.
    """

    def __init__(self, text: str, field: FiniteField):
        self.text = text
        self.field = field
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _SERIES_TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos]!r}", pos)
                break
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("sym", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1] or 'end of input'}",
                             tok[2])
        return tok

    def parse_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.next()
            sign = -1
        tok = self.expect("int")
        return sign * int(tok[1])

    def at_order_term(self) -> bool:
        tok = self.peek()
        return (tok[0] == "sym" and tok[1] == "O"
                and self.i + 1 < len(self.tokens)
                and self.tokens[self.i + 1][:2] == ("op", "("))

    def parse_order_term(self) -> int:
        self.expect("sym", "O")
        self.expect("op", "(")
        self.expect("sym", "t")
        self.expect("op", "^")
        bound = self.parse_int()
        self.expect("op", ")")
        return bound

    def parse_atom(self) -> Series:
        tok = self.next()
        kind, value, pos = tok
        if kind == "int":
            base = Series.constant(self.field, int(value))
        elif kind == "sym" and value == "t":
            exp = 1
            if self.peek()[:2] == ("op", "^"):
                self.next()
                exp = self.parse_int()
            return Series.from_term(self.field, exp, 1)
        elif kind == "sym" and value == "g":
            if self.field.degree == 1:
                raise ParseError("generator symbol g is not defined in a prime field",
                                 pos)
            g = self.field.generator()
            if self.peek()[:2] == ("op", "^"):
                self.next()
                k = self.parse_int()
                if k < 0:
                    g = g.inverse()
                    k = -k
                return Series.constant(self.field, g**k)
            return Series.constant(self.field, g)
        elif kind == "op" and value == "(":
            base = self.parse_expr()
            self.expect("op", ")")
        else:
            raise ParseError(f"unexpected {value!r}", pos)
        if self.peek()[:2] == ("op", "^"):
            self.next()
            exp_pos = self.peek()[2]
            k = self.parse_int()
            if k < 0 and len(base.coeffs) != 1:
                raise ParseError("negative exponent needs a monomial base", exp_pos)
            try:
                return base.int_pow(k)
            except ZeroDivisionError:
                raise ParseError("negative power of zero", exp_pos) from None
        return base

    def parse_term(self) -> Series:
        acc = self.parse_atom()
        while self.peek()[:2] == ("op", "*"):
            self.next()
            acc = acc * self.parse_atom()
        return acc

    def parse_expr(self) -> Series:
        negate = False
        if self.peek()[:2] == ("op", "-"):
            self.next()
            negate = True
        if self.at_order_term():
            raise ParseError("precision marker cannot start an expression",
                             self.peek()[2])
        acc = self.parse_term()
        if negate:
            acc = -acc
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.next()[1]
            if op == "+" and self.at_order_term():
                bound = self.parse_order_term()
                return acc.truncate(bound)
            term = self.parse_term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse(self) -> Series:
        if not self.tokens:
            raise ParseError("empty series expression", 0)
        if self.at_order_term():
            bound = self.parse_order_term()
            result = Series(self.field, {}, bound)
        else:
            result = self.parse_expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return result


def parse_series(text: str, field: FiniteField) -> Series:
    """Parse the series grammar over the given field; literals are exact."""
    return _Parser(text, field).parse()
