"""Exact arithmetic in finite fields F_q = F_p[x]/(f).

A field is described by its characteristic p and, for extension fields, a
monic irreducible modulus over F_p.  Elements are coefficient vectors over
F_p in the power basis of the generator.  Everything is immutable and every
operation is a pure function, so values are safe to share across threads.

Besides the ring operations the module provides the Frobenius automorphism
x -> x^p and its inverse, the trace down to F_p, and a solver for constant
Artin-Schreier equations e^p - e = c (solvable exactly when the trace of c
vanishes; the returned solution is canonical).
"""

from __future__ import annotations

import re

from .errors import MixedFieldsError, ParseError

MAX_CHARACTERISTIC = 2**31
MAX_ORDER = 2**63

# Irreducible moduli (little-endian coefficient tuples) for the small
# extension fields used throughout the test suite.
_MODULUS_TABLE: dict[int, tuple[int, tuple[int, ...]]] = {
    4: (2, (1, 1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),     # x^3 + x + 1
    9: (3, (1, 0, 1)),        # x^2 + 1
    25: (5, (2, 0, 1)),       # x^2 + 2
    27: (3, (1, 2, 0, 1)),    # x^3 + 2x + 1
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial arithmetic over F_p (little-endian int tuples) --------------

def _poly_trim(c: list[int]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                       for i in range(n)])


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                       for i in range(n)])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_rem(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c == 0:
            continue
        for j in range(dm + 1):
            a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(a[:dm])


def _poly_mulmod(a, b, m, p):
    return _poly_rem(_poly_mul(a, b, p), m, p)


def _poly_powmod(a, e, m, p):
    result = (1,)
    base = _poly_rem(a, m, p)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    while b:
        lead_inv = pow(b[-1], p - 2, p) if p > 2 else b[-1]
        b_monic = tuple((c * lead_inv) % p for c in b)
        a, b = b, _poly_rem(a, b_monic, p)
    return a


def _poly_invmod(a, m, p):
    """Inverse of a modulo the monic irreducible m (extended Euclid)."""
    if not a:
        raise ZeroDivisionError("inverse of zero in finite field")
    r0, r1 = m, a
    s0, s1 = (), (1,)
    while r1:
        lead = r1[-1]
        lead_inv = pow(lead, p - 2, p)
        # divide r0 by r1: repeated leading-term elimination
        q = [0] * (max(len(r0) - len(r1) + 1, 1))
        r = list(r0)
        while len(r) >= len(r1) and _poly_trim(r):
            r = list(_poly_trim(r))
            if len(r) < len(r1):
                break
            shift = len(r) - len(r1)
            factor = (r[-1] * lead_inv) % p
            q[shift] = (q[shift] + factor) % p
            for j, c in enumerate(r1):
                r[shift + j] = (r[shift + j] - factor * c) % p
        qt = _poly_trim(q)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub(s0, _poly_mul(qt, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
    scale = pow(r0[0], p - 2, p)
    return _poly_trim([(c * scale) % p for c in s0])


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Rabin's deterministic irreducibility test for monic m over F_p."""
    n = len(m) - 1
    if n < 1:
        return False
    x = (0, 1)
    powers = [x]
    cur = x
    for _ in range(n):
        cur = _poly_powmod(cur, p, m, p)
        powers.append(cur)
    if powers[n] != _poly_rem(x, m, p):
        return False
    for r in _prime_factors(n):
        d = _poly_gcd(_poly_sub(powers[n // r], x, p), m, p)
        if len(d) != 1:
            return False
    return True


# -- symbol-polynomial text format ------------------------------------------

_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_FACTOR_RE = re.compile(
    r"^\s*(?:(\d+)|([a-zA-Z])(?:\s*\^\s*(\d+))?)\s*$"
)


def _parse_symbol_poly(text: str, symbol: str, p: int) -> tuple[int, ...]:
    """Parse e.g. 'x^2+2*x+1' into little-endian coefficients mod p."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or (not first and m.group(1) == ""):
            raise ParseError("expected term", pos)
        sign = -1 if m.group(1) == "-" else 1
        coeff, exp = 1, 0
        saw_symbol = False
        saw_coeff = False
        for part in m.group(2).split("*"):
            fm = _FACTOR_RE.match(part)
            if fm is None:
                raise ParseError(f"bad factor {part.strip()!r}", pos)
            if fm.group(1) is not None:
                coeff = (coeff * int(fm.group(1))) % p
                saw_coeff = True
            else:
                if fm.group(2) != symbol:
                    raise ParseError(f"unexpected symbol {fm.group(2)!r}", pos)
                if saw_symbol:
                    raise ParseError("repeated symbol in term", pos)
                saw_symbol = True
                exp = int(fm.group(3)) if fm.group(3) else 1
        if not (saw_symbol or saw_coeff):
            raise ParseError("empty term", pos)
        coeffs[exp] = (coeffs.get(exp, 0) + sign * coeff) % p
        pos = m.end()
        first = False
    degree = max(coeffs) if coeffs else 0
    return _poly_trim([coeffs.get(i, 0) for i in range(degree + 1)])


def _format_symbol_poly(coeffs: tuple[int, ...], symbol: str) -> str:
    terms = []
    for exp in range(len(coeffs) - 1, -1, -1):
        c = coeffs[exp]
        if c == 0:
            continue
        if exp == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            tail = symbol if exp == 1 else f"{symbol}^{exp}"
            terms.append(head + tail)
    return "+".join(terms) if terms else "0"


class FiniteField:
    """The finite field F_q = F_p[x]/(modulus), q = p^degree.

    For degree 1 the modulus is fixed to x and elements are residues mod p.
    For larger degrees the caller supplies the monic irreducible modulus
    (little-endian coefficients); `of_order` knows the handful of small
    fields used in tests.  Two FiniteField instances compare equal exactly
    when characteristic and modulus agree.
    """

    __slots__ = ("p", "degree", "modulus", "order", "_theta")

    def __init__(self, p: int, modulus: tuple[int, ...] | list[int] | None = None):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"characteristic {p!r} is not prime")
        if p > MAX_CHARACTERISTIC:
            raise ValueError(f"characteristic {p} exceeds 2^31")
        self.p = p
        if modulus is None or len(_poly_trim(list(modulus))) <= 2:
            self.degree = 1
            self.modulus = (0, 1)
        else:
            coeffs = tuple(c % p for c in modulus)
            coeffs = _poly_trim(list(coeffs))
            if coeffs[-1] != 1:
                raise ValueError("modulus must be monic")
            if not _is_irreducible(coeffs, p):
                raise ValueError("modulus is not irreducible over F_p")
            self.degree = len(coeffs) - 1
            self.modulus = coeffs
        self.order = p**self.degree
        if self.order > MAX_ORDER:
            raise ValueError(f"field order {self.order} exceeds 2^63")
        self._theta = None

    @classmethod
    def of_order(cls, q: int) -> "FiniteField":
        """Field of order q: any prime, or one of the tabled small powers."""
        if q in _MODULUS_TABLE:
            p, modulus = _MODULUS_TABLE[q]
            return cls(p, modulus)
        if _is_prime(q):
            return cls(q)
        raise ValueError(f"no built-in modulus for order {q}; pass one explicitly")

    @classmethod
    def parse(cls, text: str) -> "FiniteField":
        """Parse a field description: 'p' or 'p^n/modulus', e.g. '3^2/x^2+1'."""
        text = text.strip()
        head, sep, mod_text = text.partition("/")
        base, _, exp = head.partition("^")
        try:
            p = int(base)
            n = int(exp) if exp else 1
        except ValueError:
            raise ParseError(f"bad field description {text!r}") from None
        if n == 1 and not sep:
            return cls(p)
        if not sep:
            raise ParseError(f"extension field {head!r} needs an explicit modulus")
        if not _is_prime(p):
            raise ParseError(f"characteristic {p} is not prime")
        modulus = _parse_symbol_poly(mod_text, "x", p)
        if len(modulus) - 1 != n:
            raise ParseError(
                f"modulus degree {len(modulus) - 1} does not match exponent {n}")
        return cls(p, modulus)

    def __str__(self) -> str:
        if self.degree == 1:
            return str(self.p)
        return f"{self.p}^{self.degree}/{_format_symbol_poly(self.modulus, 'x')}"

    def __repr__(self) -> str:
        return f"FiniteField({self})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return self.p == other.p and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    # -- element constructors -----------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        """Element from an int (constant) or a coefficient sequence."""
        if isinstance(coeffs, FieldElement):
            if coeffs.field != self:
                raise MixedFieldsError("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            vec = [coeffs % self.p] + [0] * (self.degree - 1)
        else:
            vec = [c % self.p for c in coeffs]
            if len(vec) > self.degree:
                raise ValueError(f"coefficient vector longer than degree {self.degree}")
            vec += [0] * (self.degree - len(vec))
        return FieldElement(self, tuple(vec))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def generator(self) -> "FieldElement":
        if self.degree == 1:
            raise ValueError("prime field has no extension generator")
        return self.element((0, 1))

    def elements(self):
        """Iterate all q elements (ascending lexicographic coefficient order)."""
        vec = [0] * self.degree
        while True:
            yield FieldElement(self, tuple(vec))
            i = 0
            while i < self.degree:
                vec[i] += 1
                if vec[i] < self.p:
                    break
                vec[i] = 0
                i += 1
            else:
                return

    def random_element(self, rng) -> "FieldElement":
        return FieldElement(
            self, tuple(rng.randrange(self.p) for _ in range(self.degree)))

    def element_from_string(self, text: str) -> "FieldElement":
        """Parse element text: a residue for prime fields, else e.g. 'g^2+2*g+1'."""
        text = text.strip()
        if self.degree == 1:
            try:
                return self.element(int(text))
            except ValueError:
                raise ParseError(f"bad residue {text!r}") from None
        return self.element(_parse_symbol_poly(text, "g", self.p))

    # -- constant Artin-Schreier equations ----------------------------------

    def _trace_one(self) -> "FieldElement":
        """Some fixed element of trace 1 (the trace form is surjective)."""
        if self._theta is None:
            for i in range(self.degree):
                b = self.element([0] * i + [1])
                t = b.trace()
                if t != 0:
                    self._theta = b * self.element(pow(t, self.p - 2, self.p))
                    break
        return self._theta

    def solve_artin_schreier_constant(self, c: "FieldElement"):
        """Solve e^p - e = c in this field, or return None.

        A solution exists iff trace(c) = 0; the solution set is then a coset
        of F_p.  The canonical representative returned here is the one with
        zero constant coordinate, i.e. the lexicographically least
        coefficient vector of the coset.
        """
        if c.field != self:
            raise MixedFieldsError("constant belongs to a different field")
        if c.trace() != 0:
            return None
        if self.degree == 1:
            return self.zero()
        # Additive Hilbert 90: with theta of trace 1 and partial traces
        # s_0 = 0, s_{i+1} = s_i^p + c, the sum e0 = sum_i s_i * theta^(p^i)
        # satisfies e0^p - e0 = -c, so -e0 solves the equation for +c.
        theta = self._trace_one()
        s = self.zero()
        theta_pow = theta
        e0 = self.zero()
        for _ in range(self.degree):
            e0 = e0 + s * theta_pow
            s = s.frobenius() + c
            theta_pow = theta_pow.frobenius()
        e = -e0
        return e - self.element(e.coeffs[0])


class FieldElement:
    """An element of a FiniteField: an immutable coefficient vector mod p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _same_field(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.element(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise MixedFieldsError(
                f"elements of {self.field} and {other.field} never mix")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        p = self.field.p
        return FieldElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same_field(other)
        p = self.field.p
        return FieldElement(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._same_field(other) - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._same_field(other)
        f = self.field
        prod = _poly_mulmod(self.coeffs, other.coeffs, f.modulus, f.p)
        return f.element(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._same_field(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_zero():
            return f.one() if e == 0 else f.zero()
        e %= f.order - 1
        return f.element(_poly_powmod(self.coeffs, e, f.modulus, f.p))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in finite field")
        f = self.field
        return f.element(_poly_invmod(_poly_trim(list(self.coeffs)), f.modulus, f.p))

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def frobenius_inverse(self) -> "FieldElement":
        # Frobenius has order `degree` on F_q, so its inverse is x^(p^(n-1)).
        return self ** (self.field.p ** (self.field.degree - 1))

    def trace(self) -> int:
        """Trace down to F_p, returned as an integer residue in [0, p)."""
        acc = self
        cur = self
        for _ in range(self.field.degree - 1):
            cur = cur.frobenius()
            acc = acc + cur
        return acc.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        if self.field.degree == 1:
            return str(self.coeffs[0])
        return _format_symbol_poly(self.coeffs, "g")

    def __repr__(self) -> str:
        return f"<{self} in F_{self.field.order}>"
