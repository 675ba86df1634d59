"""Graded multivariate polynomials over an exact field.

A polynomial is a finite map monomial -> coefficient with no zero
coefficients stored; the zero polynomial is the empty map.  Monomials are
dense exponent tuples (the rings in scope have at most a handful of
variables).  Values are immutable after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import QQ, PrimeField
from .orders import GREVLEX, MonomialOrder, monomial_degree, monomial_mul


class RingMismatchError(ValueError):
    pass


class InhomogeneousError(ValueError):
    pass


class _Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


#: homogeneous_degree() of the zero polynomial: compatible with any degree.
ANY_DEGREE = _Sentinel("ANY_DEGREE")
#: homogeneous_degree() of a polynomial with terms in several degrees.
INHOMOGENEOUS = _Sentinel("INHOMOGENEOUS")


class PolynomialRing:
    """Ambient polynomial ring S = k[x1..xn] with a fixed monomial order."""

    def __init__(self, field, variables, order: str = GREVLEX):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("repeated variable names")
        self.nvars = len(self.variables)
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        self._var_index = {v: i for i, v in enumerate(self.variables)}

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one()})

    def constant(self, c) -> "Polynomial":
        c = self._coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name_or_index) -> "Polynomial":
        if isinstance(name_or_index, str):
            idx = self._var_index[name_or_index]
        else:
            idx = name_or_index
        mon = tuple(1 if i == idx else 0 for i in range(self.nvars))
        return Polynomial(self, {mon: self.field.one()})

    def monomial(self, exponents, coeff=None) -> "Polynomial":
        mon = tuple(exponents)
        if len(mon) != self.nvars:
            raise RingMismatchError("wrong exponent vector length")
        c = self.field.one() if coeff is None else self._coerce(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {mon: c})

    def _coerce(self, c):
        if isinstance(c, bool):
            raise TypeError("bool is not a coefficient")
        if isinstance(c, int):
            return self.field.from_int(c)
        if isinstance(c, Fraction):
            if self.field is QQ or self.field == QQ:
                return c
            return self.field.from_int(c.numerator, c.denominator)
        return c

    def from_string(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and other.field == self.field
            and other.variables == self.variables
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order.kind))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}]"


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return ANY_DEGREE
        return max(monomial_degree(m) for m in self.terms)

    def homogeneous_degree(self):
        """Common degree of all terms, ANY_DEGREE for 0, else INHOMOGENEOUS."""
        if not self.terms:
            return ANY_DEGREE
        degs = {monomial_degree(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return INHOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not INHOMOGENEOUS

    def lead_term(self):
        """(monomial, coeff) maximal in the ring order; None for 0."""
        if not self.terms:
            return None
        m = max(self.terms, key=self.ring.order.key)
        return m, self.terms[m]

    def constant_part(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(out.get(m, field.zero()), c)
            if field.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        field = self.ring.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                s = field.add(out.get(m, field.zero()), field.mul(c1, c2))
                if field.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        field = self.ring.field
        c = self.ring._coerce(c)
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(v, c) for m, v in self.terms.items()})

    def term_mul(self, mon: tuple, coeff):
        """Multiply by the single term coeff * x^mon."""
        field = self.ring.field
        if field.is_zero(coeff):
            return self.ring.zero()
        return Polynomial(
            self.ring, {monomial_mul(m, mon): field.mul(c, coeff) for m, c in self.terms.items()}
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __repr__(self):
        return format_polynomial(self)


# -- text form -----------------------------------------------------------
#
# Syntax used across sessions and tests:  coeff*monomial terms joined by
# + / -, with ^ for powers, e.g.  x*y - z^2  or  2*x^2 - 1/2*y*z.


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    ring = p.ring
    field = ring.field
    mons = sorted(p.terms, key=ring.order.key, reverse=True)
    pieces = []
    for m in mons:
        c = p.terms[m]
        factors = [
            ring.variables[i] if e == 1 else f"{ring.variables[i]}^{e}"
            for i, e in enumerate(m)
            if e
        ]
        ctext = field.format(c)
        neg = ctext.startswith("-")
        if neg:
            ctext = ctext[1:]
        if factors and ctext == "1":
            body = "*".join(factors)
        elif factors:
            body = "*".join([ctext] + factors)
        else:
            body = ctext
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


class PolyParseError(ValueError):
    pass


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    tokens = _tokenize(text)
    if not tokens:
        return ring.zero()
    result = ring.zero()
    pos = 0
    sign = 1
    first = True
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in "+-":
            sign = 1 if tok == "+" else -1
            pos += 1
            if pos >= len(tokens):
                raise PolyParseError(f"dangling sign in {text!r}")
        elif not first:
            raise PolyParseError(f"expected + or - before {tok!r} in {text!r}")
        term, pos = _parse_term(ring, tokens, pos, text)
        result = result + term.scale(sign)
        sign = 1
        first = False
    return result


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^/":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise PolyParseError(f"bad character {ch!r} in {text!r}")
    return tokens


def _parse_term(ring: PolynomialRing, tokens, pos, text):
    field = ring.field
    coeff_num, coeff_den = 1, 1
    exps = [0] * ring.nvars
    saw_factor = False
    while True:
        tok = tokens[pos]
        if tok.isdigit():
            value = int(tok)
            pos += 1
            if pos < len(tokens) and tokens[pos] == "/":
                if pos + 1 >= len(tokens) or not tokens[pos + 1].isdigit():
                    raise PolyParseError(f"bad rational in {text!r}")
                coeff_num *= value
                coeff_den *= int(tokens[pos + 1])
                pos += 2
            else:
                coeff_num *= value
        elif tok in ring._var_index:
            idx = ring._var_index[tok]
            pos += 1
            power = 1
            if pos < len(tokens) and tokens[pos] == "^":
                if pos + 1 >= len(tokens) or not tokens[pos + 1].isdigit():
                    raise PolyParseError(f"bad exponent in {text!r}")
                power = int(tokens[pos + 1])
                pos += 2
            exps[idx] += power
        else:
            raise PolyParseError(f"unknown name {tok!r} in {text!r}")
        saw_factor = True
        if pos < len(tokens) and tokens[pos] == "*":
            pos += 1
            if pos >= len(tokens):
                raise PolyParseError(f"dangling * in {text!r}")
            continue
        break
    if not saw_factor:
        raise PolyParseError(f"empty term in {text!r}")
    coeff = field.from_int(coeff_num, coeff_den)
    return ring.monomial(tuple(exps), coeff), pos
