"""Monomial orders on polynomial rings and their extensions to free modules.

Monomials are plain exponent tuples.  An order exposes a sort ``key`` so the
largest term of a polynomial is ``max(terms, key=order.key)``; keys compare
the way the order does (bigger key = bigger monomial).

Module terms are ``(component, monomial)`` pairs.  The default free-module
order compares by twisted total degree, then by the ring order on the
monomial, then prefers lower component index.  Syzygy computations use the
induced order: module terms are compared through the lead terms of a fixed
generator list (Schreyer's construction), which is what makes S-pair
remainders a Groebner basis of the syzygy module.
"""

from __future__ import annotations

GREVLEX = "grevlex"
LEX = "lex"

LT, EQ, GT = -1, 0, 1


def monomial_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))

def monomial_divides(a: tuple, b: tuple) -> bool:
    """True iff a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))

def monomial_quotient(m: tuple, d: tuple) -> tuple:
    """m / d; caller guarantees d | m."""
    return tuple(x - y for x, y in zip(m, d))

def monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))

def monomial_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))

def monomial_degree(m: tuple) -> int:
    return sum(m)


class MonomialOrder:
    """A total, multiplicative well-order on exponent tuples."""

    def __init__(self, kind: str = GREVLEX):
        if kind not in (GREVLEX, LEX):
            raise ValueError(f"unknown monomial order: {kind!r}")
        self.kind = kind
        if kind == GREVLEX:
            self.key = _grevlex_key
        else:
            self.key = _lex_key

    def compare(self, a: tuple, b: tuple) -> int:
        if len(a) != len(b):
            raise ValueError("monomials from different rings")
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return LT
        if ka > kb:
            return GT
        return EQ

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("order", self.kind))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


def _grevlex_key(m: tuple):
    # higher degree wins; on a tie the last nonzero entry of a-b decides,
    # negative meaning a > b: compare reversed negated exponents.
    return (sum(m), tuple(-e for e in reversed(m)))

def _lex_key(m: tuple):
    return m


class ModuleOrder:
    """Order on (component, monomial) terms of a twisted free module.

    Twisted degree first, then the ring order, then low component.  This is
    the term-over-position order used wherever a module Groebner basis is
    computed directly.
    """

    def __init__(self, ring_order: MonomialOrder, twists: tuple):
        self.ring_order = ring_order
        self.twists = tuple(twists)
        ringkey = ring_order.key
        tw = self.twists

        def key(term):
            comp, mon = term
            return (sum(mon) + tw[comp], ringkey(mon), -comp)

        self.key = key


class SchreyerOrder:
    """Order induced by the lead terms of a generator list.

    ``(comp, mon)`` is compared through ``mon * lead(comp)`` in the order of
    the module below; ties prefer the lower generator index.
    """

    def __init__(self, base_key, leads: list):
        self.base_key = base_key
        self.leads = list(leads)
        base = base_key
        lds = self.leads

        def key(term):
            comp, mon = term
            lc, lm = lds[comp]
            return (base((lc, monomial_mul(mon, lm))), -comp)

        self.key = key
