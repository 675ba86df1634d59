"""Minimal graded free resolutions, Betti tables, and certified invariants.

A resolution step takes the current differential's columns (already a
minimal generating set of the syzygy module they span), computes kernel
generators by the lift-and-adjoin-ideal-columns machinery, and selects the
minimal ones among them in the same Groebner pass.  Entries of every
differential then lie in the maximal ideal automatically, so Betti numbers
are read straight off the twists.

Certified decisions:
  * depth(M) = nvars - pd_S(M restricted to the ambient ring), using the
    finite ambient resolution (Auslander-Buchsbaum over a regular ring).
  * finite projective dimension over a graded ring is at most depth(R), so
    resolving depth(R)+1 steps decides pd exactly: the first vanishing
    Betti number gives the value, a surviving one certifies infinity.
  * Hilbert series from the ambient resolution:
    H_M(t) = sum_i (-1)^i sum_j b^S_{i,j} t^j / (1-t)^n, with dimension the
    pole order at t=1 and multiplicity the value of the reduced numerator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .groebner import (
    BoundExceededError,
    kernel_columns,
    vec_degree,
    vec_from_polys,
    vec_to_polys,
)
from .modules import (
    PresentedModule,
    QuotientRing,
    ideal_columns,
    is_zero,
    minimal_presentation,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


# -- Betti tables -----------------------------------------------------------


@dataclass
class BettiTable:
    entries: dict                 # (i, j) -> rank
    computed_to: int              # homological bound actually resolved
    complete: bool = False        # True when the resolution terminated

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def totals(self):
        return [self.total(i) for i in range(self.computed_to + 1)]

    def max_index(self):
        nonzero = [i for (i, _), v in self.entries.items() if v]
        return max(nonzero) if nonzero else 0


def render_betti(table: BettiTable) -> str:
    """Triangular text layout: rows j-i, columns i, '-' for zero entries."""
    imax = table.computed_to
    if not table.entries:
        return "(zero module)"
    slopes = sorted({j - i for (i, j), v in table.entries.items() if v})
    cols = list(range(imax + 1))
    grid = []
    header = [""] + [str(i) for i in cols]
    grid.append(header)
    totals = ["total:"] + [str(table.total(i) or "-") if table.total(i) else "-"
                           for i in cols]
    grid.append(totals)
    for s in slopes:
        row = [f"{s}:"]
        for i in cols:
            v = table.entries.get((i, i + s), 0)
            row.append(str(v) if v else "-")
        grid.append(row)
    widths = [max(len(r[c]) for r in grid) for c in range(len(cols) + 1)]
    lines = [" ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in grid]
    return "\n".join(lines)


# -- free complexes ---------------------------------------------------------


class FreeComplex:
    """Chain of matrices d_1..d_t over R with d_i . d_{i+1} = 0 exactly.

    twists[i] are the generator degrees of F_i; matrices[i-1] is d_i given
    as columns over F_{i-1}.
    """

    def __init__(self, ring: QuotientRing, twists, matrices,
                 is_minimal=False, resolution_of=None):
        self.ring = ring
        self.twists = [tuple(t) for t in twists]
        self.matrices = [tuple(tuple(col) for col in m) for m in matrices]
        self.is_minimal = is_minimal
        self.resolution_of = resolution_of

    @property
    def length(self):
        return len(self.twists) - 1

    def differential(self, i):
        """d_i as columns over F_{i-1}; empty for i out of range."""
        if 1 <= i <= len(self.matrices):
            return self.matrices[i - 1]
        return ()

    def rank(self, i):
        if 0 <= i < len(self.twists):
            return len(self.twists[i])
        return 0

    def check_composition(self) -> bool:
        ring = self.ring
        for i in range(1, len(self.matrices)):
            upper = self.matrices[i]      # d_{i+1}
            lower = self.matrices[i - 1]  # d_i
            for col in upper:
                image = [ring.zero()] * len(self.twists[i - 1])
                for j, entry in enumerate(col):
                    if entry.is_zero():
                        continue
                    locol = lower[j]
                    for r, e in enumerate(locol):
                        if not e.is_zero():
                            image[r] = image[r] + entry * e
                for e in image:
                    if not ring.reduce(e).is_zero():
                        return False
        return True

    def entries_in_maximal_ideal(self) -> bool:
        for m in self.matrices:
            for col in m:
                for e in col:
                    if not self.ring.field.is_zero(e.constant_part()):
                        return False
        return True


# -- the resolver -----------------------------------------------------------


class _ResolutionState:
    """Incremental minimal resolution, cached on a module."""

    def __init__(self, module: PresentedModule):
        self.module = module
        self.ring = module.ring
        mmin = minimal_presentation(module)
        self.twists = [mmin.twists]
        self.dcols: list = [None]        # dcols[i] = columns of d_i (raw vecs)
        seeded = mmin._cache.get("res_step1")
        if seeded is not None:
            d1, kern = seeded
            self.complete = mmin.rank0 == 0 or not d1
            if d1:
                self.twists.append(tuple(vec_degree(v, mmin.twists) for v in d1))
                self.dcols.append(list(d1))
                self.candidates = list(kern)
            else:
                self.candidates = []
        else:
            self.candidates = mmin.relation_vecs()
            self.complete = mmin.rank0 == 0
        if self.complete:
            self.candidates = []

    def extend(self, t: int, degree_cap=None):
        while not self.complete and len(self.twists) - 1 < t:
            below = self.twists[-1]
            if not self.candidates:
                self.complete = True
                break
            kept, kern, _ = kernel_columns(
                self.candidates, below, self.ring.ambient,
                ideal_cols=ideal_columns(self.ring, below),
                counted_only=True, degree_cap=degree_cap,
            )
            cols = [self.candidates[j] for j in kept]
            degs = tuple(vec_degree(v, below) for v in cols)
            self.twists.append(degs)
            self.dcols.append(cols)
            self.candidates = kern
            if not cols:
                self.complete = True

    def resolved_to(self):
        return len(self.twists) - 1

    def betti(self, t=None) -> BettiTable:
        bound = self.resolved_to() if t is None else min(t, self.resolved_to())
        entries: dict = {}
        for i in range(bound + 1):
            for j in self.twists[i]:
                entries[(i, j)] = entries.get((i, j), 0) + 1
        return BettiTable(entries=entries, computed_to=bound, complete=self.complete)

    def complex(self, t=None) -> FreeComplex:
        bound = self.resolved_to() if t is None else min(t, self.resolved_to())
        ring = self.ring
        mats = []
        for i in range(1, bound + 1):
            rank_below = len(self.twists[i - 1])
            mats.append([
                vec_to_polys(v, ring.ambient, rank_below) for v in self.dcols[i]
            ])
        return FreeComplex(ring, self.twists[: bound + 1], mats,
                           is_minimal=True, resolution_of=self.module)


def resolution_state(module: PresentedModule) -> _ResolutionState:
    state = module._cache.get("resolution")
    if state is None:
        state = _ResolutionState(module)
        module._cache["resolution"] = state
    return state


def minimal_resolution(module: PresentedModule, t: int, degree_cap=None):
    """Minimal free resolution to homological degree t, plus Betti table."""
    if t < 0:
        raise ValueError("resolution bound must be >= 0")
    state = resolution_state(module)
    state.extend(t, degree_cap=degree_cap)
    return state.complex(t), state.betti(t)


def betti_table(module: PresentedModule, t: int, degree_cap=None) -> BettiTable:
    state = resolution_state(module)
    state.extend(t, degree_cap=degree_cap)
    return state.betti(t)


def syzygy_module(module: PresentedModule, i: int) -> PresentedModule:
    """The i-th syzygy: cokernel of the (i+1)-st differential."""
    if i < 0:
        raise ValueError("syzygy index must be >= 0")
    if i == 0:
        return module
    state = resolution_state(module)
    state.extend(i + 1)
    ring = module.ring
    if state.resolved_to() < i or not state.twists[i]:
        return PresentedModule(ring, (), ())
    twists = state.twists[i]
    if state.resolved_to() >= i + 1:
        cols: list = [vec_to_polys(v, ring.ambient, len(twists))
                      for v in state.dcols[i + 1]]
    else:
        cols = []
    return PresentedModule(ring, twists, cols)


# -- ambient restriction and depth -------------------------------------------


def ambient_quotient(ring: QuotientRing) -> QuotientRing:
    """The ambient polynomial ring as a trivial quotient (cached)."""
    amb = ring.invariants.get("ambient_qring")
    if amb is None:
        amb = QuotientRing(ring.ambient, ())
        ring.invariants["ambient_qring"] = amb
    return amb


def restrict_to_ambient(module: PresentedModule) -> PresentedModule:
    """The same graded vector space presented over the ambient ring."""
    ring = module.ring
    amb = ambient_quotient(ring)
    cols = list(module.relations)
    zero = ring.zero()
    for c in range(module.rank0):
        for f in ring.ideal_min_gens:
            col = [zero] * module.rank0
            col[c] = f
            cols.append(tuple(col))
    return PresentedModule(amb, module.twists, cols)


def _ambient_state(module: PresentedModule) -> _ResolutionState:
    state = module._cache.get("ambient_resolution")
    if state is None:
        restricted = restrict_to_ambient(module)
        state = _ResolutionState(restricted)
        n = module.ring.nvars
        state.extend(n + 1)
        if not state.complete:
            raise AssertionError("ambient resolution exceeded the regular bound")
        module._cache["ambient_resolution"] = state
    return state


def pd_over_ambient(module: PresentedModule):
    """Projective dimension over the ambient polynomial ring (always finite)."""
    state = _ambient_state(module)
    if not state.twists[0]:
        return NEG_INF
    return state.resolved_to() if state.twists[-1] else state.resolved_to() - 1


def depth(module: PresentedModule):
    """depth via the ambient ring: nvars - pd_S; depth(0) = infinity."""
    cached = module._cache.get("depth")
    if cached is not None:
        return cached
    if is_zero(module):
        module._cache["depth"] = POS_INF
        return POS_INF
    value = module.ring.nvars - pd_over_ambient(module)
    module._cache["depth"] = value
    return value


def ring_as_module(ring: QuotientRing) -> PresentedModule:
    mod = ring.invariants.get("self_module")
    if mod is None:
        mod = PresentedModule(ring, (0,), ())
        ring.invariants["self_module"] = mod
    return mod


def depth_ring(ring: QuotientRing):
    value = ring.invariants.get("depth")
    if value is None:
        value = depth(ring_as_module(ring))
        ring.invariants["depth"] = value
    return value


def dim_ring(ring: QuotientRing):
    value = ring.invariants.get("dim")
    if value is None:
        value = hilbert_series(ring_as_module(ring)).dimension
        ring.invariants["dim"] = value
    return value


def is_cohen_macaulay(ring: QuotientRing) -> bool:
    return depth_ring(ring) == dim_ring(ring)


def is_regular_ring(ring: QuotientRing) -> bool:
    """Graded regularity: the ideal is minimally generated by linear forms."""
    return all(g.homogeneous_degree() == 1 for g in ring.ideal_min_gens)


# -- projective dimension ----------------------------------------------------


@dataclass
class PdVerdict:
    kind: str                       # "finite" | "infinite" | "bound-exceeded"
    value: object = None            # int, or -inf for the zero module
    certificate_index: int = None   # index of the surviving Betti number
    certificate_betti: int = None

    @property
    def finite(self):
        return self.kind == "finite"

    @property
    def infinite(self):
        return self.kind == "infinite"

    def __repr__(self):
        if self.kind == "finite":
            return f"Finite({self.value})"
        if self.kind == "infinite":
            return (f"Infinite(beta_{self.certificate_index}"
                    f"={self.certificate_betti})")
        return "BoundExceeded"


def decide_pd(module: PresentedModule, fresh: bool = False) -> PdVerdict:
    """Certified projective dimension: finite value or infinity.

    Resolves depth(R)+1 steps; a finite projective dimension over the
    graded ring cannot exceed depth(R), so a Betti number surviving at
    index depth(R)+1 certifies infinity.
    """
    if not fresh:
        cached = module._cache.get("pd")
        if cached is not None:
            return cached
    work = module
    if fresh:
        work = PresentedModule(module.ring, module.twists, module.relations)
    bound = depth_ring(module.ring) + 1
    state = resolution_state(work)
    state.extend(bound)
    if not state.twists[0]:
        verdict = PdVerdict(kind="finite", value=NEG_INF)
    else:
        verdict = None
        for i in range(state.resolved_to() + 1):
            if not state.twists[i]:
                verdict = PdVerdict(kind="finite", value=i - 1)
                break
        if verdict is None:
            if state.complete:
                verdict = PdVerdict(kind="finite", value=state.resolved_to())
            else:
                verdict = PdVerdict(
                    kind="infinite",
                    certificate_index=bound,
                    certificate_betti=len(state.twists[bound]),
                )
    if not fresh:
        module._cache["pd"] = verdict
    return verdict


# -- Hilbert series -----------------------------------------------------------


@dataclass
class HilbertData:
    numerator: dict               # exponent -> integer coefficient, over (1-t)^n
    nvars: int
    dimension: object             # int or -inf for the zero module
    multiplicity: int
    reduced_numerator: dict
    _hf_cache: dict = dc_field(default_factory=dict)

    def hf(self, d: int) -> int:
        """Hilbert function value dim_k M_d."""
        got = self._hf_cache.get(d)
        if got is not None:
            return got
        # expand numerator / (1-t)^n up to degree d
        if not self.numerator:
            self._hf_cache[d] = 0
            return 0
        lo = min(self.numerator)
        coeffs = {}
        for j, c in self.numerator.items():
            coeffs[j] = c
        for _ in range(self.nvars):
            acc = 0
            out = {}
            for j in range(lo, d + 1):
                acc += coeffs.get(j, 0)
                out[j] = acc
            coeffs = out
        val = coeffs.get(d, 0)
        self._hf_cache[d] = val
        return val

    def series_string(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for j in sorted(self.numerator):
            c = self.numerator[j]
            parts.append(f"{'+' if c >= 0 and parts else ''}{c}*t^{j}")
        return f"({''.join(parts)})/(1-t)^{self.nvars}"


def hilbert_series(module: PresentedModule) -> HilbertData:
    cached = module._cache.get("hilbert")
    if cached is not None:
        return cached
    state = _ambient_state(module)
    n = module.ring.nvars
    numerator: dict = {}
    for i in range(state.resolved_to() + 1):
        sign = 1 if i % 2 == 0 else -1
        for j in state.twists[i]:
            numerator[j] = numerator.get(j, 0) + sign
    numerator = {j: c for j, c in numerator.items() if c}
    reduced = dict(numerator)
    divisions = 0
    while reduced and sum(reduced.values()) == 0:
        # divide by (1-t): q_j = sum_{i<=j} n_i
        lo, hi = min(reduced), max(reduced)
        acc = 0
        q = {}
        for j in range(lo, hi + 1):
            acc += reduced.get(j, 0)
            if acc:
                q[j] = acc
        reduced = q
        divisions += 1
    if not numerator:
        data = HilbertData(numerator={}, nvars=n, dimension=NEG_INF,
                           multiplicity=0, reduced_numerator={})
    else:
        dimension = n - divisions
        mult = sum(reduced.values())
        data = HilbertData(numerator=numerator, nvars=n, dimension=dimension,
                           multiplicity=mult, reduced_numerator=reduced)
    module._cache["hilbert"] = data
    return data


def hf(module: PresentedModule, d: int) -> int:
    return hilbert_series(module).hf(d)


def dim_module(module: PresentedModule):
    return hilbert_series(module).dimension


# -- Cohen-Macaulay / Ulrich profile ------------------------------------------


@dataclass
class CMProfile:
    is_mcm: bool
    is_ulrich: bool
    depth: object
    dim_ring: object
    multiplicity: int
    mu: int


def cm_profile(module: PresentedModule) -> CMProfile:
    if is_zero(module):
        raise ValueError("profile of the zero module is undefined")
    dep = depth(module)
    dimr = dim_ring(module.ring)
    h = hilbert_series(module)
    mu = minimal_presentation(module).rank0
    mcm = dep == dimr
    return CMProfile(
        is_mcm=mcm,
        is_ulrich=bool(mcm and h.multiplicity == mu),
        depth=dep,
        dim_ring=dimr,
        multiplicity=h.multiplicity,
        mu=mu,
    )


# -- module comparison (the engine's isomorphism surrogate) -------------------


def modules_match(m: PresentedModule, n: PresentedModule,
                  betti_through: int = 2, hf_through: int = 6) -> bool:
    """Equal minimal Betti data in indices 0..betti_through and equal
    Hilbert functions through hf_through.  The engine never decides
    isomorphism abstractly; this is its stated comparison standard."""
    if m.ring != n.ring:
        return False
    bm = betti_table(m, betti_through)
    bn = betti_table(n, betti_through)
    for i in range(betti_through + 1):
        keys = {j for (a, j) in bm.entries if a == i} | \
               {j for (a, j) in bn.entries if a == i}
        for j in keys:
            if bm.entries.get((i, j), 0) != bn.entries.get((i, j), 0):
                return False
    hm, hn = hilbert_series(m), hilbert_series(n)
    lo = 0
    for h in (hm, hn):
        if h.numerator:
            lo = min(lo, min(h.numerator))
    for d in range(lo, hf_through + 1):
        if hm.hf(d) != hn.hf(d):
            return False
    return True
