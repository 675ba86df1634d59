"""Tor, Ext, total tensor complexes, canonical modules, injective dimension.

Tor_i(M, N) is the homology of (minimal resolution of M) tensor N, each
homology spot a presented module; Ext is the cohomology of Hom into N.
Injective dimension is decided through Bass numbers: a nonvanishing
Ext^i(k, M) beyond depth(R) certifies infinity (Bass numbers of a module
of infinite injective dimension never vanish past its depth), while a
vanishing one pins id = depth(R).  To keep the Bass computation small the
engine first divides out a common regular sequence: for x regular on both
R and M, Ext^{i+1}_R(k, M) = Ext^i_{R/x}(k, M/xM).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .groebner import vec_degree, vec_from_polys, vec_to_polys
from .modules import (
    ModuleMap,
    PresentedModule,
    QuotientRing,
    auslander_transpose,
    biduality_reflexive,
    free_module,
    is_free,
    is_zero,
    minimal_presentation,
    nzd_test,
    power_module,
    relations_among,
    residue_field,
)
from .resolution import (
    FreeComplex,
    NEG_INF,
    ambient_quotient,
    betti_table,
    depth,
    depth_ring,
    dim_ring,
    hilbert_series,
    is_cohen_macaulay,
    resolution_state,
    ring_as_module,
)


# -- homology of a pair of maps ----------------------------------------------


def homology_of_pair(incoming, outgoing, middle: PresentedModule) -> PresentedModule:
    """ker(outgoing)/im(incoming) as a presented module.

    incoming: map A -> middle or None (zero); outgoing: middle -> C or None.
    """
    ring = middle.ring
    if outgoing is None:
        cols = list(incoming.columns) if incoming is not None else []
        return PresentedModule(ring, middle.twists,
                               cols + list(middle.relations))
    preimage = relations_among(
        outgoing.matrix_vecs(), outgoing.target.twists, ring,
        modulo_vecs=outgoing.target.relation_vecs(),
    )
    kvecs = [w for w in preimage if w]
    shift = outgoing.shift
    source_twists = tuple(t + shift for t in middle.twists)
    degs = [vec_degree(w, source_twists) - shift for w in kvecs]
    modulo = middle.relation_vecs()
    if incoming is not None:
        modulo = modulo + incoming.matrix_vecs()
    hrel = relations_among(kvecs, middle.twists, ring, modulo_vecs=modulo)
    return PresentedModule(
        ring, tuple(degs),
        [vec_to_polys(w, ring.ambient, len(kvecs)) for w in hrel],
    )


def total_dimension(module: PresentedModule) -> int:
    """dim_k of a finite-length module (sum of its Hilbert function)."""
    h = hilbert_series(module)
    if not h.numerator:
        return 0
    if isinstance(h.dimension, int) and h.dimension > 0:
        raise ValueError("module has positive dimension, not finite length")
    return h.multiplicity


# -- Tor ----------------------------------------------------------------------


def _tensor_chain_map(res_state, n: PresentedModule, i: int):
    """d_i tensor N as a map between power modules, None when out of range."""
    if i < 1 or i > res_state.resolved_to():
        return None
    ring = n.ring
    upper = power_module(n, res_state.twists[i])
    lower = power_module(n, res_state.twists[i - 1])
    rn = n.rank0
    zero = ring.zero()
    cols = []
    rank_below = len(res_state.twists[i - 1])
    for v in res_state.dcols[i]:
        entries = vec_to_polys(v, ring.ambient, rank_below)
        for h in range(rn):
            col = [zero] * (rank_below * rn)
            for g, e in enumerate(entries):
                if not e.is_zero():
                    col[g * rn + h] = e
            cols.append(tuple(col))
    return ModuleMap(upper, lower, cols, check=False)


@dataclass
class TorProfile:
    pairs: tuple                    # (M, N) names only for reporting
    window: int                    # highest homological index computed
    degree_window: int
    dims: dict                     # i -> {degree: dim}
    zero: dict                     # i -> bool (exact vanishing test)
    modules: dict = dc_field(default_factory=dict)

    def vanishing_range(self):
        start = None
        for i in range(1, self.window + 1):
            if self.zero.get(i):
                if start is None:
                    start = i
            else:
                start = None
        return start


def tor(m: PresentedModule, n: PresentedModule, window: int,
        degree_window: int = 6, keep_modules: bool = False) -> TorProfile:
    """Tor_i(M, N) for 0 <= i <= window, with graded dimension vectors."""
    if m.ring != n.ring:
        raise ValueError("modules over different rings")
    mm = minimal_presentation(m)
    nn = minimal_presentation(n)
    state = resolution_state(mm)
    state.extend(window + 1)
    dims = {}
    zero = {}
    modules = {}
    for i in range(window + 1):
        incoming = _tensor_chain_map(state, nn, i + 1)
        outgoing = _tensor_chain_map(state, nn, i)
        if i > state.resolved_to():
            h = PresentedModule(m.ring, (), ())
        elif i == 0:
            middle = power_module(nn, state.twists[0])
            h = homology_of_pair(incoming, None, middle)
        else:
            middle = power_module(nn, state.twists[i])
            h = homology_of_pair(incoming, outgoing, middle)
        hz = is_zero(h)
        zero[i] = hz
        if hz:
            dims[i] = {}
        else:
            hs = hilbert_series(h)
            lo = min(hs.numerator) if hs.numerator else 0
            dims[i] = {d: hs.hf(d) for d in range(lo, degree_window + 1)}
        if keep_modules:
            modules[i] = h
    return TorProfile(
        pairs=(m.name, n.name), window=window, degree_window=degree_window,
        dims=dims, zero=zero, modules=modules,
    )


def tor_vanishes(m, n, lo: int, hi: int) -> bool:
    """Exact test: Tor_i(M,N) = 0 for lo <= i <= hi."""
    if hi < lo:
        return True
    profile = tor(m, n, hi)
    return all(profile.zero[i] for i in range(lo, hi + 1))


# -- Ext ----------------------------------------------------------------------


def _hom_cochain_map(res_state, n: PresentedModule, i: int):
    """Hom(d_i, N): Hom(F_{i-1}, N) -> Hom(F_i, N), None out of range."""
    if i < 1 or i > res_state.resolved_to():
        return None
    ring = n.ring
    source = power_module(n, [-t for t in res_state.twists[i - 1]])
    target = power_module(n, [-t for t in res_state.twists[i]])
    rn = n.rank0
    zero = ring.zero()
    rank_below = len(res_state.twists[i - 1])
    rank_here = len(res_state.twists[i])
    entries = [vec_to_polys(v, ring.ambient, rank_below) for v in res_state.dcols[i]]
    cols = []
    for g in range(rank_below):
        for h in range(rn):
            col = [zero] * (rank_here * rn)
            for gp in range(rank_here):
                e = entries[gp][g]
                if not e.is_zero():
                    col[gp * rn + h] = e
            cols.append(tuple(col))
    return ModuleMap(source, target, cols, check=False)


@dataclass
class ExtProfile:
    pairs: tuple
    window: int
    degree_window: int
    dims: dict
    zero: dict
    modules: dict = dc_field(default_factory=dict)


def ext_module(m: PresentedModule, n: PresentedModule, i: int) -> PresentedModule:
    """Ext^i(M, N) as a presented module."""
    if i < 0:
        raise ValueError("negative cohomological index")
    mm = minimal_presentation(m)
    nn = minimal_presentation(n)
    state = resolution_state(mm)
    state.extend(i + 1)
    if i > state.resolved_to():
        return PresentedModule(m.ring, (), ())
    outgoing = _hom_cochain_map(state, nn, i + 1)
    incoming = _hom_cochain_map(state, nn, i)
    middle = power_module(nn, [-t for t in state.twists[i]])
    if outgoing is None:
        return homology_of_pair(incoming, None, middle)
    return homology_of_pair(incoming, outgoing, middle)


def ext(m: PresentedModule, n: PresentedModule, window: int,
        degree_window: int = 6, keep_modules: bool = False) -> ExtProfile:
    dims = {}
    zero = {}
    modules = {}
    for i in range(window + 1):
        h = ext_module(m, n, i)
        hz = is_zero(h)
        zero[i] = hz
        if hz:
            dims[i] = {}
        else:
            hs = hilbert_series(h)
            lo = min(hs.numerator) if hs.numerator else 0
            dims[i] = {d: hs.hf(d) for d in range(lo, degree_window + 1)}
        if keep_modules:
            modules[i] = h
    return ExtProfile(
        pairs=(m.name, n.name), window=window, degree_window=degree_window,
        dims=dims, zero=zero, modules=modules,
    )


# -- total tensor product complexes -------------------------------------------


def total_tensor_complex(p: FreeComplex, q: FreeComplex) -> FreeComplex:
    """X_n = sum of P_i tensor Q_j over i+j = n, with d = dP + (-1)^i dQ."""
    if p.ring != q.ring:
        raise ValueError("complexes over different rings")
    ring = p.ring
    lp, lq = p.length, q.length
    length = lp + lq
    layout = []      # layout[n]: list of (i, pg, j, qg) in order
    twists = []
    for n in range(length + 1):
        gens = []
        tw = []
        for i in range(n + 1):
            j = n - i
            if i > lp or j > lq:
                continue
            for pg, a in enumerate(p.twists[i]):
                for qg, b in enumerate(q.twists[j]):
                    gens.append((i, pg, j, qg))
                    tw.append(a + b)
        layout.append(gens)
        twists.append(tuple(tw))
    index = [
        {g: pos for pos, g in enumerate(layer)} for layer in layout
    ]
    zero = ring.zero()
    mats = []
    for n in range(1, length + 1):
        cols = []
        below = layout[n - 1]
        for (i, pg, j, qg) in layout[n]:
            col = [zero] * len(below)
            if i >= 1:
                dp = p.differential(i)
                for r, e in enumerate(dp[pg]):
                    if not e.is_zero():
                        pos = index[n - 1].get((i - 1, r, j, qg))
                        if pos is not None:
                            col[pos] = col[pos] + e
            if j >= 1:
                dq = q.differential(j)
                sign = -1 if i % 2 else 1
                for r, e in enumerate(dq[qg]):
                    if not e.is_zero():
                        pos = index[n - 1].get((i, pg, j - 1, r))
                        if pos is not None:
                            term = e if sign == 1 else e.scale(-1)
                            col[pos] = col[pos] + term
            cols.append(tuple(col))
        mats.append(cols)
    return FreeComplex(ring, twists, mats,
                       is_minimal=p.is_minimal and q.is_minimal)


def complex_homology(x: FreeComplex, i: int) -> PresentedModule:
    """H_i of a free complex over R, as a presented module."""
    if i < 0 or i > x.length:
        raise IndexError(f"homology index {i} out of range 0..{x.length}")
    ring = x.ring
    d_in = x.differential(i + 1)
    if i == 0:
        return PresentedModule(ring, x.twists[0], list(d_in))
    d_out = x.differential(i)
    out_vecs = [vec_from_polys(c) for c in d_out]
    kern = relations_among(out_vecs, x.twists[i - 1], ring)
    kvecs = [w for w in kern if w]
    degs = [vec_degree(w, x.twists[i]) for w in kvecs]
    modulo = [vec_from_polys(c) for c in d_in]
    hrel = relations_among(kvecs, x.twists[i], ring, modulo_vecs=modulo)
    return PresentedModule(
        ring, tuple(degs),
        [vec_to_polys(w, ring.ambient, len(kvecs)) for w in hrel],
    )


# -- canonical module ---------------------------------------------------------


class NotCohenMacaulayError(ValueError):
    pass


def canonical_module(ring: QuotientRing) -> PresentedModule:
    """Graded canonical module (up to twist) of a Cohen-Macaulay quotient.

    Computed over the ambient ring: dualize the last step of the finite
    ambient resolution of R; the cokernel is Ext^{n-d} and is already an
    R-module.  No twist normalization is attempted.
    """
    cached = ring.invariants.get("canonical")
    if cached is not None:
        return cached
    if not is_cohen_macaulay(ring):
        raise NotCohenMacaulayError(f"{ring!r} is not Cohen-Macaulay")
    from .resolution import _ambient_state

    rm = ring_as_module(ring)
    state = _ambient_state(rm)
    c = ring.nvars - dim_ring(ring)
    if state.resolved_to() != c:
        raise AssertionError("ambient resolution length disagrees with codimension")
    if c == 0:
        omega = free_module(ring, (0,))
    else:
        rank_below = len(state.twists[c - 1])
        cols_in = [vec_to_polys(v, ring.ambient, rank_below)
                   for v in state.dcols[c]]
        twists = tuple(-t for t in state.twists[c])
        tcols = []
        for g in range(rank_below):
            tcols.append(tuple(cols_in[j][g] for j in range(len(cols_in))))
        omega = minimal_presentation(PresentedModule(ring, twists, tcols))
    ring.invariants["canonical"] = omega
    return omega


# -- injective dimension through Bass numbers ----------------------------------


@dataclass
class IdVerdict:
    kind: str                      # "finite" | "infinite"
    value: object = None           # = depth R when finite
    certificate_index: int = None  # Bass index tested
    certificate_dim: int = None    # its k-dimension when nonzero
    reductions: int = 0            # regular elements divided out

    @property
    def finite(self):
        return self.kind == "finite"

    @property
    def infinite(self):
        return self.kind == "infinite"

    def __repr__(self):
        if self.kind == "finite":
            return f"Finite({self.value})"
        return (f"Infinite(mu^{self.certificate_index}"
                f"={self.certificate_dim})")


_reduced_ring_cache: dict = {}


def _reduced_ring(ring: QuotientRing, extra) -> QuotientRing:
    gens = list(ring.ideal_input_gens) + [extra]
    probe = QuotientRing(ring.ambient, gens)
    cached = _reduced_ring_cache.get(probe._key)
    if cached is None:
        _reduced_ring_cache[probe._key] = probe
        return probe
    return cached


def _linear_candidates(ring: QuotientRing):
    amb = ring.ambient
    n = amb.nvars
    vs = [amb.variable(i) for i in range(n)]
    for v in vs:
        yield v
    for i in range(n):
        for j in range(i + 1, n):
            yield vs[i] + vs[j]
            yield vs[i] - vs[j]
    if n > 2:
        total = vs[0]
        for v in vs[1:]:
            total = total + v
        yield total


def _common_regular_linear(ring: QuotientRing, module: PresentedModule):
    rm = ring_as_module(ring)
    for u in _linear_candidates(ring):
        u = ring.reduce(u)
        if u.is_zero():
            continue
        try:
            if nzd_test(u, rm) and nzd_test(u, module):
                return u
        except ValueError:
            continue
    return None


def residue_field_of(ring: QuotientRing) -> PresentedModule:
    k = ring.invariants.get("k_module")
    if k is None:
        k = residue_field(ring)
        ring.invariants["k_module"] = k
    return k


def bass_number(module: PresentedModule, i: int) -> int:
    """mu^i = dim_k Ext^i(k, M), computed without reduction tricks."""
    h = ext_module(residue_field_of(module.ring), module, i)
    if is_zero(h):
        return 0
    return total_dimension(h)


def decide_id(module: PresentedModule, degree_window: int = 6) -> IdVerdict:
    """Certified injective dimension via the top Bass number.

    Tests mu^t for t = max(depth M, depth R) + 1: nonzero certifies
    infinite injective dimension (Bass numbers cannot vanish between
    depth M and id M), zero pins id = depth R.
    """
    cached = module._cache.get("id")
    if cached is not None:
        return cached
    if is_zero(module):
        raise ValueError("injective dimension of the zero module")
    ring = module.ring
    dm = depth(module)
    dr = depth_ring(ring)
    top = max(dm, dr) + 1
    # divide out common regular elements: mu^{i+1}_R(M) = mu^i_{R/x}(M/xM)
    current = minimal_presentation(module)
    cur_ring = ring
    reductions = 0
    while reductions < top - 1:
        if depth(current) <= 0 or depth_ring(cur_ring) <= 0:
            break
        u = _common_regular_linear(cur_ring, current)
        if u is None:
            break
        cur_ring = _reduced_ring(cur_ring, u)
        current = minimal_presentation(
            PresentedModule(cur_ring, current.twists, current.relations)
        )
        reductions += 1
    idx = top - reductions
    h = ext_module(residue_field_of(cur_ring), current, idx)
    if is_zero(h):
        verdict = IdVerdict(kind="finite", value=dr,
                            certificate_index=top, reductions=reductions)
    else:
        verdict = IdVerdict(
            kind="infinite",
            certificate_index=top,
            certificate_dim=total_dimension(h),
            reductions=reductions,
        )
    module._cache["id"] = verdict
    return verdict


# -- totally reflexive check ----------------------------------------------------


@dataclass
class ReflexiveVerdict:
    confirmed: bool
    bound: int
    refuted_at: int = None
    side: str = None               # "biduality" | "ext" | "ext-transpose"

    def __repr__(self):
        if self.confirmed:
            return f"ConfirmedUpTo({self.bound})"
        return f"RefutedAt({self.refuted_at}, {self.side})"


def totally_reflexive_check(module: PresentedModule, bound: int = 4) -> ReflexiveVerdict:
    """Bounded total-reflexivity test: biduality plus Ext vanishing on both
    the module and its transpose through the bound.  Refutations are exact;
    confirmation is only as strong as the bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ring = module.ring
    m = minimal_presentation(module)
    if m.rank0 == 0 or not m.relations:
        return ReflexiveVerdict(confirmed=True, bound=bound)
    bd = biduality_reflexive(m)
    if not bd.bijective:
        return ReflexiveVerdict(confirmed=False, bound=bound,
                                refuted_at=0, side="biduality")
    r_free = free_module(ring, (0,))
    tr = auslander_transpose(m)
    for i in range(1, bound + 1):
        if not is_zero(ext_module(m, r_free, i)):
            return ReflexiveVerdict(confirmed=False, bound=bound,
                                    refuted_at=i, side="ext")
        if not is_zero(ext_module(tr, r_free, i)):
            return ReflexiveVerdict(confirmed=False, bound=bound,
                                    refuted_at=i, side="ext-transpose")
    return ReflexiveVerdict(confirmed=True, bound=bound)


# -- Betti growth ----------------------------------------------------------------


@dataclass
class BettiGrowth:
    totals: list
    ratios: list                   # consecutive ratios as floats (display only)

    def strictly_increasing(self, lo: int, hi: int) -> bool:
        for i in range(lo, hi + 1):
            if i + 1 >= len(self.totals) or self.totals[i + 1] <= self.totals[i]:
                return False
        return True


def betti_growth_report(module: PresentedModule, window: int,
                        degree_cap=None) -> BettiGrowth:
    if window < 2:
        raise ValueError("growth window must be >= 2")
    table = betti_table(module, window, degree_cap=degree_cap)
    totals = [table.total(i) for i in range(table.computed_to + 1)]
    ratios = []
    for i in range(len(totals) - 1):
        ratios.append(totals[i + 1] / totals[i] if totals[i] else None)
    return BettiGrowth(totals=totals, ratios=ratios)
