"""Groebner bases and syzygies for submodules of graded free modules.

The machine works over the ambient polynomial ring S; quotient rings
R = S/I are handled by lifting and adjoining the columns f*e_c for the
minimal generators f of I.  All inputs are homogeneous, so Buchberger runs
degree by degree (normal selection strategy) and can simultaneously report
which inputs are minimal generators of the submodule they span: an input is
redundant exactly when it reduces to zero against the basis completed
through its degree.

Internally a free-module element is a dict {(component, monomial): coeff}.
S-pair remainders that vanish are recorded, composed with the tracked
representations, as syzygies in input coordinates; together with the
division defects of the inputs against the final basis these generate the
full kernel of the input matrix (Schreyer's theorem plus the usual
transformation bookkeeping).

Criteria: the coprime-lead shortcut is applied only in ambient rank one,
where the skipped pair contributes an explicit Koszul relation; it is not
sound for wider free modules.  The chain criterion is applied in an
orientation-restricted form so the recorded relations keep generating the
syzygy module.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .orders import (
    ModuleOrder,
    monomial_degree,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
)
from .poly import InhomogeneousError, Polynomial, PolynomialRing


class BoundExceededError(RuntimeError):
    """A degree or homological cap was hit; the result would be incomplete."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


# -- raw vectors ----------------------------------------------------------


def vec_from_polys(polys) -> dict:
    out = {}
    for comp, p in enumerate(polys):
        for mon, c in p.terms.items():
            out[(comp, mon)] = c
    return out


def vec_to_polys(vec: dict, ring: PolynomialRing, rank: int):
    comps = [dict() for _ in range(rank)]
    for (comp, mon), c in vec.items():
        comps[comp][mon] = c
    return tuple(Polynomial(ring, t) for t in comps)


def vec_degree(vec: dict, twists):
    """Twisted degree of a homogeneous vector; None for zero.

    Raises InhomogeneousError when terms disagree.
    """
    deg = None
    for (comp, mon) in vec:
        d = monomial_degree(mon) + twists[comp]
        if deg is None:
            deg = d
        elif deg != d:
            raise InhomogeneousError(f"mixed degrees {deg} and {d}")
    return deg


def _sub_scaled(work: dict, c, mon, g: dict, p):
    """work -= c * x^mon * g, in place."""
    if p is None:
        for (comp, m2), c2 in g.items():
            t = (comp, monomial_mul(mon, m2))
            v = work.get(t)
            if v is None:
                work[t] = -c * c2
            else:
                v = v - c * c2
                if v:
                    work[t] = v
                else:
                    del work[t]
    else:
        for (comp, m2), c2 in g.items():
            t = (comp, monomial_mul(mon, m2))
            v = work.get(t)
            if v is None:
                work[t] = (-c * c2) % p
            else:
                v = (v - c * c2) % p
                if v:
                    work[t] = v
                else:
                    del work[t]


def _add_scaled(acc: dict, c, mon, g: dict, p):
    """acc += c * x^mon * g, in place."""
    if p is None:
        for (comp, m2), c2 in g.items():
            t = (comp, monomial_mul(mon, m2))
            v = acc.get(t)
            if v is None:
                acc[t] = c * c2
            else:
                v = v + c * c2
                if v:
                    acc[t] = v
                else:
                    del acc[t]
    else:
        for (comp, m2), c2 in g.items():
            t = (comp, monomial_mul(mon, m2))
            v = acc.get(t)
            if v is None:
                acc[t] = (c * c2) % p
            else:
                v = (v + c * c2) % p
                if v:
                    acc[t] = v
                else:
                    del acc[t]


def _cached(keyfunc):
    cache = {}

    def key(term):
        k = cache.get(term)
        if k is None:
            k = keyfunc(term)
            cache[term] = k
        return k

    return key


def _reduce_full(work: dict, by_comp, basis, key, p, quots=None):
    """Full normal form of `work` (mutated) against basis.

    Returns the remainder; when quots is a dict it accumulates
    {basis_index: {mon: coeff}} with  original = sum quots*basis + remainder.
    """
    rem = {}
    while work:
        t = max(work, key=key)
        comp, mon = t
        c = work[t]
        hit = None
        for lm, gi in by_comp.get(comp, ()):
            if monomial_divides(lm, mon):
                hit = (lm, gi)
                break
        if hit is None:
            rem[t] = work.pop(t)
            continue
        lm, gi = hit
        qmon = monomial_quotient(mon, lm)
        _sub_scaled(work, c, qmon, basis[gi], p)
        if quots is not None:
            q = quots.setdefault(gi, {})
            v = q.get(qmon)
            if p is None:
                v = c if v is None else v + c
            else:
                v = c % p if v is None else (v + c) % p
            if v:
                q[qmon] = v
            else:
                del q[qmon]
    return rem


# -- the machine ----------------------------------------------------------


@dataclass
class GBRun:
    ring: PolynomialRing
    rank: int
    twists: tuple
    key: object
    basis: list = dc_field(default_factory=list)      # monic vecs
    leads: list = dc_field(default_factory=list)      # (comp, mon) per basis elt
    tracking: list = dc_field(default_factory=list)   # vec in input coords per elt
    syzygies: list = dc_field(default_factory=list)   # vecs in input coords
    kept: list = dc_field(default_factory=list)       # counted inputs kept, in order
    capped: bool = False

    def lead_index(self):
        by_comp: dict = {}
        for i, (comp, mon) in enumerate(self.leads):
            by_comp.setdefault(comp, []).append((mon, i))
        return by_comp


def run_buchberger(
    inputs,
    twists,
    ring: PolynomialRing,
    *,
    track: bool = False,
    record_syzygies: bool = False,
    counted=None,
    degree_cap=None,
    pair_tiebreak: str = "fifo",
) -> GBRun:
    """Complete a homogeneous generator list to a Groebner basis.

    inputs: raw vecs over `ring` in a free module with `twists`.  counted:
    optional input indices; the run reports in `kept` which of those are
    minimal generators of the spanned submodule.  With record_syzygies the
    run collects input-coordinate relations from vanishing S-pairs.
    """
    twists = tuple(twists)
    rank = len(twists)
    order = ModuleOrder(ring.order, twists)
    key = _cached(order.key)
    p = ring.field.char or None
    one = 1 if p else ring.field.one()
    zero_mon = (0,) * ring.nvars
    run = GBRun(ring=ring, rank=rank, twists=twists, key=key)
    track = track or record_syzygies
    counted_set = set(counted) if counted is not None else set()

    by_comp: dict = {}
    heap: list = []
    seq = 0
    treated: set = set()   # pairs whose reduction completed (either outcome)

    # Equal-degree processing order is pairs, then uncounted inputs, then
    # counted inputs: a counted input is a minimal generator iff it fails to
    # reduce against the submodule completed through its own degree.
    for j, v in enumerate(inputs):
        d = vec_degree(v, twists)
        if d is None:
            continue  # zero input spans nothing
        rank_kind = 2 if j in counted_set else 1
        heap.append((d, rank_kind, 0, seq, ("input", j)))
        seq += 1
    heapq.heapify(heap)

    def push_pairs(new_idx):
        nonlocal seq
        ci, mi = run.leads[new_idx]
        for other in range(new_idx):
            co, mo = run.leads[other]
            if co != ci:
                continue
            lcm = monomial_lcm(mi, mo)
            if rank == 1 and monomial_degree(lcm) == monomial_degree(mi) + monomial_degree(mo):
                # coprime lead terms in an ideal: skip, the relation is Koszul
                if record_syzygies:
                    s = {}
                    for (_, m2), c2 in run.basis[other].items():
                        _add_scaled(s, c2, m2, run.tracking[new_idx], p)
                    for (_, m2), c2 in run.basis[new_idx].items():
                        _sub_scaled(s, c2, m2, run.tracking[other], p)
                    if s:
                        run.syzygies.append(s)
                treated.add((other, new_idx))
                continue
            d = monomial_degree(lcm) + twists[ci]
            tie = -seq if pair_tiebreak == "lifo" else seq
            heapq.heappush(heap, (d, 0, tie, seq, ("pair", other, new_idx)))
            seq += 1

    def chain_skip(a, b, lcm_ab):
        ca = run.leads[a][0]
        for j in range(len(run.leads)):
            if j == a or j == b:
                continue
            cj, mj = run.leads[j]
            if cj != ca or j < a or not monomial_divides(mj, lcm_ab):
                continue
            p1 = (min(a, j), max(a, j))
            p2 = (min(j, b), max(j, b))
            if p1 in treated and p2 in treated:
                return True
        return False

    def insert(vec, tracking_vec):
        lead = max(vec, key=key)
        lc = vec[lead]
        if p is None:
            if lc != 1:
                inv = 1 / lc
                vec = {t: c * inv for t, c in vec.items()}
                if tracking_vec is not None:
                    tracking_vec = {t: c * inv for t, c in tracking_vec.items()}
        else:
            if lc != 1:
                inv = pow(lc, -1, p)
                vec = {t: (c * inv) % p for t, c in vec.items()}
                if tracking_vec is not None:
                    tracking_vec = {t: (c * inv) % p for t, c in tracking_vec.items()}
        idx = len(run.basis)
        run.basis.append(vec)
        run.leads.append(lead)
        run.tracking.append(tracking_vec)
        by_comp.setdefault(lead[0], []).append((lead[1], idx))
        push_pairs(idx)

    while heap:
        deg, _, _, _, item = heapq.heappop(heap)
        if degree_cap is not None and deg > degree_cap:
            run.capped = True
            break
        if item[0] == "input":
            j = item[1]
            quots = {} if track else None
            rem = _reduce_full(dict(inputs[j]), by_comp, run.basis, key, p, quots)
            if rem:
                if track:
                    tr = {(j, zero_mon): one}
                    for gi, q in quots.items():
                        for qm, qc in q.items():
                            _sub_scaled(tr, qc, qm, run.tracking[gi], p)
                else:
                    tr = None
                insert(rem, tr)
                if j in counted_set:
                    run.kept.append(j)
            # a counted input that reduces to zero is redundant; its
            # relation is recovered by the final division pass.
        else:
            _, a, b = item
            lcm = monomial_lcm(run.leads[a][1], run.leads[b][1])
            if chain_skip(a, b, lcm):
                continue
            ma = monomial_quotient(lcm, run.leads[a][1])
            mb = monomial_quotient(lcm, run.leads[b][1])
            work: dict = {}
            _add_scaled(work, one, ma, run.basis[a], p)
            _sub_scaled(work, one, mb, run.basis[b], p)
            quots = {} if track else None
            rem = _reduce_full(work, by_comp, run.basis, key, p, quots)
            treated.add((a, b))
            if rem:
                if track:
                    tr = {}
                    _add_scaled(tr, one, ma, run.tracking[a], p)
                    _sub_scaled(tr, one, mb, run.tracking[b], p)
                    for gi, q in quots.items():
                        for qm, qc in q.items():
                            _sub_scaled(tr, qc, qm, run.tracking[gi], p)
                else:
                    tr = None
                insert(rem, tr)
            elif record_syzygies:
                s = {}
                _add_scaled(s, one, ma, run.tracking[a], p)
                _sub_scaled(s, one, mb, run.tracking[b], p)
                for gi, q in quots.items():
                    for qm, qc in q.items():
                        _sub_scaled(s, qc, qm, run.tracking[gi], p)
                if s:
                    run.syzygies.append(s)
    return run


def divide_by_run(vec: dict, run: GBRun, want_quotients=False):
    """Full normal form against a completed run's basis."""
    p = run.ring.field.char or None
    by_comp = run.lead_index()
    quots = {} if want_quotients else None
    rem = _reduce_full(dict(vec), by_comp, run.basis, run.key, p, quots)
    return (rem, quots) if want_quotients else rem


def kernel_columns(columns, twists, ring, ideal_cols=(), counted_only=False,
                   degree_cap=None):
    """Generators of {w : A.w in span(ideal_cols)} for A = [columns].

    Returns (kept, kernel_vecs, run).  kernel_vecs live in the free module
    indexed by the kept columns (coordinates renumbered 0..len(kept)-1) when
    counted_only, else by all columns; ideal-column coordinates are
    projected away.  kept lists the columns that are minimal generators of
    the span of columns + ideal_cols.
    """
    inputs = list(columns) + list(ideal_cols)
    m = len(columns)
    run = run_buchberger(
        inputs, twists, ring,
        track=True, record_syzygies=True,
        counted=list(range(m)), degree_cap=degree_cap,
    )
    if run.capped:
        raise BoundExceededError("degree cap exceeded during syzygy computation",
                                 bound=degree_cap)
    kept = run.kept if counted_only else list(range(m))
    kept_pos = {j: i for i, j in enumerate(kept)}
    p = ring.field.char or None
    by_comp = run.lead_index()
    one = 1 if p else ring.field.one()
    raw = list(run.syzygies)
    # division defects: input_j - sum(q * basis) == 0 gives a relation
    for j in kept + list(range(m, len(inputs))):
        if not inputs[j]:
            if j < m:
                raw.append({(j, (0,) * ring.nvars): one})
            continue
        quots = {}
        rem = _reduce_full(dict(inputs[j]), by_comp, run.basis, run.key, p, quots)
        if rem:
            raise AssertionError("input failed to reduce over its own basis")
        w = {(j, (0,) * ring.nvars): one}
        for gi, q in quots.items():
            for qm, qc in q.items():
                _sub_scaled(w, qc, qm, run.tracking[gi], p)
        if w:
            raw.append(w)
    out = []
    for s in raw:
        proj = {}
        dropped = False
        for (j, mon), c in s.items():
            if j >= m:
                continue
            pos = kept_pos.get(j)
            if pos is None:
                dropped = True
                break
            proj[(pos, mon)] = c
        if not dropped and proj:
            out.append(proj)
    return kept, out, run


def interreduce(run: GBRun):
    """Canonical reduced basis (monic, tails fully reduced) from a run."""
    p = run.ring.field.char or None
    n = len(run.basis)
    survivors = []
    for i in range(n):
        ci, mi = run.leads[i]
        redundant = False
        for j in range(n):
            if j == i:
                continue
            cj, mj = run.leads[j]
            if ci == cj and monomial_divides(mj, mi) and (mj != mi or j < i):
                redundant = True
                break
        if not redundant:
            survivors.append(i)
    svecs = [run.basis[i] for i in survivors]
    out = []
    for si, i in enumerate(survivors):
        by_comp: dict = {}
        for sj, j in enumerate(survivors):
            if sj == si:
                continue
            comp, mon = run.leads[j]
            by_comp.setdefault(comp, []).append((mon, sj))
        rem = _reduce_full(dict(run.basis[i]), by_comp, svecs, run.key, p, None)
        if rem:
            out.append(rem)
    out.sort(key=lambda v: run.key(max(v, key=run.key)))
    return out


# -- wrappers on Polynomial columns ---------------------------------------


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of a submodule of a twisted free module."""

    ring: PolynomialRing
    twists: tuple
    generators: list        # list of tuple[Polynomial]
    reduced: bool = True

    @property
    def rank(self):
        return len(self.twists)

    def vectors(self):
        return [vec_from_polys(g) for g in self.generators]


def buchberger(gens, twists, ring: PolynomialRing, degree_cap=None,
               pair_tiebreak: str = "fifo") -> GroebnerBasis:
    """Unique reduced Groebner basis of the submodule spanned by gens."""
    vecs = []
    for g in gens:
        v = vec_from_polys(g)
        vec_degree(v, twists)  # homogeneity check
        vecs.append(v)
    run = run_buchberger(vecs, twists, ring, degree_cap=degree_cap,
                         pair_tiebreak=pair_tiebreak)
    if run.capped:
        raise BoundExceededError("degree cap exceeded", bound=degree_cap)
    reduced = interreduce(run)
    return GroebnerBasis(
        ring=ring,
        twists=tuple(twists),
        generators=[vec_to_polys(v, ring, len(twists)) for v in reduced],
    )


def normal_form(vector, basis: GroebnerBasis):
    """(remainder, quotients) of a vector against a Groebner basis.

    vector == sum(quotients[i] * generators[i]) + remainder, and no term of
    the remainder is divisible by a lead term of the basis.
    """
    ring = basis.ring
    if len(vector) != basis.rank:
        raise ValueError("rank mismatch")
    order = ModuleOrder(ring.order, basis.twists)
    key = _cached(order.key)
    p = ring.field.char or None
    bvecs = basis.vectors()
    by_comp: dict = {}
    for i, v in enumerate(bvecs):
        if not v:
            continue
        comp, mon = max(v, key=key)
        by_comp.setdefault(comp, []).append((mon, i))
    quots = {}
    rem = _reduce_full(vec_from_polys(vector), by_comp, bvecs, key, p, quots)
    remainder = vec_to_polys(rem, ring, basis.rank)
    qpolys = [Polynomial(ring, dict(quots.get(i, {}))) for i in range(len(bvecs))]
    return remainder, qpolys


def syzygy_basis(basis: GroebnerBasis):
    """Columns generating the kernel of the map defined by the generators."""
    vecs = basis.vectors()
    _, kern, _ = kernel_columns(vecs, basis.twists, basis.ring)
    rank = len(vecs)
    return [vec_to_polys(w, basis.ring, rank) for w in kern]
