"""Finitely presented graded modules over quotient rings R = S/I.

A module is always a cokernel presentation: generator twists plus a
homogeneous relation matrix over R, columns = relations.  All constructions
of the calculus (sums, tensor and Hom, transpose, kernels and images,
traces, biduality) reduce to one primitive: generators of
{w : A.w in span(modulo columns) + I*F} computed by lifting to the ambient
ring and adjoining ideal columns (groebner.kernel_columns).

Caches on a module (relation bases, minimal presentations) are computed at
most once and assigned atomically; values are immutable otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import (
    _add_scaled,
    _cached,
    _reduce_full,
    divide_by_run,
    interreduce,
    kernel_columns,
    run_buchberger,
    vec_degree,
    vec_from_polys,
    vec_to_polys,
)
from .orders import ModuleOrder
from .poly import (
    ANY_DEGREE,
    InhomogeneousError,
    Polynomial,
    PolynomialRing,
    format_polynomial,
)


class RingConstructionError(ValueError):
    pass


class QuotientRing:
    """Ambient polynomial ring S plus a homogeneous ideal I, as R = S/I.

    Carries the reduced Groebner basis of I, a minimal generating set of I,
    and the irrelevant maximal ideal (x1..xn).  Ring elements are normal
    forms modulo the basis of I.
    """

    def __init__(self, ambient: PolynomialRing, ideal_gens, name=None):
        self.ambient = ambient
        self.name = name
        gens = []
        for g in ideal_gens:
            if isinstance(g, str):
                g = ambient.from_string(g)
            if g.is_zero():
                continue
            d = g.homogeneous_degree()
            if not isinstance(d, int):
                raise InhomogeneousError(f"ideal generator {g!r} is not homogeneous")
            if d < 1:
                raise RingConstructionError(f"ideal generator {g!r} has degree 0")
            gens.append(g)
        self.ideal_input_gens = tuple(gens)
        vecs = [vec_from_polys((g,)) for g in gens]
        run = run_buchberger(vecs, (0,), ambient)
        reduced = interreduce(run)
        self.ideal_gb = tuple(vec_to_polys(v, ambient, 1)[0] for v in reduced)
        for g in self.ideal_gb:
            if isinstance(g.homogeneous_degree(), int) and g.homogeneous_degree() == 0:
                raise RingConstructionError("ideal is the unit ideal")
        kept, _, _ = kernel_columns(vecs, (0,), ambient, ideal_cols=(), counted_only=True)
        self.ideal_min_gens = tuple(gens[j] for j in kept)
        # reduction structure for normal forms of ring elements
        self._red_key = _cached(ModuleOrder(ambient.order, (0,)).key)
        self._red_vecs = [vec_from_polys((g,)) for g in self.ideal_gb]
        by_comp: dict = {}
        for i, v in enumerate(self._red_vecs):
            if v:
                by_comp.setdefault(0, []).append((max(v, key=self._red_key)[1], i))
        self._red_bycomp = by_comp
        self.invariants: dict = {}
        self._key = (
            repr(ambient.field),
            ambient.variables,
            ambient.order.kind,
            tuple(sorted(format_polynomial(g) for g in self.ideal_gb)),
        )

    # -- basic structure ---------------------------------------------------

    @property
    def field(self):
        return self.ambient.field

    @property
    def nvars(self):
        return self.ambient.nvars

    def is_trivial_quotient(self):
        return not self.ideal_gb

    def maximal_ideal_gens(self):
        return [self.ambient.variable(i) for i in range(self.nvars)]

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form of a ring element modulo the basis of I."""
        if p.is_zero() or not self.ideal_gb:
            return p
        pchar = self.ambient.field.char or None
        rem = _reduce_full(
            vec_from_polys((p,)), self._red_bycomp, self._red_vecs, self._red_key, pchar
        )
        return vec_to_polys(rem, self.ambient, 1)[0]

    def mul(self, p: Polynomial, q: Polynomial) -> Polynomial:
        return self.reduce(p * q)

    def from_string(self, text: str) -> Polynomial:
        return self.reduce(self.ambient.from_string(text))

    def zero(self):
        return self.ambient.zero()

    def one(self):
        return self.ambient.one()

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        base = repr(self.ambient)
        if not self.ideal_gb:
            return base
        return f"{base}/({', '.join(format_polynomial(g) for g in self.ideal_min_gens)})"


def quotient_ring(field, variables, ideal_gens, order="grevlex", name=None) -> QuotientRing:
    ambient = PolynomialRing(field, variables, order)
    return QuotientRing(ambient, ideal_gens, name=name)


def ideal_columns(ring: QuotientRing, twists) -> list:
    """The columns f*e_c for minimal generators f of I (lift bookkeeping)."""
    cols = []
    for c in range(len(twists)):
        for f in ring.ideal_min_gens:
            cols.append({(c, m): v for m, v in f.terms.items()})
    return cols


class PresentedModule:
    """coker(A : F1 -> F0) over a QuotientRing, with graded bookkeeping.

    twists are the degrees of the F0 generators; relations are columns
    (tuples of Polynomial, entries in normal form mod I), each homogeneous
    with respect to the twists.
    """

    def __init__(self, ring: QuotientRing, twists, relations, name=None):
        self.ring = ring
        self.twists = tuple(twists)
        cols = []
        for j, col in enumerate(relations):
            col = tuple(ring.reduce(e) for e in col)
            if len(col) != len(self.twists):
                raise ValueError(f"relation column {j} has wrong length")
            degs = set()
            for i, e in enumerate(col):
                d = e.homogeneous_degree()
                if d is ANY_DEGREE:
                    continue
                if not isinstance(d, int):
                    raise InhomogeneousError(
                        f"relation column {j}: entry {format_polynomial(e)} inhomogeneous"
                    )
                degs.add(d + self.twists[i])
            if len(degs) > 1:
                raise InhomogeneousError(
                    f"relation column {j} mixes degrees {sorted(degs)}"
                )
            if degs:
                cols.append(col)
        self.relations = tuple(cols)
        self.name = name
        self._cache: dict = {}

    # -- bookkeeping -------------------------------------------------------

    @property
    def rank0(self):
        return len(self.twists)

    def relation_degrees(self):
        degs = []
        for col in self.relations:
            d = None
            for i, e in enumerate(col):
                hd = e.homogeneous_degree()
                if isinstance(hd, int):
                    d = hd + self.twists[i]
                    break
            degs.append(d)
        return degs

    def relation_vecs(self):
        return [vec_from_polys(col) for col in self.relations]

    def relation_basis(self):
        """Groebner run for the column span of A extended by I*e_i (cached)."""
        run = self._cache.get("relgb")
        if run is None:
            vecs = self.relation_vecs() + ideal_columns(self.ring, self.twists)
            run = run_buchberger(vecs, self.twists, self.ring.ambient)
            self._cache["relgb"] = run
        return run

    def contains(self, column) -> bool:
        """Does the homogeneous vector lie in the relation submodule?"""
        vec = vec_from_polys(column)
        if not vec:
            return True
        return not divide_by_run(vec, self.relation_basis())

    def element_nf(self, column):
        """Canonical representative of an element of F0 modulo relations."""
        vec = vec_from_polys(column)
        rem = divide_by_run(vec, self.relation_basis())
        return vec_to_polys(rem, self.ring.ambient, self.rank0)

    def __repr__(self):
        label = self.name or "module"
        return (
            f"<{label}: {self.rank0} gens {list(self.twists)}, "
            f"{len(self.relations)} relations over {self.ring!r}>"
        )


def present_module(ring: QuotientRing, twists, relations, name=None) -> PresentedModule:
    """Build a module from twists and relation columns (polys or strings)."""
    cols = []
    for col in relations:
        parsed = tuple(
            ring.ambient.from_string(e) if isinstance(e, str) else e for e in col
        )
        cols.append(parsed)
    return PresentedModule(ring, twists, cols, name=name)


def cyclic_module(ring: QuotientRing, gens, name=None) -> PresentedModule:
    """R/(g1..gk) with generator in degree 0."""
    cols = []
    for g in gens:
        if isinstance(g, str):
            g = ring.ambient.from_string(g)
        cols.append((g,))
    return PresentedModule(ring, (0,), cols, name=name)


def free_module(ring: QuotientRing, twists, name=None) -> PresentedModule:
    return PresentedModule(ring, twists, (), name=name)


def residue_field(ring: QuotientRing) -> PresentedModule:
    cols = [(ring.ambient.variable(i),) for i in range(ring.nvars)]
    return PresentedModule(ring, (0,), cols, name="k")


def zero_module(ring: QuotientRing) -> PresentedModule:
    return PresentedModule(ring, (), (), name="0")


# -- minimal presentations -------------------------------------------------


def _prune_units(ring, twists, cols):
    """Eliminate degree-zero entries by row/column pivoting."""
    twists = list(twists)
    cols = [list(col) for col in cols]
    field = ring.field
    while True:
        pivot = None
        for j, col in enumerate(cols):
            for i, e in enumerate(col):
                c = e.constant_part()
                if not field.is_zero(c) and isinstance(e.homogeneous_degree(), int) \
                        and e.homogeneous_degree() == 0:
                    pivot = (i, j, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, c = pivot
        pivcol = cols[j]
        for jj, col in enumerate(cols):
            if jj == j:
                continue
            factor = col[i]
            if factor.is_zero():
                continue
            scale = factor.scale(field.inv(c))
            for ii in range(len(twists)):
                col[ii] = ring.reduce(col[ii] - scale * pivcol[ii])
        del cols[j]
        for col in cols:
            del col[i]
        del twists[i]
        cols = [col for col in cols if any(not e.is_zero() for e in col)]
    return tuple(twists), [tuple(col) for col in cols]


def minimal_presentation(module: PresentedModule) -> PresentedModule:
    """Isomorphic presentation with all relation entries in the maximal ideal
    and a minimal generator and relation set.  Idempotent."""
    cached = module._cache.get("minimal")
    if cached is not None:
        return cached
    ring = module.ring
    twists, cols = _prune_units(ring, module.twists, module.relations)
    vecs = [vec_from_polys(c) for c in cols]
    vecs = [v for v in vecs if v]
    if vecs:
        kept, kern, _ = kernel_columns(
            vecs, twists, ring.ambient,
            ideal_cols=ideal_columns(ring, twists), counted_only=True,
        )
        kept_vecs = [vecs[j] for j in kept]
        cols = [vec_to_polys(v, ring.ambient, len(twists)) for v in kept_vecs]
    else:
        kept_vecs, kern = [], []
        cols = []
    out = PresentedModule(ring, twists, cols, name=module.name)
    out._cache["minimal"] = out
    # seed for the resolution engine: d_1 columns and candidates for d_2
    out._cache["res_step1"] = (kept_vecs, kern)
    module._cache["minimal"] = out
    return out


def minimal_generator_count(module: PresentedModule) -> int:
    return minimal_presentation(module).rank0


def is_zero(module: PresentedModule) -> bool:
    return minimal_presentation(module).rank0 == 0


@dataclass
class Freeness:
    free: bool
    rank: int = 0
    twists: tuple = ()


def is_free(module: PresentedModule) -> Freeness:
    m = minimal_presentation(module)
    if not m.relations:
        return Freeness(True, m.rank0, m.twists)
    return Freeness(False)


# -- direct sum / tensor ----------------------------------------------------


def _check_same_ring(*modules):
    ring = modules[0].ring
    for m in modules[1:]:
        if m.ring != ring:
            raise ValueError("modules over different rings")
    return ring


def direct_sum(m: PresentedModule, n: PresentedModule) -> PresentedModule:
    ring = _check_same_ring(m, n)
    twists = m.twists + n.twists
    zero = ring.zero()
    cols = []
    for col in m.relations:
        cols.append(tuple(col) + (zero,) * n.rank0)
    for col in n.relations:
        cols.append((zero,) * m.rank0 + tuple(col))
    return PresentedModule(ring, twists, cols)


def tensor_product(m: PresentedModule, n: PresentedModule) -> PresentedModule:
    """coker[A tensor 1 | 1 tensor B] on F0(M) tensor F0(N)."""
    ring = _check_same_ring(m, n)
    twists = tuple(a + b for a in m.twists for b in n.twists)
    rn = n.rank0
    zero = ring.zero()
    cols = []
    for col in m.relations:
        for j in range(rn):
            new = [zero] * (m.rank0 * rn)
            for i, entry in enumerate(col):
                new[i * rn + j] = entry
            cols.append(tuple(new))
    for i in range(m.rank0):
        for col in n.relations:
            new = [zero] * (m.rank0 * rn)
            for h, entry in enumerate(col):
                new[i * rn + h] = entry
            cols.append(tuple(new))
    return PresentedModule(ring, twists, cols)


def shift_module(module: PresentedModule, amount: int) -> PresentedModule:
    """The twist M(-amount): generator degrees move by `amount`."""
    return PresentedModule(
        module.ring,
        tuple(t + amount for t in module.twists),
        module.relations,
        name=module.name,
    )


def power_module(module: PresentedModule, offsets) -> PresentedModule:
    """Direct sum of twisted copies: block b is module shifted by offsets[b]."""
    ring = module.ring
    r = module.rank0
    twists = tuple(off + t for off in offsets for t in module.twists)
    zero = ring.zero()
    cols = []
    for b in range(len(offsets)):
        for col in module.relations:
            new = [zero] * (len(offsets) * r)
            for h, entry in enumerate(col):
                new[b * r + h] = entry
            cols.append(tuple(new))
    return PresentedModule(ring, twists, cols)


# -- submodules and subquotients --------------------------------------------


@dataclass
class Submodule:
    """A submodule of an ambient presented module, with its own presentation."""

    module: PresentedModule
    gens_in_ambient: list      # columns over the ambient module's generators
    ambient: PresentedModule


def relations_among(gens_vecs, twists, ring, modulo_vecs=()) -> list:
    """Columns c with sum(c_i * gens_i) in span(modulo) + I*F."""
    if not gens_vecs:
        return []
    extra = list(modulo_vecs) + ideal_columns(ring, twists)
    _, kern, _ = kernel_columns(gens_vecs, twists, ring.ambient, ideal_cols=extra)
    return kern


def submodule_of(ambient: PresentedModule, gens_cols) -> Submodule:
    """Submodule of `ambient` generated by the given columns."""
    ring = ambient.ring
    gens = []
    for col in gens_cols:
        col = tuple(ring.reduce(e) for e in col)
        if any(not e.is_zero() for e in col):
            gens.append(col)
    vecs = [vec_from_polys(c) for c in gens]
    degs = [vec_degree(v, ambient.twists) for v in vecs]
    rel = relations_among(vecs, ambient.twists, ring,
                          modulo_vecs=ambient.relation_vecs())
    cols = [vec_to_polys(w, ring.ambient, len(gens)) for w in rel]
    mod = PresentedModule(ring, tuple(degs), cols)
    return Submodule(module=mod, gens_in_ambient=gens, ambient=ambient)


# -- module maps -------------------------------------------------------------


class IllDefinedMapError(ValueError):
    pass


class ModuleMap:
    """Degree-homogeneous map between presented modules.

    columns[j] is the image of source generator j, as a vector over the
    target's generators.  deg(columns[j]) = source.twists[j] + shift.
    Well-definedness (relations map into relations) is checked on
    construction.
    """

    def __init__(self, source: PresentedModule, target: PresentedModule,
                 columns, shift=0, check=True):
        _check_same_ring(source, target)
        self.source = source
        self.target = target
        self.shift = shift
        ring = source.ring
        cols = []
        for j, col in enumerate(columns):
            col = tuple(
                ring.reduce(ring.ambient.from_string(e) if isinstance(e, str) else e)
                for e in col
            )
            if len(col) != target.rank0:
                raise ValueError(f"map column {j} has wrong length")
            vec = vec_from_polys(col)
            d = vec_degree(vec, target.twists)
            if d is not None and d != source.twists[j] + shift:
                raise InhomogeneousError(
                    f"map column {j} has degree {d}, expected "
                    f"{source.twists[j] + shift}"
                )
            cols.append(col)
        self.columns = tuple(cols)
        if check:
            self._check_well_defined()

    def _check_well_defined(self):
        ring = self.source.ring
        for col in self.source.relations:
            image = self.apply_vector(col)
            if not self.target.contains(image):
                raise IllDefinedMapError(
                    "map does not send source relations into target relations"
                )

    def apply_vector(self, col):
        """Image of an F0(source) vector under the map, in F0(target) coords."""
        ring = self.source.ring
        out = [ring.zero()] * self.target.rank0
        for j, entry in enumerate(col):
            if entry.is_zero():
                continue
            for i, t in enumerate(self.columns[j]):
                if not t.is_zero():
                    out[i] = out[i] + entry * t
        return tuple(ring.reduce(e) for e in out)

    def matrix_vecs(self):
        return [vec_from_polys(c) for c in self.columns]


def identity_map(module: PresentedModule) -> ModuleMap:
    ring = module.ring
    cols = []
    for j in range(module.rank0):
        col = [ring.zero()] * module.rank0
        col[j] = ring.one()
        cols.append(tuple(col))
    return ModuleMap(module, module, cols, check=False)


def multiplication_map(r: Polynomial, module: PresentedModule) -> ModuleMap:
    ring = module.ring
    r = ring.reduce(r)
    d = r.homogeneous_degree()
    if not isinstance(d, int):
        raise InhomogeneousError("multiplier must be homogeneous")
    cols = []
    for j in range(module.rank0):
        col = [ring.zero()] * module.rank0
        col[j] = r
        cols.append(tuple(col))
    return ModuleMap(module, module, cols, shift=d, check=False)


@dataclass
class KernelImageCokernel:
    kernel: PresentedModule
    kernel_gens_in_source: list
    image: PresentedModule
    image_gens_in_target: list
    cokernel: PresentedModule


def map_kernel_image(f: ModuleMap) -> KernelImageCokernel:
    """Kernel, image, cokernel of a well-defined map, as presented modules."""
    ring = f.source.ring
    phi = f.matrix_vecs()
    # vectors c over source gens with phi(c) in target relations:
    preimage = relations_among(
        phi, f.target.twists, ring, modulo_vecs=f.target.relation_vecs()
    )
    # kernel: generated by the preimage vectors inside the source module
    kvecs = [w for w in preimage if w]
    kcols = [vec_to_polys(w, ring.ambient, f.source.rank0) for w in kvecs]
    kdegs = []
    for w in kvecs:
        d = vec_degree(w, tuple(t + f.shift for t in f.source.twists))
        kdegs.append(d - f.shift)
    krel = relations_among(
        kvecs, f.source.twists, ring, modulo_vecs=f.source.relation_vecs()
    )
    kernel = PresentedModule(
        ring, tuple(kdegs), [vec_to_polys(w, ring.ambient, len(kvecs)) for w in krel]
    )
    # image: generated by the map columns inside the target
    idx = [j for j, v in enumerate(phi) if v]
    igens = [f.columns[j] for j in idx]
    idegs = [f.source.twists[j] + f.shift for j in idx]
    irel = []
    for w in preimage:
        proj = {}
        for (j, mon), c in w.items():
            if j in idx:
                proj[(idx.index(j), mon)] = c
        if proj:
            irel.append(proj)
        # a preimage vector supported on zero columns is a trivial relation
    image = PresentedModule(
        ring, tuple(idegs), [vec_to_polys(w, ring.ambient, len(idx)) for w in irel]
    )
    coker = PresentedModule(
        ring, f.target.twists, list(f.columns) + list(f.target.relations)
    )
    return KernelImageCokernel(
        kernel=kernel,
        kernel_gens_in_source=kcols,
        image=image,
        image_gens_in_target=igens,
        cokernel=coker,
    )


def kernel_is_zero(f: ModuleMap) -> bool:
    """Cheaper injectivity test: every preimage vector dies in the source."""
    ring = f.source.ring
    phi = f.matrix_vecs()
    preimage = relations_among(
        phi, f.target.twists, ring, modulo_vecs=f.target.relation_vecs()
    )
    for w in preimage:
        col = vec_to_polys(w, ring.ambient, f.source.rank0)
        if not f.source.contains(col):
            return False
    return True


def nzd_test(r: Polynomial, module: PresentedModule) -> bool:
    """True iff multiplication by r is injective on the module."""
    ring = module.ring
    r = ring.reduce(r)
    d = r.homogeneous_degree()
    if not isinstance(d, int) or d < 1:
        raise ValueError("zero-divisor test needs a homogeneous element of degree >= 1")
    return kernel_is_zero(multiplication_map(r, module))


# -- transpose, Hom, duals ---------------------------------------------------


def auslander_transpose(module: PresentedModule) -> PresentedModule:
    """coker of the transposed minimal presentation, twists negated."""
    m = minimal_presentation(module)
    ring = m.ring
    rel_degs = m.relation_degrees()
    twists = tuple(-d for d in rel_degs)
    cols = []
    for i in range(m.rank0):
        col = tuple(m.relations[j][i] for j in range(len(m.relations)))
        cols.append(col)
    return PresentedModule(ring, twists, cols)


@dataclass
class HomModule:
    module: PresentedModule        # presentation of Hom(M, N)
    gen_vectors: list              # generators as vectors over (i, h) coords
    source: PresentedModule
    target: PresentedModule

    def generator_map(self, idx) -> ModuleMap:
        ring = self.source.ring
        rn = self.target.rank0
        u = self.gen_vectors[idx]
        cols = []
        for i in range(self.source.rank0):
            col = [ring.zero()] * rn
            for h in range(rn):
                entry = u[i * rn + h]
                col[h] = entry
            cols.append(tuple(col))
        return ModuleMap(self.source, self.target, cols,
                         shift=self.module.twists[idx], check=False)


def hom_module(m: PresentedModule, n: PresentedModule) -> HomModule:
    """Hom_R(M, N) as the kernel of Hom(F0, N) -> Hom(F1, N)."""
    ring = _check_same_ring(m, n)
    rn = n.rank0
    # X = Hom(F0,N): blocks indexed by generators of M, twists N.twists - m.twist
    x_offsets = [-t for t in m.twists]
    X = power_module(n, x_offsets)
    rel_degs = m.relation_degrees()
    y_offsets = [-d for d in rel_degs]
    Y = power_module(n, y_offsets)
    zero = ring.zero()
    cols = []
    for i in range(m.rank0):
        for h in range(rn):
            col = [zero] * (len(rel_degs) * rn)
            for j, relcol in enumerate(m.relations):
                entry = relcol[i]
                if not entry.is_zero():
                    col[j * rn + h] = entry
            cols.append(tuple(col))
    if rel_degs:
        phi = ModuleMap(X, Y, cols, check=False)
        kic_pre = relations_among(
            phi.matrix_vecs(), Y.twists, ring, modulo_vecs=Y.relation_vecs()
        )
    else:
        kic_pre = None
    if kic_pre is None:
        # no relations: Hom(M,N) = N^{rank0}
        gens = []
        for b in range(m.rank0):
            for h in range(rn):
                v = [zero] * (m.rank0 * rn)
                v[b * rn + h] = ring.one()
                gens.append(tuple(v))
        hom = X
        gen_vectors = gens
        return HomModule(module=hom, gen_vectors=gen_vectors, source=m, target=n)
    kvecs = [w for w in kic_pre if w]
    gen_vectors = [vec_to_polys(w, ring.ambient, m.rank0 * rn) for w in kvecs]
    kdegs = [vec_degree(w, X.twists) for w in kvecs]
    krel = relations_among(kvecs, X.twists, ring, modulo_vecs=X.relation_vecs())
    hom = PresentedModule(
        ring, tuple(kdegs), [vec_to_polys(w, ring.ambient, len(kvecs)) for w in krel]
    )
    return HomModule(module=hom, gen_vectors=gen_vectors, source=m, target=n)


def express_over(vector_vec, gens_vecs, twists, ring: QuotientRing):
    """Coefficients writing a vector over the given generators mod I, or None."""
    inputs = list(gens_vecs) + ideal_columns(ring, twists)
    run = run_buchberger(inputs, twists, ring.ambient, track=True)
    p = ring.field.char or None
    quots: dict = {}
    rem = _reduce_full(dict(vector_vec), run.lead_index(), run.basis, run.key, p, quots)
    if rem:
        return None
    m = len(gens_vecs)
    acc: dict = {}
    for gi, q in quots.items():
        for qm, qc in q.items():
            _add_scaled(acc, qc, qm, run.tracking[gi], p)
    out = [dict() for _ in range(m)]
    for (j, mon), c in acc.items():
        if j < m:
            out[j][mon] = c
    return [ring.reduce(Polynomial(ring.ambient, t)) for t in out]


@dataclass
class BidualityResult:
    map: ModuleMap
    injective: bool
    surjective: bool

    @property
    def bijective(self):
        return self.injective and self.surjective


def biduality_reflexive(module: PresentedModule) -> BidualityResult:
    """The natural evaluation M -> M** and whether it is bijective."""
    ring = module.ring
    m = minimal_presentation(module)
    R1 = free_module(ring, (0,))
    star = hom_module(m, R1)
    dstar = hom_module(star.module, R1)
    # ev_i = (phi_1(e_i), ..., phi_s(e_i)) as an element of Hom(M*, R) in
    # the (l, 0) coordinates of Hom(F0(M*), R), whose twists negate those
    # of the generators of M*.
    amb_twists = tuple(-t for t in star.module.twists)
    gen_vecs = [vec_from_polys(g) for g in dstar.gen_vectors]
    matrix = []
    for i in range(m.rank0):
        ev = {}
        for l, u in enumerate(star.gen_vectors):
            for mon, c in u[i].terms.items():
                ev[(l, mon)] = c
        coeffs = express_over(ev, gen_vecs, amb_twists, ring)
        if coeffs is None:
            raise AssertionError("evaluation map escaped the bidual")
        matrix.append(tuple(coeffs))
    ev_map = ModuleMap(m, dstar.module, matrix, shift=0, check=True)
    kic = map_kernel_image(ev_map)
    return BidualityResult(
        map=ev_map,
        injective=is_zero(kic.kernel),
        surjective=is_zero(kic.cokernel),
    )


@dataclass
class TraceResult:
    trace: Submodule
    equals_target: bool


def trace_submodule(m: PresentedModule, t: PresentedModule) -> TraceResult:
    """Sum of images of all homomorphisms M -> T, as a submodule of T."""
    ring = _check_same_ring(m, t)
    hom = hom_module(m, t)
    rn = t.rank0
    gens = []
    for u in hom.gen_vectors:
        for i in range(m.rank0):
            col = tuple(u[i * rn + h] for h in range(rn))
            if any(not e.is_zero() for e in col):
                gens.append(col)
    sub = submodule_of(t, gens)
    coker = PresentedModule(
        ring, t.twists, list(sub.gens_in_ambient) + list(t.relations)
    )
    return TraceResult(trace=sub, equals_target=is_zero(coker))


def annihilator(module: PresentedModule) -> list:
    """Generators of ann(M) as ring elements."""
    ring = module.ring
    m = minimal_presentation(module)
    if m.rank0 == 0:
        return [ring.one()]
    rel = m.relation_vecs()
    anns = None
    for i in range(m.rank0):
        col = {(i, (0,) * ring.nvars): ring.field.one() if not ring.field.char else 1}
        kern = relations_among([col], m.twists, ring, modulo_vecs=rel)
        gens_i = []
        for w in kern:
            poly = vec_to_polys(w, ring.ambient, 1)[0]
            poly = ring.reduce(poly)
            if not poly.is_zero():
                gens_i.append(poly)
        if anns is None:
            anns = gens_i
        else:
            anns = _ideal_intersection(ring, anns, gens_i)
        if not anns:
            return []
    # drop redundant generators
    out = []
    for g in anns:
        if not g.is_zero():
            out.append(g)
    return out


def _ideal_intersection(ring: QuotientRing, gens1, gens2) -> list:
    """Generators of the intersection of two homogeneous ideals of R."""
    if not gens1 or not gens2:
        return []
    cols = [vec_from_polys((g,)) for g in gens1]
    extra = [vec_from_polys((g,)) for g in gens2] + ideal_columns(ring, (0,))
    # c with sum(c*gens1) in (gens2) + I: the elements sum(c*gens1) generate
    # the intersection together with coefficient bookkeeping
    _, kern, _ = kernel_columns(cols, (0,), ring.ambient, ideal_cols=extra)
    out = []
    for w in kern:
        total = ring.zero()
        polys = vec_to_polys(w, ring.ambient, len(gens1))
        for c, g in zip(polys, gens1):
            if not c.is_zero():
                total = total + c * g
        total = ring.reduce(total)
        if not total.is_zero():
            out.append(total)
    return out
