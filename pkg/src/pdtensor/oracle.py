"""Degreewise linear-algebra oracle, independent of the Groebner pipeline.

Everything here expands graded pieces of modules as explicit finite
k-vector spaces and answers questions (dimensions, membership, Tor) by
exact Gaussian elimination.  It deliberately imports nothing from the
Groebner, module-calculus, or resolution code so it can serve as a second
opinion on all of them; only the scalar/polynomial substrate is shared.

Modules enter as plain presentation data: generator twists plus relation
columns over R = S/I, with the ideal given by its original (non-basis)
generators.  A graded piece of F0 at degree d has one coordinate per
(generator, monomial) pair; relation and ideal multiples span the subspace
to quotient out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Polynomial, PolynomialRing
from .orders import monomial_degree, monomial_mul


def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, in a fixed order."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


class RowSpace:
    """Incremental reduced row space over an exact field (sparse rows)."""

    def __init__(self, p=None):
        self.p = p
        self.pivots = {}   # pivot column -> row dict (pivot coefficient 1)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        p = self.p
        while True:
            hits = [c for c in row if c in self.pivots]
            if not hits:
                return row
            c = min(hits)
            coef = row[c]
            prow = self.pivots[c]
            if p is None:
                for col, v in prow.items():
                    w = row.get(col, 0) - coef * v
                    if w:
                        row[col] = w
                    else:
                        row.pop(col, None)
            else:
                for col, v in prow.items():
                    w = (row.get(col, 0) - coef * v) % p
                    if w:
                        row[col] = w
                    else:
                        row.pop(col, None)

    def insert(self, row: dict) -> bool:
        """Reduce and adjoin; True if the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        p = self.p
        piv = min(row)
        coef = row[piv]
        if p is None:
            inv = 1 / coef
            row = {c: v * inv for c, v in row.items()}
        else:
            inv = pow(coef, -1, p)
            row = {c: (v * inv) % p for c, v in row.items()}
        # keep existing rows reduced against the new pivot
        for c, prow in self.pivots.items():
            if piv in prow:
                f = prow[piv]
                if p is None:
                    for col, v in row.items():
                        w = prow.get(col, 0) - f * v
                        if w:
                            prow[col] = w
                        else:
                            prow.pop(col, None)
                else:
                    for col, v in row.items():
                        w = (prow.get(col, 0) - f * v) % p
                        if w:
                            prow[col] = w
                        else:
                            prow.pop(col, None)
        self.pivots[piv] = row
        return True


def rank_of_rows(rows, p=None) -> int:
    space = RowSpace(p)
    for r in rows:
        space.insert(r)
    return space.rank


@dataclass
class ModuleData:
    """Presentation data: generator twists and relation columns over R."""

    twists: tuple
    columns: tuple   # tuple of columns; each column is a tuple of Polynomial

    @staticmethod
    def of(module) -> "ModuleData":
        if isinstance(module, ModuleData):
            return module
        return ModuleData(tuple(module.twists), tuple(module.relations))


def tensor_data(md: ModuleData, nd: ModuleData) -> ModuleData:
    """Block presentation of the tensor product (definitional, no bases)."""
    twists = tuple(a + b for a in md.twists for b in nd.twists)
    rn = len(nd.twists)
    cols = []
    for col in md.columns:          # A x 1
        for j in range(rn):
            new = []
            for entry in col:
                vec = [entry.ring.zero()] * rn
                vec[j] = entry
                new.extend(vec)
            cols.append(tuple(new))
    zero = None
    for i in range(len(md.twists)):  # 1 x B
        for col in nd.columns:
            new = []
            for gi in range(len(md.twists)):
                if gi == i:
                    new.extend(col)
                else:
                    if zero is None:
                        zero = col[0].ring.zero()
                    new.extend([zero] * rn)
            cols.append(tuple(new))
    return ModuleData(twists, tuple(cols))


class GradedOracle:
    """Dense graded-piece computations over one quotient ring."""

    def __init__(self, ambient: PolynomialRing, ideal_gens):
        self.S = ambient
        self.ideal_gens = list(ideal_gens)
        self.p = ambient.field.char or None
        self.n = ambient.nvars

    # -- pieces of a presented module -------------------------------------

    def piece_coords(self, twists, d):
        coords = []
        for g, t in enumerate(twists):
            for m in monomials(self.n, d - t):
                coords.append((g, m))
        return coords

    def _poly_row(self, g, mon, poly, row):
        for m2, c in poly.terms.items():
            col = (g, monomial_mul(mon, m2))
            if self.p is None:
                v = row.get(col, 0) + c
            else:
                v = (row.get(col, 0) + c) % self.p
            if v:
                row[col] = v
            else:
                row.pop(col, None)
        return row

    def junk_rows(self, twists, d):
        """Spanning rows of (I * F0)_d inside the coordinate space."""
        rows = []
        for g, t in enumerate(twists):
            for f in self.ideal_gens:
                e = f.homogeneous_degree()
                if not isinstance(e, int):
                    continue
                for m in monomials(self.n, d - t - e):
                    rows.append(self._poly_row(g, m, f, {}))
        return rows

    def relation_rows(self, data: ModuleData, d):
        """Spanning rows of (relations + I*F0)_d."""
        rows = self.junk_rows(data.twists, d)
        for col in data.columns:
            s = None
            for g, entry in enumerate(col):
                hd = entry.homogeneous_degree()
                if isinstance(hd, int):
                    s = hd + data.twists[g]
                    break
            if s is None:
                continue  # zero column
            for m in monomials(self.n, d - s):
                row: dict = {}
                for g, entry in enumerate(col):
                    self._poly_row(g, m, entry, row)
                rows.append(row)
        return rows

    def module_dim(self, module, d) -> int:
        data = ModuleData.of(module)
        coords = self.piece_coords(data.twists, d)
        if not coords:
            return 0
        return len(coords) - rank_of_rows(self.relation_rows(data, d), self.p)

    def module_dims(self, module, dmax, dmin=None):
        data = ModuleData.of(module)
        lo = min(data.twists) if data.twists else 0
        if dmin is not None:
            lo = dmin
        return {d: self.module_dim(data, d) for d in range(lo, dmax + 1)}

    def ring_dim(self, d) -> int:
        return self.module_dim(ModuleData((0,), ()), d)

    # -- membership --------------------------------------------------------

    def member(self, vector, columns, twists, degree=None) -> bool:
        """Is the homogeneous vector in span(columns) + I*F0?"""
        data = ModuleData(tuple(twists), tuple(columns))
        space = RowSpace(self.p)
        row: dict = {}
        for g, entry in enumerate(vector):
            self._poly_row(g, (0,) * self.n, entry, row)
        if not row:
            return True
        if degree is None:
            degs = set()
            for g, entry in enumerate(vector):
                hd = entry.homogeneous_degree()
                if isinstance(hd, int):
                    degs.add(hd + data.twists[g])
            if len(degs) != 1:
                raise ValueError("membership needs a homogeneous vector")
            degree = degs.pop()
        for r in self.relation_rows(data, degree):
            space.insert(r)
        return not space.reduce(row)

    # -- degreewise free resolution segment --------------------------------

    def resolution_segment(self, module, length, dmax):
        """Free differentials d_1..d_length exact through degree dmax.

        Returns (twist_list, diff_list): twist_list[i] are the generator
        degrees of F_i; diff_list[i] is the matrix of F_{i+1} -> F_i as
        columns of coordinate rows.  Kernels are computed degree by degree
        and covered by degreewise-minimal generators.
        """
        data = ModuleData.of(module)
        twists = [list(data.twists)]
        diffs = []
        # columns of d_1 as coordinate dicts over F_0
        cols = []
        coldegs = []
        for col in data.columns:
            row: dict = {}
            s = None
            for g, entry in enumerate(col):
                self._poly_row(g, (0,) * self.n, entry, row)
                hd = entry.homogeneous_degree()
                if isinstance(hd, int):
                    s = hd + data.twists[g]
            if row and s is not None:
                cols.append(row)
                coldegs.append(s)
        diffs.append((cols, coldegs))
        twists.append(list(coldegs))
        for step in range(1, length):
            prev_cols, prev_degs = diffs[-1]
            below_twists = twists[step - 1]
            gens, gen_degs = self._kernel_generators(
                prev_cols, prev_degs, below_twists, dmax
            )
            diffs.append((gens, gen_degs))
            twists.append(list(gen_degs))
        return twists, diffs

    def _kernel_generators(self, cols, coldegs, below_twists, dmax):
        """Degreewise-minimal generators of ker(F1 -> F0) through dmax.

        cols are coordinate dicts over F0; the kernel is taken over R, so
        image vectors are compared modulo (I*F0) at each degree.
        """
        gens = []      # coordinate dicts over F1 = free on cols
        gen_degs = []
        n = self.n
        lo = min(coldegs) if coldegs else 0
        for d in range(lo, dmax + 1):
            # span of x * (already chosen) + I*F1 at degree d
            cover = RowSpace(self.p)
            for r in self.junk_rows(coldegs, d):
                cover.insert(r)
            for g, gd in zip(gens, gen_degs):
                for m in monomials(n, d - gd):
                    row: dict = {}
                    for (j, m2), c in g.items():
                        col = (j, monomial_mul(m, m2))
                        row[col] = c
                    cover.insert(row)
            # nullspace of the degree-d piece of the map, modulo junk below
            space = RowSpace(self.p)
            for r in self.junk_rows(below_twists, d):
                space.insert({("amb", c): v for c, v in r.items()})
            candidates = []
            for j, s in enumerate(coldegs):
                for m in monomials(n, d - s):
                    image: dict = {}
                    for c0, v in cols[j].items():
                        g0, m0 = c0
                        image[("amb", (g0, monomial_mul(m, m0)))] = v
                    tag = ("tag", (j, m))
                    image[tag] = 1 if self.p else self.S.field.one()
                    candidates.append(image)
            for cand in candidates:
                red = space.reduce(cand)
                main = {c: v for c, v in red.items() if c[0] == "amb"}
                if main:
                    space.insert(red)
                    continue
                vec = {c[1]: v for c, v in red.items() if c[0] == "tag"}
                if not vec:
                    continue
                if cover.insert(dict(vec)):
                    gens.append(vec)
                    gen_degs.append(d)
            # guard: tag columns must never collide with ambient pivots;
            # they cannot, since keys are namespaced.
        return gens, gen_degs

    # -- Tor ---------------------------------------------------------------

    def tor_dims(self, mdata, ndata, imax, dmax):
        """Graded dims of Tor_i(M, N) for 0 <= i <= imax, degrees <= dmax.

        Returns {i: {d: dim}}.  Uses a degreewise-exact free resolution
        segment of M tensored with N.
        """
        mdata = ModuleData.of(mdata)
        ndata = ModuleData.of(ndata)
        twists, diffs = self.resolution_segment(mdata, imax + 1, dmax)
        out = {}
        lo = min(mdata.twists) + min(ndata.twists) if mdata.twists and ndata.twists else 0
        for i in range(imax + 1):
            dims = {}
            for d in range(lo, dmax + 1):
                dims[d] = self._homology_dim(twists, diffs, ndata, i, d)
            out[i] = dims
        return out

    def _tensor_coords(self, ftwists, ndata, d):
        coords = []
        for g, a in enumerate(ftwists):
            for h, b in enumerate(ndata.twists):
                for m in monomials(self.n, d - a - b):
                    coords.append((g, h, m))
        return coords

    def _tensor_junk(self, ftwists, ndata, d):
        """(F_i tensor (relations of N + I N))_d spanning rows."""
        rows = []
        for g, a in enumerate(ftwists):
            for h, b in enumerate(ndata.twists):
                for f in self.ideal_gens:
                    e = f.homogeneous_degree()
                    if not isinstance(e, int):
                        continue
                    for m in monomials(self.n, d - a - b - e):
                        row: dict = {}
                        for m2, c in f.terms.items():
                            col = (g, h, monomial_mul(m, m2))
                            row[col] = c
                        rows.append(row)
            for col in ndata.columns:
                s = None
                for h, entry in enumerate(col):
                    hd = entry.homogeneous_degree()
                    if isinstance(hd, int):
                        s = hd + ndata.twists[h]
                        break
                if s is None:
                    continue
                for m in monomials(self.n, d - a - s):
                    row = {}
                    for h, entry in enumerate(col):
                        for m2, c in entry.terms.items():
                            key = (g, h, monomial_mul(m, m2))
                            if self.p is None:
                                v = row.get(key, 0) + c
                            else:
                                v = (row.get(key, 0) + c) % self.p
                            if v:
                                row[key] = v
                            else:
                                row.pop(key, None)
                    rows.append(row)
        return rows

    def _diff_image_rows(self, twists, diffs, ndata, i, d):
        """Images of the degree-d coordinates of F_i tensor N under d_i."""
        if i - 1 >= len(diffs) or i < 1:
            return []
        cols, coldegs = diffs[i - 1]
        rows = []
        for j, s in enumerate(coldegs):
            for h, b in enumerate(ndata.twists):
                for m in monomials(self.n, d - s - b):
                    row: dict = {}
                    for (g0, m0), c in cols[j].items():
                        key = (g0, h, monomial_mul(m, m0))
                        if self.p is None:
                            v = row.get(key, 0) + c
                        else:
                            v = (row.get(key, 0) + c) % self.p
                        if v:
                            row[key] = v
                        else:
                            row.pop(key, None)
                    if row:
                        rows.append(row)
        return rows

    def _homology_dim(self, twists, diffs, ndata, i, d):
        # dim H_i = dim ker(D_i on C_i/J_i) - rank(D_{i+1} into C_i/J_i)
        coords_i = self._tensor_coords(twists[i], ndata, d)
        if not coords_i:
            return 0
        junk_i = self._tensor_junk(twists[i], ndata, d)
        rank_junk_i = rank_of_rows(junk_i, self.p)
        dim_ci = len(coords_i) - rank_junk_i
        if i == 0:
            rank_di = 0
        else:
            junk_below = self._tensor_junk(twists[i - 1], ndata, d)
            base = RowSpace(self.p)
            for r in junk_below:
                base.insert(r)
            base_rank = base.rank
            for r in self._diff_image_rows(twists, diffs, ndata, i, d):
                base.insert(r)
            rank_di = base.rank - base_rank
        ker_dim = dim_ci - rank_di
        up = RowSpace(self.p)
        for r in junk_i:
            up.insert(r)
        up_rank = up.rank
        for r in self._diff_image_rows(twists, diffs, ndata, i + 1, d):
            up.insert(r)
        rank_dip1 = up.rank - up_rank
        return ker_dim - rank_dip1


def oracle_for(ring) -> GradedOracle:
    """Oracle over a quotient-ring-like object (ambient + input ideal gens)."""
    ambient = getattr(ring, "ambient", ring)
    gens = list(getattr(ring, "ideal_input_gens", ()))
    return GradedOracle(ambient, gens)
