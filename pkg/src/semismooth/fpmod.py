"""Finitely presented modules over presented rings.

A module is R^ngens modulo the row span of a relation matrix, with R itself a
quotient of a polynomial ring.  All structural operations (Hom, Ext^1,
annihilators, kernels, invariants of an involution) reduce to module_kernel
calls in a suitable free module; the flattening conventions for Hom-type
computations are documented at each site.

Ext^1(M, N) uses the honest two-step route: dualize R^r -> R^g from a
presentation, compute syzygies of the relation rows for the next step, and
take kernel modulo image.  For a hypersurface R = P/(f) and M = Omega this
collapses to R/(f's partials), which the tests exploit as an oracle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from . import groebner, linalg
from .engine import ensure_budget
from .errors import InputError
from .groebner import ModuleMatrix, module_gb, module_kernel
from .poly import Polynomial, as_poly
from .rings import RingMap, RingPresentation


class FPModule:
    """Cokernel presentation: ngens generators, relations = rows of a matrix."""

    __slots__ = ("ring", "ngens", "relations", "gen_names", "_gb")

    def __init__(self, ring: RingPresentation, relations, ngens: int, gen_names: Optional[Sequence] = None):
        self.ring = ring
        self.ngens = ngens
        if isinstance(relations, ModuleMatrix):
            if relations.ncols != ngens:
                raise InputError("relation columns do not match generator count")
            self.relations = relations
        else:
            self.relations = ModuleMatrix(ring, relations, ngens)
        if gen_names is not None and len(gen_names) != ngens:
            raise InputError("gen_names length mismatch")
        self.gen_names = tuple(gen_names) if gen_names is not None else None
        self._gb = None

    @staticmethod
    def free(ring: RingPresentation, n: int, gen_names: Optional[Sequence] = None) -> "FPModule":
        return FPModule(ring, ModuleMatrix(ring, [], n, reduce=False), n, gen_names)

    @staticmethod
    def cyclic(ring: RingPresentation, ideal_gens: Iterable, name: str = None) -> "FPModule":
        rows = [[as_poly(ring.ambient, g)] for g in ideal_gens]
        return FPModule(ring, rows, 1, [name] if name else None)

    def span_gb(self, budget=None) -> list:
        if self._gb is None:
            self._gb = module_gb(self.ring, [list(r) for r in self.relations.rows], self.ngens, budget)
        return self._gb

    def nf(self, row: Sequence, budget=None) -> list:
        return groebner.module_nf(self.ring, self.span_gb(budget), [as_poly(self.ring.ambient, p) for p in row], budget)

    def contains_zero(self, row: Sequence, budget=None) -> bool:
        """Whether the row represents 0 in the module."""
        return all(p.is_zero() for p in self.nf(row, budget))

    def is_zero_module(self, budget=None) -> bool:
        amb = self.ring.ambient
        for j in range(self.ngens):
            e = [amb.one() if i == j else amb.zero() for i in range(self.ngens)]
            if not self.contains_zero(e, budget):
                return False
        return True

    def gen_row(self, j: int) -> list:
        amb = self.ring.ambient
        return [amb.one() if i == j else amb.zero() for i in range(self.ngens)]

    def __repr__(self):
        return f"FPModule({self.ring!r}^{self.ngens} / {self.relations.nrows} relations)"


class ModuleMap:
    """R-linear map between presented modules, given on generators by a matrix.

    matrix has source.ngens rows and target.ngens columns; generator j of the
    source goes to the j-th row, read as an element of the target.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FPModule, target: FPModule, matrix, check: bool = True, budget=None):
        self.source = source
        self.target = target
        if not isinstance(matrix, ModuleMatrix):
            matrix = ModuleMatrix(source.ring, matrix, target.ngens)
        if matrix.nrows != source.ngens or matrix.ncols != target.ngens:
            raise InputError("map matrix shape does not match modules")
        self.matrix = matrix
        if check:
            for r in source.relations.rows:
                img = _row_times_matrix(r, matrix)
                if not target.contains_zero(img, budget):
                    raise InputError("map does not send relations into relations")

    @staticmethod
    def identity(m: FPModule) -> "ModuleMap":
        return ModuleMap(m, m, ModuleMatrix.identity(m.ring, m.ngens), check=False)

    def apply(self, row: Sequence) -> list:
        amb = self.source.ring.ambient
        return _row_times_matrix([as_poly(amb, p) for p in row], self.matrix)

    def then(self, other: "ModuleMap") -> "ModuleMap":
        if other.source is not self.target and other.source.ngens != self.target.ngens:
            raise InputError("composition shape mismatch")
        return ModuleMap(self.source, other.target, self.matrix.mul(other.matrix), check=False)

    def kernel_generators(self, budget=None) -> ModuleMatrix:
        """Rows in R^{source.ngens} generating the preimage of 0."""
        vectors = [list(r) for r in self.matrix.rows]
        sub = [list(r) for r in self.target.relations.rows]
        return module_kernel(self.source.ring, vectors, sub, budget)

    def is_injective(self, budget=None) -> bool:
        ker = self.kernel_generators(budget)
        return all(self.source.contains_zero(list(r), budget) for r in ker.rows)

    def cokernel(self) -> FPModule:
        rel = self.target.relations.vstack(self.matrix)
        return FPModule(self.target.ring, rel, self.target.ngens, self.target.gen_names)

    def is_surjective(self, budget=None) -> bool:
        return self.cokernel().is_zero_module(budget)

    def is_isomorphism(self, budget=None) -> bool:
        return self.is_injective(budget) and self.is_surjective(budget)


def _row_times_matrix(row: Sequence, matrix: ModuleMatrix) -> list:
    z = matrix.ring.ambient.zero()
    out = [z] * matrix.ncols
    for j, c in enumerate(row):
        if c.is_zero():
            continue
        for l in range(matrix.ncols):
            out[l] = out[l] + c * matrix.rows[j][l]
    return out


# ---------------------------------------------------------------------------
# Hom and Ext^1


def hom(M: FPModule, N: FPModule, budget=None) -> tuple:
    """Presentation of Hom(M, N) and its generating maps.

    Returns (H, basis) where H is an FPModule and basis[i] is the ModuleMap
    M -> N realizing the i-th generator.  An H-element with coefficient row c
    is the map with matrix sum_i c_i basis[i].matrix.

    Flattening: an assignment generator_j -> element of N lives in
    R^{gM * gN}; unknown (j, l) sits at position j*gN + l.  The constraint
    from relation row r of M lands in block r of R^{rM * gN}.
    """
    ring = M.ring
    if ring is not N.ring and ring.ambient.vars != N.ring.ambient.vars:
        raise InputError("hom requires modules over the same ring")
    gM, gN = M.ngens, N.ngens
    relM, relN = M.relations, N.relations
    if gM == 0 or gN == 0:
        H = FPModule.free(ring, 0)
        return H, []
    if relM.nrows == 0:
        # free source: Hom = N^gM, no constraint system needed
        K = ModuleMatrix.identity(ring, gM * gN)
    else:
        vectors = []
        for j in range(gM):
            for l in range(gN):
                v = [ring.ambient.zero()] * (relM.nrows * gN)
                for r in range(relM.nrows):
                    v[r * gN + l] = relM.rows[r][j]
                vectors.append(v)
        sub = []
        for r in range(relM.nrows):
            for s in relN.rows:
                v = [ring.ambient.zero()] * (relM.nrows * gN)
                for l in range(gN):
                    v[r * gN + l] = s[l]
                sub.append(v)
        K = module_kernel(ring, vectors, sub, budget)
    trivial = []
    for j in range(gM):
        for s in relN.rows:
            v = [ring.ambient.zero()] * (gM * gN)
            for l in range(gN):
                v[j * gN + l] = s[l]
            trivial.append(v)
    rel = module_kernel(ring, [list(r) for r in K.rows], trivial, budget)
    H = FPModule(ring, rel, K.nrows)
    basis = []
    for krow in K.rows:
        mat = [[krow[j * gN + l] for l in range(gN)] for j in range(gM)]
        basis.append(ModuleMap(M, N, ModuleMatrix(ring, mat, gN), check=False))
    return H, basis


def ext1(M: FPModule, N: FPModule, budget=None) -> FPModule:
    """Ext^1(M, N) from the two-step resolution R^s -> R^r -> R^g -> M.

    The middle dual is N^r (unknown (i, l) at position i*gN + l); the kernel
    of composing with the syzygy matrix is taken modulo the image of the dual
    of the presentation matrix.
    """
    ring = M.ring
    gM, gN = M.ngens, N.ngens
    relM = M.relations
    rM = relM.nrows
    if rM == 0 or gN == 0:
        return FPModule.free(ring, 0)
    d2 = module_kernel(ring, [list(r) for r in relM.rows], (), budget)
    s = d2.nrows
    if s == 0:
        K = ModuleMatrix.identity(ring, rM * gN)
    else:
        vectors = []
        for i in range(rM):
            for l in range(gN):
                v = [ring.ambient.zero()] * (s * gN)
                for t in range(s):
                    v[t * gN + l] = d2.rows[t][i]
                vectors.append(v)
        sub = []
        for t in range(s):
            for srow in N.relations.rows:
                v = [ring.ambient.zero()] * (s * gN)
                for l in range(gN):
                    v[t * gN + l] = srow[l]
                sub.append(v)
        K = module_kernel(ring, vectors, sub, budget)
    drop = []
    for j in range(gM):
        for l in range(gN):
            v = [ring.ambient.zero()] * (rM * gN)
            for i in range(rM):
                v[i * gN + l] = relM.rows[i][j]
            drop.append(v)
    for i in range(rM):
        for srow in N.relations.rows:
            v = [ring.ambient.zero()] * (rM * gN)
            for l in range(gN):
                v[i * gN + l] = srow[l]
            drop.append(v)
    rel = module_kernel(ring, [list(r) for r in K.rows], drop, budget)
    E = FPModule(ring, rel, K.nrows)
    Emin, _, _ = minimize(E, budget)
    return Emin


# ---------------------------------------------------------------------------
# presentation surgery


def minimize(M: FPModule, budget=None) -> tuple:
    """Prune generators killed by unit pivots in the relation matrix.

    Returns (Mmin, old_to_new, new_to_old): matrices expressing the original
    generators in the surviving ones and vice versa (the latter is a plain
    inclusion of a subset).  Only constant pivots are used; entries are in
    normal form, so a unit hiding behind a relation still shows up constant.
    """
    ring = M.ring
    amb = ring.ambient
    rows = [list(r) for r in M.relations.rows]
    alive = list(range(M.ngens))
    old_exprs = [[amb.one() if i == j else amb.zero() for j in range(M.ngens)] for i in range(M.ngens)]

    while True:
        found = None
        for i, r in enumerate(rows):
            for jpos, c in enumerate(r):
                if not c.is_zero() and c.is_constant():
                    found = (i, jpos, c.constant_value())
                    break
            if found:
                break
        if not found:
            break
        i, jpos, c = found
        pivot = rows.pop(i)
        scale = Fraction(1) / c
        repl = [ring.nf(-scale * pivot[k]) for k in range(len(alive))]
        repl[jpos] = amb.zero()
        new_rows = []
        for r in rows:
            f = r[jpos]
            out = [ring.nf(r[k] + f * repl[k]) for k in range(len(alive))]
            del out[jpos]
            if any(not p.is_zero() for p in out):
                new_rows.append(out)
        rows = new_rows
        # rewrite the running expressions for the original generators
        for e in old_exprs:
            f = e[jpos]
            for k in range(len(alive)):
                e[k] = ring.nf(e[k] + f * repl[k])
            del e[jpos]
        del alive[jpos]

    names = [M.gen_names[j] for j in alive] if M.gen_names else None
    Mmin = FPModule(ring, rows, len(alive), names)
    old_to_new = ModuleMatrix(ring, old_exprs, len(alive))
    inc = [[amb.one() if alive[i] == j else amb.zero() for j in range(M.ngens)] for i in range(len(alive))]
    new_to_old = ModuleMatrix(ring, inc, M.ngens, reduce=False)
    return Mmin, old_to_new, new_to_old


def base_change(m: RingMap, M: FPModule) -> FPModule:
    """Apply m to every relation entry; generators carry over one to one."""
    rows = [[m.apply(p) for p in r] for r in M.relations.rows]
    return FPModule(m.target, rows, M.ngens, M.gen_names)


# ---------------------------------------------------------------------------
# numerical invariants and certificates


def _det(rows: list) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = None
    for i in range(n):
        c = rows[i][0]
        if c.is_zero():
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = c * _det(minor)
        if i % 2:
            term = -term
        out = term if out is None else out + term
    return out if out is not None else rows[0][0].ring.zero()


def fitting_ideal(M: FPModule, i: int, budget=None) -> list:
    """Ideal of (ngens - i)-minors of the relation matrix, as quotient-ring gens."""
    size = M.ngens - i
    amb = M.ring.ambient
    if size <= 0:
        return [amb.one()]
    rel = M.relations
    if size > rel.nrows:
        return []
    minors = []
    for rsel in combinations(range(rel.nrows), size):
        for csel in combinations(range(M.ngens), size):
            sub = [[rel.rows[r][c] for c in csel] for r in rsel]
            minors.append(_det(sub))
    return quotient_ideal_gens(M.ring, minors, budget)


def quotient_ideal_gens(ring: RingPresentation, gens: Iterable, budget=None) -> list:
    """Canonical generators of an ideal of the quotient: GB, then drop relations."""
    gb = groebner.ideal_gb(ring, gens, budget)
    out = []
    for p in gb.polys:
        q = ring.nf(p)
        if not q.is_zero() and q not in out:
            out.append(q)
    return out


def annihilator(M: FPModule, budget=None) -> list:
    """Generators of {a : a*M = 0} in the quotient ring."""
    amb = M.ring.ambient
    result = None
    for j in range(M.ngens):
        k = module_kernel(M.ring, [M.gen_row(j)], [list(r) for r in M.relations.rows], budget)
        gens = [r[0] for r in k.rows]
        result = gens if result is None else groebner.intersect(M.ring, result, gens, budget)
    if result is None:
        return [amb.one()]
    return quotient_ideal_gens(M.ring, result, budget)


def cyclic_generated_by(M: FPModule, row: Sequence, budget=None) -> bool:
    """Whether the class of row generates M."""
    rows = [[as_poly(M.ring.ambient, p) for p in row]] + [list(r) for r in M.relations.rows]
    gb = module_gb(M.ring, rows, M.ngens, budget)
    return all(
        groebner.module_contains(M.ring, gb, M.gen_row(j), budget) for j in range(M.ngens)
    )


def element_annihilator(M: FPModule, row: Sequence, budget=None) -> list:
    """Generators of {a : a*row = 0 in M}."""
    k = module_kernel(M.ring, [[as_poly(M.ring.ambient, p) for p in row]], [list(r) for r in M.relations.rows], budget)
    return quotient_ideal_gens(M.ring, [r[0] for r in k.rows], budget)


def free_rank_one_certificate(M: FPModule, budget=None) -> dict:
    """Certify M is free of rank one, via an explicit generator when one exists.

    Strategy: try each standard generator as a cyclic generator with zero
    annihilator (gives freeness on the nose); fall back to the Fitting-ideal
    test Fitt_0 = 0, Fitt_1 = (1), which certifies invertibility without
    naming a generator.
    """
    for j in range(M.ngens):
        row = M.gen_row(j)
        if cyclic_generated_by(M, row, budget) and not element_annihilator(M, row, budget):
            return {"free": True, "generator": row, "method": "cyclic"}
    f0 = fitting_ideal(M, 0, budget)
    f1 = fitting_ideal(M, 1, budget)
    ok = not f0 and any(p.is_constant() and not p.is_zero() for p in f1)
    return {"free": ok, "generator": None, "method": "fitting", "fitt0": f0, "fitt1": f1}


def fiber_dimension(M: FPModule, point: Mapping) -> int:
    """dim over Q of M tensor the residue field of a rational point."""
    amb = M.ring.ambient
    consts = {v: amb.const(point[v]) for v in amb.vars}
    for q in M.ring.relations:
        val = q.substitute(amb, consts)
        if not val.is_zero():
            raise InputError("point does not lie on the variety")
    rows = []
    for r in M.relations.rows:
        rows.append([p.substitute(amb, consts).constant_value() for p in r])
    return M.ngens - linalg.rank(rows)


# ---------------------------------------------------------------------------
# involutions


class InvolutionAction:
    """A module map squaring to the identity on a module."""

    __slots__ = ("module", "action")

    def __init__(self, module: FPModule, action: ModuleMap, budget=None):
        if action.source is not module or action.target is not module:
            raise InputError("action must be an endomorphism of the module")
        square = action.then(action)
        ident = ModuleMatrix.identity(module.ring, module.ngens)
        for i in range(module.ngens):
            diff = [a - b for a, b in zip(square.matrix.rows[i], ident.rows[i])]
            if not module.contains_zero(diff, budget):
                raise InputError("action does not square to the identity")
        self.module = module
        self.action = action


def _projector_part(act: InvolutionAction, sign: int, budget=None) -> tuple:
    M = act.module
    ring = M.ring
    half = Fraction(1, 2)
    ident = ModuleMatrix.identity(ring, M.ngens)
    rows = []
    for i in range(M.ngens):
        rows.append([half * (a + sign * b) for a, b in zip(ident.rows[i], act.action.matrix.rows[i])])
    P = ModuleMatrix(ring, rows, M.ngens)
    rel = module_kernel(ring, [list(r) for r in P.rows], [list(r) for r in M.relations.rows], budget)
    part = FPModule(ring, rel, M.ngens)
    pmin, _, new_to_old = minimize(part, budget)
    inclusion = ModuleMap(pmin, M, new_to_old.mul(P), check=False)
    return pmin, inclusion


def invariants(act: InvolutionAction, budget=None) -> tuple:
    """The fixed part of the involution with its inclusion map."""
    return _projector_part(act, +1, budget)


def antiinvariants(act: InvolutionAction, budget=None) -> tuple:
    return _projector_part(act, -1, budget)


# ---------------------------------------------------------------------------
# restriction of scalars


class Pushforward:
    """A module over the target of a finite ring map, seen over the source.

    Generators are mu_k * e_j for the supplied algebra generators mu_k; the
    express method rewrites a target-side element row in these generators with
    coefficients from the source ring, when the elimination order finds one.
    """

    __slots__ = (
        "module", "gen_info", "_comb_ring", "_gb_vecs", "_key", "_gm",
        "_src_names", "map", "source_module", "_mus",
    )

    def __init__(self, module, gen_info, comb_ring, gb_vecs, key, gm, src_names, ring_map, source_module, mus):
        self.module = module
        self.gen_info = gen_info
        self._comb_ring = comb_ring
        self._gb_vecs = gb_vecs
        self._key = key
        self._gm = gm
        self._src_names = src_names
        self.map = ring_map
        self.source_module = source_module
        self._mus = mus

    def express(self, row: Sequence, budget=None) -> Optional[list]:
        """Source-ring coefficients over the pushforward generators, or None."""
        from . import engine

        amb = self.map.target.ambient
        v = {}
        for j, p in enumerate(row):
            p = as_poly(amb, p).rename(self._comb_ring)
            for e, c in p.terms.items():
                v[(j, e)] = v.get((j, e), Fraction(0)) + c
        v = {t: c for t, c in v.items() if c}
        red = engine.normal_form(v, self._gb_vecs, self._key, ensure_budget(budget))
        gm = self._gm
        nt = self.map.target.ambient.nvars
        out = [self.map.source.ambient.zero()] * len(self.gen_info)
        back = dict(zip(self._src_names, self.map.source.ambient.vars))
        for (pos, e), c in red.items():
            if pos < gm or any(e[i] for i in range(nt)):
                return None
            mono = Polynomial(self._comb_ring, {e: c})
            out[pos - gm] = out[pos - gm] + mono.rename(self.map.source.ambient, back)
        return [self.map.source.nf(p) for p in out]

    def section(self, i: int) -> list:
        """The target-side row realizing pushforward generator i."""
        k, j = self.gen_info[i]
        amb = self.map.target.ambient
        return [self._mus[k] if jj == j else amb.zero() for jj in range(self.source_module.ngens)]


def pushforward(f: RingMap, M: FPModule, module_gens: Sequence, budget=None) -> Pushforward:
    """M as a module over f.source, generated by mu_k * e_j.

    f must be module-finite with the target generated over the source image by
    module_gens (include 1 when it is needed; completeness is the caller's
    claim and can be verified with express on each e_j).

    Elimination: a combined ring [target vars | renamed source vars] with a
    block order, module positions [0, gM) for the original coordinates and
    gM + k*gM + j for the new generator symbols.  Basis vectors supported on
    the new symbols with source-only coefficients present the pushforward.
    """
    from . import engine

    A = f.target
    B = f.source
    if M.ring.ambient.vars != A.ambient.vars:
        raise InputError("module is not over the map's target")
    mus = [as_poly(A.ambient, g) for g in module_gens]
    gM = M.ngens
    t = len(mus)

    tvars = A.ambient.vars
    src_names = []
    seen = set(tvars)
    for v in B.ambient.vars:
        name = groebner._fresh_name(v if v not in seen else v + "_src", tuple(seen))
        src_names.append(name)
        seen.add(name)
    comb = groebner._block_ring(tvars, src_names)

    ideal = [r.rename(comb) for r in A.relations]
    for name, img in zip(src_names, f.images):
        ideal.append(comb.var(name) - img.rename(comb))

    npos = gM + t * gM
    zero_exp = (0,) * comb.nvars
    vecs = []
    for k in range(t):
        mu_c = mus[k].rename(comb)
        for j in range(gM):
            v = {}
            for e, c in mu_c.terms.items():
                v[(j, e)] = c
            v[(gM + k * gM + j, zero_exp)] = Fraction(-1)
            vecs.append(v)
    for r in M.relations.rows:
        v = {}
        for j, p in enumerate(r):
            for e, c in p.rename(comb).terms.items():
                v[(j, e)] = v.get((j, e), Fraction(0)) + c
        v = {tt: c for tt, c in v.items() if c}
        if v:
            vecs.append(v)
    for q in ideal:
        if q.is_zero():
            continue
        for pos in range(npos):
            v = {}
            for e, c in q.terms.items():
                v[(pos, e)] = c
            vecs.append(v)

    key = engine.blocktop_key(comb.order, gM)
    gb = engine.buchberger(vecs, key, ensure_budget(budget))

    nt = len(tvars)
    back = dict(zip(src_names, B.ambient.vars))
    rel_rows = []
    for v in gb:
        if all(pos >= gM for (pos, _e) in v) and all(all(e[i] == 0 for i in range(nt)) for (_p, e) in v):
            row = [B.ambient.zero()] * (t * gM)
            for (pos, e), c in v.items():
                mono = Polynomial(comb, {e: c})
                row[pos - gM] = row[pos - gM] + mono.rename(B.ambient, back)
            rel_rows.append(row)

    gen_info = [(k, j) for k in range(t) for j in range(gM)]
    N = FPModule(B, rel_rows, t * gM)
    return Pushforward(N, gen_info, comb, gb, key, gM, src_names, f, M, mus)
