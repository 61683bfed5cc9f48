"""Ideal and module computations over presented rings.

Everything here reduces to the engine's Buchberger loop.  Quotient-ring
computations happen in the ambient ring with the relation generators folded in
as extra rows; elimination uses block orders (for ring variables) or position
priority (for free-module coordinates).

The workhorse is module_kernel: generators of all coefficient vectors c with
sum_i c_i v_i lying in a given submodule, computed by the augmented-vector
method ((v_i | e_i) rows, position-eliminating order, intersect with the
trailing block).  Syzygies, kernels of module maps, annihilators and colon
ideals are thin wrappers around it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import engine
from .engine import Budget, ensure_budget
from .errors import InputError
from .poly import (
    LEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    as_poly,
    mono_deg,
    mono_div,
    mono_divides,
)
from .rings import RingMap, RingPresentation


# ---------------------------------------------------------------------------
# scalar Groebner bases


class GroebnerBasis:
    """A reduced Groebner basis of an ideal in a polynomial ring."""

    __slots__ = ("ring", "polys", "_vecs", "_key")

    def __init__(self, ring: PolyRing, polys: Sequence, vecs, key):
        self.ring = ring
        self.polys = tuple(polys)
        self._vecs = vecs
        self._key = key

    def normal_form(self, p) -> Polynomial:
        p = as_poly(self.ring, p)
        v = engine.normal_form(engine.poly_to_vec(p), self._vecs, self._key, ensure_budget(None))
        return engine.vec_to_row(v, 1, self.ring)[0]

    def contains(self, p) -> bool:
        return self.normal_form(p).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(p) for p in self.polys)}])"


def groebner_basis(gens: Iterable, order: Optional[MonomialOrder] = None, budget=None) -> GroebnerBasis:
    """Reduced, monic, deterministically sorted basis of the ideal of gens."""
    gens = list(gens)
    if not gens:
        raise InputError("empty generator list has no ring attached; pass [ring.zero()]")
    ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [g.rename(ring) for g in gens]
    for g in gens:
        if g.ring != ring:
            raise InputError("generators from mixed rings")
    key = engine.pot_key(ring.order)
    vecs = engine.buchberger(
        [engine.poly_to_vec(g) for g in gens if not g.is_zero()], key, ensure_budget(budget)
    )
    polys = [engine.vec_to_row(v, 1, ring)[0] for v in vecs]
    return GroebnerBasis(ring, polys, vecs, key)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Canonical representative of p modulo gb's ideal."""
    if p.ring.vars != gb.ring.vars:
        raise InputError("normal form against a basis over different variables")
    return gb.normal_form(p.rename(gb.ring))


def ideal_gb(ring: RingPresentation, gens: Iterable, budget=None) -> GroebnerBasis:
    """Basis of (gens) + relations in ring's ambient; the quotient-ring ideal."""
    gens = [as_poly(ring.ambient, g) for g in gens]
    return groebner_basis(list(gens) + [r for r in ring.relations] + [ring.ambient.zero()], budget=budget)


def ideal_contains(ring: RingPresentation, gens: Iterable, p, budget=None) -> bool:
    return ideal_gb(ring, gens, budget).contains(as_poly(ring.ambient, p))


def ideal_equal(ring: RingPresentation, gens_a: Iterable, gens_b: Iterable, budget=None) -> bool:
    """Equality of the two ideals inside the presented quotient ring."""
    a = [as_poly(ring.ambient, g) for g in gens_a]
    b = [as_poly(ring.ambient, g) for g in gens_b]
    gb_a = ideal_gb(ring, a, budget)
    gb_b = ideal_gb(ring, b, budget)
    return all(gb_a.contains(q) for q in b) and all(gb_b.contains(q) for q in a)


# ---------------------------------------------------------------------------
# elimination and friends


def _block_ring(front: Sequence, back: Sequence) -> PolyRing:
    return PolyRing(tuple(front) + tuple(back), MonomialOrder.block(len(front)))


def eliminate(gens: Sequence, keep: Sequence, budget=None) -> list:
    """Generators of ideal(gens) intersected with Q[keep].

    Returned in the original ring.  The eliminated variables are moved into a
    leading grevlex block, so basis elements free of them generate the
    intersection.
    """
    if not gens:
        return []
    ring = gens[0].ring
    keep = list(keep)
    for v in keep:
        ring.index(v)
    drop = [v for v in ring.vars if v not in keep]
    block = _block_ring(drop, keep)
    moved = [g.rename(block) for g in gens]
    gb = groebner_basis(moved, budget=budget)
    ndrop = len(drop)
    out = []
    for p in gb:
        if all(all(e[i] == 0 for i in range(ndrop)) for e in p.terms):
            out.append(p.rename(ring))
    return out


def intersect(ring: RingPresentation, gens_a: Iterable, gens_b: Iterable, budget=None) -> list:
    """Generators of the intersection of two ideals of the presented ring."""
    amb = ring.ambient
    a = [as_poly(amb, g) for g in gens_a] + list(ring.relations)
    b = [as_poly(amb, g) for g in gens_b] + list(ring.relations)
    taux = _fresh_name("t", amb.vars)
    big = _block_ring([taux], amb.vars)
    t = big.var(taux)
    mixed = [t * p.rename(big) for p in a] + [(big.one() - t) * q.rename(big) for q in b]
    kept = eliminate(mixed, amb.vars, budget)
    return [p.rename(amb) for p in kept]


def _poly_exact_divide(p: Polynomial, f: Polynomial) -> Polynomial:
    """p / f when f divides p; division algorithm with zero remainder required."""
    ring = p.ring
    q = ring.zero()
    rem = p
    fl, fc = f.lead()
    while not rem.is_zero():
        e, c = rem.lead()
        if not mono_divides(fl, e):
            raise InputError(f"{f} does not divide {p}")
        t = ring.monomial(mono_div(e, fl), c / fc)
        q = q + t
        rem = rem - t * f
    return q


def colon(ring: RingPresentation, gens: Iterable, divisors: Iterable, budget=None) -> list:
    """Generators of (gens : divisors) inside the presented quotient ring.

    Computed ambient-side as ((gens + relations) : f) intersected over the
    divisor generators f, each via the ideal intersection with (f).
    """
    amb = ring.ambient
    free = RingPresentation(amb, [])
    lifted = [as_poly(amb, g) for g in gens] + [as_poly(amb, r) for r in ring.relations]
    fs = [as_poly(amb, f) for f in divisors]
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        return [amb.one()]
    result = None
    for f in fs:
        meet = intersect(free, lifted, [f], budget)
        part = [_poly_exact_divide(h, f) for h in meet]
        result = part if result is None else intersect(free, result, part, budget)
    gb = ideal_gb(ring, result, budget)
    return [p for p in gb.polys]


def radical_contains(ring: RingPresentation, gens: Iterable, p, budget=None) -> bool:
    """Membership in the radical via the extra-variable trick: 1 in (I, 1 - s*p)."""
    amb = ring.ambient
    s = _fresh_name("s", amb.vars)
    big = _block_ring([s], amb.vars)
    sv = big.var(s)
    ideal = [as_poly(amb, g).rename(big) for g in gens]
    ideal += [r.rename(big) for r in ring.relations]
    ideal.append(big.one() - sv * as_poly(amb, p).rename(big))
    return groebner_basis(ideal, budget=budget).is_unit_ideal()


def _fresh_name(stem: str, taken: Sequence) -> str:
    if stem not in taken:
        return stem
    i = 0
    while f"{stem}_{i}" in taken:
        i += 1
    return f"{stem}_{i}"


# ---------------------------------------------------------------------------
# module matrices


class ModuleMatrix:
    """A matrix over a presented ring; rows are relations among column generators.

    Entries are stored in normal form.  Immutable by convention.
    """

    __slots__ = ("ring", "rows", "ncols")

    def __init__(self, ring: RingPresentation, rows: Iterable, ncols: int, reduce: bool = True):
        self.ring = ring
        self.ncols = ncols
        packed = []
        for row in rows:
            row = [as_poly(ring.ambient, p) for p in row]
            if len(row) != ncols:
                raise InputError(f"row of length {len(row)} in a {ncols}-column matrix")
            if reduce:
                row = [ring.nf(p) for p in row]
            packed.append(tuple(row))
        self.rows = tuple(packed)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @staticmethod
    def identity(ring: RingPresentation, n: int) -> "ModuleMatrix":
        one, zero = ring.ambient.one(), ring.ambient.zero()
        return ModuleMatrix(ring, [[one if i == j else zero for j in range(n)] for i in range(n)], n, reduce=False)

    @staticmethod
    def zero(ring: RingPresentation, nrows: int, ncols: int) -> "ModuleMatrix":
        z = ring.ambient.zero()
        return ModuleMatrix(ring, [[z] * ncols for _ in range(nrows)], ncols, reduce=False)

    def mul(self, other: "ModuleMatrix") -> "ModuleMatrix":
        if other.nrows != self.ncols:
            raise InputError("matrix shape mismatch")
        z = self.ring.ambient.zero()
        rows = []
        for r in self.rows:
            out = [z] * other.ncols
            for i, c in enumerate(r):
                if c.is_zero():
                    continue
                for j in range(other.ncols):
                    out[j] = out[j] + c * other.rows[i][j]
            rows.append(out)
        return ModuleMatrix(self.ring, rows, other.ncols)

    def vstack(self, other: "ModuleMatrix") -> "ModuleMatrix":
        if other.ncols != self.ncols:
            raise InputError("matrix shape mismatch")
        return ModuleMatrix(self.ring, list(self.rows) + list(other.rows), self.ncols, reduce=False)

    def transpose(self) -> "ModuleMatrix":
        return ModuleMatrix(
            self.ring,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
            reduce=False,
        )

    def nonzero_rows(self) -> "ModuleMatrix":
        keep = [r for r in self.rows if any(not p.is_zero() for p in r)]
        return ModuleMatrix(self.ring, keep, self.ncols, reduce=False)

    def scale_row_into(self, p: Polynomial, i: int) -> list:
        return [p * c for c in self.rows[i]]

    def __repr__(self):
        body = "; ".join("(" + ", ".join(str(p) for p in r) + ")" for r in self.rows)
        return f"ModuleMatrix[{self.nrows}x{self.ncols}: {body}]"


# ---------------------------------------------------------------------------
# module Groebner machinery


def _relation_rows(ring: RingPresentation, ncols: int) -> list:
    out = []
    for q in ring.relations:
        if q.is_zero():
            continue
        for j in range(ncols):
            out.append(engine.poly_to_vec(q, pos=j))
    return out


def module_gb(ring: RingPresentation, rows: Iterable, ncols: int, budget=None) -> list:
    """Engine-level basis of the submodule of R^ncols spanned by rows (R presented)."""
    vecs = [engine.row_to_vec(r) for r in rows]
    vecs += _relation_rows(ring, ncols)
    key = engine.pot_key(ring.ambient.order)
    return engine.buchberger([v for v in vecs if v], key, ensure_budget(budget))


def module_nf(ring: RingPresentation, gb_vecs: list, row: Sequence, budget=None) -> list:
    key = engine.pot_key(ring.ambient.order)
    v = engine.normal_form(engine.row_to_vec(row), gb_vecs, key, ensure_budget(budget))
    ncols = len(list(row))
    return engine.vec_to_row(v, ncols, ring.ambient)


def module_contains(ring: RingPresentation, gb_vecs: list, row: Sequence, budget=None) -> bool:
    return all(p.is_zero() for p in module_nf(ring, gb_vecs, row, budget))


def module_kernel(
    ring: RingPresentation,
    vectors: Sequence,
    submodule: Sequence = (),
    budget=None,
) -> ModuleMatrix:
    """Generators of {c in R^k : sum_i c_i * vectors_i in span(submodule)}.

    vectors and submodule are rows in R^n for a common n.  The result is a
    ModuleMatrix with k columns whose rows generate the kernel as a module
    over the presented ring.  With an empty submodule this is the syzygy
    module of the vectors.
    """
    if not vectors:
        return ModuleMatrix(ring, [], 0, reduce=False)
    n = len(vectors[0])
    k = len(vectors)
    budget = ensure_budget(budget)
    aug = []
    for i, row in enumerate(vectors):
        v = engine.row_to_vec(row)
        v[(n + i, (0,) * ring.ambient.nvars)] = Fraction(1)
        aug.append(v)
    for row in submodule:
        v = engine.row_to_vec(row)
        if v:
            aug.append(v)
    aug += _relation_rows(ring, n)
    key = engine.pot_key(ring.ambient.order)
    gb = engine.buchberger(aug, key, budget)
    rows = []
    for v in gb:
        if all(pos >= n for (pos, _e) in v):
            shifted = {(pos - n, e): c for (pos, e), c in v.items()}
            rows.append(engine.vec_to_row(shifted, k, ring.ambient))
    out = ModuleMatrix(ring, rows, k)       # entries get reduced here
    return out.nonzero_rows()


def syzygy(m: ModuleMatrix, budget=None) -> ModuleMatrix:
    """Rows generating all relations among the rows of m over its ring.

    result.mul(m) is zero modulo the ring's relations; the rows generate the
    full kernel of the row-combination map R^nrows -> R^ncols.
    """
    rows = [list(r) for r in m.rows]
    return module_kernel(m.ring, rows, (), budget)


# ---------------------------------------------------------------------------
# ring map kernels, injectivity, surjectivity


class _Combined:
    """Shared setup for computations about a RingMap in the joined ring.

    Target variables form the leading block (so they get eliminated), source
    variables are renamed when they clash with target names.
    """

    __slots__ = ("map", "ring", "src_names", "gb")

    def __init__(self, m: RingMap, budget=None):
        self.map = m
        tvars = m.target.ambient.vars
        self.src_names = [_fresh_name(v if v not in tvars else v + "_src", tvars) for v in m.source.ambient.vars]
        # guard against collisions among the renamed source names themselves
        seen = set(tvars)
        fixed = []
        for name in self.src_names:
            name2 = _fresh_name(name, tuple(seen))
            fixed.append(name2)
            seen.add(name2)
        self.src_names = fixed
        self.ring = _block_ring(tvars, self.src_names)
        ideal = [r.rename(self.ring) for r in m.target.relations]
        for name, img in zip(self.src_names, m.images):
            ideal.append(self.ring.var(name) - img.rename(self.ring))
        self.gb = groebner_basis(ideal + [self.ring.zero()], budget=budget)

    def source_only(self, p: Polynomial) -> bool:
        nt = self.map.target.ambient.nvars
        return all(all(e[i] == 0 for i in range(nt)) for e in p.terms)

    def to_source(self, p: Polynomial) -> Polynomial:
        back = dict(zip(self.src_names, self.map.source.ambient.vars))
        return p.rename(self.map.source.ambient, back)


def ring_map_kernel(m: RingMap, budget=None) -> list:
    """Generators, in the source ambient, of the kernel ideal of m.

    The returned ideal contains the source relations; the kernel of the map
    on quotients is its image downstairs.
    """
    comb = _Combined(m, budget)
    found = [comb.to_source(p) for p in comb.gb if comb.source_only(p)]
    merged = ideal_gb(m.source, found, budget)
    return list(merged.polys)


def is_injective(m: RingMap, budget=None) -> bool:
    ker = ring_map_kernel(m, budget)
    src_gb = ideal_gb(m.source, [], budget)
    return all(src_gb.contains(p) for p in ker)


def preimage(m: RingMap, p, budget=None):
    """A source element mapping to p, or None when p is not in the image."""
    comb = _Combined(m, budget)
    q = comb.gb.normal_form(as_poly(m.target.ambient, p).rename(comb.ring))
    if comb.source_only(q):
        return comb.to_source(q)
    return None


def is_surjective(m: RingMap, budget=None) -> bool:
    comb = _Combined(m, budget)
    for v in m.target.ambient.vars:
        q = comb.gb.normal_form(comb.ring.var(v))
        if not comb.source_only(q):
            return False
    return True


def certify_isomorphism(m: RingMap, budget=None) -> bool:
    """Injective and surjective, each certified by elimination."""
    return is_injective(m, budget) and is_surjective(m, budget)
