"""Buchberger engine over Q for ideals and submodules of free modules.

A term is a pair (position, exponent tuple); a vector is a dict from term to
nonzero Fraction.  Scalar polynomials are the one-position case.  The same
S-pair loop serves both: pairs only form between elements whose leading terms
sit in the same position, which for one position is ordinary Buchberger.

Order keys map a term to a sortable tuple, larger key meaning larger term:

  pot_key       position dominates (lower index first), then the ring order;
                a Groebner basis in this order eliminates leading positions
  top_key       ring order dominates, then position; with a block ring order
                this eliminates the leading variable block inside modules
  blocktop_key  positions below a split dominate everything, then as top_key;
                used for restriction of scalars (positions first, then the
                target-variable block)

Pair pruning follows Gebauer and Moeller (lcm equivalence classes, chain
criterion on old pairs, Buchberger's coprimality criterion).  Selection is the
normal strategy: smallest lcm in the order, ties by generator index, so runs
are deterministic.  Every reduction step charges a shared Budget.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import config
from .errors import ResourceLimitError
from .poly import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

Term = tuple          # (pos, exp)
Vec = dict            # {(pos, exp): Fraction}
KeyFn = Callable


class Budget:
    """Mutable step counter shared across one top-level computation."""

    __slots__ = ("remaining", "limit")

    def __init__(self, limit: int):
        self.limit = limit
        self.remaining = limit

    def spend(self, n: int = 1):
        self.remaining -= n
        if self.remaining < 0:
            raise ResourceLimitError(
                f"step budget of {self.limit} exhausted; raise it via "
                "--step-budget or SEMISMOOTH_STEP_BUDGET"
            )


def ensure_budget(budget) -> Budget:
    if budget is None:
        return Budget(config.STEP_BUDGET)
    if isinstance(budget, int):
        return Budget(budget)
    return budget


# ---------------------------------------------------------------------------
# order keys


def pot_key(order: MonomialOrder) -> KeyFn:
    def key(term: Term):
        pos, exp = term
        return (-pos, order.key(exp))

    return key


def top_key(order: MonomialOrder) -> KeyFn:
    def key(term: Term):
        pos, exp = term
        return (order.key(exp), -pos)

    return key


def blocktop_key(order: MonomialOrder, split: int) -> KeyFn:
    def key(term: Term):
        pos, exp = term
        return (1 if pos < split else 0, order.key(exp), -pos)

    return key


# ---------------------------------------------------------------------------
# vector helpers


def vec_is_zero(v: Vec) -> bool:
    return not v


def vec_lead(v: Vec, key: KeyFn) -> Term:
    return max(v, key=key)


def vec_add_scaled(a: Vec, b: Vec, exp, coeff: Fraction) -> Vec:
    """a + coeff * x^exp * b as a fresh dict."""
    out = dict(a)
    for (pos, e), c in b.items():
        t = (pos, mono_mul(e, exp))
        s = out.get(t, 0) + coeff * c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def vec_scale(v: Vec, coeff: Fraction) -> Vec:
    if coeff == 1:
        return v
    return {t: c * coeff for t, c in v.items()}


def vec_monic(v: Vec, key: KeyFn) -> Vec:
    if not v:
        return v
    lc = v[vec_lead(v, key)]
    return vec_scale(v, Fraction(1) / lc) if lc != 1 else v


def poly_to_vec(p: Polynomial, pos: int = 0) -> Vec:
    return {(pos, e): c for e, c in p.terms.items()}


def row_to_vec(row: Iterable, offset: int = 0) -> Vec:
    """Pack a row of polynomials into one vector, position = column + offset."""
    out: Vec = {}
    for j, p in enumerate(row):
        for e, c in p.terms.items():
            out[(offset + j, e)] = c
    return out


def vec_to_row(v: Vec, ncols: int, ring: PolyRing, offset: int = 0) -> list:
    cols = [dict() for _ in range(ncols)]
    for (pos, e), c in v.items():
        cols[pos - offset][e] = c
    return [Polynomial(ring, d) for d in cols]


# ---------------------------------------------------------------------------
# reduction


class BasisIndex:
    """Reducers grouped by leading position for divisor lookup in index order."""

    __slots__ = ("by_pos",)

    def __init__(self):
        self.by_pos: dict = {}

    def add(self, v: Vec, key: KeyFn):
        pos, exp = vec_lead(v, key)
        self.by_pos.setdefault(pos, []).append((exp, v[(pos, exp)], v))

    def find(self, term: Term):
        pos, exp = term
        for lexp, lc, v in self.by_pos.get(pos, ()):
            if mono_divides(lexp, exp):
                return lexp, lc, v
        return None


def make_index(vecs: Iterable, key: KeyFn) -> BasisIndex:
    idx = BasisIndex()
    for v in vecs:
        if v:
            idx.add(v, key)
    return idx


def reduce_vec(v: Vec, idx: BasisIndex, key: KeyFn, budget: Budget) -> Vec:
    """Full normal form of v against the indexed basis."""
    work = dict(v)
    out: Vec = {}
    while work:
        t = max(work, key=key)
        hit = idx.find(t)
        if hit is None:
            out[t] = work.pop(t)
            continue
        lexp, lc, g = hit
        budget.spend()
        work = vec_add_scaled(work, g, mono_div(t[1], lexp), -work[t] / lc)
    return out


# ---------------------------------------------------------------------------
# Buchberger


def _spoly(f: Vec, g: Vec, key: KeyFn) -> Vec:
    fp, fe = vec_lead(f, key)
    gp, ge = vec_lead(g, key)
    # callers guarantee fp == gp
    L = mono_lcm(fe, ge)
    a = vec_add_scaled({}, f, mono_div(L, fe), Fraction(1) / f[(fp, fe)])
    return vec_add_scaled(a, g, mono_div(L, ge), -Fraction(1) / g[(gp, ge)])


def _is_pure(v: Vec) -> bool:
    """Supported on a single position, i.e. a ring element in disguise."""
    it = iter(v)
    p0 = next(it)[0]
    return all(pos == p0 for (pos, _e) in it)


def _update_pairs(pairs: list, G: list, leads: list, t: int) -> list:
    """Gebauer-Moeller pair update after appending generator index t."""
    pt, et = leads[t]
    cand = [i for i in range(t) if leads[i][0] == pt]
    lcms = {i: mono_lcm(leads[i][1], et) for i in cand}

    # drop candidates whose lcm is a proper multiple of another candidate lcm
    kept: list = []
    for i in cand:
        li = lcms[i]
        drop = False
        for j in cand:
            if j == i:
                continue
            lj = lcms[j]
            if lj != li and mono_divides(lj, li):
                drop = True
                break
            if lj == li and j < i:
                # equal-lcm class: only the smallest survives to represent it
                drop = True
                break
        if not drop:
            kept.append(i)

    # Buchberger's coprimality criterion.  Its proof rewrites the S-pair as a
    # combination of the two elements themselves, which needs both to be plain
    # ring elements; vectors with tails in other positions are exempt.
    final = []
    pure_t = _is_pure(G[t])
    for i in kept:
        li = lcms[i]
        if pure_t:
            classmates = [j for j in cand if lcms[j] == li]
            if any(mono_mul(leads[j][1], et) == li and _is_pure(G[j]) for j in classmates):
                continue
        final.append((i, t))

    # chain criterion on old pairs: (i, j) dies when t's lead divides lcm(i, j)
    # strictly finer than both mixed lcms
    out = []
    for (i, j) in pairs:
        pij = leads[i][0]
        if pij != pt:
            out.append((i, j))
            continue
        lij = mono_lcm(leads[i][1], leads[j][1])
        if (
            mono_divides(et, lij)
            and mono_lcm(leads[i][1], et) != lij
            and mono_lcm(leads[j][1], et) != lij
        ):
            continue
        out.append((i, j))
    out.extend(final)
    return out


def buchberger(vecs: Iterable, key: KeyFn, budget: Budget) -> list:
    """Reduced Groebner basis of the span of vecs, monic, sorted by lead."""
    G: list = []
    leads: list = []
    pairs: list = []
    idx = BasisIndex()

    def push(v: Vec):
        v = vec_monic(v, key)
        G.append(v)
        leads.append(vec_lead(v, key))
        idx.add(v, key)
        pairs[:] = _update_pairs(pairs, G, leads, len(G) - 1)

    for v in vecs:
        if v:
            push(dict(v))

    while pairs:
        budget.spend()
        sel = min(
            pairs,
            key=lambda p: (key((leads[p[0]][0], mono_lcm(leads[p[0]][1], leads[p[1]][1]))), p),
        )
        pairs.remove(sel)
        i, j = sel
        s = _spoly(G[i], G[j], key)
        if not s:
            continue
        h = reduce_vec(s, idx, key, budget)
        if h:
            push(h)

    return _reduce_basis(G, key, budget)


def _reduce_basis(G: list, key: KeyFn, budget: Budget) -> list:
    """Minimalize and tail-reduce, yielding the unique reduced basis."""
    order = sorted(range(len(G)), key=lambda i: key(vec_lead(G[i], key)))
    minimal: list = []
    for i in order:
        lead = vec_lead(G[i], key)
        pos, exp = lead
        covered = any(
            vec_lead(m, key)[0] == pos and mono_divides(vec_lead(m, key)[1], exp)
            for m in minimal
        )
        if not covered:
            minimal.append(G[i])

    reduced = []
    for i, g in enumerate(minimal):
        others = make_index([m for j, m in enumerate(minimal) if j != i], key)
        h = reduce_vec(g, others, key, budget)
        if h:
            reduced.append(vec_monic(h, key))
    reduced.sort(key=lambda v: key(vec_lead(v, key)))
    return reduced


def normal_form(v: Vec, basis: list, key: KeyFn, budget: Budget) -> Vec:
    return reduce_vec(v, make_index(basis, key), key, budget)
