"""Exact linear algebra over Q and degree-bounded expression solving.

The Gaussian elimination here is deliberately naive: matrices stay small
(hundreds of rows), and Fraction arithmetic keeps everything exact.  On top of
it sits express_in_module, which writes a module element as a combination of
generators with polynomial coefficients of bounded degree by equating
normal-form coefficients.  That routine is the package's certificate producer:
when it returns a combination, the combination is checkable by substitution,
independent of any basis computation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Optional, Sequence

from . import groebner
from .poly import Polynomial, PolyRing, as_poly


Row = Sequence[Fraction]


def rref(rows: Iterable) -> tuple:
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Iterable) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable, ncols: int) -> list:
    """Basis of {x : A x = 0}, one vector per free column."""
    m, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][free]
        basis.append(v)
    return basis


def solve(rows: Iterable, rhs: Sequence) -> Optional[list]:
    """One solution of A x = b, or None when inconsistent.  Free variables are 0."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not m:
        return []
    ncols = len(m[0]) - 1
    red, pivots = rref(m)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][-1]
    return x


# ---------------------------------------------------------------------------
# degree-bounded expression solving


def monomials_up_to(ring: PolyRing, degree: int) -> list:
    """Exponent tuples of total degree <= degree, sorted ascending in ring order."""
    n = ring.nvars
    out = [(0,) * n]
    for d in range(1, degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    out.sort(key=ring.order.key)
    return out


def express_in_module(
    ring,
    gens: Sequence,
    target: Sequence,
    degree: int,
    budget=None,
) -> Optional[list]:
    """Coefficients c_i (degree <= degree) with sum c_i gens_i = target in R^n.

    Works modulo the ring's relations in every coordinate.  Returns one list of
    polynomials over the ambient ring, or None when no combination exists
    within the degree bound.  The bound makes this a semidecision; callers
    choose bounds from degree data they control.
    """
    n = len(target)
    amb = ring.ambient
    relgb = groebner.module_gb(ring, [], n, budget)
    monos = monomials_up_to(amb, degree)

    unknowns = []      # (gen index, exponent)
    reduced = []       # normal-form rows per unknown
    for i, g in enumerate(gens):
        g = [as_poly(amb, p) for p in g]
        for m in monos:
            row = [p.mul_term(m, Fraction(1)) for p in g]
            reduced.append(groebner.module_nf(ring, relgb, row, budget))
            unknowns.append((i, m))
    tgt = groebner.module_nf(ring, relgb, [as_poly(amb, p) for p in target], budget)

    coords = set()
    for row in reduced + [tgt]:
        for j, p in enumerate(row):
            for e in p.terms:
                coords.add((j, e))
    coords = sorted(coords, key=lambda t: (t[0], amb.order.key(t[1])))
    index = {c: i for i, c in enumerate(coords)}

    system = []
    for row in reduced:
        col = [Fraction(0)] * len(coords)
        for j, p in enumerate(row):
            for e, c in p.terms.items():
                col[index[(j, e)]] = c
        system.append(col)
    rhs = [Fraction(0)] * len(coords)
    for j, p in enumerate(tgt):
        for e, c in p.terms.items():
            rhs[index[(j, e)]] = c

    # unknowns are columns: transpose the stacked per-unknown rows
    matrix = [[system[u][r] for u in range(len(unknowns))] for r in range(len(coords))]
    sol = solve(matrix, rhs)
    if sol is None:
        return None
    out = [amb.zero() for _ in gens]
    for (i, m), c in zip(unknowns, sol):
        if c:
            out[i] = out[i] + amb.monomial(m, c)
    return out


def express_in_ideal(ring, gens: Sequence, target, degree: int, budget=None) -> Optional[list]:
    """Scalar version: coefficients with sum c_i g_i = target modulo relations."""
    rows = [[as_poly(ring.ambient, g)] for g in gens]
    return express_in_module(ring, rows, [as_poly(ring.ambient, target)], degree, budget)
