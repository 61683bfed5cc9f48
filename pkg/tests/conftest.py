"""Shared hypothesis strategies for the suite.

Random polynomials stay small on purpose: at most four variables, total
degree five, single-digit numerators.  That range already separates every
arithmetic bug we have hit, and it keeps the property tests fast enough
to run on each commit.
"""

from fractions import Fraction

from hypothesis import strategies as st

from semismooth.poly import PolyRing


def coefficients():
    return st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


def exponents(ring: PolyRing, max_degree: int):
    n = len(ring.vars)
    return st.lists(st.integers(0, n - 1), max_size=max_degree).map(
        lambda picks: tuple(picks.count(i) for i in range(n))
    )


def polynomials(ring: PolyRing, max_degree: int = 5, max_terms: int = 6):
    """Random elements of ring, built term by term so zero is reachable."""
    term = st.tuples(exponents(ring, max_degree), coefficients())
    return st.lists(term, max_size=max_terms).map(
        lambda terms: sum((ring.monomial(e, c) for e, c in terms), ring.zero())
    )
