"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from markedhilb.poly import Poly

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=6)
small_int = st.integers(-9, 9)


def terms(n, max_exp=3):
    return st.tuples(*[st.integers(0, max_exp)] * n)


def polys(n, max_exp=3, max_terms=6, coeffs=small_q):
    return st.dictionaries(terms(n, max_exp), coeffs, max_size=max_terms).map(
        lambda d: Poly({e: Fraction(c) for e, c in d.items() if c}, n))


def bounded_polys(n, staircase_deg, max_terms=8, coeffs=small_q):
    """Polynomials of total degree at most staircase_deg."""
    return st.dictionaries(terms(n, staircase_deg).filter(lambda t: sum(t) <= staircase_deg),
                           coeffs, max_size=max_terms).map(
        lambda d: Poly({e: Fraction(c) for e, c in d.items() if c}, n))


def monomial_ideals(n, max_exp=4, max_gens=4):
    from markedhilb.monideal import MonomialIdeal
    return st.lists(terms(n, max_exp).filter(any), min_size=1, max_size=max_gens).map(
        lambda g: MonomialIdeal(g, n))
