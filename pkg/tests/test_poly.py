from fractions import Fraction
import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from markedhilb.fixtures import load
from markedhilb.poly import (DEGREVLEX, LEX, Dual, ParamPoly, ParseError, Poly, TermOrder,
                             compare, parse_params, parse_poly, terms_up_to, unit)
from strategies import polys, small_q, terms


def naive_mul(f, g):
    """Dense schoolbook product over all exponent pairs."""
    out = {}
    for (a, c), (b, d) in itertools.product(f.terms.items(), g.terms.items()):
        e = tuple(x + y for x, y in zip(a, b))
        out[e] = out.get(e, 0) + c * d
    return Poly(out, f.nvars)


def to_sympy(f, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(
        s ** k for s, k in zip(syms, e)) for e, c in f.terms.items()) if f.terms else sympy.Integer(0)


class TestOrders:
    def test_lex_top_variable_beats_square(self):
        assert compare(LEX, unit(7, 6), (0, 0, 0, 2, 0, 0, 0)) == 1

    @given(terms(4))
    def test_reflexive(self, u):
        for o in (LEX, DEGREVLEX, TermOrder("weighted", [3, 1, 2, 5])):
            assert compare(o, u, u) == 0

    def test_weighted_example(self):
        # weights 3,4,5,7,8 on x1..x5 are [8,7,5,4,3] largest variable first
        w = TermOrder("weighted", [8, 7, 5, 4, 3])
        x3sq, x1cu = (0, 0, 2, 0, 0), (3, 0, 0, 0, 0)
        assert compare(w, x3sq, x1cu) == 1
        # brute-force ranking of all terms of degree <= 3 by explicit weight sums
        wt = dict(zip(range(5), [3, 4, 5, 7, 8]))
        every = list(terms_up_to(5, 3))
        by_weight = sorted(every, key=lambda t: (sum(wt[i] * k for i, k in enumerate(t)), t[::-1]))
        assert by_weight == sorted(every, key=w.key)
        assert by_weight.index(x3sq) > by_weight.index(x1cu)

    @given(terms(3), terms(3), terms(3))
    def test_total_and_multiplicative(self, u, v, t):
        for o in (LEX, DEGREVLEX, TermOrder("weighted", [2, 2, 1])):
            a, b = compare(o, u, v), compare(o, v, u)
            assert a == -b
            assert (a == 0) == (u == v)
            tu = tuple(x + y for x, y in zip(t, u))
            tv = tuple(x + y for x, y in zip(t, v))
            assert compare(o, tu, tv) == a

    def test_degrevlex_against_sympy(self):
        xs = sympy.symbols("x1:4")
        gens = xs[::-1]
        every = list(terms_up_to(3, 3))
        ours = DEGREVLEX.sort_desc(every)
        key = sympy.polys.orderings.grevlex
        theirs = sorted(every, key=lambda e: key(e[::-1]), reverse=True)
        assert ours == theirs

    def test_mismatched_lengths(self):
        with pytest.raises(ValueError):
            compare(LEX, (1, 0), (1, 0, 0))


class TestArithmetic:
    @settings(max_examples=60)
    @given(polys(3), polys(3), polys(3))
    def test_ring_axioms(self, f, g, h):
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == Poly.zero(3)

    @settings(max_examples=60)
    @given(polys(3), polys(3))
    def test_against_dense_oracle(self, f, g):
        assert f * g == naive_mul(f, g)
        assert all(c != 0 for c in (f * g).terms.values())

    @settings(max_examples=40)
    @given(polys(3), polys(3))
    def test_against_sympy(self, f, g):
        xs = sympy.symbols("x1:4")
        assert sympy.expand(to_sympy(f * g, xs) - to_sympy(f, xs) * to_sympy(g, xs)) == 0

    def test_no_stored_zeros(self):
        f = Poly({(1, 0): 1, (0, 1): 2}, 2)
        g = f - Poly({(1, 0): 1}, 2)
        assert set(g.terms) == {(0, 1)}


class TestHomogenize:
    def test_examples(self):
        f = parse_poly("x1^2 + x2", 2)
        h = f.homogenize()
        assert h == parse_poly("x1^2 + x2*x0", 2, True)
        assert h.dehomogenize() == f
        c = Poly({(0, 0): 5}, 2)
        assert c.homogenize().dehomogenize() == c

    def test_mixed_degrees(self):
        f = parse_poly("x1*x2 - 3*x1 + 1", 2)
        h = f.homogenize()
        assert h == parse_poly("x1*x2 - 3*x1*x0 + x0^2", 2, True)
        # substituting x0 = 1 recovers f term by term
        assert Poly({e[1:]: c for e, c in h.terms.items()}, 2) == f

    @given(polys(3))
    def test_round_trip(self, f):
        h = f.homogenize()
        assert h.is_homogeneous()
        assert h.dehomogenize() == f


class TestEvaluate:
    def test_simple(self):
        assert parse_poly("x1^2 - x2", 2).evaluate((2, 4)) == 0

    def test_fixture_at_origin(self):
        for p in load("f17_dim5").values():
            assert p.evaluate((0,) * 5) == 0

    def test_family_member_at_points(self):
        F15 = load("gtau_dim7")["F15"].specialize({"tau": 1})
        for pt in load("points_dim7").at({"tau": 1}):
            assert F15.evaluate(pt) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            parse_poly("x1", 2).evaluate((1,))


class TestParser:
    @settings(max_examples=80)
    @given(polys(4))
    def test_text_round_trip(self, f):
        assert parse_poly(f.to_text(), 4) == f

    def test_grammar(self):
        f = parse_poly("(x1 + 2*x2)^2 - 3/4 x1 x2", 2)
        assert f == Poly({(2, 0): 1, (1, 1): Fraction(13, 4), (0, 2): 4}, 2)

    def test_parameters(self):
        f = parse_poly("tau*x1 - 1/2*tau^2", 1)
        assert f.parameters() == {"tau"}
        assert f.specialize({"tau": 2}) == Poly({(1,): 2, (0,): -2}, 1)

    @pytest.mark.parametrize("bad", ["x1 +", "x1 ^ x2", "(x1", "x1 / x2", "x1 $ 2"])
    def test_errors(self, bad):
        with pytest.raises((ParseError, ValueError)):
            parse_poly(bad, 2)


class TestCoefficientRings:
    def test_parampoly(self):
        a, b = ParamPoly.symbol("a"), ParamPoly.symbol("b")
        p = (a + b) * (a - b)
        assert p == a * a - b * b
        assert p.evaluate({"a": 3, "b": 1}) == 8
        assert p.degree() == 2
        assert parse_params("a^2 - b^2") == p

    def test_dual_linearizes(self):
        x = Dual(Fraction(2), {"d": 1})
        y = x * x * x
        assert y.a == 8 and y.lin == {"d": 12}
        assert not (x - x)

    @given(small_q, small_q, small_q, small_q)
    def test_dual_product_rule(self, a, b, c, d):
        p = Dual(a, {"u": b}) * Dual(c, {"u": d})
        assert p.a == a * c
        assert p.lin.get("u", 0) == a * d + b * c
