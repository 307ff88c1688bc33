import random
from fractions import Fraction

import pytest

from markedhilb.fixtures import load
from markedhilb.marked import MarkedSet, is_marked_basis
from markedhilb.mfscheme import (NotOnScheme, eliminable_parameters, generic_marked_set,
                                 marked_scheme_ideal, parameter_manifest, point_of, specialize,
                                 tangent_dimension, tangent_dimension_jacobian)
from markedhilb.monideal import MonomialIdeal
from markedhilb.poly import ParamPoly, parse_poly, term_str
from markedhilb.zerodim import quotient_algebra, tangent_dimension_commuting


@pytest.fixture(scope="module")
def U5(jg5):
    return marked_scheme_ideal(jg5, 3)


class TestManifest:
    def test_counts(self, jg5, jg7):
        assert len(parameter_manifest(jg5, 3)) == 204
        assert len(parameter_manifest(jg7, 3)) == 512

    def test_first_head_listing(self, jg7):
        man = parameter_manifest(jg7, 3)
        first = [p for p in man if p.i == 1]
        assert term_str(first[0].head) == "x7^2"
        assert [term_str(p.term) for p in first] == [
            "x1^3", "x3^2", "x2*x3", "x2^2", "x1*x4", "x1*x3", "x1*x2", "x1^2",
            "x7", "x6", "x5", "x4", "x3", "x2", "x1", "1"]
        assert first[0].name == "c_1_1"

    def test_principal(self):
        G, used = generic_marked_set(MonomialIdeal.parse("x1", 1), 1)
        assert len(used) == 1
        assert marked_scheme_ideal(MonomialIdeal.parse("x1^2", 1), 2).generators == []


class TestPresentation:
    def test_dim5(self, U5):
        assert len(U5.parameters) == 204
        assert len(U5.generators) == 576
        assert set(U5.degree_histogram()) <= {3, 4}
        assert U5.interreduced_count() <= 576

    def test_sound(self, U5, f17, gT):
        assert U5.vanishes_at(point_of(f17))
        for c in (0, 1, -1, Fraction(3, 7)):
            assert U5.vanishes_at(point_of(gT.specialize({"T": c})))

    def test_complete_spot_check(self, U5, f17):
        rng = random.Random(5)
        pt = point_of(f17)
        nonzero = [k for k, v in pt.items() if v]
        for _ in range(10):
            k = rng.choice(nonzero)
            bad = dict(pt, **{k: pt[k] + rng.choice([-2, -1, 1, 3])})
            assert U5.first_nonvanishing(bad) is not None

    def test_solutions_are_bases(self, jg5, U5, gT):
        G = gT.specialize({"T": 2})
        assert is_marked_basis(G).verdict == U5.vanishes_at(point_of(G))


class TestTangent:
    def test_dim5_all_routes(self, jg5, U5, f17):
        eps = tangent_dimension(f17)
        jac = tangent_dimension_jacobian(U5, point_of(f17))
        assert eps.dimension == jac.dimension == 60
        assert eps.parameters == 204 and eps.rank == jac.rank
        assert tangent_dimension_commuting(quotient_algebra(f17)) == 60

    def test_monomial_point(self, jg5, U5):
        G = MarkedSet.monomial(jg5, 3)
        d = tangent_dimension(G).dimension
        assert d == tangent_dimension_jacobian(U5, point_of(G)).dimension
        assert d == tangent_dimension_commuting(quotient_algebra(G))

    def test_family_member(self, gT, U5):
        G = gT.specialize({"T": 1})
        assert tangent_dimension(G).dimension == tangent_dimension_jacobian(U5, point_of(G)).dimension

    def test_off_scheme(self, f17):
        h = next(h for h in f17.heads if f17.tails[h])
        tails = {k: dict(v) for k, v in f17.tails.items()}
        e = next(iter(tails[h]))
        tails[h][e] += 1
        with pytest.raises(NotOnScheme):
            tangent_dimension(MarkedSet(f17.ideal, 3, tails))


class TestElimination:
    def test_toy(self):
        a, b, c = (ParamPoly.symbol(s) for s in "abc")
        out = dict(eliminable_parameters([a - b * b, c - a * b]))
        assert set(out) == {"a", "c"}
        assert out["a"] == b * b and out["c"] == b * b * b

    def test_zero(self):
        assert eliminable_parameters([]) == []

    def test_elimination(self, jg7):
        U = load("elim_u")
        C0, E = load("elim_C0"), load("elim_eliminated")
        assert len(C0) == 154 and C0["c_1_1"] == -3
        solved = eliminable_parameters([p.coeff(()) for p in U.values()])
        assert sorted(p for p, _ in solved) == sorted(E)
        assert all(e.symbols() <= set(C0) for _, e in solved)
        values = {p: e.evaluate(C0) for p, e in solved}
        assert values == E
        assert (values["c_1_8"], values["c_23_1"], values["c_29_1"]) == (126, 1, -27)
        G, _ = generic_marked_set(jg7, 3, keep=set(C0), values=dict(solved))
        assert is_marked_basis(G).verdict
        full, _ = generic_marked_set(jg7, 3, keep=set(C0) | set(E))
        A = MarkedSet.from_polys(load("elim_a").values(), jg7, 3)
        assert specialize(full, {**C0, **E}) == A
        assert A.poly((0, 0, 0, 0, 0, 0, 2)) == parse_poly(
            "x7^2 - (-3*x1^3 + 126*x1^2 - 3*x1*x2 - 2*x1*x3 + x1*x4 - 3*x2*x3 + 2*x3^2)", 7)

    def test_second_family(self, jg7):
        names = load("elim_Ctilde")
        G, used = generic_marked_set(jg7, 3, keep=names)
        assert len(used) == 109
        assert G == MarkedSet.from_polys(load("F3_family").values(), jg7, 3)
        assert is_marked_basis(G).verdict


def test_specialize_errors_and_zero(jg5):
    G, used = generic_marked_set(jg5, 3)
    with pytest.raises(KeyError):
        specialize(G, {"c_1_1": 1})
    zero = specialize(G, {p.name: 0 for p in used})
    assert zero == MarkedSet.monomial(jg5, 3)
