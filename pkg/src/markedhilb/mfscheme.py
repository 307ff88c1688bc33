"""Generic marked families over Q[C], the defining ideal of the marked
scheme, tangent dimensions at points, and parameter elimination."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import SparseEchelon
from .marked import MarkedSet, is_marked_basis, prolongations, reduce
from .monideal import MonomialIdeal
from .poly import DEGREVLEX, Dual, ParamPoly, Term, TermOrder, is_rational, qnorm, term_str


class NotOnScheme(ValueError):
    pass


@dataclass(frozen=True)
class ParamIndex:
    name: str
    i: int
    j: int
    head: Term
    term: Term


def param_name(i: int, j: int) -> str:
    return f"c_{i}_{j}"


def parameter_manifest(ideal: MonomialIdeal, m: int,
                       tail_order: TermOrder = DEGREVLEX) -> List[ParamIndex]:
    """One parameter per (head, admissible tail term).

    Heads are numbered in decreasing lex order starting from 1; tail terms
    of each head are numbered in decreasing ``tail_order``.
    """
    out = []
    for i, h in enumerate(ideal.pommaret_basis(), start=1):
        t = max(m, sum(h))
        for j, e in enumerate(ideal.staircase(t, tail_order), start=1):
            out.append(ParamIndex(param_name(i, j), i, j, h, e))
    return out


def generic_marked_set(ideal: MonomialIdeal, m: int, keep: Optional[Iterable[str]] = None,
                       values: Optional[Mapping[str, object]] = None):
    """The marked set whose tail coefficients are the parameters.

    ``keep`` restricts to a subfamily: other parameters are set to zero,
    or to ``values[name]`` when given (values may be ParamPolys).
    Returns (marked set, manifest of the parameters kept symbolic).
    """
    manifest = parameter_manifest(ideal, m)
    keep = None if keep is None else set(keep)
    values = values or {}
    tails: Dict[Term, Dict[Term, object]] = {h: {} for h in ideal.pommaret_basis()}
    used = []
    for p in manifest:
        if p.name in values:
            c = values[p.name]
        elif keep is None or p.name in keep:
            c = ParamPoly.symbol(p.name)
            used.append(p)
        else:
            c = 0
        if c:
            tails[p.head][p.term] = c
    return MarkedSet(ideal, m, tails), used


def specialize(G: MarkedSet, assignment: Mapping[str, object]) -> MarkedSet:
    missing = G.parameters() - set(assignment)
    if missing:
        raise KeyError(f"no value for parameters {sorted(missing)[:5]}")
    return G.specialize(assignment)


# ----------------------------------------------------- the ideal U

def _pdeg(p: ParamPoly) -> int:
    return p.degree()


@dataclass
class MarkedSchemePresentation:
    ideal: MonomialIdeal
    m: int
    parameters: List[str]
    generators: List[ParamPoly]
    sources: List[Tuple[Term, int, Term]] = field(default_factory=list)

    def degree_histogram(self) -> Dict[int, int]:
        return dict(sorted(Counter(_pdeg(g) for g in self.generators).items()))

    def distinct(self) -> List[ParamPoly]:
        """Generators with scalar multiples identified."""
        seen = {}
        for g in self.generators:
            key = _normalized(g)
            seen.setdefault(key, g)
        return list(seen.values())

    def interreduced_count(self) -> int:
        return len(self.distinct())

    def vanishes_at(self, values: Mapping[str, object]) -> bool:
        return all(not g.evaluate(values) for g in self.generators)

    def first_nonvanishing(self, values: Mapping[str, object]):
        for k, g in enumerate(self.generators):
            if g.evaluate(values):
                return k
        return None

    def as_dict(self, with_generators: bool = False):
        out = {
            "parameters": len(self.parameters),
            "generators": len(self.generators),
            "distinct_up_to_scalar": self.interreduced_count(),
            "degree_histogram": {str(k): v for k, v in self.degree_histogram().items()},
        }
        if with_generators:
            out["polys"] = [str(g) for g in self.generators]
        return out


def _normalized(g: ParamPoly):
    items = g.sorted_terms()
    lead = items[0][1]
    return frozenset((m, qnorm(c / lead) if is_rational(c) else c) for m, c in
                     ((m, c) for m, c in g.terms.items()))


def marked_scheme_ideal(ideal: MonomialIdeal, m: int, keep: Optional[Iterable[str]] = None,
                        values: Optional[Mapping[str, object]] = None,
                        progress=None) -> MarkedSchemePresentation:
    """Coefficients of the normal forms of all non-multiplicative
    prolongations of the generic marked set."""
    G, used = generic_marked_set(ideal, m, keep, values)
    gens, sources = [], []
    for k, (h, j, terms) in enumerate(prolongations(G)):
        nf = reduce(terms, G).result
        for e, c in nf.sorted_terms(DEGREVLEX):
            if isinstance(c, ParamPoly):
                gens.append(c)
            else:
                gens.append(ParamPoly.const(c))
            sources.append((h, j, e))
        if progress:
            progress(k)
    return MarkedSchemePresentation(ideal, m, [p.name for p in used], gens, sources)


# -------------------------------------------------- tangent spaces

@dataclass
class TangentReport:
    parameters: int
    rank: int
    dimension: int
    method: str

    def as_dict(self):
        return {"parameters": self.parameters, "rank": self.rank,
                "dimension": self.dimension, "method": self.method}


def tangent_dimension(G: MarkedSet, ideal: Optional[MonomialIdeal] = None,
                      m: Optional[int] = None) -> TangentReport:
    """Zariski tangent dimension of the marked scheme at the point G.

    Every tail coefficient c becomes c + eps*d_c; the eps-parts of the
    normal forms of the prolongations are linear conditions on the d_c.
    """
    ideal = ideal or G.ideal
    m = G.m if m is None else m
    manifest = parameter_manifest(ideal, m)
    tails: Dict[Term, Dict[Term, object]] = {h: {} for h in ideal.pommaret_basis()}
    for p in manifest:
        c0 = G.tails[p.head].get(p.term, 0)
        if not is_rational(c0):
            raise ValueError("tangent_dimension needs a point with rational coefficients")
        tails[p.head][p.term] = Dual._raw(c0, {p.name: 1})
    for h, t in G.tails.items():
        for e in t:
            if e not in tails[h]:
                raise NotOnScheme(f"tail term {term_str(e)} is not admissible")
    D = MarkedSet(ideal, m, tails, G.order, check=False)
    ech = SparseEchelon([p.name for p in manifest])
    for h, j, terms in prolongations(D):
        nf = reduce(terms, D).result
        for e, c in nf.terms.items():
            if isinstance(c, Dual):
                if c.a:
                    raise NotOnScheme("point is not on the marked scheme")
                if c.lin:
                    ech.add(c.lin)
            elif c:
                raise NotOnScheme("point is not on the marked scheme")
    n = len(manifest)
    return TangentReport(n, ech.rank, n - ech.rank, "eps-linearization")


def jacobian_rows(pres: MarkedSchemePresentation, point: Mapping[str, object]):
    """Gradients of the generators of U at a point, as sparse rows."""
    for g in pres.generators:
        row: Dict[str, object] = {}
        for mono, c in g.terms.items():
            for s in set(mono):
                k = mono.index(s)
                v = c * mono.count(s)
                for t in mono[:k] + mono[k + 1:]:
                    v = v * point[t]
                    if not v:
                        break
                if v:
                    tot = row.get(s, 0) + v
                    if tot:
                        row[s] = tot
                    else:
                        del row[s]
        yield row


def tangent_dimension_jacobian(pres: MarkedSchemePresentation,
                               point: Mapping[str, object]) -> TangentReport:
    """|C| minus the rank of the Jacobian of the materialized U."""
    if not pres.vanishes_at(point):
        raise NotOnScheme("point is not on the marked scheme")
    ech = SparseEchelon(pres.parameters)
    for row in jacobian_rows(pres, point):
        if row:
            ech.add(row)
    n = len(pres.parameters)
    return TangentReport(n, ech.rank, n - ech.rank, "jacobian")


def point_of(G: MarkedSet) -> Dict[str, object]:
    """Parameter values of a concrete marked set (zero where absent)."""
    out = {}
    for p in parameter_manifest(G.ideal, G.m):
        out[p.name] = G.tails[p.head].get(p.term, 0)
    return out


# ------------------------------------------------------- elimination

def _linear_candidates(g: ParamPoly):
    """Parameters p such that g = a*p + (terms free of p), a constant."""
    out = []
    for mono, c in g.terms.items():
        if len(mono) == 1 and is_rational(c):
            p = mono[0]
            if all(p not in other for other in g.terms if other != mono):
                out.append((p, c))
    return out


def eliminable_parameters(generators: Sequence[ParamPoly],
                          prefer: Optional[Sequence[str]] = None) -> List[Tuple[str, ParamPoly]]:
    """Parameters that some generator expresses as a polynomial in the
    others, closed under substitution.

    Returns (parameter, expression) pairs; every expression is free of all
    eliminated parameters.  ``prefer`` breaks ties between candidates of
    one generator (earlier names win).
    """
    rank = {p: k for k, p in enumerate(prefer or [])}
    gens = [g for g in generators if g]
    solved: List[Tuple[str, ParamPoly]] = []
    while True:
        pick = None
        for idx, g in enumerate(gens):
            cands = _linear_candidates(g)
            if cands:
                cands.sort(key=lambda pc: rank.get(pc[0], len(rank)))
                pick = (idx, cands[0])
                break
        if pick is None:
            break
        idx, (p, a) = pick
        g = gens.pop(idx)
        expr = (g - ParamPoly.symbol(p, a)) * (qnorm(-1 / Fraction(a)))
        sub = {p: expr}
        gens = [h for h in (x.evaluate(sub, partial=True) for x in gens)
                if (h if not is_rational(h) else h != 0)]
        gens = [ParamPoly.const(h) if is_rational(h) else h for h in gens]
        solved = [(q, e.evaluate(sub, partial=True) if isinstance(e, ParamPoly) else e)
                  for q, e in solved]
        solved = [(q, e if isinstance(e, ParamPoly) else ParamPoly.const(e)) for q, e in solved]
        solved.append((p, expr))
    return solved
