"""Marked sets over a quasi-stable monomial ideal, marked reduction and the
marked-basis test.

A marked polynomial is ``head - tail`` where the head is an element of the
Pommaret basis of the ideal and the tail lives on the staircase N up to
degree ``max(m, deg head)``.  Reduction always rewrites the largest ideal
term of the working polynomial through its unique Pommaret divisor.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import SparseEchelon
from .monideal import MonomialIdeal
from .poly import (DEGREVLEX, LEX, ParamPoly, Poly, Term, TermOrder, is_rational,
                   min_index, parse_poly, qnorm, term_str, terms_up_to, tmul, unit)


class ReductionCap(RuntimeError):
    pass


class NotMarked(ValueError):
    pass


_ORDER_CACHE: Dict[Tuple, TermOrder] = {}


def reduction_order(ideal: MonomialIdeal, m: int) -> TermOrder:
    """Weighted order from a segment weight when one exists, else degrevlex.

    With a segment weight every head outweighs every admissible tail term,
    so rewriting the heaviest ideal term first touches each term once.
    """
    key = (ideal.n, ideal.gens, m)
    if key not in _ORDER_CACHE:
        order = DEGREVLEX
        if ideal.gens and ideal.is_strongly_stable() and not ideal.x0:
            from .borel import find_segment_weight
            try:
                omega = find_segment_weight(ideal, m)
            except ValueError:
                omega = None
            if omega is not None:
                order = TermOrder("weighted", omega)
        _ORDER_CACHE[key] = order
    return _ORDER_CACHE[key]


class MarkedSet:
    """One marked polynomial per Pommaret basis element of ``ideal``.

    ``tails`` maps each head to a dict {term: coefficient}; the marked
    polynomial is head - sum(coefficient * term).
    """

    def __init__(self, ideal: MonomialIdeal, m: int, tails: Mapping[Term, Mapping[Term, object]],
                 order: Optional[TermOrder] = None, check: bool = True):
        self.ideal = ideal
        self.m = m
        self.heads: Tuple[Term, ...] = ideal.pommaret_basis()
        self.tails: Dict[Term, Dict[Term, object]] = {}
        for h in self.heads:
            t = tails.get(h, {})
            self.tails[h] = {e: c for e, c in t.items() if c}
        extra = set(tails) - set(self.heads)
        if extra:
            raise NotMarked(f"heads outside the Pommaret basis: {sorted(extra)}")
        if check:
            self.check_supports()
        self.order = order or reduction_order(ideal, m)
        self._members: Dict[Term, bool] = {}

    # -- basic structure
    @property
    def nvars(self):
        return self.ideal.n - self.ideal.x0

    def bound(self, head: Term) -> int:
        return max(self.m, sum(head))

    def check_supports(self):
        for h, t in self.tails.items():
            b = self.bound(h)
            for e in t:
                if self.ideal.contains(e) or sum(e) > b:
                    raise NotMarked(f"tail term {term_str(e)} of head {term_str(h)} "
                                    f"is not a staircase term of degree <= {b}")

    def poly(self, head: Term) -> Poly:
        terms = {head: 1}
        for e, c in self.tails[head].items():
            terms[e] = -c
        return Poly(terms, self.nvars, self.ideal.x0)

    def polys(self) -> List[Poly]:
        return [self.poly(h) for h in self.heads]

    def coefficient_vector(self, names: Mapping[Tuple[Term, Term], str]) -> Dict[str, object]:
        """Tail coefficients keyed by parameter name (head, term) -> name."""
        out = {}
        for (h, e), name in names.items():
            out[name] = self.tails[h].get(e, 0)
        return out

    def map_coeffs(self, fn) -> "MarkedSet":
        tails = {}
        for h, t in self.tails.items():
            nt = {}
            for e, c in t.items():
                v = fn(c)
                if v:
                    nt[e] = v
            tails[h] = nt
        return MarkedSet(self.ideal, self.m, tails, self.order, check=False)

    def specialize(self, values: Mapping[str, object], partial: bool = False) -> "MarkedSet":
        def fn(c):
            if isinstance(c, ParamPoly):
                return c.evaluate(values, partial=partial)
            return c
        return self.map_coeffs(fn)

    def parameters(self):
        out = set()
        for t in self.tails.values():
            for c in t.values():
                if isinstance(c, ParamPoly):
                    out |= c.symbols()
        return out

    def in_ideal(self, e: Term) -> bool:
        v = self._members.get(e)
        if v is None:
            v = self._members[e] = self.ideal.contains(e)
        return v

    def __eq__(self, other):
        return isinstance(other, MarkedSet) and self.ideal == other.ideal and \
            self.tails == other.tails

    # -- text forms
    def to_json(self):
        out = []
        for h in self.heads:
            tail = Poly(self.tails[h], self.nvars, self.ideal.x0)
            out.append({"head": term_str(h, self.ideal.x0), "tail": tail.to_text()})
        return {"ideal": self.ideal.to_json(), "m": self.m, "polys": out}

    @classmethod
    def from_json(cls, data, ideal: Optional[MonomialIdeal] = None):
        if isinstance(data, str):
            data = json.loads(data)
        if ideal is None:
            ideal = MonomialIdeal.from_json(data["ideal"])
        nv = ideal.n - ideal.x0
        tails = {}
        for rec in data["polys"]:
            h = parse_poly(rec["head"], nv, ideal.x0)
            (he,) = h.terms
            tails[he] = parse_poly(rec["tail"], nv, ideal.x0).terms if rec["tail"].strip() else {}
        return cls(ideal, int(data["m"]), tails)

    @classmethod
    def from_polys(cls, polys: Iterable[Poly], ideal: MonomialIdeal, m: int,
                   order: Optional[TermOrder] = None) -> "MarkedSet":
        """Mark each polynomial on its unique term lying in the ideal."""
        tails = {}
        for f in polys:
            heads = [e for e in f.terms if ideal.contains(e)]
            if len(heads) != 1:
                raise NotMarked(f"{f} has {len(heads)} terms in the ideal")
            h = heads[0]
            lc = f.terms[h]
            if lc != 1:
                if not is_rational(lc):
                    raise NotMarked(f"head coefficient of {f} is not invertible")
                inv = Fraction(1) / lc
                f = f.map_coeffs(lambda c: qnorm(c * inv))
            if h in tails:
                raise NotMarked(f"two polynomials marked on {term_str(h)}")
            tails[h] = {e: -c for e, c in f.terms.items() if e != h}
        if set(tails) != set(ideal.pommaret_basis()):
            raise NotMarked("heads do not form the Pommaret basis")
        return cls(ideal, m, tails, order)

    @classmethod
    def monomial(cls, ideal: MonomialIdeal, m: int) -> "MarkedSet":
        return cls(ideal, m, {h: {} for h in ideal.pommaret_basis()})


def default_cap(G: MarkedSet, degree: int) -> int:
    n = G.ideal.n
    try:
        sat = G.ideal.satiety()
    except ValueError:
        sat = degree
    return 10 * comb(n + max(sat + 1, degree), n)


@dataclass
class Reduction:
    result: Poly
    steps: int
    trace: Optional[List[Tuple[object, Term, Term]]] = None


def reduce(g, G: MarkedSet, trace: bool = False, cap: Optional[int] = None) -> Reduction:
    """Marked reduction of g modulo G, largest ideal term first."""
    if isinstance(g, Poly):
        work = dict(g.terms)
        nv, x0 = g.nvars, g.x0
    else:
        work = {e: c for e, c in g.items() if c}
        nv, x0 = G.nvars, G.ideal.x0
    if cap is None:
        cap = default_cap(G, max((sum(e) for e in work), default=0))
    nk = G.order.neg_key
    inside = G.in_ideal
    heap = [(nk(e), e) for e in work if inside(e)]
    heapq.heapify(heap)
    ideal = G.ideal
    tails = G.tails
    trail = [] if trace else None
    steps = 0
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, None)
        if c is None:
            continue
        steps += 1
        if steps > cap:
            raise ReductionCap(f"marked reduction exceeded {cap} steps")
        alpha, eta = ideal.pommaret_divisor(e)
        if trail is not None:
            trail.append((c, eta, alpha))
        for b, cb in tails[alpha].items():
            t = tuple(x + y for x, y in zip(b, eta))
            v = work.get(t)
            if v is None:
                p = c * cb
                if p:
                    work[t] = p
                    if inside(t):
                        heapq.heappush(heap, (nk(t), t))
            else:
                s = v + c * cb
                if s:
                    work[t] = s
                else:
                    del work[t]
    return Reduction(Poly._raw(work, nv, x0), steps, trail)


def normal_form(g, G: MarkedSet, cap: Optional[int] = None) -> Poly:
    """Normal form of g: the representative supported on the staircase."""
    return reduce(g, G, cap=cap).result


def prolongations(G: MarkedSet):
    """(head, j, x_j * f_head) for every non-multiplicative variable x_j."""
    n = G.ideal.n
    for h in G.heads:
        if not any(h):
            continue
        for j in range(min_index(h) + 1, n):
            u = unit(n, j)
            terms = {tmul(h, u): 1}
            for e, c in G.tails[h].items():
                terms[tmul(e, u)] = -c
            yield h, j, terms


@dataclass
class MarkedBasisCertificate:
    verdict: bool
    witnesses: Dict[Tuple[Term, int], Poly] = field(default_factory=dict)
    steps: int = 0

    def failures(self):
        return {k: v for k, v in self.witnesses.items() if v}

    def as_dict(self, x0=False):
        return {
            "verdict": self.verdict,
            "prolongations": len(self.witnesses),
            "steps": self.steps,
            "nonzero": [{"head": term_str(h, x0), "var": j + (0 if x0 else 1),
                         "normal_form": p.to_text()}
                        for (h, j), p in self.failures().items()],
        }


def is_marked_basis(G: MarkedSet, cap: Optional[int] = None) -> MarkedBasisCertificate:
    """A marked set is a marked basis iff every non-multiplicative
    prolongation reduces to zero."""
    witnesses = {}
    steps = 0
    for h, j, terms in prolongations(G):
        r = reduce(terms, G, cap=cap)
        steps += r.steps
        witnesses[(h, j)] = r.result
    verdict = all(not p for p in witnesses.values())
    return MarkedBasisCertificate(verdict, witnesses, steps)


def replay(g: Poly, G: MarkedSet, red: Reduction) -> Poly:
    """Rebuild g - NF(g) from a reduction trace."""
    total = Poly.zero(g.nvars, g.x0)
    for c, eta, alpha in red.trace:
        total = total + G.poly(alpha).mul_term(eta, c)
    return total


def membership_decomposition(polys: Sequence[Poly], ideal: MonomialIdeal, m: int,
                             t_max: int) -> bool:
    """Degree-by-degree check that the span of the degree-<= t multiples of
    the polynomials is a complement of <N_{<=t}> in R_{<=t}, m <= t <= t_max."""
    n = ideal.n
    for t in range(m, t_max + 1):
        cols = list(terms_up_to(n, t))
        stair = ideal.staircase(t)
        ech = SparseEchelon(cols)
        for f in polys:
            d = f.degree()
            if d > t:
                continue
            for eta in terms_up_to(n, t - d):
                ech.add({tmul(e, eta): c for e, c in f.terms.items()})
        r1 = ech.rank
        if r1 + len(stair) != len(cols):
            return False
        for s in stair:
            ech.add({s: 1})
        if ech.rank != len(cols):
            return False
    return True
