"""Buchberger's algorithm over Q, reduced bases, initial ideals and a
seeded generic-initial-ideal estimate."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linalg import bareiss_rank
from .monideal import MonomialIdeal
from .poly import LEX, Poly, Term, TermOrder, divides, qnorm, tdiv


class ResourceCap(RuntimeError):
    pass


class Inconclusive(RuntimeError):
    pass


@dataclass
class GroebnerBasis:
    order: TermOrder
    elements: List[Poly]
    reduced: bool = True

    def leading_terms(self) -> List[Term]:
        return [g.leading_term(self.order) for g in self.elements]

    def normal_form(self, f: Poly) -> Poly:
        return reduce_full(f, self.elements, self.order)

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f)

    def texts(self) -> List[str]:
        return [g.to_text(self.order) for g in self.elements]


def _monic(f: Poly, order: TermOrder) -> Poly:
    lc = f.leading_coeff(order)
    if lc == 1:
        return f
    inv = Fraction(1) / lc
    return f.map_coeffs(lambda c: qnorm(c * inv))


def reduce_full(f: Poly, G: Sequence[Poly], order: TermOrder) -> Poly:
    """Remainder of f on division by G (all terms reduced)."""
    lead = [(g.leading_term(order), g.leading_coeff(order), g) for g in G]
    work = dict(f.terms)
    rem = {}
    key = order.key
    while work:
        t = max(work, key=key)
        c = work[t]
        for lt, lc, g in lead:
            if divides(lt, t):
                q = tdiv(t, lt)
                f_ = -c / Fraction(lc) if lc != 1 else -c
                for e, v in g.terms.items():
                    u = tuple(a + b for a, b in zip(e, q))
                    s = work.get(u, 0) + f_ * v
                    if s:
                        work[u] = qnorm(s)
                    else:
                        work.pop(u, None)
                break
        else:
            rem[t] = work.pop(t)
    return Poly(rem, f.nvars, f.x0)


def _lcm(a: Term, b: Term) -> Term:
    return tuple(max(x, y) for x, y in zip(a, b))


def _spoly(f: Poly, g: Poly, order: TermOrder) -> Poly:
    lf, lg = f.leading_term(order), g.leading_term(order)
    l = _lcm(lf, lg)
    return f.mul_term(tdiv(l, lf), Fraction(1) / f.terms[lf]) - \
        g.mul_term(tdiv(l, lg), Fraction(1) / g.terms[lg])


def reduced_basis(G: Sequence[Poly], order: TermOrder) -> List[Poly]:
    """Minimalize, interreduce and normalize a Groebner basis."""
    G = [_monic(g, order) for g in G if g]
    G.sort(key=lambda g: order.key(g.leading_term(order)))
    minimal: List[Poly] = []
    for g in G:
        lt = g.leading_term(order)
        if not any(divides(h.leading_term(order), lt) for h in minimal):
            minimal = [h for h in minimal if not divides(lt, h.leading_term(order))]
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lt = g.leading_term(order)
        tail = Poly({e: c for e, c in g.terms.items() if e != lt}, g.nvars, g.x0)
        r = reduce_full(tail, others, order)
        out.append(_monic(r + Poly.monomial(lt, 1, g.nvars, g.x0), order))
    out.sort(key=lambda g: order.key(g.leading_term(order)), reverse=True)
    return out


def buchberger(gens: Sequence[Poly], order: TermOrder = LEX,
               max_pairs: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm with the normal
    selection strategy and Gebauer-Moeller pair pruning."""
    G: List[Poly] = []
    pairs: List[Tuple[int, int]] = []
    key = order.key

    def lt(i):
        return G[i].leading_term(order)

    def update(h: Poly):
        nonlocal pairs
        G.append(h)
        k = len(G) - 1
        lh = lt(k)
        # chain criterion on old pairs
        keep = []
        for (i, j) in pairs:
            lij = _lcm(lt(i), lt(j))
            if divides(lh, lij) and _lcm(lt(i), lh) != lij and _lcm(lt(j), lh) != lij:
                continue
            keep.append((i, j))
        new = [(i, k) for i in range(k) if G[i] is not None]
        # drop new pairs whose lcm is a proper multiple of another new lcm
        lcms = {p: _lcm(lt(p[0]), lh) for p in new}
        filtered = []
        for p in new:
            lp = lcms[p]
            if any(q != p and divides(lcms[q], lp) and lcms[q] != lp for q in new):
                continue
            filtered.append(p)
        seen = set()
        final = []
        for p in filtered:
            lp = lcms[p]
            if lp in seen:
                continue
            seen.add(lp)
            # product criterion
            if all(a == 0 or b == 0 for a, b in zip(lt(p[0]), lh)):
                continue
            final.append(p)
        pairs = keep + final

    for g in gens:
        if g:
            r = reduce_full(g, [x for x in G if x is not None], order) if G else g
            if r:
                update(_monic(r, order))
    done = 0
    while pairs:
        pairs.sort(key=lambda p: key(_lcm(lt(p[0]), lt(p[1]))))
        i, j = pairs.pop(0)
        s = _spoly(G[i], G[j], order)
        r = reduce_full(s, G, order)
        done += 1
        if max_pairs is not None and done > max_pairs:
            raise ResourceCap(f"more than {max_pairs} pairs reduced")
        if r:
            update(_monic(r, order))
    return GroebnerBasis(order, reduced_basis(G, order), True)


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    lts = gb.leading_terms()
    if not lts:
        raise ValueError("empty basis")
    x0 = gb.elements[0].x0
    return MonomialIdeal(lts, len(lts[0]), x0)


def random_change(n: int, rng: random.Random, lo: int = -50, hi: int = 50):
    """A random invertible integer matrix with entries in [lo, hi]."""
    while True:
        a = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
        if bareiss_rank(a) == n:
            return a


def gin_probabilistic(gens: Sequence[Poly], order: TermOrder = LEX, seed: int = 0,
                      trials: int = 2, lo: int = -50, hi: int = 50):
    """Initial ideal after random changes of coordinates.

    Returns (ideal, note).  Raises Inconclusive when trials disagree.
    """
    if trials < 2:
        raise ValueError("need at least two trials")
    rng = random.Random(seed)
    width = gens[0].width
    results = []
    for _ in range(trials):
        a = random_change(width, rng, lo, hi)
        moved = [g.linear_change(a) for g in gens]
        results.append(initial_ideal(buchberger(moved, order)))
    if any(r != results[0] for r in results[1:]):
        raise Inconclusive("random coordinate changes gave different initial ideals")
    return results[0], f"{trials} random changes (seed {seed}) agree"
