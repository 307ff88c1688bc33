"""Monomial ideals: minimal bases, staircases, Hilbert functions, stability
predicates, Pommaret bases, saturation and satiety."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poly import (DEGREVLEX, LEX, Poly, Term, TermOrder, divides, min_index,
                   parse_poly, scan_variables, tdiv, term_str, terms_of_degree,
                   tmul, unit)


class NotQuasiStable(ValueError):
    pass


def minimalize(gens: Iterable[Term]) -> Tuple[Term, ...]:
    gs = sorted(set(tuple(g) for g in gens), key=sum)
    keep: List[Term] = []
    for g in gs:
        if not any(divides(h, g) for h in keep):
            keep.append(g)
    return tuple(LEX.sort_desc(keep))


@dataclass(frozen=True)
class HilbertTable:
    graded: Tuple[int, ...]
    affine: Tuple[int, ...]
    constant_from: Optional[int]

    def as_dict(self):
        return {"graded": list(self.graded), "affine": list(self.affine),
                "constant_from": self.constant_from}


class MonomialIdeal:
    """Monomial ideal given by its minimal generators.

    ``n`` is the tuple width; ``x0`` marks the homogeneous ring where
    position 0 is x0.  Generators are kept in descending lex order.
    """

    def __init__(self, generators: Iterable[Term], n: int, x0: bool = False):
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} does not have {n} exponents")
        self.n = n
        self.x0 = x0
        self.gens = minimalize(gens)
        self._pommaret: Optional[Tuple[Term, ...]] = None
        self._pdiv: Dict[Term, Optional[Tuple[Term, Term]]] = {}

    # -- construction helpers
    @classmethod
    def parse(cls, text: str, n: Optional[int] = None, x0: Optional[bool] = None):
        """Parse ``'x5^2, x4*x5, x1^3'`` (comma separated terms)."""
        pieces = [p.strip() for p in text.replace("\n", ",").split(",") if p.strip()]
        sn, sz = scan_variables(pieces)
        n = sn if n is None else n
        x0 = sz if x0 is None else x0
        gens = []
        for p in pieces:
            f = parse_poly(p, n, x0)
            if len(f.terms) != 1:
                raise ValueError(f"{p!r} is not a term")
            gens.append(next(iter(f.terms)))
        return cls(gens, n + x0, x0)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        x0 = bool(data.get("x0", False))
        return cls.parse(", ".join(data["generators"]), n, x0) if data["generators"] \
            else cls([], n + x0, x0)

    def to_json(self):
        return {"n": self.n - self.x0, "x0": self.x0,
                "generators": [term_str(g, self.x0) for g in self.gens]}

    def to_text(self):
        return ", ".join(term_str(g, self.x0) for g in self.gens)

    def __repr__(self):
        return f"MonomialIdeal({self.to_text()!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and \
            set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.n, frozenset(self.gens)))

    def extend(self) -> "MonomialIdeal":
        """The same generators in the homogeneous ring (x0 prepended)."""
        if self.x0:
            raise ValueError("already homogeneous")
        return MonomialIdeal([(0,) + g for g in self.gens], self.n + 1, True)

    # -- membership and staircase
    def contains(self, t: Term) -> bool:
        return any(divides(g, t) for g in self.gens)

    __contains__ = contains

    def is_artinian(self) -> bool:
        if any(not any(g) for g in self.gens):
            return True
        pure = {min_index(g) for g in self.gens if sum(1 for e in g if e) == 1}
        return len(pure) == self.n

    def staircase(self, t_max: Optional[int] = None, order: TermOrder = DEGREVLEX) -> List[Term]:
        """Terms outside the ideal of degree <= t_max, descending in ``order``."""
        if t_max is None:
            if not self.is_artinian():
                raise ValueError("staircase is infinite; give t_max")
            t_max = max(sum(g) for g in self.gens)
        zero = (0,) * self.n
        if self.contains(zero):
            return []
        seen = {zero}
        queue = deque([zero])
        while queue:
            t = queue.popleft()
            if sum(t) >= t_max:
                continue
            for i in range(self.n):
                u = t[:i] + (t[i] + 1,) + t[i + 1:]
                if u not in seen and not self.contains(u):
                    seen.add(u)
                    queue.append(u)
        return order.sort_desc(seen)

    def hilbert_table(self, t_max: Optional[int] = None) -> HilbertTable:
        if t_max is None:
            t_max = max((sum(g) for g in self.gens), default=0) + 1
        graded = [0] * (t_max + 1)
        for t in self.staircase(t_max):
            graded[sum(t)] += 1
        affine = []
        acc = 0
        for h in graded:
            acc += h
            affine.append(acc)
        const = None
        if self.is_artinian():
            top = max((k for k, h in enumerate(graded) if h), default=-1)
            const = top + 1
        return HilbertTable(tuple(graded), tuple(affine), const)

    def degree_count(self, d: int) -> int:
        """Number of degree-d terms outside the ideal (brute-force scan)."""
        return sum(1 for t in terms_of_degree(self.n, d) if not self.contains(t))

    # -- stability
    def is_strongly_stable(self) -> bool:
        for g in self.gens:
            for i in range(self.n):
                if not g[i]:
                    continue
                for j in range(i + 1, self.n):
                    if not self.contains(_move(g, i, j)):
                        return False
        return True

    def is_stable(self) -> bool:
        for g in self.gens:
            if not any(g):
                continue
            i = min_index(g)
            for j in range(i + 1, self.n):
                if not self.contains(_move(g, i, j)):
                    return False
        return True

    def is_quasi_stable(self) -> bool:
        try:
            self.pommaret_basis()
        except NotQuasiStable:
            return False
        return True

    # -- Pommaret structure
    def pommaret_basis(self, cap: Optional[int] = None) -> Tuple[Term, ...]:
        """Involutive completion of the minimal basis (multiplicative
        variables of t are those of index <= min index of t)."""
        if self._pommaret is not None:
            return self._pommaret
        if not self.gens:
            self._pommaret = ()
            return self._pommaret
        if cap is None:
            cap = max(sum(g) for g in self.gens) + self.n
        basis = list(self.gens)
        if any(not any(g) for g in basis):
            self._pommaret = tuple(basis)
            return self._pommaret
        todo = deque(basis)
        while todo:
            p = todo.popleft()
            for j in range(min_index(p) + 1, self.n):
                q = p[:j] + (p[j] + 1,) + p[j + 1:]
                if _pommaret_divisor(basis, q) is not None:
                    continue
                if sum(q) > cap:
                    raise NotQuasiStable("Pommaret completion exceeded the degree cap: not quasi-stable")
                basis.append(q)
                todo.append(q)
        # drop elements that another element divides involutively
        red = [p for p in basis
               if not any(r != p and _is_pdiv(r, p) for r in basis)]
        self._pommaret = tuple(LEX.sort_desc(red))
        return self._pommaret

    def pommaret_divisor(self, t: Term) -> Optional[Tuple[Term, Term]]:
        """(element, multiplier) with element Pommaret-dividing t, or None."""
        hit = self._pdiv.get(t, 0)
        if hit != 0:
            return hit
        res = _pommaret_divisor(self.pommaret_basis(), t)
        self._pdiv[t] = res
        return res

    @staticmethod
    def multiplicative(t: Term) -> range:
        """Indices of the multiplicative variables of a term."""
        if not any(t):
            return range(len(t))
        return range(min_index(t) + 1)

    # -- saturation
    def colon_var(self, i: int) -> "MonomialIdeal":
        return MonomialIdeal([g[:i] + (max(g[i] - 1, 0),) + g[i + 1:] for g in self.gens],
                             self.n, self.x0)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal([tuple(max(a, b) for a, b in zip(g, h))
                              for g in self.gens for h in other.gens], self.n, self.x0)

    def colon_maximal(self) -> "MonomialIdeal":
        out = None
        for i in range(self.n):
            c = self.colon_var(i)
            out = c if out is None else out.intersect(c)
        return out

    def saturation_bruteforce(self) -> "MonomialIdeal":
        cur = self
        while True:
            nxt = cur.colon_maximal()
            if nxt == cur:
                return cur
            cur = nxt

    def saturation(self) -> "MonomialIdeal":
        """Colon by the maximal ideal to infinity.

        For quasi-stable ideals this is the colon by the smallest
        variable to infinity: strip its powers from the generators.
        """
        if self.is_quasi_stable():
            return MonomialIdeal([(0,) + g[1:] for g in self.gens], self.n, self.x0)
        return self.saturation_bruteforce()

    def satiety(self) -> int:
        sat = self.saturation()
        if sat == self:
            return 0
        top = max(sum(g) for g in self.gens)
        s = top
        while True:
            if all(self.contains(t) for t in terms_of_degree(self.n, s) if sat.contains(t)):
                # from degree top on both ideals are generated, so equality persists
                break
            s += 1
        # walk down to the least degree from which they agree
        while s > 0 and all(self.contains(t) for t in terms_of_degree(self.n, s - 1)
                            if sat.contains(t)):
            s -= 1
        return s

    def generator_polys(self) -> List[Poly]:
        w = self.n - self.x0
        return [Poly.monomial(g, 1, w, self.x0) for g in self.gens]


def _move(g: Term, i: int, j: int) -> Term:
    """g * x_j / x_i."""
    e = list(g)
    e[i] -= 1
    e[j] += 1
    return tuple(e)


def _is_pdiv(p: Term, t: Term) -> bool:
    if not divides(p, t):
        return False
    if not any(p):
        return True
    k = min_index(p)
    q = tdiv(t, p)
    return not any(q[k + 1:])


def _pommaret_divisor(basis, t):
    for p in basis:
        if _is_pdiv(p, t):
            return p, tdiv(t, p)
    return None


def parse_ideal_file(text: str) -> MonomialIdeal:
    """Accept either the comma list form or the JSON form."""
    s = text.strip()
    if s.startswith("{"):
        return MonomialIdeal.from_json(s)
    lines = [ln for ln in s.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return MonomialIdeal.parse(",".join(lines))


def lex_ideal(n: int, d: int) -> MonomialIdeal:
    """(x_n, ..., x_2, x_1^d): the lex-segment ideal of d points on a line."""
    gens = [unit(n, i) for i in range(1, n)] + [(d,) + (0,) * (n - 1)]
    return MonomialIdeal(gens, n)


def quotient_staircase(ideal: MonomialIdeal, t_max: Optional[int] = None,
                       order: TermOrder = DEGREVLEX) -> List[Term]:
    return ideal.staircase(t_max, order)


def hilbert_table(ideal: MonomialIdeal, t_max: Optional[int] = None) -> HilbertTable:
    return ideal.hilbert_table(t_max)
