"""Strongly stable ideals of finite colength, the >> comparison of ideals
through their degree-r truncations, and affine segment checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from .monideal import MonomialIdeal, minimalize
from .poly import LEX, Term, TermOrder, terms_of_degree


class EnumerationCap(RuntimeError):
    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class Stratum:
    ideal: MonomialIdeal
    hilbert: Tuple[int, ...]

    def as_dict(self):
        return {"generators": self.ideal.to_json()["generators"], "hilbert": list(self.hilbert)}


def _lowerings_present(u: Term, N) -> bool:
    n = len(u)
    for j in range(1, n):
        if u[j]:
            for i in range(j):
                v = list(u)
                v[j] -= 1
                v[i] += 1
                if tuple(v) not in N:
                    return False
    return True


def _addable(N) -> List[Term]:
    out = set()
    for t in N:
        for k in range(len(t)):
            u = t[:k] + (t[k] + 1,) + t[k + 1:]
            if u in N or u in out:
                continue
            if all(u[:i] + (u[i] - 1,) + u[i + 1:] in N for i in range(len(u)) if u[i]) \
                    and _lowerings_present(u, N):
                out.add(u)
    return list(out)


def _ideal_of_staircase(N, n: int) -> MonomialIdeal:
    outside = set()
    for t in N:
        for k in range(n):
            u = t[:k] + (t[k] + 1,) + t[k + 1:]
            if u not in N:
                outside.add(u)
    return MonomialIdeal(minimalize(outside), n)


def enumerate_staircases(n: int, d: int, cap: Optional[int] = None):
    """All Borel-closed order ideals of size d in n variables, as frozensets.

    Grown level by level from {1}; each level is deduplicated as a set.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    level = {frozenset([(0,) * n])}
    for size in range(1, d):
        nxt = set()
        for N in level:
            for u in _addable(N):
                nxt.add(N | {u})
                if cap is not None and len(nxt) > cap:
                    raise EnumerationCap(f"more than {cap} staircases of size {size + 1}", len(nxt))
        level = nxt
    return level


def strata_sort_key(ideal: MonomialIdeal):
    return tuple(LEX.key(g) for g in ideal.gens)


def enumerate_strongly_stable(n: int, d: int, hf: Optional[Sequence[int]] = None,
                              cap: Optional[int] = None) -> List[Stratum]:
    """Strongly stable Artinian ideals of colength d, optionally filtered by
    graded Hilbert function."""
    out = []
    for N in enumerate_staircases(n, d, cap):
        top = max(sum(t) for t in N)
        graded = [0] * (top + 1)
        for t in N:
            graded[sum(t)] += 1
        if hf is not None and tuple(graded) != tuple(hf):
            continue
        out.append(Stratum(_ideal_of_staircase(N, n), tuple(graded)))
    out.sort(key=lambda s: strata_sort_key(s.ideal))
    return out


# ------------------------------------------------------------ >> order

def lex_rank(u: Term) -> int:
    """Number of terms of the same degree that are lex-larger than u."""
    rank = 0
    D = sum(u)
    for k in range(len(u) - 1, 0, -1):
        for a in range(u[k] + 1, D + 1):
            rank += comb(D - a + k - 1, k - 1)
        D -= u[k]
    return rank


def _homogeneous(ideal: MonomialIdeal) -> MonomialIdeal:
    return ideal if ideal.x0 else ideal.extend()


def standard_terms(ideal: MonomialIdeal, r: int) -> List[Term]:
    return [t for t in ideal.staircase(r) if sum(t) == r]


def _constant_hp(ideal: MonomialIdeal, r: int) -> int:
    a = len(standard_terms(ideal, r))
    b = len(standard_terms(ideal, r + 1))
    if a != b:
        raise ValueError("Hilbert function is not constant from the Gotzmann degree on")
    return a


def _verdict(ra: Sequence[int], rb: Sequence[int]) -> str:
    if list(ra) == list(rb):
        return "equal"
    ge = all(x >= y for x, y in zip(ra, rb))
    le = all(x <= y for x, y in zip(ra, rb))
    if ge:
        return "J>>H"
    if le:
        return "H>>J"
    return "incomparable"


def gg_compare(J: MonomialIdeal, H: MonomialIdeal, order: TermOrder = LEX,
               r: Optional[int] = None) -> str:
    """Compare two ideals with constant Hilbert polynomial d in degree r = d.

    Affine ideals are read in the homogeneous ring.  J >> H holds when the
    degree-r ideal terms, both listed in decreasing order, dominate slot by
    slot.  Only the d standard terms are ranked: J >> H exactly when every
    sorted standard-term rank of J is at least the matching one of H.
    """
    J, H = _homogeneous(J), _homogeneous(H)
    if J.n != H.n:
        raise ValueError("ideals live in different rings")
    if r is None:
        # the Gotzmann number of the constant polynomial d is d itself
        dJ = _guess_constant(J)
        dH = _guess_constant(H)
        if dJ != dH:
            raise ValueError(f"different Hilbert polynomials ({dJ} vs {dH})")
        r = dJ
    nJ, nH = standard_terms(J, r), standard_terms(H, r)
    if len(nJ) != len(nH):
        raise ValueError("different Hilbert polynomials")
    if order.kind == "lex":
        rank = lex_rank
    else:
        ranks = {t: i for i, t in enumerate(order.sort_desc(terms_of_degree(J.n, r)))}
        rank = ranks.__getitem__
    return _verdict(sorted(rank(t) for t in nJ), sorted(rank(t) for t in nH))


def _guess_constant(ideal: MonomialIdeal) -> int:
    """Constant value of the Hilbert polynomial of a saturated ideal in S
    whose affine part has finite colength."""
    aff = MonomialIdeal([g[1:] for g in ideal.gens], ideal.n - 1)
    if not aff.is_artinian():
        raise ValueError("Hilbert polynomial is not constant")
    d = len(aff.staircase(None))
    _constant_hp(ideal, d)
    return d


def gg_compare_materialized(J: MonomialIdeal, H: MonomialIdeal, r: int,
                            order: TermOrder = LEX) -> str:
    """Literal version: list every degree-r term of both ideals in
    decreasing order and compare slot by slot."""
    J, H = _homogeneous(J), _homogeneous(H)
    allr = order.sort_desc(terms_of_degree(J.n, r))
    pos = {t: i for i, t in enumerate(allr)}
    tj = [pos[t] for t in allr if J.contains(t)]
    th = [pos[t] for t in allr if H.contains(t)]
    if len(tj) != len(th):
        raise ValueError("different Hilbert polynomials")
    if tj == th:
        return "equal"
    # a smaller position means a larger term
    if all(a <= b for a, b in zip(tj, th)):
        return "J>>H"
    if all(a >= b for a, b in zip(tj, th)):
        return "H>>J"
    return "incomparable"


def gg_maximum(candidates: Sequence[MonomialIdeal], order: TermOrder = LEX):
    """The candidate that is >>-greater than or equal to every other one,
    or None when there is no maximum."""
    cands = list(candidates)
    if not cands:
        return None
    best = cands[0]
    for c in cands[1:]:
        if gg_compare(c, best, order) == "J>>H":
            best = c
    for c in cands:
        if gg_compare(best, c, order) not in ("J>>H", "equal"):
            return None
    return best


# ------------------------------------------------------------- segments

def weight_of(t: Term, omega: Sequence[int]) -> int:
    """Weighted degree; omega[0] weights the largest variable."""
    if len(omega) != len(t):
        raise ValueError("weight vector length does not match the term")
    return sum(w * e for w, e in zip(reversed(omega), t))


def is_affine_segment(ideal: MonomialIdeal, m: int, omega: Sequence[int]):
    """Check that every minimal generator outweighs every staircase term of
    degree <= max(m, deg generator).  Returns (verdict, witness) where the
    witness is a violating (generator, staircase term) pair or None."""
    if any(w <= 0 for w in omega):
        raise ValueError("weights must be positive")
    for a in ideal.gens:
        t = max(m, sum(a))
        wa = weight_of(a, omega)
        for g in ideal.staircase(t):
            if weight_of(g, omega) >= wa:
                return False, (a, g)
    return True, None


def find_segment_weight(ideal: MonomialIdeal, m: int) -> Optional[Tuple[int, ...]]:
    """Search a weight vector making the ideal an affine m-segment.

    A linear program proposes weights; the integer vector derived from it
    is then verified exactly.  Returns None when no weight is found.
    """
    from scipy.optimize import linprog

    n = ideal.n
    rows = []
    for a in ideal.gens:
        t = max(m, sum(a))
        for g in ideal.staircase(t):
            # weight(a) - weight(g) >= 1, reversed so that index 0 is x_n
            rows.append([-(a[n - 1 - k] - g[n - 1 - k]) for k in range(n)])
    if not rows:
        return tuple([1] * n)
    res = linprog(c=[1] * n, A_ub=rows, b_ub=[-1] * len(rows),
                  bounds=[(1, None)] * n, method="highs")
    if res.status != 0:
        return None
    for limit in (1, 10, 100, 1000, 10 ** 6):
        fr = [Fraction(x).limit_denominator(limit) for x in res.x]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        omega = tuple(max(1, int(f * den)) for f in fr)
        if is_affine_segment(ideal, m, omega)[0]:
            return omega
    return None
