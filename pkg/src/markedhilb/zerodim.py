"""Finite-dimensional quotient algebras R/I: multiplication matrices,
locality, socle, support points, and a commuting-matrix tangent count."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .linalg import SparseEchelon, is_zero_matrix, matmul, nullspace
from .marked import MarkedSet, is_marked_basis, normal_form
from .poly import Poly, Term, term_str, unit


class Uncertified(ValueError):
    pass


@dataclass
class QuotientAlgebra:
    basis: List[Term]
    mats: List[List[List]]      # mats[i][row][col]: x_{i+1} acting on the basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def commutes(self) -> bool:
        for i in range(len(self.mats)):
            for j in range(i + 1, len(self.mats)):
                if matmul(self.mats[i], self.mats[j]) != matmul(self.mats[j], self.mats[i]):
                    return False
        return True

    def is_nilpotent(self, i: int) -> bool:
        m = self.mats[i]
        p = m
        k = 1
        while k < self.dim:
            p = matmul(p, p)
            k *= 2
        return is_zero_matrix(p)


def quotient_from_normal_form(basis: Sequence[Term], nf: Callable[[Poly], Poly],
                              nvars: int) -> QuotientAlgebra:
    """Matrices whose columns are normal forms of x_i * (basis term)."""
    idx = {b: k for k, b in enumerate(basis)}
    d = len(basis)
    mats = []
    for i in range(nvars):
        u = unit(nvars, i)
        m = [[0] * d for _ in range(d)]
        for col, b in enumerate(basis):
            r = nf(Poly.monomial(tuple(x + y for x, y in zip(b, u)), 1, nvars))
            for e, c in r.terms.items():
                if e not in idx:
                    raise ValueError(f"normal form leaves the basis at {term_str(e)}")
                m[idx[e]][col] = c
        mats.append(m)
    return QuotientAlgebra(list(basis), mats)


def quotient_algebra(G: MarkedSet, certify: bool = True) -> QuotientAlgebra:
    """Quotient algebra of a certified marked basis on the staircase basis."""
    if certify and not is_marked_basis(G).verdict:
        raise Uncertified("not a marked basis")
    basis = G.ideal.staircase(None)
    qa = quotient_from_normal_form(basis, lambda f: normal_form(f, G), G.nvars)
    return qa


def quotient_from_groebner(gb) -> QuotientAlgebra:
    from .groebner import initial_ideal
    basis = initial_ideal(gb).staircase(None)
    return quotient_from_normal_form(basis, gb.normal_form, gb.elements[0].nvars)


def is_local_at_origin(qa: QuotientAlgebra) -> bool:
    """True when every multiplication matrix is nilpotent."""
    return all(qa.is_nilpotent(i) for i in range(len(qa.mats)))


def socle_dimension(qa: QuotientAlgebra) -> int:
    """dim {h : x_i h = 0 for all i}, the common kernel of the matrices."""
    stacked = [row for m in qa.mats for row in m]
    return len(nullspace(stacked, qa.dim))


def verify_support_points(polys: Sequence[Poly], points: Sequence[Sequence]) -> dict:
    """Evaluate every polynomial at every point."""
    out = []
    for k, p in enumerate(points):
        bad = None
        for idx, f in enumerate(polys):
            if len(p) != f.width:
                raise ValueError("point dimension does not match the ring")
            if f.evaluate(p):
                bad = idx
                break
        out.append({"point": [str(x) for x in p], "vanishes": bad is None,
                    "first_nonvanishing": bad})
    distinct = len({tuple(p) for p in points}) == len(points)
    return {"points": out, "all_vanish": all(r["vanishes"] for r in out),
            "distinct": distinct, "count": len(points)}


def calibrate_coordinates(polys: Sequence[Poly], points: Sequence[Sequence]) -> Optional[str]:
    """Which reading of printed tuples puts all points on the variety:
    'natural' (x1, ..., xn), 'reversed' (xn, ..., x1), or None."""
    for name, pts in (("natural", points), ("reversed", [tuple(p)[::-1] for p in points])):
        if verify_support_points(polys, pts)["all_vanish"]:
            return name
    return None


def evaluation_factors(qa: QuotientAlgebra, point: Sequence) -> bool:
    """Does evaluation at the point factor through the quotient?

    The functional phi(b) = b(point) on the basis must satisfy
    phi(x_i * v) = point_i * phi(v), i.e. phi M_i = point_i * phi.
    """
    phi = [Poly.monomial(b, 1, len(b)).evaluate(point) for b in qa.basis]
    for i, m in enumerate(qa.mats):
        lhs = [sum(phi[r] * m[r][c] for r in range(qa.dim)) for c in range(qa.dim)]
        if any(a != point[i] * b for a, b in zip(lhs, phi)):
            return False
    return True


def tangent_dimension_commuting(qa: QuotientAlgebra) -> int:
    """Tangent dimension of the Hilbert scheme at the point R/I.

    Deformations (E_1..E_n) of the commuting matrices satisfy
    [E_i, M_j] + [M_i, E_j] = 0; adding the cyclic vector (d choices) and
    dividing by the free GL_d action gives dim = kernel + d - d^2.
    """
    d = qa.dim
    n = len(qa.mats)
    M = qa.mats
    nz = [[[(r, c, M[i][r][c]) for c in range(d) if M[i][r][c]] for r in range(d)] for i in range(n)]
    cols_nz = [[[(r, M[i][r][c]) for r in range(d) if M[i][r][c]] for c in range(d)] for i in range(n)]
    ech = SparseEchelon([(i, r, c) for i in range(n) for r in range(d) for c in range(d)])
    for i in range(n):
        for j in range(i + 1, n):
            # entry (r, c) of E_i M_j - M_j E_i + M_i E_j - E_j M_i
            for r in range(d):
                for c in range(d):
                    row: Dict = {}

                    def add(key, v):
                        s = row.get(key, 0) + v
                        if s:
                            row[key] = s
                        else:
                            row.pop(key, None)
                    for k, v in cols_nz[j][c]:          # (E_i M_j)_{rc} = sum_k E_i[r][k] M_j[k][c]
                        add((i, r, k), v)
                    for _, k, v in nz[j][r]:            # (M_j E_i)_{rc} = sum_k M_j[r][k] E_i[k][c]
                        add((i, k, c), -v)
                    for _, k, v in nz[i][r]:            # (M_i E_j)_{rc}
                        add((j, k, c), v)
                    for k, v in cols_nz[i][c]:          # (E_j M_i)_{rc}
                        add((j, r, k), -v)
                    if row:
                        ech.add(row)
    kernel = n * d * d - ech.rank
    return kernel + d - d * d
