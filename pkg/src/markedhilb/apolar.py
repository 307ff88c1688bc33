"""Apolarity: catalecticant maps of a form, its annihilator ideal and the
Hilbert function of the apolar algebra.  Polynomials act on the form by
differentiation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional

from .linalg import bareiss_rank, nullspace, rref
from .monideal import MonomialIdeal
from .poly import LEX, Poly, Term, divides, terms_of_degree, unit


def act(g: Poly, F: Poly) -> Poly:
    """g(d/dx) applied to F."""
    out = Poly.zero(F.nvars, F.x0)
    for e, c in g.terms.items():
        D = F
        for i, k in enumerate(e):
            for _ in range(k):
                D = D.diff(i)
                if not D:
                    break
        if D:
            out = out + D.scale(c)
    return out


def _check_form(F: Poly) -> int:
    if not F:
        raise ValueError("the zero form has no annihilator of finite colength")
    if not F.is_homogeneous():
        raise ValueError("form must be homogeneous")
    return F.degree()


def catalecticant(F: Poly, d: int):
    """Matrix of R_d -> R_{j-d}, g -> g(d)F; rows are degree-d terms in
    decreasing lex order, columns degree-(j-d) terms."""
    j = _check_form(F)
    n = F.width
    rows_t = LEX.sort_desc(terms_of_degree(n, d))
    cols_t = LEX.sort_desc(terms_of_degree(n, j - d)) if j >= d else []
    idx = {t: k for k, t in enumerate(cols_t)}
    mat = []
    for t in rows_t:
        D = act(Poly.monomial(t, 1, F.nvars, F.x0), F)
        row = [0] * len(cols_t)
        for e, c in D.terms.items():
            row[idx[e]] = c
        mat.append(row)
    return rows_t, cols_t, mat


def hilbert_function(F: Poly) -> List[int]:
    j = _check_form(F)
    out = []
    for d in range(j + 1):
        _, _, mat = catalecticant(F, d)
        out.append(bareiss_rank(mat) if mat and mat[0] else 0)
    return out


@dataclass
class ApolarReport:
    form: Poly
    degree: int
    hilbert: List[int]
    generators: List[Poly] = field(default_factory=list)
    gorenstein: Optional[bool] = None

    def as_dict(self):
        return {"degree": self.degree, "hilbert": self.hilbert,
                "generators": [g.to_text() for g in self.generators],
                "gorenstein": self.gorenstein,
                "hilbert_is_generic": self.hilbert == [1] + [self.form.width] * (self.degree - 1) + [1]
                if self.degree >= 2 else None}


def annihilator(F: Poly) -> List[Poly]:
    """Generators of Ann(F) up to degree j+1.

    In each degree d <= j the kernel of the catalecticant is put in reduced
    echelon form with columns in decreasing lex order; rows whose leading
    term is new in the initial ideal are kept.  In degree j+1 every term
    not yet in the initial ideal is added.  The result is the reduced lex
    Groebner basis of Ann(F).
    """
    j = _check_form(F)
    n = F.width
    gens: List[Poly] = []
    lead: List[Term] = []
    for d in range(1, j + 1):
        rows_t, _, mat = catalecticant(F, d)
        if mat and mat[0]:
            # kernel of v -> v * mat  (row vectors)
            tr = [list(col) for col in zip(*mat)]
            ker = nullspace(tr, len(rows_t))
        else:
            ker = [[1 if i == k else 0 for i in range(len(rows_t))] for k in range(len(rows_t))]
        if not ker:
            continue
        red, piv = rref(ker)
        for row, p in zip(red, piv):
            lt = rows_t[p]
            if any(divides(l, lt) for l in lead):
                continue
            poly = Poly({rows_t[k]: v for k, v in enumerate(row) if v}, F.nvars, F.x0)
            gens.append(poly)
            lead.append(lt)
    for t in LEX.sort_desc(terms_of_degree(n, j + 1)):
        if not any(divides(l, t) for l in lead):
            gens.append(Poly.monomial(t, 1, F.nvars, F.x0))
            lead.append(t)
    return gens


def apolar_report(F: Poly) -> ApolarReport:
    from .groebner import GroebnerBasis
    from .zerodim import quotient_from_groebner, socle_dimension
    j = _check_form(F)
    gens = annihilator(F)
    qa = quotient_from_groebner(GroebnerBasis(LEX, gens))
    return ApolarReport(F, j, hilbert_function(F), gens, socle_dimension(qa) == 1)


def random_cubic(n: int, seed: int, lo: int = -12, hi: int = 12) -> Poly:
    """A cubic form with coefficients drawn uniformly from [lo, hi]."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    terms = LEX.sort_desc(terms_of_degree(n, 3))
    while True:
        F = Poly({t: rng.randint(lo, hi) for t in terms}, n)
        if F:
            return F


def generic_cubic(n: int, seed: int, retries: int = 5):
    """First cubic (seed, seed+1, ...) whose apolar algebra has Hilbert
    function (1, n, n, 1).  Returns (form, seed used) or (None, None)."""
    target = [1, n, n, 1]
    for k in range(retries):
        F = random_cubic(n, seed + k)
        if hilbert_function(F) == target:
            return F, seed + k
    return None, None
