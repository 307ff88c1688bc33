"""Marked bases over quasi-stable ideals and computations on punctual
Hilbert schemes with exact rational arithmetic."""

from .poly import (DEGREVLEX, LEX, Dual, ParamPoly, Poly, TermOrder, compare,
                   parse_poly)
from .monideal import MonomialIdeal
from .marked import MarkedSet, is_marked_basis, normal_form

__version__ = "0.1.0"
