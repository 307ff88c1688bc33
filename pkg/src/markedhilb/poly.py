"""
Sparse multivariate polynomials over exact coefficient rings.

Terms are plain tuples of exponents.  Position 0 is the smallest variable:
x1 in the affine ring R = Q[x1..xn], or x0 in the homogeneous ring
S = Q[x0..xn].  Three coefficient rings are supported:

- rationals, stored as ``int`` or ``fractions.Fraction``;
- :class:`ParamPoly`, polynomials in named parameters over Q;
- :class:`Dual`, numbers ``a + eps*L`` with ``eps^2 = 0`` and ``L`` a
  linear form in named unknowns.

Polynomials never store zero coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Term = Tuple[int, ...]


# ---------------------------------------------------------------- terms

def deg(t: Term) -> int:
    return sum(t)


def tmul(a: Term, b: Term) -> Term:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Term, b: Term) -> bool:
    """True if the term a divides the term b."""
    return all(x <= y for x, y in zip(a, b))


def tdiv(b: Term, a: Term) -> Term:
    return tuple(y - x for x, y in zip(a, b))


def min_index(t: Term) -> int:
    """Index of the smallest variable occurring in t (t non-constant)."""
    for i, e in enumerate(t):
        if e:
            return i
    raise ValueError("constant term has no variables")


def max_index(t: Term) -> int:
    for i in range(len(t) - 1, -1, -1):
        if t[i]:
            return i
    raise ValueError("constant term has no variables")


def unit(n: int, i: int) -> Term:
    return tuple(1 if k == i else 0 for k in range(n))


def terms_of_degree(n: int, d: int) -> Iterable[Term]:
    """All terms of degree d in n variables (unordered)."""
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def terms_up_to(n: int, d: int) -> Iterable[Term]:
    for k in range(d + 1):
        yield from terms_of_degree(n, k)


# ---------------------------------------------------------- term orders

class TermOrder:
    """A term order on exponent tuples.

    ``kind`` is ``"lex"``, ``"degrevlex"`` or ``"weighted"``.  Variables
    are ranked x1 < x2 < ... < xn (index order).  Weighted orders compare
    the weight first and break ties with lex; the weight vector lists
    the weight of the largest variable first.
    """

    __slots__ = ("kind", "weights", "_key")

    def __init__(self, kind: str = "lex", weights: Optional[Sequence[int]] = None):
        if kind not in ("lex", "degrevlex", "weighted"):
            raise ValueError(f"unknown term order {kind!r}")
        if kind == "weighted":
            if not weights or any(w <= 0 for w in weights):
                raise ValueError("weighted order needs positive weights")
            weights = tuple(int(w) for w in weights)
        else:
            weights = None
        self.kind = kind
        self.weights = weights
        if kind == "lex":
            self._key = _lex_key
        elif kind == "degrevlex":
            self._key = _degrevlex_key
        else:
            wr = weights[::-1]

            def _wkey(e, wr=wr):
                if len(e) != len(wr):
                    raise ValueError("weight vector length does not match the term")
                return (sum(a * b for a, b in zip(wr, e)),) + e[::-1]

            self._key = _wkey

    def key(self, e: Term):
        """Sort key: larger key means larger term."""
        return self._key(e)

    def neg_key(self, e: Term):
        """Key reversing the order (for min-heaps)."""
        return tuple(-k for k in self._key(e))

    def compare(self, u: Term, v: Term) -> int:
        if len(u) != len(v):
            raise ValueError("terms live in different numbers of variables")
        ku, kv = self._key(u), self._key(v)
        return (ku > kv) - (ku < kv)

    def sort_desc(self, terms: Iterable[Term]):
        return sorted(terms, key=self._key, reverse=True)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.kind == "weighted":
            return f"TermOrder('weighted', {list(self.weights)})"
        return f"TermOrder({self.kind!r})"


def _lex_key(e):
    return e[::-1]


def _degrevlex_key(e):
    return (sum(e),) + tuple(-x for x in e)


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


def compare(order: TermOrder, u: Term, v: Term) -> int:
    """-1, 0 or 1 as u is smaller, equal or larger than v."""
    return order.compare(u, v)


# -------------------------------------------------------------- rationals

def qnorm(q):
    """Return a Fraction with denominator 1 as an int."""
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def qtext(q) -> str:
    q = qnorm(q)
    if isinstance(q, Fraction):
        return f"{q.numerator}/{q.denominator}"
    return str(q)


def is_rational(c) -> bool:
    return isinstance(c, (int, Fraction))


# ------------------------------------------------------------- ParamPoly

_NAT = re.compile(r"(\d+)")


def _natkey(name: str):
    return tuple(int(p) if p.isdigit() else p for p in _NAT.split(name))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class ParamPoly:
    """Polynomial in named parameters with rational coefficients.

    Monomials are sorted tuples of parameter names with repetition, so
    ``("c_1_1", "c_1_1", "tau")`` is ``c_1_1^2*tau``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[tuple, object]] = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def symbol(cls, name: str, coeff=1):
        return cls._raw({(name,): coeff})

    @classmethod
    def const(cls, c):
        return cls._raw({(): c} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        return self.terms.get((), 0)

    def symbols(self):
        return {s for m in self.terms for s in m}

    def degree(self):
        return max((len(m) for m in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            return other
        if is_rational(other):
            return ParamPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            if not other:
                return ParamPoly._raw({})
            return ParamPoly._raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[tuple, object] = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return ParamPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ParamPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if is_rational(other):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, values: Mapping[str, object], partial: bool = False):
        """Substitute parameter values.

        Values may be rationals or ParamPolys.  With ``partial`` unknown
        names stay symbolic; otherwise they raise KeyError.
        """
        out = 0
        cache: dict = {}
        for m, c in self.terms.items():
            v = c
            for s in m:
                if s in values:
                    v = v * values[s]
                elif partial:
                    v = v * cache.setdefault(s, ParamPoly.symbol(s))
                else:
                    raise KeyError(f"no value for parameter {s}")
            out = out + v
        if isinstance(out, ParamPoly) and out.is_constant():
            return qnorm(out.constant_value())
        return qnorm(out) if is_rational(out) else out

    def diff(self, name: str) -> "ParamPoly":
        out: Dict[tuple, object] = {}
        for m, c in self.terms.items():
            k = m.count(name)
            if k:
                i = m.index(name)
                nm = m[:i] + m[i + 1:]
                out[nm] = out.get(nm, 0) + c * k
        return ParamPoly(out)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda mc: (-len(mc[0]), [_natkey(s) for s in mc[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(_signed_piece(c, _pmono_text(m)))
        return _join_pieces(parts)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"


def _pmono_text(m: tuple) -> str:
    out = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        out.append(m[i] if j - i == 1 else f"{m[i]}^{j - i}")
        i = j
    return "*".join(out)


def _signed_piece(c, mono: str):
    """Return (sign, text) for coefficient c times a monomial text."""
    c = qnorm(c)
    neg = c < 0
    a = -c if neg else c
    if not mono:
        return neg, qtext(a)
    if a == 1:
        return neg, mono
    return neg, f"{qtext(a)}*{mono}"


def _join_pieces(pieces) -> str:
    out = []
    for k, (neg, txt) in enumerate(pieces):
        if k == 0:
            out.append(("-" if neg else "") + txt)
        else:
            out.append((" - " if neg else " + ") + txt)
    return "".join(out) if out else "0"


# ------------------------------------------------------------------ Dual

class Dual:
    """Dual number a + eps*L where L maps unknown names to rationals."""

    __slots__ = ("a", "lin")

    def __init__(self, a=0, lin: Optional[Mapping[str, object]] = None):
        self.a = a
        self.lin = {k: v for k, v in (lin or {}).items() if v}

    @classmethod
    def _raw(cls, a, lin):
        d = object.__new__(cls)
        d.a = a
        d.lin = lin
        return d

    def __bool__(self):
        return bool(self.a) or bool(self.lin)

    def __add__(self, other):
        if is_rational(other):
            return Dual._raw(self.a + other, self.lin)
        if not isinstance(other, Dual):
            return NotImplemented
        if len(self.lin) < len(other.lin):
            big, small = other.lin, self.lin
        else:
            big, small = self.lin, other.lin
        lin = dict(big)
        for k, v in small.items():
            s = lin.get(k, 0) + v
            if s:
                lin[k] = s
            else:
                del lin[k]
        return Dual._raw(self.a + other.a, lin)

    __radd__ = __add__

    def __neg__(self):
        return Dual._raw(-self.a, {k: -v for k, v in self.lin.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            if not other:
                return Dual._raw(0, {})
            return Dual._raw(self.a * other, {k: v * other for k, v in self.lin.items()})
        if not isinstance(other, Dual):
            return NotImplemented
        a, b = self.a, other.a
        lin: Dict[str, object] = {}
        if b:
            lin = {k: v * b for k, v in self.lin.items()}
        if a:
            for k, v in other.lin.items():
                s = lin.get(k, 0) + v * a
                if s:
                    lin[k] = s
                else:
                    lin.pop(k, None)
        return Dual._raw(a * b, lin)

    __rmul__ = __mul__

    def __eq__(self, other):
        if is_rational(other):
            return not self.lin and self.a == other
        if not isinstance(other, Dual):
            return NotImplemented
        return self.a == other.a and self.lin == other.lin

    def __hash__(self):
        return hash((self.a, frozenset(self.lin.items())))

    def __repr__(self):
        return f"Dual({qtext(self.a)}, {dict(self.lin)!r})"


# ------------------------------------------------------------ polynomial

class Poly:
    """Sparse polynomial: a map from exponent tuples to coefficients.

    ``nvars`` counts x1..xn; ``x0`` says whether position 0 holds the
    homogenizing variable.
    """

    __slots__ = ("terms", "nvars", "x0")

    def __init__(self, terms: Optional[Mapping[Term, object]] = None,
                 nvars: int = 0, x0: bool = False):
        self.nvars = nvars
        self.x0 = x0
        width = nvars + x0
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != width:
                raise ValueError(f"term {e} does not have {width} exponents")
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms, nvars, x0):
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p.x0 = x0
        return p

    @property
    def width(self):
        return self.nvars + self.x0

    def _like(self, terms):
        return Poly._raw(terms, self.nvars, self.x0)

    # -- constructors
    @classmethod
    def zero(cls, nvars, x0=False):
        return cls._raw({}, nvars, x0)

    @classmethod
    def monomial(cls, e: Term, c=1, nvars=None, x0=False):
        nvars = len(e) - x0 if nvars is None else nvars
        return cls({tuple(e): c}, nvars, x0)

    @classmethod
    def var(cls, i: int, nvars: int, x0=False):
        """The variable x_i (i may be 0 only in the homogeneous ring)."""
        idx = i if x0 else i - 1
        if not 0 <= idx < nvars + x0:
            raise ValueError(f"x{i} is not a variable of this ring")
        return cls.monomial(unit(nvars + x0, idx), 1, nvars, x0)

    # -- basic queries
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self):
        return set(self.terms)

    def coeff(self, e: Term):
        return self.terms.get(tuple(e), 0)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self, order: TermOrder = LEX):
        return sorted(self.terms.items(), key=lambda ec: order.key(ec[0]), reverse=True)

    def leading_term(self, order: TermOrder = LEX) -> Term:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: TermOrder = LEX):
        return self.terms[self.leading_term(order)]

    def _check(self, other):
        if (self.nvars, self.x0) != (other.nvars, other.x0):
            raise ValueError("polynomials live in different rings")

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return self
            other = Poly.monomial((0,) * self.width, other, self.nvars, self.x0)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return self._like({})
        return self._like({e: v * c for e, v in self.terms.items() if v * c})

    def mul_term(self, t: Term, c=1):
        out = {}
        for e, v in self.terms.items():
            w = v * c if c != 1 else v
            if w:
                out[tmul(e, t)] = w
        return self._like(out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: Dict[Term, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tmul(e1, e2)
                v = out.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = Poly.monomial((0,) * self.width, 1, self.nvars, self.x0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return not self.terms
            return NotImplemented
        return (self.nvars, self.x0) == (other.nvars, other.x0) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.x0, frozenset(self.terms.items())))

    # -- coefficient maps
    def map_coeffs(self, fn):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return self._like(out)

    def specialize(self, values: Mapping[str, object], partial: bool = False):
        """Substitute parameter values into ParamPoly coefficients."""
        def fn(c):
            if isinstance(c, ParamPoly):
                return c.evaluate(values, partial=partial)
            return c
        return self.map_coeffs(fn)

    def parameters(self):
        out = set()
        for c in self.terms.values():
            if isinstance(c, ParamPoly):
                out |= c.symbols()
        return out

    def monic(self, order: TermOrder = LEX):
        lc = self.leading_coeff(order)
        inv = Fraction(1) / lc
        return self.map_coeffs(lambda c: qnorm(c * inv))

    # -- evaluation and substitution
    def evaluate(self, point: Sequence) -> object:
        """Exact value at a point given in the order x1..xn (x0 first if present)."""
        if len(point) != self.width:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.width}")
        total = 0
        for e, c in self.terms.items():
            v = c
            for p, k in zip(point, e):
                if k:
                    v = v * p ** k
            total = total + v
        return qnorm(total) if is_rational(total) else total

    def linear_change(self, matrix: Sequence[Sequence]) -> "Poly":
        """Substitute x_i -> sum_j matrix[i][j] x_j (rows indexed like terms)."""
        w = self.width
        images = [Poly({unit(w, j): a for j, a in enumerate(row) if a}, self.nvars, self.x0)
                  for row in matrix]
        powers = [{0: Poly.monomial((0,) * w, 1, self.nvars, self.x0)} for _ in range(w)]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = Poly.zero(self.nvars, self.x0)
        for e, c in self.terms.items():
            part = Poly.monomial((0,) * w, c, self.nvars, self.x0)
            for i, k in enumerate(e):
                if k:
                    part = part * power(i, k)
            out = out + part
        return out

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to the variable at position i."""
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return self._like(out)

    # -- homogenization
    def homogenize(self) -> "Poly":
        if self.x0:
            raise ValueError("already in the homogeneous ring")
        d = self.degree()
        return Poly._raw({(d - sum(e),) + e: c for e, c in self.terms.items()},
                         self.nvars, True)

    def dehomogenize(self) -> "Poly":
        if not self.x0:
            raise ValueError("not in the homogeneous ring")
        out: Dict[Term, object] = {}
        for e, c in self.terms.items():
            k = e[1:]
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly._raw(out, self.nvars, False)

    # -- text
    def var_names(self):
        return var_names(self.nvars, self.x0)

    def to_text(self, order: TermOrder = LEX) -> str:
        names = self.var_names()
        pieces = []
        for e, c in self.sorted_terms(order):
            mono = term_text(e, names)
            if isinstance(c, ParamPoly):
                if len(c.terms) == 1:
                    (pm, pc), = c.terms.items()
                    ptxt = _pmono_text(pm)
                    neg, txt = _signed_piece(pc, "*".join(s for s in (ptxt, mono) if s))
                    pieces.append((neg, txt))
                else:
                    inner = f"({c})"
                    pieces.append((False, inner + ("*" + mono if mono else "")))
            elif isinstance(c, Dual):
                pieces.append((False, f"[{c!r}]" + ("*" + mono if mono else "")))
            else:
                pieces.append(_signed_piece(c, mono))
        return _join_pieces(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


def var_names(nvars: int, x0: bool = False):
    return (["x0"] if x0 else []) + [f"x{i}" for i in range(1, nvars + 1)]


def term_text(e: Term, names) -> str:
    out = []
    for name, k in zip(names, e):
        if k == 1:
            out.append(name)
        elif k:
            out.append(f"{name}^{k}")
    return "*".join(out)


def term_str(e: Term, x0: bool = False) -> str:
    """Text of a single term, e.g. ``x1^2*x4``; the constant term is ``1``."""
    return term_text(e, var_names(len(e) - x0, x0)) or "1"


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_XVAR = re.compile(r"x(\d+)$")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        elif op in "+-*/^()":
            out.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} in {text!r}")
    return out


def scan_variables(texts: Iterable[str]):
    """Return (nvars, has_x0) needed for the variables used in texts."""
    n, z = 0, False
    for t in texts:
        for kind, val in _tokenize(t):
            if kind == "id":
                m = _XVAR.match(val)
                if m:
                    k = int(m.group(1))
                    if k == 0:
                        z = True
                    n = max(n, k)
    return n, z


class _Parser:
    def __init__(self, tokens, nvars, x0, text):
        self.toks = tokens
        self.i = 0
        self.nvars = nvars
        self.x0 = x0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def const(self, c):
        return Poly.monomial((0,) * (self.nvars + self.x0), c, self.nvars, self.x0)

    def expr(self):
        kind, val = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        out = self.term()
        if neg:
            out = -out
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                out = out + t if val == "+" else out - t
            else:
                return out

    def term(self):
        out = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                dc = _constant_of(d)
                if dc is None or not dc:
                    self.fail("division by a non-constant or zero")
                inv = Fraction(1) / Fraction(dc)
                out = out.map_coeffs(lambda c: c * inv)
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                out = out * self.power()
            else:
                return out

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.const(val)
        if kind == "id":
            m = _XVAR.match(val)
            if m:
                k = int(m.group(1))
                if k == 0 and not self.x0:
                    self.fail("x0 used outside the homogeneous ring")
                if k > self.nvars:
                    self.fail(f"variable {val} outside x1..x{self.nvars}")
                return Poly.var(k, self.nvars, self.x0)
            return self.const(ParamPoly.symbol(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail(f"unexpected token {val!r}")


def _constant_of(p: Poly):
    if not p.terms:
        return 0
    if len(p.terms) != 1:
        return None
    (e, c), = p.terms.items()
    if any(e):
        return None
    if isinstance(c, ParamPoly):
        return c.constant_value() if c.is_constant() else None
    return c


def _flatten_coeffs(p: Poly) -> Poly:
    """Turn constant ParamPoly coefficients into plain rationals."""
    def fn(c):
        if isinstance(c, ParamPoly) and c.is_constant():
            return qnorm(c.constant_value())
        if is_rational(c):
            return qnorm(c)
        return c
    return p.map_coeffs(fn)


def parse_poly(text: str, nvars: Optional[int] = None, x0: Optional[bool] = None) -> Poly:
    """Parse a polynomial such as ``x7^2 - 4*x1*x4 + 3/2*tau*x2``.

    Identifiers ``x0``..``x99`` are ring variables; any other identifier
    is a parameter and makes the coefficient a :class:`ParamPoly`.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    sn, sz = scan_variables([text])
    nvars = sn if nvars is None else nvars
    x0 = sz if x0 is None else x0
    p = _Parser(tokens, nvars, x0, text)
    out = p.expr()
    if p.i != len(tokens):
        p.fail("trailing input")
    return _flatten_coeffs(out)


def parse_params(text: str) -> ParamPoly:
    """Parse a polynomial in parameters only (no ring variables)."""
    p = parse_poly(text, nvars=0, x0=False)
    c = p.coeff(())
    if isinstance(c, ParamPoly):
        return c
    return ParamPoly.const(c)


def parse_rational(text: str):
    return qnorm(Fraction(text.replace(" ", "")))


def count_terms_up_to(n: int, d: int) -> int:
    return comb(n + d, n)
