"""End-to-end case studies over the stored fixtures.

Two pipelines are provided: the (1,7,7,1) case in seven variables and the
(1,5,5,1) case in five.  Every check records the expected value, the
computed value, a short claim key, its status and its wall time.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import apolar, borel, groebner, zerodim
from .fixtures import load
from .marked import MarkedSet, is_marked_basis
from .mfscheme import (eliminable_parameters, generic_marked_set, marked_scheme_ideal,
                       point_of, tangent_dimension, tangent_dimension_jacobian)
from .monideal import MonomialIdeal
from .poly import LEX, Poly, unit


@dataclass
class Check:
    check: str
    expected: object
    computed: object
    ref: str
    status: str
    millis: int

    def as_dict(self):
        return {"check": self.check, "expected": self.expected, "computed": self.computed,
                "ref": self.ref, "status": self.status, "millis": self.millis}


@dataclass
class CaseStudyReport:
    case: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failed(self) -> List[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def as_dict(self, timings: bool = True):
        rows = [c.as_dict() for c in self.checks]
        if not timings:
            for r in rows:
                r.pop("millis")
        return {"case": self.case, "passed": self.passed, "checks": rows}


@dataclass
class _Step:
    name: str
    expected: object
    ref: str
    fn: Callable[[], object]
    heavy: bool = False
    compare: Optional[Callable[[object, object], bool]] = None


def _selected(name: str, patterns: Iterable[str]) -> bool:
    return any(name == p or name.startswith(p + "-") for p in patterns)


def run_steps(case: str, steps: Sequence[_Step], heavy: bool = False,
              only: Sequence[str] = (), skip: Sequence[str] = (),
              progress: Optional[Callable[[str], None]] = None) -> CaseStudyReport:
    """Run the selected steps in order.

    Heavy steps run only with ``heavy`` or when named by ``only``; the
    pseudo-name "heavy" in ``skip`` drops them too.
    """
    skip = list(skip)
    skip_heavy = "heavy" in skip
    report = CaseStudyReport(case)
    for st in steps:
        if only and not _selected(st.name, only):
            continue
        if _selected(st.name, [s for s in skip if s != "heavy"]):
            continue
        if st.heavy and (skip_heavy or not (heavy or only)):
            continue
        if progress:
            progress(st.name)
        t0 = time.perf_counter()
        try:
            got = st.fn()
            ok = st.compare(got, st.expected) if st.compare else got == st.expected
            status = "pass" if ok else "fail"
        except Exception as exc:        # a crashing check is a failed check
            got = f"error: {type(exc).__name__}: {exc}"
            status = "fail"
        ms = int(round(1000 * (time.perf_counter() - t0)))
        report.checks.append(Check(st.name, st.expected, got, st.ref, status, ms))
    return report


def _texts(polys) -> List[str]:
    return sorted(p.to_text() for p in polys)


def _gb_fixed_point(polys) -> bool:
    gb = groebner.buchberger(polys, LEX)
    monic = [p.scale(Fraction(1) / p.leading_coeff(LEX)) for p in polys]
    return _texts(gb.elements) == _texts(monic)


def _in_ideal(polys) -> MonomialIdeal:
    return groebner.initial_ideal(groebner.buchberger(polys, LEX))


def _hf(ideal: MonomialIdeal) -> List[int]:
    hf = list(ideal.hilbert_table().graded)
    while hf and hf[-1] == 0:
        hf.pop()
    return hf


class _Case:
    """Lazily loaded fixtures shared by the steps of one case."""

    def __init__(self, n: int, ideal: str, basis: str, family: str, param: str,
                 points: str):
        self.n = n
        self._names = (ideal, basis, family, param, points)
        self.param = param

    @cached_property
    def ideal(self) -> MonomialIdeal:
        return load(self._names[0])

    @cached_property
    def basis_polys(self) -> List[Poly]:
        return list(load(self._names[1]).values())

    @cached_property
    def family_polys(self) -> Dict[str, Poly]:
        return load(self._names[2])

    @cached_property
    def points(self):
        return load(self._names[4])

    @cached_property
    def basis(self) -> MarkedSet:
        return MarkedSet.from_polys(self.basis_polys, self.ideal, 3)

    @cached_property
    def family(self) -> MarkedSet:
        return MarkedSet.from_polys(self.family_polys.values(), self.ideal, 3)

    def at(self, value) -> MarkedSet:
        return self.family.specialize({self.param: value})

    @cached_property
    def presentation(self):
        return marked_scheme_ideal(self.ideal, 3)

    # --- reusable check bodies
    def strata_maximum(self):
        hf = tuple(_hf(self.ideal))
        strata = borel.enumerate_strongly_stable(self.n, len(self.ideal.staircase(None)), hf=hf)
        best = borel.gg_maximum([s.ideal for s in strata])
        return {"candidates": len(strata), "maximum_is_ideal": best == self.ideal}

    def support(self, value):
        polys = self.at(value).polys()
        raw = self.points.at({self.param: value})
        calib = zerodim.calibrate_coordinates(polys, raw)
        res = zerodim.verify_support_points(polys, raw)
        return {"calibration": calib, "stored_reading": self.points.coords,
                "all_vanish": res["all_vanish"], "distinct": res["distinct"],
                "count": res["count"]}

    def locality(self):
        qa0 = zerodim.quotient_algebra(self.at(0))
        qa1 = zerodim.quotient_algebra(self.at(1))
        return {"local_at_0": zerodim.is_local_at_origin(qa0),
                "local_at_1": zerodim.is_local_at_origin(qa1),
                "monomial_local": zerodim.is_local_at_origin(
                    zerodim.quotient_algebra(MarkedSet.monomial(self.ideal, 3), certify=False))}

    def initial_at_one(self):
        I = _in_ideal(self.at(1).polys())
        return {"equals_ideal": I == self.ideal,
                "compare": borel.gg_compare(I, self.ideal)}

    def presentation_summary(self, fixture_points: Dict[str, MarkedSet]):
        P = self.presentation
        hist = P.degree_histogram()
        sound = {k: P.vanishes_at(point_of(G)) for k, G in fixture_points.items()}
        return {"parameters": len(P.parameters), "generators": len(P.generators),
                "degrees": sorted(hist), "sound": all(sound.values())}


def _support_expected(count):
    return {"calibration": "natural", "stored_reading": "natural",
            "all_vanish": True, "distinct": True, "count": count}


def case_1771_steps() -> List[_Step]:
    c = _Case(7, "jg7", "f32_dim7", "gtau_dim7", "tau", "points_dim7")

    def annihilator_roundtrip():
        F = load("cubic_dim7")["F"]
        ann = apolar.annihilator(F)
        gb_f = groebner.GroebnerBasis(LEX, c.basis_polys)
        gb_a = groebner.GroebnerBasis(LEX, ann)
        return {"ann_in_ideal": all(gb_f.contains(g) for g in ann),
                "ideal_in_ann": all(gb_a.contains(g) for g in c.basis_polys),
                "hilbert": apolar.hilbert_function(F)}

    def negative_control():
        pts = c.at(1).polys()
        x7 = unit(7, 6)
        idx = list(c.family_polys).index("F19")
        cut = list(pts)
        cut[idx] = Poly({e: v for e, v in pts[idx].terms.items() if e != x7}, 7)
        before, after = _in_ideal(pts), _in_ideal(cut)
        return {"x7_coefficient": str(pts[idx].terms.get(x7, 0)),
                "initial_changes": before != after}

    def elimination():
        U = load("elim_u")
        C0 = load("elim_C0")
        E = load("elim_eliminated")
        gens = [p.coeff(()) for p in U.values()]
        solved = eliminable_parameters(gens)
        values = {p: e.evaluate(C0) for p, e in solved}
        free = set(C0)
        subs = dict(solved)
        G2, _ = generic_marked_set(c.ideal, 3, keep=free, values=subs)
        everything = dict(C0)
        everything.update(E)
        shape = set(C0) | set(E)
        G, _ = generic_marked_set(c.ideal, 3, keep=shape)
        A = MarkedSet.from_polys(load("elim_a").values(), c.ideal, 3)
        return {"solved": len(solved),
                "reproduces_eliminated": sorted(values) == sorted(E) and
                all(values[k] == E[k] for k in E),
                "substitution_identically_zero": is_marked_basis(G2).verdict,
                "specialization_equals_listed": G.specialize(everything) == A}

    def second_family():
        names = load("elim_Ctilde")
        G, used = generic_marked_set(c.ideal, 3, keep=names)
        listed = MarkedSet.from_polys(load("F3_family").values(), c.ideal, 3)
        return {"parameters": len(used), "equals_listed": G == listed,
                "basis": is_marked_basis(G).verdict}

    def second_family_points():
        dims = []
        for k in ("F3_point1", "F3_point2"):
            G = MarkedSet.from_polys(load(k).values(), c.ideal, 3)
            if not is_marked_basis(G).verdict:
                return f"{k} is not a marked basis"
            dims.append(tangent_dimension(G).dimension)
        return {"dimensions": dims, "max": max(dims)}

    def presentation():
        pts = {"f": c.basis, "a": MarkedSet.from_polys(load("elim_a").values(), c.ideal, 3),
               "tau=1": c.at(1), "tau=-1": c.at(-1),
               "F3_point1": MarkedSet.from_polys(load("F3_point1").values(), c.ideal, 3),
               "F3_point2": MarkedSet.from_polys(load("F3_point2").values(), c.ideal, 3)}
        return c.presentation_summary(pts)

    def tangent_a():
        return tangent_dimension(MarkedSet.from_polys(load("elim_a").values(), c.ideal, 3)).dimension

    return [
        _Step("strata", 561, "count:strata-7-16",
              lambda: len(borel.enumerate_strongly_stable(7, 16))),
        _Step("ideal-hilbert", {"hilbert": [1, 7, 7, 1], "strongly_stable": True, "generators": 32},
              "ideal:jg7",
              lambda: {"hilbert": _hf(c.ideal), "strongly_stable": c.ideal.is_strongly_stable(),
                       "generators": len(c.ideal.gens)}),
        _Step("gb-fixed-point", True, "basis:f32", lambda: _gb_fixed_point(c.basis_polys)),
        _Step("initial-ideal", True, "basis:f32", lambda: _in_ideal(c.basis_polys) == c.ideal),
        _Step("gg-maximum", True, "ideal:jg7-maximum",
              lambda: c.strata_maximum()["maximum_is_ideal"]),
        _Step("annihilator", {"ann_in_ideal": True, "ideal_in_ann": True, "hilbert": [1, 7, 7, 1]},
              "form:cubic", annihilator_roundtrip),
        _Step("socle", 1, "basis:f32",
              lambda: zerodim.socle_dimension(zerodim.quotient_algebra(c.basis))),
        _Step("marked-basis-f", True, "basis:f32", lambda: is_marked_basis(c.basis).verdict),
        _Step("marked-basis-family", True, "family:gtau", lambda: is_marked_basis(c.family).verdict),
        _Step("family-at-zero", True, "family:gtau", lambda: c.at(0) == c.basis),
        _Step("support", _support_expected(8), "points:dim7", lambda: c.support(1)),
        _Step("locality", {"local_at_0": True, "local_at_1": False, "monomial_local": True},
              "family:gtau", c.locality),
        _Step("initial-family", False, "family:gtau-initial",
              lambda: c.initial_at_one()["equals_ideal"]),
        _Step("negative-control", {"x7_coefficient": "-20", "initial_changes": True},
              "family:gtau-initial", negative_control),
        _Step("segment", True, "segment:jg7",
              lambda: borel.is_affine_segment(c.ideal, 3, [11, 10, 9, 8, 6, 5, 4])[0]),
        _Step("marked-scheme", {"parameters": 512, "generators": 2160, "degrees": [3, 4, 5],
                                "sound": True},
              "scheme:dim7", presentation,
              compare=lambda got, exp: isinstance(got, dict) and
              got["parameters"] == 512 and set(got["degrees"]) <= {3, 4, 5} and got["sound"]),
        _Step("elimination", {"solved": 25, "reproduces_eliminated": True,
                           "substitution_identically_zero": True,
                           "specialization_equals_listed": True},
              "family:elimination", elimination),
        _Step("second-family", {"parameters": 109, "equals_listed": True, "basis": True},
              "family:second", second_family),
        _Step("tangent-i0", 112, "tangent:i0-dim7", lambda: tangent_dimension(c.basis).dimension),
        _Step("tangent-a", 161, "tangent:a", tangent_a, heavy=True),
        _Step("tangent-second-family", 153, "tangent:second-family",
              second_family_points, heavy=True,
              compare=lambda got, exp: isinstance(got, dict) and got["max"] == exp),
    ]


def case_1551_steps(seed: int = 42) -> List[_Step]:
    c = _Case(5, "jg5", "f17_dim5", "gT_dim5", "T", "points_dim5")

    def presentation():
        pts = {"f": c.basis, "T=1": c.at(1), "T=-1": c.at(-1)}
        return c.presentation_summary(pts)

    def gin():
        I, _ = groebner.gin_probabilistic(c.basis_polys, LEX, seed=seed, trials=2)
        return I == c.ideal

    def jacobian():
        return tangent_dimension_jacobian(c.presentation, point_of(c.basis)).dimension

    return [
        _Step("strata", 92, "count:strata-5-12",
              lambda: len(borel.enumerate_strongly_stable(5, 12))),
        _Step("ideal-hilbert", {"hilbert": [1, 5, 5, 1], "strongly_stable": True, "generators": 17},
              "ideal:jg5",
              lambda: {"hilbert": _hf(c.ideal), "strongly_stable": c.ideal.is_strongly_stable(),
                       "generators": len(c.ideal.gens)}),
        _Step("gb-fixed-point", True, "basis:f17", lambda: _gb_fixed_point(c.basis_polys)),
        _Step("initial-ideal", True, "basis:f17", lambda: _in_ideal(c.basis_polys) == c.ideal),
        _Step("socle", 1, "basis:f17",
              lambda: zerodim.socle_dimension(zerodim.quotient_algebra(c.basis))),
        _Step("gg-maximum", True, "ideal:jg5-maximum",
              lambda: c.strata_maximum()["maximum_is_ideal"]),
        _Step("marked-scheme", {"parameters": 204, "generators": 576, "degrees": [3, 4],
                                "sound": True},
              "scheme:dim5", presentation,
              compare=lambda got, exp: isinstance(got, dict) and
              got["parameters"] == 204 and got["sound"]),
        _Step("marked-basis-f", True, "basis:f17", lambda: is_marked_basis(c.basis).verdict),
        _Step("marked-basis-family", True, "family:gT", lambda: is_marked_basis(c.family).verdict),
        _Step("family-at-zero", True, "family:gT", lambda: c.at(0) == c.basis),
        _Step("support", _support_expected(3), "points:dim5", lambda: c.support(1)),
        _Step("locality", {"local_at_0": True, "local_at_1": False, "monomial_local": True},
              "family:gT", c.locality),
        _Step("initial-family", False, "family:gT-initial",
              lambda: c.initial_at_one()["equals_ideal"]),
        _Step("tangent", 60, "tangent:i0-dim5", lambda: tangent_dimension(c.basis).dimension),
        _Step("jacobian-tangent", 60, "tangent:i0-dim5", jacobian),
        _Step("segment", True, "segment:jg5",
              lambda: borel.is_affine_segment(c.ideal, 3, [8, 7, 5, 4, 3])[0]),
        _Step("gin", True, "basis:f17-gin", gin),
    ]


CASES = {"1771": case_1771_steps, "1551": case_1551_steps}


def run_case(case: str, heavy: bool = False, only: Sequence[str] = (),
             skip: Sequence[str] = (), progress=None, seed: int = 42) -> CaseStudyReport:
    if case not in CASES:
        raise KeyError(f"unknown case {case!r}; choose from {sorted(CASES)}")
    steps = CASES[case](seed) if case == "1551" else CASES[case]()
    return run_steps(case, steps, heavy, only, skip, progress)


def run_case_1771(**kw) -> CaseStudyReport:
    return run_case("1771", **kw)


def run_case_1551(**kw) -> CaseStudyReport:
    return run_case("1551", **kw)


def stderr_progress(name: str):
    print(f"[case-study] {name}", file=sys.stderr, flush=True)
