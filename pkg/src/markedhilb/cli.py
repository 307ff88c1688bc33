"""Command line interface.

Every subcommand prints one JSON document on stdout.  Exit status is 0 on
success, 1 when a check fails and 2 on usage or input errors.

Input files may be JSON, the annotated text format of the bundled fixtures,
plain text (one item per line), or ``fixture:NAME`` to use a bundled file.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ input

def _read_text(source: str) -> str:
    from .fixtures import raw_text
    if source.startswith("fixture:"):
        return raw_text(source[len("fixture:"):])
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc


def _is_annotated(text: str) -> bool:
    return any(ln.startswith("@") for ln in text.splitlines())


def load_ideal(source: str):
    from .fixtures import parse_text
    from .monideal import parse_ideal_file
    text = _read_text(source)
    if _is_annotated(text):
        fx = parse_text(text, source)
        if fx.kind != "ideal":
            raise UsageError(f"{source} holds {fx.kind}, not an ideal")
        return fx.value
    return parse_ideal_file(text)


def load_polys(source: str, nvars: Optional[int] = None):
    """A list of polynomials from JSON (list of strings, or a marked set
    document), annotated text, or one polynomial per line."""
    from .fixtures import parse_text
    from .poly import Poly, parse_poly, scan_variables
    text = _read_text(source)
    s = text.strip()
    if s.startswith("{") or s.startswith("["):
        data = json.loads(s)
        if isinstance(data, dict) and "polys" in data and data["polys"] \
                and isinstance(data["polys"][0], dict):
            from .marked import MarkedSet
            return MarkedSet.from_json(data).polys()
        items = data["polys"] if isinstance(data, dict) else data
        n = nvars or scan_variables(items)[0]
        return [parse_poly(p, n, False) for p in items]
    if _is_annotated(text):
        fx = parse_text(text, source)
        if fx.kind != "polys":
            raise UsageError(f"{source} holds {fx.kind}, not polynomials")
        return list(fx.value.values())
    lines = [ln.split(":", 1)[-1] if ":" in ln else ln
             for ln in s.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    n = nvars or scan_variables(lines)[0]
    return [parse_poly(p, n, False) for p in lines]


def load_points(source: str, values: dict):
    from .fixtures import parse_text
    from .poly import parse_rational
    text = _read_text(source)
    s = text.strip()
    if s.startswith("["):
        return [tuple(parse_rational(str(v)) for v in row) for row in json.loads(s)]
    fx = parse_text(text, source)
    if fx.kind != "points":
        raise UsageError(f"{source} holds {fx.kind}, not points")
    return fx.value.at(values)


def _parse_assign(items: List[str]) -> dict:
    from .poly import parse_rational
    out = {}
    for it in items or []:
        k, sep, v = it.partition("=")
        if not sep:
            raise UsageError(f"expected NAME=VALUE, got {it!r}")
        out[k.strip()] = parse_rational(v)
    return out


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma separated integers, got {text!r}") from exc


def _order(name: str):
    from .poly import DEGREVLEX, LEX
    return {"lex": LEX, "degrevlex": DEGREVLEX}[name]


def _marked(args, polys=None):
    from .marked import MarkedSet
    ideal = load_ideal(args.ideal)
    polys = polys if polys is not None else load_polys(args.basis, ideal.n)
    G = MarkedSet.from_polys(polys, ideal, args.m)
    values = _parse_assign(getattr(args, "set", None))
    if values or G.parameters():
        missing = G.parameters() - set(values)
        if missing and not getattr(args, "symbolic", False):
            raise UsageError(f"give values for {sorted(missing)} with --set NAME=VALUE")
        if values:
            G = G.specialize(values, partial=True)
    return G


# -------------------------------------------------------------- commands

def cmd_hilbert(args):
    ideal = load_ideal(args.ideal)
    table = ideal.hilbert_table(args.t_max)
    out = table.as_dict()
    out["ideal"] = ideal.to_text()
    out["artinian"] = ideal.is_artinian()
    return out, EXIT_OK


def cmd_pommaret(args):
    from .monideal import NotQuasiStable
    ideal = load_ideal(args.ideal)
    try:
        basis = ideal.pommaret_basis(args.cap)
    except NotQuasiStable as exc:
        return {"quasi_stable": False, "error": str(exc)}, EXIT_FAIL
    from .poly import term_str
    return {"quasi_stable": True, "stable": ideal.is_stable(),
            "strongly_stable": ideal.is_strongly_stable(), "size": len(basis),
            "basis": [term_str(t) for t in basis]}, EXIT_OK


def cmd_enum_stable(args):
    from .borel import EnumerationCap, enumerate_strongly_stable
    hf = _ints(args.hf) if args.hf else None
    try:
        strata = enumerate_strongly_stable(args.n, args.d, hf, args.cap)
    except EnumerationCap as exc:
        return {"error": str(exc), "partial": exc.partial}, EXIT_FAIL
    out = {"n": args.n, "d": args.d, "hf": hf, "count": len(strata)}
    if args.out:
        _write(args.out, {"strata": [s.as_dict() for s in strata], **out})
    elif args.list:
        out["strata"] = [s.as_dict() for s in strata]
    return out, EXIT_OK


def cmd_gg_compare(args):
    from .borel import gg_compare, gg_compare_materialized
    J, H = load_ideal(args.ideal), load_ideal(args.other)
    order = _order(args.order)
    verdict = gg_compare(J, H, order, args.r)
    out = {"verdict": verdict}
    if args.materialized:
        r = args.r or len(J.staircase(None))
        out["materialized"] = gg_compare_materialized(J, H, r, order)
        if out["materialized"] != verdict:
            return out, EXIT_FAIL
    return out, EXIT_OK


def cmd_segment_check(args):
    from .borel import find_segment_weight, is_affine_segment
    from .poly import term_str
    ideal = load_ideal(args.ideal)
    if args.omega:
        omega = _ints(args.omega)
        if len(omega) != ideal.n:
            raise UsageError(f"omega needs {ideal.n} entries")
        ok, wit = is_affine_segment(ideal, args.m, omega)
    else:
        found = find_segment_weight(ideal, args.m)
        if found is None:
            return {"segment": False, "omega": None}, EXIT_FAIL
        omega, ok, wit = list(found), True, None
    out = {"segment": ok, "omega": omega,
           "witness": None if wit is None else [term_str(wit[0]), term_str(wit[1])]}
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_groebner(args):
    from .groebner import ResourceCap, buchberger, initial_ideal
    polys = load_polys(args.input)
    try:
        gb = buchberger(polys, _order(args.order), args.max_pairs)
    except ResourceCap as exc:
        return {"error": str(exc)}, EXIT_FAIL
    out = {"order": args.order, "size": len(gb.elements), "basis": gb.texts(),
           "initial_ideal": initial_ideal(gb).to_text()}
    if args.out:
        _write(args.out, out)
        return {k: out[k] for k in ("order", "size", "initial_ideal")}, EXIT_OK
    return out, EXIT_OK


def cmd_gin(args):
    from .groebner import Inconclusive, gin_probabilistic
    polys = load_polys(args.input)
    try:
        I, note = gin_probabilistic(polys, _order(args.order), args.seed, args.trials)
    except Inconclusive as exc:
        return {"error": str(exc), "seed": args.seed}, EXIT_FAIL
    return {"seed": args.seed, "trials": args.trials, "initial_ideal": I.to_text(),
            "note": note}, EXIT_OK


def cmd_apolar(args):
    from .apolar import apolar_report, generic_cubic
    if args.cubic:
        (F,) = load_polys(args.cubic, args.n)[:1]
        seed = None
    else:
        if args.seed is None:
            raise UsageError("give --cubic FILE or --seed N")
        F, seed = generic_cubic(args.n, args.seed)
        if F is None:
            return {"error": "no generic cubic found", "seed": args.seed}, EXIT_FAIL
    out = apolar_report(F).as_dict()
    out["form"] = F.to_text()
    out["seed"] = seed
    return out, EXIT_OK


def cmd_marked_basis_check(args):
    from .marked import ReductionCap, is_marked_basis
    G = _marked(args)
    try:
        cert = is_marked_basis(G, args.max_steps)
    except ReductionCap as exc:
        return {"error": str(exc)}, EXIT_FAIL
    out = cert.as_dict()
    out["parameters"] = sorted(G.parameters())
    return out, EXIT_OK if cert.verdict else EXIT_FAIL


def cmd_marked_scheme(args):
    from .mfscheme import marked_scheme_ideal
    ideal = load_ideal(args.ideal)
    keep = None
    if args.keep:
        keep = [ln.strip() for ln in _read_text(args.keep).splitlines()
                if ln.strip() and not ln.startswith(("#", "@"))]
    progress = _progress(args, "prolongation")
    pres = marked_scheme_ideal(ideal, args.m, keep, progress=progress)
    out = pres.as_dict(with_generators=bool(args.out))
    if args.out:
        _write(args.out, out)
        out.pop("polys")
    return out, EXIT_OK


def cmd_tangent_dim(args):
    from .mfscheme import (NotOnScheme, marked_scheme_ideal, point_of, tangent_dimension,
                           tangent_dimension_jacobian)
    from .zerodim import quotient_algebra, tangent_dimension_commuting
    G = _marked(args, load_polys(args.point))
    try:
        if args.method == "eps":
            rep = tangent_dimension(G).as_dict()
        elif args.method == "jacobian":
            pres = marked_scheme_ideal(G.ideal, G.m)
            rep = tangent_dimension_jacobian(pres, point_of(G)).as_dict()
        else:
            d = tangent_dimension_commuting(quotient_algebra(G))
            rep = {"dimension": d, "method": "commuting-matrices"}
    except NotOnScheme as exc:
        return {"error": str(exc)}, EXIT_FAIL
    return rep, EXIT_OK


def cmd_verify_support(args):
    values = _parse_assign(args.set)
    polys = [p.specialize(values) if p.parameters() else p for p in load_polys(args.basis)]
    pts = load_points(args.points, values)
    from .zerodim import calibrate_coordinates, verify_support_points
    res = verify_support_points(polys, pts)
    res["calibration"] = calibrate_coordinates(polys, pts)
    return res, EXIT_OK if res["all_vanish"] and res["distinct"] else EXIT_FAIL


def cmd_case_study(args):
    from .caselab import run_case, stderr_progress
    rep = run_case(args.case, heavy=args.heavy, only=args.only or (), skip=args.skip or (),
                   progress=stderr_progress if args.verbose else None, seed=args.seed)
    out = rep.as_dict(timings=not args.no_timings)
    if args.report:
        _write(args.report, out)
    return out, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_parse(args):
    from .fixtures import checksum, parse_fixture, parse_text, serialize_body
    if args.file:
        fx = parse_text(_read_text(args.file), args.file)
    elif args.name:
        fx = parse_fixture(args.name)
    else:
        raise UsageError("give a fixture name or --file")
    canon = serialize_body(fx)
    return {"name": fx.name, "kind": fx.kind, "ring": fx.ring, "items": len(canon),
            "round_trip": canon == fx.body, "canonical_sha256": checksum("\n".join(canon) + "\n"),
            "canonical": canon if args.show else None}, EXIT_OK


# ----------------------------------------------------------------- driver

def _write(path: str, data):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, default=str)
        fh.write("\n")


def _progress(args, label):
    if not getattr(args, "verbose", 0):
        return None

    def report(k):
        if k % 25 == 0:
            print(f"[{label}] {k}", file=sys.stderr, flush=True)
    return report


def _common(p: argparse.ArgumentParser):
    p.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr")
    p.add_argument("--threads", type=_positive, default=1,
                   help="parallelism cap (computations are sequential; results never depend on it)")


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="markedhilb",
                                 description="Marked bases, Borel strata and tangent spaces "
                                             "for points of Hilbert schemes.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(func=fn)
        _common(p)
        return p

    p = add("hilbert", cmd_hilbert, "Hilbert function table of a monomial ideal.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--t-max", type=int)

    p = add("pommaret", cmd_pommaret, "Pommaret basis and stability flags.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--cap", type=_positive, help="maximum basis size")

    p = add("enum-stable", cmd_enum_stable, "Count strongly stable Artinian ideals of colength d.")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--hf", help="graded Hilbert function filter, e.g. 1,7,7,1")
    p.add_argument("--cap", type=_positive, help="stop after this many staircases")
    p.add_argument("--list", action="store_true", help="include the ideals in the output")
    p.add_argument("--out", help="write the full list to this JSON file")

    p = add("gg-compare", cmd_gg_compare, "Compare two ideals in the >> order.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--order", choices=["lex", "degrevlex"], default="lex")
    p.add_argument("--r", type=_positive, help="comparison degree (default: the colength)")
    p.add_argument("--materialized", action="store_true",
                   help="also compare the full term lists")

    p = add("segment-check", cmd_segment_check, "Affine segment test for a weight vector.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--omega", help="weights, largest variable first; omit to search")

    p = add("groebner", cmd_groebner, "Reduced Groebner basis.")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--order", choices=["lex", "degrevlex"], default="lex")
    p.add_argument("--max-pairs", type=_positive)
    p.add_argument("--out")

    p = add("gin", cmd_gin, "Initial ideal after random coordinate changes.")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=2)
    p.add_argument("--order", choices=["lex", "degrevlex"], default="lex")

    p = add("apolar", cmd_apolar, "Annihilator and Hilbert function of a form.")
    p.add_argument("--n", type=_positive, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cubic")
    g.add_argument("--seed", type=int)

    p = add("marked-basis-check", cmd_marked_basis_check, "Certify a marked basis.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--basis", required=True)
    p.add_argument("--set", action="append", metavar="NAME=VALUE")
    p.add_argument("--symbolic", action="store_true", help="keep free parameters symbolic")
    p.add_argument("--max-steps", type=_positive)

    p = add("marked-scheme", cmd_marked_scheme, "Equations of the marked scheme.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--keep", help="file listing the parameters kept free")
    p.add_argument("--out")

    p = add("tangent-dim", cmd_tangent_dim, "Tangent dimension at a marked basis.")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--point", required=True)
    p.add_argument("--set", action="append", metavar="NAME=VALUE")
    p.add_argument("--method", choices=["eps", "jacobian", "commuting"], default="eps")

    p = add("verify-support", cmd_verify_support, "Evaluate polynomials at points.")
    p.add_argument("--basis", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--set", action="append", metavar="NAME=VALUE")

    p = add("case-study", cmd_case_study, "Run a stored case-study pipeline.")
    p.add_argument("case", choices=["1771", "1551"])
    p.add_argument("--heavy", action="store_true")
    p.add_argument("--only", action="append")
    p.add_argument("--skip", action="append")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--report")
    p.add_argument("--no-timings", action="store_true")

    p = add("parse", cmd_parse, "Parse a fixture and report the round trip.")
    p.add_argument("name", nargs="?")
    p.add_argument("--file")
    p.add_argument("--show", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else exc.args[0]
        print(f"markedhilb: {msg}", file=sys.stderr)
        print(json.dumps({"error": str(msg), "type": type(exc).__name__}))
        return EXIT_USAGE
    print(json.dumps(out, indent=1, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
