"""Loader for the bundled fixture corpus.

Each fixture is a small text file: ``#`` comments, ``@key value`` headers
(name, kind, ring, optional coords) and a body whose shape depends on the
kind:

- ``ideal``: comma separated terms;
- ``polys``: ``label: polynomial`` per line;
- ``assign``: ``name = rational`` per line;
- ``names``: one parameter name per line;
- ``points``: ``label: (e1, ..., en)`` with entries polynomial in parameters.

Checksums are pinned in ``data/MANIFEST.json``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Tuple

from .monideal import MonomialIdeal
from .poly import ParamPoly, Poly, parse_params, parse_poly, parse_rational, qtext


class FixtureError(ValueError):
    pass


@dataclass
class Fixture:
    name: str
    kind: str
    ring: int
    headers: Dict[str, str]
    body: List[str]
    value: object


@dataclass
class Points:
    coords: str
    labels: List[str]
    entries: List[Tuple[ParamPoly, ...]]

    def at(self, values) -> List[Tuple]:
        """Points with their parameters substituted, in x1..xn order."""
        out = []
        for row in self.entries:
            pt = tuple(e.evaluate(values) for e in row)
            if self.coords == "reversed":
                pt = pt[::-1]
            out.append(pt)
        return out


def _dir():
    return resources.files("markedhilb") / "data"


def fixture_names() -> List[str]:
    return sorted(json.loads((_dir() / "MANIFEST.json").read_text())["sha256"])


def raw_text(name: str) -> str:
    path = _dir() / f"{name}.txt"
    if not path.is_file():
        raise FixtureError(f"no fixture named {name!r}")
    return path.read_text()


def checksum(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _split(text: str):
    headers, body = {}, []
    for ln in text.splitlines():
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("@"):
            k, _, v = s[1:].partition(" ")
            headers[k] = v.strip()
        else:
            body.append(s)
    return headers, body


def parse_text(text: str, name: str = "?") -> Fixture:
    headers, body = _split(text)
    kind = headers.get("kind")
    ring = int(headers.get("ring", "0"))
    try:
        if kind == "ideal":
            value = MonomialIdeal.parse(", ".join(body), n=ring, x0=False)
        elif kind == "polys":
            value = {}
            for ln in body:
                label, _, rhs = ln.partition(":")
                value[label.strip()] = parse_poly(rhs, ring, False)
        elif kind == "assign":
            value = {}
            for ln in body:
                k, _, v = ln.partition("=")
                value[k.strip()] = parse_rational(v)
        elif kind == "names":
            value = list(body)
        elif kind == "points":
            labels, entries = [], []
            for ln in body:
                label, _, rhs = ln.partition(":")
                rhs = rhs.strip()
                if not (rhs.startswith("(") and rhs.endswith(")")):
                    raise FixtureError(f"bad point {ln!r}")
                row = tuple(parse_params(e) for e in rhs[1:-1].split(","))
                if len(row) != ring:
                    raise FixtureError(f"point {label} has {len(row)} coordinates")
                labels.append(label.strip())
                entries.append(row)
            value = Points(headers.get("coords", "natural"), labels, entries)
        else:
            raise FixtureError(f"unknown fixture kind {kind!r}")
    except FixtureError:
        raise
    except Exception as exc:
        raise FixtureError(f"fixture {name}: {exc}") from exc
    return Fixture(headers.get("name", name), kind, ring, headers, body, value)


def parse_fixture(name: str, verify: bool = True) -> Fixture:
    """Parse a bundled fixture, checking its pinned checksum."""
    if not name:
        raise FixtureError("empty fixture name")
    text = raw_text(name)
    if verify:
        pinned = json.loads((_dir() / "MANIFEST.json").read_text())["sha256"].get(name)
        if pinned is None:
            raise FixtureError(f"fixture {name} is not in the manifest")
        if checksum(text) != pinned:
            raise FixtureError(f"checksum mismatch for fixture {name}")
    return parse_text(text, name)


def load(name: str):
    return parse_fixture(name).value


def serialize_body(fx: Fixture) -> List[str]:
    """Canonical body lines re-printed from the parsed value."""
    v = fx.value
    if fx.kind == "ideal":
        return [v.to_text()]
    if fx.kind == "polys":
        return [f"{k}: {p.to_text() if p.nvars else str(p.coeff(()))}" for k, p in v.items()]
    if fx.kind == "assign":
        return [f"{k} = {qtext(q)}" for k, q in v.items()]
    if fx.kind == "names":
        return list(v)
    if fx.kind == "points":
        return [f"{lab}: ({', '.join(str(e) for e in row)})"
                      for lab, row in zip(v.labels, v.entries)]
    raise FixtureError(fx.kind)


def quarantine() -> List[dict]:
    return json.loads((_dir() / "quarantine.json").read_text())


def write_manifest():
    d = _dir()
    sums = {}
    for p in sorted(d.iterdir()):
        if p.name.endswith(".txt"):
            sums[p.name[:-4]] = checksum(p.read_text())
    (d / "MANIFEST.json").write_text(json.dumps({"sha256": sums}, indent=1) + "\n")
    return sums
