"""Reading and writing gain-graph files and plain edge lists.

A gain-graph file is JSON::

    {
      "group": {"rotation_order": 4, "mode": "exact"},
      "vertices": ["v1", "v2"],
      "arcs": [{"from": "v1", "to": "v1", "rot": 1, "trans": ["1", "0"]}, ...],
      "positions": {"v1": ["16/25", "3/25"]}
    }

Exact mode takes integer rotation exponents in [0, rotation_order) and
rational strings "p/q".  Numeric mode takes "angle" in radians and float
translations.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import InputError
from .gaingraph import Arc, GainGraph
from .isometry import Isometry

SCHEMA_MODES = ("exact", "numeric")


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"exact coordinates must be rational strings like '3/4', got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise InputError(f"rational {text!r} has a zero denominator") from None
    except ValueError:
        raise InputError(f"cannot parse rational {text!r}") from None


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _parse_float(v) -> float:
    if isinstance(v, bool):
        raise InputError(f"not a number: {v!r}")
    try:
        x = float(v)
    except (TypeError, ValueError):
        raise InputError(f"not a number: {v!r}") from None
    if not math.isfinite(x):
        raise InputError(f"non-finite number {v!r}")
    return x


def _pair(v, what: str):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InputError(f"{what} must be a two-element list")
    return v


def graph_from_dict(doc: dict) -> GainGraph:
    if not isinstance(doc, dict):
        raise InputError("graph file must hold a JSON object")
    group = doc.get("group", {})
    mode = group.get("mode", "exact")
    if mode not in SCHEMA_MODES:
        raise InputError(f"group mode must be one of {SCHEMA_MODES}, got {mode!r}")
    order = group.get("rotation_order", 1)
    if mode == "exact":
        if isinstance(order, bool) or not isinstance(order, int) or order < 1:
            raise InputError(f"rotation_order must be a positive integer, got {order!r}")
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise InputError("'vertices' must be a nonempty list of ids")
    names = [str(v) for v in verts]
    if len(set(names)) != len(names):
        raise InputError("vertex ids must be distinct")
    where = {v: i for i, v in enumerate(names)}
    arcs = []
    for k, a in enumerate(doc.get("arcs", [])):
        try:
            u, v = where[str(a["from"])], where[str(a["to"])]
        except KeyError as exc:
            raise InputError(f"arc {k}: unknown or missing endpoint {exc}") from None
        tx, ty = _pair(a.get("trans", ["0", "0"]), f"arc {k} trans")
        if mode == "exact":
            rot = a.get("rot", 0)
            if isinstance(rot, bool) or not isinstance(rot, int) or not 0 <= rot < order:
                raise InputError(f"arc {k}: rot must be an integer in [0, {order}), got {rot!r}")
            gain = Isometry(rot, (parse_rational(tx), parse_rational(ty)), order)
        else:
            gain = Isometry(_parse_float(a.get("angle", 0.0)), (_parse_float(tx), _parse_float(ty)))
        if u == v and gain.is_identity():
            raise InputError(f"arc {k}: loop at {names[u]} carries the identity gain")
        arcs.append(Arc(u, v, gain))
    positions = None
    if doc.get("positions") is not None:
        positions = {}
        for name, xy in doc["positions"].items():
            if name not in where:
                raise InputError(f"position given for unknown vertex {name!r}")
            x, y = _pair(xy, f"position of {name}")
            if mode == "exact":
                positions[where[name]] = (parse_rational(x), parse_rational(y))
            else:
                positions[where[name]] = (_parse_float(x), _parse_float(y))
    return GainGraph(len(names), arcs, order if mode == "exact" else None, names, positions)


def graph_to_dict(g: GainGraph) -> dict:
    arcs = []
    for a in g.arcs:
        item = {"from": g.names[a.source], "to": g.names[a.target]}
        if g.exact:
            pt = a.gain.translation_point()
            if pt is None:
                raise InputError("translation is not a rational point and cannot be written exactly")
            item["rot"] = a.gain.rot
            item["trans"] = [format_rational(pt[0]), format_rational(pt[1])]
        else:
            item["angle"] = a.gain.rot
            item["trans"] = [a.gain.trans.real, a.gain.trans.imag]
        arcs.append(item)
    doc = {
        "group": {"rotation_order": g.rotation_order if g.exact else None, "mode": "exact" if g.exact else "numeric"},
        "vertices": list(g.names),
        "arcs": arcs,
    }
    if g.positions:
        fmt = format_rational if g.exact else float
        doc["positions"] = {g.names[v]: [fmt(x), fmt(y)] for v, (x, y) in sorted(g.positions.items())}
    return doc


def loads_graph(text: str) -> GainGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return graph_from_dict(doc)


def dumps_graph(g: GainGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)


def read_graph(path) -> GainGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return loads_graph(text)


def write_graph(g: GainGraph, path) -> None:
    Path(path).write_text(dumps_graph(g) + "\n")


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]], list[str]]:
    """Parse "u v" lines ('#' starts a comment) into (n, edges, vertex names).

    Vertex names are arbitrary tokens, numbered in order of first appearance.
    Self-loops and repeated edges are rejected.
    """
    names: list[str] = []
    where: dict[str, int] = {}
    edges = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected two vertex ids, got {line!r}")
        ids = []
        for tok in parts:
            if tok not in where:
                where[tok] = len(names)
                names.append(tok)
            ids.append(where[tok])
        u, v = ids
        if u == v:
            raise InputError(f"line {lineno}: self-loop at {parts[0]}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"line {lineno}: repeated edge {parts[0]} {parts[1]}")
        seen.add(key)
        edges.append((u, v))
    return len(names), edges, names


def read_edge_list(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_edge_list(text)


def fixture_names() -> list[str]:
    root = resources.files("symrigid") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith((".json", ".edges")))


def fixture_path(name: str):
    """Path of a bundled example; ``name`` may omit the extension."""
    root = resources.files("symrigid") / "fixtures"
    for cand in (name, name + ".json", name + ".edges"):
        p = root / cand
        if p.is_file():
            return p
    raise InputError(f"no bundled fixture named {name!r}")


def load_fixture(name: str) -> GainGraph:
    return loads_graph(fixture_path(name).read_text())
