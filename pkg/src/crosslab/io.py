"""Canonical drawing JSON.

Keys are sorted, rationals are reduced "p/q" strings, vertices and edges are
listed in id order.  Re-serializing a parsed file reproduces it byte for
byte.  Unknown top-level keys (seeds, optimizer results) ride along in
``meta``.
"""

from __future__ import annotations

import json
import sys
from typing import Any

from .drawing import CLASS_TAGS, Drawing, StructuralError
from .geometry import format_scalar, parse_scalar
from .layouts import CylindricalLayout, TwoPageLayout
from .spherical import SphericalDrawing

_CORE_KEYS = {"n", "class", "vertices", "edges", "layout"}

_LAYOUTS = {
    "two-page": TwoPageLayout,
    "cylindrical": CylindricalLayout,
    "spherical-projected": SphericalDrawing,
}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def drawing_to_json(d: Drawing, meta: dict | None = None) -> dict:
    out = dict(meta or {})
    out.update(
        {
            "n": d.n,
            "class": d.class_tag,
            "vertices": [{"id": v, "x": format_scalar(p[0]), "y": format_scalar(p[1])} for v, p in d.vertices.items()],
            "edges": [
                {"u": u, "v": v, "polyline": [[format_scalar(x), format_scalar(y)] for x, y in pts]}
                for (u, v), pts in d.edges.items()
            ],
        }
    )
    if d.layout is not None:
        out["layout"] = d.layout.to_json()
    return out


def _need(obj: dict, key: str, kind):
    if key not in obj:
        raise StructuralError(f"missing key {key!r}")
    if not isinstance(obj[key], kind):
        raise StructuralError(f"key {key!r} has the wrong type")
    return obj[key]


def drawing_from_json(obj: Any) -> tuple[Drawing, dict]:
    """Parse and structurally check a drawing; returns (drawing, meta)."""
    if not isinstance(obj, dict):
        raise StructuralError("top level must be an object")
    n = _need(obj, "n", int)
    tag = _need(obj, "class", str)
    if tag not in CLASS_TAGS:
        raise StructuralError(f"unknown class {tag!r}")
    try:
        verts = {}
        for r in _need(obj, "vertices", list):
            vid = int(r["id"])
            if vid in verts:
                raise StructuralError(f"duplicate vertex {vid}")
            verts[vid] = (parse_scalar(r["x"]), parse_scalar(r["y"]))
        edges = {}
        for r in _need(obj, "edges", list):
            u, v = int(r["u"]), int(r["v"])
            key = (min(u, v), max(u, v))
            if key in edges:
                raise StructuralError(f"duplicate edge {key[0]}-{key[1]}")
            pts = tuple((parse_scalar(x), parse_scalar(y)) for x, y in r["polyline"])
            edges[key] = pts if u < v else pts[::-1]
    except StructuralError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed drawing: {exc}") from exc
    layout = None
    if "layout" in obj:
        cls = _LAYOUTS.get(tag)
        if cls is None:
            raise StructuralError(f"class {tag!r} takes no layout payload")
        try:
            layout = cls.from_json(obj["layout"])
        except StructuralError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed layout: {exc}") from exc
    d = Drawing(n, verts, edges, tag, layout)
    d.check_structure()
    meta = {k: v for k, v in obj.items() if k not in _CORE_KEYS}
    return d, meta


def loads(text: str) -> tuple[Drawing, dict]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"not JSON: {exc}") from exc
    return drawing_from_json(obj)


def load(path) -> tuple[Drawing, dict]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(path, d: Drawing, meta: dict | None = None) -> None:
    text = dumps(drawing_to_json(d, meta))
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
