"""Complex file formats and report emission.

Two input formats:

* ``facet-lines``: one facet per line, whitespace-separated integer vertex
  labels; ``#`` starts a comment.
* ``facet-json``: ``{"vertices": [...], "facets": [[...], ...]}`` where a
  vertex is an integer or a list of integers (joins and products use
  multi-coordinate labels).

Emission is canonical (sorted facets, sorted keys), so parse o emit is the
identity on complexes and reports are byte-stable.
"""

from __future__ import annotations

import json

from . import __version__
from .simplicial import SimplicialComplex

SCHEMA_VERSION = 1


class ParseError(ValueError):
    pass


def _label_from_json(v):
    if isinstance(v, int):
        return (v,)
    if isinstance(v, list) and v and all(isinstance(x, int) for x in v):
        return tuple(v)
    raise ParseError(f"bad vertex label {v!r}")


def _label_to_json(v):
    return v[0] if len(v) == 1 else list(v)


def parse_complex(text: str | bytes, fmt: str = "facet-lines",
                  name: str | None = None) -> SimplicialComplex:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if fmt == "facet-lines":
        facets = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                facet = tuple((int(tok),) for tok in line.split())
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if len(set(facet)) != len(facet):
                raise ParseError(f"line {lineno}: repeated vertex in facet {line!r}")
            facets.append(facet)
        if not facets:
            raise ParseError("no facets found")
        return SimplicialComplex.from_facets(facets, name=name)
    if fmt == "facet-json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}") from None
        if not isinstance(obj, dict) or "facets" not in obj:
            raise ParseError("facet-json needs an object with a 'facets' list")
        try:
            facets = [tuple(_label_from_json(v) for v in f) for f in obj["facets"]]
            vertices = [_label_from_json(v) for v in obj.get("vertices", [])]
        except (TypeError, ParseError) as exc:
            raise ParseError(str(exc)) from None
        seen = {frozenset(f) for f in facets}
        if len(seen) != len(facets):
            facets = sorted({tuple(sorted(f)) for f in facets})
        return SimplicialComplex.from_facets(facets, vertices=vertices,
                                             name=name or obj.get("name"))
    raise ParseError(f"unknown format {fmt!r}")


def maximal_faces(K: SimplicialComplex):
    faces = sorted(K.faces, key=len, reverse=True)
    out = []
    for f in faces:
        if f and not any(set(f) < set(g) for g in out):
            out.append(f)
    return sorted(out)


def emit_complex(K: SimplicialComplex, fmt: str = "facet-json") -> str:
    if fmt == "facet-json":
        obj = {
            "vertices": [_label_to_json(v) for v in K.vertices],
            "facets": [[_label_to_json(v) for v in f] for f in maximal_faces(K)],
        }
        if K.name:
            obj["name"] = K.name
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if fmt == "facet-lines":
        lines = []
        for f in maximal_faces(K):
            if any(len(v) != 1 for v in f):
                raise ValueError("facet-lines cannot express multi-coordinate labels")
            lines.append(" ".join(str(v[0]) for v in f))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def report_envelope(payload: dict) -> dict:
    out = dict(payload)
    out["schema_version"] = SCHEMA_VERSION
    out["tool_version"] = __version__
    return out


def emit_report(payload: dict, fmt: str = "json") -> str:
    """Serialize a report dict: stable key order in json, plain text otherwise."""
    payload = report_envelope(payload)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        lines = []
        _render_text(payload, lines, 0)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _render_text(obj, lines, depth):
    pad = "  " * depth
    if isinstance(obj, dict):
        for key in sorted(obj, key=str):
            val = obj[key]
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                _render_text(val, lines, depth + 1)
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                _render_text(val, lines, depth + 1)
            else:
                lines.append(f"{pad}- {_scalar(val)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)) and not v:
        return "[]" if isinstance(v, list) else "{}"
    return str(v)
