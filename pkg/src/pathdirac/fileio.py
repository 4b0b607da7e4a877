"""Input parsing and deterministic result serialization.

Graph files, filtration manifests, and molecules come in as UTF-8 text;
results go out as schema-versioned JSON and row-major CSV. Floats are
rounded to 12 significant digits before serialization and files are
written atomically (temp file, then rename), so identical inputs yield
byte-identical outputs and failures never leave partial files behind.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .errors import ParseError
from .graphs import Digraph, Hypergraph
from .persistence import FeatureGrid, Filtration

SCHEMA_VERSION = "1"


def _data_lines(text: str):
    """Yield (lineno, stripped) for non-empty, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _directive(text: str, name: str) -> str | None:
    """Value of a `# name: ...` comment directive, if present."""
    prefix = f"# {name}:"
    for raw in text.splitlines():
        line = raw.strip()
        if line.lower().startswith(prefix):
            return line[len(prefix):].strip()
    return None


def parse_digraph(text: str, path: str | None = None) -> Digraph:
    """One `u v` pair per line; `# vertices: ...` declares isolated vertices."""
    vertices = []
    decl = _directive(text, "vertices")
    if decl is not None:
        try:
            vertices = [int(tok) for tok in decl.split()]
        except ValueError:
            raise ParseError("vertex declaration must list integers", path) from None
    edges = []
    for lineno, line in _data_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected `u v`, got {line!r}", path, lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"edge endpoints must be integers, got {line!r}", path, lineno) from None
        edges.append((u, v))
    try:
        return Digraph.of(vertices, edges)
    except ParseError as exc:
        raise ParseError(str(exc), path) from None


def parse_hypergraph(text: str, path: str | None = None) -> Hypergraph:
    """One hyperedge per line as space-separated vertex ids."""
    vertices = []
    decl = _directive(text, "vertices")
    if decl is not None:
        try:
            vertices = [int(tok) for tok in decl.split()]
        except ValueError:
            raise ParseError("vertex declaration must list integers", path) from None
    hyperedges = []
    for lineno, line in _data_lines(text):
        try:
            members = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"hyperedge must list integers, got {line!r}", path, lineno) from None
        hyperedges.append(members)
    try:
        return Hypergraph.of(vertices, hyperedges)
    except ParseError as exc:
        raise ParseError(str(exc), path) from None


def load_graph(path, kind: str):
    text = Path(path).read_text(encoding="utf-8")
    if kind == "digraph":
        return parse_digraph(text, str(path))
    if kind == "hypergraph":
        return parse_hypergraph(text, str(path))
    raise ParseError(f"unknown graph kind {kind!r}", str(path))


def parse_manifest(text: str, base_dir, path: str | None = None) -> Filtration:
    """Filtration manifest in one of two forms.

    Stage-list form: one graph-file path per line, optionally preceded by a
    `# kind: digraph|hypergraph` directive (digraph by default).

    Weighted form, selected by a `# thresholds: t1 t2 ...` directive: data
    lines are `u v w` weighted directed edges; stage i keeps edges with
    w <= t_i and every vertex is present from stage 1. A `# vertices: ...`
    directive declares isolated vertices.
    """
    base_dir = Path(base_dir)
    thresholds_decl = _directive(text, "thresholds")
    if thresholds_decl is not None:
        try:
            thresholds = [float(tok) for tok in thresholds_decl.split()]
        except ValueError:
            raise ParseError("thresholds must be numbers", path) from None
        if not thresholds:
            raise ParseError("threshold list is empty", path)
        vertices = []
        decl = _directive(text, "vertices")
        if decl is not None:
            vertices = [int(tok) for tok in decl.split()]
        weighted = []
        for lineno, line in _data_lines(text):
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"expected `u v w`, got {line!r}", path, lineno)
            try:
                u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                raise ParseError(f"bad weighted edge {line!r}", path, lineno) from None
            weighted.append((u, v, w))
        all_vertices = set(vertices) | {u for u, _, _ in weighted} | {v for _, v, _ in weighted}
        stages = []
        for t in thresholds:
            edges = [(u, v) for u, v, w in weighted if w <= t]
            stages.append(Digraph.of(all_vertices, edges))
        return Filtration.of(stages, thresholds)

    kind = _directive(text, "kind") or "digraph"
    if kind not in ("digraph", "hypergraph"):
        raise ParseError(f"manifest kind must be digraph or hypergraph, got {kind!r}", path)
    stages = []
    for lineno, line in _data_lines(text):
        stage_path = base_dir / line
        if not stage_path.exists():
            raise ParseError(f"stage file not found: {line}", path, lineno)
        stages.append(load_graph(stage_path, kind))
    if not stages:
        raise ParseError("manifest lists no stages", path)
    return Filtration.of(stages)


def load_manifest(path) -> Filtration:
    p = Path(path)
    return parse_manifest(p.read_text(encoding="utf-8"), p.parent, str(p))


# ---------------------------------------------------------------------------
# Serialization


def sig12(x: float) -> float:
    """Round to 12 significant digits; canonical float for serialization."""
    if x == 0:
        return 0.0
    return float(f"{x:.12g}")


def round_floats(obj):
    if isinstance(obj, float):
        return sig12(obj)
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def input_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def result_document(command: str, source, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": input_digest(source),
        **round_floats(payload),
    }


def write_json(path, document: dict) -> None:
    atomic_write_text(path, json.dumps(document, indent=2, sort_keys=True) + "\n")


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{sig12(value):.12g}"
    return str(value)


def write_csv(path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def grid_csv(path, grid: FeatureGrid) -> None:
    write_csv(path, ["n", "m", *grid.feature_names], grid.rows())


def grid_payload(grid: FeatureGrid) -> dict:
    return {
        "degree": grid.degree,
        "stages": grid.size,
        "features": list(grid.feature_names),
        "cells": [
            {"n": n, "m": m, **grid.cells[(n, m)].as_dict()}
            for (n, m) in sorted(grid.cells)
        ],
    }
