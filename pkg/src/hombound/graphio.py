"""Graph ingestion and emission: DIMACS .col, graph JSON, and named builtins."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import InputFormatError, InvalidArgument
from .graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    kneser_graph,
    petersen_graph,
)

_NAME_RE = re.compile(r"^(k|c)(\d+)$", re.IGNORECASE)
_KNESER_RE = re.compile(r"^kneser:(\d+):(\d+)$", re.IGNORECASE)


def named_graph(name: str) -> Graph | None:
    """Resolve built-in instance names: K2.., C3.., petersen, kneser:n:k."""
    name = name.strip()
    if name.lower() == "petersen":
        return petersen_graph()
    m = _NAME_RE.match(name)
    if m:
        count = int(m.group(2))
        return complete_graph(count) if m.group(1).lower() == "k" else cycle_graph(count)
    m = _KNESER_RE.match(name)
    if m:
        return kneser_graph(int(m.group(1)), int(m.group(2)))
    return None


def parse_dimacs(text: str) -> tuple[Graph, list[str]]:
    """DIMACS edge format; 1-based indices shifted to 0-based.

    Duplicate edges are tolerated with a warning; a self-loop line produces
    a graph with loops plus a warning.
    """
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    warnings: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "edges", "col"):
                raise InputFormatError("malformed problem line", lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise InputFormatError("vertex count is not an integer", lineno)
        elif parts[0] == "e":
            if n is None:
                raise InputFormatError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise InputFormatError("malformed edge line", lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise InputFormatError("edge endpoints are not integers", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise InputFormatError(f"edge ({u + 1}, {v + 1}) out of range", lineno)
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                warnings.append(f"line {lineno}: duplicate edge {parts[1]} {parts[2]}")
                continue
            if u == v:
                warnings.append(f"line {lineno}: self-loop at vertex {parts[1]}")
            seen.add(key)
            edges.append(key)
        else:
            raise InputFormatError(f"unrecognized line type {parts[0]!r}", lineno)
    if n is None:
        raise InputFormatError("missing problem line")
    return Graph(n, edges), warnings


def emit_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.vertex_count} {g.edge_count}"]
    for u, v in g.sorted_edges():
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def graph_from_json_dict(data: dict) -> Graph:
    try:
        return Graph(data["n"], data.get("edges", []), data.get("labels"))
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"bad graph JSON: {exc}") from exc


def graph_to_json_dict(g: Graph) -> dict:
    out = {"n": g.vertex_count, "edges": [list(e) for e in g.sorted_edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def parse_graph(path_or_name: str, fmt: str = "auto") -> tuple[Graph, list[str]]:
    """Load a graph from a builtin name, a DIMACS .col file, or graph JSON."""
    builtin = named_graph(path_or_name)
    if builtin is not None:
        return builtin, []
    path = Path(path_or_name)
    if not path.exists():
        raise InputFormatError(
            f"{path_or_name!r} is neither a builtin graph name nor a file"
        )
    text = path.read_text()
    if fmt == "auto":
        fmt = "json" if path.suffix.lower() == ".json" else "dimacs-col"
    if fmt == "dimacs-col":
        return parse_dimacs(text)
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"bad JSON: {exc}") from exc
        return graph_from_json_dict(data), []
    raise InvalidArgument(f"unknown graph format {fmt!r}")
