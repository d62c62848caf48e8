"""Line-oriented graph files.

    v <id> <weight>
    e <id> <id>
    c <id>          # marks the curve C (at most once)

Blank lines and ``#`` comments are ignored. Parsing is strict.
"""
from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .errors import GraphError, ParseError
from .graph import WeightedDualGraph


def parse_graph(text: str) -> Tuple[WeightedDualGraph, Optional[str]]:
    weights: Dict[str, int] = {}
    edges: List[Tuple[str, str]] = []
    seen_edges = set()
    marked: Optional[str] = None
    marked_line = 0
    edge_lines: List[Tuple[int, int, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        fields = line.split()
        if not fields:
            continue
        col = raw.index(fields[0]) + 1
        kind, args = fields[0], fields[1:]
        if kind == "v":
            if len(args) != 2:
                raise ParseError("expected 'v <id> <weight>'", lineno, col)
            vid, w = args
            try:
                weight = int(w)
            except ValueError:
                raise ParseError(f"weight {w!r} is not an integer", lineno, raw.index(w, col) + 1) from None
            if vid in weights:
                raise ParseError(f"duplicate vertex {vid}", lineno, col)
            weights[vid] = weight
        elif kind == "e":
            if len(args) != 2:
                raise ParseError("expected 'e <id> <id>'", lineno, col)
            u, v = args
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno, col)
            key = frozenset((u, v))
            if key in seen_edges:
                raise ParseError(f"repeated edge {u}-{v}", lineno, col)
            seen_edges.add(key)
            edges.append((u, v))
            edge_lines.append((lineno, col, u, v))
        elif kind == "c":
            if len(args) != 1:
                raise ParseError("expected 'c <id>'", lineno, col)
            if marked is not None:
                raise ParseError(f"C already marked as {marked} on line {marked_line}", lineno, col)
            marked, marked_line = args[0], lineno
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, col)

    for lineno, col, u, v in edge_lines:
        for x in (u, v):
            if x not in weights:
                raise ParseError(f"edge {u}-{v} refers to undeclared vertex {x}", lineno, col)
    if marked is not None and marked not in weights:
        raise ParseError(f"marked vertex {marked} is not declared", marked_line, 1)
    try:
        g = WeightedDualGraph(weights, edges)
    except GraphError as exc:  # pragma: no cover - every case is caught above
        raise ParseError(str(exc), 0) from exc
    return g, marked


def read_graph(path: Union[str, Path]) -> Tuple[WeightedDualGraph, Optional[str]]:
    return parse_graph(Path(path).read_text())


def emit_graph(g: WeightedDualGraph, c: Optional[str] = None) -> str:
    """Canonical text: vertices and edges in id order, then the mark."""
    lines = [f"v {v} {g.weight(v)}" for v in g.ids]
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    if c is not None:
        lines.append(f"c {c}")
    return "\n".join(lines) + "\n"
