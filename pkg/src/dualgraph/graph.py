"""Weighted dual graphs of configurations of smooth rational curves."""
from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import GraphError

Edge = FrozenSet[str]

_DIGITS = re.compile(r"(\d+)")


@lru_cache(maxsize=65536)
def id_key(vid: str) -> Tuple:
    """Sort key for vertex ids: digit runs compare numerically, so D2 < D10."""
    parts = _DIGITS.split(vid)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "") + (vid,)


def sort_ids(ids: Iterable[str]) -> List[str]:
    return sorted(ids, key=id_key)


@dataclass(frozen=True)
class CurveVertex:
    id: str
    weight: int
    label: Optional[str] = None


@dataclass(frozen=True)
class IntersectionMatrix:
    ordering: Tuple[str, ...]
    entries: Tuple[Tuple[int, ...], ...]

    def negated(self) -> List[List[int]]:
        return [[-x for x in row] for row in self.entries]


class WeightedDualGraph:
    """Simple graph with integer vertex weights (self-intersection numbers).

    Instances are immutable; every surgery returns a new graph.
    """

    __slots__ = ("_weights", "_edges", "_labels", "_adj", "_ids")

    def __init__(
        self,
        vertices: Union[Mapping[str, int], Iterable[CurveVertex]] = (),
        edges: Iterable[Sequence[str]] = (),
    ) -> None:
        weights: Dict[str, int] = {}
        labels: Dict[str, str] = {}
        items = vertices.items() if isinstance(vertices, Mapping) else ((v.id, v) for v in vertices)
        for vid, w in items:
            if isinstance(w, CurveVertex):
                if w.label is not None:
                    labels[vid] = w.label
                w = w.weight
            if not isinstance(vid, str) or not vid:
                raise GraphError(f"vertex id must be a non-empty string, got {vid!r}")
            if isinstance(w, bool) or not isinstance(w, int):
                raise GraphError(f"weight of {vid} must be an integer, got {w!r}")
            if vid in weights:
                raise GraphError(f"duplicate vertex {vid}")
            weights[vid] = w
        edge_set = set()
        adj: Dict[str, set] = {v: set() for v in weights}
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise GraphError(f"self-loop at {u}")
            for x in (u, v):
                if x not in weights:
                    raise GraphError(f"edge {u}-{v} refers to unknown vertex {x}")
            key = frozenset((u, v))
            if key in edge_set:
                raise GraphError(f"repeated edge {u}-{v}")
            edge_set.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self._weights = weights
        self._edges = frozenset(edge_set)
        self._labels = labels
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self._ids = tuple(sort_ids(weights))

    # -- basic access -------------------------------------------------

    @property
    def ids(self) -> List[str]:
        return list(self._ids)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    @property
    def weights(self) -> Dict[str, int]:
        return dict(self._weights)

    def weight(self, vid: str) -> int:
        self._require(vid)
        return self._weights[vid]

    def vertex(self, vid: str) -> CurveVertex:
        self._require(vid)
        return CurveVertex(vid, self._weights[vid], self._labels.get(vid))

    def vertices(self) -> List[CurveVertex]:
        return [self.vertex(v) for v in self.ids]

    def neighbors(self, vid: str) -> List[str]:
        self._require(vid)
        return sort_ids(self._adj[vid])

    def degree(self, vid: str) -> int:
        self._require(vid)
        return len(self._adj[vid])

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._edges

    def sorted_edges(self) -> List[Tuple[str, str]]:
        pairs = [tuple(sort_ids(e)) for e in self._edges]
        return sorted(pairs, key=lambda p: (id_key(p[0]), id_key(p[1])))

    def __contains__(self, vid: object) -> bool:
        return vid in self._weights

    def __len__(self) -> int:
        return len(self._weights)

    def __iter__(self) -> Iterator[str]:
        return iter(self.ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDualGraph):
            return NotImplemented
        return self._weights == other._weights and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((frozenset(self._weights.items()), self._edges))

    def __repr__(self) -> str:
        vs = ", ".join(f"{v}:{self._weights[v]}" for v in self.ids)
        es = ", ".join(f"{u}-{v}" for u, v in self.sorted_edges())
        return f"WeightedDualGraph({{{vs}}}, [{es}])"

    def _require(self, vid: str) -> None:
        if vid not in self._weights:
            raise GraphError(f"unknown vertex {vid}")

    # -- derived graphs -----------------------------------------------

    def with_weights(self, changes: Mapping[str, int]) -> "WeightedDualGraph":
        weights = dict(self._weights)
        for v, w in changes.items():
            self._require(v)
            weights[v] = w
        return self._rebuild(weights, self._edges)

    def _rebuild(self, weights: Mapping[str, int], edges: Iterable[Sequence[str]]) -> "WeightedDualGraph":
        verts = [CurveVertex(v, w, self._labels.get(v)) for v, w in weights.items()]
        return WeightedDualGraph(verts, [tuple(e) for e in edges])

    def is_tree(self) -> bool:
        return len(self) > 0 and len(self._edges) == len(self) - 1 and len(connected_components(self)) == 1

    def is_path(self) -> bool:
        """True for a chain: a tree with every degree at most 2."""
        return self.is_tree() and all(len(n) <= 2 for n in self._adj.values())

    def branch_vertices(self) -> List[str]:
        return [v for v in self.ids if len(self._adj[v]) >= 3]


def intersection_matrix(g: WeightedDualGraph, ordering: Optional[Sequence[str]] = None) -> IntersectionMatrix:
    order = list(g.ids if ordering is None else ordering)
    if len(order) != len(set(order)):
        raise GraphError("ordering has duplicate ids")
    if set(order) != set(g.ids):
        missing = set(g.ids) ^ set(order)
        raise GraphError(f"ordering is not a permutation of the vertex ids: {sort_ids(missing)}")
    index = {v: i for i, v in enumerate(order)}
    rows = [[0] * len(order) for _ in order]
    for v, i in index.items():
        rows[i][i] = g._weights[v]
        for u in g._adj[v]:
            rows[i][index[u]] = 1
    return IntersectionMatrix(tuple(order), tuple(tuple(r) for r in rows))


def determinant_d(g: WeightedDualGraph) -> int:
    """det(-I(g)); the empty graph gives 1."""
    return linalg.bareiss_det(intersection_matrix(g).negated())


def is_negative_definite(g: WeightedDualGraph) -> bool:
    """Sylvester's criterion on -I(g), in integer arithmetic."""
    minors = linalg.leading_minors(intersection_matrix(g).negated())
    return all(x > 0 for x in minors) and len(minors) == len(g)


def connected_components(g: WeightedDualGraph) -> List[WeightedDualGraph]:
    seen: set = set()
    comps = []
    for start in g.ids:
        if start in seen:
            continue
        block = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g._adj[u]:
                if v not in block:
                    block.add(v)
                    stack.append(v)
        seen |= block
        comps.append(induced_subgraph(g, block))
    return comps


def induced_subgraph(g: WeightedDualGraph, ids: Iterable[str]) -> WeightedDualGraph:
    keep = set(ids)
    for v in keep:
        g._require(v)
    return g._rebuild({v: g._weights[v] for v in keep}, [e for e in g.edges if e <= keep])


def remove_vertices(g: WeightedDualGraph, ids: Iterable[str]) -> WeightedDualGraph:
    drop = set(ids)
    for v in drop:
        g._require(v)
    return induced_subgraph(g, set(g.ids) - drop)


def chain(weights: Sequence[int], prefix: str = "v") -> WeightedDualGraph:
    """Path graph with ids prefix1..prefixN."""
    ids = [f"{prefix}{i + 1}" for i in range(len(weights))]
    return WeightedDualGraph(dict(zip(ids, weights)), list(zip(ids, ids[1:])))


def canonical_form(g: WeightedDualGraph, root: Optional[str] = None) -> str:
    """Isomorphism-invariant string for a weighted forest.

    With ``root`` the tree is encoded rooted there (the marked vertex stays
    distinguished). Without it each component is rooted at its centre(s) and
    the lexicographically least encoding wins. Graphs with cycles are
    rejected; boundaries are always trees.
    """
    if len(g.edges) != len(g) - len(connected_components(g)):
        raise GraphError("canonical_form is only defined for forests")
    if root is not None:
        g._require(root)
        return "*" + _encode(g, root, None)
    codes = []
    for comp in connected_components(g):
        codes.append(min(_encode(comp, c, None) for c in _centres(comp)))
    return "+".join(sorted(codes))


def _encode(g: WeightedDualGraph, v: str, parent: Optional[str]) -> str:
    children = sorted(_encode(g, c, v) for c in g._adj[v] if c != parent)
    return f"({g._weights[v]}{''.join(children)})"


def _centres(g: WeightedDualGraph) -> List[str]:
    deg = {v: len(g._adj[v]) for v in g.ids}
    leaves = [v for v, d in deg.items() if d <= 1]
    remaining = len(deg)
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for u in leaves:
            for v in g._adj[u]:
                deg[v] -= 1
                if deg[v] == 1:
                    nxt.append(v)
            deg[u] = 0
        leaves = nxt
    return leaves
