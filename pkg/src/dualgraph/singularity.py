"""Rationality of the point obtained by contracting a negative definite graph."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cycles import Cycle, canonical_degree, pa_genus
from .errors import PreconditionError
from .graph import WeightedDualGraph, connected_components, is_negative_definite

#: brute-force enumeration refuses boxes with more than 2**BRUTE_FORCE_BITS points
BRUTE_FORCE_BITS = 22


class SingularityKind(str, Enum):
    CHAIN = "chain"
    BRANCHED = "branched"


@dataclass(frozen=True)
class SingularityReport:
    fundamental_cycle: Cycle
    pa_fundamental: int
    rational: bool
    kind: SingularityKind
    iterations: int


def _check_contractible(g: WeightedDualGraph) -> None:
    if len(g) == 0:
        raise PreconditionError("graph is empty")
    if len(connected_components(g)) != 1:
        raise PreconditionError("graph is not connected")
    if not is_negative_definite(g):
        raise PreconditionError("intersection matrix is not negative definite")


def laufer_sequence(g: WeightedDualGraph, order: Optional[Sequence[str]] = None) -> Tuple[Cycle, int]:
    """Fundamental cycle and the number of single-curve additions it took.

    Starts from the reduced cycle and adds D_i while (Z.D_i) > 0, scanning
    vertices in ``order`` (default: id order) and always taking the first hit.
    """
    _check_contractible(g)
    order = list(g.ids if order is None else order)
    if sorted(order) != sorted(g.ids):
        raise PreconditionError("order must be a permutation of the vertex ids")
    z: Dict[str, int] = {v: 1 for v in order}
    nbrs = {v: g.neighbors(v) for v in order}
    weight = {v: g.weight(v) for v in order}
    # bounded by negative definiteness; the cap only guards against bad input
    cap = 10_000 * len(order) + 10_000
    steps = 0
    while True:
        for v in order:
            if weight[v] * z[v] + sum(z[u] for u in nbrs[v]) > 0:
                z[v] += 1
                steps += 1
                break
        else:
            return Cycle(g, z), steps
        if steps > cap:  # pragma: no cover
            raise PreconditionError("Laufer sequence did not terminate")


def fundamental_cycle(g: WeightedDualGraph) -> Cycle:
    return laufer_sequence(g)[0]


def is_rational(g: WeightedDualGraph) -> SingularityReport:
    _check_contractible(g)
    bad = [v for v in g.ids if g.weight(v) > -2]
    if bad:
        raise PreconditionError(f"not a minimal resolution graph: weight > -2 at {', '.join(bad)}")
    z, steps = laufer_sequence(g)
    pa = pa_genus(z)
    kind = SingularityKind.CHAIN if g.is_path() else SingularityKind.BRANCHED
    return SingularityReport(z, int(pa), pa == 0, kind, steps)


# -- bounded maximisation of p_a ---------------------------------------------


def _twice_pa_minus_two(g: WeightedDualGraph, z: Dict[str, int]) -> int:
    """Z.Z + Z.K as an integer."""
    total = 0
    for v, x in z.items():
        w = g.weight(v)
        total += w * x * x + canonical_degree(w) * x
    for e in g.edges:
        u, v = tuple(e)
        total += 2 * z[u] * z[v]
    return total


def _tree_max(g: WeightedDualGraph, domains: Dict[str, List[int]]) -> int:
    """max over the box of Z.Z + Z.K, by dynamic programming on the tree."""
    root = g.ids[0]
    parent: Dict[str, Optional[str]] = {root: None}
    order = [root]
    for v in order:
        for u in g.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
    best: Dict[str, Dict[int, int]] = {}
    for v in reversed(order):
        w = g.weight(v)
        k = canonical_degree(w)
        children = [u for u in g.neighbors(v) if parent.get(u) == v]
        table = {}
        for x in domains[v]:
            val = w * x * x + k * x
            for c in children:
                val += max(2 * x * y + s for y, s in best[c].items())
            table[x] = val
        best[v] = table
    return max(best[root].values())


def max_pa_bounded(g: WeightedDualGraph, bound: int, method: str = "auto") -> Tuple[int, Cycle]:
    """Largest p_a(Z) over integral Z with 1 <= Z_i <= bound on every vertex.

    Returns the maximum and the lexicographically least maximiser (in id
    order). Trees use exact dynamic programming; other graphs enumerate the
    whole box, which is refused past ``2**BRUTE_FORCE_BITS`` points.
    """
    if len(g) == 0:
        raise PreconditionError("graph is empty")
    if len(connected_components(g)) != 1:
        raise PreconditionError("graph is not connected")
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
        raise PreconditionError("bound must be a positive integer")
    if method not in ("auto", "dp", "brute"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "dp" if g.is_tree() else "brute"
    if method == "dp" and not g.is_tree():
        raise PreconditionError("dynamic programming needs a tree")

    ids = g.ids
    if method == "brute":
        if len(ids) * math.log2(bound) > BRUTE_FORCE_BITS:
            raise PreconditionError(
                f"enumeration of {bound}^{len(ids)} cycles exceeds the configured limit"
            )
        best_val, best_z = None, None
        for combo in itertools.product(range(1, bound + 1), repeat=len(ids)):
            z = dict(zip(ids, combo))
            val = _twice_pa_minus_two(g, z)
            if best_val is None or val > best_val:
                best_val, best_z = val, z
        assert best_z is not None and best_val is not None
        return best_val // 2 + 1, Cycle(g, best_z)

    domains = {v: list(range(1, bound + 1)) for v in ids}
    target = _tree_max(g, domains)
    for v in ids:
        for x in range(1, bound + 1):
            domains[v] = [x]
            if _tree_max(g, domains) == target:
                break
    witness = Cycle(g, {v: domains[v][0] for v in ids})
    assert pa_genus(witness) == Fraction(target, 2) + 1
    return target // 2 + 1, witness
