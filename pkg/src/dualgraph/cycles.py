"""Cycles (divisors) supported on a dual graph, and the anti-canonical cycle."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Union

from . import linalg
from .errors import GraphError, PreconditionError
from .graph import WeightedDualGraph, intersection_matrix, is_negative_definite, sort_ids

Number = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class Cycle:
    """Rational combination of the vertices of ``graph``; absent ids mean 0."""

    graph: WeightedDualGraph
    coeffs: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[str, Fraction] = {}
        for vid, c in self.coeffs.items():
            if vid not in self.graph:
                raise GraphError(f"cycle coefficient on unknown vertex {vid}")
            c = Fraction(c)
            if c != 0:
                clean[vid] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def reduced(cls, g: WeightedDualGraph, ids: Optional[Iterable[str]] = None) -> "Cycle":
        return cls(g, {v: Fraction(1) for v in (g.ids if ids is None else ids)})

    def __getitem__(self, vid: str) -> Fraction:
        if vid not in self.graph:
            raise GraphError(f"unknown vertex {vid}")
        return self.coeffs.get(vid, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.graph == other.graph and self.coeffs == other.coeffs

    def __add__(self, other: "Cycle") -> "Cycle":
        _same_graph(self, other)
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, Fraction(0)) + c
        return Cycle(self.graph, out)

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + other.scaled(-1)

    def scaled(self, k: Number) -> "Cycle":
        return Cycle(self.graph, {v: c * k for v, c in self.coeffs.items()})

    @property
    def support(self) -> list:
        return sort_ids(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def as_int_dict(self) -> Dict[str, int]:
        if not self.is_integral():
            raise PreconditionError("cycle has non-integral coefficients")
        return {v: int(self[v]) for v in self.graph.ids}

    def literal(self) -> str:
        """Cycle literal ``id=coef,...`` over the full vertex set."""
        return ",".join(f"{v}={self[v]}" for v in self.graph.ids)


def _same_graph(a: Cycle, b: Cycle) -> None:
    if a.graph is not b.graph and a.graph != b.graph:
        raise GraphError("cycles live on different graphs")


def parse_cycle(g: WeightedDualGraph, text: str) -> Cycle:
    """Parse ``D1=2,D2=5/3`` into a cycle on ``g``."""
    coeffs: Dict[str, Fraction] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise GraphError(f"bad cycle term {item!r}; expected id=value")
        vid, _, val = item.partition("=")
        vid = vid.strip()
        if vid in coeffs:
            raise GraphError(f"vertex {vid} given twice in cycle literal")
        try:
            coeffs[vid] = Fraction(val.strip())
        except ValueError:
            raise GraphError(f"bad coefficient {val!r} for {vid}") from None
    return Cycle(g, coeffs)


def canonical_degree(weight: int) -> int:
    """(D.K) for a smooth rational curve D with D^2 = weight (adjunction)."""
    return -2 - weight


def pairing(z1: Cycle, z2: Cycle) -> Fraction:
    _same_graph(z1, z2)
    g = z1.graph
    total = Fraction(0)
    for u, a in z1.coeffs.items():
        b = z2.coeffs.get(u)
        if b is not None:
            total += a * b * g.weight(u)
        for v in g.neighbors(u):
            b = z2.coeffs.get(v)
            if b is not None:
                total += a * b
    return total


def canonical_pairing(z: Cycle) -> Fraction:
    """(Z.K) computed from adjunction on each component."""
    return sum((c * canonical_degree(z.graph.weight(v)) for v, c in z.coeffs.items()), Fraction(0))


def pa_genus(z: Cycle) -> Fraction:
    """Arithmetic genus 1 + (Z.Z + Z.K)/2 of an integral cycle."""
    if not z.is_integral():
        raise PreconditionError("arithmetic genus is only defined here for integral cycles")
    if not z.coeffs:
        raise PreconditionError("arithmetic genus of the zero cycle is not defined")
    return (pairing(z, z) + canonical_pairing(z)) / 2 + 1


@dataclass(frozen=True)
class DSharpResult:
    cycle: Cycle
    c_pairing: Optional[Fraction]
    integral: bool

    def residuals(self) -> Dict[str, Fraction]:
        """(D_i . K + D#) for every vertex; all zero for a correct solve."""
        g = self.cycle.graph
        return {v: pairing(Cycle.reduced(g, [v]), self.cycle) + canonical_degree(g.weight(v)) for v in g.ids}


def compute_d_sharp(g: WeightedDualGraph, c_neighbors: Optional[Iterable[str]] = None) -> DSharpResult:
    """Unique rational cycle with (D_i . D#) = -(D_i . K) for every vertex of ``g``.

    ``c_neighbors`` lists the vertices of ``g`` met by a marked curve outside
    ``g``; the pairing of that curve with D# is then reported too.
    """
    if not is_negative_definite(g):
        raise PreconditionError("intersection matrix is not negative definite")
    order = g.ids
    mat = intersection_matrix(g, order).entries
    rhs = [-canonical_degree(g.weight(v)) for v in order]
    alpha = linalg.solve(mat, rhs)
    cyc = Cycle(g, dict(zip(order, alpha)))
    c_val = None
    if c_neighbors is not None:
        c_val = sum((cyc[v] for v in c_neighbors), Fraction(0))
    return DSharpResult(cyc, c_val, cyc.is_integral())


def k_gamma_mumford(result: DSharpResult) -> Fraction:
    """(K_X . Gamma) = -1 + (D# . C) for a (-1)-curve C."""
    if result.c_pairing is None:
        raise PreconditionError("no marked curve C was supplied to the D# computation")
    return result.c_pairing - 1
