"""Blow-ups and blow-downs on dual graphs, and the reduction to a K-trivial boundary.

Vertex ids are never renamed: a curve keeps its id through every contraction,
so strict transforms are identified by id.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .boundary import BoundaryConfig, KValue, branched_components, classify_K
from .cycles import Cycle, canonical_pairing, pa_genus, pairing
from .errors import GraphError, InvariantViolation, PreconditionError
from .graph import WeightedDualGraph, is_negative_definite


def fresh_id(g: WeightedDualGraph, prefix: str = "E") -> str:
    """``prefix`` followed by one more than the largest index already in use."""
    pat = re.compile(re.escape(prefix) + r"(\d+)$")
    used = [int(m.group(1)) for v in g.ids if (m := pat.match(v))]
    return f"{prefix}{max(used, default=0) + 1}"


def blow_down(g: WeightedDualGraph, v: str) -> WeightedDualGraph:
    """Contract the (-1)-curve ``v``."""
    w = g.weight(v)
    if w != -1:
        raise PreconditionError(f"{v} has weight {w}, only (-1)-curves contract")
    nbrs = g.neighbors(v)
    if len(nbrs) > 2:
        raise PreconditionError(f"{v} meets {len(nbrs)} curves; contracting it gives a triple point")
    if len(nbrs) == 2 and g.has_edge(*nbrs):
        raise PreconditionError(f"neighbours of {v} meet each other; the image would not be normal crossing")
    weights = g.weights
    del weights[v]
    for u in nbrs:
        weights[u] += 1
    edges = [tuple(e) for e in g.edges if v not in e]
    if len(nbrs) == 2:
        edges.append(tuple(nbrs))
    return g._rebuild(weights, edges)


def blow_up_on_curve(g: WeightedDualGraph, v: str, new_id: Optional[str] = None) -> WeightedDualGraph:
    """Blow up a general point of ``v``."""
    w = g.weight(v)
    new_id = new_id or fresh_id(g)
    if new_id in g:
        raise GraphError(f"vertex {new_id} already exists")
    weights = g.weights
    weights[v] = w - 1
    weights[new_id] = -1
    return g._rebuild(weights, [tuple(e) for e in g.edges] + [(v, new_id)])


def blow_up_at_edge(g: WeightedDualGraph, u: str, v: str, new_id: Optional[str] = None) -> WeightedDualGraph:
    """Blow up the intersection point of ``u`` and ``v``."""
    if not g.has_edge(u, v):
        raise GraphError(f"no edge {u}-{v}")
    new_id = new_id or fresh_id(g)
    if new_id in g:
        raise GraphError(f"vertex {new_id} already exists")
    weights = g.weights
    weights[u] -= 1
    weights[v] -= 1
    weights[new_id] = -1
    edges = [tuple(e) for e in g.edges if e != frozenset((u, v))]
    edges += [(u, new_id), (new_id, v)]
    return g._rebuild(weights, edges)


# -- peeling -------------------------------------------------------------------


@dataclass(frozen=True)
class PeelStep:
    """One contraction of the marked curve.

    ``case`` is read off the connectivity of D before and after: "1" when D
    is connected, "2" when D is disconnected but D' is connected, "3" when
    both are disconnected.
    """

    contracted: str
    boundary: BoundaryConfig
    case: str
    definite: bool


def peel_step(b: BoundaryConfig) -> PeelStep:
    if b.c_weight != -1:
        raise PreconditionError(f"C must be a (-1)-curve, got (C)^2 = {b.c_weight}")
    if len(b.D) == 0:
        raise PreconditionError("D is empty")
    if not branched_components(b):
        raise PreconditionError("D has no branching component")
    image = blow_down(b.graph, b.c_id)
    candidates = [v for v in image.ids if image.weight(v) == -1]
    if not candidates:
        raise InvariantViolation(f"no (-1)-curve in the image of D after contracting {b.c_id}")
    if len(candidates) > 1:
        raise InvariantViolation(
            f"several (-1)-curves in the image of D after contracting {b.c_id}: {', '.join(candidates)}"
        )
    nb = BoundaryConfig(image, candidates[0])
    before = len(b.components())
    after = len(nb.components())
    case = "1" if before == 1 else ("2" if after == 1 else "3")
    return PeelStep(b.c_id, nb, case, is_negative_definite(nb.D))


# -- reduction -----------------------------------------------------------------

INTERMEDIATE = "indefinite-intermediate"


@dataclass(frozen=True)
class ReductionStep:
    contracted: str
    boundary: BoundaryConfig
    case: str
    definite: bool
    c_pairing: Optional[Fraction]


@dataclass(frozen=True)
class ReductionTrace:
    original: BoundaryConfig
    steps: Tuple[ReductionStep, ...] = field(default=())

    @property
    def final(self) -> BoundaryConfig:
        return self.steps[-1].boundary if self.steps else self.original

    @classmethod
    def identity(cls, b: BoundaryConfig) -> "ReductionTrace":
        return cls(b, ())

    def c_pairings(self) -> List[Fraction]:
        """(D#.C) at every classified stage, starting with the input."""
        first = classify_K(self.original).c_pairing
        return [first] + [s.c_pairing for s in self.steps if s.c_pairing is not None]

    def to_json(self) -> dict:
        from .textformat import emit_graph

        return {
            "steps": [
                {
                    "contracted": s.contracted,
                    "case": s.case,
                    "new_c": s.boundary.c_id,
                    "definite": s.definite,
                    "c_pairing": None if s.c_pairing is None else str(s.c_pairing),
                }
                for s in self.steps
            ],
            "final_c": self.final.c_id,
            "final_graph": emit_graph(self.final.graph, self.final.c_id),
        }


def check_monotone(before: Fraction, after: Fraction) -> None:
    """(D#.C) > 1 stays >= 1 and (D#.C) = 1 stays <= 1 across one contraction."""
    if before > 1 and after < 1:
        raise InvariantViolation(f"(D#.C) dropped from {before} to {after} < 1")
    if before == 1 and after > 1:
        raise InvariantViolation(f"(D#.C) rose from 1 to {after}")


def _composite_peel(b: BoundaryConfig) -> Tuple[List[ReductionStep], Optional[Fraction]]:
    """One contraction, or two when a case 2 contraction leaves D not negative definite.

    Returns the steps taken and (D#.C) at the end, or ``None`` when the end
    stage is not negative definite.
    """
    ps = peel_step(b)
    steps: List[ReductionStep] = []
    case = ps.case
    if ps.case == "2" and not ps.definite:
        steps.append(ReductionStep(ps.contracted, ps.boundary, INTERMEDIATE, ps.definite, None))
        if not branched_components(ps.boundary):
            raise InvariantViolation("no branching component left after the first half of a two-step contraction")
        ps = peel_step(ps.boundary)
    if not ps.definite:
        steps.append(ReductionStep(ps.contracted, ps.boundary, case, False, None))
        return steps, None
    cp = classify_K(ps.boundary).c_pairing
    steps.append(ReductionStep(ps.contracted, ps.boundary, case, True, cp))
    return steps, cp


def reduce_to_trivial(b: BoundaryConfig) -> ReductionTrace:
    """Contract marked curves until the canonical class becomes numerically trivial.

    Once (D#.C) = 1 is reached, contraction continues for as long as the
    result stays K-trivial; the final boundary is the last K-trivial one.
    """
    start = classify_K(b)
    if start.value is not KValue.AMPLE:
        raise PreconditionError(f"input must have ample canonical class, got {start.value.value}")
    if not branched_components(b):
        raise PreconditionError("D has no branching component")

    steps: List[ReductionStep] = []
    current = b
    last = start.c_pairing
    while last > 1:
        if not branched_components(current):
            raise InvariantViolation("reduction exhausted the graph before reaching a K-trivial boundary")
        taken, cp = _composite_peel(current)
        if cp is None:
            raise InvariantViolation(f"D is not negative definite after contracting {taken[-1].contracted}")
        check_monotone(last, cp)
        steps.extend(taken)
        current, last = taken[-1].boundary, cp

    while branched_components(current):
        try:
            taken, cp = _composite_peel(current)
        except InvariantViolation:
            break
        if cp is not None:
            check_monotone(last, cp)
        if cp != 1:
            break
        steps.extend(taken)
        current = taken[-1].boundary
    return ReductionTrace(b, tuple(steps))


# -- the cycle Z ---------------------------------------------------------------


def _branched_with(b: BoundaryConfig) -> WeightedDualGraph:
    comps = branched_components(b)
    if len(comps) != 1:
        raise InvariantViolation(f"expected exactly one branching component of D, found {len(comps)}")
    return comps[0]


def pulled_back_d_sharp(original: BoundaryConfig, trace: ReductionTrace) -> Tuple[Cycle, WeightedDualGraph]:
    """The integral part of the final D# on its branching component, read on the original D.

    Returns the cycle on the original D and the branching component E of the
    original D.
    """
    final = trace.final
    cls = classify_K(final)
    if cls.value is not KValue.TRIVIAL:
        raise PreconditionError(f"final boundary must be K-trivial, got {cls.value.value}")
    e_final = _branched_with(final)
    ds = cls.d_sharp.cycle
    z_tilde = {v: ds[v] for v in e_final.ids}
    if any(c.denominator != 1 for c in z_tilde.values()):
        raise InvariantViolation("D# is not integral on the branching component of a K-trivial boundary")
    e = _branched_with(original)
    missing = [v for v, c in z_tilde.items() if c and v not in e]
    if missing:
        raise InvariantViolation(f"support of the pulled-back cycle leaves E at {', '.join(missing)}")
    return Cycle(original.D, z_tilde), e


def build_Z(original: BoundaryConfig, trace: ReductionTrace) -> Cycle:
    """Integral cycle on D of arithmetic genus one, supported on the branching component."""
    pulled, e = pulled_back_d_sharp(original, trace)
    rest = [v for v in e.ids if pulled[v] == 0]
    z = pulled + Cycle.reduced(original.D, rest)
    if sorted(z.support) != sorted(e.ids):
        raise InvariantViolation("support of Z differs from the branching component")
    pa = pa_genus(z)
    if pa != 1:
        raise InvariantViolation(f"p_a(Z) = {pa}, expected 1")
    return z


def z_bookkeeping(original: BoundaryConfig, trace: ReductionTrace) -> Optional[Tuple[Fraction, Fraction]]:
    """(P.Y) and (Y.(Y+K)) where P is the pulled-back cycle and Y = E - Supp(P).

    These are 1 and -2 whenever Y is nonempty; ``None`` when Y is empty.
    """
    pulled, e = pulled_back_d_sharp(original, trace)
    rest = [v for v in e.ids if pulled[v] == 0]
    if not rest:
        return None
    y = Cycle.reduced(original.D, rest)
    return pairing(pulled, y), pairing(y, y) + canonical_pairing(y)
