"""Boundaries built by blowing up a Hirzebruch surface, and a bounded search over them.

A seed is the pair M (weight -m) and F (weight 0). The first blow-up is at a
point of F off M; every later one is infinitely near the previous, so it
targets the newest exceptional curve or one of its two intersection points.
Exceptional curves are named E1, E2, ... in order of creation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .birational import blow_up_at_edge, blow_up_on_curve
from .boundary import BoundaryConfig, KClass, classify_K
from .errors import PreconditionError
from .graph import WeightedDualGraph, canonical_form, connected_components, is_negative_definite
from .singularity import is_rational

DEFAULT_MAX_DEPTH = 10
DEFAULT_MAX_BOUNDARIES = 10**6


@dataclass(frozen=True)
class HirzebruchSeed:
    m: int

    def __post_init__(self) -> None:
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 2:
            raise PreconditionError(f"Hirzebruch seed needs an integer m >= 2, got {self.m!r}")

    @property
    def graph(self) -> WeightedDualGraph:
        return WeightedDualGraph({"M": -self.m, "F": 0}, [("M", "F")])


@dataclass(frozen=True)
class Move:
    """Blow up a general point of ``target[0]`` or the crossing ``target[0]``-``target[1]``."""

    kind: str
    target: Tuple[str, ...]

    def __post_init__(self) -> None:
        want = {"on_curve": 1, "at_edge": 2}.get(self.kind)
        if want is None:
            raise PreconditionError(f"unknown move kind {self.kind!r}")
        if len(self.target) != want:
            raise PreconditionError(f"{self.kind} move needs {want} id(s), got {self.target}")

    @classmethod
    def on(cls, v: str) -> "Move":
        return cls("on_curve", (v,))

    @classmethod
    def edge(cls, u: str, v: str) -> "Move":
        return cls("at_edge", (u, v))

    def to_json(self) -> dict:
        return {self.kind: list(self.target)}

    def __str__(self) -> str:
        return f"{self.kind}({','.join(self.target)})"


@dataclass(frozen=True)
class MoveSequence:
    moves: Tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def then(self, *more: Move) -> "MoveSequence":
        return MoveSequence(self.moves + tuple(more))


def exceptional_id(k: int) -> str:
    return f"E{k}"


def apply_move(g: WeightedDualGraph, move: Move, step: int) -> WeightedDualGraph:
    """Apply the ``step``-th move (1-based), creating E<step>."""
    new = exceptional_id(step)
    if step == 1:
        if move != Move.on("F"):
            raise PreconditionError("the first blow-up must be at a general point of F")
    else:
        latest = exceptional_id(step - 1)
        if latest not in move.target:
            raise PreconditionError(f"move {step} ({move}) does not touch the newest curve {latest}")
    if move.kind == "on_curve":
        return blow_up_on_curve(g, move.target[0], new)
    u, v = move.target
    if not g.has_edge(u, v):
        raise PreconditionError(f"move {step}: no crossing {u}-{v}")
    return blow_up_at_edge(g, u, v, new)


def apply_sequence(seed: HirzebruchSeed, moves: MoveSequence) -> BoundaryConfig:
    if len(moves) == 0:
        raise PreconditionError("empty move sequence leaves no exceptional curve to mark")
    g = seed.graph
    for step, move in enumerate(moves, start=1):
        g = apply_move(g, move, step)
    return BoundaryConfig(g, exceptional_id(len(moves)))


def next_moves(g: WeightedDualGraph, step: int) -> List[Move]:
    """Every admissible move number ``step`` on the graph built so far."""
    if step == 1:
        return [Move.on("F")]
    latest = exceptional_id(step - 1)
    return [Move.on(latest)] + [Move.edge(latest, u) for u in g.neighbors(latest)]


# -- recorded sequences ------------------------------------------------------------


def long_arm_sequence(m: int) -> Tuple[HirzebruchSeed, MoveSequence]:
    """K-trivial boundary over F_m whose C ends a chain of 2m+1 (-2)-curves."""
    if m < 3:
        raise PreconditionError("the long-arm family needs m >= 3")
    moves = [Move.on("F"), Move.edge("F", "E1")]
    for k in range(2, 2 * m + 4):
        moves.append(Move.on(exceptional_id(k)))
    return HirzebruchSeed(m), MoveSequence(tuple(moves))


def two_point_sequence(m: int) -> Tuple[HirzebruchSeed, MoveSequence]:
    """K-trivial boundary over F_2 whose C sits between a (-m)-curve and m-2 (-2)-curves."""
    if m < 3:
        raise PreconditionError("the two-point family needs m >= 3")
    moves = [Move.on("F"), Move.edge("F", "E1")]
    for k in range(2, 8):
        moves.append(Move.on(exceptional_id(k)))
    for k in range(8, m + 6):
        moves.append(Move.edge("E7", exceptional_id(k)))
    return HirzebruchSeed(2), MoveSequence(tuple(moves))


def ample_long_arm_sequence() -> Tuple[HirzebruchSeed, MoveSequence]:
    """K-ample boundary over F_3 that reduces to the long-arm boundary at m = 3."""
    seed, base = long_arm_sequence(3)
    return seed, base.then(
        Move.edge("E9", "E10"),
        Move.edge("E9", "E11"),
        Move.on("E12"),
        Move.on("E13"),
        Move.on("E14"),
    )


def ample_two_point_sequence() -> Tuple[HirzebruchSeed, MoveSequence]:
    """K-ample boundary over F_2 that reduces to the two-point boundary at m = 3."""
    seed, base = two_point_sequence(3)
    return seed, base.then(Move.edge("E7", "E9"), Move.edge("E10", "E9"))


# -- enumeration -----------------------------------------------------------------

FILTERS = ("negdef", "minres", "trivial", "ample", "anti_ample", "branched")


@dataclass(frozen=True)
class EnumerationConfig:
    m_values: Tuple[int, ...] = (2, 3, 4)
    depth: int = 8
    filters: Tuple[str, ...] = ("negdef", "minres")
    classify: bool = True
    max_depth: int = DEFAULT_MAX_DEPTH
    max_boundaries: int = DEFAULT_MAX_BOUNDARIES

    def __post_init__(self) -> None:
        unknown = [f for f in self.filters if f not in FILTERS]
        if unknown:
            raise PreconditionError(f"unknown filter(s): {', '.join(unknown)}")
        if self.depth < 1:
            raise PreconditionError("depth must be at least 1")
        if self.depth > self.max_depth:
            raise PreconditionError(f"depth {self.depth} exceeds the guard of {self.max_depth}")
        for m in self.m_values:
            HirzebruchSeed(m)


@dataclass(frozen=True)
class ComponentSummary:
    size: int
    branched: bool
    rational: Optional[bool]


@dataclass(frozen=True)
class EnumeratedBoundary:
    boundary: BoundaryConfig
    canonical: str
    m: int
    moves: MoveSequence
    kclass: Optional[KClass]
    components: Tuple[ComponentSummary, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "canonical": self.canonical,
            "m": self.m,
            "depth": len(self.moves),
            "moves": [mv.to_json() for mv in self.moves],
            "k_class": None if self.kclass is None else self.kclass.value.value,
            "c_pairing": None if self.kclass is None else str(self.kclass.c_pairing),
            "components": [
                {"size": c.size, "branched": c.branched, "rational": c.rational} for c in self.components
            ],
        }


def summarize_components(b: BoundaryConfig) -> Tuple[ComponentSummary, ...]:
    out = []
    for comp in connected_components(b.D):
        rational: Optional[bool] = None
        if is_negative_definite(comp) and all(w <= -2 for w in comp.weights.values()):
            rational = is_rational(comp).rational
        out.append(ComponentSummary(len(comp), bool(comp.branch_vertices()), rational))
    return tuple(out)


def _passes(b: BoundaryConfig, filters: Sequence[str], kclass: Optional[KClass]) -> bool:
    D = b.D
    if "negdef" in filters and not is_negative_definite(D):
        return False
    if "minres" in filters and any(w > -2 for w in D.weights.values()):
        return False
    if "branched" in filters and not D.branch_vertices():
        return False
    wanted = [f for f in filters if f in ("trivial", "ample", "anti_ample")]
    if wanted and (kclass is None or kclass.value.value not in wanted):
        return False
    return True


def enumerate_boundaries(config: EnumerationConfig) -> List[EnumeratedBoundary]:
    """Every boundary reachable within ``config.depth`` moves, one per isomorphism class.

    States are deduplicated by the canonical form of the graph rooted at the
    newest curve, since that is all the continuation depends on. The result
    is sorted by canonical form; each class keeps the smallest seed m and the
    shortest sequence that first reached it.
    """
    found: Dict[str, Tuple[int, BoundaryConfig, MoveSequence]] = {}
    for m in sorted(set(config.m_values)):
        frontier = [(HirzebruchSeed(m).graph, MoveSequence())]
        for step in range(1, config.depth + 1):
            nxt = []
            for g, seq in frontier:
                for mv in next_moves(g, step):
                    ng = apply_move(g, mv, step)
                    key = canonical_form(ng, root=exceptional_id(step))
                    if key in found:
                        continue
                    nseq = seq.then(mv)
                    found[key] = (m, BoundaryConfig(ng, exceptional_id(step)), nseq)
                    if len(found) > config.max_boundaries:
                        raise PreconditionError(
                            f"enumeration passed the guard of {config.max_boundaries} boundaries"
                        )
                    nxt.append((ng, nseq))
            frontier = nxt

    out = []
    for key in sorted(found):
        m, b, seq = found[key]
        if "minres" in config.filters and any(w > -2 for w in b.D.weights.values()):
            continue
        kclass = None
        negdef = is_negative_definite(b.D)
        if "negdef" in config.filters and not negdef:
            continue
        if (config.classify or any(f in config.filters for f in ("trivial", "ample", "anti_ample"))) and negdef:
            kclass = classify_K(b)
        if not _passes(b, config.filters, kclass):
            continue
        comps = summarize_components(b) if config.classify else ()
        out.append(EnumeratedBoundary(b, key, m, seq, kclass if config.classify else None, comps))
    return out
