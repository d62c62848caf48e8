"""Weighted dual graphs of curve configurations on surfaces.

Determinants and negative definiteness, the anti-canonical cycle D#, Laufer's
rationality test, boundaries of compactifications of the affine plane and the
contractions between them.
"""

__version__ = "0.1.0"

from .birational import (
    ReductionTrace,
    blow_down,
    blow_up_at_edge,
    blow_up_on_curve,
    build_Z,
    peel_step,
    reduce_to_trivial,
)
from .boundary import (
    BoundaryConfig,
    CombDecomposition,
    CombMismatch,
    KClass,
    KValue,
    classify_K,
    comb_decompose,
    coprime_check,
    split_determinants,
    validate_boundary,
)
from .construct import EnumerationConfig, HirzebruchSeed, Move, MoveSequence, apply_sequence, enumerate_boundaries
from .corpus import CORPUS, verify_paper
from .cycles import Cycle, canonical_pairing, compute_d_sharp, pa_genus, pairing, parse_cycle
from .errors import GraphError, InvariantViolation, ParseError, PreconditionError
from .graph import (
    CurveVertex,
    WeightedDualGraph,
    canonical_form,
    connected_components,
    determinant_d,
    intersection_matrix,
    is_negative_definite,
)
from .singularity import fundamental_cycle, is_rational, max_pa_bounded
from .textformat import emit_graph, parse_graph, read_graph

__all__ = [name for name in dir() if not name.startswith("_")]
