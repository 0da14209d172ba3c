"""Pairwise compatibility graph toolkit.

Graphs realized by edge-weighted trees through a distance band, the
caterpillar construction for threshold tolerance graphs, exact geometric
intersection models of the non-PCG graph H, and an exhaustive
LP-feasibility recognizer for small graphs.
"""

from .graphs import (
    Graph,
    GraphError,
    are_isomorphic,
    automorphisms,
    complement,
    enumerate_graphs,
    graph_from_edges,
    graph_h,
)
from .trees import (
    PCGWitness,
    TreeError,
    WeightedTree,
    is_caterpillar,
    leaf_distance_matrix,
    mlpg_eval,
    normalize_tree,
    pcg_eval,
    weighted_tree,
)
from .threshold import (
    ThresholdError,
    TTInstance,
    as_tt_instance,
    integerize,
    threshold_realize,
    tt_instance,
    tt_realize,
    tt_witness,
)
from .geometry import (
    Arc,
    Box,
    Disk,
    GeometricModel,
    HSeg,
    IncompatibleShapesError,
    PAPER_MODEL_NAMES,
    Rect,
    ShapeError,
    SpecialParallelepiped,
    SppSegment,
    VSeg,
    geometric_model,
    intersects,
    model_graph,
    paper_model,
)
from .lp import (
    LinearProgram,
    LPError,
    LPOutcome,
    linear_program,
    solve,
    strict_feasibility,
)
from .recognizer import (
    Certificate,
    RecognitionResult,
    RecognizerError,
    Topology,
    enumerate_topologies,
    recognize_pcg,
    topology_count,
    topology_feasible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
