"""Graceful labellings of rooted symmetric trees.

Construct graceful labellings in closed form, move the 0 label onto
chosen vertices, decide 0-rotatability with an exhaustive search
oracle, and sweep whole tree families.
"""

from .construct import (
    ALL_METHODS,
    METHOD_COMPLEMENT,
    METHOD_LEMMA1,
    METHOD_SEARCH,
    METHOD_STAR,
    METHOD_THEOREM1,
    METHOD_THEOREM2_EVEN,
    METHOD_THEOREM2_ODD,
    ConstructionTrace,
    ZeroAtRequest,
    broom_caterpillar_label,
    compose_theorem2,
    lemma1_label,
    lemma1_product,
    replay_trace,
    search_trace,
    theorem1_label,
    zero_at,
)
from .labelling import (
    Labelling,
    TranspositionProduct,
    apply_permutation,
    complement,
    edge_labels,
    is_graceful,
    labelling_from_json,
    labelling_to_json,
    reflect,
    relabel_vertices,
    shift,
)
from .model import (
    BroomDecomposition,
    DaughterDegreeSequence,
    GeneralTree,
    OrbitPartition,
    RootedSymmetricTree,
    StructureFlags,
    UnsupportedConstruction,
    VertexAddress,
    automorphism_mapping,
    build,
    classify,
    decompose,
    level_numbers,
    path_sequence,
    rooted_code,
    rooted_sequence_at,
    to_dot,
    to_general,
    tree_from_dict,
    tree_from_json,
    tree_to_dict,
    tree_to_json,
    vertex_orbits,
)
from .search import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIME_BUDGET,
    STATUS_EXHAUSTED,
    STATUS_FOUND,
    STATUS_TIMEOUT,
    VERDICT_NO,
    VERDICT_TIMEOUT,
    VERDICT_YES,
    OrbitVerdict,
    RotatabilityReport,
    SearchConstraints,
    SearchOutcome,
    count_graceful,
    count_graceful_naive,
    find_graceful,
    is_zero_rotatable,
)
from .sweep import (
    FAMILIES,
    FAMILY_BANANA,
    FAMILY_Q3,
    FAMILY_RST_ALL,
    FAMILY_SPIDER,
    ReportRow,
    SweepSpec,
    enumerate_family,
    evaluate_sequence,
    rotatability_to_csv,
    run_sweep,
    sequence_label,
    sweep_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS",
    "BroomDecomposition",
    "ConstructionTrace",
    "DEFAULT_NODE_BUDGET",
    "DEFAULT_TIME_BUDGET",
    "DaughterDegreeSequence",
    "FAMILIES",
    "FAMILY_BANANA",
    "FAMILY_Q3",
    "FAMILY_RST_ALL",
    "FAMILY_SPIDER",
    "GeneralTree",
    "Labelling",
    "METHOD_COMPLEMENT",
    "METHOD_LEMMA1",
    "METHOD_SEARCH",
    "METHOD_STAR",
    "METHOD_THEOREM1",
    "METHOD_THEOREM2_EVEN",
    "METHOD_THEOREM2_ODD",
    "OrbitPartition",
    "OrbitVerdict",
    "ReportRow",
    "RootedSymmetricTree",
    "RotatabilityReport",
    "STATUS_EXHAUSTED",
    "STATUS_FOUND",
    "STATUS_TIMEOUT",
    "SearchConstraints",
    "SearchOutcome",
    "StructureFlags",
    "SweepSpec",
    "TranspositionProduct",
    "UnsupportedConstruction",
    "VERDICT_NO",
    "VERDICT_TIMEOUT",
    "VERDICT_YES",
    "VertexAddress",
    "ZeroAtRequest",
    "apply_permutation",
    "automorphism_mapping",
    "broom_caterpillar_label",
    "build",
    "classify",
    "complement",
    "compose_theorem2",
    "count_graceful",
    "count_graceful_naive",
    "decompose",
    "edge_labels",
    "enumerate_family",
    "evaluate_sequence",
    "find_graceful",
    "is_graceful",
    "is_zero_rotatable",
    "labelling_from_json",
    "labelling_to_json",
    "lemma1_label",
    "lemma1_product",
    "level_numbers",
    "path_sequence",
    "reflect",
    "relabel_vertices",
    "replay_trace",
    "rooted_code",
    "rooted_sequence_at",
    "rotatability_to_csv",
    "run_sweep",
    "search_trace",
    "sequence_label",
    "shift",
    "sweep_to_csv",
    "theorem1_label",
    "to_dot",
    "to_general",
    "tree_from_dict",
    "tree_from_json",
    "tree_to_dict",
    "tree_to_json",
    "vertex_orbits",
    "zero_at",
]
