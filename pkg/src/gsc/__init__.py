"""Graphs with 2n-3 edges and no stable cutset: construction, recognition, verification."""

from .cutsets import (
    ClaimAudit,
    MatchingCutCertificate,
    Separation,
    StableCutsetCertificate,
    audit_claims,
    find_stable_cutset,
    find_stable_cutset_avoiding,
    has_3edge_matching_cut,
    has_clique_cutset,
    has_k4_minus,
    has_p3_cutset,
    is_3_connected,
)
from .graph import (
    Graph,
    common_neighbors,
    components,
    from_graph6,
    identify_set,
    identify_vertices,
    to_graph6,
    triangles,
)
from .recognize import RecognitionResult, is_prism, recognize, recognize_via_theorem
from .sequence import (
    GeneratingSequence,
    Piece,
    PieceKind,
    build,
    extend_stable_set,
    normalize_sequence,
    random_gsc,
    reroot,
    validate,
)
from .verify import VerificationReport, verify_corollary3, verify_theorem1, verify_theorem5

__version__ = "0.1.0"
