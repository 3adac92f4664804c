"""Exact combinatorics of ultragraphs and their Cuntz-Krieger relations.

An ultragraph is a directed graph whose edges point at nonempty sets of
vertices.  This package builds and validates ultragraphs, decides
membership in the lattice of admissible vertex sets, rewrites symbolic
expressions in the generators s_e and p_A, constructs finite
approximation graphs, desingularizes sinks and infinite emitters, and
realizes families by exact rational matrices.  Everything is exact; no
floating point is used anywhere.
"""

from .caps import Caps
from .errors import (
    FTooLarge,
    HasLoop,
    InfiniteEdgeSet,
    MissingGenerator,
    NoSinksViolated,
    NonUnitalUnit,
    NotALoop,
    NotASink,
    NotInLattice,
    NotInfiniteEmitter,
    ParseError,
    TooLarge,
    TooManyRanges,
    TruncationEmpty,
    UgkitError,
    Unbounded,
    UniverseMismatch,
    UnknownEdge,
    ValidationError,
    ZeroRow,
)
from .core import (
    ConditionL,
    DirectedGraph,
    EdgeId,
    Family,
    Matrix01,
    TailSpec,
    Ultragraph,
    Universe,
    VertexId,
    VertexSet,
    build,
    condition_l,
    condition_l_bruteforce,
    condition_l_graph,
    core_vertex,
    edge_matrix,
    enumerate_paths,
    family_edge,
    find_loop,
    is_path,
    path_range,
    path_source,
    graph_from_matrix,
    named_edge,
    ray_vertex,
    singular_vertices,
    tail_edge,
    ultragraph_from_graph,
    ultragraph_from_matrix,
    validate,
)
from .setalg import (
    LatticeWitness,
    in_lattice,
    is_unital,
    lattice_closure_bruteforce,
    lattice_member,
    normalize_witness,
    set_complement,
    set_difference,
    set_intersect,
    set_union,
)
from .symalg import (
    AlgebraElement,
    ELReport,
    SpanningTerm,
    Trilean,
    el_check,
    el_vertex_set,
    equals,
    normalize,
    support_AXY,
    verify_ck_assignment,
)
from .approx import (
    ApproxGraph,
    LoopLift,
    approx_family,
    approximation_graph,
    e_set,
    lift_loop,
    v_set,
)
from .desing import (
    DesingMap,
    TailMap,
    add_tail_infinite_emitter,
    add_tail_sink,
    alpha_path,
    desingularize,
    extend_family,
    f0_compose,
    f0_decompose,
    restrict_family,
    truncate,
)
from .matrep import (
    CKReport,
    CycMat,
    CycScalar,
    MatrixCKFamily,
    RatMat,
    ck_check,
    evaluate,
    gauge_check,
    gauge_unitary,
    path_length_of_slot,
    path_space_rep,
)
from .docio import (
    format_document,
    format_dot,
    format_matrix,
    parse_document,
    parse_graph,
    printable,
    parse_matrix,
)
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
