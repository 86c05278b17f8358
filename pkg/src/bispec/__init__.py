"""Spectral and closure tools for Hamiltonicity of small bipartite graphs.

Graphs are stored as bit rows over the X side; see :mod:`bispec.graph`.
"""

from .errors import ConvergenceError, GraphError, ParameterError, SizeLimitError
from .families import (
    ClassWitness,
    FamilySpec,
    build,
    class_members,
    expected_edge_count,
    family,
    member_of_class,
)
from .graph import (
    X,
    Y,
    BipartiteGraph,
    VertexId,
    add_universal_vertex,
    canonical_form,
    canonical_graph,
    complete,
    degree,
    disjoint_union,
    edge_count,
    empty,
    is_labeled_subgraph,
    is_subgraph_upto_iso,
    join,
    min_degree,
    new_graph,
    parse_graph,
    quasi_complement,
)
from .hamiltonian import (
    b_closure,
    check_cycle,
    check_path,
    contains_biclique,
    hamilton_cycle,
    hamilton_path,
    is_hamiltonian,
    is_traceable,
    max_biclique,
)
from .search import (
    EnumFilter,
    VerificationReport,
    enum_all,
    enum_dense,
    extremal_audit,
    random_graph,
    verify,
)
from .spectral import (
    BoundCheck,
    all_bounds,
    check_nosal,
    check_q_lower,
    check_q_upper,
    check_rho_lower,
    lemma35_table,
    lemma36_chain,
    q_radius,
    rho,
    rho_q1_closed_form,
    spectral_report,
)
from .theorems import THEOREMS, get_theorem

__version__ = "0.1.0"
