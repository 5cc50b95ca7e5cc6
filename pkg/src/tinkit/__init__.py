"""Certifying tree decompositions with bounded bag independence.

The package turns structural guarantees into checkable artifacts: every
decomposer either returns a tree decomposition whose per-bag independence
is re-verified against the advertised bound, or a small induced-subgraph
certificate that explains why the input sits outside the class.
"""

from .errors import (
    BudgetExceeded,
    DecompositionError,
    FormatError,
    GraphError,
    InternalError,
)
from .budget import SearchBudget
from .graph import (
    Graph,
    make_graph,
    empty_graph,
    path_graph,
    cycle_graph,
    complete_graph,
    complete_bipartite,
    complement,
    disjoint_union,
    join,
    induced_subgraph,
    line_graph,
    gen_spqr,
    gen_tpqr,
    gen_wall,
    gen_Gn,
    GnWitness,
    MinorModel,
    verify_induced_minor_model,
    canonical_form,
    loads_gr,
    dumps_gr,
    read_gr,
    write_gr,
)
from .tdecomp import (
    TreeDecomposition,
    PathDecomposition,
    width,
    validate,
    independence_number,
    loads_td,
    dumps_td,
    read_td,
    write_td,
)
from .patterns import (
    Certificate,
    pattern_graph,
    find_induced_embedding,
    find_induced_star,
    find_induced_path_geq,
    find_long_induced_cycle,
)
from . import oracle
from . import starpath
from . import backbone
from . import cograph
from . import lift
from . import mwis
from . import acceptance

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DecompositionError",
    "FormatError",
    "GraphError",
    "InternalError",
    "SearchBudget",
    "Graph",
    "make_graph",
    "empty_graph",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "complement",
    "disjoint_union",
    "join",
    "induced_subgraph",
    "line_graph",
    "gen_spqr",
    "gen_tpqr",
    "gen_wall",
    "gen_Gn",
    "GnWitness",
    "MinorModel",
    "verify_induced_minor_model",
    "canonical_form",
    "loads_gr",
    "dumps_gr",
    "read_gr",
    "write_gr",
    "TreeDecomposition",
    "PathDecomposition",
    "width",
    "validate",
    "independence_number",
    "loads_td",
    "dumps_td",
    "read_td",
    "write_td",
    "Certificate",
    "pattern_graph",
    "find_induced_embedding",
    "find_induced_star",
    "find_induced_path_geq",
    "find_long_induced_cycle",
    "oracle",
    "starpath",
    "backbone",
    "cograph",
    "lift",
    "mwis",
    "acceptance",
    "__version__",
]
