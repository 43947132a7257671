"""redblue: deciding, constructing, and verifying vertex partitions of
graphs into a P3-free part (blue, a disjoint union of cliques) and a
triangle-free part (red), plus the edge-partition analogue, reduction
tooling, and gadget verifiers."""

from .errors import (
    BudgetError,
    InternalContradictionError,
    ParseError,
    RefusalError,
)
from .graphs import (
    Graph,
    Multigraph,
    add_false_twin,
    complement_of_cycle,
    complete_graph,
    complete_multipartite,
    contract_two_vertices,
    cycle_graph,
    disjoint_union,
    four_regular_girth,
    generate,
    identify_vertices,
    line_graph,
    parse_edge_list,
    path_graph,
    pattern_graph,
    random_graph,
    serialize,
    star_graph,
    subdivide_all_once,
    subdivide_edge,
)
from .structure import (
    ClassSpec,
    PlanarityResult,
    StructureReport,
    check_class,
    class_preset,
    contains_induced,
    cut_vertices,
    find_induced_cycle,
    girth,
    is_planar,
)
from .solver import (
    BLUE,
    RED,
    CnfFormula,
    EdgePartition,
    Partition,
    encode_cnf,
    enumerate_edge_partitions,
    enumerate_partitions,
    is_valid_edge_partition,
    is_valid_partition,
    solve_edge_partition,
    solve_partition,
    to_dimacs,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
