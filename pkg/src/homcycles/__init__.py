"""Optimal homologous cycles on weighted simplicial complexes.

Fast lex-optimal 1-cycles on closed orientable surfaces via tree-cotree
cutting, a persistence-based optimizer for arbitrary complexes and dimensions,
brute-force oracles, and a generator of link-diagram instances whose linking
parities encode sparse Z2 linear systems.
"""

from .backend import active_backend, set_backend
from .chains import Chain, add, boundary, bottleneck_norm, is_cycle, lex_compare
from .complexes import (
    SublevelFunction,
    SurfaceTopology,
    WeightedComplex,
    build_complex,
    classify_surface,
    from_arrays,
    sublevel_function,
)
from .linkgen import (
    LinkDiagram,
    VerificationReport,
    linking_number,
    matrix_to_diagram,
    solution_readback,
    verify_instance,
)
from .oracle import brute_betti, brute_bottleneck_opt, brute_greedy_basis, brute_lex_opt
from .persistence import (
    Filtration,
    ReducedFiltration,
    betti_numbers,
    bottleneck_optimal_cycle,
    build_filtration,
    lex_optimal_basis,
    lex_optimal_cycle,
    persistence_diagram,
    reduce,
    reduced_filtration,
)
from .surface import (
    CircularAccumulator,
    PolygonalSchema,
    TreeCotree,
    cut_to_disk,
    fundamental_cycle,
    lex_opt_basis_surface,
    lex_opt_cycle_surface,
    tree_cotree,
)

__version__ = "0.1.0"
