"""Branched coverings of the sphere as permutation constellations.

The package models branched coverings combinatorially (constellations of
permutations), classifies branching data by whether they force
solvable-by-radicals monodromy, constructs minimal Galois exemplars,
amplifies genus with unbranched cyclic covers, and inverts polynomials in
radicals via decomposition, Chebyshev inversion and the quadric-pencil
quartic solver.
"""
from .covering import (
    BranchingDatum,
    Constellation,
    branching_datum,
    galois_rh_genus,
    genus_rh,
    is_subject_to,
)
from .perm import (
    DEFAULT_CAP,
    GroupTable,
    Permutation,
    block_systems,
    compose,
    cycle_data,
    generate_group,
    is_solvable,
)
from .galois import (
    dominates,
    fibered_product,
    galois_closure,
    is_galois,
    monodromy_group,
)
from .classify import (
    DatumClass,
    DatumFamily,
    INFINITE_ORDER,
    affine_embedding,
    classify_datum,
    classify_orders,
    enumerate_galois_data,
    preimage_count,
    ritt_equation_solutions,
)
from .exemplars import ExemplarSpec, all_exemplars, exemplar
from .amplify import SchreierData, cyclic_unbranched_extension, schreier_data
from .poly import ExactPolynomial, poly_from
from .radicals import (
    RadicalExpr,
    RationalConst,
    Root,
    chebyshev,
    eval_multi,
    invert_chebyshev,
    invert_power,
    solve_cubic,
)
from .quartic import Conic, build_pencil, solve_quartic_pencil, split_singular_conic
from .decompose import (
    FactorClass,
    FactorTag,
    classify_factor,
    critical_datum,
    decompose_poly,
    numeric_monodromy,
    radical_inverse,
    ritt_verdict,
    verify_radical_inverse,
)

__all__ = [
    "BranchingDatum",
    "Conic",
    "Constellation",
    "DEFAULT_CAP",
    "DatumClass",
    "DatumFamily",
    "ExactPolynomial",
    "ExemplarSpec",
    "FactorClass",
    "FactorTag",
    "GroupTable",
    "INFINITE_ORDER",
    "Permutation",
    "RadicalExpr",
    "RationalConst",
    "Root",
    "SchreierData",
    "affine_embedding",
    "all_exemplars",
    "block_systems",
    "branching_datum",
    "build_pencil",
    "chebyshev",
    "classify_datum",
    "classify_factor",
    "classify_orders",
    "compose",
    "critical_datum",
    "cycle_data",
    "cyclic_unbranched_extension",
    "decompose_poly",
    "dominates",
    "enumerate_galois_data",
    "eval_multi",
    "exemplar",
    "fibered_product",
    "galois_closure",
    "galois_rh_genus",
    "generate_group",
    "genus_rh",
    "invert_chebyshev",
    "invert_power",
    "is_galois",
    "is_solvable",
    "is_subject_to",
    "monodromy_group",
    "numeric_monodromy",
    "poly_from",
    "preimage_count",
    "radical_inverse",
    "ritt_equation_solutions",
    "ritt_verdict",
    "schreier_data",
    "solve_cubic",
    "solve_quartic_pencil",
    "split_singular_conic",
    "verify_radical_inverse",
]

__version__ = "0.1.0"
