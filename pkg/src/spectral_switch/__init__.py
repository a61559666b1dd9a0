"""Johnson and Grassmann scheme graphs, spectrum-preserving switching,
and non-isomorphism certification."""

from .algebra import binom, gauss_binom
from .canon import BudgetExhaustedError, canonical_labeling, wl1_histogram
from .certify import (
    NonIsoVerdict,
    canonical_form,
    lambda_profile,
    nonisomorphic,
    scan_triple_property,
    selective_neighbor_count,
)
from .families import (
    Recipe,
    RecipeReport,
    RecipeStageError,
    SPORADIC_NAMES,
    all_recipes,
    recipe_halfrange_2kk,
    recipe_j2n4,
    recipe_qkneser,
    recipe_sporadic,
    run_recipe,
)
from .graphcore import Graph, Graph6ParseError, decode_graph6, encode_graph6
from .schemes import (
    DEFAULT_VERTEX_CAP,
    SchemeParams,
    SetVertex,
    SubspaceVertex,
    VertexCapExceeded,
    build,
    count_vertices,
    degree_formula,
    enumerate_vertices,
)
from .search import (
    SearchConfig,
    SearchResult,
    johnson_block_triples,
    johnson_core_triples,
    search_gm4,
    search_wqh33,
)
from .spectra import (
    CharPolySignature,
    CospectralVerdict,
    charpoly_mod_p,
    cospectral,
    random_primes,
    signature,
)
from .switching import (
    GmSpec,
    InvalidSpecError,
    ValidationReport,
    WqhSpec,
    apply_switching,
    spec_from_json_dict,
    spec_to_json_dict,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhaustedError",
    "CharPolySignature",
    "CospectralVerdict",
    "DEFAULT_VERTEX_CAP",
    "GmSpec",
    "Graph",
    "Graph6ParseError",
    "InvalidSpecError",
    "NonIsoVerdict",
    "Recipe",
    "RecipeReport",
    "RecipeStageError",
    "SPORADIC_NAMES",
    "SchemeParams",
    "SearchConfig",
    "SearchResult",
    "SetVertex",
    "SubspaceVertex",
    "ValidationReport",
    "VertexCapExceeded",
    "WqhSpec",
    "all_recipes",
    "apply_switching",
    "binom",
    "build",
    "canonical_form",
    "canonical_labeling",
    "charpoly_mod_p",
    "cospectral",
    "count_vertices",
    "decode_graph6",
    "degree_formula",
    "encode_graph6",
    "enumerate_vertices",
    "gauss_binom",
    "johnson_block_triples",
    "johnson_core_triples",
    "lambda_profile",
    "nonisomorphic",
    "random_primes",
    "recipe_halfrange_2kk",
    "recipe_j2n4",
    "recipe_qkneser",
    "recipe_sporadic",
    "run_recipe",
    "scan_triple_property",
    "search_gm4",
    "search_wqh33",
    "selective_neighbor_count",
    "signature",
    "spec_from_json_dict",
    "spec_to_json_dict",
    "validate",
    "wl1_histogram",
]
