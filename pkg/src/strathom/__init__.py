"""Exact intersection homology of stratified simplicial complexes."""
from .allowability import (
    AllowabilityReport,
    IntersectionChainComplex,
    full_simplexes,
    gajer_subcomplex,
    intersection_chain_complex,
    is_allowable,
)
from .complex import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    boundary_matrix,
    build_complex,
    combinatorial_link,
    cone,
    double_mapping_cylinder,
    mapping_cylinder,
    ordered_product,
    suspension,
)
from .errors import (
    ChainComplexError,
    ComplexError,
    FiltrationError,
    ParseError,
    PerversityError,
    StrathomError,
    ValidationError,
)
from .homology import (
    HomologySummary,
    IntegerChainComplex,
    chain_complex,
    homology,
    homology_field,
    truncate,
)
from .io import parse_complex, parse_perversity, serialize
from .mayer_vietoris import mayer_vietoris_check
from .perversity import (
    INF,
    Perversity,
    complement,
    constant,
    pullback,
    top_perversity,
    zero_perversity,
)
from .smith import smith_normal_form
from .stratification import (
    StratifiedComplex,
    check_frontier,
    compute_strata,
    restrict,
    stratify,
    unstratified,
)
from .verification import (
    bundle_truncation_check,
    cone_formula_check,
    fullness_gap_report,
    iterated_cone_check,
    quinn_pushout_build,
    subdivision_sensitivity_report,
)

__version__ = "0.1.0"
