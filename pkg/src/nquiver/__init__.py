"""nquiver: bound quivers, graded path algebras, quadratic duals, higher
translation structures, and the associated module-category machinery, all
over exact fields (rationals or F_p).

The public surface re-exported here is the stable API; submodules contain
further helpers that may change.
"""

from .fields import QQ, PrimeField, RationalField, field_from_spec
from .quiver import (
    Arrow,
    BoundQuiver,
    LinComb,
    Path,
    Quiver,
    QuiverError,
    arrow_path,
    compose,
    enumerate_paths,
    opposite,
    path_mul,
    path_name,
    stationary_path,
)
from .dsl import (
    ParseError,
    parse_quiver,
    parse_source,
    quiver_from_json,
    quiver_to_json,
    serialize_quiver,
)
from .graded import (
    BoundPathClass,
    CutoffExceeded,
    GradedAlgebraView,
    LOEWY_UNBOUNDED,
    is_n_properly_graded,
    loewy_length,
    maximal_bound_paths,
)
from .qdual import QuadraticDualResult, dual_pair_check, quadratic_dual
from .translation import (
    Hammock,
    TranslationStructure,
    hammock,
    hammock_bijection_check,
    is_stable_n_translation,
    is_tau_mature,
    truncate,
    truncate_bound_quiver,
)
from .zq import (
    ReturningArrowQuiver,
    ZQWindow,
    extract_tau_slice,
    preprojective_presentation,
    returning_arrow_quiver,
    self_injective_pairing_report,
    zq_window,
)
from .koszul import (
    KoszulReport,
    ProjComplex,
    koszul_complex,
    koszul_type_check,
    verify_n_almost_split,
)
from .reps import (
    ClosureResult,
    Rep,
    RepMap,
    closure,
    compare_with_prediction,
    cosyzygy,
    end_is_local,
    ext_dim,
    global_dimension,
    hom_space,
    is_isomorphic,
    iyama_check,
    min_proj_resolution,
    n_rep_infinite_probe,
    proj_dimension,
    rep_of_injective,
    rep_of_projective,
    rep_simple,
    syzygy,
    tau,
    tau_inverse,
    tau_n,
    tau_n_inverse,
    tau_n_inverse_via_ext,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "RationalField",
    "field_from_spec",
    "Arrow",
    "BoundQuiver",
    "LinComb",
    "Path",
    "Quiver",
    "QuiverError",
    "arrow_path",
    "compose",
    "enumerate_paths",
    "opposite",
    "path_mul",
    "path_name",
    "stationary_path",
    "ParseError",
    "parse_quiver",
    "parse_source",
    "quiver_from_json",
    "quiver_to_json",
    "serialize_quiver",
    "BoundPathClass",
    "CutoffExceeded",
    "GradedAlgebraView",
    "LOEWY_UNBOUNDED",
    "is_n_properly_graded",
    "loewy_length",
    "maximal_bound_paths",
    "QuadraticDualResult",
    "dual_pair_check",
    "quadratic_dual",
    "Hammock",
    "TranslationStructure",
    "hammock",
    "hammock_bijection_check",
    "is_stable_n_translation",
    "is_tau_mature",
    "truncate",
    "truncate_bound_quiver",
    "ReturningArrowQuiver",
    "ZQWindow",
    "extract_tau_slice",
    "preprojective_presentation",
    "returning_arrow_quiver",
    "self_injective_pairing_report",
    "zq_window",
    "KoszulReport",
    "ProjComplex",
    "koszul_complex",
    "koszul_type_check",
    "verify_n_almost_split",
    "ClosureResult",
    "Rep",
    "RepMap",
    "closure",
    "compare_with_prediction",
    "cosyzygy",
    "end_is_local",
    "ext_dim",
    "global_dimension",
    "hom_space",
    "is_isomorphic",
    "iyama_check",
    "min_proj_resolution",
    "n_rep_infinite_probe",
    "proj_dimension",
    "rep_of_injective",
    "rep_of_projective",
    "rep_simple",
    "syzygy",
    "tau",
    "tau_inverse",
    "tau_n",
    "tau_n_inverse",
    "tau_n_inverse_via_ext",
    "__version__",
]
