"""steenflow: exact mod-2 computations around truncated flow categories.

Subpackages by area: ``rings``/``linalg`` (exact graded algebra and integer
linear algebra), ``steenrod`` (admissible basis, primitives, ring actions,
availability gates), ``char_classes`` (power-sum characteristic classes and
twisted module actions), ``flow_category`` (validation, chain complexes,
homology, obstruction groups), ``ohpoz`` (clean-intersection page counting),
``projective`` (the worked projective-Lagrangian suite), ``cli``.
"""

from .rings import (
    ACTION_NONE,
    ACTION_POLYNOMIAL,
    AlgebraError,
    ConsistencyError,
    Generator,
    InhomogeneousElement,
    PresentationMismatch,
    RingElement,
    RingPresentation,
    binomial_mod2,
    cp_ring,
    parse_ring_shorthand,
    poly_ring,
    rp_ring,
)
from .linalg import IntMatrix, integer_rank, rank_f2, rank_mod_p, smith_normal_form
from .steenrod import (
    BraneInfeasibleError,
    SteenrodElement,
    TruncationGate,
    adem_normalize,
    apply,
    available_qs_for_lagrangian,
    compose,
    milnor_q,
    parse_operation,
    q_available,
    sq,
    total_square,
)
from .char_classes import (
    FormalBundle,
    bundle_from_json_dict,
    bundle_to_json_dict,
    SplitBundle,
    ThomTwist,
    VirtualDifference,
    qi_of_bundle,
    qi_universal,
    root_power_sum,
    thom_apply,
    w_ring,
)
from .flow_category import (
    FloerComplex,
    FlowCategorySpec,
    FlowGenerator,
    GroupDescriptor,
    HomologyGroup,
    RingSpectrumData,
    SafeTruncation,
    ValidationFailure,
    finite_range_restrict,
    floer_complex,
    homology,
    max_safe_truncation,
    obstruction_group,
    partition_count,
    validate,
)
from .ohpoz import (
    CleanComponentData,
    CleanScenario,
    DegreeWindow,
    ScenarioVerdict,
    SpectralPage,
    assemble_e1,
    check_scenario,
    collapse_certificate,
    dual_page,
    pss_range,
    reflected_scenario,
    search_components,
)
from .projective import (
    BraneVerdict,
    HFReport,
    PtConnParams,
    projective_action_table,
    brane_feasible,
    build_hf_report,
    power_rule_check,
    ptconn_identities,
    ptconn_qtc,
    strong_qi,
    y_cohomology_ring,
)

__version__ = "0.1.0"
