"""Numerical geometric constants of finite-dimensional normed spaces.

The package estimates the sphere-restricted skew ratio constant and its
relatives (unrestricted variant, symmetric case, James constant, modulus of
convexity), evaluates the published closed forms and bounds for them, and
machine-checks the relations between the two.
"""

from .closed_forms import (
    BoundPair,
    bounds_general,
    delta_lr,
    normal_structure_threshold,
    power_mean_check,
    thm26_upper,
    thm28_lower,
    thm33_objective,
    thm38_bounds,
    value_l1,
    value_l1_linf_printed,
    value_linf,
    value_lr_printed,
    value_weighted_c0,
)
from .estimators import (
    ConvexityEstimate,
    Estimate,
    SearchOptions,
    SkewParams,
    Witness,
    estimate_convexity_characteristic,
    estimate_convexity_modulus,
    estimate_gen_nj_tilde,
    estimate_james,
    estimate_lyj,
    estimate_skew_nj,
    estimate_skew_nj_global,
    extreme_point_supremum,
    james_objective,
    skew_nj_objective,
)
from .spaces import (
    NormedSpace,
    UnitSample,
    catalog_spaces,
    l1_linf_space,
    load_extreme_points,
    lp_space,
    minkowski_gauge,
    polyhedral_space,
    polyhedral_space_from_file,
    sample_unit_sphere,
    symmetrize_points,
    weighted_c0_space,
)
from .verifiers import (
    Classification,
    Report,
    SuiteConfig,
    VerifierOptions,
    check_bounds_prop22,
    check_convexity_lemma27,
    check_delta_formula_thm33,
    check_equivalence_thm29,
    check_james_thm38,
    check_lower_thm28,
    check_normal_structure_thm42,
    check_sandwich_thm26,
    classify_uniform_nonsquare,
    default_params_grid,
    recompute_passed,
    run_suite,
    suite_passed,
)

__version__ = "0.1.0"
