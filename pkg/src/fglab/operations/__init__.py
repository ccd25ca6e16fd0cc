"""Cohomology operations at the level of products of projective spaces."""

from .chp import (
    ChpRingCheck,
    adams_exponent,
    additive_to_frobenius,
    chp_mult_ring_check,
    chp_steenrod_basis,
    random_additive_series,
)
from .glfamily import (
    GlFamily,
    GlVerdict,
    constant_levels,
    family_from_operation,
    gl_constants,
    gl_reconstruct,
    gl_validate,
    lazard_levels,
)
from .integrality import (
    Certificate,
    ClassifyResult,
    PsiFunctional,
    apply_psi_on_lazard,
    counit,
    decompose_additive,
    integrality_classify,
    multi_indices,
    psi_indicator,
    rbar_weight,
)
from .multiplicative import (
    adams,
    is_stable,
    ln_component,
    ln_geometric,
    ln_morphism,
    ln_ring,
    ln_total,
    mult_op_from_morphism,
)
from .steenrod import (
    LaurentOpValue,
    SqValue,
    check_reps,
    chp_gamma,
    chp_specialize,
    default_reps,
    divide_by_D,
    sq_agrees_with_st,
    steenrod_gamma,
    steenrod_ring,
    steenrod_st,
    symmetric_phi,
    tom_dieck_sq,
)
