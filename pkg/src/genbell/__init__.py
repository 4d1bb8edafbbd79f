"""Generalized Stirling and Bell numbers from boson normal ordering.

Exact tables S_{r,s}(n,k) and B_{r,s}(n), their Dobinski series, moment
measures, Hankel positivity, generating functions, asymptotics and the
associated coherent states.
"""

from .coherent_states import (
    CoherentFamily,
    ResolutionReport,
    StateVector,
    normalization,
    overlap,
    resolution_check,
    state_coefficients,
)
from .core import (
    DEFAULT_CONTEXT,
    ApproxValue,
    BranchCut,
    Divergent,
    FamilyParams,
    GenBellError,
    InsufficientSequence,
    IntegerOrderUnsupported,
    MaxTermsExceeded,
    NonIntegralResult,
    NonIntegralSolve,
    OutOfRange,
    PrecisionContext,
    TailBoundFailure,
    TruncationTooSmall,
    UnsupportedFamily,
    UnsupportedKind,
    UnsupportedShape,
    recover_integer,
)
from .dobinski import (
    HypergeometricSpec,
    PrintedFormulaWarning,
    bell_hypergeometric,
    dobinski,
    dobinski_integer,
    dobinski_r1,
    dobinski_rr,
    dobinski_rs,
    dobinski_terms,
    hypergeometric_discrepancy,
    hypergeometric_pFq,
    hypergeometric_shape,
)
from .errata import ERRATA, FORMULA_ERRATA, WEIGHT_ERRATA, Erratum
from .generating_functions import (
    GrowthOrder,
    PowerSeries,
    classical_egf_check,
    egf_coefficients,
    growth_order,
    matrix_element_closed,
    matrix_element_exp,
    matrix_element_fock,
)
from .measures import (
    MomentReport,
    WeightSpec,
    bessel_i,
    bessel_k,
    comb_moment,
    eval_weight,
    fitted_scale,
    moment_integral,
    moment_quadrature,
    total_mass,
    weight_spec,
)
from .moment_analysis import (
    AsymptoticReport,
    HankelReport,
    asymptotic_b21,
    asymptotic_b31,
    bareiss_determinant,
    hankel_determinants,
    hankel_matrix,
)
from .normal_order import (
    BellSequence,
    StirlingTable,
    bell_number,
    bell_sequence,
    fock_oracle,
    lah_number,
    monomial_coefficient,
    set_partition_count,
    stirling_rr_closed,
    stirling_table,
)

__version__ = "0.1.0"
