"""Exact verification of the cyclotomic ingredients of the Kronecker-Weber theorem."""

from .cyclo import (
    CyclotomicField,
    CyclotomicNumber,
    GaloisAutomorphism,
    descend,
    embed_complex,
    field_new,
    galois_apply,
    minimal_polynomial,
    norm_trace,
    pth_power_root,
)
from .ideal import (
    FractionalIdeal,
    PrimeIdealAboveQ,
    factor_ideal,
    factor_rational_prime,
    minkowski_bound,
    principal_ideal,
    pth_power_shape,
    valuation,
)
from .classgroup import (
    ClassGroupDescription,
    ClassGroupMismatch,
    ClassGroupSearchExhausted,
    PrincipalityUndecided,
    class_group,
    is_principal,
)
from .stick import (
    GaussSumDatum,
    GroupRingElement,
    apply_to_ideal,
    gauss_sum,
    gauss_sum_power_descend,
    minus_class_number,
    stickelberger_element,
    verify_annihilation,
    verify_stickelberger_factorization,
)
from .kummer import (
    AbelianCriterionReport,
    GeneratorReduction,
    KummerDatum,
    abelian_criterion,
    reduce_generator,
    split_completely_check,
    unramified_outside_p,
    verify_prop_exp,
)
from .lattice import (
    AbelianField,
    FiniteAbelianGroup,
    cyclic_compositum_check,
    enumerate_abelian_fields,
    inertia_subgroup,
    ramification_profile,
    subfield_by_periods,
    verify_prop_cp_c2,
    verify_prop_pex2,
)

__version__ = "0.1.0"
