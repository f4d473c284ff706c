"""Two-valued function spaces over ordinals: step functions, the injection phi, Dedekind completions."""

from cpord.errors import (
    CpordError,
    DomainError,
    NotInImageError,
    OrdinalSyntaxError,
    ReconstructionError,
    ValidationError,
)
from cpord.ordinal import (
    OMEGA,
    OMEGA1,
    ONE,
    ZERO,
    CofinalityClass,
    Kind,
    Ordinal,
    add,
    classify,
    cofinality_class,
    compare,
    format_ordinal,
    is_isolated,
    omega_power,
    parse_ordinal,
    predecessor,
    successor,
)
from cpord.stepfn import (
    IndicatorFn,
    StepFn,
    determining_sequence,
    eval_fn,
    from_support,
    make_stepfn,
    reconstruct_from_oracle,
    xor_add,
    zero_fn,
)
from cpord.phi import (
    SubbasicPredicate,
    image_membership,
    phi_apply,
    phi_invert,
    phi_preimage_subbasic,
)
from cpord.dedekind import (
    Block,
    GapPoint,
    SubOrder,
    closure_remainder_oracle,
    completion_order,
    dedekind_sections,
    gap_characteristic,
    make_suborder,
    remainder,
)

__version__ = "0.1.0"
