"""Coherent states of a Dirac electron in graphene under a constant field.

The package builds three families of coherent states as eigenstates of
an adjustable annihilation operator on the Landau spinors, computes
their observables along two independent routes (an index-space
contraction and closed-form series), and checks the two against each
other in a verification battery exposed both as a library call and as
the `graphene-cs verify` command.
"""

from .basis import (
    N_MAX,
    PhysicsConfig,
    SpinorBasisState,
    ho_eigenfunction,
    ladder_matrix_elements,
    landau_energy,
    oscillator_eigenvalue,
    overlap_gram,
    quadrature,
    rho_matrix_element,
    spinor_state,
    spinor_weight,
)
from .closed_forms import (
    CLOSED_FORM_ERRATA,
    ClosedFormErratum,
    closed_form_erratum,
    density_closed_form,
    expectation_closed_form,
)
from .coherent import (
    CUBIC,
    ONE,
    SHIFTED,
    TOL_MAX,
    CoherentState,
    LadderFamily,
    apply_annihilation,
    build_coefficients,
    c_n,
    custom_family,
    f1_consistency,
    family_by_name,
)
from .errors import (
    CapacityError,
    ConfigError,
    DomainError,
    FamilyError,
    GrapheneError,
    InvalidRequestError,
    NonConvergenceError,
    NumericalError,
    UnsupportedFamilyError,
)
from .observables import (
    OBSERVABLES,
    MeanValues,
    density_normalization,
    expectation_generic,
    mean_energy,
    probability_density,
    suggest_x_range,
    uncertainty_product,
)
from .specfun import SignedLogValue, f_factorial, hyper_0F2, log_gamma
from .verify import run_all as run_verification

__version__ = "0.1.0"

__all__ = [
    "N_MAX",
    "PhysicsConfig",
    "SpinorBasisState",
    "ho_eigenfunction",
    "ladder_matrix_elements",
    "landau_energy",
    "oscillator_eigenvalue",
    "overlap_gram",
    "quadrature",
    "rho_matrix_element",
    "spinor_state",
    "spinor_weight",
    "CLOSED_FORM_ERRATA",
    "ClosedFormErratum",
    "closed_form_erratum",
    "density_closed_form",
    "expectation_closed_form",
    "CUBIC",
    "ONE",
    "SHIFTED",
    "TOL_MAX",
    "CoherentState",
    "LadderFamily",
    "apply_annihilation",
    "build_coefficients",
    "c_n",
    "custom_family",
    "f1_consistency",
    "family_by_name",
    "CapacityError",
    "ConfigError",
    "DomainError",
    "FamilyError",
    "GrapheneError",
    "InvalidRequestError",
    "NonConvergenceError",
    "NumericalError",
    "UnsupportedFamilyError",
    "OBSERVABLES",
    "MeanValues",
    "density_normalization",
    "expectation_generic",
    "mean_energy",
    "probability_density",
    "suggest_x_range",
    "uncertainty_product",
    "SignedLogValue",
    "f_factorial",
    "hyper_0F2",
    "log_gamma",
    "run_verification",
    "__version__",
]
