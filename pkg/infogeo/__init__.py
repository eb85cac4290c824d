from .measures import (  # noqa: F401
    bures_distance,
    classical_fisher,
    fidelity,
    kl_divergence,
    psd_sqrt,
    quantum_fisher_information,
    relative_entropy,
    shannon_entropy,
    sld_fisher,
    state_derivative,
    von_neumann_entropy,
)
from .models import ParametrizedState, ProbabilityVector  # noqa: F401
