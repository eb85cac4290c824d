from .generators import build_classical_generator, satisfying_assignments, spin_values  # noqa: F401
from .integrators import (  # noqa: F401
    coordinate,
    evolve_classical,
    explicit_euler_step,
    leapfrog_step,
    liouville_jacobian,
    momentum,
    poisson_bracket,
)
from .models import ClassicalHamiltonian, HamiltonianTerm, PhaseSpaceState  # noqa: F401
