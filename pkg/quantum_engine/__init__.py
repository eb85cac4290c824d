from .dynamics import (  # noqa: F401
    evolve_unitary,
    lindblad_evolve,
    make_rng,
    nonselective_measure,
    projective_measure,
    rk4_step,
)
from .generators import (  # noqa: F401
    build_quantum_generator,
    clause_projector,
    feynman_kitaev,
    history_state,
    ising_minimum,
    reasoning_hamiltonian,
    sensing_hamiltonian,
    tfim_hamiltonian,
)
from .induction import bloch_parametrization, bloch_state, induction_cost, induction_gradient_flow  # noqa: F401
from .models import HistoryStateSpec, LindbladModel, MeasurementRecord  # noqa: F401
