from .models import DensityOperator, HermitianOperator, RegisterLayout, as_complex_matrix  # noqa: F401
from .operations import (  # noqa: F401
    commutator,
    commutator_norm,
    exp_minus_iht,
    herm_eig,
    hermitian_function,
    is_projector,
    is_unitary,
    kron,
    kron_all,
    operator_norm,
    partial_trace,
)
