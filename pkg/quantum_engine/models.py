"""
Modelos do motor quântico - agent-hamiltonians
==============================================
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import DimensionError, ValidationError
from agent_hamiltonians.validators import validate_nonnegative
from tensor_core import DensityOperator, HermitianOperator, as_complex_matrix, is_projector, is_unitary, operator_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LindbladModel:
    """
    Gerador de Lindblad: hamiltoniano e operadores de salto (L_α, γ_α)

    ℒ(ρ) = -i[H, ρ] + Σ γ_α (L_α ρ L_α† - ½{L_α† L_α, ρ})
    """

    hamiltonian: HermitianOperator
    jump_operators: tuple = ()

    def __post_init__(self):
        hamiltonian = self.hamiltonian
        if not isinstance(hamiltonian, HermitianOperator):
            hamiltonian = HermitianOperator(hamiltonian)

        jumps = []
        for operator, rate in self.jump_operators:
            matrix = as_complex_matrix(operator, field="jump_operator")
            if matrix.shape != (hamiltonian.dim, hamiltonian.dim):
                raise DimensionError(
                    f"Operador de salto {matrix.shape} incompatível com dim {hamiltonian.dim}",
                    shape=list(matrix.shape),
                    dim=hamiltonian.dim,
                )
            jumps.append((matrix, validate_nonnegative(rate, field="rate")))

        object.__setattr__(self, "hamiltonian", hamiltonian)
        object.__setattr__(self, "jump_operators", tuple(jumps))

    @property
    def dim(self):
        return self.hamiltonian.dim

    def dissipation_scale(self):
        """Σ γ_α ‖L_α‖²"""
        return sum(rate * operator_norm(operator) ** 2 for operator, rate in self.jump_operators)

    def stiffness(self):
        """‖H‖ + Σ γ_α ‖L_α‖², usado na heurística de estabilidade"""
        return operator_norm(self.hamiltonian) + self.dissipation_scale()


@dataclass(frozen=True)
class MeasurementRecord:
    """
    Resultado de uma medição projetiva com regra de Born
    """

    outcome_index: int
    probability: float
    post_state: DensityOperator
    seed: Optional[int] = None
    probabilities: tuple = ()

    def to_dict(self):
        return {
            "outcome_index": self.outcome_index,
            "probability": self.probability,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class HistoryStateSpec:
    """
    Computação U_0 ... U_{L-1} sobre ψ₀ com projetor de parada Π_halt
    """

    unitaries: tuple
    initial_state: np.ndarray
    halt_projector: HermitianOperator

    def __post_init__(self):
        unitaries = tuple(as_complex_matrix(u, field="unitary") for u in self.unitaries)
        if not unitaries:
            raise ValidationError("A computação requer L >= 1 portas", field="unitaries")

        data_dim = unitaries[0].shape[0]
        for step, unitary in enumerate(unitaries):
            if unitary.shape != (data_dim, data_dim) or not is_unitary(unitary, settings.UNITARY_TOL):
                raise ValidationError(f"U_{step} não é unitária", code="non-unitary", step=step)

        psi = np.array(self.initial_state, dtype=np.complex128).ravel()
        if psi.size != data_dim:
            raise DimensionError("ψ₀ com dimensão diferente das portas", dim=int(psi.size), data_dim=data_dim)
        if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
            raise ValidationError("ψ₀ deve ser normalizado", field="initial_state", norm=float(np.linalg.norm(psi)))
        psi.flags.writeable = False

        halt = self.halt_projector
        if not isinstance(halt, HermitianOperator):
            halt = HermitianOperator(halt)
        if halt.dim != data_dim:
            raise ValidationError(
                f"Π_halt com dimensão {halt.dim}, esperado {data_dim}",
                code="halt-projector-dim-mismatch",
                dim=halt.dim,
                data_dim=data_dim,
            )
        if not is_projector(halt):
            raise ValidationError("Π_halt não é um projetor", code="non-projector")

        if (len(unitaries) + 1) * data_dim > settings.DIMENSION_CAP:
            raise DimensionError(
                "Registro relógio ⊗ dados acima do limite",
                code="dimension-cap-exceeded",
                dim=(len(unitaries) + 1) * data_dim,
            )

        object.__setattr__(self, "unitaries", unitaries)
        object.__setattr__(self, "initial_state", psi)
        object.__setattr__(self, "halt_projector", halt)

    @property
    def steps(self):
        return len(self.unitaries)

    @property
    def data_dim(self):
        return self.unitaries[0].shape[0]

    def partial_output(self, t):
        """(Π_{s<t} U_s)|ψ₀⟩"""
        psi = self.initial_state
        for unitary in self.unitaries[:t]:
            psi = unitary @ psi
        return psi

    def halts(self, tol=1e-9):
        """Π_halt aceita o estado final"""
        final = self.partial_output(self.steps)
        return bool(abs(np.real(np.vdot(final, self.halt_projector.matrix @ final)) - 1.0) <= tol)
