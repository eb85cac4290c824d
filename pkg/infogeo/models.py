"""
Modelos de geometria da informação - agent-hamiltonians
=======================================================
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ValidationError
from agent_hamiltonians.validators import validate_positive, validate_positive_int
from tensor_core import DensityOperator

PROBABILITY_TOL = 1e-10


@dataclass(frozen=True)
class ProbabilityVector:
    """
    Distribuição de probabilidade finita (entradas em [0, 1], soma 1)
    """

    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float).ravel()
        if probs.size == 0 or not np.all(np.isfinite(probs)):
            raise ValidationError("Vetor de probabilidades vazio ou não finito", field="probs")
        if np.any(probs < -PROBABILITY_TOL) or np.any(probs > 1 + PROBABILITY_TOL):
            raise ValidationError("Probabilidades fora de [0, 1]", field="probs", probs=probs.tolist())
        total = float(probs.sum())
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise ValidationError(f"Probabilidades somam {total!r}", field="probs", total=total)

        probs = np.clip(probs, 0.0, 1.0)
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    def __len__(self):
        return int(self.probs.size)


@dataclass(frozen=True)
class ParametrizedState:
    """
    Família ρ_θ: vetor de parâmetros reais para ``DensityOperator``
    """

    map: Callable
    param_dim: int
    perturbation: float = settings.FD_STEP

    def __post_init__(self):
        validate_positive_int(self.param_dim, field="param_dim")
        validate_positive(self.perturbation, field="perturbation")

    def __call__(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if theta.size != self.param_dim:
            raise ValidationError(
                f"Esperados {self.param_dim} parâmetros, recebidos {theta.size}",
                field="theta",
            )
        state = self.map(theta)
        if not isinstance(state, DensityOperator):
            state = DensityOperator(state)
        return state
