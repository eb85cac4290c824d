"""
Indução quântica - agent-hamiltonians
=====================================

Funcional de custo k_B T · S(ρ_D ‖ ρ_θ) e fluxo de gradiente por
diferenças finitas sobre uma parametrização declarada.
"""

import logging
import math

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import INFINITE_COST
from agent_hamiltonians.models import TrajectoryRecord
from agent_hamiltonians.validators import validate_nonnegative, validate_positive, validate_positive_int
from infogeo import ParametrizedState, relative_entropy
from tensor_core import DensityOperator, commutator_norm, hermitian_function
from tensor_core.operators import I2, X, Y, Z

logger = logging.getLogger(__name__)

BLOCH_MARGIN = 1e-6
MAX_BACKTRACKS = 40


def induction_cost(rho_data, rho_theta, kbt=settings.DEFAULT_KBT):
    """
    k_B T · S(ρ_D ‖ ρ_θ); ``INFINITE_COST`` fora do suporte
    """
    kbt = validate_positive(kbt, field="kbt")
    divergence = relative_entropy(rho_data, rho_theta)
    if math.isinf(divergence):
        return INFINITE_COST
    return kbt * divergence


def bloch_state(x, margin=BLOCH_MARGIN):
    """
    ρ = (I + r·σ)/2 com r = (1 - margin)·tanh(|x|)·x/|x| (sempre posto completo)
    """
    x = np.asarray(x, dtype=float).ravel()
    norm = float(np.linalg.norm(x))
    r = np.zeros(3) if norm == 0 else (1.0 - margin) * np.tanh(norm) * x / norm
    return DensityOperator((I2 + r[0] * X + r[1] * Y + r[2] * Z) / 2)


def bloch_parametrization(perturbation=settings.FD_STEP):
    """Família de qubit parametrizada pelo vetor de Bloch"""
    return ParametrizedState(bloch_state, 3, perturbation)


def disturbance_witness(rho_data, rho_theta):
    """‖[ρ_D, ln ρ_θ]‖_F; zero quando os estados comutam"""
    log_theta = hermitian_function(rho_theta.matrix, np.log)
    return commutator_norm(rho_data.matrix, log_theta)


def _cost_gradient(parametrization, rho_data, x, kbt):
    step = parametrization.perturbation
    gradient = np.zeros(x.size)
    for i in range(x.size):
        forward, backward = x.copy(), x.copy()
        forward[i] += step
        backward[i] -= step
        gradient[i] = (
            induction_cost(rho_data, parametrization(forward), kbt) - induction_cost(rho_data, parametrization(backward), kbt)
        ) / (2 * step)
    return gradient


def induction_gradient_flow(
    parametrization,
    rho_data,
    step_count,
    rate=0.5,
    x0=None,
    kbt=settings.DEFAULT_KBT,
    tolerance=0.0,
):
    """
    Descida de gradiente do custo de indução com busca regressiva

    ρ_D permanece fixo; cada amostra registra ``cost`` e a testemunha de
    perturbação ``disturbance``. O custo registrado é não crescente; a
    iteração para cedo quando nenhum passo reduz o custo ou quando o custo
    fica abaixo de ``tolerance``.
    """
    step_count = validate_positive_int(step_count, field="step_count")
    rate = validate_positive(rate, field="rate")
    tolerance = validate_nonnegative(tolerance, field="tolerance")

    x = np.zeros(parametrization.param_dim) if x0 is None else np.array(x0, dtype=float).ravel()
    rho_theta = parametrization(x)
    cost = induction_cost(rho_data, rho_theta, kbt)

    trajectory = TrajectoryRecord(meta={"engine": "induction", "rate": rate, "kbt": kbt})
    trajectory.record(0, rho_theta, cost=cost, disturbance=disturbance_witness(rho_data, rho_theta))

    for k in range(1, step_count + 1):
        if cost <= tolerance or math.isinf(cost):
            break
        gradient = _cost_gradient(parametrization, rho_data, x, kbt)

        step, accepted = rate, False
        for _ in range(MAX_BACKTRACKS):
            candidate = x - step * gradient
            candidate_state = parametrization(candidate)
            candidate_cost = induction_cost(rho_data, candidate_state, kbt)
            if candidate_cost <= cost:
                accepted = True
                break
            step /= 2

        if not accepted:
            logger.debug(f"Fluxo de indução estacionário no passo {k}")
            break

        x, rho_theta, cost = candidate, candidate_state, candidate_cost
        trajectory.record(k, rho_theta, cost=cost, disturbance=disturbance_witness(rho_data, rho_theta))

    trajectory.meta["parameters"] = x.tolist()
    return trajectory.validate()
