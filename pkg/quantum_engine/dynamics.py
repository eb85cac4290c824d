"""
Dinâmica quântica - agent-hamiltonians
======================================

Evolução unitária (von Neumann), integração RK4 da equação de Lindblad com
verificação de traço e positividade, e medições projetivas com amostragem
de Born reprodutível.
"""

import logging

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import DimensionError, NumericalError, ValidationError
from agent_hamiltonians.models import TrajectoryRecord
from agent_hamiltonians.validators import validate_positive, validate_positive_int
from tensor_core import DensityOperator, HermitianOperator, as_complex_matrix, exp_minus_iht

from .models import LindbladModel, MeasurementRecord

logger = logging.getLogger(__name__)

LINDBLAD_TRACE_TOL = 1e-7
LINDBLAD_EIGEN_TOL = 1e-6


def make_rng(seed=None):
    """
    Fluxo pseudoaleatório único por execução (PCG64, reprodutível entre plataformas)
    """
    return np.random.Generator(np.random.PCG64(seed))


def _hermitian(h):
    return h if isinstance(h, HermitianOperator) else HermitianOperator(h)


def evolve_unitary(h, rho0, t):
    """
    ρ(t) = U ρ₀ U† com U = exp(-iHt)
    """
    h = _hermitian(h)
    if h.dim != rho0.dim:
        raise DimensionError("Hamiltoniano e estado com dimensões diferentes", left=h.dim, right=rho0.dim)
    unitary = exp_minus_iht(h, t)
    return DensityOperator(unitary @ rho0.matrix @ unitary.conj().T, rho0.factor_dims)


def lindblad_rhs(model, rho):
    """ℒ(ρ) para uma matriz densa ρ"""
    h = model.hamiltonian.matrix
    result = -1j * (h @ rho - rho @ h)
    for operator, rate in model.jump_operators:
        if rate == 0:
            continue
        adjoint = operator.conj().T
        anticommutator_term = adjoint @ operator
        result += rate * (
            operator @ rho @ adjoint - 0.5 * (anticommutator_term @ rho + rho @ anticommutator_term)
        )
    return result


def rk4_step(model, rho, dt):
    """Um passo RK4 de dρ/dt = ℒ(ρ) sobre matriz densa"""
    k1 = lindblad_rhs(model, rho)
    k2 = lindblad_rhs(model, rho + dt / 2 * k1)
    k3 = lindblad_rhs(model, rho + dt / 2 * k2)
    k4 = lindblad_rhs(model, rho + dt * k3)
    return rho + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def check_stability(model, dt):
    """dt·(‖H‖ + Σγ‖L‖²) <= LINDBLAD_STABILITY"""
    product = dt * model.stiffness()
    if product > settings.LINDBLAD_STABILITY:
        logger.warning(f"Passo de Lindblad grande demais: dt·escala = {product:.3g}")
        raise NumericalError(
            f"dt·(‖H‖ + Σγ‖L‖²) = {product:.3g} excede {settings.LINDBLAD_STABILITY}",
            code="step-too-large",
            dt=dt,
            product=product,
        )


def validated_state(matrix, factor_dims, step=None):
    """
    Converte a matriz integrada em ``DensityOperator`` sem renormalizar

    Erros:
        NumericalError: trace-drift, positivity-violation ou nonfinite
    """
    if not np.all(np.isfinite(matrix)):
        raise NumericalError("Estado não finito durante a integração", code="nonfinite", step=step)

    matrix = (matrix + matrix.conj().T) / 2
    trace = float(np.real(np.trace(matrix)))
    if abs(trace - 1.0) > LINDBLAD_TRACE_TOL:
        logger.warning(f"Desvio de traço no passo {step}: {trace!r}")
        raise NumericalError(f"Traço {trace!r} desviou de 1", code="trace-drift", trace=trace, step=step)

    min_eigenvalue = float(np.linalg.eigvalsh(matrix)[0])
    if min_eigenvalue < -LINDBLAD_EIGEN_TOL:
        logger.warning(f"Perda de positividade no passo {step}: {min_eigenvalue:.3e}")
        raise NumericalError(
            f"Autovalor mínimo {min_eigenvalue:.3e}",
            code="positivity-violation",
            min_eigenvalue=min_eigenvalue,
            step=step,
        )
    return DensityOperator(matrix, factor_dims, check=False), trace, min_eigenvalue


def lindblad_evolve(model, rho0, dt, steps, observables=None, t0=0.0, keep_states=True):
    """
    Integra ℒ por ``steps`` passos RK4 de tamanho fixo ``dt``

    Registra ``trace`` e ``min_eigenvalue`` de cada estado, além de
    ``observables`` (nome -> função do estado). Violações de traço ou
    positividade geram erro; o estado nunca é renormalizado.
    """
    if not isinstance(model, LindbladModel):
        raise ValidationError("Modelo de Lindblad inválido", field="model")
    if model.dim != rho0.dim:
        raise DimensionError("Modelo e estado com dimensões diferentes", left=model.dim, right=rho0.dim)
    dt = validate_positive(dt, field="dt")
    steps = validate_positive_int(steps, field="steps")
    check_stability(model, dt)
    observables = observables or {}

    trajectory = TrajectoryRecord(meta={"engine": "lindblad", "dt": dt, "steps": steps})
    state, trace, min_eigenvalue = validated_state(np.array(rho0.matrix), rho0.factor_dims, step=0)

    def sample(k, current, trace, min_eigenvalue):
        values = {name: function(current) for name, function in observables.items()}
        trajectory.record(
            t0 + k * dt,
            current if keep_states else None,
            trace=trace,
            min_eigenvalue=min_eigenvalue,
            **values,
        )

    sample(0, state, trace, min_eigenvalue)
    matrix = np.array(state.matrix)
    for k in range(1, steps + 1):
        matrix = rk4_step(model, matrix, dt)
        state, trace, min_eigenvalue = validated_state(matrix, rho0.factor_dims, step=k)
        matrix = np.array(state.matrix)
        sample(k, state, trace, min_eigenvalue)

    return trajectory.validate()


def _projector_matrices(projectors, dim):
    matrices = []
    for k, projector in enumerate(projectors):
        matrix = projector.matrix if isinstance(projector, HermitianOperator) else as_complex_matrix(projector)
        if matrix.shape != (dim, dim):
            raise DimensionError(f"Projetor {k} com dimensão incompatível", shape=list(matrix.shape), dim=dim)
        if (
            np.max(np.abs(matrix - matrix.conj().T)) > settings.PROJECTOR_TOL
            or np.max(np.abs(matrix @ matrix - matrix)) > settings.PROJECTOR_TOL
        ):
            raise ValidationError(f"Operador {k} não é um projetor", code="non-projector", index=k)
        matrices.append(matrix)
    return matrices


def validate_measurement(projectors, dim):
    """
    Projetores ortogonais e idempotentes que somam a identidade
    """
    matrices = _projector_matrices(projectors, dim)
    if not matrices:
        raise ValidationError("Medição sem projetores", code="non-resolution-of-identity")

    if np.max(np.abs(sum(matrices) - np.eye(dim))) > settings.PROJECTOR_TOL:
        raise ValidationError("Projetores não somam a identidade", code="non-resolution-of-identity")
    for i, left in enumerate(matrices):
        for j in range(i + 1, len(matrices)):
            if np.max(np.abs(left @ matrices[j])) > settings.PROJECTOR_TOL:
                raise ValidationError(
                    f"Projetores {i} e {j} não são ortogonais",
                    code="non-resolution-of-identity",
                    pair=[i, j],
                )
    return matrices


def born_probabilities(rho, matrices):
    return np.array([max(0.0, float(np.real(np.trace(matrix @ rho.matrix)))) for matrix in matrices])


def projective_measure(rho, projectors, seed=None, rng=None):
    """
    Medição projetiva seletiva: sorteia k com p_k = Tr(Π_k ρ)

    Determinística dado ``seed``; um ``rng`` já criado pode ser passado
    para compartilhar o fluxo entre várias medições.
    """
    matrices = validate_measurement(projectors, rho.dim)
    rng = rng if rng is not None else make_rng(seed)

    probabilities = born_probabilities(rho, matrices)
    outcome = int(rng.choice(len(matrices), p=probabilities / probabilities.sum()))
    probability = float(probabilities[outcome])
    if probability <= 0:
        raise NumericalError("Resultado de probabilidade nula sorteado", code="zero-probability-outcome")

    projector = matrices[outcome]
    post = DensityOperator(projector @ rho.matrix @ projector / probability, rho.factor_dims)
    logger.debug(f"Medição projetiva: resultado {outcome} com p={probability:.6f}")
    return MeasurementRecord(outcome, probability, post, seed, tuple(probabilities.tolist()))


def nonselective_measure(rho, projectors):
    """
    Canal de medição médio Σ_k Π_k ρ Π_k
    """
    matrices = validate_measurement(projectors, rho.dim)
    return DensityOperator(sum(matrix @ rho.matrix @ matrix for matrix in matrices), rho.factor_dims)
