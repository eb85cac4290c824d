"""
Observáveis de geometria da informação - agent-hamiltonians
===========================================================

Entropias (em nats), divergências, fidelidade/Bures e informação de Fisher
clássica e quântica (derivada logarítmica simétrica).
"""

import logging
import math

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import INFINITE_COST, DimensionError
from agent_hamiltonians.validators import validate_positive, validate_unit_vector
from tensor_core import DensityOperator, herm_eig, hermitian_function

from .models import ProbabilityVector

logger = logging.getLogger(__name__)


def _density(rho):
    return rho if isinstance(rho, DensityOperator) else DensityOperator(rho)


def _probabilities(p):
    return p if isinstance(p, ProbabilityVector) else ProbabilityVector(p)


def _entropy_terms(values):
    values = np.asarray(values, dtype=float)
    values = values[values > 0]
    return float(-np.sum(values * np.log(values)))


def shannon_entropy(p):
    """-Σ p_i ln p_i com 0·ln 0 = 0"""
    return _entropy_terms(_probabilities(p).probs)


def von_neumann_entropy(rho):
    """-Tr ρ ln ρ pelos autovalores de ρ"""
    eigenvalues = np.clip(_density(rho).eigenvalues(), 0.0, None)
    return _entropy_terms(eigenvalues)


def kl_divergence(p, q):
    """
    Σ p_i ln(p_i/q_i); INFINITE_COST se p não está contido no suporte de q
    """
    p, q = _probabilities(p).probs, _probabilities(q).probs
    if p.size != q.size:
        raise DimensionError("Distribuições com tamanhos diferentes", left=int(p.size), right=int(q.size))

    support = p > settings.SUPPORT_TOL
    if np.any(q[support] <= settings.SUPPORT_TOL):
        return INFINITE_COST
    return max(0.0, float(np.sum(p[support] * np.log(p[support] / q[support]))))


def relative_entropy(rho, sigma, tol=settings.SUPPORT_TOL):
    """
    S(ρ‖σ) = Tr ρ (ln ρ - ln σ) em nats

    Autovalores abaixo de ``tol`` contam como zero; se supp(ρ) ⊄ supp(σ)
    retorna ``INFINITE_COST``.
    """
    rho, sigma = _density(rho), _density(sigma)
    if rho.dim != sigma.dim:
        raise DimensionError("Estados com dimensões diferentes", left=rho.dim, right=sigma.dim)

    rho_eigenvalues = rho.eigenvalues()
    sigma_eigenvalues, sigma_vectors = herm_eig(sigma.matrix)

    # peso de ρ em cada autovetor de σ
    weights = np.real(np.einsum("ij,ik,kj->j", sigma_vectors.conj(), rho.matrix, sigma_vectors))
    off_support = sigma_eigenvalues <= tol
    if np.any(weights[off_support] > tol):
        logger.debug("Entropia relativa infinita: suporte de ρ fora do suporte de σ")
        return INFINITE_COST

    positive = rho_eigenvalues[rho_eigenvalues > tol]
    value = float(np.sum(positive * np.log(positive))) - float(
        np.sum(weights[~off_support] * np.log(sigma_eigenvalues[~off_support]))
    )
    return max(0.0, value)


def psd_sqrt(matrix):
    """Raiz quadrada de matriz hermitiana semidefinida (autovalores negativos truncados em 0)"""
    return hermitian_function(matrix, lambda eigenvalues: np.sqrt(np.clip(eigenvalues, 0.0, None)))


def fidelity(rho, sigma):
    """
    F = (Tr √(√ρ σ √ρ))², em [0, 1]
    """
    rho, sigma = _density(rho), _density(sigma)
    if rho.dim != sigma.dim:
        raise DimensionError("Estados com dimensões diferentes", left=rho.dim, right=sigma.dim)

    root = psd_sqrt(rho.matrix)
    inner = root @ sigma.matrix @ root
    inner = (inner + inner.conj().T) / 2
    value = float(np.real(np.trace(psd_sqrt(inner)))) ** 2
    return min(1.0, max(0.0, value))


def bures_distance(rho, sigma):
    """√(2(1 - √F))"""
    return math.sqrt(max(0.0, 2.0 * (1.0 - math.sqrt(fidelity(rho, sigma)))))


def state_derivative(ps, theta, direction):
    """∂ρ ao longo de ``direction`` por diferenças centrais"""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    direction = validate_unit_vector(direction, field="direction")
    step = ps.perturbation
    forward = ps(theta + step * direction).matrix
    backward = ps(theta - step * direction).matrix
    return (forward - backward) / (2 * step)


def sld_fisher(rho, derivative, epsilon=settings.QFI_EPSILON):
    """
    F = 2 Σ_{λi+λj>ε} |⟨i|∂ρ|j⟩|² / (λi + λj) na base própria de ρ
    """
    rho = _density(rho)
    derivative = np.asarray(derivative, dtype=np.complex128)
    if derivative.shape != (rho.dim, rho.dim):
        raise DimensionError("Derivada com dimensão diferente do estado", shape=list(derivative.shape), dim=rho.dim)

    eigenvalues, eigenvectors = herm_eig(rho.matrix)
    elements = eigenvectors.conj().T @ derivative @ eigenvectors
    sums = eigenvalues[:, None] + eigenvalues[None, :]
    mask = sums > epsilon
    return float(2.0 * np.sum(np.abs(elements[mask]) ** 2 / sums[mask]))


def quantum_fisher_information(ps, theta, direction=(1.0,), epsilon=settings.QFI_EPSILON):
    """
    Informação de Fisher quântica via derivada logarítmica simétrica

    ∂ρ por diferenças centrais ao longo de ``direction``.
    """
    derivative = state_derivative(ps, theta, direction)
    return sld_fisher(ps(theta), derivative, epsilon)


def classical_fisher(p, theta, step=settings.FD_STEP):
    """
    Σ_i (∂θ p_i)² / p_i por diferenças centrais, ignorando p_i < 1e-12
    """
    step = validate_positive(step, field="step")
    center = _probabilities(p(theta)).probs
    forward = _probabilities(p(theta + step)).probs
    backward = _probabilities(p(theta - step)).probs

    derivative = (forward - backward) / (2 * step)
    support = center >= settings.SUPPORT_TOL
    return float(np.sum(derivative[support] ** 2 / center[support]))
