"""
Operações do núcleo tensorial - agent-hamiltonians
==================================================

Produto de Kronecker, traço parcial, autodecomposição hermitiana,
exponencial unitária e comutadores. Funções puras sobre valores imutáveis.
"""

import logging
from functools import reduce

import numpy as np
import scipy.linalg as la

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ConvergenceError, DimensionError, ValidationError

from .models import DensityOperator, HermitianOperator, as_complex_matrix

logger = logging.getLogger(__name__)


def _as_array(operand, field="matrix"):
    if isinstance(operand, (HermitianOperator, DensityOperator)):
        return operand.matrix
    return as_complex_matrix(operand, field=field)


def kron(a, b):
    """
    Produto de Kronecker padrão; dimensões se multiplicam
    """
    left, right = _as_array(a, "a"), _as_array(b, "b")
    rows = left.shape[0] * right.shape[0]
    cols = left.shape[1] * right.shape[1]
    if rows * cols > settings.ENTRY_CAP:
        raise DimensionError(
            f"Produto {rows}x{cols} excede o limite de entradas",
            code="dimension-cap-exceeded",
            rows=rows,
            cols=cols,
        )
    result = np.kron(left, right)
    result.flags.writeable = False
    return result


def kron_all(*operands):
    """Produto de Kronecker de vários operandos, da esquerda para a direita"""
    if not operands:
        raise ValidationError("kron_all requer ao menos um operando", field="operands")
    return reduce(kron, operands[1:], _as_array(operands[0]))


def partial_trace(rho, keep):
    """
    Traço parcial mantendo os fatores em ``keep`` (na ordem original)
    """
    dims = list(rho.factor_dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or any(k < 0 or k >= len(dims) for k in keep):
        raise ValidationError(
            f"Índices de fator inválidos: {keep} para {len(dims)} fatores",
            code="invalid-factor-index",
            keep=keep,
            factor_dims=dims,
        )
    if len(keep) == len(dims):
        return rho

    n = len(dims)
    tensor = np.asarray(rho.matrix).reshape(dims + dims)

    # traça fatores do último para o primeiro para manter os eixos válidos
    current = n
    for index in reversed(range(n)):
        if index in keep:
            continue
        tensor = np.trace(tensor, axis1=index, axis2=index + current)
        current -= 1

    kept_dims = [dims[k] for k in keep]
    dim = int(np.prod(kept_dims))
    return DensityOperator(tensor.reshape(dim, dim), kept_dims)


def herm_eig(h):
    """
    Autovalores crescentes e autovetores (colunas) de um operador hermitiano
    """
    matrix = h.matrix if isinstance(h, HermitianOperator) else HermitianOperator(h).matrix
    if matrix.shape[0] > settings.DIMENSION_CAP:
        raise DimensionError(
            f"Dimensão {matrix.shape[0]} acima do limite {settings.DIMENSION_CAP}",
            code="dimension-cap-exceeded",
            dim=matrix.shape[0],
        )
    try:
        eigenvalues, eigenvectors = la.eigh(matrix)
    except la.LinAlgError as exc:
        logger.warning(f"eigh não convergiu para dim={matrix.shape[0]}: {exc}")
        raise ConvergenceError(str(exc), dim=matrix.shape[0])
    return eigenvalues, eigenvectors


def hermitian_function(h, function):
    """
    Aplica ``function`` aos autovalores: V f(λ) V†
    """
    eigenvalues, eigenvectors = herm_eig(h)
    return (eigenvectors * function(eigenvalues)) @ eigenvectors.conj().T


def exp_minus_iht(h, t):
    """
    U = exp(-i H t) via autodecomposição (ħ = 1)
    """
    return hermitian_function(h, lambda eigenvalues: np.exp(-1j * eigenvalues * float(t)))


def commutator(a, b):
    """
    [A, B] = AB - BA
    """
    left, right = _as_array(a, "a"), _as_array(b, "b")
    if left.shape != right.shape:
        raise DimensionError(
            "Comutador de operadores com dimensões diferentes",
            left=list(left.shape),
            right=list(right.shape),
        )
    return left @ right - right @ left


def commutator_norm(a, b):
    """Norma de Frobenius de [A, B]"""
    return float(np.linalg.norm(commutator(a, b), "fro"))


def operator_norm(a):
    """Norma espectral (maior valor singular)"""
    return float(np.linalg.norm(_as_array(a), 2))


def is_unitary(u, tol=settings.UNITARY_TOL):
    matrix = _as_array(u)
    if matrix.shape[0] != matrix.shape[1]:
        return False
    return bool(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))) <= tol)


def is_projector(p, tol=settings.PROJECTOR_TOL):
    matrix = _as_array(p)
    if matrix.shape[0] != matrix.shape[1]:
        return False
    return bool(np.max(np.abs(matrix @ matrix - matrix)) <= tol and np.max(np.abs(matrix - matrix.conj().T)) <= tol)
