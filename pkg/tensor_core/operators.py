"""
Operadores de uso comum - agent-hamiltonians
============================================
"""

import numpy as np

from agent_hamiltonians.exceptions import ValidationError

from .models import HermitianOperator
from .operations import kron_all

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

for _pauli in (I2, X, Y, Z):
    _pauli.flags.writeable = False

# |1⟩⟨0|
RAISE = np.array([[0, 0], [1, 0]], dtype=np.complex128)
RAISE.flags.writeable = False


def basis_vector(index, dim):
    vector = np.zeros(dim, dtype=np.complex128)
    vector[index] = 1.0
    return vector


def plus_state():
    return np.array([1, 1], dtype=np.complex128) / np.sqrt(2)


def projector(vector):
    """|ψ⟩⟨ψ| para ψ normalizado"""
    psi = np.asarray(vector, dtype=np.complex128).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValidationError("Projetor de vetor nulo", field="vector")
    psi = psi / norm
    return np.outer(psi, psi.conj())


def embed(local, factor, dims):
    """
    Eleva um operador local no fator ``factor`` ao registro inteiro
    """
    dims = list(dims)
    if factor < 0 or factor >= len(dims):
        raise ValidationError(f"Fator {factor} fora do registro", code="invalid-factor-index", factor=factor)

    local = np.asarray(local, dtype=np.complex128)
    if local.shape != (dims[factor], dims[factor]):
        raise ValidationError(
            f"Operador local {local.shape} incompatível com fator de dimensão {dims[factor]}",
            field="local",
        )
    operands = [np.eye(d) for d in dims]
    operands[factor] = local
    return kron_all(*operands)


def embed_many(locals_by_factor, dims):
    """Produto de operadores locais em fatores distintos"""
    operands = [np.eye(d) for d in dims]
    for factor, local in locals_by_factor.items():
        operands[factor] = np.asarray(local, dtype=np.complex128)
    return kron_all(*operands)


def pauli_operator(local, site, n_qubits):
    return HermitianOperator(embed(local, site, [2] * n_qubits))
