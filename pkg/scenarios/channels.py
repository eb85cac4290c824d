"""
Canais entre registros - agent-hamiltonians
===========================================

Aplicação e composição de canais de Kraus, canais prontos (identidade de
bits, medição na base computacional, conjugação unitária, codificação de
bits) e classificação CTC/CTQ/QTC/QTQ com verificação operacional.
"""

import logging

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import DimensionError, ValidationError
from tensor_core import DensityOperator, as_complex_matrix, is_unitary

from .models import ChannelDescriptor, RegisterKind

logger = logging.getLogger(__name__)


def apply_channel(channel, rho):
    """
    ρ ↦ Σ_k K_k ρ K_k†
    """
    matrix = rho.matrix if isinstance(rho, DensityOperator) else as_complex_matrix(rho, field="rho")
    if matrix.shape != (channel.in_dim, channel.in_dim):
        raise DimensionError(
            f"Estado {matrix.shape} incompatível com canal de entrada {channel.in_dim}",
            shape=list(matrix.shape),
            in_dim=channel.in_dim,
        )
    output = sum(operator @ matrix @ operator.conj().T for operator in channel.kraus)
    return DensityOperator(output)


def compose_channels(second, first):
    """
    Canal ``second ∘ first`` (``first`` aplicado antes); Kraus K2_l K1_j
    """
    if first.out_dim != second.in_dim:
        raise DimensionError(
            "Canais com dimensões incompatíveis para composição",
            first_out=first.out_dim,
            second_in=second.in_dim,
        )
    kraus = tuple(k2 @ k1 for k1 in first.kraus for k2 in second.kraus)
    name = f"{second.name}∘{first.name}" if first.name and second.name else ""
    return ChannelDescriptor(first.input_kind, second.output_kind, kraus, name)


def identity_bits(n_bits=1):
    """Identidade sobre n bits clássicos (CTC)"""
    return ChannelDescriptor(RegisterKind.CLASSICAL, RegisterKind.CLASSICAL, (np.eye(2**n_bits),), "identity")


def basis_measurement(dim=2, unitary=None):
    """
    Medição ρ ↦ Σ ⟨b_i|ρ|b_i⟩ |i⟩⟨i| na base {b_i} (colunas de ``unitary``) (QTC)
    """
    basis = np.eye(dim) if unitary is None else as_complex_matrix(unitary, field="unitary")
    kraus = tuple(np.outer(np.eye(dim)[:, i], basis[:, i].conj()) for i in range(dim))
    return ChannelDescriptor(RegisterKind.QUANTUM, RegisterKind.CLASSICAL, kraus, "measure")


def unitary_channel(unitary):
    """ρ ↦ UρU† (QTQ)"""
    unitary = as_complex_matrix(unitary, field="unitary")
    if not is_unitary(unitary, settings.UNITARY_TOL):
        raise ValidationError("Canal unitário com operador não unitário", code="non-unitary")
    return ChannelDescriptor(RegisterKind.QUANTUM, RegisterKind.QUANTUM, (unitary,), "unitary")


def basis_encoding(dim=2, unitary=None):
    """
    Codificação do símbolo i no estado |b_i⟩⟨b_i| (CTQ)
    """
    basis = np.eye(dim) if unitary is None else as_complex_matrix(unitary, field="unitary")
    kraus = tuple(np.outer(basis[:, i], np.eye(dim)[:, i]) for i in range(dim))
    return ChannelDescriptor(RegisterKind.CLASSICAL, RegisterKind.QUANTUM, kraus, "encode")


def offdiagonal_error(matrix):
    """Maior |M_ij| fora da diagonal"""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix - np.diag(np.diag(matrix)))))


def classify_channel(channel):
    """
    Classifica o canal pelos tipos de entrada e saída

    Para saída clássica verifica que toda entrada da base computacional
    produz saída diagonal (tolerância 1e-9).
    """
    kind = channel.declared_kind
    if channel.output_kind == RegisterKind.CLASSICAL:
        for i in range(channel.in_dim):
            basis_state = np.zeros((channel.in_dim, channel.in_dim))
            basis_state[i, i] = 1.0
            error = offdiagonal_error(apply_channel(channel, basis_state).matrix)
            if error > settings.EIGEN_TOL:
                raise ValidationError(
                    f"Canal {channel.name or kind.value} gera coerências a partir de entrada clássica",
                    code="invariant-violation",
                    kind=kind.value,
                    input_index=i,
                    error=error,
                )

    logger.debug(f"Canal {channel.name or '<anônimo>'} classificado como {kind.value}")
    return kind

