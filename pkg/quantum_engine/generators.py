"""
Catálogo de geradores quânticos - agent-hamiltonians
====================================================

Raciocínio (penalidades de projetores), recursão (relógio de
Feynman-Kitaev), aprendizado (Ising com campo transverso), sensoriamento
(ponteiro-ambiente) e ambiente com controle.
"""

import logging
from itertools import product

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import DimensionError, ValidationError
from agent_hamiltonians.models import Clause, GeneratorKind, GeneratorSpec, Side
from agent_hamiltonians.validators import validate_positive_int
from tensor_core import HermitianOperator, is_projector, kron, kron_all
from tensor_core.operators import RAISE, X, Z, embed, embed_many

logger = logging.getLogger(__name__)

MAX_QUBITS = 10


def _hermitian(operator, field):
    if isinstance(operator, HermitianOperator):
        return operator
    try:
        return HermitianOperator(operator)
    except ValidationError as exc:
        raise ValidationError(f"{field} não é hermitiano", code=exc.code, field=field)


def clause_projector(clause, n_qubits):
    """
    Projetor diagonal sobre as bases computacionais que satisfazem a cláusula

    O qubit 0 é o mais significativo; o literal ``>`` é satisfeito pelo bit 1.
    """
    n_qubits = validate_positive_int(n_qubits, field="n_qubits")
    for literal in clause.literals:
        if literal.index >= n_qubits:
            raise ValidationError("Literal fora do registro", code="invalid-factor-index", index=literal.index)

    diagonal = [
        1.0 if any(bits[literal.index] == literal.satisfying_bit for literal in clause.literals) else 0.0
        for bits in product((0, 1), repeat=n_qubits)
    ]
    return HermitianOperator(np.diag(diagonal))


def reasoning_hamiltonian(projectors, mu=None):
    """Σ_α μ_α (I - Π_α)"""
    projectors = [_hermitian(p, "projector") for p in projectors]
    if not projectors:
        raise ValidationError("Raciocínio requer ao menos um projetor", field="projectors")

    dim = projectors[0].dim
    penalties = np.broadcast_to(np.asarray(settings.DEFAULT_PENALTY if mu is None else mu, dtype=float), (len(projectors),))
    total = np.zeros((dim, dim), dtype=np.complex128)
    for k, (projector, penalty) in enumerate(zip(projectors, penalties)):
        if projector.dim != dim:
            raise DimensionError("Projetores com dimensões diferentes", index=k)
        if not is_projector(projector):
            raise ValidationError(f"Operador {k} não é um projetor", code="non-projector", index=k)
        if penalty <= 0:
            raise ValidationError("Penalidade deve ser positiva", field="mu", value=float(penalty))
        total += penalty * (np.eye(dim) - projector.matrix)
    return HermitianOperator(total)


def coupling_items(couplings, n_qubits):
    """
    Normaliza acoplamentos (dict {(l, l'): J} ou matriz) para [(l, l', J)] com l < l'
    """
    if isinstance(couplings, dict):
        items = []
        for (left, right), value in couplings.items():
            left, right = sorted((int(left), int(right)))
            if left == right or right >= n_qubits or left < 0:
                raise ValidationError("Par de acoplamento inválido", code="invalid-factor-index", pair=[left, right])
            items.append((left, right, float(value)))
        return items

    matrix = np.asarray(couplings, dtype=float)
    if matrix.shape != (n_qubits, n_qubits):
        raise DimensionError("Matriz de acoplamentos com forma inválida", shape=list(matrix.shape))
    return [(i, j, float(matrix[i, j])) for i in range(n_qubits) for j in range(i + 1, n_qubits) if matrix[i, j] != 0]


def tfim_hamiltonian(n_qubits, couplings, fields=0.0):
    """
    -Σ_{l<l'} J_{ll'} Z_l Z_l' - Σ_l g_l X_l
    """
    n_qubits = validate_positive_int(n_qubits, field="n_qubits")
    if n_qubits > MAX_QUBITS:
        raise DimensionError(f"No máximo {MAX_QUBITS} qubits", code="dimension-cap-exceeded", n_qubits=n_qubits)

    dims = [2] * n_qubits
    total = np.zeros((2**n_qubits, 2**n_qubits), dtype=np.complex128)
    for left, right, value in coupling_items(couplings, n_qubits):
        total -= value * embed_many({left: Z, right: Z}, dims)

    fields = np.broadcast_to(np.asarray(fields, dtype=float), (n_qubits,))
    for site, field_value in enumerate(fields):
        if field_value != 0:
            total -= field_value * embed(X, site, dims)
    return HermitianOperator(total)


def ising_minimum(couplings, n_qubits):
    """
    Mínimo de -Σ J z_l z_l' sobre z ∈ {±1}^n por enumeração
    """
    items = coupling_items(couplings, n_qubits)
    best = np.inf
    for spins in product((1.0, -1.0), repeat=n_qubits):
        energy = -sum(value * spins[left] * spins[right] for left, right, value in items)
        best = min(best, energy)
    return float(best)


def sensing_hamiltonian(kappa, observable, dims=None, pointer=0, env=1):
    """
    κ(|1⟩⟨0|_m ⊗ O_E + H.c.) no registro ``dims`` (padrão: ponteiro ⊗ ambiente)
    """
    observable = _hermitian(observable, "observable")
    if dims is None:
        raising = kron(RAISE, observable.matrix)
    else:
        dims = list(dims)
        if dims[pointer] != 2 or dims[env] != observable.dim or pointer == env:
            raise ValidationError("Layout incompatível com ponteiro/ambiente", code="invalid-factor-index")
        raising = embed_many({pointer: RAISE, env: observable.matrix}, dims)
    return HermitianOperator(float(kappa) * (raising + raising.conj().T))


def environment_hamiltonian(bare, drives=(), control=0.0, agent_dim=1):
    """
    H_E^bare ⊗ I_A - u(t)·(A_E ⊗ I_A + H.c.)
    """
    bare = _hermitian(bare, "bare")
    if isinstance(drives, (np.ndarray, HermitianOperator)) or (drives and np.ndim(drives[0]) == 1):
        drives = [drives]
    drives = list(drives)

    controls = np.broadcast_to(np.asarray(control, dtype=float), (len(drives),)) if drives else []
    identity = np.eye(int(agent_dim))
    total = kron(bare.matrix, identity).copy()
    for drive, u in zip(drives, controls):
        matrix = drive.matrix if isinstance(drive, HermitianOperator) else np.asarray(drive, dtype=np.complex128)
        if matrix.shape != (bare.dim, bare.dim):
            raise DimensionError("Operador de acionamento incompatível com o ambiente", shape=list(matrix.shape))
        lifted = kron(matrix, identity)
        total -= u * (lifted + lifted.conj().T)
    return HermitianOperator(total)


def _clock_projector(size, i, j):
    matrix = np.zeros((size, size))
    matrix[i, j] = 1.0
    return matrix


def feynman_kitaev(spec, completed=True):
    """
    Hamiltoniano de relógio sobre relógio ⊗ dados

    Com ``completed`` usa o termo de propagação completo
    ½(|t⟩⟨t| + |t+1⟩⟨t+1|) ⊗ I - ½(|t+1⟩⟨t| ⊗ U_t + H.c.), cujo estado
    fundamental é o estado de histórico; caso contrário usa apenas os saltos.
    """
    steps, data_dim = spec.steps, spec.data_dim
    clock = steps + 1
    identity = np.eye(data_dim)
    total = np.zeros((clock * data_dim, clock * data_dim), dtype=np.complex128)

    for t, unitary in enumerate(spec.unitaries):
        hop = kron(_clock_projector(clock, t + 1, t), unitary)
        if completed:
            diagonal = _clock_projector(clock, t, t) + _clock_projector(clock, t + 1, t + 1)
            total += 0.5 * kron(diagonal, identity) - 0.5 * (hop + hop.conj().T)
        else:
            total += hop + hop.conj().T

    psi0 = spec.initial_state
    total += kron(_clock_projector(clock, 0, 0), identity - np.outer(psi0, psi0.conj()))
    total += kron(_clock_projector(clock, steps, steps), identity - spec.halt_projector.matrix)
    return HermitianOperator(total)


def history_state(spec):
    """
    |Ψ_hist⟩ = Σ_t |t⟩ ⊗ (Π_{s<t} U_s)|ψ₀⟩ / √(L+1)
    """
    clock = spec.steps + 1
    parts = [kron_all(np.eye(clock)[:, [t]], spec.partial_output(t).reshape(-1, 1)) for t in range(clock)]
    return np.asarray(sum(parts)).ravel() / np.sqrt(clock)


def _build_reasoning(spec):
    n_qubits = spec.get("n_qubits")
    projectors = []
    for item in spec.get("projectors"):
        if isinstance(item, Clause):
            if n_qubits is None:
                raise ValidationError("Cláusulas requerem n_qubits", code="missing-parameter", missing=["n_qubits"])
            item = clause_projector(item, n_qubits)
        projectors.append(item)
    return reasoning_hamiltonian(projectors, spec.get("mu"))


def build_quantum_generator(spec):
    """
    Constrói o operador hermitiano descrito por ``spec``

    Erros:
        ValidationError: unknown-kind (inclusive indução, que é um funcional
            de custo e não um operador), missing-parameter, non-projector,
            non-hermitian
    """
    if not isinstance(spec, GeneratorSpec):
        spec = GeneratorSpec(**spec)
    spec.require_side(Side.QUANTUM)
    spec.validate()

    if spec.kind == GeneratorKind.REASONING:
        operator = _build_reasoning(spec)
    elif spec.kind == GeneratorKind.RECURSION:
        operator = feynman_kitaev(spec.get("history"), completed=spec.get("completed", True))
    elif spec.kind == GeneratorKind.LEARNING:
        operator = tfim_hamiltonian(spec.get("n_qubits"), spec.get("couplings"), spec.get("fields", 0.0))
    elif spec.kind == GeneratorKind.SENSING:
        operator = sensing_hamiltonian(
            spec.get("kappa"),
            spec.get("observable"),
            dims=spec.get("dims"),
            pointer=spec.get("pointer", 0),
            env=spec.get("env", 1),
        )
    else:
        control = spec.get("control", 0.0)
        if callable(control):
            control = control(spec.get("t", 0.0))
        operator = environment_hamiltonian(
            spec.get("bare"),
            spec.get("drives", ()),
            control=control,
            agent_dim=spec.get("agent_dim", 1),
        )

    logger.debug(f"Gerador quântico {spec.kind.value} construído (dim={operator.dim})")
    return operator
