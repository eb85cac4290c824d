"""
Agentes de brinquedo - agent-hamiltonians
=========================================

Montagem dos dois agentes de referência:

- QAGI: política de dois qubits (A1, A2), ponteiro m e ambiente E com
  H = κ(|1⟩⟨0|_m ⊗ Z_E + H.c.) + μ(I - Π) + g X_A1 + J Z_A1 Z_A2, em que
  Π = |0⟩⟨0|_m ⊗ |0⟩⟨0|_A1 impõe Z_m = Z_A1 = +1;
- CAGI: registros clássicos (q_m, θ) com penalidades suavizadas de cópia e
  lógica, perda λ|θ| e um atuador CTQ que escreve o bit de ação q_A = 1{θ>0}
  no qubit de ambiente.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from agent_hamiltonians.exceptions import DimensionError, ValidationError
from agent_hamiltonians.models import Literal
from classical_engine import ClassicalHamiltonian, HamiltonianTerm, PhaseSpaceState, build_classical_generator
from quantum_engine import LindbladModel, make_rng, projective_measure, reasoning_hamiltonian, sensing_hamiltonian
from tensor_core import DensityOperator, HermitianOperator, RegisterLayout, exp_minus_iht
from tensor_core.operators import X, Z, embed, embed_many, plus_state

from .models import ScenarioKind

logger = logging.getLogger(__name__)

P0 = np.diag([1.0, 0.0]).astype(np.complex128)
P1 = np.diag([0.0, 1.0]).astype(np.complex128)

QAGI_FACTORS = ("A1", "A2", "m", "E")
CAGI_LABELS = ("q_m", "theta")


def _require(cfg, kind):
    if cfg.scenario != kind:
        raise ValidationError(
            f"Configuração de {cfg.scenario.value} usada para montar {kind.value}",
            field="scenario",
            expected=kind.value,
        )


@dataclass(frozen=True)
class QagiToy:
    """
    Agente quântico montado: hamiltoniano total, termos nomeados e modelo de leitura
    """

    hamiltonian: HermitianOperator
    terms: dict
    layout: RegisterLayout
    lindblad: LindbladModel
    pointer_projectors: tuple
    initial_state: DensityOperator

    @property
    def policy_factors(self):
        return (self.layout.index("A1"), self.layout.index("A2"))

    @property
    def env_factor(self):
        return self.layout.index("E")

    def direction(self, coupling="g"):
        """∂H/∂g (X_A1) ou ∂H/∂J (Z_A1 Z_A2), direções da QFI da política"""
        dims = self.layout.dims
        a1, a2 = self.policy_factors
        if coupling == "g":
            return embed(X, a1, dims)
        if coupling == "J":
            return embed_many({a1: Z, a2: Z}, dims)
        raise ValidationError(f"Direção desconhecida: {coupling}", field="direction", choices=["J", "g"])


def build_qagi_toy(cfg):
    """
    Monta o agente QAGI de quatro qubits (A1, A2, m, E)

    O modelo de Lindblad acrescenta o defasamento do ponteiro √γ Z_m com
    γ = c·κ² (c = ``readout.dephasing_constant``). Estado inicial
    |0⟩_A1 |0⟩_A2 |0⟩_m |+⟩_E.
    """
    _require(cfg, ScenarioKind.QAGI)
    couplings = cfg.couplings
    layout = RegisterLayout.qubits(*QAGI_FACTORS)
    dims = layout.dims
    a1, a2, m, env = (layout.index(name) for name in QAGI_FACTORS)

    if couplings.mu < 0:
        raise ValidationError("Penalidade de raciocínio negativa", field="couplings.mu", value=couplings.mu)

    sensing = sensing_hamiltonian(couplings.kappa, Z, dims, pointer=m, env=env)
    if couplings.mu > 0:
        reasoning = reasoning_hamiltonian([embed_many({m: P0, a1: P0}, dims)], [couplings.mu])
    else:
        reasoning = HermitianOperator(np.zeros((layout.dim, layout.dim)))

    terms = {
        "sensing": sensing,
        "reasoning": reasoning,
        "learning_field": HermitianOperator(couplings.g * embed(X, a1, dims)),
        "learning_coupling": HermitianOperator(couplings.J * embed_many({a1: Z, a2: Z}, dims)),
    }
    hamiltonian = HermitianOperator(sum(term.matrix for term in terms.values()))

    rate = cfg.readout.dephasing_constant * couplings.kappa**2
    lindblad = LindbladModel(hamiltonian, ((embed(Z, m, dims), rate),))

    pointer_projectors = (embed(P0, m, dims), embed(P1, m, dims))
    zero = np.array([1.0, 0.0], dtype=np.complex128)
    initial = np.kron(np.kron(np.kron(zero, zero), zero), plus_state())

    logger.debug(f"QAGI montado: κ={couplings.kappa}, μ={couplings.mu}, g={couplings.g}, J={couplings.J}, γ={rate}")
    return QagiToy(
        hamiltonian=hamiltonian,
        terms=terms,
        layout=layout,
        lindblad=lindblad,
        pointer_projectors=pointer_projectors,
        initial_state=DensityOperator.from_state_vector(initial, dims),
    )


def action_bit(theta):
    """q_A = 1{θ > 0}"""
    return 1 if theta > 0 else 0


class ExternalReader:
    """
    Leitor QTC externo: mede Z_E numa cópia independente de ρ_E

    O ambiente acompanhado pelo agente nunca é tocado; cada leitura fica em
    ``readings`` para o log de eventos.
    """

    def __init__(self, rho_env, rng=None, seed=None):
        self.rho_env = rho_env
        self.rng = rng if rng is not None else make_rng(seed)
        self.readings = []

    def __call__(self):
        copy = DensityOperator(np.array(self.rho_env.matrix), self.rho_env.factor_dims)
        record = projective_measure(copy, (P0, P1), rng=self.rng)
        value = 1.0 if record.outcome_index == 0 else -1.0
        self.readings.append({"outcome": record.outcome_index, "probability": record.probability, "q_E": value})
        logger.debug(f"Leitor externo: q_E={value:+.0f} (p={record.probability:.6f})")
        return value


class CtqActuator:
    """
    Canal CTQ do CAGI: ρ_E ↦ e^{-iη(t)Δt q_A Z} ρ_E e^{iη(t)Δt q_A Z}
    """

    def __init__(self, couplings):
        self.couplings = couplings

    def apply(self, rho_env, theta, t, dt):
        eta = self.couplings.eta_at(t)
        q_a = action_bit(theta)
        if eta == 0 or q_a == 0:
            return rho_env
        unitary = exp_minus_iht(Z, eta * dt * q_a)
        return DensityOperator(unitary @ rho_env.matrix @ unitary.conj().T, rho_env.factor_dims)


@dataclass(frozen=True)
class CagiToy:
    hamiltonian: ClassicalHamiltonian
    actuator: CtqActuator
    q_e: float
    initial_env: DensityOperator
    clauses: tuple = ()
    meta: dict = field(default_factory=dict)

    def initial_state(self, theta):
        """Sensor copiado (q_m = q_E), peso θ e momentos nulos"""
        return PhaseSpaceState([self.q_e, float(theta)], [0.0, 0.0], CAGI_LABELS)


def _copy_term(kappa, q_e, sigma):
    # κ(1 - e^{-(q_m - q_E)²/2σ²}): zero exatamente quando o sensor copia q_E
    def energy(q, p, t):
        return kappa * (1.0 - np.exp(-((q[0] - q_e) ** 2) / (2 * sigma**2)))

    def grad_q(q, p, t):
        x = q[0] - q_e
        gradient = np.zeros(q.size)
        gradient[0] = kappa * x / sigma**2 * np.exp(-(x**2) / (2 * sigma**2))
        return gradient

    def grad_p(q, p, t):
        return np.zeros(p.size)

    return HamiltonianTerm("copy", energy, grad_q, grad_p)


def _actuator_term(couplings, q_e, sigma):
    # η(t)·q_A·q_E com q_A suavizado; Z_E avaliado pela leitura do agente
    def energy(q, p, t):
        return couplings.eta_at(t) * expit(q[1] / sigma) * q_e

    def exact(q, p, t):
        return couplings.eta_at(t) * action_bit(q[1]) * q_e

    def grad_q(q, p, t):
        s = expit(q[1] / sigma)
        gradient = np.zeros(q.size)
        gradient[1] = couplings.eta_at(t) * q_e * s * (1.0 - s) / sigma
        return gradient

    def grad_p(q, p, t):
        return np.zeros(p.size)

    return HamiltonianTerm("actuator", energy, grad_q, grad_p, exact=exact)


def build_cagi_toy(cfg, reader=None, clauses=None, rho_env=None):
    """
    Monta o agente CAGI sobre (q_m, θ) e o gancho do atuador CTQ

    ``reader`` fornece q_E ∈ {±1}; ``clauses`` substitui as cláusulas
    lógicas padrão (q_m > 0) e (θ > 0), satisfeitas juntas só quando o
    sensor lê +1 e a ação é 1.

    Erros:
        ValidationError: missing-reader ou q_E fora de {±1}
    """
    _require(cfg, ScenarioKind.CAGI)
    if reader is None:
        raise ValidationError("CAGI requer um leitor externo de q_E", code="missing-reader", field="reader")

    q_e = float(reader())
    if q_e not in (-1.0, 1.0):
        raise ValidationError(f"q_E deve ser ±1 (recebido {q_e})", field="q_E", value=q_e)

    couplings, sigma = cfg.couplings, cfg.smoothing
    if clauses is None:
        clauses = ([Literal(0, ">")], [Literal(1, ">")])
    clauses = tuple(clauses)

    logic = build_classical_generator(
        {
            "kind": "reasoning",
            "side": "classical",
            "params": {"clauses": list(clauses), "mu": couplings.mu, "sigma": sigma, "name": "logic"},
        }
    )
    learning = build_classical_generator(
        {
            "kind": "learning",
            "side": "classical",
            "params": {
                "loss": "absolute",
                "lambda": couplings.lam,
                "sigma": sigma,
                "masses": couplings.mass,
                "indices": [1],
                "name": "learning",
            },
        }
    )
    hamiltonian = ClassicalHamiltonian((_copy_term(couplings.kappa, q_e, sigma),)) + logic + learning
    hamiltonian = hamiltonian + ClassicalHamiltonian((_actuator_term(couplings, q_e, sigma),))

    if rho_env is None:
        rho_env = DensityOperator.from_state_vector(plus_state())
    logger.debug(f"CAGI montado: q_E={q_e:+.0f}, termos={hamiltonian.names}")
    return CagiToy(hamiltonian, CtqActuator(couplings), q_e, rho_env, clauses)


def build_custom_scenario(cfg):
    """
    Soma os geradores clássicos declarados e devolve (hamiltoniano, estado inicial)

    ``initial`` aceita listas ``q`` e ``p``; sem elas o estado parte da origem
    com a dimensão informada em ``initial["n"]`` (padrão 1).
    """
    _require(cfg, ScenarioKind.CUSTOM)
    hamiltonian = None
    for spec in cfg.generators:
        generator = build_classical_generator(spec)
        hamiltonian = generator if hamiltonian is None else hamiltonian + generator

    initial = cfg.initial or {}
    if "q" in initial:
        q = np.asarray(initial["q"], dtype=float)
        p = np.asarray(initial.get("p", np.zeros(q.size)), dtype=float)
        if p.size != q.size:
            raise DimensionError("initial.q e initial.p com tamanhos diferentes", left=int(q.size), right=int(p.size))
        state = PhaseSpaceState(q, p)
    else:
        state = PhaseSpaceState.zeros(int(initial.get("n", 1)))
    return hamiltonian, state
