"""
Catálogo de geradores clássicos - agent-hamiltonians
====================================================

Constrói ``ClassicalHamiltonian`` a partir de ``GeneratorSpec`` para
indução, raciocínio, recursão, aprendizado, sensoriamento e ambiente.
"""

import logging
from itertools import product

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ValidationError
from agent_hamiltonians.models import Clause, GeneratorKind, GeneratorSpec, Literal, Side
from agent_hamiltonians.validators import validate_positive, validate_positive_int

from .models import ClassicalHamiltonian, HamiltonianTerm

logger = logging.getLogger(__name__)

PREDICTORS = ("linear", "affine", "tanh")
LOSSES = ("quadratic", "absolute")


def _per_index(value, count, field, default):
    """Expande escalar para vetor e valida positividade (massas, penalidades)"""
    value = default if value is None else value
    values = np.broadcast_to(np.asarray(value, dtype=float), (count,)).copy()
    for entry in values:
        validate_positive(entry, field=field)
    return values


def _indices(spec, count, default_start=0):
    indices = spec.get("indices")
    if indices is None:
        return np.arange(default_start, default_start + count)
    indices = np.asarray(indices, dtype=int)
    if indices.size != count or np.any(indices < 0):
        raise ValidationError("Índices de coordenadas inválidos", field="indices", indices=indices.tolist())
    return indices


def _kinetic(p, indices, masses):
    return float(np.sum(p[indices] ** 2 / (2 * masses)))


def _kinetic_gradient(p, indices, masses):
    gradient = np.zeros(p.size)
    gradient[indices] = p[indices] / masses
    return gradient


def piecewise_schedule(pulses):
    """
    u(t) constante por partes a partir de (início, fim, amplitude); pulsos somam
    """
    pulses = [(float(start), float(stop), float(amplitude)) for start, stop, amplitude in (pulses or [])]
    for start, stop, _ in pulses:
        if stop < start:
            raise ValidationError("Pulso com fim anterior ao início", field="schedule", start=start, stop=stop)

    def schedule(t):
        return sum(amplitude for start, stop, amplitude in pulses if start <= t < stop)

    return schedule


def _build_induction(spec):
    data = [(np.atleast_1d(np.asarray(s, dtype=float)), float(r)) for s, r in spec.get("data")]
    if not data:
        raise ValidationError("Indução requer ao menos um dado", field="data")

    predictor = spec.get("predictor")
    if predictor not in PREDICTORS:
        raise ValidationError(f"Preditor desconhecido: {predictor!r}", field="predictor", choices=list(PREDICTORS))

    n_features = data[0][0].size
    n_theta = n_features + 1 if predictor == "affine" else n_features
    weights = _per_index(spec.get("weights"), len(data), "weights", 1.0)
    masses = _per_index(spec.get("masses"), n_theta, "masses", settings.DEFAULT_MASS)
    indices = _indices(spec, n_theta)

    def features(s):
        return np.append(s, 1.0) if predictor == "affine" else s

    def predict(theta, s):
        linear = float(theta @ features(s))
        return np.tanh(linear) if predictor == "tanh" else linear

    def predict_gradient(theta, s):
        if predictor == "tanh":
            return (1.0 - predict(theta, s) ** 2) * features(s)
        return features(s)

    def energy(q, p, t):
        theta = q[indices]
        error = sum(w / 2 * (predict(theta, s) - r) ** 2 for w, (s, r) in zip(weights, data))
        return error + _kinetic(p, indices, masses)

    def grad_q(q, p, t):
        theta = q[indices]
        gradient = np.zeros(q.size)
        for w, (s, r) in zip(weights, data):
            gradient[indices] += w * (predict(theta, s) - r) * predict_gradient(theta, s)
        return gradient

    def grad_p(q, p, t):
        return _kinetic_gradient(p, indices, masses)

    return HamiltonianTerm(spec.get("name", "induction"), energy, grad_q, grad_p)


def _as_clause(clause):
    """Cláusula pronta ou lista de literais (``Literal`` ou [índice, op, limiar])"""
    if isinstance(clause, Clause):
        return clause
    return Clause.of(*(literal if isinstance(literal, Literal) else Literal(*literal) for literal in clause))


def _build_reasoning(spec):
    clauses = tuple(_as_clause(clause) for clause in spec.get("clauses"))
    if not clauses:
        raise ValidationError("Raciocínio requer ao menos uma cláusula", field="clauses")

    penalties = _per_index(spec.get("mu"), len(clauses), "mu", settings.DEFAULT_PENALTY)
    sigma = validate_positive(spec.get("sigma", settings.DEFAULT_SMOOTHING), field="sigma")

    # μ_α(1 - φ_α): zero exatamente no conjunto satisfatório
    def energy(q, p, t):
        return float(sum(mu * (1.0 - clause.smooth(q, sigma)) for mu, clause in zip(penalties, clauses)))

    def exact(q, p, t):
        return float(sum(mu for mu, clause in zip(penalties, clauses) if not clause.exact(q)))

    def grad_q(q, p, t):
        gradient = np.zeros(q.size)
        for mu, clause in zip(penalties, clauses):
            gradient -= mu * clause.smooth_gradient(q, sigma)
        return gradient

    def grad_p(q, p, t):
        return np.zeros(p.size)

    return HamiltonianTerm(spec.get("name", "reasoning"), energy, grad_q, grad_p, exact=exact)


def _build_recursion(spec):
    mass = validate_positive(spec.get("mass", settings.DEFAULT_MASS), field="mass")
    stiffness = validate_positive(spec.get("kappa_s", 1.0), field="kappa_s")
    index = int(spec.get("index", 0))

    def energy(q, p, t):
        return p[index] ** 2 / (2 * mass) + stiffness * q[index] ** 2 / 2

    def grad_q(q, p, t):
        gradient = np.zeros(q.size)
        gradient[index] = stiffness * q[index]
        return gradient

    def grad_p(q, p, t):
        gradient = np.zeros(p.size)
        gradient[index] = p[index] / mass
        return gradient

    return HamiltonianTerm(spec.get("name", "recursion"), energy, grad_q, grad_p), (index,)


def smoothed_abs(x, sigma):
    """√(x² + σ²) - σ, suave e zero em 0"""
    return np.sqrt(x**2 + sigma**2) - sigma


def _build_learning(spec):
    loss = spec.get("loss")
    scale = validate_positive(spec.get("lambda", 1.0), field="lambda")
    sigma = validate_positive(spec.get("sigma", settings.DEFAULT_SMOOTHING), field="sigma")

    if callable(loss):
        dim = validate_positive_int(spec.get("dim", 1), field="dim")
        loss_function = loss
        loss_gradient = spec.get("loss_grad")
    elif loss == "quadratic":
        target = np.atleast_1d(np.asarray(spec.get("target", 0.0), dtype=float))
        dim = target.size

        def loss_function(theta):
            return float(np.sum((theta - target) ** 2) / 2)

        def loss_gradient(theta):
            return theta - target

    elif loss == "absolute":
        dim = validate_positive_int(spec.get("dim", 1), field="dim")

        def loss_function(theta):
            return float(np.sum(smoothed_abs(theta, sigma)))

        def loss_gradient(theta):
            return theta / np.sqrt(theta**2 + sigma**2)

    else:
        raise ValidationError(f"Perda desconhecida: {loss!r}", field="loss", choices=list(LOSSES))

    masses = _per_index(spec.get("masses"), dim, "masses", settings.DEFAULT_MASS)
    indices = _indices(spec, dim)

    def energy(q, p, t):
        return scale * loss_function(q[indices]) + _kinetic(p, indices, masses)

    def grad_q(q, p, t):
        gradient = np.zeros(q.size)
        gradient[indices] = scale * np.asarray(loss_gradient(q[indices]), dtype=float)
        return gradient

    def grad_p(q, p, t):
        return _kinetic_gradient(p, indices, masses)

    term = HamiltonianTerm(
        spec.get("name", "learning"),
        energy,
        grad_q if loss_gradient is not None else None,
        grad_p,
    )
    return term, indices, lambda state: scale * loss_function(state.q[indices])


def gaussian_kernel(x, sigma):
    """Gaussiana normalizada g_σ(x)"""
    return np.exp(-(x**2) / (2 * sigma**2)) / (sigma * np.sqrt(2 * np.pi))


def _build_sensing(spec):
    kappa = float(spec.get("kappa"))
    sigma = validate_positive(spec.get("sigma", settings.DEFAULT_SMOOTHING), field="sigma")
    sensor = int(spec.get("sensor_index", 0))
    env = int(spec.get("env_index", 1))
    if sensor == env:
        raise ValidationError("Sensor e ambiente devem ser coordenadas distintas", field="env_index")

    # κ·P·g_σ(q_sens - q_env), P conjugado a q_sens
    def energy(q, p, t):
        return kappa * p[sensor] * gaussian_kernel(q[sensor] - q[env], sigma)

    def grad_q(q, p, t):
        x = q[sensor] - q[env]
        derivative = -x / sigma**2 * gaussian_kernel(x, sigma)
        gradient = np.zeros(q.size)
        gradient[sensor] = kappa * p[sensor] * derivative
        gradient[env] = -kappa * p[sensor] * derivative
        return gradient

    def grad_p(q, p, t):
        gradient = np.zeros(p.size)
        gradient[sensor] = kappa * gaussian_kernel(q[sensor] - q[env], sigma)
        return gradient

    return HamiltonianTerm(spec.get("name", "sensing"), energy, grad_q, grad_p, separable=False)


def _build_environment(spec):
    omega = validate_positive(spec.get("omega", 1.0), field="omega")
    mass = validate_positive(spec.get("mass", settings.DEFAULT_MASS), field="mass")
    index = int(spec.get("index", 0))
    control = spec.get("control")
    control = control if callable(control) else piecewise_schedule(spec.get("schedule"))

    # H_E^bare - u(t)·F com F = ∇_q H_E^bare = m ω² q
    def energy(q, p, t):
        stiffness = mass * omega**2
        return p[index] ** 2 / (2 * mass) + stiffness * q[index] ** 2 / 2 - control(t) * stiffness * q[index]

    def grad_q(q, p, t):
        gradient = np.zeros(q.size)
        gradient[index] = mass * omega**2 * (q[index] - control(t))
        return gradient

    def grad_p(q, p, t):
        gradient = np.zeros(p.size)
        gradient[index] = p[index] / mass
        return gradient

    return HamiltonianTerm(spec.get("name", "environment"), energy, grad_q, grad_p)


def build_classical_generator(spec):
    """
    Constrói o hamiltoniano clássico descrito por ``spec``

    Erros:
        ValidationError: lado quântico, tipo sem realização, parâmetros
            ausentes ou massa/penalidade não positiva
    """
    if not isinstance(spec, GeneratorSpec):
        spec = GeneratorSpec(**spec)
    spec.require_side(Side.CLASSICAL)
    spec.validate()

    reflecting, damping, meta = (), (), {}
    if spec.kind == GeneratorKind.INDUCTION:
        term = _build_induction(spec)
    elif spec.kind == GeneratorKind.REASONING:
        term = _build_reasoning(spec)
    elif spec.kind == GeneratorKind.RECURSION:
        term, reflecting = _build_recursion(spec)
    elif spec.kind == GeneratorKind.LEARNING:
        term, indices, loss = _build_learning(spec)
        meta["loss"] = loss
        gamma = spec.get("damping")
        if gamma:
            gamma = validate_positive(gamma, field="damping")
            damping = tuple((int(i), gamma) for i in indices)
    elif spec.kind == GeneratorKind.SENSING:
        term = _build_sensing(spec)
    else:
        term = _build_environment(spec)

    logger.debug(f"Gerador clássico {spec.kind.value} construído ({term.name})")
    return ClassicalHamiltonian((term,), specs=(spec,), reflecting=reflecting, damping=damping, meta=meta)


def spin_values(bits):
    """Bits {0, 1} para coordenadas ±1"""
    return 2.0 * np.asarray(bits, dtype=float) - 1.0


def satisfying_assignments(clauses, n):
    """
    Enumera as atribuições de ``n`` bits que satisfazem todas as cláusulas
    (bit b avaliado na coordenada 2b - 1)
    """
    n = validate_positive_int(n, field="n")
    return [bits for bits in product((0, 1), repeat=n) if all(clause.exact(spin_values(bits)) for clause in clauses)]
