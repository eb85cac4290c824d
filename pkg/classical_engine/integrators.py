"""
Integração simplética e observáveis do espaço de fase - agent-hamiltonians
==========================================================================

Passo de Störmer-Verlet (explícito para hamiltonianos separáveis, implícito
generalizado para termos acoplados q-p), colchete de Poisson numérico,
jacobiano de Liouville e evolução com registro de métricas.
"""

import logging

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ConvergenceError, NumericalError, ValidationError
from agent_hamiltonians.models import TrajectoryRecord
from agent_hamiltonians.validators import validate_positive, validate_positive_int
from infogeo import ProbabilityVector, shannon_entropy

from .models import PhaseSpaceState

logger = logging.getLogger(__name__)

STANDARD_METRICS = ("energy", "terms", "loss", "entropy")


def _check_finite(array, field):
    if not np.all(np.isfinite(array)):
        logger.warning(f"Gradiente não finito em {field}")
        raise NumericalError(f"Gradiente não finito em {field}", code="nonfinite", field=field)
    return array


def poisson_bracket(f, g, at, step=settings.POISSON_STEP):
    """
    {f, g} = Σ_i (∂f/∂q_i ∂g/∂p_i - ∂f/∂p_i ∂g/∂q_i) por diferenças centrais

    ``f`` e ``g`` recebem (q, p) e retornam escalares.
    """
    step = validate_positive(step, field="step")
    q, p = np.array(at.q, dtype=float), np.array(at.p, dtype=float)

    def partials(function):
        dq, dp = np.zeros(q.size), np.zeros(p.size)
        for i in range(q.size):
            forward, backward = q.copy(), q.copy()
            forward[i] += step
            backward[i] -= step
            dq[i] = (function(forward, p) - function(backward, p)) / (2 * step)

            forward, backward = p.copy(), p.copy()
            forward[i] += step
            backward[i] -= step
            dp[i] = (function(q, forward) - function(q, backward)) / (2 * step)
        return _check_finite(dq, "dq"), _check_finite(dp, "dp")

    f_q, f_p = partials(f)
    g_q, g_p = partials(g)
    return float(f_q @ g_p - f_p @ g_q)


def coordinate(index):
    """Observável q_i"""
    return lambda q, p: q[index]


def momentum(index):
    """Observável p_i"""
    return lambda q, p: p[index]


def _apply_constraints(h, q, p, dt):
    for index in h.reflecting:
        if q[index] < 0:
            q[index], p[index] = -q[index], -p[index]
    for index, gamma in h.damping:
        p[index] *= np.exp(-gamma * dt)
    return q, p


def _separable_step(h, q, p, dt, t):
    # kick - drift - kick
    p_half = p - dt / 2 * _check_finite(h.grad_q(q, p, t), "grad_q")
    q_next = q + dt * _check_finite(h.grad_p(q, p_half, t + dt / 2), "grad_p")
    p_next = p_half - dt / 2 * _check_finite(h.grad_q(q_next, p_half, t + dt), "grad_q")
    return q_next, p_next


def _fixed_point(update, start, field):
    current = start
    for _ in range(settings.IMPLICIT_MAX_ITERATIONS):
        following = _check_finite(update(current), field)
        if np.max(np.abs(following - current), initial=0.0) <= settings.IMPLICIT_TOLERANCE * max(
            1.0, float(np.max(np.abs(following), initial=0.0))
        ):
            return following
        current = following
    raise ConvergenceError(
        f"Iteração implícita de {field} não convergiu",
        field=field,
        iterations=settings.IMPLICIT_MAX_ITERATIONS,
    )


def _implicit_step(h, q, p, dt, t):
    # Störmer-Verlet generalizado (simplético para H(q, p) qualquer)
    t_half = t + dt / 2
    p_half = _fixed_point(lambda x: p - dt / 2 * h.grad_q(q, x, t_half), p, "p_half")
    drift = h.grad_p(q, p_half, t_half)
    q_next = _fixed_point(lambda x: q + dt / 2 * (drift + h.grad_p(x, p_half, t_half)), q, "q_next")
    p_next = p_half - dt / 2 * _check_finite(h.grad_q(q_next, p_half, t_half), "grad_q")
    return q_next, p_next


def leapfrog_step(h, s, dt, t=0.0):
    """
    Um passo de Störmer-Verlet de ``s`` por ``dt``

    Hamiltonianos separáveis usam o esquema explícito; termos com acoplamento
    q-p (sensoriamento) usam a forma implícita generalizada.
    """
    dt = validate_positive(dt, field="dt")
    q, p = np.array(s.q, dtype=float), np.array(s.p, dtype=float)
    if h.is_separable:
        q, p = _separable_step(h, q, p, dt, t)
    else:
        q, p = _implicit_step(h, q, p, dt, t)
    q, p = _apply_constraints(h, q, p, dt)
    return PhaseSpaceState(q, p, s.labels)


def explicit_euler_step(h, s, dt, t=0.0):
    """Euler explícito (não simplético), referência para o teste de Liouville"""
    dt = validate_positive(dt, field="dt")
    q, p = np.array(s.q, dtype=float), np.array(s.p, dtype=float)
    q_next = q + dt * _check_finite(h.grad_p(q, p, t), "grad_p")
    p_next = p - dt * _check_finite(h.grad_q(q, p, t), "grad_q")
    return PhaseSpaceState(q_next, p_next, s.labels)


def liouville_jacobian(h, s, dt, step_map=leapfrog_step, step=settings.JACOBIAN_STEP):
    """
    det ∂(q', p')/∂(q, p) do mapa de um passo, por diferenças centrais
    """
    dt = validate_positive(dt, field="dt")
    z = s.as_vector()
    columns = []
    for i in range(z.size):
        forward, backward = z.copy(), z.copy()
        forward[i] += step
        backward[i] -= step
        image_forward = step_map(h, PhaseSpaceState.from_vector(forward, s.labels), dt).as_vector()
        image_backward = step_map(h, PhaseSpaceState.from_vector(backward, s.labels), dt).as_vector()
        columns.append((image_forward - image_backward) / (2 * step))

    jacobian = np.column_stack(columns)
    determinant = float(np.linalg.det(jacobian))
    if not np.isfinite(determinant):
        raise NumericalError("Jacobiano não finito", code="nonfinite")
    return determinant


def _ensemble_entropy(ensemble, state):
    probabilities = ensemble(state) if callable(ensemble) else ensemble
    return shannon_entropy(ProbabilityVector(probabilities))


def evolve_classical(h, s0, dt, steps, record=("energy",), ensemble=None, t0=0.0, keep_states=True):
    """
    Evolui ``s0`` por ``steps`` passos de leapfrog registrando métricas

    Métricas: ``energy`` (total), ``terms`` (uma série ``energy_<termo>`` por
    termo), ``loss`` (perda do gerador de aprendizado) e ``entropy``
    (entropia de Shannon de ``ensemble(state)``). A amostra inicial é t0.
    """
    dt = validate_positive(dt, field="dt")
    steps = validate_positive_int(steps, field="steps")
    for name in record:
        if name not in STANDARD_METRICS:
            raise ValidationError(f"Métrica desconhecida: {name}", code="metric-unknown", metric=name)
    if "loss" in record and "loss" not in h.meta:
        raise ValidationError("Hamiltoniano sem perda registrada", code="metric-unknown", metric="loss")
    if "entropy" in record and ensemble is None:
        raise ValidationError("Entropia requer um ensemble", field="ensemble")

    def metrics(state, t):
        values = {}
        if "energy" in record:
            values["energy"] = h.evaluate(state, t)
        if "terms" in record:
            values.update({f"energy_{name}": value for name, value in h.term_energies(state, t).items()})
        if "loss" in record:
            values["loss"] = h.meta["loss"](state)
        if "entropy" in record:
            values["entropy"] = _ensemble_entropy(ensemble, state)
        return values

    trajectory = TrajectoryRecord(meta={"engine": "classical", "dt": dt, "steps": steps, "terms": h.names})
    state, t = s0, float(t0)
    trajectory.record(t, state if keep_states else None, **metrics(state, t))
    for k in range(steps):
        state = leapfrog_step(h, state, dt, t)
        t = t0 + (k + 1) * dt
        trajectory.record(t, state if keep_states else None, **metrics(state, t))

    logger.debug(f"Evolução clássica concluída: {steps} passos, dt={dt}")
    return trajectory.validate()
