"""
Execução de cenários - agent-hamiltonians
=========================================

Alterna evolução e leituras do ponteiro (QAGI) ou passos de leapfrog e
atuação CTQ (CAGI), registrando por amostra as energias por termo, a
entropia e a coerência de ρ_E, a QFI da política e a marca de evento.
Varreduras por semente e por acoplamento rodam em processos independentes.
"""

import logging
import math
from multiprocessing import Pool

import numpy as np
from scipy.special import expit

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import NumericalError, ValidationError
from agent_hamiltonians.models import Side, TrajectoryRecord
from agent_hamiltonians.run_logging import audit_run
from agent_hamiltonians.validators import validate_positive_int
from classical_engine import leapfrog_step
from infogeo import classical_fisher, sld_fisher, von_neumann_entropy
from quantum_engine import LindbladModel, make_rng, nonselective_measure, projective_measure, rk4_step
from quantum_engine.dynamics import check_stability, validated_state
from tensor_core import DensityOperator, HermitianOperator, exp_minus_iht, partial_trace
from tensor_core.operators import plus_state

from .models import ReadoutMode, ScenarioKind
from .reports import commutation_report
from .toys import ExternalReader, build_cagi_toy, build_custom_scenario, build_qagi_toy

logger = logging.getLogger(__name__)


def _expectation(operator, matrix):
    return float(np.real(np.trace(operator @ matrix)))


def _offdiag(env):
    return abs(env.offdiagonal(0, 1))


class _Propagator:
    """
    Um passo de dt: U ρ U† (coerente) ou RK4 de Lindblad (defasamento contínuo)
    """

    def __init__(self, hamiltonian, dt, jumps=None):
        self.dt = dt
        if jumps is None:
            self.unitary = exp_minus_iht(hamiltonian, dt)
            self.adjoint = self.unitary.conj().T
            self.model = None
        else:
            self.model = LindbladModel(hamiltonian, jumps)
            check_stability(self.model, dt)

    def __call__(self, matrix):
        if self.model is None:
            return self.unitary @ matrix @ self.adjoint
        return rk4_step(self.model, matrix, self.dt)


def _condition(matrix, projector):
    # cópias deslocadas seguem o mesmo resultado sorteado para o estado principal
    projected = projector @ matrix @ projector
    weight = float(np.real(np.trace(projected)))
    if weight <= 0:
        raise NumericalError("Cópia deslocada sem peso no resultado medido", code="zero-probability-outcome")
    return projected / weight


def _qagi_sample(cfg, toy, matrix, shifted):
    dims = toy.layout.dims
    rho = DensityOperator(matrix, dims, check=False)
    env = partial_trace(rho, [toy.env_factor])

    values = {}
    if cfg.wants("energy"):
        values["energy_total"] = _expectation(toy.hamiltonian.matrix, matrix)
        for name, term in toy.terms.items():
            values[f"energy_{name}"] = _expectation(term.matrix, matrix)
    if cfg.wants("vn_entropy_env"):
        values["vn_entropy_env"] = von_neumann_entropy(env)
    if cfg.wants("offdiag_env_abs"):
        values["offdiag_env_abs"] = _offdiag(env)
    if shifted is not None:
        policy = partial_trace(rho, toy.policy_factors)
        forward, backward = (
            partial_trace(DensityOperator(copy, dims, check=False), toy.policy_factors).matrix for copy in shifted
        )
        values["qfi_policy"] = sld_fisher(policy, (forward - backward) / (2 * settings.FD_STEP))
    return values, env


def _run_qagi(cfg):
    toy = build_qagi_toy(cfg)
    dt, steps, readout = cfg.timing.dt, cfg.timing.steps, cfg.readout
    dims = toy.layout.dims
    rng = make_rng(cfg.seed)

    jumps = toy.lindblad.jump_operators if readout.mode == ReadoutMode.DEPHASING else None
    propagate = _Propagator(toy.hamiltonian, dt, jumps)

    # QFI ao longo de g: cópias com H ± h X_A1
    shifted, shifted_propagators = None, ()
    if cfg.wants("qfi_policy"):
        direction = settings.FD_STEP * toy.direction("g")
        shifted_propagators = tuple(
            _Propagator(HermitianOperator(toy.hamiltonian.matrix + sign * direction), dt, jumps) for sign in (1, -1)
        )
        shifted = [np.array(toy.initial_state.matrix), np.array(toy.initial_state.matrix)]

    trajectory = TrajectoryRecord(meta={"engine": "quantum", "factors": list(toy.layout.names)})
    matrix = np.array(toy.initial_state.matrix)
    values, env = _qagi_sample(cfg, toy, matrix, shifted)
    trajectory.record(0.0, env, **values, event_flag=0.0)

    measured = readout.mode in (ReadoutMode.PROJECTIVE, ReadoutMode.NONSELECTIVE)
    for k in range(1, steps + 1):
        t = k * dt
        matrix = propagate(matrix)
        if shifted is not None:
            shifted = [step(copy) for step, copy in zip(shifted_propagators, shifted)]
        if readout.mode == ReadoutMode.DEPHASING:
            state, _, _ = validated_state(matrix, dims, step=k)
            matrix = np.array(state.matrix)

        event_flag = 0.0
        if measured and k % readout.every == 0:
            matrix, shifted, event = _read_pointer(toy, matrix, shifted, readout.mode, rng)
            event.update(step=k, time=t)
            trajectory.events.append(event)
            event_flag = 1.0

        values, env = _qagi_sample(cfg, toy, matrix, shifted)
        trajectory.record(t, env, **values, event_flag=event_flag)

    logger.debug(f"QAGI: {steps} passos, {len(trajectory.events)} leituras ({readout.mode.value})")
    return trajectory


def _read_pointer(toy, matrix, shifted, mode, rng):
    """
    Lê o ponteiro; o evento guarda ⟨H⟩ antes e depois da leitura
    """
    hamiltonian = toy.hamiltonian.matrix
    energy_before = _expectation(hamiltonian, matrix)
    rho = DensityOperator(matrix, toy.layout.dims, check=False)

    if mode == ReadoutMode.PROJECTIVE:
        record = projective_measure(rho, toy.pointer_projectors, rng=rng)
        post = np.array(record.post_state.matrix)
        projector = toy.pointer_projectors[record.outcome_index]
        if shifted is not None:
            shifted = [_condition(copy, projector) for copy in shifted]
        outcome, probability, probabilities = record.outcome_index, record.probability, list(record.probabilities)
    else:
        post = np.array(nonselective_measure(rho, toy.pointer_projectors).matrix)
        if shifted is not None:
            shifted = [sum(p @ copy @ p for p in toy.pointer_projectors) for copy in shifted]
        outcome, probability = None, None
        probabilities = [_expectation(p, matrix) for p in toy.pointer_projectors]

    energy_after = _expectation(hamiltonian, post)
    event = {
        "mode": mode.value,
        "outcome": outcome,
        "probability": probability,
        "probabilities": probabilities,
        "energy_before": energy_before,
        "energy_after": energy_after,
        "energy_delta": energy_after - energy_before,
    }
    return post, shifted, event


def _cagi_setup(cfg):
    # a semente sorteia θ0 primeiro e depois alimenta o leitor externo
    rng = make_rng(cfg.seed)
    theta0 = float(rng.uniform(-1.0, 1.0))
    env = DensityOperator.from_state_vector(plus_state())
    reader = ExternalReader(env, rng=rng)
    toy = build_cagi_toy(cfg, reader=reader, rho_env=env)
    return toy, env, reader, theta0


def cagi_substeps(dt, sigma):
    """
    Passos internos de leapfrog por passo de ``dt``

    Os termos suavizados têm curvatura ~ 1/σ; o passo interno fica abaixo de
    ``settings.CAGI_SUBSTEP_RATIO · σ``.
    """
    return max(1, math.ceil(dt / (settings.CAGI_SUBSTEP_RATIO * sigma)))


def _run_cagi(cfg):
    dt, steps, sigma = cfg.timing.dt, cfg.timing.steps, cfg.smoothing
    substeps = cagi_substeps(dt, sigma)
    h = dt / substeps
    toy, env, reader, theta0 = _cagi_setup(cfg)
    hamiltonian = toy.hamiltonian
    state = toy.initial_state(theta0)

    def policy(theta):
        action = float(expit(theta / sigma))
        return [action, 1.0 - action]

    def sample(state, env, t):
        values = {}
        if cfg.wants("energy"):
            values["energy_total"] = hamiltonian.evaluate(state, t)
            values.update({f"energy_{name}": value for name, value in hamiltonian.term_energies(state, t).items()})
        if cfg.wants("vn_entropy_env"):
            values["vn_entropy_env"] = von_neumann_entropy(env)
        if cfg.wants("offdiag_env_abs"):
            values["offdiag_env_abs"] = _offdiag(env)
        if cfg.wants("qfi_policy"):
            values["qfi_policy"] = classical_fisher(policy, float(state.q[1]))
        return values

    trajectory = TrajectoryRecord(meta={"engine": "classical", "q_E": toy.q_e, "theta0": theta0, "substeps": substeps})
    trajectory.events.append({"mode": "external-reader", "step": 0, "time": 0.0, **reader.readings[-1]})
    trajectory.record(0.0, env, **sample(state, env, 0.0), event_flag=1.0)

    for k in range(steps):
        t = k * dt
        for j in range(substeps):
            state = leapfrog_step(hamiltonian, state, h, t + j * h)
        env = toy.actuator.apply(env, float(state.q[1]), t, dt)
        trajectory.record((k + 1) * dt, env, **sample(state, env, (k + 1) * dt), event_flag=0.0)

    trajectory.meta["final_phase_space"] = {"q": state.q.tolist(), "p": state.p.tolist()}
    return trajectory


def _run_custom(cfg):
    unsupported = sorted(set(cfg.metrics) - {"energy"})
    if unsupported:
        raise ValidationError(
            "Cenário custom registra apenas energias",
            code="metric-unknown",
            field="metrics",
            metrics=unsupported,
        )
    hamiltonian, state = build_custom_scenario(cfg)
    dt, steps = cfg.timing.dt, cfg.timing.steps

    def sample(state, t):
        values = {"energy_total": hamiltonian.evaluate(state, t)}
        values.update({f"energy_{name}": value for name, value in hamiltonian.term_energies(state, t).items()})
        return values

    trajectory = TrajectoryRecord(meta={"engine": "classical"})
    trajectory.record(0.0, **sample(state, 0.0), event_flag=0.0)
    for k in range(steps):
        state = leapfrog_step(hamiltonian, state, dt, k * dt)
        trajectory.record((k + 1) * dt, **sample(state, (k + 1) * dt), event_flag=0.0)
    trajectory.meta["final_phase_space"] = {"q": state.q.tolist(), "p": state.p.tolist()}
    return trajectory


def commutation_snapshot(cfg):
    """
    Matriz de comutação dos termos do cenário no estado inicial, sem evoluir
    """
    if cfg.scenario == ScenarioKind.QAGI:
        return commutation_report(build_qagi_toy(cfg).terms, Side.QUANTUM)
    if cfg.scenario == ScenarioKind.CAGI:
        toy, _, _, theta0 = _cagi_setup(cfg)
        return commutation_report(toy.hamiltonian, Side.CLASSICAL, toy.initial_state(theta0))
    hamiltonian, initial = build_custom_scenario(cfg)
    return commutation_report(hamiltonian, Side.CLASSICAL, initial)


RUNNERS = {
    ScenarioKind.QAGI: _run_qagi,
    ScenarioKind.CAGI: _run_cagi,
    ScenarioKind.CUSTOM: _run_custom,
}


def run_scenario(cfg):
    """
    Executa o cenário descrito por ``cfg`` e devolve a trajetória

    Determinística para a mesma configuração (semente incluída). ``meta``
    carrega o eco da configuração, a versão do código e o retrato da matriz
    de comutação dos termos.
    """
    with audit_run("simulate", scenario=cfg.scenario.value, seed=cfg.seed, steps=cfg.timing.steps) as audit:
        trajectory = RUNNERS[cfg.scenario](cfg)
        trajectory.meta.update(
            {
                "config": cfg.to_dict(),
                "code_version": settings.VERSION,
                "commutation": commutation_snapshot(cfg).to_dict(),
            }
        )
        audit["rows"] = len(trajectory)
        audit["events"] = len(trajectory.events)
    return trajectory.validate()


def _seed_of(trajectory):
    return trajectory.meta["config"]["seed"]


def ensemble_offdiag(trajectories, index=-1):
    """
    |⟨0|ρ̄_E|1⟩| do estado de ambiente médio sobre as trajetórias, na amostra ``index``
    """
    if not trajectories:
        raise ValidationError("Ensemble vazio", field="trajectories")
    average = np.mean([trajectory.states[index].matrix for trajectory in trajectories], axis=0)
    return float(abs(average[0, 1]))


def _map(function, items, jobs):
    jobs = validate_positive_int(jobs, field="jobs")
    if jobs == 1 or len(items) == 1:
        return [function(item) for item in items]
    with Pool(processes=min(jobs, len(items))) as pool:
        return pool.map(function, items)


def run_seed_sweep(cfg, seeds, jobs=1):
    """
    Uma execução por semente (fluxos independentes), ordenadas por semente
    """
    seeds = sorted({validate_positive_int(seed, field="seed", minimum=0) for seed in seeds})
    if not seeds:
        raise ValidationError("Varredura sem sementes", field="seeds")
    logger.info(f"Varredura de sementes: {len(seeds)} execuções, jobs={jobs}")
    trajectories = _map(run_scenario, [cfg.with_seed(seed) for seed in seeds], jobs)
    return sorted(trajectories, key=_seed_of)


def run_parameter_sweep(cfg, param, values, jobs=1):
    """
    Uma execução por valor do acoplamento ``param``; pares (valor, trajetória) na ordem de ``values``
    """
    values = [float(value) for value in values]
    if not values:
        raise ValidationError("Varredura sem valores", field="values")
    configs = [cfg.with_coupling(param, value) for value in values]
    logger.info(f"Varredura de {param}: {values} (jobs={jobs})")
    return list(zip(values, _map(run_scenario, configs, jobs)))
