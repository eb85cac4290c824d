"""
Propriedades de aceitação - agent-hamiltonians
==============================================

Suíte executada pelo comando ``verify``: cada propriedade devolve
(aprovada, detalhe) e roda isolada, com falhas numéricas registradas
como reprovação.
"""

import logging
import math
import tempfile
import time
from itertools import product
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy.stats import unitary_group

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import AgentHamiltonianError, ValidationError
from agent_hamiltonians.models import Clause, GeneratorSpec, Literal, Side, TrajectoryRecord
from agent_hamiltonians.run_logging import audit_run
from classical_engine import (
    PhaseSpaceState,
    build_classical_generator,
    evolve_classical,
    liouville_jacobian,
    satisfying_assignments,
    spin_values,
)
from infogeo import (
    ParametrizedState,
    classical_fisher,
    quantum_fisher_information,
    relative_entropy,
    von_neumann_entropy,
)
from quantum_engine import (
    HistoryStateSpec,
    build_quantum_generator,
    feynman_kitaev,
    history_state,
    ising_minimum,
    tfim_hamiltonian,
)
from scenarios import (
    Couplings,
    Readout,
    ScenarioConfig,
    Timing,
    build_cagi_toy,
    build_qagi_toy,
    commutation_report,
    ensemble_offdiag,
    fit_decoherence_rate,
    run_parameter_sweep,
    run_scenario,
    run_seed_sweep,
)
from scenarios.serializers import write_trajectory
from tensor_core import DensityOperator, commutator_norm, exp_minus_iht, herm_eig, partial_trace
from tensor_core.operators import basis_vector, projector

logger = logging.getLogger(__name__)


class PropertyResult(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _random_density(dim, rng):
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = raw @ raw.conj().T
    return DensityOperator(rho / np.trace(rho).real)


def _random_phase_family(rng):
    """Estado puro aleatório de um qubit girado por G hermitiano aleatório; devolve (família, θ, 4·Var(G))"""
    psi = unitary_group.rvs(2, random_state=rng)[:, 0]
    raw = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    generator = (raw + raw.conj().T) / 2
    rho0 = np.outer(psi, psi.conj())

    def rotated(theta):
        unitary = exp_minus_iht(generator, theta[0])
        return unitary @ rho0 @ unitary.conj().T

    mean = np.vdot(psi, generator @ psi).real
    variance = np.vdot(psi, generator @ generator @ psi).real - mean**2
    return ParametrizedState(rotated, 1), float(rng.uniform(-1.0, 1.0)), 4.0 * variance


def symplectic_integrity(jobs=1):
    h = build_classical_generator(GeneratorSpec("recursion", "classical", {"mass": 1.0, "kappa_s": 1.0}))
    energy = evolve_classical(h, PhaseSpaceState([1.0], [0.0]), 1e-3, 10_000, keep_states=False).series("energy")
    drift = float(np.max(np.abs(energy - energy[0])) / energy[0])
    volume = abs(liouville_jacobian(h, PhaseSpaceState([0.4], [0.3]), 1e-3) - 1.0)
    return drift <= 1e-5 and volume <= 1e-6, f"deriva relativa {drift:.3e}, |det J - 1| {volume:.3e}"


def classical_commutativity(jobs=1):
    rng = np.random.default_rng(2)
    toys = {q_e: build_cagi_toy(ScenarioConfig("cagi-toy"), reader=lambda value=q_e: value) for q_e in (1.0, -1.0)}
    worst = 0.0
    for _ in range(100):
        toy = toys[rng.choice([1.0, -1.0])]
        theta = rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 2.0)
        state = PhaseSpaceState([rng.choice([-1.0, 1.0]), theta], rng.uniform(-1.0, 1.0, 2))
        worst = max(worst, commutation_report(toy.hamiltonian, Side.CLASSICAL, state).max_offdiagonal())
    return worst <= 1e-6, f"max |{{f, g}}| = {worst:.3e}"


def quantum_noncommutativity(jobs=1):
    terms = build_qagi_toy(ScenarioConfig("qagi-toy")).terms
    sensing = commutator_norm(terms["sensing"], terms["reasoning"])
    learning = commutator_norm(terms["learning_field"], terms["learning_coupling"])
    return sensing > 0.1 and learning > 0.0, f"‖[sensing, reasoning]‖ = {sensing:.4f}, ‖[gX, JZZ]‖ = {learning:.4f}"


def feynman_kitaev_ground(jobs=1):
    worst_energy, worst_overlap = 0.0, 1.0
    for steps, dim in product(range(1, 5), (2, 4)):
        unitaries = tuple(unitary_group.rvs(dim, random_state=31 * steps + k) for k in range(steps))
        psi0 = basis_vector(0, dim)
        final = psi0
        for unitary in unitaries:
            final = unitary @ final
        spec = HistoryStateSpec(unitaries, psi0, projector(final))
        eigenvalues, eigenvectors = herm_eig(feynman_kitaev(spec))
        worst_energy = max(worst_energy, abs(eigenvalues[0]))
        worst_overlap = min(worst_overlap, abs(np.vdot(history_state(spec), eigenvectors[:, 0])))
    passed = worst_energy <= 1e-9 and worst_overlap >= 1 - 1e-8
    return passed, f"E0 máx {worst_energy:.3e}, sobreposição mín {worst_overlap:.12f}"


def tfim_classical_limit(jobs=1):
    rng = np.random.default_rng(5)
    worst = 0.0
    for n in range(4, 9):
        for _ in range(4):
            couplings = np.triu(rng.normal(size=(n, n)), 1)
            ground = herm_eig(tfim_hamiltonian(n, couplings))[0][0]
            worst = max(worst, abs(ground - ising_minimum(couplings, n)))
    return worst <= 1e-10, f"20 instâncias, |E0 - min Ising| máx {worst:.3e}"


def _random_clauses(rng, n):
    clauses = []
    for _ in range(3):
        size = int(rng.integers(1, min(3, n) + 1))
        indices = rng.choice(n, size=size, replace=False)
        clauses.append(Clause.of(*(Literal(int(index), str(rng.choice([">", "<"]))) for index in indices)))
    return clauses


def reasoning_ground_space(jobs=1):
    rng = np.random.default_rng(8)
    for instance in range(10):
        n = int(rng.integers(2, 5))
        clauses = _random_clauses(rng, n)
        satisfying = set(satisfying_assignments(clauses, n))

        quantum = build_quantum_generator(GeneratorSpec("reasoning", "quantum", {"projectors": clauses, "n_qubits": n}))
        eigenvalues, eigenvectors = herm_eig(quantum)
        null = eigenvectors[:, eigenvalues <= settings.EIGEN_TOL]
        expected = np.zeros((2**n, 2**n))
        for bits in satisfying:
            index = int("".join(map(str, bits)), 2)
            expected[index, index] = 1.0
        if np.linalg.norm(null @ null.conj().T - expected) > 1e-9:
            return False, f"instância {instance}: núcleo quântico difere do conjunto satisfatório"

        classical = build_classical_generator(GeneratorSpec("reasoning", "classical", {"clauses": clauses}))
        for bits in product((0, 1), repeat=n):
            energy = classical.evaluate(PhaseSpaceState(spin_values(bits), np.zeros(n)), exact=True)
            if (energy == 0.0) != (bits in satisfying):
                return False, f"instância {instance}: penalidade clássica {energy} em {bits}"
    return True, "10 instâncias conferem com a enumeração"


def dephasing_rate_scaling(jobs=1):
    gamma = 0.35
    synthetic = TrajectoryRecord()
    for t in np.linspace(0.0, 5.0, 101):
        synthetic.record(t, offdiag_env_abs=0.5 * math.exp(-2 * gamma * t))
    recovered = fit_decoherence_rate(synthetic).rate
    synthetic_error = abs(recovered - 2 * gamma) / (2 * gamma)

    cfg = ScenarioConfig(
        "qagi-toy",
        couplings=Couplings(mu=0.0, g=0.0, J=0.0),
        readout=Readout(mode="nonselective"),
        metrics=["offdiag_env_abs"],
    )
    rates = [fit_decoherence_rate(trajectory).rate for _, trajectory in run_parameter_sweep(cfg, "kappa", [0.25, 0.5, 1.0], jobs)]
    ratios = [rates[1] / rates[0], rates[2] / rates[1]]
    passed = synthetic_error <= 1e-3 and all(abs(ratio - 4.0) <= 0.4 for ratio in ratios)
    return passed, f"erro sintético {synthetic_error:.2e}, razões {ratios[0]:.3f} e {ratios[1]:.3f}"


def information_geometry(jobs=1):
    rng = np.random.default_rng(13)
    for _ in range(10):
        rho, sigma = _random_density(3, rng), _random_density(3, rng)
        if relative_entropy(rho, sigma) < 0.0 or abs(relative_entropy(rho, rho)) > 1e-9:
            return False, "entropia relativa negativa ou não nula em ρ = σ"

    diagonal = ParametrizedState(lambda theta: np.diag([theta[0], 1.0 - theta[0]]), 1)
    fisher_gap = max(
        abs(quantum_fisher_information(diagonal, [theta]) - classical_fisher(lambda x: [x, 1.0 - x], theta))
        for theta in (0.2, 0.5, 0.7)
    )

    qfi_gap = 0.0
    for _ in range(10):
        family, theta, expected = _random_phase_family(rng)
        qfi_gap = max(qfi_gap, abs(quantum_fisher_information(family, [theta]) - expected) / max(1.0, expected))

    bell = DensityOperator.from_state_vector((basis_vector(0, 4) + basis_vector(3, 4)) / np.sqrt(2), [2, 2])
    entropy_gap = abs(von_neumann_entropy(partial_trace(bell, [0])) - math.log(2))

    passed = fisher_gap <= 1e-4 and qfi_gap <= 1e-3 and entropy_gap <= 1e-10
    return passed, f"|F_Q - F_C| {fisher_gap:.2e}, |F_Q - 4Var| {qfi_gap:.2e}, |S - ln 2| {entropy_gap:.2e}"


def trace_positivity(jobs=1):
    cfg = ScenarioConfig("qagi-toy", readout=Readout(mode="dephasing"), metrics=["offdiag_env_abs"])
    trajectory = run_scenario(cfg)
    trace_gap = max(abs(np.trace(state.matrix).real - 1.0) for state in trajectory.states)
    min_eigenvalue = min(state.eigenvalues()[0] for state in trajectory.states)
    return trace_gap <= 1e-7 and min_eigenvalue >= -1e-6, f"|Tr - 1| {trace_gap:.2e}, λ_min {min_eigenvalue:.2e}"


def back_action_asymmetry(jobs=1):
    seeds = range(100)
    # a não perturbação do CAGI independe da duração; o QAGI vai até t = 10
    cagi_cfg = ScenarioConfig("cagi-toy", timing=Timing(steps=50), metrics=["offdiag_env_abs"])
    cagi = run_seed_sweep(cagi_cfg, seeds, jobs)
    untouched = all(np.array_equal(t.states[-1].matrix, t.states[0].matrix) for t in cagi)

    qagi = run_seed_sweep(ScenarioConfig("qagi-toy", metrics=["offdiag_env_abs"]), seeds, jobs)
    initial, final = ensemble_offdiag(qagi, 0), ensemble_offdiag(qagi)
    passed = untouched and final <= 0.8 * initial
    return passed, f"CAGI intocado: {untouched}; |⟨0|ρ̄_E|1⟩| {initial:.4f} -> {final:.4f}"


def determinism(jobs=1):
    cfg = ScenarioConfig("qagi-toy", timing=Timing(steps=200), seed=7)
    with tempfile.TemporaryDirectory() as tmp:
        first, _ = write_trajectory(run_scenario(cfg), Path(tmp) / "a")
        second, _ = write_trajectory(run_scenario(cfg), Path(tmp) / "b")
        identical = first.read_bytes() == second.read_bytes()
    return identical, "CSV idênticos byte a byte" if identical else "CSV diferem entre execuções"


PROPERTIES = (
    (1, "symplectic-integrity", symplectic_integrity),
    (2, "classical-commutativity", classical_commutativity),
    (3, "quantum-noncommutativity", quantum_noncommutativity),
    (4, "feynman-kitaev-ground", feynman_kitaev_ground),
    (5, "tfim-classical-limit", tfim_classical_limit),
    (6, "reasoning-ground-space", reasoning_ground_space),
    (7, "dephasing-rate-scaling", dephasing_rate_scaling),
    (8, "information-geometry", information_geometry),
    (9, "trace-positivity", trace_positivity),
    (10, "back-action-asymmetry", back_action_asymmetry),
    (11, "determinism", determinism),
)


def run_property(number, name, check, jobs=1):
    start = time.perf_counter()
    try:
        passed, detail = check(jobs)
    except AgentHamiltonianError as exc:
        logger.warning(f"Propriedade {number} ({name}) falhou com {exc.code}: {exc}")
        passed, detail = False, f"{exc.code}: {exc}"
    return PropertyResult(number, name, bool(passed), detail, time.perf_counter() - start)


def run_acceptance(numbers=None, jobs=1):
    """
    Executa as propriedades selecionadas (todas por padrão), em ordem
    """
    selected = PROPERTIES
    if numbers:
        known = {number for number, _, _ in PROPERTIES}
        unknown = sorted(set(numbers) - known)
        if unknown:
            raise ValidationError(f"Propriedades inexistentes: {unknown}", field="property", choices=sorted(known))
        selected = [entry for entry in PROPERTIES if entry[0] in set(numbers)]

    results = []
    with audit_run("verify", properties=[number for number, _, _ in selected]) as audit:
        for number, name, check in selected:
            result = run_property(number, name, check, jobs)
            logger.info(f"{'PASS' if result.passed else 'FAIL'} {number} {name} ({result.seconds:.2f}s)")
            results.append(result)
        audit["failed"] = [result.number for result in results if not result.passed]
    return results
