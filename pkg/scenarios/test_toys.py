"""
Testes para os agentes de brinquedo - agent-hamiltonians
========================================================
"""

from itertools import permutations
from unittest import TestCase

import numpy as np
import pytest

from agent_hamiltonians.exceptions import ValidationError
from agent_hamiltonians.models import Literal
from classical_engine import PhaseSpaceState
from scenarios import (
    Couplings,
    CtqActuator,
    ExternalReader,
    ScenarioConfig,
    action_bit,
    build_cagi_toy,
    build_custom_scenario,
    build_qagi_toy,
)
from tensor_core import DensityOperator, commutator_norm, operator_norm, partial_trace
from tensor_core.operators import Z, plus_state


def qagi_config(**couplings):
    return ScenarioConfig("qagi-toy", couplings=Couplings(**couplings))


def cagi_config(sigma=0.05, **couplings):
    return ScenarioConfig("cagi-toy", couplings=Couplings(**couplings), smoothing=sigma)


def constant_reader(value):
    return lambda: value


@pytest.mark.unit
@pytest.mark.scenarios
class TestQagiToy(TestCase):
    """
    Testes para o agente QAGI de quatro qubits
    """

    def test_acoplamentos_nulos(self):
        toy = build_qagi_toy(qagi_config(kappa=0.0, mu=0.0, g=0.0, J=0.0))
        np.testing.assert_allclose(toy.hamiltonian.matrix, np.zeros((16, 16)), atol=1e-15)

    def test_apenas_sensoriamento(self):
        toy = build_qagi_toy(qagi_config(kappa=1.0, mu=0.0, g=0.0, J=0.0))
        self.assertAlmostEqual(operator_norm(toy.hamiltonian), 1.0, delta=1e-12)

        # suporte apenas em m ⊗ E: comuta com qualquer operador da política
        for site in (0, 1):
            for local in (Z, np.array([[0, 1], [1, 0]])):
                operands = [np.eye(2)] * 4
                operands[site] = local
                policy_operator = operands[0]
                for operand in operands[1:]:
                    policy_operator = np.kron(policy_operator, operand)
                self.assertLessEqual(commutator_norm(toy.hamiltonian, policy_operator), 1e-12)

    def test_sensoriamento_e_raciocinio_nao_comutam(self):
        toy = build_qagi_toy(qagi_config())
        self.assertGreater(commutator_norm(toy.terms["sensing"], toy.terms["reasoning"]), 0.1)
        self.assertGreater(commutator_norm(toy.terms["learning_field"], toy.terms["learning_coupling"]), 0.0)

    def test_hamiltoniano_e_soma_dos_termos(self):
        toy = build_qagi_toy(qagi_config())
        total = sum(term.matrix for term in toy.terms.values())
        np.testing.assert_allclose(toy.hamiltonian.matrix, total, atol=1e-15)

    def test_estado_inicial(self):
        toy = build_qagi_toy(qagi_config())
        env = partial_trace(toy.initial_state, [toy.env_factor])
        self.assertAlmostEqual(abs(env.offdiagonal(0, 1)), 0.5, delta=1e-12)
        policy = partial_trace(toy.initial_state, toy.policy_factors)
        self.assertAlmostEqual(policy.matrix[0, 0].real, 1.0, delta=1e-12)

    def test_taxa_de_defasamento(self):
        toy = build_qagi_toy(qagi_config(kappa=0.5))
        (_, rate), = toy.lindblad.jump_operators
        self.assertAlmostEqual(rate, 0.25, delta=1e-15)

    def test_penalidade_negativa(self):
        with self.assertRaises(ValidationError):
            build_qagi_toy(qagi_config(mu=-1.0))

    def test_cenario_errado(self):
        with self.assertRaises(ValidationError):
            build_qagi_toy(cagi_config())


@pytest.mark.unit
@pytest.mark.scenarios
class TestCagiToy(TestCase):
    """
    Testes para o agente CAGI e o atuador CTQ
    """

    def test_bit_de_acao(self):
        self.assertEqual(action_bit(1.0), 1)
        self.assertEqual(action_bit(-1.0), 0)
        self.assertEqual(action_bit(0.0), 0)

    def test_sem_leitor(self):
        with self.assertRaises(ValidationError) as ctx:
            build_cagi_toy(cagi_config())
        self.assertEqual(ctx.exception.code, "missing-reader")

    def test_leitura_invalida(self):
        with self.assertRaises(ValidationError):
            build_cagi_toy(cagi_config(), reader=constant_reader(0.3))

    def test_penalidades_nulas_quando_satisfeitas(self):
        toy = build_cagi_toy(cagi_config(), reader=constant_reader(1.0))
        state = toy.initial_state(1.0)
        energies = toy.hamiltonian.term_energies(state)
        self.assertEqual(energies["copy"], 0.0)
        self.assertAlmostEqual(energies["logic"], 0.0, delta=1e-6)
        self.assertEqual(toy.hamiltonian.term_energies(state, exact=True)["logic"], 0.0)

    def test_copia_violada(self):
        toy = build_cagi_toy(cagi_config(kappa=0.5), reader=constant_reader(-1.0))
        state = PhaseSpaceState([1.0, 1.0], [0.0, 0.0])
        self.assertAlmostEqual(toy.hamiltonian.term_energies(state)["copy"], 0.5, delta=1e-12)

    def test_ordem_das_clausulas(self):
        clauses = ([Literal(0, ">")], [Literal(1, ">")], [Literal(0, "<"), Literal(1, ">")])
        rng = np.random.default_rng(21)
        states = [PhaseSpaceState(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2)) for _ in range(20)]
        reference = build_cagi_toy(cagi_config(), reader=constant_reader(1.0), clauses=clauses).hamiltonian
        for order in permutations(clauses):
            hamiltonian = build_cagi_toy(cagi_config(), reader=constant_reader(1.0), clauses=order).hamiltonian
            for state in states:
                self.assertAlmostEqual(hamiltonian.evaluate(state), reference.evaluate(state), delta=1e-12)

    def test_atuador_desligado_preserva_ambiente(self):
        rho = DensityOperator.from_state_vector(plus_state())
        actuator = CtqActuator(Couplings())
        self.assertIs(actuator.apply(rho, 1.0, 0.0, 0.01), rho)

    def test_atuador_com_acao_nula(self):
        rho = DensityOperator.from_state_vector(plus_state())
        actuator = CtqActuator(Couplings(eta=[[0.0, 1.0, 2.0]]))
        self.assertIs(actuator.apply(rho, -1.0, 0.5, 0.01), rho)

    def test_atuador_gira_o_ambiente(self):
        rho = DensityOperator.from_state_vector(plus_state())
        actuator = CtqActuator(Couplings(eta=[[0.0, 1.0, 2.0]]))
        rotated = actuator.apply(rho, 1.0, 0.5, np.pi / 8)
        # e^{-iπ/4 Z} leva ⟨0|ρ|1⟩ = 1/2 a (1/2)e^{-iπ/2}
        self.assertAlmostEqual(rotated.offdiagonal(0, 1), -0.5j, delta=1e-12)
        np.testing.assert_allclose(np.diag(rotated.matrix), np.diag(rho.matrix), atol=1e-12)


@pytest.mark.unit
@pytest.mark.scenarios
class TestExternalReader(TestCase):
    """
    Testes para o leitor QTC externo
    """

    def test_nao_toca_o_ambiente(self):
        rho = DensityOperator.from_state_vector(plus_state())
        before = np.array(rho.matrix)
        reader = ExternalReader(rho, seed=5)
        values = [reader() for _ in range(10)]
        self.assertTrue(set(values) <= {1.0, -1.0})
        np.testing.assert_array_equal(rho.matrix, before)
        self.assertEqual(len(reader.readings), 10)

    def test_estado_da_base_determinado(self):
        reader = ExternalReader(DensityOperator.basis(1, 2), seed=0)
        self.assertEqual(reader(), -1.0)

    def test_reprodutivel(self):
        rho = DensityOperator.from_state_vector(plus_state())
        first, second = ExternalReader(rho, seed=11), ExternalReader(rho, seed=11)
        self.assertEqual([first() for _ in range(8)], [second() for _ in range(8)])


@pytest.mark.unit
@pytest.mark.scenarios
class TestCustomScenario(TestCase):
    """
    Testes para cenários montados por geradores declarados
    """

    def test_soma_de_geradores(self):
        cfg = ScenarioConfig(
            "custom",
            generators=[
                {"kind": "recursion", "side": "classical", "params": {"index": 0}},
                {"kind": "learning", "side": "classical", "params": {"loss": "quadratic", "indices": [1]}},
            ],
            initial={"q": [1.0, 2.0], "p": [0.0, 0.0]},
        )
        hamiltonian, state = build_custom_scenario(cfg)
        self.assertEqual(hamiltonian.names, ["recursion", "learning"])
        self.assertAlmostEqual(hamiltonian.evaluate(state), 0.5 + 2.0, delta=1e-12)

    def test_estado_inicial_padrao(self):
        cfg = ScenarioConfig("custom", generators=[{"kind": "recursion", "side": "classical"}])
        _, state = build_custom_scenario(cfg)
        self.assertEqual(state.n, 1)
