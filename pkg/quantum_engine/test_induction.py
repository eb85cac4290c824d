"""
Testes para indução quântica - agent-hamiltonians
=================================================
"""

import math
from unittest import TestCase

import numpy as np
import pytest

from agent_hamiltonians.exceptions import INFINITE_COST, ValidationError
from quantum_engine import bloch_parametrization, bloch_state, induction_cost, induction_gradient_flow
from quantum_engine.induction import disturbance_witness
from tensor_core import DensityOperator
from tensor_core.operators import plus_state


@pytest.mark.unit
@pytest.mark.quantum
class TestInductionCost(TestCase):
    """
    Testes para k_B T · S(ρ_D ‖ ρ_θ)
    """

    def test_estados_iguais(self):
        rho = DensityOperator(np.diag([0.3, 0.7]))
        for kbt in (0.1, 1.0, 4.0):
            self.assertAlmostEqual(induction_cost(rho, rho, kbt), 0.0, delta=1e-12)

    def test_caso_diagonal(self):
        data = DensityOperator(np.diag([0.9, 0.1]))
        model = DensityOperator.maximally_mixed(2)
        expected = 0.9 * math.log(0.9 / 0.5) + 0.1 * math.log(0.1 / 0.5)
        self.assertAlmostEqual(induction_cost(data, model), expected, delta=1e-12)
        self.assertAlmostEqual(induction_cost(data, model), 0.36802, delta=1e-3)

    def test_temperatura_reescala(self):
        data = DensityOperator(np.diag([0.9, 0.1]))
        model = DensityOperator.maximally_mixed(2)
        self.assertAlmostEqual(induction_cost(data, model, 2.5), 2.5 * induction_cost(data, model), delta=1e-12)

    def test_fora_do_suporte(self):
        data = DensityOperator.from_state_vector(plus_state())
        self.assertEqual(induction_cost(data, DensityOperator.basis(0, 2)), INFINITE_COST)

    def test_temperatura_invalida(self):
        rho = DensityOperator.maximally_mixed(2)
        with self.assertRaises(ValidationError):
            induction_cost(rho, rho, 0.0)

    def test_testemunha_de_perturbacao(self):
        mixed = DensityOperator.maximally_mixed(2)
        diagonal = DensityOperator(np.diag([0.8, 0.2]))
        self.assertAlmostEqual(disturbance_witness(diagonal, mixed), 0.0, delta=1e-12)
        self.assertGreater(disturbance_witness(bloch_state([1.0, 0.0, 0.0]), bloch_state([0.0, 0.0, 1.0])), 0.1)


@pytest.mark.unit
@pytest.mark.quantum
class TestInductionFlow(TestCase):
    """
    Testes para o fluxo de gradiente do custo de indução
    """

    def test_estado_de_bloch_posto_completo(self):
        rho = bloch_state([50.0, 0.0, 0.0])
        self.assertGreater(np.min(rho.eigenvalues()), 0.0)
        np.testing.assert_allclose(bloch_state([0.0, 0.0, 0.0]).matrix, np.eye(2) / 2)

    def test_converge_para_os_dados(self):
        data = DensityOperator(np.diag([0.9, 0.1]))
        trajectory = induction_gradient_flow(bloch_parametrization(), data, 1000, tolerance=1e-5)
        cost = trajectory.series("cost")
        self.assertLessEqual(len(trajectory), 1001)
        self.assertLessEqual(cost[-1], 1e-4)
        self.assertTrue(np.all(np.diff(cost) <= 0.0))

    def test_dados_fora_da_diagonal(self):
        data = bloch_state([0.4, -0.3, 0.2])
        trajectory = induction_gradient_flow(bloch_parametrization(), data, 1000, tolerance=1e-6)
        self.assertLessEqual(trajectory.series("cost")[-1], 1e-4)
        self.assertEqual(len(trajectory.meta["parameters"]), 3)

    def test_testemunha_registrada(self):
        data = bloch_state([0.0, 1.0, 0.0])
        trajectory = induction_gradient_flow(bloch_parametrization(), data, 5, x0=[0.0, 0.0, 1.0])
        disturbance = trajectory.series("disturbance")
        self.assertEqual(len(disturbance), len(trajectory))
        self.assertGreater(disturbance[0], 0.0)

    def test_numero_de_passos_invalido(self):
        data = DensityOperator.maximally_mixed(2)
        with self.assertRaises(ValidationError):
            induction_gradient_flow(bloch_parametrization(), data, 0)
