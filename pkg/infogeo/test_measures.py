"""
Testes para observáveis de geometria da informação - agent-hamiltonians
=======================================================================
"""

import math
from unittest import TestCase

import numpy as np
import pytest
from scipy.stats import unitary_group

from agent_hamiltonians.exceptions import INFINITE_COST, DimensionError, ValidationError
from infogeo import (
    ParametrizedState,
    ProbabilityVector,
    bures_distance,
    classical_fisher,
    fidelity,
    kl_divergence,
    quantum_fisher_information,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from tensor_core import DensityOperator, exp_minus_iht, partial_trace
from tensor_core.operators import Z, basis_vector, plus_state


def random_density(dim, rng):
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = raw @ raw.conj().T
    return DensityOperator(rho / np.trace(rho).real)


def bell_state():
    psi = (basis_vector(0, 4) + basis_vector(3, 4)) / np.sqrt(2)
    return DensityOperator.from_state_vector(psi, [2, 2])


def bernoulli(theta):
    return [theta, 1.0 - theta]


@pytest.mark.unit
@pytest.mark.infogeo
class TestEntropies(TestCase):
    """
    Testes para entropias de Shannon e von Neumann
    """

    def test_shannon_deterministica(self):
        self.assertEqual(shannon_entropy([1.0, 0.0]), 0.0)

    def test_shannon_uniforme(self):
        self.assertAlmostEqual(shannon_entropy([0.5, 0.5]), math.log(2), delta=1e-12)

    def test_shannon_assimetrica(self):
        self.assertAlmostEqual(shannon_entropy([0.9, 0.1]), 0.325083, delta=1e-6)

    def test_distribuicao_invalida(self):
        with self.assertRaises(ValidationError):
            ProbabilityVector([0.6, 0.6])
        with self.assertRaises(ValidationError):
            ProbabilityVector([1.2, -0.2])

    def test_von_neumann_puro(self):
        self.assertAlmostEqual(von_neumann_entropy(DensityOperator.basis(0, 2)), 0.0, delta=1e-12)

    def test_von_neumann_maximamente_misturado(self):
        self.assertAlmostEqual(von_neumann_entropy(DensityOperator.maximally_mixed(2)), math.log(2), delta=1e-12)

    def test_marginais_de_bell(self):
        rho = bell_state()
        self.assertAlmostEqual(von_neumann_entropy(rho), 0.0, delta=1e-9)
        for keep in ({0}, {1}):
            self.assertAlmostEqual(von_neumann_entropy(partial_trace(rho, keep)), math.log(2), delta=1e-12)


@pytest.mark.unit
@pytest.mark.infogeo
class TestDivergences(TestCase):
    """
    Testes para KL, entropia relativa, fidelidade e distância de Bures
    """

    def test_kl_fora_do_suporte(self):
        self.assertEqual(kl_divergence([0.5, 0.5], [1.0, 0.0]), INFINITE_COST)

    def test_kl_tamanhos_diferentes(self):
        with self.assertRaises(DimensionError):
            kl_divergence([1.0], [0.5, 0.5])

    def test_entropia_relativa_coincide_com_kl_em_pares_diagonais(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            p, q = rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(3))
            quantum = relative_entropy(DensityOperator(np.diag(p)), DensityOperator(np.diag(q)))
            self.assertAlmostEqual(quantum, kl_divergence(p, q), delta=1e-9)

    def test_entropia_relativa_nao_negativa(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            rho, sigma = random_density(3, rng), random_density(3, rng)
            self.assertGreaterEqual(relative_entropy(rho, sigma), 0.0)
            self.assertAlmostEqual(relative_entropy(rho, rho), 0.0, delta=1e-9)

    def test_entropia_relativa_fora_do_suporte(self):
        rho = DensityOperator.from_state_vector(plus_state())
        self.assertEqual(relative_entropy(rho, DensityOperator.basis(1, 2)), INFINITE_COST)

    def test_entropia_relativa_de_estado_puro_no_suporte(self):
        rho = DensityOperator.basis(0, 2)
        self.assertAlmostEqual(relative_entropy(rho, DensityOperator.maximally_mixed(2)), math.log(2), delta=1e-12)

    def test_fidelidade_exemplos(self):
        zero, one = DensityOperator.basis(0, 2), DensityOperator.basis(1, 2)
        self.assertAlmostEqual(fidelity(zero, zero), 1.0, delta=1e-12)
        self.assertAlmostEqual(fidelity(zero, one), 0.0, delta=1e-12)
        self.assertAlmostEqual(fidelity(zero, DensityOperator.maximally_mixed(2)), 0.5, delta=1e-12)

    def test_fidelidade_simetrica(self):
        rng = np.random.default_rng(9)
        for _ in range(5):
            rho, sigma = random_density(3, rng), random_density(3, rng)
            value = fidelity(rho, sigma)
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, 1.0)
            self.assertAlmostEqual(value, fidelity(sigma, rho), delta=1e-9)

    def test_bures(self):
        zero, one = DensityOperator.basis(0, 2), DensityOperator.basis(1, 2)
        self.assertAlmostEqual(bures_distance(zero, zero), 0.0, delta=1e-6)
        self.assertAlmostEqual(bures_distance(zero, one), math.sqrt(2), delta=1e-12)

    def test_invariancia_unitaria(self):
        rng = np.random.default_rng(13)
        rho, sigma = random_density(4, rng), random_density(4, rng)
        unitary = unitary_group.rvs(4, random_state=13)

        def rotate(state):
            return DensityOperator(unitary @ state.matrix @ unitary.conj().T)

        self.assertAlmostEqual(von_neumann_entropy(rotate(rho)), von_neumann_entropy(rho), delta=1e-9)
        self.assertAlmostEqual(relative_entropy(rotate(rho), rotate(sigma)), relative_entropy(rho, sigma), delta=1e-9)
        self.assertAlmostEqual(fidelity(rotate(rho), rotate(sigma)), fidelity(rho, sigma), delta=1e-9)


@pytest.mark.unit
@pytest.mark.infogeo
class TestFisherInformation(TestCase):
    """
    Testes para informação de Fisher clássica e quântica
    """

    def test_qfi_familia_constante(self):
        family = ParametrizedState(lambda theta: DensityOperator.maximally_mixed(2), 1)
        self.assertAlmostEqual(quantum_fisher_information(family, [0.3]), 0.0, delta=1e-12)

    def test_qfi_rotacao_de_fase(self):
        plus = DensityOperator.from_state_vector(plus_state()).matrix

        def rotated(theta):
            unitary = exp_minus_iht(Z, theta[0])
            return unitary @ plus @ unitary.conj().T

        family = ParametrizedState(rotated, 1)
        self.assertAlmostEqual(quantum_fisher_information(family, [0.4]), 4.0, delta=1e-5)

    def test_qfi_quatro_vezes_variancia_em_estados_puros_aleatorios(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            psi = unitary_group.rvs(2, random_state=rng)[:, 0]
            raw = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            generator = (raw + raw.conj().T) / 2
            rho0 = np.outer(psi, psi.conj())

            def rotated(theta, generator=generator, rho0=rho0):
                unitary = exp_minus_iht(generator, theta[0])
                return unitary @ rho0 @ unitary.conj().T

            mean = np.vdot(psi, generator @ psi).real
            variance = np.vdot(psi, generator @ generator @ psi).real - mean**2
            theta = rng.uniform(-1.0, 1.0)
            qfi = quantum_fisher_information(ParametrizedState(rotated, 1), [theta])
            self.assertAlmostEqual(qfi, 4.0 * variance, delta=1e-4 * max(1.0, 4.0 * variance))

    def test_qfi_familia_diagonal(self):
        family = ParametrizedState(lambda theta: np.diag([theta[0], 1.0 - theta[0]]), 1)
        self.assertAlmostEqual(quantum_fisher_information(family, [0.5]), 4.0, delta=1e-5)

    def test_qfi_coincide_com_fisher_classica_em_familias_diagonais(self):
        family = ParametrizedState(lambda theta: np.diag([theta[0], 1.0 - theta[0]]), 1)
        for theta in (0.2, 0.5, 0.7):
            self.assertAlmostEqual(
                quantum_fisher_information(family, [theta]), classical_fisher(bernoulli, theta), delta=1e-4
            )

    def test_direcao_nao_unitaria(self):
        family = ParametrizedState(lambda theta: DensityOperator.maximally_mixed(2), 2)
        with self.assertRaises(ValidationError):
            quantum_fisher_information(family, [0.0, 0.0], direction=(1.0, 1.0))

    def test_fisher_classica_constante(self):
        self.assertAlmostEqual(classical_fisher(lambda theta: [0.5, 0.5], 0.3), 0.0, delta=1e-12)

    def test_fisher_classica_bernoulli(self):
        self.assertAlmostEqual(classical_fisher(bernoulli, 0.5), 4.0, delta=1e-4)
        self.assertAlmostEqual(classical_fisher(bernoulli, 0.9), 11.111, delta=1e-2)

    def test_passo_invalido(self):
        with self.assertRaises(ValidationError):
            classical_fisher(bernoulli, 0.5, step=0.0)
