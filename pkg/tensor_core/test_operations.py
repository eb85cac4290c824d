"""
Testes para operações do núcleo tensorial - agent-hamiltonians
==============================================================
"""

from unittest import TestCase

import numpy as np
import pytest
from scipy.stats import unitary_group

from agent_hamiltonians.exceptions import DimensionError, ValidationError
from tensor_core import (
    DensityOperator,
    HermitianOperator,
    commutator,
    commutator_norm,
    exp_minus_iht,
    herm_eig,
    is_projector,
    is_unitary,
    kron,
    kron_all,
    operator_norm,
    partial_trace,
)
from tensor_core.operators import I2, X, Y, Z, basis_vector, embed, projector


def random_hermitian(dim, rng):
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (raw + raw.conj().T) / 2


def random_density(dim, rng, factor_dims=None):
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = raw @ raw.conj().T
    return DensityOperator(rho / np.trace(rho).real, factor_dims)


@pytest.mark.unit
@pytest.mark.tensor
class TestKron(TestCase):
    """
    Testes para o produto de Kronecker
    """

    def test_identidade(self):
        np.testing.assert_allclose(kron(I2, I2), np.eye(4))

    def test_produto_diagonal(self):
        np.testing.assert_allclose(kron(Z, Z), np.diag([1, -1, -1, 1]))

    def test_x_em_primeiro_fator(self):
        """
        X ⊗ I aplicado a |00⟩ resulta em |10⟩
        """
        result = kron(X, I2) @ basis_vector(0, 4)
        np.testing.assert_allclose(result, basis_vector(2, 4))

    def test_associatividade(self):
        rng = np.random.default_rng(7)
        a, b, c = (rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3)) for _ in range(3))
        np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)

    def test_limite_de_dimensao(self):
        big = np.eye(1024)
        with self.assertRaises(DimensionError) as ctx:
            kron(big, I2)
        self.assertEqual(ctx.exception.code, "dimension-cap-exceeded")

    def test_kron_all(self):
        np.testing.assert_allclose(kron_all(Z, I2, X), kron(kron(Z, I2), X))

    def test_kron_all_vazio(self):
        with self.assertRaises(ValidationError):
            kron_all()


@pytest.mark.unit
@pytest.mark.tensor
class TestPartialTrace(TestCase):
    """
    Testes para o traço parcial
    """

    def test_estado_produto(self):
        rho = DensityOperator(kron(np.diag([1, 0]), np.diag([0, 1])), [2, 2])
        marginal = partial_trace(rho, {0})
        np.testing.assert_allclose(marginal.matrix, np.diag([1, 0]), atol=1e-12)
        self.assertEqual(marginal.factor_dims, (2,))

    def test_bell_marginal_maximamente_misto(self):
        bell = (basis_vector(0, 4) + basis_vector(3, 4)) / np.sqrt(2)
        rho = DensityOperator.from_state_vector(bell, [2, 2])
        for factor in (0, 1):
            np.testing.assert_allclose(partial_trace(rho, {factor}).matrix, np.eye(2) / 2, atol=1e-12)

    def test_manter_todos_os_fatores(self):
        rho = random_density(4, np.random.default_rng(1), [2, 2])
        self.assertIs(partial_trace(rho, {0, 1}), rho)

    def test_indice_invalido(self):
        rho = DensityOperator.maximally_mixed(4, [2, 2])
        for keep in (set(), {2}, {-1}):
            with self.assertRaises(ValidationError) as ctx:
                partial_trace(rho, keep)
            self.assertEqual(ctx.exception.code, "invalid-factor-index")

    def test_preserva_traco_e_positividade(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            rho = random_density(12, rng, [2, 3, 2])
            for keep in ({0}, {1}, {2}, {0, 2}, {1, 2}):
                marginal = partial_trace(rho, keep)
                self.assertAlmostEqual(np.trace(marginal.matrix).real, 1.0, delta=1e-10)
                self.assertGreaterEqual(marginal.eigenvalues()[0], -1e-9)

    def test_fatores_nao_adjacentes(self):
        """
        Traçar o fator do meio de a ⊗ b ⊗ c resulta em a ⊗ c
        """
        rng = np.random.default_rng(5)
        a, b, c = random_density(2, rng), random_density(3, rng), random_density(2, rng)
        rho = DensityOperator.product(a, b, c)
        expected = np.kron(a.matrix, c.matrix)
        np.testing.assert_allclose(partial_trace(rho, {2, 0}).matrix, expected, atol=1e-12)


@pytest.mark.unit
@pytest.mark.tensor
class TestHermEig(TestCase):
    """
    Testes para autodecomposição hermitiana
    """

    def test_diagonal(self):
        eigenvalues, _ = herm_eig(HermitianOperator(Z))
        np.testing.assert_allclose(eigenvalues, [-1, 1])

    def test_pauli_x(self):
        eigenvalues, eigenvectors = herm_eig(HermitianOperator(X))
        np.testing.assert_allclose(eigenvalues, [-1, 1], atol=1e-12)
        minus = np.array([1, -1]) / np.sqrt(2)
        self.assertAlmostEqual(abs(np.vdot(minus, eigenvectors[:, 0])), 1.0, delta=1e-12)

    def test_reconstrucao_aleatoria(self):
        h = random_hermitian(8, np.random.default_rng(11))
        eigenvalues, eigenvectors = herm_eig(h)
        rebuilt = eigenvectors @ np.diag(eigenvalues) @ eigenvectors.conj().T
        self.assertLessEqual(np.linalg.norm(rebuilt - h, "fro"), 1e-9)
        self.assertLessEqual(np.linalg.norm(eigenvectors.conj().T @ eigenvectors - np.eye(8)), 1e-9)
        self.assertTrue(np.all(np.diff(eigenvalues) >= 0))

    def test_limite_de_dimensao(self):
        with self.assertRaises(DimensionError):
            herm_eig(np.eye(1025))


@pytest.mark.unit
@pytest.mark.tensor
class TestExpMinusIHt(TestCase):
    """
    Testes para a exponencial unitária
    """

    def test_tempo_zero(self):
        h = random_hermitian(4, np.random.default_rng(2))
        np.testing.assert_allclose(exp_minus_iht(h, 0.0), np.eye(4), atol=1e-12)

    def test_diagonal(self):
        expected = np.diag([np.exp(-1j * np.pi / 2), np.exp(1j * np.pi / 2)])
        np.testing.assert_allclose(exp_minus_iht(Z, np.pi / 2), expected, atol=1e-12)

    def test_x_em_pi(self):
        np.testing.assert_allclose(exp_minus_iht(X, np.pi), -np.eye(2), atol=1e-12)

    def test_unitaria_e_grupo(self):
        rng = np.random.default_rng(4)
        h = random_hermitian(6, rng)
        for s, t in rng.uniform(-10, 10, size=(5, 2)):
            self.assertTrue(is_unitary(exp_minus_iht(h, t)))
            np.testing.assert_allclose(exp_minus_iht(h, s) @ exp_minus_iht(h, t), exp_minus_iht(h, s + t), atol=1e-8)


@pytest.mark.unit
@pytest.mark.tensor
class TestCommutator(TestCase):
    """
    Testes para comutadores
    """

    def test_auto_comutacao(self):
        self.assertEqual(commutator_norm(Z, Z), 0.0)

    def test_x_z(self):
        np.testing.assert_allclose(commutator(X, Z), -2j * Y, atol=1e-12)

    def test_fatores_disjuntos(self):
        self.assertAlmostEqual(commutator_norm(kron(Z, I2), kron(I2, X)), 0.0, delta=1e-12)

    def test_simetria_e_diagonais(self):
        rng = np.random.default_rng(9)
        a, b = random_hermitian(5, rng), random_hermitian(5, rng)
        self.assertAlmostEqual(commutator_norm(a, b), commutator_norm(b, a), delta=1e-12)
        d1, d2 = np.diag(rng.normal(size=5)), np.diag(rng.normal(size=5))
        self.assertEqual(commutator_norm(d1, d2), 0.0)

    def test_dimensoes_diferentes(self):
        with self.assertRaises(DimensionError):
            commutator(X, np.eye(4))


@pytest.mark.unit
@pytest.mark.tensor
class TestOperators(TestCase):
    """
    Testes para operadores auxiliares
    """

    def test_embed(self):
        np.testing.assert_allclose(embed(X, 1, [2, 2, 2]), kron_all(I2, X, I2))

    def test_embed_fator_invalido(self):
        with self.assertRaises(ValidationError) as ctx:
            embed(X, 3, [2, 2])
        self.assertEqual(ctx.exception.code, "invalid-factor-index")

    def test_projector(self):
        p = projector([1, 1])
        self.assertTrue(is_projector(p))
        self.assertFalse(is_projector(X))

    def test_operator_norm(self):
        self.assertAlmostEqual(operator_norm(3 * Z), 3.0)

    def test_unitaria_aleatoria(self):
        u = unitary_group.rvs(4, random_state=0)
        self.assertTrue(is_unitary(u))
        self.assertFalse(is_unitary(2 * u))
