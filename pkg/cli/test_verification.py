"""
Testes para a suíte de propriedades de aceitação - agent-hamiltonians
=====================================================================
"""

import json
import math
from unittest import TestCase

import pytest

from agent_hamiltonians.exceptions import NumericalError, ValidationError
from cli import CliInvocation, run_command
from cli.verification import PROPERTIES, run_acceptance, run_property
from infogeo import von_neumann_entropy
from tensor_core import partial_trace

FAST = (1, 2, 3, 4, 5, 6, 8, 11)


@pytest.mark.acceptance
@pytest.mark.integration
@pytest.mark.cli
class TestAcceptanceSuite(TestCase):
    """
    Propriedades rápidas da suíte de aceitação
    """

    def test_propriedades_rapidas(self):
        results = run_acceptance(FAST)
        self.assertEqual([result.number for result in results], list(FAST))
        for result in results:
            self.assertTrue(result.passed, f"{result.number} {result.name}: {result.detail}")

    def test_numeracao(self):
        self.assertEqual([number for number, _, _ in PROPERTIES], list(range(1, 12)))

    def test_propriedade_inexistente(self):
        with self.assertRaises(ValidationError):
            run_acceptance([0, 3])

    def test_falha_numerica_vira_reprovacao(self):
        def broken(jobs):
            raise NumericalError("passo instável", code="step-too-large")

        result = run_property(99, "broken", broken)
        self.assertFalse(result.passed)
        self.assertTrue(result.detail.startswith("step-too-large"))


@pytest.mark.slow
@pytest.mark.acceptance
@pytest.mark.integration
@pytest.mark.cli
class TestSlowAcceptance(TestCase):
    """
    Propriedades de varredura e ensemble
    """

    def test_escala_kappa_quadrado(self):
        (result,) = run_acceptance([7])
        self.assertTrue(result.passed, result.detail)

    def test_traco_e_positividade(self):
        (result,) = run_acceptance([9])
        self.assertTrue(result.passed, result.detail)

    def test_assimetria_de_retroacao(self):
        (result,) = run_acceptance([10], jobs=2)
        self.assertTrue(result.passed, result.detail)


@pytest.mark.acceptance
@pytest.mark.cli
def test_entropia_marginal_do_bell(bell_state):
    assert math.isclose(von_neumann_entropy(partial_trace(bell_state, [1])), math.log(2), abs_tol=1e-10)


@pytest.mark.acceptance
@pytest.mark.cli
def test_report_do_fixture(qagi_config_path, output_dir):
    invocation = CliInvocation("report", qagi_config_path, output_dir)
    assert run_command(invocation) == 0
    assert (output_dir / "commutation.csv").read_text(encoding="utf-8").startswith("term,sensing")


@pytest.mark.acceptance
@pytest.mark.cli
def test_simulate_cagi_do_fixture(cagi_config_path, output_dir, capsys):
    assert run_command(CliInvocation("simulate", cagi_config_path, output_dir, format="json")) == 0
    payload = json.loads((output_dir / "traj.json").read_text(encoding="utf-8"))
    assert len(payload["times"]) == 201
    assert capsys.readouterr().err == ""
