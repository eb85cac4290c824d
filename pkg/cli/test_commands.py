"""
Testes para os comandos da CLI - agent-hamiltonians
===================================================
"""

import csv
import io
import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest import TestCase, mock

import pytest

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ValidationError
from cli import CliInvocation, run_command
from cli.main import build_parser, main

FIXTURES = settings.BASE_DIR / "fixtures"


def read_rows(path):
    with path.open(encoding="utf-8") as handle:
        return list(csv.reader(handle))


class CommandTestCase(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write_config(self, payload):
        path = self.out / "config.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    def run_capturing(self, invocation):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = run_command(invocation)
        return code, stdout.getvalue(), stderr.getvalue()


@pytest.mark.unit
@pytest.mark.cli
class TestCliInvocation(TestCase):
    """
    Testes para a validação da invocação
    """

    def test_simulate_sem_config(self):
        with self.assertRaises(ValidationError) as ctx:
            CliInvocation("simulate", out_dir="runs")
        self.assertEqual(ctx.exception.code, "missing-parameter")

    def test_comando_desconhecido(self):
        with self.assertRaises(ValidationError):
            CliInvocation("plot")

    def test_sweep_sem_valores(self):
        with self.assertRaises(ValidationError):
            CliInvocation("sweep", config_path="c.json", out_dir="runs", param="kappa")

    def test_verify_sem_arquivos(self):
        invocation = CliInvocation("verify")
        self.assertIsNone(invocation.config_path)

    def test_parser(self):
        args = build_parser().parse_args(
            ["sweep", "--config", "c.json", "--out", "runs", "--param", "kappa", "--values", "0.25,0.5,1.0", "--jobs", "2"]
        )
        invocation = CliInvocation(**vars(args))
        self.assertEqual(invocation.values, (0.25, 0.5, 1.0))
        self.assertEqual(invocation.jobs, 2)
        self.assertEqual(invocation.out_dir, Path("runs"))


@pytest.mark.integration
@pytest.mark.cli
class TestSimulate(CommandTestCase):
    """
    Testes para o comando simulate
    """

    def test_grava_trajetoria_e_meta(self):
        code, _, stderr = self.run_capturing(CliInvocation("simulate", FIXTURES / "qagi.json", self.out / "runs"))
        self.assertEqual(code, 0)
        self.assertEqual(stderr, "")
        self.assertTrue((self.out / "runs" / "traj.csv").exists())
        meta = json.loads((self.out / "runs" / "meta.json").read_text(encoding="utf-8"))
        self.assertEqual(meta["config"]["scenario"], "qagi-toy")

    def test_semente_substituida(self):
        invocation = CliInvocation("simulate", FIXTURES / "cagi.json", self.out, seed_override=5, format="json")
        code, _, _ = self.run_capturing(invocation)
        self.assertEqual(code, 0)
        self.assertTrue((self.out / "traj.json").exists())
        meta = json.loads((self.out / "meta.json").read_text(encoding="utf-8"))
        self.assertEqual(meta["config"]["seed"], 5)
        self.assertEqual(meta["events"][0]["mode"], "external-reader")

    def test_csv_identico_entre_invocacoes(self):
        for name in ("a", "b"):
            self.run_capturing(CliInvocation("simulate", FIXTURES / "qagi.json", self.out / name))
        self.assertEqual(
            (self.out / "a" / "traj.csv").read_bytes(),
            (self.out / "b" / "traj.csv").read_bytes(),
        )

    def test_main(self):
        with mock.patch("cli.main.settings.configure_logging"):
            code = main(["simulate", "--config", str(FIXTURES / "custom.json"), "--out", str(self.out)])
        self.assertEqual(code, 0)
        self.assertEqual(read_rows(self.out / "traj.csv")[0][:2], ["t", "energy_total"])


@pytest.mark.integration
@pytest.mark.cli
class TestSweepAndReport(CommandTestCase):
    """
    Testes para sweep e report
    """

    def test_varredura_de_kappa(self):
        config = self.write_config(
            {"scenario": "qagi-toy", "timing": {"steps": 100}, "readout": {"mode": "nonselective"}}
        )
        invocation = CliInvocation("sweep", config, self.out / "sweep", param="kappa", values=(1.0, 0.25, 0.5))
        code, _, _ = self.run_capturing(invocation)
        self.assertEqual(code, 0)

        rows = read_rows(self.out / "sweep" / "summary.csv")
        self.assertEqual(rows[0], ["kappa", "rate", "r_squared", "offdiag_final", "energy_final", "events"])
        self.assertEqual(len(rows) - 1, 3)
        self.assertEqual([float(row[0]) for row in rows[1:]], [0.25, 0.5, 1.0])
        self.assertTrue(all(row[1] for row in rows[1:]))
        self.assertEqual(len(list((self.out / "sweep").glob("*/traj.csv"))), 3)

    def test_varredura_de_sementes(self):
        config = self.write_config({"scenario": "cagi-toy", "timing": {"steps": 50}})
        invocation = CliInvocation("sweep", config, self.out, param="seed", values=(2.0, 0.0))
        self.assertEqual(self.run_capturing(invocation)[0], 0)
        rows = read_rows(self.out / "summary.csv")
        self.assertEqual([row[0] for row in rows[1:]], ["0", "2"])

    def test_relatorio_de_comutacao(self):
        code, _, _ = self.run_capturing(CliInvocation("report", FIXTURES / "qagi.json", self.out))
        self.assertEqual(code, 0)
        rows = read_rows(self.out / "commutation.csv")
        self.assertEqual(rows[0], ["term", "sensing", "reasoning", "learning_field", "learning_coupling"])
        self.assertGreater(float(rows[1][2]), 0.1)


@pytest.mark.unit
@pytest.mark.cli
class TestExitCodes(CommandTestCase):
    """
    Erros vão para o fluxo de erro com código de saída por categoria
    """

    def test_configuracao_invalida(self):
        config = self.write_config({"scenario": "qagi-toy", "kapa": 1.0})
        code, stdout, stderr = self.run_capturing(CliInvocation("simulate", config, self.out / "runs"))
        self.assertEqual(code, 2)
        self.assertEqual(stdout, "")
        self.assertEqual(json.loads(stderr)["code"], "unknown-key")
        self.assertFalse((self.out / "runs").exists())

    def test_erro_numerico(self):
        config = self.write_config({"scenario": "qagi-toy", "timing": {"dt": 0.1}, "readout": {"mode": "dephasing"}})
        code, _, stderr = self.run_capturing(CliInvocation("simulate", config, self.out))
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(stderr)["code"], "step-too-large")

    def test_arquivo_ausente(self):
        code, _, stderr = self.run_capturing(CliInvocation("simulate", self.out / "nada.json", self.out))
        self.assertEqual(code, 4)
        self.assertEqual(json.loads(stderr)["code"], "io-error")

    def test_saida_bloqueada(self):
        blocker = self.out / "arquivo"
        blocker.write_text("ocupado", encoding="utf-8")
        config = self.write_config({"scenario": "qagi-toy", "timing": {"steps": 10}, "metrics": ["energy"]})
        code, _, _ = self.run_capturing(CliInvocation("simulate", config, blocker / "runs"))
        self.assertEqual(code, 4)

    def test_parametro_desconhecido(self):
        config = self.write_config({"scenario": "qagi-toy", "timing": {"steps": 10}})
        code, _, stderr = self.run_capturing(CliInvocation("sweep", config, self.out, param="omega", values=(1.0,)))
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(stderr)["details"]["field"], "param")


@pytest.mark.integration
@pytest.mark.cli
class TestVerifyCommand(CommandTestCase):
    """
    Testes para o comando verify
    """

    def test_propriedade_selecionada(self):
        code, stdout, _ = self.run_capturing(CliInvocation("verify", properties=(3,)))
        self.assertEqual(code, 0)
        self.assertTrue(stdout.startswith("PASS  3 quantum-noncommutativity"))

    def test_propriedade_inexistente(self):
        code, _, stderr = self.run_capturing(CliInvocation("verify", properties=(42,)))
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(stderr)["details"]["field"], "property")
