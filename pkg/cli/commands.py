"""
Comandos da CLI - agent-hamiltonians
====================================

simulate, sweep, report e verify. Dados vão para arquivos; diagnósticos
e erros para o fluxo de erro, com código de saída por categoria.
"""

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from agent_hamiltonians.exceptions import AgentHamiltonianError, NumericalError, ValidationError, format_error, get_exit_code
from agent_hamiltonians.validators import validate_positive_int
from scenarios import commutation_snapshot, fit_decoherence_rate, run_parameter_sweep, run_scenario, run_seed_sweep
from scenarios.serializers import (
    COMMUTATION_CSV,
    SUMMARY_CSV,
    format_number,
    write_commutation_csv,
    write_csv,
    write_trajectory,
)

from .config import parse_config
from .verification import run_acceptance

logger = logging.getLogger(__name__)

COMMANDS = ("simulate", "sweep", "report", "verify")
FORMATS = ("csv", "json")
SUMMARY_COLUMNS = ("rate", "r_squared", "offdiag_final", "energy_final", "events")


@dataclass(frozen=True)
class CliInvocation:
    """
    Uma chamada da CLI já interpretada
    """

    command: str
    config_path: Path = None
    out_dir: Path = None
    seed_override: int = None
    format: str = "csv"
    jobs: int = 1
    param: str = None
    values: tuple = ()
    properties: tuple = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"Comando desconhecido: {self.command}", field="command", choices=list(COMMANDS))
        if self.format not in FORMATS:
            raise ValidationError(f"Formato inválido: {self.format}", field="format", choices=list(FORMATS))
        object.__setattr__(self, "jobs", validate_positive_int(self.jobs, field="jobs"))
        if self.seed_override is not None:
            validate_positive_int(self.seed_override, field="seed", minimum=0)

        if self.command != "verify":
            for name in ("config_path", "out_dir"):
                if getattr(self, name) is None:
                    raise ValidationError(f"{self.command} requer --{name.split('_')[0]}", code="missing-parameter", field=name)
            object.__setattr__(self, "config_path", Path(self.config_path))
            object.__setattr__(self, "out_dir", Path(self.out_dir))
        if self.command == "sweep" and (not self.param or not self.values):
            raise ValidationError("sweep requer --param e --values", code="missing-parameter", field="param")

    def load_config(self):
        cfg = parse_config(self.config_path)
        return cfg if self.seed_override is None else cfg.with_seed(self.seed_override)


def simulate(invocation):
    trajectory = run_scenario(invocation.load_config())
    write_trajectory(trajectory, invocation.out_dir, invocation.format)
    return 0


def _point_label(param, index, value):
    return f"{index:03d}_{param}={value:g}"


def _summary_row(param, value, trajectory):
    row = {param: value, "events": len(trajectory.events)}
    if "offdiag_env_abs" in trajectory.metric_series:
        row["offdiag_final"] = trajectory.series("offdiag_env_abs")[-1]
        try:
            row["rate"], row["r_squared"] = fit_decoherence_rate(trajectory)
        except (ValidationError, NumericalError) as exc:
            logger.warning(f"Sem ajuste de decoerência para {param}={value}: {exc.code}")
    if "energy_total" in trajectory.metric_series:
        row["energy_final"] = trajectory.series("energy_total")[-1]
    return row


def sweep(invocation):
    """
    Uma execução por ponto da grade e ``summary.csv`` com uma linha por ponto

    ``--param seed`` varre sementes; os demais nomes varrem acoplamentos.
    """
    cfg = invocation.load_config()
    values = sorted(set(invocation.values))
    if invocation.param == "seed":
        seeds = [int(value) for value in values]
        if any(seed != value for seed, value in zip(seeds, values)):
            raise ValidationError("Sementes devem ser inteiras", field="values")
        results = list(zip(seeds, run_seed_sweep(cfg, seeds, invocation.jobs)))
    else:
        results = run_parameter_sweep(cfg, invocation.param, values, invocation.jobs)

    rows = []
    for index, (value, trajectory) in enumerate(results):
        write_trajectory(trajectory, invocation.out_dir / _point_label(invocation.param, index, value), invocation.format)
        rows.append(_summary_row(invocation.param, value, trajectory))

    headers = [invocation.param, *SUMMARY_COLUMNS]
    write_csv(invocation.out_dir / SUMMARY_CSV, headers, [[format_number(row.get(name)) for name in headers] for row in rows])
    logger.info(f"Varredura de {invocation.param} concluída: {len(rows)} pontos")
    return 0


def report(invocation):
    write_commutation_csv(commutation_snapshot(invocation.load_config()), invocation.out_dir / COMMUTATION_CSV)
    return 0


def verify(invocation):
    results = run_acceptance(invocation.properties or None, invocation.jobs)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.number:2d} {result.name} ({result.seconds:.2f}s) {result.detail}")
    return 0 if all(result.passed for result in results) else 1


HANDLERS = {
    "simulate": simulate,
    "sweep": sweep,
    "report": report,
    "verify": verify,
}


def handle_error(exc, stream=None):
    """
    Escreve o erro formatado no fluxo de erro e devolve o código de saída
    """
    stream = stream or sys.stderr
    payload = format_error(exc)
    code = get_exit_code(exc)
    if isinstance(exc, AgentHamiltonianError):
        logger.warning(f"Erro {code}: {exc.code} - {exc}")
    print(json.dumps(payload, ensure_ascii=False, default=str), file=stream)
    return code


def run_command(invocation):
    """
    Executa a invocação; 0 se nenhum erro foi emitido
    """
    try:
        return HANDLERS[invocation.command](invocation)
    except Exception as exc:
        return handle_error(exc)
