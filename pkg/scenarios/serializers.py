"""
Artefatos de execução - agent-hamiltonians
==========================================

Escrita de trajetórias (CSV ou JSON), do arquivo de metadados, da matriz
de comutação e da tabela-resumo de varreduras. Números em ``.17g`` com
ponto decimal, sem dependência de locale.
"""

import csv
import json
import logging
import math
from pathlib import Path

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ArtifactIOError

logger = logging.getLogger(__name__)

TRAJECTORY_CSV = "traj.csv"
TRAJECTORY_JSON = "traj.json"
META_JSON = "meta.json"
COMMUTATION_CSV = "commutation.csv"
SUMMARY_CSV = "summary.csv"

TRAILING_COLUMNS = ("vn_entropy_env", "offdiag_env_abs", "qfi_policy", "event_flag")


def format_number(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return f"{float(value):.17g}"


def trajectory_columns(trajectory):
    """t, energy_total, energy_<termo>..., vn_entropy_env, offdiag_env_abs, qfi_policy, event_flag"""
    names = list(trajectory.metric_series)
    columns = ["energy_total"] if "energy_total" in names else []
    columns += [name for name in names if name.startswith("energy_") and name != "energy_total"]
    columns += [name for name in TRAILING_COLUMNS if name in names]
    return ["t"] + columns


def _write(path, emit):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            emit(handle)
    except OSError as exc:
        logger.error(f"Falha ao escrever {path}: {exc}")
        raise ArtifactIOError(f"Não foi possível escrever {path}: {exc.strerror or exc}", path=str(path))
    return path


def write_csv(path, headers, rows):
    def emit(handle):
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)

    path = _write(path, emit)
    logger.debug(f"CSV salvo em {path} ({len(rows)} linhas)")
    return path


def write_json(path, payload):
    def emit(handle):
        json.dump(payload, handle, indent=2, allow_nan=False)
        handle.write("\n")

    return _write(path, emit)


def write_trajectory_csv(trajectory, path):
    columns = trajectory_columns(trajectory)
    series = [trajectory.metric_series[name] for name in columns[1:]]
    rows = [[format_number(t)] + [format_number(values[k]) for values in series] for k, t in enumerate(trajectory.times)]
    return write_csv(path, columns, rows)


def write_trajectory_json(trajectory, path):
    columns = trajectory_columns(trajectory)
    payload = {
        "times": list(trajectory.times),
        "series": {name: list(trajectory.metric_series[name]) for name in columns[1:]},
        "events": trajectory.events,
    }
    return write_json(path, payload)


def meta_payload(trajectory):
    extra = {key: value for key, value in trajectory.meta.items() if key not in ("config", "code_version", "commutation")}
    return {
        "config": trajectory.meta.get("config", {}),
        "code_version": trajectory.meta.get("code_version", settings.VERSION),
        "commutation": trajectory.meta.get("commutation"),
        "run": extra,
        "events": trajectory.events,
    }


def write_meta(trajectory, path):
    """Eco da configuração, versão do código, comutação e eventos de leitura"""
    return write_json(path, meta_payload(trajectory))


def write_commutation_csv(report, path):
    rows = [[name] + [format_number(value) for value in row] for name, row in zip(report.names, report.matrix)]
    return write_csv(path, ["term"] + list(report.names), rows)


def write_trajectory(trajectory, out_dir, fmt="csv"):
    """
    Grava ``traj.csv`` (ou ``traj.json``) e ``meta.json`` em ``out_dir``
    """
    out_dir = Path(out_dir)
    if fmt == "json":
        data = write_trajectory_json(trajectory, out_dir / TRAJECTORY_JSON)
    else:
        data = write_trajectory_csv(trajectory, out_dir / TRAJECTORY_CSV)
    meta = write_meta(trajectory, out_dir / META_JSON)
    logger.info(f"Trajetória gravada em {data} ({len(trajectory)} amostras)")
    return data, meta
