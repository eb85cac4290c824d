"""
Leitura de configuração de cenários - agent-hamiltonians
========================================================

JSON estrito: sem comentários, sem NaN/Infinity e validado contra o
esquema publicado em ``schema/scenario_config.schema.json``. Chaves
ausentes recebem os padrões de ``ScenarioConfig``.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ArtifactIOError, ConfigError, ValidationError
from scenarios import Couplings, Readout, ScenarioConfig, Timing

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parent / "schema" / "scenario_config.schema.json"

# nomes do arquivo -> campos de Couplings
COUPLING_FIELDS = {"kappa": "kappa", "mu": "mu", "g": "g", "J": "J", "lambda": "lam", "m": "mass", "eta": "eta"}


def _reject_constant(name):
    raise ValueError(f"constante {name} não é JSON estrito")


@lru_cache(maxsize=1)
def load_schema():
    with SCHEMA_PATH.open(encoding="utf-8") as handle:
        return json.load(handle)


@lru_cache(maxsize=1)
def _validator():
    schema = load_schema()
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def _field_path(path):
    field = ""
    for part in path:
        field += f"[{part}]" if isinstance(part, int) else (f".{part}" if field else part)
    return field or "config"


def _schema_error(error):
    """Converte a violação do esquema no erro de configuração equivalente"""
    field = _field_path(error.absolute_path)
    if error.validator == "additionalProperties":
        allowed = sorted(error.schema.get("properties", {}))
        unknown = sorted(set(error.instance) - set(allowed))
        return ConfigError(
            f"Chaves desconhecidas em {field}: {', '.join(unknown)}",
            code="unknown-key",
            field=field,
            keys=unknown,
            allowed=allowed,
        )
    if error.validator == "required":
        missing = sorted(set(error.validator_value) - set(error.instance))
        return ValidationError(
            f"Campo obrigatório ausente em {field}: {', '.join(missing)}",
            code="missing-parameter",
            field=".".join(missing) if field == "config" else f"{field}.{missing[0]}",
            missing=missing,
        )
    if error.validator == "enum":
        code = "metric-unknown" if field.startswith("metrics") else "unknown-kind"
        return ValidationError(
            f"{field}: {error.instance!r} não está em {error.validator_value}",
            code=code,
            field=field,
            value=error.instance,
            choices=list(error.validator_value),
        )
    return ValidationError(f"{field}: {error.message}", field=field, rule=error.validator)


def validate_document(data):
    """
    Valida o objeto decodificado contra o esquema publicado

    Erros:
        ConfigError: unknown-key
        ValidationError: missing-parameter, unknown-kind, metric-unknown ou invariant-violation
    """
    error = best_match(_validator().iter_errors(data))
    if error is not None:
        raise _schema_error(error)
    return data


def config_from_dict(data):
    """
    Converte o objeto JSON já decodificado em ``ScenarioConfig`` validada
    """
    validate_document(data)
    couplings = Couplings(**{COUPLING_FIELDS[key]: value for key, value in data.get("couplings", {}).items()})
    return ScenarioConfig(
        data["scenario"],
        couplings=couplings,
        timing=Timing(**data.get("timing", {})),
        seed=data.get("seed", 0),
        metrics=data.get("metrics", []),
        readout=Readout(**data.get("readout", {})),
        smoothing=data.get("smoothing", settings.DEFAULT_SMOOTHING),
        generators=data.get("generators", []),
        initial=data.get("initial", {}),
    )


def parse_config(path):
    """
    Lê e valida o arquivo de configuração em ``path``

    Erros de sintaxe trazem linha e coluna; chaves fora do esquema são
    rejeitadas com ``unknown-key``.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ConfigError(f"{path} não está em UTF-8", code="parse-error", path=str(path), position=exc.start)
    except OSError as exc:
        raise ArtifactIOError(f"Não foi possível ler {path}: {exc.strerror or exc}", path=str(path))

    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"JSON inválido em {path}: {exc.msg}", code="parse-error", path=str(path), line=exc.lineno, column=exc.colno
        )
    except ValueError as exc:
        raise ConfigError(f"JSON inválido em {path}: {exc}", code="parse-error", path=str(path))

    if not isinstance(data, dict):
        raise ConfigError("A configuração deve ser um objeto JSON", code="parse-error", path=str(path), line=1, column=1)

    cfg = config_from_dict(data)
    logger.debug(f"Configuração lida de {path}: {cfg.scenario.value}")
    return cfg
