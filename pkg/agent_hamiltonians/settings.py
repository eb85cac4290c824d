"""
Configurações do projeto agent-hamiltonians
===========================================

Constantes numéricas compartilhadas pelos motores e configuração de logging.
Variáveis de ambiente afetam apenas diagnósticos, nunca os dados simulados.
"""

from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

VERSION = "0.1.0"

# Tolerâncias e limites numéricos
DIMENSION_CAP = 1024  # autodecomposições e evoluções
ENTRY_CAP = 2**20  # linhas x colunas de qualquer matriz densa
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
EIGEN_TOL = 1e-9
UNITARY_TOL = 1e-9
PROJECTOR_TOL = 1e-9
SUPPORT_TOL = 1e-12
QFI_EPSILON = 1e-10

# Diferenças finitas
FD_STEP = 1e-5
POISSON_STEP = 1e-5
JACOBIAN_STEP = 1e-6

# Padrões de modelagem
DEFAULT_SMOOTHING = 0.05
DEFAULT_DAMPING = 0.1
DEFAULT_MASS = 1.0
DEFAULT_PENALTY = 1.0
DEFAULT_KBT = 1.0
DEFAULT_DEPHASING_CONSTANT = 1.0
LINDBLAD_STABILITY = 0.1

# Passo interno do leapfrog no CAGI: h ≤ razão · σ
CAGI_SUBSTEP_RATIO = 0.01

# Integrador implícito (termos não separáveis)
IMPLICIT_MAX_ITERATIONS = 200
IMPLICIT_TOLERANCE = 1e-15

# Logging
LOG_LEVEL = config("AGENT_HAMILTONIANS_LOG_LEVEL", default="INFO")
LOG_DIR = config("AGENT_HAMILTONIANS_LOG_DIR", default="")
SLOW_RUN_SECONDS = config("AGENT_HAMILTONIANS_SLOW_RUN_SECONDS", default=30.0, cast=float)

PROJECT_LOGGERS = [
    "agent_hamiltonians",
    "tensor_core",
    "classical_engine",
    "quantum_engine",
    "infogeo",
    "scenarios",
    "cli",
]

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "[{asctime}] {levelname} {name} {process:d} | {message}",
            "style": "{",
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
        "simple": {
            "format": "{levelname} {name} | {message}",
            "style": "{",
        },
        "json": {
            "format": "%(asctime)s %(levelname)s %(name)s %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
    },
    "handlers": {
        # auditoria só vai para audit.log, nunca para o console
        "null": {
            "class": "logging.NullHandler",
        },
        "console": {
            "level": LOG_LEVEL,
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "simple",
        },
    },
    "loggers": {
        **{name: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False} for name in PROJECT_LOGGERS},
        "audit": {
            "handlers": ["null"],
            "level": "INFO",
            "propagate": False,
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
}

# Arquivos de log apenas quando um diretório for configurado
if LOG_DIR:
    _log_dir = Path(LOG_DIR)
    _log_dir.mkdir(parents=True, exist_ok=True)

    LOGGING["handlers"].update(
        {
            "file_general": {
                "level": "INFO",
                "class": "logging.handlers.RotatingFileHandler",
                "filename": str(_log_dir / "application.log"),
                "formatter": "verbose",
                "maxBytes": 1024 * 1024 * 10,  # 10MB
                "backupCount": 5,
                "encoding": "utf-8",
            },
            "file_error": {
                "level": "ERROR",
                "class": "logging.handlers.RotatingFileHandler",
                "filename": str(_log_dir / "errors.log"),
                "formatter": "verbose",
                "maxBytes": 1024 * 1024 * 10,  # 10MB
                "backupCount": 5,
                "encoding": "utf-8",
            },
            "file_audit": {
                "level": "INFO",
                "class": "logging.handlers.RotatingFileHandler",
                "filename": str(_log_dir / "audit.log"),
                "formatter": "json",
                "maxBytes": 1024 * 1024 * 15,  # 15MB
                "backupCount": 10,
                "encoding": "utf-8",
            },
        }
    )
    for _name in PROJECT_LOGGERS:
        LOGGING["loggers"][_name]["handlers"] = ["console", "file_general", "file_error"]
    LOGGING["loggers"]["audit"] = {"handlers": ["file_audit"], "level": "INFO", "propagate": False}


def configure_logging(logging_config=None):
    """Aplica a configuração de logging (padrão: LOGGING deste módulo)"""
    import logging.config

    logging.config.dictConfig(logging_config or LOGGING)
