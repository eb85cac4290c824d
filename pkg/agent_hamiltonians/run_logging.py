"""
Logs de execução - agent-hamiltonians
=====================================

Auditoria em JSON de cada execução (início, fim, duração) e alerta de
execuções lentas.
"""

import json
import logging
import time
from contextlib import contextmanager
from datetime import datetime, timezone

from . import settings

audit_logger = logging.getLogger("audit")
logger = logging.getLogger("agent_hamiltonians")


def _timestamp():
    return datetime.now(timezone.utc).isoformat()


@contextmanager
def audit_run(operation, **context):
    """
    Registra início e resultado de uma operação crítica

    Uso::

        with audit_run("simulate", scenario="qagi-toy", seed=0) as audit:
            ...
            audit["rows"] = 1001
    """
    start = time.perf_counter()
    audit_logger.info(json.dumps({"event": "operation_start", "operation": operation, "timestamp": _timestamp(), **context}))

    extra = {}
    success = False
    try:
        yield extra
        success = True
    finally:
        duration = time.perf_counter() - start
        audit_data = {
            "event": "operation_complete",
            "operation": operation,
            "duration_seconds": round(duration, 3),
            "success": success,
            "timestamp": _timestamp(),
            **context,
            **extra,
        }
        audit_logger.info(json.dumps(audit_data, default=str))

        # Execuções lentas
        if duration > settings.SLOW_RUN_SECONDS:
            audit_logger.warning(
                json.dumps(
                    {"event": "slow_run", "operation": operation, "duration_seconds": round(duration, 3), **context},
                    default=str,
                )
            )

        logger.info(f"{operation} | Success: {success} | Duration: {round(duration * 1000, 2)}ms")
