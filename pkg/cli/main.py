"""
Ponto de entrada da CLI - agent-hamiltonians
============================================

Uso::

    agent-hamiltonians simulate --config fixtures/qagi.json --out runs/
    agent-hamiltonians sweep --config fixtures/qagi.json --out runs/ --param kappa --values 0.25,0.5,1.0 --jobs 3
    agent-hamiltonians report --config fixtures/cagi.json --out runs/
    agent-hamiltonians verify
"""

import argparse
import logging
import sys

from agent_hamiltonians import settings

from .commands import COMMANDS, FORMATS, CliInvocation, handle_error, run_command

logger = logging.getLogger(__name__)


def _float_list(text):
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de números inválida: {text!r}")


def _int_list(text):
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de inteiros inválida: {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="agent-hamiltonians",
        description="Simulador de agentes hamiltonianos clássicos e quânticos",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", dest="config_path", help="arquivo JSON do cenário")
    parser.add_argument("--out", dest="out_dir", help="diretório de saída")
    parser.add_argument("--seed", dest="seed_override", type=int, help="substitui a semente da configuração")
    parser.add_argument("--jobs", type=int, default=1, help="execuções concorrentes em varreduras")
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument("--param", help="acoplamento varrido (ou seed)")
    parser.add_argument("--values", type=_float_list, default=(), help="valores separados por vírgula")
    parser.add_argument("--properties", type=_int_list, default=(), help="propriedades de verify (padrão: todas)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    return parser


def main(argv=None):
    settings.configure_logging()
    args = build_parser().parse_args(argv)
    try:
        invocation = CliInvocation(**vars(args))
    except Exception as exc:
        return handle_error(exc)
    logger.debug(f"Invocação: {invocation}")
    return run_command(invocation)


if __name__ == "__main__":
    sys.exit(main())
