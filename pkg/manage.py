#!/usr/bin/env python
"""Utilitário de linha de comando do agent-hamiltonians."""

import sys


def main():
    """Executa um comando da CLI (simulate, sweep, report, verify)."""
    from cli.main import main as cli_main

    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
