"""
agent-hamiltonians
==================

Simulador de geradores hamiltonianos de agentes em forma clássica
(espaço de fase) e quântica (operador densidade).
"""

from .settings import VERSION as __version__  # noqa: F401
