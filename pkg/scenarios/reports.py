"""
Relatórios de cenários - agent-hamiltonians
===========================================

Matriz de comutação entre termos (colchetes de Poisson no lado clássico,
comutadores no lado quântico) e ajuste da taxa de decoerência de ρ_E.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import linregress

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import NumericalError, ValidationError
from agent_hamiltonians.models import Side
from classical_engine import ClassicalHamiltonian, HamiltonianTerm, poisson_bracket
from tensor_core import HermitianOperator, commutator_norm

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 20


@dataclass(frozen=True)
class CommutationReport:
    """
    Matriz simétrica de |{H_i, H_j}| ou ‖[H_i, H_j]‖_F com diagonal nula
    """

    names: tuple
    matrix: np.ndarray
    side: Side

    def entry(self, left, right):
        return float(self.matrix[self.names.index(left), self.names.index(right)])

    def max_offdiagonal(self):
        return float(np.max(self.matrix, initial=0.0))

    def to_dict(self):
        return {"side": self.side.value, "names": list(self.names), "matrix": self.matrix.tolist()}


def _named_terms(terms):
    if isinstance(terms, ClassicalHamiltonian):
        return [(term.name, term) for term in terms.terms]
    if isinstance(terms, dict):
        return list(terms.items())

    named = []
    for index, item in enumerate(terms):
        if isinstance(item, HamiltonianTerm):
            named.append((item.name, item))
        elif isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
            named.append(item)
        else:
            named.append((f"H{index}", item))
    return named


def _is_classical(term):
    return isinstance(term, HamiltonianTerm) or (callable(term) and not isinstance(term, np.ndarray))


def commutation_report(terms, side, phase_state=None, t=0.0):
    """
    Comutação par a par dos termos de um lado só

    ``terms`` aceita um ``ClassicalHamiltonian``, um dict nome -> termo ou
    uma lista (de termos ou pares (nome, termo)). Termos clássicos são
    ``HamiltonianTerm`` ou funções (q, p); quânticos são operadores.

    Erros:
        ValidationError: mixed-side, lista vazia ou estado de prova ausente
    """
    side = Side(side)
    named = _named_terms(terms)
    if not named:
        raise ValidationError("Relatório de comutação sem termos", field="terms")

    classical = [_is_classical(term) for _, term in named]
    if any(classical) and not all(classical) or all(classical) != (side == Side.CLASSICAL):
        raise ValidationError(
            f"Termos incompatíveis com o lado {side.value}",
            code="mixed-side",
            side=side.value,
            classical=[name for (name, _), flag in zip(named, classical) if flag],
        )

    names = tuple(name for name, _ in named)
    size = len(named)
    matrix = np.zeros((size, size))
    if side == Side.CLASSICAL:
        if size > 1 and phase_state is None:
            raise ValidationError("Lado clássico requer um estado de prova", field="phase_state")
        functions = [_as_function(term, t) for _, term in named]
        for i in range(size):
            for j in range(i + 1, size):
                matrix[i, j] = matrix[j, i] = abs(poisson_bracket(functions[i], functions[j], phase_state))
    else:
        operators = [term if isinstance(term, HermitianOperator) else HermitianOperator(term) for _, term in named]
        for i in range(size):
            for j in range(i + 1, size):
                matrix[i, j] = matrix[j, i] = commutator_norm(operators[i], operators[j])

    logger.debug(f"Comutação ({side.value}) de {list(names)}: máximo {np.max(matrix, initial=0.0):.3e}")
    return CommutationReport(names, matrix, side)


def _as_function(term, t):
    if isinstance(term, HamiltonianTerm):
        return lambda q, p: term.energy(q, p, t)
    return term


class DecoherenceFit(NamedTuple):
    rate: float
    r_squared: float


def fit_decoherence_rate(trajectory, series="offdiag_env_abs"):
    """
    Ajuste linear de ln|ρ₀₁(t)| contra t; a taxa é a inclinação negada

    Erros:
        ValidationError: series-too-short (menos de 20 pontos)
        NumericalError: nonpositive-magnitude (amostra <= 1e-12)
    """
    values = trajectory.series(series)
    times = np.asarray(trajectory.times, dtype=float)
    if values.size < MIN_FIT_POINTS:
        raise ValidationError(
            f"Série com {values.size} pontos; mínimo {MIN_FIT_POINTS}",
            code="series-too-short",
            points=int(values.size),
        )

    small = np.flatnonzero(values <= settings.SUPPORT_TOL)
    if small.size:
        logger.warning(f"Série {series} com magnitude não positiva em {small.size} amostras")
        raise NumericalError(
            "Magnitude não positiva na série de coerência",
            code="nonpositive-magnitude",
            index=int(small[0]),
            value=float(values[small[0]]),
        )

    logs = np.log(values)
    if np.ptp(logs) == 0:
        return DecoherenceFit(0.0, 1.0)

    fit = linregress(times, logs)
    return DecoherenceFit(float(-fit.slope), float(fit.rvalue**2))
