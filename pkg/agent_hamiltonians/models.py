"""
Modelos base para agent-hamiltonians
====================================

Tipos de valor compartilhados entre os motores clássico e quântico.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import expit

from .exceptions import ValidationError


class GeneratorKind(str, Enum):
    """Geradores do catálogo"""

    INDUCTION = "induction"
    REASONING = "reasoning"
    RECURSION = "recursion"
    LEARNING = "learning"
    SENSING = "sensing"
    ENVIRONMENT = "environment"


class Side(str, Enum):
    """Realização clássica (espaço de fase) ou quântica (operador)"""

    CLASSICAL = "classical"
    QUANTUM = "quantum"


# Parâmetros obrigatórios por (lado, tipo); os demais têm padrão
REQUIRED_PARAMS = {
    (Side.CLASSICAL, GeneratorKind.INDUCTION): {"data", "predictor"},
    (Side.CLASSICAL, GeneratorKind.REASONING): {"clauses"},
    (Side.CLASSICAL, GeneratorKind.RECURSION): set(),
    (Side.CLASSICAL, GeneratorKind.LEARNING): {"loss"},
    (Side.CLASSICAL, GeneratorKind.SENSING): {"kappa"},
    (Side.CLASSICAL, GeneratorKind.ENVIRONMENT): set(),
    (Side.QUANTUM, GeneratorKind.REASONING): {"projectors"},
    (Side.QUANTUM, GeneratorKind.RECURSION): {"history"},
    (Side.QUANTUM, GeneratorKind.LEARNING): {"n_qubits", "couplings"},
    (Side.QUANTUM, GeneratorKind.SENSING): {"kappa", "observable"},
    (Side.QUANTUM, GeneratorKind.ENVIRONMENT): {"bare"},
}


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Descrição declarativa de um gerador hamiltoniano (tipo + parâmetros)
    """

    kind: GeneratorKind
    side: Side
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", GeneratorKind(self.kind))
        except ValueError:
            raise ValidationError(f"Tipo de gerador desconhecido: {self.kind!r}", code="unknown-kind", kind=str(self.kind))
        try:
            object.__setattr__(self, "side", Side(self.side))
        except ValueError:
            raise ValidationError(f"Lado inválido: {self.side!r}", field="side")

    def require_side(self, side):
        """Garante que a especificação pertence ao motor esperado"""
        if self.side != Side(side):
            raise ValidationError(
                f"Gerador {self.kind.value} é {self.side.value}, esperado {Side(side).value}",
                field="side",
                kind=self.kind.value,
            )

    def validate(self):
        """Valida a completude dos parâmetros obrigatórios"""
        key = (self.side, self.kind)
        if key not in REQUIRED_PARAMS:
            raise ValidationError(
                f"Gerador {self.kind.value} não tem realização {self.side.value}",
                code="unknown-kind",
                kind=self.kind.value,
                side=self.side.value,
            )

        missing = sorted(REQUIRED_PARAMS[key] - set(self.params))
        if missing:
            raise ValidationError(
                f"Parâmetros ausentes para {self.kind.value}: {', '.join(missing)}",
                code="missing-parameter",
                missing=missing,
            )
        return self

    def get(self, name, default=None):
        return self.params.get(name, default)


@dataclass(frozen=True)
class Literal:
    """
    Predicado atômico ``q[index] op threshold`` com op em {">", "<"}
    """

    index: int
    op: str = ">"
    threshold: float = 0.0

    def __post_init__(self):
        if self.op not in (">", "<"):
            raise ValidationError(f"Operador de literal inválido: {self.op!r}", field="op")
        if self.index < 0:
            raise ValidationError("Índice de literal negativo", field="index", value=self.index)

    def exact(self, q):
        value = q[self.index]
        return bool(value > self.threshold) if self.op == ">" else bool(value < self.threshold)

    def smooth(self, q, sigma):
        sign = 1.0 if self.op == ">" else -1.0
        return float(expit(sign * (q[self.index] - self.threshold) / sigma))

    def smooth_derivative(self, q, sigma):
        """Derivada de ``smooth`` em relação a q[index]"""
        sign = 1.0 if self.op == ">" else -1.0
        s = self.smooth(q, sigma)
        return sign * s * (1.0 - s) / sigma

    @property
    def satisfying_bit(self):
        """Valor do qubit que satisfaz o literal na elevação quântica"""
        return 1 if self.op == ">" else 0


@dataclass(frozen=True)
class Clause:
    """
    Disjunção de literais; indicador exato ou suavizado por logística
    """

    literals: tuple

    def __post_init__(self):
        literals = tuple(self.literals)
        if not literals:
            raise ValidationError("Cláusula sem literais", field="literals")
        object.__setattr__(self, "literals", literals)

    @classmethod
    def of(cls, *literals):
        return cls(tuple(literals))

    @property
    def indices(self):
        return sorted({literal.index for literal in self.literals})

    def exact(self, q):
        return any(literal.exact(q) for literal in self.literals)

    def smooth(self, q, sigma):
        violated = 1.0
        for literal in self.literals:
            violated *= 1.0 - literal.smooth(q, sigma)
        return 1.0 - violated

    def smooth_gradient(self, q, sigma):
        """Gradiente de ``smooth`` em relação a q"""
        gradient = np.zeros(len(q))
        factors = [1.0 - literal.smooth(q, sigma) for literal in self.literals]
        for k, literal in enumerate(self.literals):
            others = 1.0
            for j, factor in enumerate(factors):
                if j != k:
                    others *= factor
            gradient[literal.index] += literal.smooth_derivative(q, sigma) * others
        return gradient


@dataclass
class TrajectoryRecord:
    """
    Série temporal de estados e métricas derivadas de uma execução
    """

    times: list = field(default_factory=list)
    metric_series: dict = field(default_factory=dict)
    events: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    states: list = field(default_factory=list)

    def record(self, time, state=None, **metrics):
        """Acrescenta uma amostra; o conjunto de métricas é fixado na primeira"""
        if self.times and set(metrics) != set(self.metric_series):
            raise ValidationError(
                "Amostra com métricas diferentes das já registradas",
                field="metrics",
                expected=sorted(self.metric_series),
                received=sorted(metrics),
            )

        if not self.times:
            for name in metrics:
                self.metric_series.setdefault(name, [])

        self.times.append(float(time))
        for name, value in metrics.items():
            self.metric_series[name].append(float(value))
        if state is not None:
            self.states.append(state)

    def series(self, name):
        if name not in self.metric_series:
            raise ValidationError(f"Série inexistente: {name}", code="metric-unknown", metric=name)
        return np.asarray(self.metric_series[name], dtype=float)

    def validate(self):
        for name, values in self.metric_series.items():
            if len(values) != len(self.times):
                raise ValidationError(
                    f"Série {name} com comprimento {len(values)} != {len(self.times)}",
                    field=name,
                )
        return self

    def __len__(self):
        return len(self.times)

    @property
    def final_state(self):
        return self.states[-1] if self.states else None
