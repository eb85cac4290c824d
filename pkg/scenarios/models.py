"""
Modelos de cenários - agent-hamiltonians
========================================

Configuração de cenários (acoplamentos, tempo, leitura) e descritores de
canais entre registros clássicos e quânticos.
"""

import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import ValidationError
from agent_hamiltonians.models import GeneratorSpec
from agent_hamiltonians.validators import validate_nonnegative, validate_positive, validate_positive_int
from tensor_core import as_complex_matrix


class ScenarioKind(str, Enum):
    QAGI = "qagi-toy"
    CAGI = "cagi-toy"
    CUSTOM = "custom"


class ReadoutMode(str, Enum):
    """Como o ponteiro do QAGI é lido entre blocos de evolução"""

    PROJECTIVE = "projective"
    NONSELECTIVE = "nonselective"
    DEPHASING = "dephasing"
    NONE = "none"


class RegisterKind(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class ChannelKind(str, Enum):
    CTC = "CTC"
    CTQ = "CTQ"
    QTC = "QTC"
    QTQ = "QTQ"


# "energy" cobre energy_total e energy_<termo>
METRIC_NAMES = ("energy", "vn_entropy_env", "offdiag_env_abs", "qfi_policy")

COUPLING_NAMES = ("kappa", "mu", "g", "J", "lam", "mass")


def _finite(value, field_name):
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{field_name} deve ser numérico", field=field_name)
    if not math.isfinite(number):
        raise ValidationError(f"{field_name} deve ser finito", field=field_name, value=number)
    return number


def _field_error(exc, field_name):
    return ValidationError(str(exc), code=exc.code, field=field_name, **{k: v for k, v in exc.details.items() if k != "field"})


@dataclass(frozen=True)
class Couplings:
    """
    Constantes de acoplamento κ, μ, g, J, λ, m e pulsos η(t)

    ``eta`` é uma sequência de pulsos (início, fim, amplitude).
    """

    kappa: float = 0.5
    mu: float = 1.0
    g: float = 0.3
    J: float = 0.7
    lam: float = 1.0
    mass: float = 1.0
    eta: tuple = ()

    def __post_init__(self):
        for name in COUPLING_NAMES:
            object.__setattr__(self, name, _finite(getattr(self, name), f"couplings.{name}"))
        try:
            validate_positive(self.mass, field="couplings.m")
        except ValidationError as exc:
            raise _field_error(exc, "couplings.m")

        pulses = []
        for pulse in self.eta:
            if len(pulse) != 3:
                raise ValidationError("Pulso η deve ser (início, fim, amplitude)", field="couplings.eta")
            start, stop, amplitude = (_finite(value, "couplings.eta") for value in pulse)
            if stop < start:
                raise ValidationError("Pulso η com fim anterior ao início", field="couplings.eta")
            pulses.append((start, stop, amplitude))
        object.__setattr__(self, "eta", tuple(pulses))

    def eta_at(self, t):
        """η(t) constante por partes; pulsos sobrepostos somam"""
        return sum(amplitude for start, stop, amplitude in self.eta if start <= t < stop)


@dataclass(frozen=True)
class Timing:
    dt: float = 0.01
    steps: int = 1000

    def __post_init__(self):
        try:
            object.__setattr__(self, "dt", validate_positive(self.dt, field="dt"))
        except ValidationError as exc:
            raise _field_error(exc, "timing.dt")
        try:
            object.__setattr__(self, "steps", validate_positive_int(self.steps, field="steps"))
        except ValidationError as exc:
            raise _field_error(exc, "timing.steps")

    @property
    def duration(self):
        return self.dt * self.steps


@dataclass(frozen=True)
class Readout:
    """
    Leitura do ponteiro: modo, intervalo em passos e constante c de γ = c·κ²
    """

    mode: ReadoutMode = ReadoutMode.PROJECTIVE
    every: int = 10
    dephasing_constant: float = settings.DEFAULT_DEPHASING_CONSTANT

    def __post_init__(self):
        try:
            object.__setattr__(self, "mode", ReadoutMode(self.mode))
        except ValueError:
            raise ValidationError(
                f"Modo de leitura inválido: {self.mode!r}",
                field="readout.mode",
                choices=[mode.value for mode in ReadoutMode],
            )
        try:
            object.__setattr__(self, "every", validate_positive_int(self.every, field="every"))
            object.__setattr__(
                self, "dephasing_constant", validate_nonnegative(self.dephasing_constant, field="dephasing_constant")
            )
        except ValidationError as exc:
            raise _field_error(exc, f"readout.{exc.details.get('field')}")


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Configuração completa e validada de uma execução
    """

    scenario: ScenarioKind
    couplings: Couplings = field(default_factory=Couplings)
    timing: Timing = field(default_factory=Timing)
    seed: int = 0
    metrics: tuple = ()
    readout: Readout = field(default_factory=Readout)
    smoothing: float = settings.DEFAULT_SMOOTHING
    generators: tuple = ()
    initial: dict = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "scenario", ScenarioKind(self.scenario))
        except ValueError:
            raise ValidationError(
                f"Cenário desconhecido: {self.scenario!r}",
                field="scenario",
                choices=[kind.value for kind in ScenarioKind],
            )
        object.__setattr__(self, "seed", validate_positive_int(self.seed, field="seed", minimum=0))
        object.__setattr__(self, "smoothing", validate_positive(self.smoothing, field="smoothing"))

        metrics = tuple(self.metrics)
        unknown = sorted(set(metrics) - set(METRIC_NAMES))
        if unknown:
            raise ValidationError(
                f"Métricas desconhecidas: {', '.join(unknown)}",
                code="metric-unknown",
                field="metrics",
                choices=list(METRIC_NAMES),
            )
        object.__setattr__(self, "metrics", metrics)

        generators = tuple(spec if isinstance(spec, GeneratorSpec) else GeneratorSpec(**spec) for spec in self.generators)
        if self.scenario == ScenarioKind.CUSTOM and not generators:
            raise ValidationError("Cenário custom requer geradores", code="missing-parameter", field="generators")
        object.__setattr__(self, "generators", generators)

    def wants(self, metric):
        """Métrica solicitada (lista vazia solicita todas)"""
        return not self.metrics or metric in self.metrics

    def with_seed(self, seed):
        return replace(self, seed=seed)

    def with_coupling(self, name, value):
        """Cópia com um acoplamento alterado (``lambda`` e ``m`` aceitos como apelidos)"""
        name = {"lambda": "lam", "m": "mass"}.get(name, name)
        if name not in COUPLING_NAMES:
            raise ValidationError(f"Acoplamento desconhecido: {name}", field="param", choices=list(COUPLING_NAMES))
        return replace(self, couplings=replace(self.couplings, **{name: value}))

    def to_dict(self):
        """Eco JSON da configuração (mesmas chaves aceitas pelo parser)"""
        couplings = asdict(self.couplings)
        couplings["lambda"] = couplings.pop("lam")
        couplings["m"] = couplings.pop("mass")
        couplings["eta"] = [list(pulse) for pulse in self.couplings.eta]
        data = {
            "scenario": self.scenario.value,
            "couplings": couplings,
            "timing": {"dt": self.timing.dt, "steps": self.timing.steps},
            "seed": self.seed,
            "metrics": list(self.metrics),
            "readout": {
                "mode": self.readout.mode.value,
                "every": self.readout.every,
                "dephasing_constant": self.readout.dephasing_constant,
            },
            "smoothing": self.smoothing,
        }
        if self.generators:
            data["generators"] = [
                {"kind": spec.kind.value, "side": spec.side.value, "params": spec.params} for spec in self.generators
            ]
        if self.initial:
            data["initial"] = self.initial
        return data


@dataclass(frozen=True)
class ChannelDescriptor:
    """
    Canal entre registros, realizado por operadores de Kraus

    Registros clássicos são representados pelo subcaso diagonal dos
    operadores densidade; mapas estocásticos viram Kraus √S_ji |j⟩⟨i|.
    """

    input_kind: RegisterKind
    output_kind: RegisterKind
    kraus: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "input_kind", RegisterKind(self.input_kind))
        object.__setattr__(self, "output_kind", RegisterKind(self.output_kind))

        kraus = tuple(as_complex_matrix(operator, field="kraus") for operator in self.kraus)
        if not kraus:
            raise ValidationError("Canal sem operadores de Kraus", field="kraus")
        shape = kraus[0].shape
        if any(operator.shape != shape for operator in kraus):
            raise ValidationError("Operadores de Kraus com formas diferentes", field="kraus")
        object.__setattr__(self, "kraus", kraus)

        completeness = sum(operator.conj().T @ operator for operator in kraus)
        if self.input_kind == RegisterKind.QUANTUM:
            error = float(np.max(np.abs(completeness - np.eye(self.in_dim))))
        else:
            # entrada clássica: basta preservar o traço das entradas diagonais
            error = float(np.max(np.abs(np.diag(completeness) - 1.0)))
        if error > settings.TRACE_TOL:
            raise ValidationError(
                f"Realização não preserva o traço (erro {error:.3e})",
                code="trace-nonpreserving",
                name=self.name,
                error=error,
            )

    @classmethod
    def from_stochastic(cls, matrix, input_kind=RegisterKind.CLASSICAL, output_kind=RegisterKind.CLASSICAL, name=""):
        """Mapa estocástico por colunas S[saída, entrada]"""
        stochastic = np.asarray(matrix, dtype=float)
        if stochastic.ndim != 2 or np.any(stochastic < 0):
            raise ValidationError("Matriz estocástica inválida", field="realization")
        if np.max(np.abs(stochastic.sum(axis=0) - 1.0)) > settings.TRACE_TOL:
            raise ValidationError("Colunas não somam 1", code="trace-nonpreserving", name=name)

        rows, cols = stochastic.shape
        kraus = []
        for j in range(rows):
            for i in range(cols):
                if stochastic[j, i] > 0:
                    operator = np.zeros((rows, cols))
                    operator[j, i] = math.sqrt(stochastic[j, i])
                    kraus.append(operator)
        return cls(input_kind, output_kind, tuple(kraus), name)

    @property
    def in_dim(self):
        return self.kraus[0].shape[1]

    @property
    def out_dim(self):
        return self.kraus[0].shape[0]

    @property
    def declared_kind(self):
        prefix = "C" if self.input_kind == RegisterKind.CLASSICAL else "Q"
        suffix = "C" if self.output_kind == RegisterKind.CLASSICAL else "Q"
        return ChannelKind(f"{prefix}T{suffix}")
