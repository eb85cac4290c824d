"""
Modelos do motor clássico - agent-hamiltonians
==============================================

Estado no espaço de fase (q, p) e hamiltonianos decompostos em termos nomeados.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import NumericalError, ValidationError

logger = logging.getLogger(__name__)


def _readonly_vector(values, field_name):
    array = np.array(values, dtype=float).ravel()
    if not np.all(np.isfinite(array)):
        raise NumericalError(f"{field_name} contém valores não finitos", code="nonfinite", field=field_name)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class PhaseSpaceState:
    """
    Ponto (q, p) do fibrado cotangente com rótulos de papel por coordenada
    """

    q: np.ndarray
    p: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        q = _readonly_vector(self.q, "q")
        p = _readonly_vector(self.p, "p")
        if q.size < 1 or q.size != p.size:
            raise ValidationError(
                f"q e p devem ter o mesmo comprimento >= 1 ({q.size} != {p.size})",
                field="state",
            )

        labels = tuple(self.labels)
        if labels and len(labels) != q.size:
            raise ValidationError("Um rótulo por coordenada", field="labels", expected=int(q.size))

        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def zeros(cls, n, labels=()):
        return cls(np.zeros(n), np.zeros(n), labels)

    @property
    def n(self):
        return int(self.q.size)

    def as_vector(self):
        """Concatenação (q, p)"""
        return np.concatenate([self.q, self.p])

    @classmethod
    def from_vector(cls, z, labels=()):
        z = np.asarray(z, dtype=float)
        n = z.size // 2
        return cls(z[:n], z[n:], labels)

    def with_values(self, q=None, p=None):
        return replace(self, q=self.q if q is None else q, p=self.p if p is None else p)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"Coordenada inexistente: {label}", field="labels", label=label)

    def __eq__(self, other):
        if not isinstance(other, PhaseSpaceState):
            return NotImplemented
        return np.array_equal(self.q, other.q) and np.array_equal(self.p, other.p) and self.labels == other.labels

    __hash__ = None


def central_gradient(function, x, step=settings.FD_STEP):
    """Gradiente por diferenças centrais de uma função escalar"""
    x = np.asarray(x, dtype=float)
    gradient = np.zeros(x.size)
    for i in range(x.size):
        forward, backward = x.copy(), x.copy()
        forward[i] += step
        backward[i] -= step
        gradient[i] = (function(forward) - function(backward)) / (2 * step)
    return gradient


@dataclass(frozen=True)
class HamiltonianTerm:
    """
    Termo nomeado H_k(q, p, t)

    ``separable`` indica que ∂H/∂q não depende de p e ∂H/∂p não depende de q.
    Gradientes ausentes são obtidos por diferenças centrais.
    """

    name: str
    energy: Callable
    grad_q: Optional[Callable] = None
    grad_p: Optional[Callable] = None
    exact: Optional[Callable] = None
    separable: bool = True

    def evaluate(self, q, p, t=0.0, exact=False):
        function = self.exact if (exact and self.exact is not None) else self.energy
        return float(function(q, p, t))

    def gradient_q(self, q, p, t=0.0):
        if self.grad_q is not None:
            return np.asarray(self.grad_q(q, p, t), dtype=float)
        return central_gradient(lambda x: self.energy(x, p, t), q)

    def gradient_p(self, q, p, t=0.0):
        if self.grad_p is not None:
            return np.asarray(self.grad_p(q, p, t), dtype=float)
        return central_gradient(lambda x: self.energy(q, x, t), p)


@dataclass(frozen=True)
class ClassicalHamiltonian:
    """
    H_C = Σ_k H_{C,k}

    ``reflecting`` lista coordenadas com fronteira refletora em 0 e
    ``damping`` pares (índice, γ_d) de amortecimento linear do momento.
    """

    terms: tuple
    specs: tuple = ()
    reflecting: tuple = ()
    damping: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        terms = tuple(self.terms)
        names = [term.name for term in terms]
        if not terms:
            raise ValidationError("Hamiltoniano sem termos", field="terms")
        if len(set(names)) != len(names):
            raise ValidationError(f"Nomes de termos repetidos: {names}", field="terms")

        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "specs", tuple(self.specs))
        object.__setattr__(self, "reflecting", tuple(sorted(set(self.reflecting))))
        object.__setattr__(self, "damping", tuple(self.damping))

    @property
    def names(self):
        return [term.name for term in self.terms]

    @property
    def is_separable(self):
        return all(term.separable for term in self.terms)

    def term(self, name):
        for term in self.terms:
            if term.name == name:
                return term
        raise ValidationError(f"Termo inexistente: {name}", code="metric-unknown", metric=name)

    def term_energies(self, state, t=0.0, exact=False):
        return {term.name: term.evaluate(state.q, state.p, t, exact) for term in self.terms}

    def evaluate(self, state, t=0.0, exact=False):
        """
        Energia total; ``exact=True`` usa indicadores sem suavização
        """
        energy = 0.0
        for term in self.terms:
            energy += term.evaluate(state.q, state.p, t, exact)
        if not np.isfinite(energy):
            raise NumericalError("Energia não finita", code="nonfinite", energy=energy)
        return energy

    def grad_q(self, q, p, t=0.0):
        return sum(term.gradient_q(q, p, t) for term in self.terms)

    def grad_p(self, q, p, t=0.0):
        return sum(term.gradient_p(q, p, t) for term in self.terms)

    def as_function(self, t=0.0):
        """Observável H(q, p) para colchetes de Poisson"""
        return lambda q, p: self.evaluate(PhaseSpaceState(q, p), t)

    def with_damping(self, gamma, indices):
        return replace(self, damping=tuple((int(i), float(gamma)) for i in indices))

    def __add__(self, other):
        if not isinstance(other, ClassicalHamiltonian):
            return NotImplemented
        return ClassicalHamiltonian(
            self.terms + other.terms,
            specs=self.specs + other.specs,
            reflecting=self.reflecting + other.reflecting,
            damping=self.damping + other.damping,
            meta={**self.meta, **other.meta},
        )
