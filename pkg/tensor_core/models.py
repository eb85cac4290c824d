"""
Modelos do núcleo tensorial - agent-hamiltonians
================================================

Matrizes complexas densas, operadores hermitianos e operadores densidade.
Todos os valores são imutáveis após a construção.
"""

import logging
from dataclasses import dataclass

import numpy as np

from agent_hamiltonians import settings
from agent_hamiltonians.exceptions import DimensionError, NumericalError, ValidationError

logger = logging.getLogger(__name__)


def as_complex_matrix(data, field="matrix"):
    """
    Converte para matriz complexa 2D somente leitura, validando o limite de entradas
    """
    array = np.array(data, dtype=np.complex128)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2:
        raise ValidationError(f"{field} deve ser bidimensional", field=field, shape=list(array.shape))

    rows, cols = array.shape
    if rows < 1 or cols < 1:
        raise ValidationError(f"{field} não pode ser vazia", field=field)
    if rows * cols > settings.ENTRY_CAP:
        raise DimensionError(
            f"{field} com {rows}x{cols} entradas excede o limite",
            code="dimension-cap-exceeded",
            rows=rows,
            cols=cols,
        )
    if not np.all(np.isfinite(array)):
        raise NumericalError(f"{field} contém valores não finitos", code="nonfinite", field=field)

    array.flags.writeable = False
    return array


def _readonly(array):
    array = np.array(array, dtype=np.complex128)
    array.flags.writeable = False
    return array


def hermiticity_error(matrix):
    """Maior |M[i][j] - conj(M[j][i])|"""
    return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0


class HermitianOperator:
    """
    Operador autoadjunto (observáveis e geradores quânticos)

    Entradas dentro da tolerância são simetrizadas ((M + M†)/2); fora dela
    são rejeitadas.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix, tol=settings.HERMITIAN_TOL):
        array = as_complex_matrix(matrix)
        if array.shape[0] != array.shape[1]:
            raise ValidationError("Operador hermitiano deve ser quadrado", field="matrix", shape=list(array.shape))

        error = hermiticity_error(array)
        if error > tol:
            raise ValidationError(
                f"Matriz não hermitiana (erro {error:.3e})",
                code="non-hermitian",
                error=error,
                tolerance=tol,
            )
        self._matrix = _readonly((array + array.conj().T) / 2)

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return self._matrix.shape[0]

    @classmethod
    def zeros(cls, dim):
        return cls(np.zeros((dim, dim)))

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    def expectation(self, rho):
        """Tr(H ρ) real"""
        rho_matrix = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho)
        return float(np.real(np.trace(self._matrix @ rho_matrix)))

    def __add__(self, other):
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError("Soma de operadores com dimensões diferentes", left=self.dim, right=other.dim)
        return HermitianOperator(self._matrix + other.matrix)

    def __sub__(self, other):
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError("Diferença de operadores com dimensões diferentes", left=self.dim, right=other.dim)
        return HermitianOperator(self._matrix - other.matrix)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, np.floating, np.integer)):
            return HermitianOperator(float(scalar) * self._matrix)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim})"


class DensityOperator:
    """
    Operador positivo de traço unitário sobre um registro composto
    """

    __slots__ = ("_matrix", "_factor_dims")

    def __init__(
        self,
        matrix,
        factor_dims=None,
        *,
        trace_tol=settings.TRACE_TOL,
        eig_tol=settings.EIGEN_TOL,
        check=True,
    ):
        array = as_complex_matrix(matrix)
        if array.shape[0] != array.shape[1]:
            raise ValidationError("Operador densidade deve ser quadrado", field="matrix", shape=list(array.shape))

        dim = array.shape[0]
        factor_dims = tuple(int(d) for d in (factor_dims or (dim,)))
        if any(d < 1 for d in factor_dims) or int(np.prod(factor_dims)) != dim:
            raise DimensionError(
                f"Produto de factor_dims {factor_dims} difere da dimensão {dim}",
                factor_dims=list(factor_dims),
                dim=dim,
            )

        if check:
            error = hermiticity_error(array)
            if error > settings.HERMITIAN_TOL:
                raise ValidationError(f"Operador densidade não hermitiano (erro {error:.3e})", code="non-hermitian")

            trace = float(np.real(np.trace(array)))
            if abs(trace - 1.0) > trace_tol:
                raise ValidationError(f"Traço {trace!r} difere de 1", code="trace-drift", trace=trace)

            array = (array + array.conj().T) / 2
            min_eig = float(np.linalg.eigvalsh(array)[0])
            if min_eig < -eig_tol:
                raise ValidationError(
                    f"Autovalor mínimo {min_eig:.3e} negativo",
                    code="positivity-violation",
                    min_eigenvalue=min_eig,
                )

        self._matrix = _readonly(array)
        self._factor_dims = factor_dims

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return self._matrix.shape[0]

    @property
    def factor_dims(self):
        return self._factor_dims

    @classmethod
    def from_state_vector(cls, vector, factor_dims=None):
        psi = np.asarray(vector, dtype=np.complex128).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError("Vetor de estado nulo", field="vector")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), factor_dims)

    @classmethod
    def basis(cls, index, dim):
        matrix = np.zeros((dim, dim))
        matrix[index, index] = 1.0
        return cls(matrix)

    @classmethod
    def maximally_mixed(cls, dim, factor_dims=None):
        return cls(np.eye(dim) / dim, factor_dims)

    @classmethod
    def product(cls, *states):
        """Produto tensorial de operadores densidade (fatores concatenados)"""
        matrix = np.array([[1.0 + 0j]])
        factors = []
        for state in states:
            matrix = np.kron(matrix, state.matrix)
            factors.extend(state.factor_dims)
        return cls(matrix, factors)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self._matrix)

    def purity(self):
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def offdiagonal(self, i=0, j=1):
        return complex(self._matrix[i, j])

    def __repr__(self):
        return f"DensityOperator(dim={self.dim}, factor_dims={self._factor_dims})"


@dataclass(frozen=True)
class RegisterLayout:
    """
    Registro composto com fatores nomeados (ordem do produto tensorial)
    """

    names: tuple
    dims: tuple

    def __post_init__(self):
        names, dims = tuple(self.names), tuple(int(d) for d in self.dims)
        if len(names) != len(dims) or len(set(names)) != len(names):
            raise ValidationError("Layout com nomes repetidos ou dims incompatíveis", field="layout")
        if any(d < 1 for d in dims):
            raise ValidationError("Dimensões de fator devem ser positivas", field="dims")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, *names):
        return cls(tuple(names), (2,) * len(names))

    @property
    def dim(self):
        return int(np.prod(self.dims))

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"Fator inexistente: {name}", code="invalid-factor-index", factor=name)
