"""
Validadores numéricos - agent-hamiltonians
==========================================
"""

import math

import numpy as np

from .exceptions import NumericalError, ValidationError


def validate_finite(value, field="value"):
    """
    Valida que um escalar ou array contém apenas valores finitos
    """
    array = np.asarray(value)
    if not np.all(np.isfinite(array)):
        raise NumericalError(f"{field} contém valores não finitos", code="nonfinite", field=field)
    return value


def validate_positive(value, field="value"):
    """
    Valida número real estritamente positivo
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{field} deve ser numérico", field=field)

    if not math.isfinite(number) or number <= 0:
        raise ValidationError(f"{field} deve ser positivo", field=field, value=number)
    return number


def validate_nonnegative(value, field="value"):
    """
    Valida número real não negativo
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{field} deve ser numérico", field=field)

    if not math.isfinite(number) or number < 0:
        raise ValidationError(f"{field} deve ser não negativo", field=field, value=number)
    return number


def validate_positive_int(value, field="value", minimum=1):
    """
    Valida inteiro maior ou igual a ``minimum``
    """
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValidationError(f"{field} deve ser inteiro", field=field)
    if value < minimum:
        raise ValidationError(f"{field} deve ser >= {minimum}", field=field, value=int(value))
    return int(value)


def validate_square(matrix, field="matrix"):
    """
    Valida matriz bidimensional quadrada
    """
    array = np.asarray(matrix)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValidationError(f"{field} deve ser quadrada", field=field, shape=list(array.shape))
    return array


def validate_unit_vector(vector, field="direction", tol=1e-9):
    """
    Valida vetor de norma unitária
    """
    array = np.asarray(vector, dtype=float).ravel()
    norm = float(np.linalg.norm(array))
    if array.size == 0 or abs(norm - 1.0) > tol:
        raise ValidationError(f"{field} deve ter norma 1", field=field, norm=norm)
    return array


def validate_choice(value, choices, field="value"):
    """
    Valida valor dentro de um conjunto de opções
    """
    if value not in choices:
        raise ValidationError(f"{field} inválido: {value!r}", field=field, choices=sorted(choices))
    return value
