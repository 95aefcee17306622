"""Ground field tag and the central tolerance policy.

Every value in the package lives over one of two scalar fields: the reals
(float64) or the complex numbers (complex128, Hermitian inner product with
conjugate-linearity in the first argument).  Mixing fields is an error, never
a silent promotion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Field(enum.Enum):
    """Scalar field of the ambient space."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.complex128 if self is Field.COMPLEX else np.float64)

    def conj(self, x):
        """Field conjugation: identity on the reals, complex conjugate otherwise."""
        return np.conjugate(x) if self is Field.COMPLEX else x


@dataclass(frozen=True)
class Tolerance:
    """Numerical policy knobs used throughout the package.

    rank_eps      relative singular-value cutoff for rank decisions
    residual_eps  pass threshold for identity checks and cross-method residuals
    """

    rank_eps: float = 1e-10
    residual_eps: float = 1e-8

    def __post_init__(self):
        if not (0.0 < self.rank_eps < 1.0):
            raise ValueError(f"rank_eps must be in (0, 1), got {self.rank_eps}")
        if not (0.0 < self.residual_eps < 1.0):
            raise ValueError(f"residual_eps must be in (0, 1), got {self.residual_eps}")


DEFAULT_TOLERANCE = Tolerance()

# Gram matrices with condition number above this are rejected as degenerate
# by the basis-formula angle routines.
GRAM_CONDITION_LIMIT = 1e12

# cos^2 values below this are treated as a consistency failure rather than
# round-off; values in [-NEGATIVE_COS_SQ_SLACK, 0) are clamped silently.
NEGATIVE_COS_SQ_SLACK = 1e-9


def as_field_array(data, field: Field) -> np.ndarray:
    """Coerce array-like data to the dtype of ``field``.

    Complex data in a REAL context raises instead of silently dropping the
    imaginary parts.
    """
    arr = np.asarray(data)
    if field is Field.REAL and np.iscomplexobj(arr):
        from .errors import DimensionMismatchError

        raise DimensionMismatchError("complex entries are not allowed over the real field")
    return arr.astype(field.dtype)
