"""Angle computations between subspaces.

The central quantity is the (asymmetric) Grassmann angle in [0, pi/2]: its
cosine is the factor by which volumes in V shrink when orthogonally
projected onto W, i.e. ``cos = |P nu| / |nu|`` for a blade nu representing V.
It equals the product of the principal cosines when dim V <= dim W and is
pi/2 otherwise.  The complementary angle is the Grassmann angle against the
orthogonal complement of W; unlike the plain angle it is symmetric.

Every route here reports an ``AngleReport`` carrying the method used and a
cross-method residual when one was computed.  All cos^2 values are clamped
into [0, 1] before sqrt/arccos; negative values beyond round-off raise
NumericalConsistencyError so genuine bugs cannot hide behind a clamp.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateBasisError, DimensionMismatchError, DomainError, NumericalConsistencyError
from .exterior import Blade, blade_inner, blade_norm
from .fields import (
    DEFAULT_TOLERANCE,
    GRAM_CONDITION_LIMIT,
    NEGATIVE_COS_SQ_SLACK,
    Field,
    Tolerance,
    as_field_array,
)
from .linalg import det, gram
from .subspaces import Subspace, complement, project_blade

__all__ = [
    "AngleMethod",
    "AngleReport",
    "VectorAngles",
    "vector_angle",
    "grassmann_angle",
    "grassmann_angle_principal",
    "grassmann_angle_equal_dim",
    "grassmann_angle_any_dim",
    "complementary_angle",
    "complementary_angle_formula",
    "complementary_angle_orthonormal",
    "oriented_grassmann_cos",
]


class AngleMethod(enum.Enum):
    PROJECTION = "Projection"
    EQUAL_DIM_FORMULA = "EqualDimFormula"
    ANY_DIM_FORMULA = "AnyDimFormula"
    PRINCIPAL_PRODUCT = "PrincipalProduct"
    COMPLEMENTARY_FORMULA = "ComplementaryFormula"
    COMPLEMENTARY_PROJECTION = "ComplementaryProjection"
    ORIENTED = "Oriented"


@dataclass(frozen=True)
class AngleReport:
    """An angle in [0, pi/2] plus how it was computed.

    ``residual`` is the largest disagreement against the cross-check routes
    evaluated alongside the main one (0.0 when none were).
    """

    value: float
    cosine: float
    method: AngleMethod
    residual: float = 0.0

    @property
    def cos_squared(self) -> float:
        return self.cosine**2

    @property
    def degrees(self) -> float:
        return math.degrees(self.value)


class VectorAngles(NamedTuple):
    """Euclidean angle in [0, pi]; Hermitian angle in [0, pi/2] (complex only)."""

    euclidean: float
    hermitian: float | None


def _real_scalar(z, context: str) -> float:
    if abs(np.imag(z)) > NEGATIVE_COS_SQ_SLACK * max(1.0, abs(z)):
        raise NumericalConsistencyError(f"{context} should be real, got imaginary part {np.imag(z):.2e}")
    return float(np.real(z))


def _report_from_cos_sq(cos_sq: float, method: AngleMethod, residual: float = 0.0) -> AngleReport:
    if cos_sq < -NEGATIVE_COS_SQ_SLACK:
        raise NumericalConsistencyError(f"squared cosine came out at {cos_sq}, well below 0")
    clamped = min(max(cos_sq, 0.0), 1.0)
    cosine = math.sqrt(clamped)
    return AngleReport(value=math.acos(cosine), cosine=cosine, method=method, residual=residual)


def _basis_matrix(vectors, field: Field | None) -> tuple[np.ndarray, Field]:
    """Stack basis vectors into columns and reject dependent/ill-conditioned lists."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        mat = vectors
    else:
        rows = [np.asarray(v) for v in vectors]
        if not rows:
            raise DegenerateBasisError("a basis needs at least one vector")
        mat = np.column_stack(rows)
    if field is None:
        field = Field.COMPLEX if np.iscomplexobj(mat) else Field.REAL
    mat = as_field_array(mat, field)
    if mat.shape[1] == 0:
        raise DegenerateBasisError("a basis needs at least one vector")
    s = np.linalg.svd(mat, compute_uv=False)
    # cond(Gram) = cond(basis)^2; reject above the Gram condition limit
    if s[-1] == 0.0 or (s[0] / s[-1]) ** 2 > GRAM_CONDITION_LIMIT:
        raise DegenerateBasisError("basis vectors are linearly dependent or too ill-conditioned")
    return mat, field


def _paired_bases(basis_v, basis_w, field: Field | None):
    mv, fv = _basis_matrix(basis_v, field)
    mw, fw = _basis_matrix(basis_w, field)
    if field is None and fv is not fw:
        # one side looked real only because its entries happened to be real
        target = Field.COMPLEX
        mv, mw = mv.astype(target.dtype), mw.astype(target.dtype)
        fv = target
    if mv.shape[0] != mw.shape[0]:
        raise DimensionMismatchError(f"ambient dimensions differ: {mv.shape[0]} vs {mw.shape[0]}")
    return mv, mw, fv


def vector_angle(v, w, field: Field | None = None) -> VectorAngles:
    """Angles between two nonzero vectors.

    The Euclidean angle uses the real part of the inner product and lives in
    [0, pi]; over the complex field the Hermitian angle uses the modulus and
    lives in [0, pi/2] (it is None over the reals).
    """
    av, aw = np.asarray(v), np.asarray(w)
    if field is None:
        field = Field.COMPLEX if (np.iscomplexobj(av) or np.iscomplexobj(aw)) else Field.REAL
    av, aw = as_field_array(av, field), as_field_array(aw, field)
    if av.shape != aw.shape or av.ndim != 1:
        raise DimensionMismatchError(f"need two vectors of equal length, got {av.shape} and {aw.shape}")
    nv, nw = np.linalg.norm(av), np.linalg.norm(aw)
    if nv == 0.0 or nw == 0.0:
        raise DomainError("vector angles are undefined for the zero vector")
    ip = np.vdot(av, aw)
    euclidean = math.acos(min(max(float(np.real(ip)) / (nv * nw), -1.0), 1.0))
    hermitian = None
    if field is Field.COMPLEX:
        hermitian = math.acos(min(abs(ip) / (nv * nw), 1.0))
    return VectorAngles(euclidean, hermitian)


def _principal_cosines(v: Subspace, w: Subspace) -> np.ndarray:
    return np.clip(np.linalg.svd(gram(w.onb, v.onb), compute_uv=False), 0.0, 1.0)


def grassmann_angle(v: Subspace, w: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> AngleReport:
    """Grassmann angle of v with w by the projected-blade definition.

    Conventions for degenerate dimensions: the angle is 0 when v is the zero
    subspace, and pi/2 whenever dim v > dim w (in particular when w is zero
    and v is not).  The report's residual is the disagreement against the
    product of principal cosines, computed on the same inputs.
    """
    if v.field is not w.field or v.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("subspaces live in different spaces")
    if v.dim == 0:
        return AngleReport(0.0, 1.0, AngleMethod.PROJECTION)
    if v.dim > w.dim:
        return AngleReport(math.pi / 2, 0.0, AngleMethod.PROJECTION)
    cos_proj = blade_norm(project_blade(v.spanning_blade(), w), tol)
    cos_prin = float(np.prod(_principal_cosines(v, w)))
    residual = abs(cos_proj - cos_prin)
    cosine = min(max(cos_proj, 0.0), 1.0)
    return AngleReport(math.acos(cosine), cosine, AngleMethod.PROJECTION, residual)


def grassmann_angle_principal(v: Subspace, w: Subspace) -> AngleReport:
    """Grassmann angle as the product of principal cosines."""
    if v.field is not w.field or v.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("subspaces live in different spaces")
    if v.dim == 0:
        return AngleReport(0.0, 1.0, AngleMethod.PRINCIPAL_PRODUCT)
    if v.dim > w.dim:
        return AngleReport(math.pi / 2, 0.0, AngleMethod.PRINCIPAL_PRODUCT)
    cosine = float(np.prod(_principal_cosines(v, w)))
    return AngleReport(math.acos(min(cosine, 1.0)), cosine, AngleMethod.PRINCIPAL_PRODUCT)


def grassmann_angle_equal_dim(basis_v, basis_w, field: Field | None = None, tol: Tolerance = DEFAULT_TOLERANCE) -> AngleReport:
    """Grassmann angle of two equal-dimensional subspaces from arbitrary bases.

    With the Gram matrices A (of the w's), D (of the v's) and the cross
    matrix B = (<w_i, v_j>):   cos^2 = |det B|^2 / (det A det D).
    """
    mv, mw, _ = _paired_bases(basis_v, basis_w, field)
    if mv.shape[1] != mw.shape[1]:
        raise DimensionMismatchError(
            f"equal-dimension formula needs equal basis sizes, got {mv.shape[1]} and {mw.shape[1]}"
        )
    a = _real_scalar(det(gram(mw, mw)), "det of a Gram matrix")
    d = _real_scalar(det(gram(mv, mv)), "det of a Gram matrix")
    b = det(gram(mw, mv))
    return _report_from_cos_sq(abs(b) ** 2 / (a * d), AngleMethod.EQUAL_DIM_FORMULA)


def grassmann_angle_any_dim(basis_v, basis_w, field: Field | None = None, tol: Tolerance = DEFAULT_TOLERANCE) -> AngleReport:
    """Grassmann angle from arbitrary bases of any dimensions.

    Uses cos^2 = det(B* A^-1 B) / det D, evaluated by a linear solve against
    the Gram matrix A (never an explicit inverse).  When dim V > dim W the
    matrix B* A^-1 B is rank-deficient, so the angle is exactly pi/2 and no
    arithmetic is attempted.
    """
    mv, mw, _ = _paired_bases(basis_v, basis_w, field)
    if mv.shape[1] > mw.shape[1]:
        return AngleReport(math.pi / 2, 0.0, AngleMethod.ANY_DIM_FORMULA)
    a = gram(mw, mw)
    b = gram(mw, mv)
    d = _real_scalar(det(gram(mv, mv)), "det of a Gram matrix")
    num = _real_scalar(det(b.conj().T @ np.linalg.solve(a, b)), "det of a projected Gram matrix")
    return _report_from_cos_sq(num / d, AngleMethod.ANY_DIM_FORMULA)


def complementary_angle(v: Subspace, w: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> AngleReport:
    """Angle of v with the orthogonal complement of w (symmetric in v, w).

    Computed by the projection definition against complement(w) and
    cross-checked against the product of principal sines and against the
    determinant formula det(1 - P P*) in orthonormal bases; the report's
    residual is the worst disagreement.
    """
    if v.field is not w.field or v.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("subspaces live in different spaces")
    base = grassmann_angle(v, complement(w), tol)
    sines = np.sqrt(np.clip(1.0 - _principal_cosines(v, w) ** 2, 0.0, 1.0))
    cos_sines = float(np.prod(sines))
    cos_det = math.sqrt(max(complementary_angle_orthonormal(v, w, tol).cos_squared, 0.0))
    residual = max(abs(base.cosine - cos_sines), abs(base.cosine - cos_det), base.residual)
    return AngleReport(base.value, base.cosine, AngleMethod.COMPLEMENTARY_PROJECTION, residual)


def complementary_angle_formula(basis_v, basis_w, field: Field | None = None, tol: Tolerance = DEFAULT_TOLERANCE) -> AngleReport:
    """Complementary angle from arbitrary bases via a Schur complement:
    cos^2 = det(A - B D^-1 B*) / det A."""
    mv, mw, _ = _paired_bases(basis_v, basis_w, field)
    a = gram(mw, mw)
    b = gram(mw, mv)
    d = gram(mv, mv)
    schur = a - b @ np.linalg.solve(d, b.conj().T)
    num = _real_scalar(det(schur), "det of a Schur complement")
    den = _real_scalar(det(a), "det of a Gram matrix")
    return _report_from_cos_sq(num / den, AngleMethod.COMPLEMENTARY_FORMULA)


def complementary_angle_orthonormal(v: Subspace, w: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> AngleReport:
    """Complementary angle via cos^2 = det(1 - P P*) with P the projection
    matrix between the stored orthonormal bases."""
    if v.field is not w.field or v.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("subspaces live in different spaces")
    p = gram(w.onb, v.onb)
    eye = np.eye(w.dim, dtype=w.field.dtype)
    cos_sq = _real_scalar(det(eye - p @ p.conj().T), "det(1 - P P*)")
    return _report_from_cos_sq(cos_sq, AngleMethod.COMPLEMENTARY_FORMULA)


def oriented_grassmann_cos(nu: Blade, omega: Blade, tol: Tolerance = DEFAULT_TOLERANCE) -> complex | float:
    """Cosine of the oriented Grassmann angle: ``<nu, omega> / (|nu| |omega|)``.

    A field scalar whose modulus is the unoriented cosine; over the reals its
    sign tracks relative orientation, over the complex field it carries the
    phase of the blade inner product (only the cosine is defined there).
    """
    if nu.grade != omega.grade:
        raise DomainError(f"oriented angle needs equal grades, got {nu.grade} and {omega.grade}")
    nn, no = blade_norm(nu, tol), blade_norm(omega, tol)
    if nu.is_zero(tol) or omega.is_zero(tol) or nn == 0.0 or no == 0.0:
        raise DomainError("oriented angle is undefined for zero blades")
    return blade_inner(nu, omega) / (nn * no)
