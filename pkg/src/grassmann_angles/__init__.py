"""Grassmann angles between real and complex subspaces.

The Grassmann angle of V with W measures how volumes in V contract under
orthogonal projection onto W.  This package computes it (and its
complementary and oriented variants) by the projection definition, by
determinant formulas in arbitrary bases, and by principal-angle products,
and ships randomized checkers for the Pythagorean-style identities these
angles satisfy.
"""

from .angles import (
    AngleMethod,
    AngleReport,
    VectorAngles,
    complementary_angle,
    complementary_angle_formula,
    complementary_angle_orthonormal,
    grassmann_angle,
    grassmann_angle_any_dim,
    grassmann_angle_equal_dim,
    grassmann_angle_principal,
    oriented_grassmann_cos,
    vector_angle,
)
from .errors import (
    DegenerateBasisError,
    DimensionMismatchError,
    DocumentError,
    DomainError,
    GrassmannError,
    MultiIndexError,
    NumericalConsistencyError,
    SingularPivotError,
)
from .exterior import (
    Blade,
    Contraction,
    CoordinateBladeSet,
    MultiIndex,
    blade_inner,
    blade_norm,
    contract,
    coordinate_blades,
    multi_indices,
    sigma_sign,
    wedge,
)
from .fields import DEFAULT_TOLERANCE, Field, Tolerance
from .identities import (
    SUITE_NAMES,
    IdentityCheck,
    check_binomial_identities,
    check_coordinate_pythagorean,
    check_direct_sum,
    check_line_partition,
    check_oriented_sum,
    check_partition_chain,
    check_partition_converse,
    check_weighted_average,
    random_instance,
    run_suite,
)
from .linalg import det, laplace_expand_det, orthonormalize, schur_det, svd
from .subspaces import (
    Partition,
    PrincipalDecomposition,
    Subspace,
    complement,
    direct_sum,
    is_partially_orthogonal,
    is_principal_partition,
    is_principal_subspace,
    orthogonal_complement_within,
    principal_decomposition,
    project,
    project_blade,
    project_subspace,
)

__version__ = "0.1.0"
