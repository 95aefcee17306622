import math

import numpy as np
import pytest

from grassmann_angles import (
    Blade,
    DomainError,
    Partition,
    Subspace,
    check_binomial_identities,
    check_coordinate_pythagorean,
    check_direct_sum,
    check_line_partition,
    check_oriented_sum,
    check_partition_chain,
    check_partition_converse,
    check_weighted_average,
    grassmann_angle,
    principal_decomposition,
    random_instance,
    run_suite,
)
from grassmann_angles.fields import Field
from grassmann_angles.linalg import gram
from grassmann_angles.sampling import (
    random_orthogonal_basis,
    random_partition,
    random_subspace,
    random_subspace_within,
    rng_from_seed,
    split_subspace,
)

FIELDS = (Field.REAL, Field.COMPLEX)
XI = complex(-0.5, math.sqrt(3) / 2)


def axes_partition(n, field=Field.REAL):
    eye = np.eye(n, dtype=field.dtype)
    return Partition(tuple(Subspace(eye[:, i : i + 1], field, _validate=False) for i in range(n)))


class TestLinePartition:
    def test_direction_cosines_in_r3(self):
        line = Subspace.from_spanning([[1.0, 2.0, 3.0]])
        out = check_line_partition(line, axes_partition(3))
        assert out.passed and out.residual <= 1e-10

    def test_line_inside_one_part(self):
        parts = random_partition(rng_from_seed(1), Field.REAL, 4, [2, 2])
        line = Subspace(parts.parts[0].onb[:, :1], Field.REAL, _validate=False)
        terms = [grassmann_angle(line, p).cos_squared for p in parts.parts]
        assert terms[0] == pytest.approx(1.0, abs=1e-12)
        assert terms[1] == pytest.approx(0.0, abs=1e-12)
        assert check_line_partition(line, parts).passed

    def test_complex_line_probabilities(self):
        rng = rng_from_seed(2)
        line = random_subspace(rng, Field.COMPLEX, 3, 1)
        parts = random_partition(rng, Field.COMPLEX, 3, [2, 1])
        out = check_line_partition(line, parts)
        assert out.passed and out.residual <= 1e-10
        terms = [grassmann_angle(line, p).cos_squared for p in parts.parts]
        assert all(0.0 <= t <= 1.0 for t in terms)
        assert sum(terms) == pytest.approx(1.0, abs=1e-10)

    def test_rejects_non_line(self):
        plane = Subspace.from_spanning(np.eye(3)[:, :2])
        with pytest.raises(DomainError):
            check_line_partition(plane, axes_partition(3))

    def test_rejects_partial_partition(self):
        line = Subspace.from_spanning([[1.0, 1.0, 1.0]])
        partial = Partition(tuple(axes_partition(3).parts[:2]))
        with pytest.raises(DomainError):
            check_line_partition(line, partial)


class TestCoordinatePythagorean:
    def test_plane_against_coordinate_planes(self):
        v = Subspace.from_spanning([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
        out = check_coordinate_pythagorean(v, np.eye(3))
        assert out.passed and out.residual <= 1e-10

    def test_unitary_phase_basis(self):
        # basis columns carry complex phases; each coordinate plane takes an
        # equal third of the squared cosine mass for this subspace
        basis = np.diag([1.0, XI, XI**2]).astype(complex)
        v = Subspace.from_spanning([[1, -XI, 0], [0, XI, -(XI**2)]], field=Field.COMPLEX)
        out = check_coordinate_pythagorean(v, basis)
        assert out.passed and out.residual <= 1e-10

    def test_subspace_equal_to_coordinate_subspace(self):
        v = Subspace.from_spanning(np.eye(4)[:, 1:3])
        out = check_coordinate_pythagorean(v, np.eye(4))
        assert out.passed

    def test_scaled_orthogonal_basis_accepted(self):
        rng = rng_from_seed(3)
        v = random_subspace(rng, Field.REAL, 4, 2)
        basis = np.eye(4) * np.array([0.5, 2.0, 3.0, 0.25])
        assert check_coordinate_pythagorean(v, basis).passed

    def test_non_orthogonal_basis_rejected(self):
        v = Subspace.from_spanning([[1.0, 0.0, 0.0]])
        skew = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(DomainError):
            check_coordinate_pythagorean(v, skew)


class TestBinomialIdentities:
    def test_line_against_planes_sums_to_two(self):
        line = Subspace.from_spanning([[1.0, 2.0, 3.0]])
        out = check_binomial_identities(line, np.eye(3), 2)
        assert out.passed and "target 2" in out.witness

    def test_plane_against_axes_sums_to_two(self):
        plane = Subspace.from_spanning([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
        out = check_binomial_identities(plane, np.eye(3), 1)
        assert out.passed and "target 2" in out.witness

    def test_equal_dimensions_reduce_to_pythagorean(self):
        rng = rng_from_seed(4)
        v = random_subspace(rng, Field.COMPLEX, 4, 2)
        basis = random_orthogonal_basis(rng, Field.COMPLEX, 4)
        binom = check_binomial_identities(v, basis, 2)
        pythag = check_coordinate_pythagorean(v, basis)
        assert binom.passed and pythag.passed
        assert "target 1" in binom.witness

    @pytest.mark.parametrize("q", [0, 4])
    def test_degenerate_coordinate_dimensions(self, q):
        rng = rng_from_seed(5)
        v = random_subspace(rng, Field.REAL, 4, 2)
        assert check_binomial_identities(v, np.eye(4), q).passed


class TestOrientedSum:
    def test_oriented_lines_in_r3(self):
        a = np.array([1.0, 2.0, 2.0])
        b = np.array([-2.0, 1.0, 0.0])
        nu, omega = Blade([a]), Blade([b])
        out = check_oriented_sum(nu, omega, np.eye(3))
        assert out.passed
        # the classic component form of the same identity
        lhs = np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
        rhs = sum(
            (a[i] / np.linalg.norm(a)) * (b[i] / np.linalg.norm(b)) for i in range(3)
        )
        assert lhs == pytest.approx(rhs)

    def test_coordinate_blade_against_itself(self):
        nu = Blade(np.eye(4)[:, :2])
        out = check_oriented_sum(nu, nu, np.eye(4))
        assert out.passed and out.residual <= 1e-12

    def test_random_complex_planes(self):
        rng = rng_from_seed(6)
        from grassmann_angles.sampling import random_blade

        nu = random_blade(rng, Field.COMPLEX, 4, 2)
        omega = random_blade(rng, Field.COMPLEX, 4, 2)
        out = check_oriented_sum(nu, omega, random_orthogonal_basis(rng, Field.COMPLEX, 4))
        assert out.passed and out.residual <= 1e-9

    def test_grade_mismatch_rejected(self):
        with pytest.raises(DomainError):
            check_oriented_sum(Blade(np.eye(3)[:, :1]), Blade(np.eye(3)[:, :2]), np.eye(3))


class TestWeightedAverage:
    def test_planes_in_r3_closed_form(self):
        # V = xy-plane, W = V rotated around the x-axis; U a line in V at
        # angle alpha to the shared axis: cos^2(U, W) = cos^2 a + sin^2 a cos^2 t
        theta, alpha = 0.7, 0.4
        v = Subspace.from_spanning(np.eye(3)[:, :2])
        w = Subspace.from_spanning([[1.0, 0.0, 0.0], [0.0, math.cos(theta), math.sin(theta)]])
        u = Subspace.from_spanning([[math.cos(alpha), math.sin(alpha), 0.0]])
        out = check_weighted_average(u, v, w)
        assert out.passed and out.residual <= 1e-10
        expected = math.cos(alpha) ** 2 + math.sin(alpha) ** 2 * math.cos(theta) ** 2
        assert grassmann_angle(u, w).cos_squared == pytest.approx(expected, abs=1e-12)

    def test_principal_line_collapses_to_single_term(self):
        rng = rng_from_seed(7)
        v = random_subspace(rng, Field.REAL, 4, 2)
        w = random_subspace(rng, Field.REAL, 4, 2)
        pd = principal_decomposition(v, w)
        u = Subspace(pd.e_basis[:, :1], Field.REAL, _validate=False)
        out = check_weighted_average(u, v, w)
        assert out.passed
        assert grassmann_angle(u, w).cos_squared == pytest.approx(
            math.cos(pd.angles[0]) ** 2, abs=1e-10
        )

    def test_random_complex_instance(self):
        rng = rng_from_seed(8)
        v = random_subspace(rng, Field.COMPLEX, 4, 3)
        u = random_subspace_within(rng, v, 2)
        w = random_subspace(rng, Field.COMPLEX, 4, 2)
        out = check_weighted_average(u, v, w)
        assert out.passed and out.residual <= 1e-8

    def test_requires_containment(self):
        rng = rng_from_seed(9)
        v = random_subspace(rng, Field.REAL, 4, 2)
        u = random_subspace(rng, Field.REAL, 4, 1)
        w = random_subspace(rng, Field.REAL, 4, 2)
        with pytest.raises(DomainError):
            check_weighted_average(u, v, w)


class TestDirectSum:
    def test_part_orthogonal_to_w_kills_both_sides(self):
        v1 = Subspace.from_spanning(np.eye(4)[:, :1])
        v2 = Subspace.from_spanning(np.eye(4)[:, 1:2])
        w = Subspace.from_spanning(np.eye(4)[:, 2:4])  # v1, v2 both orthogonal to w
        out = check_direct_sum(v1, v2, w)
        assert out.passed and out.residual <= 1e-12

    def test_principal_partition_recovers_plain_product(self):
        rng = rng_from_seed(10)
        v = random_subspace(rng, Field.REAL, 5, 3)
        w = random_subspace(rng, Field.REAL, 5, 3)
        e = principal_decomposition(v, w).e_basis
        v1 = Subspace(e[:, :1], Field.REAL, _validate=False)
        v2 = Subspace(e[:, 1:], Field.REAL, _validate=False)
        out = check_direct_sum(v1, v2, w)
        assert out.passed
        product = grassmann_angle(v1, w).cosine * grassmann_angle(v2, w).cosine
        assert grassmann_angle(v, w).cosine == pytest.approx(product, abs=1e-10)

    def test_random_complex_pair(self):
        rng = rng_from_seed(11)
        parent = random_subspace(rng, Field.COMPLEX, 4, 3)
        v1, v2 = split_subspace(rng, parent, [1, 2]).parts
        w = random_subspace(rng, Field.COMPLEX, 4, 2)
        out = check_direct_sum(v1, v2, w)
        assert out.passed and out.residual <= 1e-8

    def test_non_orthogonal_parts_rejected(self):
        a = Subspace.from_spanning([[1.0, 0.0, 0.0]])
        b = Subspace.from_spanning([[1.0, 1.0, 0.0]])
        w = Subspace.from_spanning([[0.0, 0.0, 1.0]])
        with pytest.raises(DomainError):
            check_direct_sum(a, b, w)


class TestPartitionChain:
    @pytest.mark.parametrize("field", FIELDS)
    def test_multiway_partitions(self, field):
        rng = rng_from_seed(12)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            p = int(rng.integers(2, n + 1))
            k = int(rng.integers(2, p + 1))
            dims = [1] * (k - 1) + [p - k + 1]
            partition = split_subspace(rng, random_subspace(rng, field, n, p), dims)
            w = random_subspace(rng, field, n, int(rng.integers(1, n + 1)))
            out = check_partition_chain(partition, w)
            assert out.passed, out.witness


class TestPartitionConverse:
    def _pair(self, rng, field):
        while True:
            v = random_subspace(rng, field, 5, 3)
            w = random_subspace(rng, field, 5, 4)
            cos = np.linalg.svd(gram(w.onb, v.onb), compute_uv=False)
            if cos[-1] > 0.3 and cos[0] - cos[-1] > 0.15:
                return v, w

    @pytest.mark.parametrize("field", FIELDS)
    def test_principal_grouping_passes(self, field):
        rng = rng_from_seed(13)
        v, w = self._pair(rng, field)
        e = principal_decomposition(v, w).e_basis
        parts = (
            Subspace(e[:, :1], field, _validate=False),
            Subspace(e[:, 1:], field, _validate=False),
        )
        out = check_partition_converse(Partition(parts), w)
        assert out.passed and "principal partition" in out.witness

    @pytest.mark.parametrize("field", FIELDS)
    def test_mixed_partition_fails_both_sides(self, field):
        rng = rng_from_seed(14)
        v, w = self._pair(rng, field)
        e = principal_decomposition(v, w).e_basis
        g1 = (e[:, 0] + e[:, 2]) / math.sqrt(2)
        g2 = (e[:, 0] - e[:, 2]) / math.sqrt(2)
        parts = (
            Subspace(g1[:, None], field, _validate=False),
            Subspace(g2[:, None], field, _validate=False),
            Subspace(e[:, 1:2], field, _validate=False),
        )
        out = check_partition_converse(Partition(parts), w)
        assert out.passed and "as it should be" in out.witness

    def test_trivial_partition_passes(self):
        rng = rng_from_seed(15)
        v, w = self._pair(rng, Field.REAL)
        out = check_partition_converse(Partition((v,)), w)
        assert out.passed

    def test_partial_orthogonality_reported_not_raised(self):
        v = Subspace.from_spanning(np.eye(4)[:, :2])
        w = Subspace.from_spanning(np.eye(4)[:, 2:3])  # dim v > dim w forces it
        out = check_partition_converse(Partition((v,)), w)
        assert not out.passed and math.isinf(out.residual)
        assert "precondition" in out.witness


class TestRandomInstance:
    def test_reproducible(self):
        a = random_instance(Field.REAL, 5, [2, 3], seed=99)
        b = random_instance(Field.REAL, 5, [2, 3], seed=99)
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x.onb, y.onb)

    def test_complex_instances_have_imaginary_parts(self):
        (s,) = random_instance(Field.COMPLEX, 4, [2], seed=0)
        assert np.max(np.abs(s.onb.imag)) > 1e-3

    def test_infeasible_dims_rejected(self):
        with pytest.raises(DomainError):
            random_instance(Field.REAL, 3, [4], seed=0)


class TestRunSuite:
    def test_deterministic_under_seed(self):
        a = run_suite("pythagorean", field=Field.COMPLEX, n_max=4, trials=5, seed=7)
        b = run_suite("pythagorean", field=Field.COMPLEX, n_max=4, trials=5, seed=7)
        assert [(c.name, c.residual) for c in a] == [(c.name, c.residual) for c in b]

    def test_unknown_suite_rejected(self):
        with pytest.raises(DomainError):
            run_suite("no-such-suite", trials=1)

    def test_smoke_all_suites_both_fields(self):
        checks = run_suite("all", field=None, n_max=5, trials=8, seed=2)
        assert len(checks) == 8 * 8 * 2
        assert all(c.passed for c in checks), [c for c in checks if not c.passed]

    def test_thousand_instances_all_pass(self):
        checks = run_suite("all", field=None, n_max=6, trials=63, seed=31)
        assert len(checks) == 8 * 63 * 2  # just over a thousand configurations
        assert all(c.passed for c in checks), [c for c in checks if not c.passed]

    def test_binomial_suite_hits_both_branches(self):
        checks = run_suite("binomial", field=Field.REAL, n_max=5, trials=60, seed=3)
        assert any("target 1" in c.witness for c in checks)
        targets = {c.witness.split("target ")[1] for c in checks}
        assert len(targets) > 2  # several distinct binomial targets exercised
