"""Tests for the seeded RNG, instance generators and brute-force baselines."""

import math

import numpy as np
import pytest

from cbstools.cones.models import ConvexCone, ray
from cbstools.core.errors import DomainError, UsageError
from cbstools.core.models import Method
from cbstools.core.space import ScalarField, Space, norm
from cbstools.oracle import (
    Rng,
    brute_force_gamma,
    grid_gamma_2d,
    oracle_report,
    sample_cone_members,
    sample_unit_in_cone,
    sample_unit_in_subspace,
)
from cbstools.oracle.generators import random_space, random_spd, random_subspace, random_vector
from cbstools.subspaces import orthonormalize


class TestRng:
    def test_reproducible(self):
        assert np.array_equal(Rng(5).uniform(10), Rng(5).uniform(10))

    def test_streams_differ(self):
        assert not np.array_equal(Rng(5).uniform(4), Rng(6).uniform(4))

    def test_vector_draws_match_scalar_draws(self):
        a, b = Rng(0xC5C5), Rng(0xC5C5)
        bulk = a.u64(8)
        assert [int(v) for v in bulk] == [b.next_u64() for _ in range(8)]

    def test_uniform_range(self):
        u = Rng(1).uniform(10_000)
        assert u.min() >= 0.0 and u.max() < 1.0
        assert abs(u.mean() - 0.5) < 0.02

    def test_normal_moments(self):
        z = Rng(2).normal(20_000)
        assert abs(z.mean()) < 0.05
        assert abs(z.std() - 1.0) < 0.05

    def test_spawn_depends_on_seed_and_index(self):
        root = Rng(3)
        root.uniform(100)
        assert Rng(3).spawn(4).next_u64() == root.spawn(4).next_u64()
        assert Rng(3).spawn(4).next_u64() != Rng(3).spawn(5).next_u64()

    def test_integers(self):
        k = Rng(4).integers(7, 1000)
        assert k.min() >= 0 and k.max() <= 6


class TestGenerators:
    def test_spd(self, rng):
        g = random_spd(5, rng, ScalarField.COMPLEX)
        assert np.allclose(g, g.conj().T)
        assert np.linalg.eigvalsh(g).min() >= 0.5 - 1e-12

    def test_vector_norm_range(self, rng):
        space = random_space(6, rng, weighted=True)
        for _ in range(50):
            assert 0.1 - 1e-12 <= norm(random_vector(space, rng)) <= 10.0 + 1e-12


class TestSampling:
    def test_cone_samples_are_unit_members(self, rng, quadrants):
        x = sample_unit_in_cone(quadrants, rng)
        assert norm(x) == pytest.approx(1.0)
        assert x.coords[0] * x.coords[1] >= 0

    def test_batch_layout_matches_single_draws(self, quadrants):
        batch = sample_cone_members(quadrants, 5, Rng(8))
        r = Rng(8)
        singles = np.stack([sample_unit_in_cone(quadrants, r).coords for _ in range(5)], axis=1)
        assert np.allclose(batch, singles)

    def test_subspace_samples(self, rng, complex3):
        s = orthonormalize(complex3, [[1, 0], [1j, 1], [0, 1]])
        xs = sample_unit_in_subspace(s, 20, rng)
        assert np.allclose(np.linalg.norm(xs, axis=0), 1.0)

    def test_subspace_layout_is_prefix_stable(self, complex3):
        s = orthonormalize(complex3, [[1, 0], [1j, 1], [0, 1]])
        few = sample_unit_in_subspace(s, 5, Rng(8))
        many = sample_unit_in_subspace(s, 50, Rng(8))
        assert np.allclose(few, many[:, :5], atol=1e-15)

    def test_zero_subspace(self, rng, plane):
        with pytest.raises(DomainError):
            sample_unit_in_subspace(orthonormalize(plane, np.zeros((2, 0))), 3, rng)

    def test_empty_cone(self, rng, plane):
        with pytest.raises(DomainError):
            sample_unit_in_cone(ConvexCone(space=plane, generators=np.zeros((2, 0))), rng)


class TestBruteForce:
    def test_identical_rays(self, plane):
        c = ray(plane, [1.0, 2.0])
        assert brute_force_gamma(c, c, 100, Rng(1)) == pytest.approx(1.0)

    def test_orthogonal_rays(self, plane):
        assert brute_force_gamma(ray(plane, [1.0, 0.0]), ray(plane, [0.0, 1.0]), 100, Rng(1)) == 0.0

    def test_quadrant_example(self, line, quadrants):
        value = brute_force_gamma(line, quadrants, 100_000, Rng(0xC5C5))
        assert 1.0 / math.sqrt(2.0) - 5e-3 <= value <= 1.0 / math.sqrt(2.0) + 1e-9

    def test_monotone_in_samples(self, rng):
        space = random_space(3, rng, ScalarField.REAL)
        c1 = ConvexCone(space=space, generators=rng.normal((3, 3)))
        c2 = ConvexCone(space=space, generators=rng.normal((3, 3)))
        values = [brute_force_gamma(c1, c2, n, Rng(9)) for n in (100, 1_000, 10_000)]
        assert all(later >= earlier - 1e-15 for earlier, later in zip(values, values[1:]))

    def test_subspace_monotone_in_samples(self, rng):
        space = random_space(5, rng, ScalarField.REAL)
        for _ in range(20):
            v, f = random_subspace(space, 2, rng), random_subspace(space, 2, rng)
            values = [brute_force_gamma(v, f, n, Rng(9)) for n in (10, 20, 40, 80)]
            assert all(later >= earlier - 1e-15 for earlier, later in zip(values, values[1:]))

    def test_ray_inside_cone_is_found(self):
        space = Space(dim=3)
        cone = ConvexCone(space=space, generators=[[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [0.2, 0.3, 1.0]])
        inside = ray(space, cone.generators @ [0.2, 0.5, 0.3])
        assert brute_force_gamma(inside, cone, 1, Rng(1)) == pytest.approx(1.0, abs=1e-12)
        assert brute_force_gamma(cone, inside, 1, Rng(1)) == pytest.approx(1.0, abs=1e-12)

    def test_cone_face_response(self, plane):
        # (1, -1) against the first quadrant: the best member is a generator
        quadrant = ConvexCone(space=plane, generators=np.eye(2))
        value = brute_force_gamma(ray(plane, [1.0, -1.0]), quadrant, 1, Rng(1))
        assert value == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)

    def test_sampled_members_on_a_weighted_space(self, weighted3):
        c1 = ConvexCone(space=weighted3, generators=[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        c2 = ray(weighted3, [0.0, 0.0, 1.0])
        assert brute_force_gamma(c1, c2, 1_000, Rng(3)) == pytest.approx(0.0, abs=1e-15)

    def test_report(self, line, quadrants):
        report = oracle_report(line, quadrants, 100, Rng(1))
        assert report.method == Method.ORACLE
        assert report.heuristic
        assert report.gamma == report.oracle
        assert report.kappa == pytest.approx(math.sqrt(2.0 - 2.0 * report.gamma))
        assert report.certificate_v is None

    def test_zero_subspace(self, plane):
        zero = orthonormalize(plane, np.zeros((2, 0)))
        assert brute_force_gamma(zero, orthonormalize(plane, [1.0, 0.0]), 10, Rng(1)) == 0.0

    def test_rejects_bad_samples(self, plane):
        c = ray(plane, [1.0, 0.0])
        with pytest.raises(UsageError):
            brute_force_gamma(c, c, 0, Rng(1))


class TestGrid:
    def test_quadrant_example(self, line, quadrants):
        assert grid_gamma_2d(line, quadrants, 10_000) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-3)

    def test_half_plane(self, plane):
        half = ConvexCone(space=plane, generators=[[1.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
        assert grid_gamma_2d(half, ray(plane, [0.0, -1.0]), 64) == pytest.approx(0.0, abs=1e-12)

    def test_needs_plane(self, weighted3):
        c = ray(weighted3, [1.0, 0.0, 0.0])
        with pytest.raises(UsageError):
            grid_gamma_2d(c, c, 100)

    def test_resolution(self, plane):
        c = ray(plane, [1.0, 0.0])
        with pytest.raises(UsageError):
            grid_gamma_2d(c, c, 4)
