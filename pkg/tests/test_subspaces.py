"""Tests for orthonormalization, principal angles and the subspace constant."""

import math

import numpy as np
import pytest

from cbstools.core.errors import DomainError, UsageError
from cbstools.core.models import Method
from cbstools.core.space import ScalarField, Space, inner, norm
from cbstools.oracle.api import brute_force_gamma
from cbstools.oracle.generators import random_space, random_spd, random_subspace
from cbstools.oracle.rng import Rng
from cbstools.subspaces import (
    Subspace,
    gamma_subspaces,
    jacobi_eigh,
    kappa_subspaces,
    orthonormalize,
    principal_angles,
)


def _line(space: Space, angle: float):
    return orthonormalize(space, [math.cos(angle), math.sin(angle)])


class TestOrthonormalize:
    def test_collinear_input(self, plane):
        s = orthonormalize(plane, [[1.0, 2.0], [0.0, 0.0]])
        assert s.k == 1
        assert np.allclose(s.basis[:, 0], [1.0, 0.0])

    def test_identity(self, plane):
        assert orthonormalize(plane, np.eye(2)).k == 2

    def test_diagonal_pair(self, plane):
        s = orthonormalize(plane, [[1.0, 1.0], [1.0, -1.0]])
        assert s.k == 2
        assert np.allclose(s.basis.T @ s.basis, np.eye(2))

    def test_gram_orthonormal(self, weighted3):
        s = orthonormalize(weighted3, [[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
        assert np.allclose(weighted3.cross(s.basis, s.basis), np.eye(2))

    def test_empty(self, plane):
        assert orthonormalize(plane, np.zeros((2, 0))).k == 0

    def test_rejects_non_orthonormal_basis(self, plane):
        from cbstools.subspaces import Subspace
        with pytest.raises(ValueError):
            Subspace(space=plane, basis=[[1.0], [1.0]])


class TestJacobi:
    def test_matches_numpy(self, rng):
        for field in (ScalarField.REAL, ScalarField.COMPLEX):
            a = random_spd(6, rng, field)
            w, v = jacobi_eigh(a)
            assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-10)
            assert np.allclose(a @ v, v * w, atol=1e-9)

    def test_empty(self):
        w, v = jacobi_eigh(np.zeros((0, 0)))
        assert w.size == 0 and v.shape == (0, 0)


class TestGamma:
    def test_same_line(self, plane):
        v = _line(plane, 0.0)
        report = gamma_subspaces(v, v)
        assert report.gamma == 1.0
        assert report.intersecting
        assert report.method == Method.EXACT_SUBSPACE

    def test_orthogonal_lines(self, plane):
        report = gamma_subspaces(_line(plane, 0.0), _line(plane, math.pi / 2))
        assert report.gamma == pytest.approx(0.0, abs=1e-15)
        assert report.kappa == pytest.approx(math.sqrt(2.0))

    def test_lines_at_sixty_degrees(self, plane):
        report = gamma_subspaces(_line(plane, 0.0), _line(plane, math.pi / 3))
        assert report.gamma == pytest.approx(0.5)
        assert report.kappa == pytest.approx(1.0)

    def test_certificate_attains_gamma(self, rng):
        space = random_space(5, rng, ScalarField.COMPLEX, weighted=True)
        v, f = random_subspace(space, 2, rng), random_subspace(space, 2, rng)
        report = gamma_subspaces(v, f)
        assert norm(report.certificate_v) == pytest.approx(1.0)
        assert norm(report.certificate_w) == pytest.approx(1.0)
        assert abs(inner(report.certificate_v, report.certificate_w)) == pytest.approx(report.gamma)

    def test_weighted_plane_and_line(self, weighted3):
        v = orthonormalize(weighted3, [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        f = orthonormalize(weighted3, [1.0, 1.0, 1.0])
        assert gamma_subspaces(v, f).gamma == pytest.approx(math.sqrt(3.0) / 2.0)

    def test_zero_subspace(self, plane):
        report = gamma_subspaces(orthonormalize(plane, np.zeros((2, 0))), _line(plane, 0.0))
        assert report.gamma == 0.0
        assert "zero_subspace" in report.flags
        assert report.certificate_v is None

    def test_space_mismatch(self, plane, weighted3):
        with pytest.raises(UsageError):
            gamma_subspaces(_line(plane, 0.0), orthonormalize(weighted3, [1.0, 0.0, 0.0]))

    def test_principal_cosines(self, weighted3):
        v = orthonormalize(weighted3, [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        cosines = principal_angles(v, v)
        assert np.allclose(cosines, [1.0, 1.0])

    @pytest.mark.parametrize("field", [ScalarField.REAL, ScalarField.COMPLEX])
    def test_symmetric(self, rng, field):
        space = random_space(5, rng, field, weighted=True)
        for _ in range(10):
            v = random_subspace(space, 1 + int(rng.integers(3)[0]), rng)
            f = random_subspace(space, 1 + int(rng.integers(3)[0]), rng)
            assert gamma_subspaces(v, f).gamma == pytest.approx(gamma_subspaces(f, v).gamma, abs=1e-12)

    @pytest.mark.parametrize("field", [ScalarField.REAL, ScalarField.COMPLEX])
    def test_unitary_change_of_basis(self, rng, field):
        space = random_space(5, rng, field, weighted=True)
        v, f = random_subspace(space, 3, rng), random_subspace(space, 2, rng)
        z = rng.normal((3, 3))
        if field == ScalarField.COMPLEX:
            z = z + 1j * rng.normal((3, 3))
        q, _ = np.linalg.qr(z)
        rotated = Subspace(space=space, basis=v.basis @ q)
        expected = gamma_subspaces(v, f).gamma
        assert gamma_subspaces(rotated, f).gamma == pytest.approx(expected, abs=1e-10)
        assert gamma_subspaces(f, rotated).gamma == pytest.approx(expected, abs=1e-10)

    def test_strengthened_bound_on_members(self, rng):
        space = random_space(4, rng, ScalarField.COMPLEX, weighted=True)
        v, f = random_subspace(space, 2, rng), random_subspace(space, 2, rng)
        gamma = gamma_subspaces(v, f).gamma
        assert gamma < 1.0
        for _ in range(100):
            a = (rng.normal(2) + 1j * rng.normal(2)) * (0.1 + 10.0 * rng.random())
            b = (rng.normal(2) + 1j * rng.normal(2)) * (0.1 + 10.0 * rng.random())
            x, y = space.vector(v.basis @ a), space.vector(f.basis @ b)
            assert abs(inner(x, y)) <= gamma * norm(x) * norm(y) + 1e-10


class TestKappa:
    def test_equal(self, plane):
        assert kappa_subspaces(_line(plane, 0.3), _line(plane, 0.3)) == pytest.approx(0.0, abs=1e-7)

    def test_zero_subspace(self, plane):
        with pytest.raises(DomainError):
            kappa_subspaces(orthonormalize(plane, np.zeros((2, 0))), _line(plane, 0.0))


def test_oracle_sandwich():
    """The sampled lower bound never exceeds gamma and comes within 5e-3."""
    root = Rng(0xC5C5)
    for trial in range(10):
        r = root.spawn(trial)
        dim = 2 + int(r.integers(5)[0])
        space = random_space(dim, r, ScalarField.REAL, weighted=bool(trial % 2))
        v = random_subspace(space, 1 + int(r.integers(min(3, dim))[0]), r)
        f = random_subspace(space, 1 + int(r.integers(min(3, dim))[0]), r)
        gamma = gamma_subspaces(v, f).gamma
        oracle = brute_force_gamma(v, f, 100_000, r.spawn(0))
        assert oracle <= gamma + 1e-9
        assert gamma - oracle <= 5e-3
