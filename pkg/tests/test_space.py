"""Tests for spaces, vectors, the inner product and the real embedding."""

import cmath
import math

import numpy as np
import pytest
from pydantic import ValidationError

from cbstools.core.errors import DomainError, UsageError
from cbstools.core.models import GammaReport, Method, gamma_from_kappa, kappa_from_gamma
from cbstools.core.space import (
    TWO_PI,
    ScalarField,
    Space,
    Vector,
    arg_principal,
    inner,
    norm,
    normalize,
    realify,
    realify_vector,
)


class TestInnerProduct:
    def test_linear_in_first_argument(self, complex3):
        x = complex3.vector([1, 1j, 0])
        y = complex3.vector([0, 1, 2])
        assert inner(x * 1j, y) == pytest.approx(1j * inner(x, y))
        assert inner(x, y * 1j) == pytest.approx(-1j * inner(x, y))

    def test_conjugate_symmetry(self, complex3):
        x = complex3.vector([1 + 2j, -1, 0.5j])
        y = complex3.vector([3, 1j, 1 - 1j])
        assert inner(y, x) == pytest.approx(inner(x, y).conjugate())

    def test_gram_matrix(self, weighted3):
        x = weighted3.basis(0)
        assert norm(x) == pytest.approx(math.sqrt(2.0))
        assert inner(x, weighted3.basis(1)) == 0

    def test_different_spaces_rejected(self, plane, complex3):
        with pytest.raises(UsageError):
            inner(plane.basis(0), complex3.basis(0))

    def test_arithmetic(self, plane):
        x = plane.vector([1.0, 2.0])
        y = plane.vector([3.0, -1.0])
        assert np.allclose((x + y).coords, [4.0, 1.0])
        assert np.allclose((x - y).coords, [-2.0, 3.0])
        assert np.allclose((-x).coords, [-1.0, -2.0])
        assert np.allclose((2 * x / 4).coords, [0.5, 1.0])

    def test_real_vector_rejects_complex_scale(self, plane):
        with pytest.raises(UsageError):
            plane.vector([1.0, 0.0]) * 1j


class TestValidation:
    def test_gram_must_be_positive_definite(self):
        with pytest.raises(ValidationError):
            Space(dim=2, gram=[[1.0, 2.0], [2.0, 1.0]])

    def test_gram_must_be_hermitian(self):
        with pytest.raises(ValidationError):
            Space(dim=2, gram=[[2.0, 1.0], [0.0, 2.0]])

    def test_gram_shape(self):
        with pytest.raises(ValidationError):
            Space(dim=3, gram=np.eye(2))

    def test_coords_must_be_finite(self, plane):
        with pytest.raises(ValidationError):
            Vector(space=plane, coords=[1.0, float("nan")])

    def test_complex_coords_in_real_space(self, plane):
        with pytest.raises(ValidationError):
            Vector(space=plane, coords=[1.0, 1j])

    def test_vectors_are_immutable(self, plane):
        x = plane.vector([1.0, 2.0])
        with pytest.raises(ValueError):
            x.coords[0] = 5.0


class TestNormalize:
    def test_unit(self, weighted3):
        u = normalize(weighted3.vector([1.0, 1.0, 1.0]))
        assert norm(u) == pytest.approx(1.0)

    def test_zero_vector(self, plane):
        with pytest.raises(DomainError):
            normalize(plane.zeros())


class TestArgPrincipal:
    @pytest.mark.parametrize(
        "z, expected",
        [(1, 0.0), (1j, math.pi / 2), (-1, math.pi), (-1j, 1.5 * math.pi), (0, 0.0)],
    )
    def test_values(self, z, expected):
        assert arg_principal(z) == pytest.approx(expected)

    def test_range(self):
        for k in range(64):
            t = arg_principal(cmath.exp(1j * (k * 0.37 - 5.0)))
            assert 0.0 <= t < TWO_PI

    def test_tiny_negative_phase(self):
        assert arg_principal(complex(1.0, -1e-300)) < TWO_PI


class TestRealify:
    def test_inner_product_is_real_part(self):
        g = np.array([[2.0, 1j], [-1j, 3.0]])
        space = Space(dim=2, field=ScalarField.COMPLEX, gram=g)
        x = space.vector([1 + 1j, 2 - 1j])
        y = space.vector([-1j, 0.5])
        rx, ry = realify_vector(x), realify_vector(y)
        assert rx.space.dim == 4 and rx.space.is_real
        assert inner(rx, ry).real == pytest.approx(inner(x, y).real)
        assert norm(rx) == pytest.approx(norm(x))

    def test_real_space_unchanged(self, plane):
        assert realify(plane) is plane


class TestGammaReport:
    def test_kappa_gamma_round_trip(self):
        assert kappa_from_gamma(gamma_from_kappa(0.5)) == pytest.approx(0.5)
        assert gamma_from_kappa(math.sqrt(2.0)) == pytest.approx(0.0)

    def test_inconsistent_report_rejected(self):
        with pytest.raises(ValidationError):
            GammaReport(gamma=0.9, kappa=1.0, method=Method.ORACLE)

    def test_holder_constant_clamped(self):
        assert gamma_from_kappa(2.0, 3.0) == 0.0
