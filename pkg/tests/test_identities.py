"""Tests for the exact Cauchy-Schwarz identities."""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cbstools.core.errors import DomainError
from cbstools.core.space import ScalarField, Space, inner, norm
from cbstools.identities import (
    cs_equality_case,
    imag_cs_identity,
    modulus_cs_identity,
    optimal_alpha,
    parallelogram_residual,
    real_cs_identity,
    variational_bound,
    variational_sweep,
)
from cbstools.oracle.generators import random_space, random_vector
from cbstools.oracle.rng import Rng


@pytest.fixture
def c2() -> Space:
    return Space(dim=2, field=ScalarField.COMPLEX)


class TestRealIdentity:
    def test_coincident(self, plane):
        r = real_cs_identity(plane.basis(0), plane.basis(0))
        assert r.lhs == pytest.approx(1.0)
        assert r.rhs == pytest.approx(1.0)
        assert r.residual == pytest.approx(0.0, abs=1e-15)

    def test_orthogonal(self, plane):
        r = real_cs_identity(plane.basis(0), plane.basis(1))
        assert r.lhs == 0.0
        assert r.angular_terms["u-v"] == pytest.approx(2.0)
        assert r.rhs == pytest.approx(0.0, abs=1e-15)

    def test_zero_vector(self, plane):
        with pytest.raises(DomainError):
            real_cs_identity(plane.zeros(), plane.basis(0))


class TestImagIdentity:
    def test_real_vectors(self, c2):
        x = c2.vector([1.0, 2.0])
        r = imag_cs_identity(x, x)
        assert r.lhs == pytest.approx(0.0)
        assert r.angular_terms["u-iv"] == pytest.approx(2.0)


class TestModulusIdentity:
    def test_direct_evaluation(self, c2):
        r = modulus_cs_identity(c2.vector([1, 1j]), c2.vector([1, 1]))
        assert r.lhs == pytest.approx(math.sqrt(2.0))
        assert r.rhs == pytest.approx(math.sqrt(2.0))

    def test_orthogonal(self, c2):
        r = modulus_cs_identity(c2.basis(0), c2.basis(1))
        assert r.lhs == 0.0
        assert r.angular_terms == pytest.approx({"u-v": 2.0, "u-iv": 2.0})
        assert r.rhs == pytest.approx(0.0, abs=1e-15)

    def test_equality(self, c2):
        r = modulus_cs_identity(c2.basis(0), c2.basis(0))
        assert r.angular_terms["u-iv"] == pytest.approx(2.0)
        assert r.rhs == pytest.approx(1.0)


class TestVariational:
    def test_antipodal_rotation(self, c2):
        r = variational_bound(c2.basis(0), c2.basis(0), math.pi)
        assert r.lhs == pytest.approx(-1.0)
        assert r.holds

    def test_zero_rotation(self, c2):
        r = variational_bound(c2.vector([1, 1j]), c2.vector([1, 1]), 0.0)
        assert r.lhs == pytest.approx(1.0)
        assert r.rhs == pytest.approx(math.sqrt(2.0))
        assert r.holds

    def test_optimal_alpha(self, c2):
        assert optimal_alpha(c2.vector([1j, 0]), c2.basis(0)) == pytest.approx(1.5 * math.pi)
        assert optimal_alpha(c2.basis(0), c2.vector([2.0, 1.0])) == 0.0
        assert optimal_alpha(c2.basis(0), c2.basis(1)) == 0.0

    def test_sweep_ends_at_optimum(self, c2):
        x, y = c2.vector([1 + 2j, -1j]), c2.vector([0.5, 3 - 1j])
        sweep = variational_sweep(x, y, 16)
        assert len(sweep) == 17
        assert sweep[-1].alpha == pytest.approx(optimal_alpha(x, y))
        assert sweep[-1].residual < 1e-12
        assert all(s.holds for s in sweep)


class TestEqualityCase:
    def test_dependent(self, c2):
        x = c2.vector([1 - 1j, 2])
        assert cs_equality_case(x, x * (2 + 1j))

    def test_orthogonal(self, c2):
        assert not cs_equality_case(c2.basis(0), c2.basis(1))

    def test_random_pairs_independent(self):
        for i in range(20):
            r = Rng(7).spawn(i)
            space = random_space(4, r)
            assert not cs_equality_case(random_vector(space, r), random_vector(space, r))


class TestRandomPairs:
    """Residuals stay below 1e-10 for random complex pairs with random Gram matrices."""

    @pytest.mark.parametrize("weighted", [False, True])
    def test_identities(self, weighted):
        root = Rng(0xC5C5)
        for trial in range(200):
            r = root.spawn(trial)
            space = random_space(1 + int(r.integers(32)[0]), r, weighted=weighted)
            x, y = random_vector(space, r), random_vector(space, r)
            for ident in (real_cs_identity, imag_cs_identity, modulus_cs_identity):
                assert ident(x, y).residual < 1e-10
            assert abs(inner(x, y)) <= norm(x) * norm(y) * (1 + 1e-12)
            assert parallelogram_residual(x, y) < 1e-9


coordinate = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=100, deadline=None)
@given(st.lists(coordinate, min_size=6, max_size=6), st.lists(coordinate, min_size=6, max_size=6))
def test_modulus_identity_property(a, b):
    space = Space(dim=3, field=ScalarField.COMPLEX)
    x = space.vector([complex(a[i], a[i + 3]) for i in range(3)])
    y = space.vector([complex(b[i], b[i + 3]) for i in range(3)])
    assume(norm(x) > 1e-3 and norm(y) > 1e-3)
    r = modulus_cs_identity(x, y)
    assert r.residual <= 1e-10 * max(1.0, norm(x) * norm(y))
