"""Shared fixtures for the cbstools test-suite."""

import logging
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from cbstools.cones.models import ConvexCone, UnionCone
from cbstools.core.space import ScalarField, Space
from cbstools.holder.models import MeasureSpace
from cbstools.oracle.rng import Rng

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def rng() -> Rng:
    return Rng(0xC5C5)


@pytest.fixture
def plane() -> Space:
    return Space(dim=2)


@pytest.fixture
def complex3() -> Space:
    return Space(dim=3, field=ScalarField.COMPLEX)


@pytest.fixture
def weighted3() -> Space:
    return Space(dim=3, gram=np.diag([2.0, 1.0, 1.0]))


@pytest.fixture
def line(plane) -> ConvexCone:
    """The line x = -y as a cone on two opposite rays."""
    return ConvexCone(space=plane, generators=[[1.0, -1.0], [-1.0, 1.0]])


@pytest.fixture
def quadrants(plane) -> UnionCone:
    """First and third quadrants."""
    return UnionCone(parts=[
        ConvexCone(space=plane, generators=np.eye(2)),
        ConvexCone(space=plane, generators=-np.eye(2)),
    ])


@pytest.fixture
def uniform2() -> MeasureSpace:
    return MeasureSpace(weights=[1.0, 1.0])


@pytest.fixture
def runner() -> CliRunner:
    """Runner whose ``stdout`` carries only the JSON report."""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click >= 8.2 always keeps the streams apart
        return CliRunner()


@pytest.fixture
def problems_dir() -> Path:
    return PROBLEMS


@pytest.fixture(autouse=True)
def _reset_logger():
    """The CLI callback reconfigures the package logger; restore it per test."""
    logger = logging.getLogger("cbstools")
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield
    logger.handlers = handlers
    logger.setLevel(level)
    logger.propagate = propagate
