"""Seeded brute-force baselines for gamma.

Every function here returns a *lower bound* on the true constant: it only
evaluates feasible unit members. Sampling is coefficient-uniform, not
uniform on the unit slice; the 2-D grid gives tight checks in the plane.
"""

import itertools
import logging
import math
from typing import Callable, List, Tuple, Union

import numpy as np

from ..cones.models import Cone, ConvexCone, UnionCone, as_parts
from ..core.errors import DomainError, OracleError, UsageError
from ..core.models import GammaReport, Method, kappa_from_gamma
from ..core.space import ZERO_TOL, Space, Vector
from ..subspaces.api import Subspace
from .rng import Rng

logger = logging.getLogger("cbstools")

MAX_REJECTS = 100
GRID_CHUNK = 512
RESPONSE_CHUNK = 16_384
MAX_FACES = 4096
# fixed, so members stay nested as the sample count grows
EDGE_POINTS = 257

Sampled = Union[Subspace, ConvexCone, UnionCone]


def _nonempty_parts(cone: Cone) -> List[ConvexCone]:
    parts = [p for p in as_parts(cone) if p.m > 0]
    if not parts:
        raise DomainError("cone has no generators")
    return parts


def sample_unit_in_cone(cone: Cone, rng: Rng) -> Vector:
    """One unit member: uniform [0, 1) coefficients over a uniformly chosen part.

    Each attempt consumes ``1 + max_m`` uniforms (part choice first), the same
    layout as :func:`sample_cone_members`.

    Raises:
        OracleError: After ``MAX_REJECTS`` consecutive zero combinations.
    """
    parts = _nonempty_parts(cone)
    width = 1 + max(p.m for p in parts)
    for _ in range(MAX_REJECTS):
        row = rng.uniform(width)
        part = parts[min(int(row[0] * len(parts)), len(parts) - 1)]
        coeffs = row[1 : 1 + part.m]
        n = float(np.linalg.norm(part.whitened @ coeffs))
        if n > ZERO_TOL:
            return Vector(space=part.space, coords=part.generators @ coeffs / n)
    raise OracleError(f"{MAX_REJECTS} consecutive zero draws; generators are degenerate")


def sample_cone_members(cone: Cone, count: int, rng: Rng) -> np.ndarray:
    """``count`` draws as unit columns (zero combinations are dropped)."""
    parts = _nonempty_parts(cone)
    width = 1 + max(p.m for p in parts)
    rows = rng.uniform((count, width))
    choice = np.minimum((rows[:, 0] * len(parts)).astype(int), len(parts) - 1)
    space = parts[0].space
    out = np.zeros((space.dim, count))
    keep = np.zeros(count, dtype=bool)
    for index, part in enumerate(parts):
        sel = np.flatnonzero(choice == index)
        if sel.size == 0:
            continue
        coeffs = rows[sel, 1 : 1 + part.m].T
        norms = np.linalg.norm(part.whitened @ coeffs, axis=0)
        ok = norms > ZERO_TOL
        out[:, sel[ok]] = (part.generators @ coeffs[:, ok]) / norms[ok]
        keep[sel[ok]] = True
    return out[:, keep]


def sample_unit_in_subspace(subspace: Subspace, count: int, rng: Rng) -> np.ndarray:
    """Unit members with Gaussian coefficients in the orthonormal basis.

    Sample j uses draws j * k to (j + 1) * k (doubled for complex spaces), so
    the first ``count`` columns do not depend on how many more are drawn.
    """
    k = subspace.k
    if k == 0:
        raise DomainError("cannot sample the zero subspace")
    if subspace.space.is_real:
        coeffs = rng.normal((count, k)).T
    else:
        draws = rng.normal((count, 2 * k))
        coeffs = (draws[:, :k] + 1j * draws[:, k:]).T
    coeffs = coeffs / np.linalg.norm(coeffs, axis=0)
    return subspace.basis @ coeffs


def _unit_generators(cone: Cone) -> np.ndarray:
    parts = _nonempty_parts(cone)
    gens = np.concatenate([p.generators for p in parts], axis=1)
    return gens / parts[0].space.column_norms(gens)


def _edge_members(cone: Cone) -> np.ndarray:
    """Unit members on an equispaced grid along every two-generator face."""
    parts = _nonempty_parts(cone)
    t = np.linspace(0.0, 1.0, EDGE_POINTS)[1:-1]
    cols = [np.zeros((parts[0].space.dim, 0))]
    for part in parts:
        unit = part.generators / part.space.column_norms(part.generators)
        for i, j in itertools.combinations(range(part.m), 2):
            mix = np.outer(unit[:, i], 1.0 - t) + np.outer(unit[:, j], t)
            norms = part.space.column_norms(mix)
            ok = norms > ZERO_TOL
            cols.append(mix[:, ok] / norms[ok])
    return np.concatenate(cols, axis=1)


def unit_members(obj: Sampled, count: int, rng: Rng) -> np.ndarray:
    """Unit columns of ``obj``.

    Cones contribute their unit generators, a fixed grid on each
    two-generator face and ``count`` coefficient-uniform draws.
    """
    if isinstance(obj, Subspace):
        return sample_unit_in_subspace(obj, count, rng)
    return np.concatenate(
        [_unit_generators(obj), _edge_members(obj), sample_cone_members(obj, count, rng)], axis=1
    )


def _space_of(obj: Sampled) -> Space:
    return obj.space


def _face_count(part: ConvexCone) -> int:
    return sum(math.comb(part.m, size) for size in range(1, min(part.m, part.space.dim) + 1))


def _faces(part: ConvexCone) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Whitened generators and pseudo-inverse of every independent generator subset."""
    faces = []
    for size in range(1, min(part.m, part.space.dim) + 1):
        for idx in itertools.combinations(range(part.m), size):
            sub = part.whitened[:, list(idx)]
            if np.linalg.matrix_rank(sub) == size:
                faces.append((sub, np.linalg.pinv(sub)))
    return faces


def _best_response(target: Sampled) -> Callable[[np.ndarray], np.ndarray]:
    """Map unit columns x to sup |(x, w)| over unit w in ``target``.

    A subspace answers with ``||P x||``. A cone part answers with the
    longest least-squares projection of x (or -x) onto a generator subset
    whose coefficients are all nonnegative; that projection is a member, and
    the longest one is the cone projection. Parts with more than
    ``MAX_FACES`` subsets fall back to their generators and face grids.
    """
    space = target.space
    if isinstance(target, Subspace):
        return lambda xs: np.linalg.norm(space.cross(xs, target.basis), axis=0)

    parts = _nonempty_parts(target)
    if any(_face_count(p) > MAX_FACES for p in parts):
        logger.debug(f"cone has more than {MAX_FACES} faces; oracle pairs against its grid")
        finite = np.concatenate([_unit_generators(target), _edge_members(target)], axis=1)
        return lambda xs: np.max(np.abs(space.cross(xs, finite)), axis=0)

    faces = [face for part in parts for face in _faces(part)]

    def respond(xs: np.ndarray) -> np.ndarray:
        wx = space.whiten(xs)
        best = np.zeros(xs.shape[1])
        for sub, inv in faces:
            coeffs = inv @ wx
            feasible = np.all(coeffs >= 0.0, axis=0) | np.all(coeffs <= 0.0, axis=0)
            length = np.linalg.norm(sub @ coeffs, axis=0)
            best = np.maximum(best, np.where(feasible, length, 0.0))
        return best

    return respond


def brute_force_gamma(first: Sampled, second: Sampled, samples: int, rng: Rng) -> float:
    """Largest |(v, w)| found by sampling; a lower bound on gamma.

    ``samples`` unit members of each side (cones also contribute their
    generators and face grids) are paired with their best response in the
    other side, evaluated in chunks of ``RESPONSE_CHUNK`` columns.

    Each side draws from its own sub-stream and earlier draws never depend
    on the count, so for a fixed seed the result is nondecreasing in
    ``samples``.
    """
    if samples < 1:
        raise UsageError("samples must be >= 1")
    space = _space_of(first)
    if not space.same_as(_space_of(second)):
        raise UsageError("oracle inputs live in different spaces")
    if any(isinstance(obj, Subspace) and obj.k == 0 for obj in (first, second)):
        return 0.0

    best = 0.0
    for index, (source, target) in enumerate(((first, second), (second, first)), start=1):
        respond = _best_response(target)
        members = unit_members(source, samples, rng.spawn(index))
        for start in range(0, members.shape[1], RESPONSE_CHUNK):
            values = respond(members[:, start : start + RESPONSE_CHUNK])
            if values.size:
                best = max(best, float(np.max(values)))
    return min(best, 1.0)


def oracle_report(first: Sampled, second: Sampled, samples: int, rng: Rng) -> GammaReport:
    """:func:`brute_force_gamma` as a report (``method=oracle``, no certificates)."""
    value = brute_force_gamma(first, second, samples, rng)
    return GammaReport(
        gamma=value, kappa=kappa_from_gamma(value), method=Method.ORACLE, heuristic=True, oracle=value,
    )


def _sector_directions(part: ConvexCone, resolution: int) -> np.ndarray:
    """Unit directions spanning the angular sector of a planar convex cone."""
    gens = part.generators
    angles = np.sort(np.mod(np.arctan2(gens[1], gens[0]), 2.0 * math.pi))
    distinct = [angles[0]]
    for a in angles[1:]:
        if a - distinct[-1] > 1e-12:
            distinct.append(a)
    if len(distinct) > 1 and distinct[0] + 2.0 * math.pi - distinct[-1] <= 1e-12:
        distinct.pop()
    theta = np.array(distinct)

    if theta.size == 1:
        sweep = theta
    else:
        gaps = np.diff(np.append(theta, theta[0] + 2.0 * math.pi))
        j = int(np.argmax(gaps))
        largest = float(gaps[j])
        start = theta[(j + 1) % theta.size]
        length = 2.0 * math.pi - largest
        if largest < math.pi - 1e-12:
            sweep = np.linspace(0.0, 2.0 * math.pi, resolution, endpoint=False)
        elif abs(largest - math.pi) <= 1e-12 and theta.size == 2:
            # two opposite rays span a line, not a half-plane
            sweep = theta
        else:
            sweep = start + np.linspace(0.0, length, resolution)

    dirs = np.vstack([np.cos(sweep), np.sin(sweep)])
    return dirs / part.space.column_norms(dirs)


def grid_gamma_2d(first: Cone, second: Cone, resolution: int) -> float:
    """max |(v, w)| over equispaced rays in each part's angular sector (plane only).

    Error is O(1/resolution); rays are evaluated exactly.

    Raises:
        UsageError: If the ambient dimension is not 2 or resolution < 8.
    """
    parts1, parts2 = _nonempty_parts(first), _nonempty_parts(second)
    space = parts1[0].space
    if space.dim != 2:
        raise UsageError("grid_gamma_2d needs a 2-dimensional space")
    if resolution < 8:
        raise UsageError("resolution must be >= 8")
    xs = np.concatenate([_sector_directions(p, resolution) for p in parts1], axis=1)
    ys = np.concatenate([_sector_directions(p, resolution) for p in parts2], axis=1)
    best = 0.0
    for start in range(0, xs.shape[1], GRID_CHUNK):
        block = np.abs(space.cross(xs[:, start : start + GRID_CHUNK], ys))
        best = max(best, float(np.max(block)))
    return min(best, 1.0)
