"""Cone projection, membership and the strengthened constant for cones.

All searches work on whitened generators, where the space's inner product
is the Euclidean dot product, and carry nonnegative coefficient vectors so
certificates can be rebuilt in the original coordinates.
"""

import logging
import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from ..core.constants import INTERSECTION_TOL, ZERO_TOL
from ..core.errors import DomainError, UsageError
from ..core.models import GammaReport, Method, gamma_from_kappa
from ..core.space import Vector, norm
from ..oracle.rng import Rng
from .models import Cone, ConeOptions, ConvexCone, UnionCone, as_parts, symmetrize
from .nnls import nnls

logger = logging.getLogger("cbstools")

DEFAULT_MEMBER_TOL = 1e-10


class SearchResult(NamedTuple):
    """Best pair found by the alternating search.

    ``value`` is the largest Re(v, w) over unit v, w; ``coeffs_v``/``coeffs_w``
    are the generator coefficients of the maximizing pair in parts
    ``part_v``/``part_w``.
    """

    value: float
    coeffs_v: np.ndarray
    coeffs_w: np.ndarray
    part_v: int
    part_w: int
    starts: int
    converged: bool


def project_cone(x: Vector, cone: ConvexCone) -> Vector:
    """Nearest point of a convex cone in the space's norm.

    Raises:
        UsageError: If x and the cone live in different spaces.
    """
    if not x.space.same_as(cone.space):
        raise UsageError("vector and cone live in different spaces")
    if cone.m == 0:
        return cone.space.zeros()
    coeffs, _ = nnls(cone.whitened, cone.space.whiten(x.coords))
    return Vector(space=cone.space, coords=cone.generators @ coeffs)


def member(x: Vector, cone: Cone, tol: float = DEFAULT_MEMBER_TOL) -> bool:
    """True if x lies (within ``tol`` relative to max(1, ||x||)) in some part."""
    scale = tol * max(1.0, norm(x))
    return any(norm(x - project_cone(x, part)) <= scale for part in as_parts(cone))


def _checked_parts(first: Cone, second: Cone) -> Tuple[List[ConvexCone], List[ConvexCone]]:
    parts1 = [p for p in as_parts(first) if p.m > 0]
    parts2 = [p for p in as_parts(second) if p.m > 0]
    if not parts1 or not parts2:
        raise DomainError("cone has no generators")
    if not parts1[0].space.same_as(parts2[0].space):
        raise UsageError("cones live in different spaces")
    return parts1, parts2


def _unit_coeffs(whitened: np.ndarray, coeffs: np.ndarray) -> Optional[np.ndarray]:
    n = float(np.linalg.norm(whitened @ coeffs))
    if n <= ZERO_TOL:
        return None
    return coeffs / n


def _climb(
    a1: np.ndarray,
    a2: np.ndarray,
    lv: np.ndarray,
    lw: np.ndarray,
    options: ConeOptions,
) -> Tuple[float, np.ndarray, np.ndarray, bool]:
    """Alternate best responses from a unit start pair until the value settles.

    Each half step replaces one side with the normalized projection of the
    other, which never decreases Re(v, w). A zero projection means the
    other side is polar to the current vector; the start stops there. A step
    that lowers the value (rounding in the projections) also stops it, at
    the incumbent pair.
    """
    value = float((a1 @ lv) @ (a2 @ lw))
    for _ in range(options.max_iter):
        new_lw = _unit_coeffs(a2, nnls(a2, a1 @ lv)[0])
        if new_lw is None:
            return value, lv, lw, True
        new_lv = _unit_coeffs(a1, nnls(a1, a2 @ new_lw)[0])
        if new_lv is None:
            return value, lv, lw, True
        new_value = float((a1 @ new_lv) @ (a2 @ new_lw))
        if new_value < value:
            return value, lv, lw, True
        settled = new_value - value < options.tol
        value, lv, lw = new_value, new_lv, new_lw
        if settled:
            return value, lv, lw, True
    return value, lv, lw, False


def _face_coeffs(face: np.ndarray, direction: np.ndarray) -> Optional[np.ndarray]:
    """Coefficients of ``direction`` (in the span of ``face``) on the face's columns."""
    if face.shape[1] > face.shape[0]:
        return None
    q, r = np.linalg.qr(face)
    if np.min(np.abs(np.diag(r))) <= ZERO_TOL:
        return None
    return np.linalg.solve(r, q.T @ direction)


def _refine(
    a1: np.ndarray,
    a2: np.ndarray,
    lv: np.ndarray,
    lw: np.ndarray,
    value: float,
) -> Tuple[float, np.ndarray, np.ndarray]:
    """Jump to the top principal pair of the active faces when it is feasible.

    Alternating steps between two faces converge only linearly; their limit
    is the leading principal pair of the faces' spans. That pair replaces
    the incumbent when its coefficients can be made nonnegative and it
    scores higher.
    """
    s1, s2 = np.flatnonzero(lv > 0), np.flatnonzero(lw > 0)
    if s1.size == 0 or s2.size == 0 or (s1.size == 1 and s2.size == 1):
        return value, lv, lw
    q1, _ = np.linalg.qr(a1[:, s1])
    q2, _ = np.linalg.qr(a2[:, s2])
    u, _, vt = np.linalg.svd(q1.T @ q2)
    c1 = _face_coeffs(a1[:, s1], q1 @ u[:, 0])
    c2 = _face_coeffs(a2[:, s2], q2 @ vt[0])
    if c1 is None or c2 is None:
        return value, lv, lw
    if c1.sum() < 0:
        c1, c2 = -c1, -c2
    full1, full2 = np.zeros_like(lv), np.zeros_like(lw)
    full1[s1] = np.maximum(c1, 0.0)
    full2[s2] = np.maximum(c2, 0.0)
    new_lv, new_lw = _unit_coeffs(a1, full1), _unit_coeffs(a2, full2)
    if new_lv is None or new_lw is None:
        return value, lv, lw
    new_value = float((a1 @ new_lv) @ (a2 @ new_lw))
    if new_value > value:
        return new_value, new_lv, new_lw
    return value, lv, lw


def _starts(a1: np.ndarray, a2: np.ndarray, rng: Rng, restarts: int):
    """Generator pairs first, then ``restarts`` random conic combinations."""
    m1, m2 = a1.shape[1], a2.shape[1]
    n1 = np.linalg.norm(a1, axis=0)
    n2 = np.linalg.norm(a2, axis=0)
    for i in range(m1):
        for j in range(m2):
            lv = np.zeros(m1)
            lw = np.zeros(m2)
            lv[i] = 1.0 / n1[i]
            lw[j] = 1.0 / n2[j]
            yield lv, lw
    if m1 == 1 and m2 == 1:
        return
    for _ in range(restarts):
        lv = _unit_coeffs(a1, rng.uniform(m1))
        lw = _unit_coeffs(a2, rng.uniform(m2))
        if lv is not None and lw is not None:
            yield lv, lw


def alternating_search(
    parts1: List[ConvexCone],
    parts2: List[ConvexCone],
    options: ConeOptions,
) -> SearchResult:
    """Maximize Re(v, w) over unit v, w drawn from any pair of parts.

    Part pairs are visited in row-major order and each pair gets its own
    sub-stream ``Rng(seed).spawn(pair_index)``. Only a strictly better
    value replaces the incumbent, so the earliest start wins ties and the
    result does not depend on how starts are scheduled.
    """
    root = Rng(options.seed)
    best: Optional[SearchResult] = None
    starts = 0
    for i, p1 in enumerate(parts1):
        for j, p2 in enumerate(parts2):
            pair_index = i * len(parts2) + j
            a1, a2 = p1.whitened, p2.whitened
            for lv, lw in _starts(a1, a2, root.spawn(pair_index), options.restarts):
                starts += 1
                value, lv, lw, converged = _climb(a1, a2, lv, lw, options)
                value, lv, lw = _refine(a1, a2, lv, lw, value)
                if best is None or value > best.value:
                    best = SearchResult(value, lv, lw, i, j, 0, converged)
            logger.debug(f"cone parts ({i}, {j}): best Re(v, w) so far {best.value:.15g}")
    return best._replace(starts=starts, value=min(1.0, max(-1.0, best.value)))


def _exact(parts1: List[ConvexCone], parts2: List[ConvexCone]) -> bool:
    return all(p.m == 1 for p in parts1 + parts2)


def _report_from(
    found: SearchResult,
    parts1: List[ConvexCone],
    parts2: List[ConvexCone],
    exact: bool,
) -> dict:
    v = parts1[found.part_v].generators @ found.coeffs_v
    w = parts2[found.part_w].generators @ found.coeffs_w
    kappa = math.sqrt(max(0.0, 2.0 - 2.0 * found.value))
    return dict(
        gamma=gamma_from_kappa(kappa),
        kappa=kappa,
        certificate_v=Vector(space=parts1[0].space, coords=v),
        certificate_w=Vector(space=parts2[0].space, coords=w),
        method=Method.EXACT_RAYS if exact else Method.ALTERNATING_MULTISTART,
        restarts_used=found.starts,
        converged=found.converged,
        heuristic=not exact,
    )


def kappa_cones(first: Cone, second: Cone, options: Optional[ConeOptions] = None) -> GammaReport:
    """Angular distance inf ||v - w|| over unit v in ``first``, w in ``second``.

    The value is the best found by :func:`alternating_search`, an upper bound
    on the true distance; it is exact (``method=exact_rays``) when every
    part is a single ray. The report's gamma is ``1 - kappa^2 / 2``, i.e. the
    best Re(v, w), which may be negative.

    Raises:
        DomainError: If either cone has no generators.
        UsageError: If the cones live in different spaces.
    """
    options = options or ConeOptions()
    parts1, parts2 = _checked_parts(first, second)
    found = alternating_search(parts1, parts2, options)
    return GammaReport(**_report_from(found, parts1, parts2, _exact(parts1, parts2)))


def gamma_cones(first: Cone, second: Cone, options: Optional[ConeOptions] = None) -> GammaReport:
    """Constant for |(x, y)| <= gamma ||x|| ||y|| over x in ``first``, y in ``second``.

    Computed as the cone angular distance between ``first`` union its
    negation and ``second``. The report carries both values:

    * ``gamma_abs`` (= ``gamma``): sup |(v, w)|, from the symmetrized search;
    * ``gamma_re``: sup Re(v, w) over the cones as given.

    ``certificate_v`` always lies in ``first``; when the maximizer came from
    the negated copy it is flipped back, so it attains (v, w) = -gamma.

    Flags ``intersection`` when gamma_re reaches 1 (the cones share a ray)
    and ``no_strengthened_bound`` when gamma_abs does.
    """
    options = options or ConeOptions()
    parts1, parts2 = _checked_parts(first, second)
    exact = _exact(parts1, parts2)

    plain = alternating_search(parts1, parts2, options)
    mirrored_parts = as_parts(symmetrize(UnionCone(parts=parts1)))
    mirrored = alternating_search(mirrored_parts, parts2, options)
    # the mirrored search repeats the plain starts first, so it is never worse
    gamma_re, gamma_abs = plain.value, mirrored.value

    flip = mirrored.part_v >= len(parts1)
    fields = _report_from(mirrored, mirrored_parts, parts2, exact)
    if flip:
        fields["certificate_v"] = -fields["certificate_v"]
    fields.update(
        restarts_used=plain.starts + mirrored.starts,
        converged=plain.converged and mirrored.converged,
        gamma_re=gamma_re,
        gamma_abs=gamma_abs,
    )
    flags = []
    if gamma_re >= 1.0 - INTERSECTION_TOL:
        flags.append("intersection")
        logger.warning("cones intersect nontrivially; the no-common-ray hypothesis is violated")
    if gamma_abs >= 1.0 - INTERSECTION_TOL:
        flags.append("no_strengthened_bound")
        logger.warning("one cone meets the negation of the other; no constant below 1 for |(x, y)|")
    fields["flags"] = flags
    return GammaReport(**fields)


def oracle_gamma(first: Cone, second: Cone, samples: int, seed: int) -> float:
    """Sampled lower bound on gamma_abs; deterministic in ``seed``."""
    from ..oracle.api import brute_force_gamma

    return brute_force_gamma(first, second, samples, Rng(seed))
