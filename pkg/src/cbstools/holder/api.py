"""Weighted L^p norms, the Mazur map and the strengthened Hölder inequality.

The cone constant follows the Mazur route: map |C1| into L^2 with
``psi_{p,2}`` and |C2| with ``psi_{q,2}``, measure the angular distance
kappa between the images, and bound

    ||fg||_1 <= (1 - kappa^2 / M) ||f||_p ||g||_q,   M = max(p, q).

Cone generators are coordinate vectors over a :class:`MeasureSpace`; the
weights are read off the cone's space (diagonal Gram matrix, identity when
absent).
"""

import logging
import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from ..cones.models import Cone, ConeOptions, ConvexCone, as_parts
from ..core.constants import INTERSECTION_TOL, ZERO_TOL
from ..core.errors import DomainError, UsageError
from ..core.models import Method, gamma_from_kappa
from ..core.space import Space, Vector
from ..oracle.api import unit_members
from ..oracle.rng import Rng
from .models import HolderGammaReport, HolderReport, LpVector, MeasureSpace, MVariant, m_constant

logger = logging.getLogger("cbstools")

MIN_STEP = 1e-12
ORACLE_CHUNK = 512


def conjugate_exponent(p: float) -> float:
    """q = p / (p - 1).

    Raises:
        UsageError: Unless 1 < p < inf.
    """
    _check_exponent(p)
    return p / (p - 1.0)


def _check_exponent(p: float, name: str = "p") -> None:
    if not (math.isfinite(p) and p > 1.0):
        raise UsageError(f"exponent {name} must satisfy 1 < {name} < inf, got {p!r}")


def _require_same_measure(f: LpVector, g: LpVector) -> None:
    if not f.measure.same_as(g.measure):
        raise UsageError("functions live on different measure spaces")


def _lp(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    return float(weights @ np.abs(values) ** p) ** (1.0 / p)


def lp_norm(f: LpVector, p: float) -> float:
    """(sum mu_i |f_i|^p)^(1/p)."""
    _check_exponent(p)
    return _lp(f.values, f.measure.weights, p)


def pairing_l1(f: LpVector, g: LpVector) -> float:
    """||fg||_1 = sum mu_i |f_i g_i|."""
    _require_same_measure(f, g)
    return float(f.measure.weights @ np.abs(f.values * g.values))


def mazur_map(f: LpVector, r: float, s: float) -> LpVector:
    """psi_{r,s}(f) = ||f||_r^(1 - r/s) |f|^(r/s) sign(f).

    Positively homogeneous and norm preserving: ``||psi(f)||_s = ||f||_r``.
    sign(0) is taken as 1, which only ever multiplies a zero entry.
    """
    _check_exponent(r, "r")
    _check_exponent(s, "s")
    n = lp_norm(f, r)
    if n == 0.0:
        return f.measure.vector(np.zeros(f.measure.n))
    sign = np.where(f.values < 0.0, -1.0, 1.0)
    values = n ** (1.0 - r / s) * np.abs(f.values) ** (r / s) * sign
    return f.measure.vector(values)


def holder_defect(f: LpVector, g: LpVector, p: float, m_variant: MVariant = MVariant.MAX) -> HolderReport:
    """Evaluate both sides of the strengthened Hölder inequality.

    The defect is the squared L^2 distance between the normalized power
    densities ``|f|^(p/2) / ||f||_p^(p/2)`` and ``|g|^(q/2) / ||g||_q^(q/2)``.

    Raises:
        UsageError: If p is out of range or the measures differ.
        DomainError: If f or g is zero.
    """
    q = conjugate_exponent(p)
    _require_same_measure(f, g)
    nf, ng = lp_norm(f, p), lp_norm(g, q)
    if nf <= ZERO_TOL or ng <= ZERO_TOL:
        raise DomainError("Hölder defect needs nonzero f and g")
    mu = f.measure.weights
    u = np.abs(f.values) ** (p / 2.0) / nf ** (p / 2.0)
    v = np.abs(g.values) ** (q / 2.0) / ng ** (q / 2.0)
    defect = float(mu @ (u - v) ** 2)
    m = m_constant(p, q, m_variant)
    bound = nf * ng * (1.0 - defect / m)
    pairing = pairing_l1(f, g)
    return HolderReport(
        p=p, q=q, m_variant=m_variant, m_constant=m,
        pairing=pairing, bound=bound, defect=defect, slack=bound - pairing,
    )


class MazurObjective(NamedTuple):
    """kappa^2 between Mazur images and its gradients in the coefficients."""

    value: float
    grad_a: np.ndarray
    grad_b: np.ndarray


def _power_density(x: np.ndarray, weights: np.ndarray, r: float) -> Tuple[np.ndarray, float]:
    """Unit L^2 image ``|x|^(r/2) / N^(1/2)`` and ``N = sum mu |x|^r``."""
    total = float(weights @ np.abs(x) ** r)
    if total <= ZERO_TOL:
        raise DomainError("cone member is zero")
    return np.abs(x) ** (r / 2.0) / math.sqrt(total), total


def _overlap_gradient(
    x: np.ndarray, image: np.ndarray, other: np.ndarray, total: float,
    overlap: float, weights: np.ndarray, r: float,
) -> np.ndarray:
    """d overlap / d x for overlap = sum mu image(x) other."""
    ax = np.abs(x)
    nonzero = ax > 0.0
    ratio = np.divide(image, ax, out=np.zeros_like(ax), where=nonzero)
    grad = 0.5 * r * weights * np.sign(x) * (other * ratio - ax ** (r - 1.0) * overlap / total)
    return np.where(nonzero, grad, 0.0)


def mazur_objective(
    a: np.ndarray,
    b: np.ndarray,
    gens1: np.ndarray,
    gens2: np.ndarray,
    weights: np.ndarray,
    p: float,
) -> MazurObjective:
    """kappa^2 = || psi_{p,2}(|f|)/||f||_p - psi_{q,2}(|g|)/||g||_q ||_2^2 for f = gens1 a, g = gens2 b.

    Both images are unit vectors in L^2(mu), so the value is ``2 - 2E`` with
    E their overlap. Coordinates where f (or g) vanishes contribute a zero
    gradient entry; the objective is not differentiable there for p < 2.

    Raises:
        DomainError: If f or g is zero.
    """
    q = conjugate_exponent(p)
    f = gens1 @ a
    g = gens2 @ b
    phi, nf = _power_density(f, weights, p)
    psi, ng = _power_density(g, weights, q)
    overlap = float(weights @ (phi * psi))
    df = _overlap_gradient(f, phi, psi, nf, overlap, weights, p)
    dg = _overlap_gradient(g, psi, phi, ng, overlap, weights, q)
    return MazurObjective(
        value=2.0 - 2.0 * overlap,
        grad_a=-2.0 * (gens1.T @ df),
        grad_b=-2.0 * (gens2.T @ dg),
    )


def _weights_of(space: Space) -> np.ndarray:
    if not space.is_real:
        raise UsageError("L^p data must be real-valued")
    if space.gram is None:
        return np.ones(space.dim)
    diag = np.diag(space.gram)
    if np.any(space.gram != np.diag(diag)):
        raise UsageError("Hölder cones need a measure space (diagonal Gram matrix)")
    return diag.copy()


def _unit_p(gens: np.ndarray, coeffs: np.ndarray, weights: np.ndarray, r: float) -> Optional[np.ndarray]:
    n = _lp(gens @ coeffs, weights, r)
    if n <= ZERO_TOL:
        return None
    return coeffs / n


def _overlap(g1: np.ndarray, g2: np.ndarray, weights: np.ndarray, p: float, a: np.ndarray, b: np.ndarray) -> float:
    return 1.0 - 0.5 * mazur_objective(a, b, g1, g2, weights, p).value


def _ascend(
    g1: np.ndarray,
    g2: np.ndarray,
    weights: np.ndarray,
    p: float,
    a: np.ndarray,
    b: np.ndarray,
    options: ConeOptions,
) -> Tuple[float, np.ndarray, np.ndarray, bool]:
    """Projected gradient ascent on the overlap with backtracking.

    Steps are clipped to the nonnegative orthant and renormalized to unit
    p- and q-norm. The step length doubles after a success and halves after
    a failure; a start ends when no step of at least MIN_STEP improves.
    """
    q = conjugate_exponent(p)
    obj = mazur_objective(a, b, g1, g2, weights, p)
    value = 1.0 - 0.5 * obj.value
    step = 1.0
    for _ in range(options.max_iter):
        ga, gb = -0.5 * obj.grad_a, -0.5 * obj.grad_b
        improved = False
        while step >= MIN_STEP:
            na = _unit_p(g1, np.maximum(a + step * ga, 0.0), weights, p)
            nb = _unit_p(g2, np.maximum(b + step * gb, 0.0), weights, q)
            if na is not None and nb is not None:
                trial = mazur_objective(na, nb, g1, g2, weights, p)
                trial_value = 1.0 - 0.5 * trial.value
                if trial_value > value:
                    improved = True
                    break
            step *= 0.5
        if not improved:
            return value, a, b, True
        gain = trial_value - value
        a, b, obj, value = na, nb, trial, trial_value
        step *= 2.0
        if gain < options.tol:
            return value, a, b, True
    return value, a, b, False


def _starts(g1: np.ndarray, g2: np.ndarray, weights: np.ndarray, p: float, rng: Rng, restarts: int):
    q = conjugate_exponent(p)
    m1, m2 = g1.shape[1], g2.shape[1]
    for i in range(m1):
        for j in range(m2):
            a = np.zeros(m1)
            b = np.zeros(m2)
            a[i] = 1.0
            b[j] = 1.0
            yield _unit_p(g1, a, weights, p), _unit_p(g2, b, weights, q)
    if m1 == 1 and m2 == 1:
        return
    for _ in range(restarts):
        a = _unit_p(g1, rng.uniform(m1), weights, p)
        b = _unit_p(g2, rng.uniform(m2), weights, q)
        if a is not None and b is not None:
            yield a, b


def _nonempty(first: Cone, second: Cone) -> Tuple[List[ConvexCone], List[ConvexCone]]:
    parts1 = [c for c in as_parts(first) if c.m > 0]
    parts2 = [c for c in as_parts(second) if c.m > 0]
    if not parts1 or not parts2:
        raise DomainError("cone has no generators")
    if not parts1[0].space.same_as(parts2[0].space):
        raise UsageError("cones live in different spaces")
    return parts1, parts2


def gamma_holder_bound(
    first: Cone,
    second: Cone,
    p: float,
    options: Optional[ConeOptions] = None,
    m_variant: MVariant = MVariant.MAX,
) -> HolderGammaReport:
    """Upper bound gamma with ||fg||_1 <= gamma ||f||_p ||g||_q on C1 x C2.

    kappa is the best distance found between the Mazur images by multistart
    projected gradient ascent over nonnegative generator coefficients. Part
    pairs, sub-streams and tie-breaking follow the cone search: generator
    pairs first, then ``restarts`` random combinations, and only strict
    improvements replace the incumbent. Exact when every part is a ray.

    Raises:
        UsageError: If p is out of range or the cones are not over a measure space.
        DomainError: If either cone has no generators.
    """
    options = options or ConeOptions()
    q = conjugate_exponent(p)
    parts1, parts2 = _nonempty(first, second)
    space = parts1[0].space
    weights = _weights_of(space)
    exact = all(c.m == 1 for c in parts1 + parts2)

    root = Rng(options.seed)
    best: Optional[Tuple[float, np.ndarray, np.ndarray, int, int, bool]] = None
    starts = 0
    for i, c1 in enumerate(parts1):
        for j, c2 in enumerate(parts2):
            g1, g2 = c1.generators, c2.generators
            rng = root.spawn(i * len(parts2) + j)
            for a, b in _starts(g1, g2, weights, p, rng, options.restarts):
                starts += 1
                if exact:
                    value, converged = _overlap(g1, g2, weights, p, a, b), True
                else:
                    value, a, b, converged = _ascend(g1, g2, weights, p, a, b, options)
                if best is None or value > best[0]:
                    best = (value, a, b, i, j, converged)
            logger.debug(f"holder parts ({i}, {j}): best overlap so far {best[0]:.15g}")

    value, a, b, i, j, converged = best
    value = min(1.0, max(0.0, value))
    kappa = math.sqrt(max(0.0, 2.0 - 2.0 * value))
    m = m_constant(p, q, m_variant)

    flags = []
    if value >= 1.0 - INTERSECTION_TOL:
        flags.append("intersection")
        logger.warning("Mazur images of the cones meet; no Hölder constant below 1")

    return HolderGammaReport(
        gamma=gamma_from_kappa(kappa, m),
        kappa=kappa,
        certificate_v=Vector(space=space, coords=parts1[i].generators @ a),
        certificate_w=Vector(space=space, coords=parts2[j].generators @ b),
        method=Method.EXACT_RAYS if exact else Method.PROJECTED_GRADIENT_MULTISTART,
        restarts_used=starts,
        converged=converged,
        heuristic=not exact,
        m_constant=m,
        flags=flags,
        p=p,
        q=q,
        m_variant=m_variant,
    )


def oracle_gamma_holder(first: Cone, second: Cone, p: float, samples: int, seed: int) -> float:
    """Sampled lower bound on the Hölder constant: max ||fg||_1 / (||f||_p ||g||_q).

    Uses ``ceil(sqrt(samples))`` members per cone (plus generators and face grids) and
    all pairs between them; deterministic in ``seed``.
    """
    q = conjugate_exponent(p)
    if samples < 1:
        raise UsageError("samples must be >= 1")
    parts1, _ = _nonempty(first, second)
    weights = _weights_of(parts1[0].space)
    rng = Rng(seed)
    count = int(math.ceil(math.sqrt(samples)))
    fs = np.abs(unit_members(first, count, rng.spawn(1)))
    gs = np.abs(unit_members(second, count, rng.spawn(2)))
    nf = (weights @ fs ** p) ** (1.0 / p)
    ng = (weights @ gs ** q) ** (1.0 / q)
    weighted = weights[:, None] * gs
    best = 0.0
    for start in range(0, fs.shape[1], ORACLE_CHUNK):
        block = fs[:, start : start + ORACLE_CHUNK]
        ratio = (block.T @ weighted) / np.outer(nf[start : start + ORACLE_CHUNK], ng)
        best = max(best, float(np.max(ratio)))
    return min(best, 1.0)


def measure_from_space(space: Space) -> MeasureSpace:
    """The measure whose L^2 pairing is the space's inner product."""
    return MeasureSpace(weights=_weights_of(space))
