"""Randomized invariant suite run by ``cbstools verify``.

Every check draws its instances from ``Rng(seed).spawn(check_index)`` and
each trial from a further ``spawn(trial)``, so a failure is reproducible
from (seed, check, trial) alone and the printed problem YAML.

Errors are compared against tolerances as ratios; a check passes when its
worst ratio is at most 1. Tolerances for quantities that scale with the
product of two norms are multiplied by ``max(1, product)``.
"""

import logging
import math
import sys
from functools import partial
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from .cones.api import gamma_cones, oracle_gamma
from .cones.models import ConeOptions, ConvexCone, UnionCone
from .core.space import ScalarField, Space, inner, norm
from .holder.api import (
    gamma_holder_bound,
    holder_defect,
    lp_norm,
    mazur_map,
    mazur_objective,
    oracle_gamma_holder,
)
from .holder.models import LpVector
from .identities.api import (
    imag_cs_identity,
    modulus_cs_identity,
    parallelogram_residual,
    real_cs_identity,
    variational_sweep,
)
from .oracle.api import brute_force_gamma, grid_gamma_2d, sample_unit_in_cone, sample_unit_in_subspace
from .oracle.generators import (
    random_cone,
    random_lp_vector,
    random_measure,
    random_space,
    random_subspace,
    random_vector,
)
from .oracle.rng import Rng
from .problems import export_problem
from .subspaces.api import gamma_subspaces

logger = logging.getLogger("cbstools")

EXPONENTS = (1.5, 2.0, 3.0, 4.0)
IDENTITY_TOL = 1e-10
BOUND_TOL = 1e-12
SLACK_TOL = 1e-10
MAZUR_TOL = 1e-10
GRADIENT_TOL = 1e-5
GRADIENT_STEP = 1e-6
ORACLE_LOWER_TOL = 1e-9
ORACLE_GAP_TOL = 5e-3
ORACLE_SAMPLES = 100_000
HOLDER_ORACLE_SAMPLES = 10_000
EXAMPLE_TOL = 1e-6
GRID_TOL = 1e-3
GRID_RESOLUTION = 10_000
MAX_RECORDED_FAILURES = 3


class CheckResult(BaseModel):
    """Outcome of one invariant over all its trials."""

    name: str
    trials: int = 0
    failures: int = 0
    worst_ratio: float = 0.0
    failed_inputs: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


class _Recorder:
    def __init__(self, name: str, seed: int):
        self.result = CheckResult(name=name)
        self.seed = seed
        self._failed_trials: set = set()

    def observe(self, trial: int, error: float, tol: float, inputs: Callable[[], str]) -> None:
        ratio = error / tol if math.isfinite(error) else sys.float_info.max
        self.result.worst_ratio = max(self.result.worst_ratio, ratio)
        if ratio <= 1.0 or trial in self._failed_trials:
            return
        self._failed_trials.add(trial)
        self.result.failures += 1
        if len(self.result.failed_inputs) < MAX_RECORDED_FAILURES:
            text = f"seed {self.seed:#x}, check {self.result.name}, trial {trial}: error {error:.3e} > {tol:.1e}"
            self.result.failed_inputs.append(f"{text}\n{inputs()}")
            logger.debug(text)

    def done(self, trials: int) -> CheckResult:
        self.result.trials = trials
        return self.result


def _pick(rng: Rng, options) -> float:
    return options[int(rng.integers(len(options))[0])]


def _randint(rng: Rng, low: int, high: int) -> int:
    """Uniform integer in [low, high]."""
    return low + int(rng.integers(high - low + 1)[0])


def check_identities(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Real, imaginary and modulus identities, the decomposition and the CS bound."""
    rec = _Recorder("identities", seed)
    for t in range(trials):
        r = rng.spawn(t)
        space = random_space(_randint(r, 1, 32), r, ScalarField.COMPLEX, weighted=bool(t % 2))
        x, y = random_vector(space, r), random_vector(space, r)
        scale = max(1.0, norm(x) * norm(y))
        real, imag, modulus = real_cs_identity(x, y), imag_cs_identity(x, y), modulus_cs_identity(x, y)
        ip = inner(x, y)
        dump = partial(export_problem, space, {"x": x, "y": y})
        rec.observe(t, max(real.residual, imag.residual, modulus.residual), IDENTITY_TOL, dump)
        rec.observe(t, abs(complex(real.lhs, imag.lhs) - ip), BOUND_TOL * scale, dump)
        rec.observe(t, max(0.0, abs(ip) - norm(x) * norm(y)), BOUND_TOL * scale, dump)
        rec.observe(t, parallelogram_residual(x, y), IDENTITY_TOL * scale, dump)
    return rec.done(trials)


def check_variational(rng: Rng, trials: int, seed: int) -> CheckResult:
    """The rotated bound never exceeds |(x, y)| and is tight at the optimal angle."""
    rec = _Recorder("variational", seed)
    for t in range(trials):
        r = rng.spawn(t)
        space = random_space(_randint(r, 1, 32), r, ScalarField.COMPLEX, weighted=bool(t % 2))
        x, y = random_vector(space, r), random_vector(space, r)
        scale = max(1.0, norm(x) * norm(y))
        sweep = variational_sweep(x, y)
        dump = partial(export_problem, space, {"x": x, "y": y})
        rec.observe(t, max(0.0, max(s.lhs - s.rhs for s in sweep)), BOUND_TOL * scale, dump)
        rec.observe(t, sweep[-1].residual, IDENTITY_TOL * scale, dump)
    return rec.done(trials)


def check_holder(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Slack of the strengthened Hölder inequality, its equality case and the p = 2 reduction."""
    rec = _Recorder("holder", seed)
    for t in range(trials):
        r = rng.spawn(t)
        measure = random_measure(_randint(r, 1, 16), r)
        p = _pick(r, EXPONENTS)
        f, g = random_lp_vector(measure, r), random_lp_vector(measure, r)
        vectors = {"f": measure.space.vector(f.values), "g": measure.space.vector(g.values)}
        dump = partial(export_problem, measure.space, vectors, measure=measure)

        report = holder_defect(f, g, p)
        scale = max(1.0, lp_norm(f, p) * lp_norm(g, report.q))
        rec.observe(t, max(0.0, -report.slack), SLACK_TOL * scale, dump)

        g_eq = LpVector(measure=measure, values=np.abs(f.values) ** (p - 1.0))
        eq = holder_defect(f, g_eq, p)
        eq_scale = max(1.0, lp_norm(f, p) * lp_norm(g_eq, eq.q))
        rec.observe(t, eq.defect, SLACK_TOL, dump)
        rec.observe(t, abs(eq.slack), SLACK_TOL * eq_scale, dump)

        two = holder_defect(f, g, 2.0)
        space = measure.space
        ident = real_cs_identity(space.vector(np.abs(f.values)), space.vector(np.abs(g.values)))
        two_scale = max(1.0, lp_norm(f, 2.0) * lp_norm(g, 2.0))
        rec.observe(t, max(abs(two.pairing - ident.lhs), abs(two.bound - ident.rhs)), BOUND_TOL * two_scale, dump)
    return rec.done(trials)


def check_mazur(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Norm preservation, inversion and positive homogeneity of the Mazur map."""
    rec = _Recorder("mazur", seed)
    for t in range(trials):
        r = rng.spawn(t)
        measure = random_measure(_randint(r, 1, 16), r)
        f = random_lp_vector(measure, r)
        rr, s = _pick(r, EXPONENTS), _pick(r, EXPONENTS)
        lam = 0.1 * 100.0 ** r.random()
        dump = partial(export_problem, measure.space, {"f": measure.space.vector(f.values)}, measure=measure)

        image = mazur_map(f, rr, s)
        nf = lp_norm(f, rr)
        rec.observe(t, abs(lp_norm(image, s) - nf), MAZUR_TOL * max(1.0, nf), dump)
        back = mazur_map(image, s, rr)
        peak = float(np.max(np.abs(f.values)))
        rec.observe(t, float(np.max(np.abs(back.values - f.values))), MAZUR_TOL * max(1.0, peak), dump)
        scaled = mazur_map(measure.vector(lam * f.values), rr, s)
        expect = lam * image.values
        rec.observe(
            t, float(np.max(np.abs(scaled.values - expect))),
            MAZUR_TOL * max(1.0, float(np.max(np.abs(expect)))), dump,
        )
    return rec.done(trials)


def check_gradient(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Analytic gradients of the Mazur distance objective against central differences."""
    rec = _Recorder("mazur_gradient", seed)
    for t in range(trials):
        r = rng.spawn(t)
        measure = random_measure(_randint(r, 2, 6), r)
        p = _pick(r, EXPONENTS)
        c1 = random_cone(measure.space, _randint(r, 2, 3), r, nonnegative=True)
        c2 = random_cone(measure.space, _randint(r, 2, 3), r, nonnegative=True)
        a = 0.1 + r.uniform(c1.m)
        b = 0.1 + r.uniform(c2.m)
        w = measure.weights
        obj = mazur_objective(a, b, c1.generators, c2.generators, w, p)

        def value(aa, bb):
            return mazur_objective(aa, bb, c1.generators, c2.generators, w, p).value

        fd_a = np.array([
            (value(a + GRADIENT_STEP * e, b) - value(a - GRADIENT_STEP * e, b)) / (2 * GRADIENT_STEP)
            for e in np.eye(c1.m)
        ])
        fd_b = np.array([
            (value(a, b + GRADIENT_STEP * e) - value(a, b - GRADIENT_STEP * e)) / (2 * GRADIENT_STEP)
            for e in np.eye(c2.m)
        ])
        analytic = np.concatenate([obj.grad_a, obj.grad_b])
        diff = float(np.linalg.norm(np.concatenate([fd_a, fd_b]) - analytic))
        rel = diff / max(float(np.linalg.norm(analytic)), 1e-2)
        rec.observe(t, rel, GRADIENT_TOL, partial(export_problem, measure.space, cones={"C1": c1, "C2": c2}, measure=measure))
    return rec.done(trials)


def check_subspaces(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Principal-angle gamma against the sampling oracle, and the strengthened CS bound."""
    rec = _Recorder("subspace_oracle", seed)
    for t in range(trials):
        r = rng.spawn(t)
        dim = _randint(r, 2, 6)
        space = random_space(dim, r, ScalarField.REAL, weighted=bool(t % 2))
        v = random_subspace(space, _randint(r, 1, min(3, dim)), r)
        f = random_subspace(space, _randint(r, 1, min(3, dim)), r)
        gamma = gamma_subspaces(v, f).gamma
        oracle = brute_force_gamma(v, f, ORACLE_SAMPLES, r.spawn(0))
        dump = partial(export_problem, space, subspaces={"V": v, "F": f})
        rec.observe(t, max(0.0, oracle - gamma), ORACLE_LOWER_TOL, dump)
        rec.observe(t, max(0.0, gamma - oracle), ORACLE_GAP_TOL, dump)

        xs = sample_unit_in_subspace(v, 20, r.spawn(1))
        ys = sample_unit_in_subspace(f, 20, r.spawn(2))
        excess = float(np.max(np.abs(space.cross(xs, ys)))) - gamma
        rec.observe(t, max(0.0, excess), IDENTITY_TOL, dump)
    return rec.done(trials)


def check_cones(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Cone gamma_abs sandwiched by the oracle; strengthened CS on sampled members."""
    rec = _Recorder("cone_oracle", seed)
    for t in range(trials):
        r = rng.spawn(t)
        space = random_space(_randint(r, 2, 3), r, ScalarField.REAL, weighted=bool(t % 2))
        c1 = random_cone(space, _randint(r, 1, 4), r)
        c2 = random_cone(space, _randint(r, 1, 4), r)
        trial_seed = r.next_u64()
        report = gamma_cones(c1, c2, ConeOptions(seed=trial_seed))
        oracle = oracle_gamma(c1, c2, ORACLE_SAMPLES, trial_seed)
        dump = partial(export_problem, space, cones={"C1": c1, "C2": c2})
        rec.observe(t, max(0.0, oracle - report.gamma_abs), ORACLE_LOWER_TOL, dump)
        rec.observe(t, max(0.0, report.gamma_abs - oracle), ORACLE_GAP_TOL, dump)

        excess = 0.0
        for _ in range(100):
            x = sample_unit_in_cone(c1, r) * (0.1 + 10.0 * r.random())
            y = sample_unit_in_cone(c2, r) * (0.1 + 10.0 * r.random())
            excess = max(excess, abs(inner(x, y)) - report.gamma_abs * norm(x) * norm(y))
        rec.observe(t, max(0.0, excess), ORACLE_LOWER_TOL * 100.0, dump)
    return rec.done(trials)


def check_holder_cones(rng: Rng, trials: int, seed: int) -> CheckResult:
    """Sampled Hölder ratio never exceeds the Mazur-route bound."""
    rec = _Recorder("holder_oracle", seed)
    for t in range(trials):
        r = rng.spawn(t)
        measure = random_measure(_randint(r, 2, 4), r)
        p = _pick(r, EXPONENTS)
        c1 = random_cone(measure.space, _randint(r, 1, 2), r)
        c2 = random_cone(measure.space, _randint(r, 1, 2), r)
        trial_seed = r.next_u64()
        report = gamma_holder_bound(c1, c2, p, ConeOptions(seed=trial_seed))
        oracle = oracle_gamma_holder(c1, c2, p, HOLDER_ORACLE_SAMPLES, trial_seed)
        tol = ORACLE_LOWER_TOL if not report.heuristic else ORACLE_GAP_TOL
        rec.observe(
            t, max(0.0, oracle - report.gamma), tol,
            partial(export_problem, measure.space, cones={"C1": c1, "C2": c2}, measure=measure),
        )
    return rec.done(trials)


def quadrant_example(space: Optional[Space] = None):
    """The line x = -y against the union of the first and third quadrants."""
    space = space or Space(dim=2)
    line = ConvexCone(space=space, generators=[[1.0, -1.0], [-1.0, 1.0]])
    quadrants = UnionCone(parts=[
        ConvexCone(space=space, generators=[[1.0, 0.0], [0.0, 1.0]]),
        ConvexCone(space=space, generators=[[-1.0, 0.0], [0.0, -1.0]]),
    ])
    return line, quadrants


def check_quadrant_example(rng: Rng, trials: int, seed: int) -> CheckResult:
    """gamma = cos(pi/4) for the line against the first and third quadrants."""
    rec = _Recorder("quadrant_example", seed)
    line, quadrants = quadrant_example()
    expected = 1.0 / math.sqrt(2.0)
    dump = partial(export_problem, line.space, cones={"line": line, "quadrants": quadrants})
    report = gamma_cones(line, quadrants, ConeOptions(seed=seed))
    rec.observe(0, abs(report.gamma_abs - expected), EXAMPLE_TOL, dump)
    rec.observe(0, abs(report.kappa - math.sqrt(2.0 - math.sqrt(2.0))), EXAMPLE_TOL, dump)
    rec.observe(0, abs(grid_gamma_2d(line, quadrants, GRID_RESOLUTION) - expected), GRID_TOL, dump)
    oracle = brute_force_gamma(line, quadrants, ORACLE_SAMPLES, rng)
    rec.observe(0, max(0.0, oracle - expected), ORACLE_LOWER_TOL, dump)
    rec.observe(0, max(0.0, expected - oracle), ORACLE_GAP_TOL, dump)
    return rec.done(1)


# (check, trial cap); None means the requested trial count
CHECKS = (
    (check_identities, None),
    (check_variational, 100),
    (check_holder, None),
    (check_mazur, None),
    (check_gradient, 20),
    (check_subspaces, 50),
    (check_cones, 50),
    (check_holder_cones, 20),
    (check_quadrant_example, 1),
)


def run_suite(seed: int, trials: int) -> List[CheckResult]:
    """Run every check; never raises on violations, the caller inspects ``passed``."""
    root = Rng(seed)
    results = []
    for index, (check, cap) in enumerate(CHECKS):
        count = trials if cap is None else min(trials, cap)
        result = check(root.spawn(index), count, seed)
        logger.debug(f"{result.name}: {result.trials} trials, worst ratio {result.worst_ratio:.3e}")
        results.append(result)
    return results
