"""CLI commands: gamma and kappa for subspace or cone pairs."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Tuple

import typer

from ..base import Run, exit_on_error, parse_seed, summary_table
from ..core.constants import (
    DEFAULT_MAX_ITER,
    DEFAULT_ORACLE_SAMPLES,
    DEFAULT_RESTARTS,
    DEFAULT_SEARCH_TOL,
    DEFAULT_SEED,
)
from ..core.errors import DomainError, UsageError
from ..core.models import GammaReport
from ..core.space import ScalarField
from ..oracle.api import brute_force_gamma, oracle_report
from ..oracle.rng import Rng
from ..problems import ProblemFile
from ..subspaces.api import gamma_subspaces
from .api import gamma_cones, kappa_cones
from .models import ConeOptions


class Kind(str, Enum):
    SUBSPACE = "subspace"
    CONE = "cone"


def _subspace_report(problem: ProblemFile, first: str, second: str) -> Tuple[GammaReport, Any, Any]:
    space = problem.build_space()
    v, f = problem.subspace(first, space), problem.subspace(second, space)
    return gamma_subspaces(v, f), v, f


def _cone_pair(problem: ProblemFile, first: str, second: str):
    space = problem.cone_space()
    return problem.cone(first, space), problem.cone(second, space)


def _compute(
    run: Run,
    kind: Kind,
    first: str,
    second: str,
    options: ConeOptions,
    oracle_samples: int,
    want_kappa: bool,
    oracle_only: bool = False,
) -> Tuple[GammaReport, List[str]]:
    problem = run.problem
    flags: List[str] = []
    if oracle_only and not oracle_samples:
        raise UsageError("--oracle-only needs --oracle-samples > 0")
    if kind == Kind.SUBSPACE:
        report, v, f = _subspace_report(problem, first, second)
        if oracle_only:
            return oracle_report(v, f, oracle_samples, Rng(options.seed)), flags
        if want_kappa and (v.k == 0 or f.k == 0):
            raise DomainError("angular distance of a zero subspace is undefined")
        if oracle_samples and v.k and f.k:
            oracle = brute_force_gamma(v, f, oracle_samples, Rng(options.seed))
            report = report.model_copy(update={"oracle": oracle})
        return report, flags

    if problem.space.field == ScalarField.COMPLEX:
        flags.append("realified")
    c1, c2 = _cone_pair(problem, first, second)
    if oracle_only:
        return oracle_report(c1, c2, oracle_samples, Rng(options.seed)), flags
    report = kappa_cones(c1, c2, options) if want_kappa else gamma_cones(c1, c2, options)
    if oracle_samples:
        oracle = brute_force_gamma(c1, c2, oracle_samples, Rng(options.seed))
        report = report.model_copy(update={"oracle": oracle})
    return report, flags


def _emit(
    run: Run,
    arguments: Dict[str, Any],
    report: GammaReport,
    flags: List[str],
    title: str,
) -> None:
    flags = flags + report.flags
    if report.heuristic:
        flags.append("heuristic")
    rows: Dict[str, Any] = {"gamma": report.gamma, "kappa": report.kappa}
    if report.gamma_re is not None:
        rows["gamma_re"] = report.gamma_re
    if report.oracle is not None:
        rows["oracle"] = report.oracle
    rows["method"] = report.method.value
    rows["restarts used"] = report.restarts_used
    run.emit(arguments, {"report": report}, flags, summary_table(title, rows))


def _arguments(kind, first, second, options, oracle_samples) -> Dict[str, Any]:
    return {
        "kind": kind.value,
        "first": first,
        "second": second,
        "restarts": options.restarts,
        "max_iter": options.max_iter,
        "tol": options.tol,
        "oracle_samples": oracle_samples,
    }


def gamma_command(
    ctx: typer.Context,
    first: str = typer.Argument(..., help="First subspace or cone"),
    second: str = typer.Argument(..., help="Second subspace or cone"),
    input_path: Path = typer.Option(None, "--input", "-i", help="Problem file (YAML or JSON)"),
    kind: Kind = typer.Option(Kind.CONE, "--kind", "-k", help="Interpret the names as subspaces or cones"),
    restarts: int = typer.Option(DEFAULT_RESTARTS, "--restarts", min=0, help="Random multistarts per part pair"),
    max_iter: int = typer.Option(DEFAULT_MAX_ITER, "--max-iter", min=1, help="Iterations per start"),
    tol: float = typer.Option(DEFAULT_SEARCH_TOL, "--tol", help="Stop when the objective changes less than this"),
    oracle_samples: int = typer.Option(DEFAULT_ORACLE_SAMPLES, "--oracle-samples", min=0, help="Brute-force samples (0 disables)"),
    oracle_only: bool = typer.Option(False, "--oracle-only", help="Skip the search and report the sampled lower bound"),
    seed: str = typer.Option(hex(DEFAULT_SEED), "--seed", help="RNG seed, decimal or 0x-hex"),
):
    """
    Strengthened Cauchy-Schwarz constant gamma for FIRST and SECOND.

    For subspaces gamma is the largest principal cosine (exact). For cones
    the report carries gamma_abs (the |(x, y)| constant) and gamma_re, found
    by alternating multistart search and checked against a sampled oracle.
    With --oracle-only the search is skipped and the report is the sampled
    lower bound alone (method oracle).
    """
    with exit_on_error():
        seed_value = parse_seed(seed)
        options = ConeOptions(restarts=restarts, max_iter=max_iter, tol=tol, seed=seed_value)
        run = Run(ctx, "gamma", input_path, seed=seed_value)
        report, flags = _compute(run, kind, first, second, options, oracle_samples, want_kappa=False,
                                 oracle_only=oracle_only)
        arguments = _arguments(kind, first, second, options, oracle_samples)
        arguments["oracle_only"] = oracle_only
        _emit(run, arguments, report, flags,
              f"gamma({first}, {second}) [{kind.value}]")


def kappa_command(
    ctx: typer.Context,
    first: str = typer.Argument(..., help="First subspace or cone"),
    second: str = typer.Argument(..., help="Second subspace or cone"),
    input_path: Path = typer.Option(None, "--input", "-i", help="Problem file (YAML or JSON)"),
    kind: Kind = typer.Option(Kind.CONE, "--kind", "-k", help="Interpret the names as subspaces or cones"),
    restarts: int = typer.Option(DEFAULT_RESTARTS, "--restarts", min=0, help="Random multistarts per part pair"),
    max_iter: int = typer.Option(DEFAULT_MAX_ITER, "--max-iter", min=1, help="Iterations per start"),
    tol: float = typer.Option(DEFAULT_SEARCH_TOL, "--tol", help="Stop when the objective changes less than this"),
    oracle_samples: int = typer.Option(0, "--oracle-samples", min=0, help="Brute-force samples (0 disables)"),
    seed: str = typer.Option(hex(DEFAULT_SEED), "--seed", help="RNG seed, decimal or 0x-hex"),
):
    """
    Angular distance kappa = inf ||v - w|| over unit v in FIRST, w in SECOND.

    For cones the value comes from the unsymmetrized search, so its gamma
    (= 1 - kappa^2 / 2) is gamma_re and may be negative.
    """
    with exit_on_error():
        seed_value = parse_seed(seed)
        options = ConeOptions(restarts=restarts, max_iter=max_iter, tol=tol, seed=seed_value)
        run = Run(ctx, "kappa", input_path, seed=seed_value)
        report, flags = _compute(run, kind, first, second, options, oracle_samples, want_kappa=True)
        _emit(run, _arguments(kind, first, second, options, oracle_samples), report, flags,
              f"kappa({first}, {second}) [{kind.value}]")
