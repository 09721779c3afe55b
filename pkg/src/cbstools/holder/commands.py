"""CLI command: strengthened Hölder inequality for a vector or cone pair."""

from pathlib import Path

import typer

from ..base import Run, exit_on_error, parse_seed, summary_table
from ..cones.models import ConeOptions
from ..core.constants import DEFAULT_MAX_ITER, DEFAULT_ORACLE_SAMPLES, DEFAULT_RESTARTS, DEFAULT_SEARCH_TOL, DEFAULT_SEED
from ..core.errors import ParseError
from ..core.space import ScalarField
from .api import gamma_holder_bound, holder_defect, oracle_gamma_holder
from .models import MVariant


def holder_command(
    ctx: typer.Context,
    first: str = typer.Argument(..., help="First vector or cone (in L^p)"),
    second: str = typer.Argument(..., help="Second vector or cone (in L^q)"),
    input_path: Path = typer.Option(None, "--input", "-i", help="Problem file with a 'measure' section"),
    p: float = typer.Option(2.0, "--p", help="Exponent p in (1, inf); q = p / (p - 1)"),
    m_variant: MVariant = typer.Option(MVariant.MAX, "--m-variant", help="M = max(p, q) or the weaker p + q"),
    restarts: int = typer.Option(DEFAULT_RESTARTS, "--restarts", min=0, help="Random multistarts per part pair"),
    max_iter: int = typer.Option(DEFAULT_MAX_ITER, "--max-iter", min=1, help="Iterations per start"),
    tol: float = typer.Option(DEFAULT_SEARCH_TOL, "--tol", help="Stop when the objective changes less than this"),
    oracle_samples: int = typer.Option(DEFAULT_ORACLE_SAMPLES, "--oracle-samples", min=0, help="Brute-force samples (0 disables)"),
    seed: str = typer.Option(hex(DEFAULT_SEED), "--seed", help="RNG seed, decimal or 0x-hex"),
):
    """
    Strengthened Hölder inequality on the problem's measure space.

    For two vectors: both sides of the inequality, the power-density defect
    and the slack. For two cones: the Mazur-route bound gamma on
    ||fg||_1 / (||f||_p ||g||_q) next to a sampled lower bound.
    """
    with exit_on_error():
        seed_value = parse_seed(seed)
        run = Run(ctx, "holder", input_path, seed=seed_value)
        problem = run.problem
        if problem.space.field != ScalarField.REAL:
            raise ParseError("L^p data must be real-valued; the problem space is complex")
        measure = problem.build_measure()
        arguments = {"first": first, "second": second, "p": p, "m_variant": m_variant.value}
        flags = []

        if problem.kind_of(first) == "vector":
            f = problem.lp_vector(first, measure)
            g = problem.lp_vector(second, measure)
            report = holder_defect(f, g, p, m_variant)
            if not report.holds:
                flags.append("inequality_violated")
            summary = summary_table(
                f"Hölder ({first}, {second}), p = {p:g}",
                {
                    "||fg||_1": report.pairing,
                    "bound": report.bound,
                    "defect": report.defect,
                    "slack": report.slack,
                    "M": report.m_constant,
                },
            )
            run.emit(arguments, {"report": report}, flags, summary)
            return

        options = ConeOptions(restarts=restarts, max_iter=max_iter, tol=tol, seed=seed_value)
        c1 = problem.cone(first, measure.space)
        c2 = problem.cone(second, measure.space)
        report = gamma_holder_bound(c1, c2, p, options, m_variant)
        if oracle_samples:
            oracle = oracle_gamma_holder(c1, c2, p, oracle_samples, seed_value)
            report = report.model_copy(update={"oracle": oracle})
        flags.extend(report.flags)
        if report.heuristic:
            flags.append("heuristic")
        arguments.update(restarts=restarts, max_iter=max_iter, tol=tol, oracle_samples=oracle_samples)
        rows = {"gamma_bound": report.gamma, "kappa": report.kappa, "M": report.m_constant}
        if report.oracle is not None:
            rows["oracle"] = report.oracle
        rows["method"] = report.method.value
        run.emit(arguments, {"report": report}, flags, summary_table(f"Hölder gamma ({first}, {second}), p = {p:g}", rows))
