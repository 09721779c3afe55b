"""CLI command: evaluate the Cauchy-Schwarz identities for a named pair."""

from pathlib import Path

import typer

from ..base import Run, exit_on_error, summary_table
from ..core.space import inner, norm
from .api import (
    cs_equality_case,
    imag_cs_identity,
    modulus_cs_identity,
    optimal_alpha,
    parallelogram_residual,
    real_cs_identity,
    variational_sweep,
)

SWEEP_COUNT = 64


def identities_command(
    ctx: typer.Context,
    x: str = typer.Argument(..., help="Name of the first vector"),
    y: str = typer.Argument(..., help="Name of the second vector"),
    input_path: Path = typer.Option(None, "--input", "-i", help="Problem file (YAML or JSON)"),
    tol: float = typer.Option(1e-8, "--tol", help="Threshold for the equality-case test"),
):
    """
    Evaluate the exact Cauchy-Schwarz identities for vectors X and Y.

    Reports residuals of the real, imaginary and modulus identities, the
    variational bound at 64 rotations plus the optimal one, and whether
    the pair is (numerically) linearly dependent.
    """
    with exit_on_error():
        run = Run(ctx, "identities", input_path)
        space = run.problem.build_space()
        vx = run.problem.vector(x, space)
        vy = run.problem.vector(y, space)

        real = real_cs_identity(vx, vy)
        imag = imag_cs_identity(vx, vy)
        modulus = modulus_cs_identity(vx, vy)
        sweep = variational_sweep(vx, vy, SWEEP_COUNT)
        at_optimum = sweep[-1]
        equality = cs_equality_case(vx, vy, tol)

        flags = ["equality_case"] if equality else []
        results = {
            "x": x,
            "y": y,
            "inner": inner(vx, vy),
            "norms": [norm(vx), norm(vy)],
            "real": real,
            "imag": imag,
            "modulus": modulus,
            "defect": real.angular_terms["u-v"],
            "parallelogram_residual": parallelogram_residual(vx, vy),
            "variational": {
                "count": SWEEP_COUNT,
                "optimal_alpha": optimal_alpha(vx, vy),
                "max_excess": max(r.lhs - r.rhs for r in sweep),
                "optimal_residual": at_optimum.residual,
            },
            "equality_case": equality,
        }
        summary = summary_table(
            f"Cauchy-Schwarz identities for ({x}, {y})",
            {
                "Re residual": real.residual,
                "Im residual": imag.residual,
                "|.| residual": modulus.residual,
                "defect ||u - v||^2": real.angular_terms["u-v"],
                "optimal alpha": results["variational"]["optimal_alpha"],
                "equality case": equality,
            },
        )
        run.emit({"x": x, "y": y, "tol": tol}, results, flags, summary)
