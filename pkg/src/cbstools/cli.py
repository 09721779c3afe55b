#!/usr/bin/env python3
"""cbstools CLI - Main entry point for command-line interface.

Usage:
    cbstools [OPTIONS] COMMAND [ARGS]

Commands:
    identities  Exact Cauchy-Schwarz identities for a vector pair
    gamma       Strengthened CS constant for subspaces or cones
    kappa       Angular distance between subspaces or cones
    holder      Strengthened Hölder inequality and its cone constant
    verify      Seeded randomized invariant suite

Examples:
    cbstools identities x y --input problems/vectors.yaml
    cbstools gamma line quadrants --input problems/quadrants.yaml
    cbstools gamma V F --kind subspace --input problems/subspaces.yaml
    cbstools holder f g --p 3 --input problems/holder.yaml
    cbstools --quiet verify --seed 0xC5C5 --trials 1000
"""

import logging

import typer
from rich.logging import RichHandler

from . import __app_name__, __version__
from .base import OutputSettings, Run, console, exit_on_error, parse_seed, summary_table
from .cones.commands import gamma_command, kappa_command
from .core.constants import DEFAULT_SEED
from .core.errors import VerificationError
from .holder.commands import holder_command
from .identities.commands import identities_command
from .verify import run_suite

logger = logging.getLogger("cbstools")

# Initialize Typer app
app = typer.Typer(
    name=__app_name__,
    help="cbstools - strengthened Cauchy-Schwarz and Hölder constants for subspaces and cones",
    add_completion=False,
    rich_markup_mode="rich",
)


def version_callback(value: bool):
    """Show version and exit."""
    if value:
        console.print(f"[bold blue]{__app_name__}[/bold blue] version [green]{__version__}[/green]")
        raise typer.Exit()


def _configure_logging(settings: OutputSettings) -> None:
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = RichHandler(console=console, show_path=False, show_time=False)
    logger.addHandler(handler)
    logger.propagate = False
    if settings.verbose:
        logger.setLevel(logging.DEBUG)
    elif settings.quiet:
        logger.setLevel(logging.ERROR)
    else:
        logger.setLevel(logging.WARNING)


@app.callback()
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        None,
        "--version",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log search progress (DEBUG)"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No summary table; errors only"),
    timing: bool = typer.Option(False, "--timing", help="Include wall time in the JSON report"),
):
    """
    [bold blue]cbstools[/bold blue] - strengthened Cauchy-Schwarz constants from the command line.

    Reports go to stdout as JSON, summaries and diagnostics to stderr.
    Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
    3 domain error.
    """
    settings = OutputSettings(quiet=quiet, timing=timing, verbose=verbose)
    ctx.obj = settings
    _configure_logging(settings)


app.command("identities")(identities_command)
app.command("gamma")(gamma_command)
app.command("kappa")(kappa_command)
app.command("holder")(holder_command)


@app.command("verify")
def verify_command(
    ctx: typer.Context,
    seed: str = typer.Option(hex(DEFAULT_SEED), "--seed", help="RNG seed, decimal or 0x-hex"),
    trials: int = typer.Option(1000, "--trials", min=1, help="Trials for the per-pair checks"),
):
    """
    Run the seeded invariant suite.

    Checks identity residuals, the variational bound, Hölder slack and
    equality cases, Mazur map properties and gradients, oracle sandwiches
    for subspaces and cones, and the quadrant example. Exits 1 if any
    check fails; failing inputs are printed as problem files.
    """
    with exit_on_error():
        seed_value = parse_seed(seed)
        run = Run(ctx, "verify", seed=seed_value)
        results = run_suite(seed_value, trials)
        failed = [r for r in results if not r.passed]
        summary = summary_table(
            f"verify (seed {seed_value:#x}, {trials} trials)",
            {r.name: f"{'ok' if r.passed else 'FAILED'}  worst {r.worst_ratio:.2e}" for r in results},
        )
        run.emit(
            {"trials": trials},
            {
                "passed": not failed,
                "checks": [r.model_dump() for r in results],
            },
            ["verification_failed"] if failed else [],
            summary,
        )
        for result in failed:
            for text in result.failed_inputs:
                console.print(text, style="yellow", highlight=False, markup=False)
        if failed:
            names = ", ".join(r.name for r in failed)
            raise VerificationError(f"{len(failed)} check(s) failed: {names} (seed {seed_value:#x})")


# =============================================================================
# Entry Point
# =============================================================================

def run():
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    run()
