"""Shared plumbing for CLI commands.

Provides the stderr console, the exception-to-exit-code mapping and
:class:`Run`, which lazily loads the problem file and emits the report.

Example:
    with exit_on_error():
        run = Run(ctx, "gamma", input_path, seed=seed)
        report = gamma_subspaces(run.problem.subspace("V"), run.problem.subspace("F"))
        run.emit({"kind": "subspace"}, {"report": report})
"""

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .core.errors import CbsError, DomainError, OracleError, UsageError, VerificationError
from .problems import ProblemFile, load_problem
from .report import RunReport, format_seed, input_digest

logger = logging.getLogger("cbstools")

# Diagnostics and summaries; stdout carries only the JSON report
console = Console(stderr=True)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class OutputSettings(BaseModel):
    """Root-level flags shared by every command (stored on ``ctx.obj``)."""
    quiet: bool = False
    timing: bool = False
    verbose: bool = False


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, VerificationError):
        return EXIT_VERIFICATION
    if isinstance(error, (UsageError, ValidationError)):
        return EXIT_USAGE
    if isinstance(error, (DomainError, OracleError)):
        return EXIT_DOMAIN
    return EXIT_VERIFICATION


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Print cbstools and validation errors in red and exit with their code."""
    try:
        yield
    except (CbsError, ValidationError) as e:
        console.print(f"[red]Error: {escape(str(e))}[/red]", highlight=False)
        raise typer.Exit(exit_code_for(e))


class Run:
    """One command invocation.

    The problem file is loaded on first access of :attr:`problem`, so
    commands that need no input (``verify``) never touch the filesystem.
    """

    def __init__(
        self,
        ctx: Optional[typer.Context],
        command: str,
        input_path: Optional[Path] = None,
        seed: Optional[int] = None,
    ):
        obj = ctx.obj if ctx is not None else None
        self.settings: OutputSettings = obj if isinstance(obj, OutputSettings) else OutputSettings()
        self.command = command
        self.input_path = input_path
        self.seed = seed
        self._problem: Optional[ProblemFile] = None
        self._digest: Optional[str] = None
        self._started = time.perf_counter()

    @property
    def problem(self) -> ProblemFile:
        """Lazy-load the problem file named by ``--input``."""
        if self._problem is None:
            if self.input_path is None:
                raise UsageError(f"'{self.command}' needs --input PATH")
            self._problem, raw = load_problem(self.input_path)
            self._digest = input_digest(raw)
            logger.debug(f"loaded {self.input_path} ({self._digest})")
        return self._problem

    def emit(
        self,
        arguments: Dict[str, Any],
        results: Dict[str, Any],
        flags: Optional[List[str]] = None,
        summary: Optional[Table] = None,
    ) -> RunReport:
        """Write the JSON report to stdout and the summary table to stderr."""
        elapsed = time.perf_counter() - self._started
        report = RunReport(
            command=self.command,
            arguments=arguments,
            input=str(self.input_path) if self.input_path is not None else None,
            input_digest=self._digest,
            seed=format_seed(self.seed) if self.seed is not None else None,
            results=results,
            flags=sorted(set(flags or [])),
            wall_time=elapsed if self.settings.timing else None,
        )
        typer.echo(report.to_json())
        if not self.settings.quiet:
            if summary is not None:
                console.print(summary)
            console.print(f"[dim]wall time {elapsed:.3f}s[/dim]")
        return report


def summary_table(title: str, rows: Dict[str, Any]) -> Table:
    """Two-column quantity/value table for the stderr summary."""
    table = Table(title=title)
    table.add_column("Quantity", style="cyan", no_wrap=True)
    table.add_column("Value", style="green", justify="right")
    for key, value in rows.items():
        if isinstance(value, float):
            value = f"{value:.15g}"
        table.add_row(key, str(value))
    return table


def parse_seed(value: str) -> int:
    """Accept decimal or 0x-prefixed hex seeds.

    Raises:
        UsageError: If the value is not an integer in [0, 2**64).
    """
    try:
        seed = int(value, 0)
    except ValueError:
        raise UsageError(f"not an integer seed: {value!r}")
    if not 0 <= seed < 2 ** 64:
        raise UsageError("seed must fit in 64 bits")
    return seed
