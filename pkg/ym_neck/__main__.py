"""Main entry point for the ym-neck command line."""

import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from ym_neck.commands import (
    COMMANDS,
    EXIT_FAILED,
    EXIT_INPUT,
    EXIT_RESOLUTION,
)
from ym_neck.config.run_config import load_run_config
from ym_neck.core.errors import ResolutionError, YmNeckError
from ym_neck.reports.writer import FORMATS, write_report

LOGGER = logging.getLogger("ym_neck")


def configure_logging(debug: bool) -> None:
    """Route library logging through rich on stderr so stdout carries only the report."""
    handler = RichHandler(console=Console(stderr=True), show_path=debug, rich_tracebacks=debug)
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )


def exit_code_for(error: YmNeckError) -> int:
    """Map an error to its process exit code.

    Resolution failures exit with ``EXIT_RESOLUTION``; every other
    :class:`YmNeckError` is bad input and exits with ``EXIT_INPUT``.
    """
    if isinstance(error, ResolutionError):
        return EXIT_RESOLUTION
    return EXIT_INPUT


def run_options(func: Callable) -> Callable:
    """Flags shared by every subcommand; ``None`` means "not given"."""
    options = [
        click.option("--lambda", "lam", type=float, default=None, help="Bubble scale lambda"),
        click.option("--delta", type=float, default=None, help="Neck cutoff delta (default lambda^(1/4))"),
        click.option("--alpha", type=float, default=None, help="Decay rate alpha"),
        click.option("--grid", "grid_resolution", type=int, default=None, help="Sphere grid resolution"),
        click.option(
            "--layout",
            "grid_layout",
            type=click.Choice(["gauss", "montecarlo"]),
            default=None,
            help="Sphere grid layout",
        ),
        click.option("--seed", type=int, default=None, help="Seed for the Monte Carlo layout"),
        click.option("--tol", type=float, default=None, help="Tolerance for balance and no-go verdicts"),
        click.option(
            "--format",
            "report_format",
            type=click.Choice(list(FORMATS)),
            default=None,
            help="Report format",
        ),
        click.option(
            "--out",
            "output_path",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
            help="Write the report to this file instead of stdout",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def input_option(required_help: str) -> Callable:
    """The ``--input`` file option, with help text naming what the command reads."""
    return click.option(
        "--input",
        "input_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help=required_help,
    )


def _execute(ctx: click.Context, command: str, flags: Dict[str, Any]) -> None:
    """Resolve the configuration, run the command, print or write its report and exit."""
    debug = ctx.obj["debug"]
    try:
        config = load_run_config(command, overrides=flags, config_file=ctx.obj["config_file"])
        LOGGER.debug("Resolved configuration: %s", config)
        outcome = COMMANDS[command](config)
        text = write_report(outcome.report, config.report_format, config.output_path)
        if config.output_path is None:
            click.echo(text, nl=False)
    except YmNeckError as e:
        if debug:
            raise
        click.echo(click.style(f"Error: {e}", fg="red"), err=True)
        sys.exit(exit_code_for(e))
    except Exception as e:
        if debug:
            raise
        click.echo(click.style(f"Error: {e}", fg="red"), err=True)
        sys.exit(EXIT_FAILED)
    sys.exit(outcome.exit_code)


def subcommand(name: str) -> Callable:
    """Turn ``func(**flags)`` into a subcommand that runs ``COMMANDS[name]``."""

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        @click.pass_context
        def wrapper(ctx: click.Context, **flags: Any) -> None:
            func(**flags)
            _execute(ctx, name, flags)

        return wrapper

    return decorator


@click.group()
@click.option("--debug", is_flag=True, help="Verbose logging; re-raise unexpected errors")
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Run configuration file (JSON or YAML)",
)
@click.version_option(package_name="ym-neck")
@click.pass_context
def main(ctx: click.Context, debug: bool, config_file: Optional[Path]) -> None:
    """Numerical checks for Yang-Mills bubble necks."""
    configure_logging(debug)
    ctx.ensure_object(dict)
    ctx.obj["debug"] = debug
    ctx.obj["config_file"] = config_file


@main.command("verify-identities")
@run_options
@subcommand("verify-identities")
def verify_identities(**flags: Any) -> None:
    """Run every identity suite; exit 0 only if all pass."""


@main.command("instanton-neck")
@run_options
@click.option("--orientation", type=click.Choice(["asd", "sd"]), default=None, help="Bubble orientation")
@click.option("--slices", type=int, default=None, help="Number of t-slices across the neck")
@subcommand("instanton-neck")
def instanton_neck(**flags: Any) -> None:
    """Expand a bubbling instanton over its neck."""


@main.command("balance")
@run_options
@input_option("Boundary data JSON file")
@subcommand("balance")
def balance(**flags: Any) -> None:
    """Evaluate the seven balancing residuals; exit 2 when obstructed."""


@main.command("nogo")
@run_options
@input_option("Optional boundary data JSON file to certify as well")
@subcommand("nogo")
def nogo(**flags: Any) -> None:
    """Print the no-go certificate for the one-instanton pairing."""


@main.command("solve-cylinder")
@run_options
@input_option("Signal CSV (t column plus one column per mode); defaults to the bundled example")
@click.option("--m-sweep", "m_sweep", is_flag=True, default=None, help="Tabulate C(M) for the configured M values")
@subcommand("solve-cylinder")
def solve_cylinder(**flags: Any) -> None:
    """Solve the mode ODEs on [-M, M] and report the decay constant."""


if __name__ == "__main__":
    main()
