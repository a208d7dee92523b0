"""Command line interface of qimmanant-lab."""

# Standard library
import logging
import sys
from pathlib import Path

# Third-party
import click

# Local
from . import __version__, report, suites


def print_version(ctx, _, value: bool) -> None:
    """Print the version number and exit."""
    if value:
        click.echo(__version__)
        ctx.exit(0)


@click.group()
@click.option(
    "--version",
    "-V",
    help="Print version and exit.",
    is_flag=True,
    expose_value=False,
    callback=print_version,
)
def main() -> None:
    """Exact verification of q-immanants and quantum Capelli identities."""


LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


@main.command("verify")
@click.option(
    "--suite",
    "suite_names",
    multiple=True,
    type=click.Choice(suites.CATALOGUE),
    help="Suite to run, repeatable. Default: all suites.",
)
@click.option("--n", "n", type=int, help="Rank n of gl_n.")
@click.option(
    "--N",
    "module_sites",
    type=int,
    multiple=True,
    help="Number of module sites of the representation, repeatable.",
)
@click.option(
    "--m",
    "m",
    type=int,
    help="Largest number of boxes, default for --m-max and --capelli-m-max.",
)
@click.option("--m-max", type=int, help="Largest number of boxes of μ.")
@click.option("--q", "q", help="Value of q as a rational p/r.")
@click.option("--z", "z_samples", multiple=True, help="Sample of z, repeatable.")
@click.option("--newton-order", type=int, help="Truncation order M in u^{-1}.")
@click.option("--capelli-m-max", type=int, help="Largest m of Capelli identities.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    help="Write the report to this file instead of stdout.",
)
@click.option("--jobs", type=int, help="Number of parallel workers.")
@click.option(
    "--format",
    "format_",
    type=click.Choice(["json", "text"]),
    help="Report format.",
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="JSON or YAML file with run parameters, flags take precedence.",
)
@click.option("--timings", is_flag=True, help="Record job timings.")
@click.option("--verbose", "-v", count=True, help="Increase logging verbosity.")
def verify_cmd(
    suite_names: tuple[str, ...],
    n: int | None,
    module_sites: tuple[int, ...],
    m: int | None,
    m_max: int | None,
    q: str | None,
    z_samples: tuple[str, ...],
    newton_order: int | None,
    capelli_m_max: int | None,
    out: Path | None,
    jobs: int | None,
    format_: str | None,
    config_path: Path | None,
    timings: bool,
    verbose: int,
):
    """Run verification suites and emit a report.

    The exit code is 0 if all checks pass and 1 otherwise.
    """
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        run = suites.load_config(
            config_path,
            suites=suite_names or None,
            n=n,
            module_sites=module_sites or None,
            m_max=m if m_max is None else m_max,
            q=q,
            z_samples=z_samples or None,
            newton_order=newton_order,
            capelli_m_max=m if capelli_m_max is None else capelli_m_max,
            out=str(out) if out is not None else None,
            jobs=jobs,
            format=format_,
            timings=timings or None,
        )
    except (ValueError, suites.ValidationError) as err:
        raise click.UsageError(str(err)) from err

    result = suites.run_suite(run)
    rendered = report.emit_table(result, run.format, run.out)
    if run.out is None:
        click.echo(rendered)
    else:
        click.echo(
            f"{len(result.checks) - len(result.failures)}/{len(result.checks)} "
            f"checks passed, report written to {run.out}",
            err=True,
        )
    if not result.passed:
        sys.exit(1)
