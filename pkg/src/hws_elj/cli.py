"""Typer-based CLI interface for hws-elj."""

from pathlib import Path
from typing import NoReturn

import typer
from rich.markup import escape

from . import __version__
from .config import RunConfig, load_config, with_reference_finger
from .console import configure_logging, get_console
from .constants import OutputFormat
from .exceptions import HwsEljError
from .operations import (
    compare_planar,
    finger_sweep,
    fit_measurements,
    helix_info,
    process_logs,
    tension_design,
    tension_eval,
    tension_profile,
    tension_sweep,
)
from .units import Dimension, parse_quantity

app = typer.Typer(
    name="hwselj",
    help="Modeling toolkit for helically wound electrostatic layer jamming (HWS-ELJ)",
    no_args_is_help=True,
    add_completion=False,
)
tension_app = typer.Typer(
    help="Terminal tension of the wound electrode",
    no_args_is_help=True,
)
app.add_typer(tension_app, name="tension", rich_help_panel="Model")

console = get_console()

# Shared option declarations
_CONFIG_HELP = "TOML config file (default: $HWSELJ_CONFIG)"
_OUT_HELP = "Write CSV to this file instead of standard output"
_FORMAT_HELP = "Output format: csv (machine-readable) or text (Rich table)"
_FIXTURES_HELP = "Overlay the published specimen constants and 1000-3800 V grid"


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        console.print(f"hws-elj version {__version__}")
        raise typer.Exit()


def _fail(e: HwsEljError) -> NoReturn:
    console.print(f"[bold red]Error:[/bold red] {e.code}: {escape(str(e))}", soft_wrap=True)
    raise typer.Exit(code=1)


def _load(config: Path | None, paper_fixtures: bool, limit_test: bool = False) -> RunConfig:
    return load_config(config, paper_fixtures=paper_fixtures, limit_test=limit_test)


@app.callback()
def main(
    version: bool | None = typer.Option(
        None,
        "--version",
        "-v",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        help="Show debug logs (solver fallbacks, bisection brackets) on stderr",
    ),
) -> None:
    """Helical electrode geometry, tension amplification, experiment reduction and finger stiffness."""
    configure_logging(verbose)


@app.command("helix-info", rich_help_panel="Model")
def helix_info_cmd(
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
) -> None:
    """
    Report helix constant, arc length, curvature, torsion and pitch admissibility.

    Geometries that cannot be built (H = 0, H <= electrode width) are still
    reported, with a warning.

    Example:
        hwselj helix-info --config specimen.toml
    """
    try:
        run_config = _load(config, paper_fixtures, limit_test=True)
        helix_info(run_config, run_config.output_for(out), output_format)
    except HwsEljError as e:
        _fail(e)


@tension_app.command("eval")
def tension_eval_cmd(
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
    ode_check: bool = typer.Option(
        False, "--ode-check", help="Also integrate the tension ODE numerically"
    ),
) -> None:
    """
    Evaluate the terminal tension for the configured [drive].

    Example:
        hwselj tension eval --config specimen.toml --ode-check
    """
    try:
        run_config = _load(config, paper_fixtures)
        tension_eval(run_config, run_config.output_for(out), output_format, ode_check=ode_check)
    except HwsEljError as e:
        _fail(e)


@tension_app.command("sweep")
def tension_sweep_cmd(
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
) -> None:
    """
    Sweep voltages x preloads x winding angles from the [sweep] section.

    Rows come out in grid order (voltage slowest). Points the model cannot
    evaluate are kept and carry an error code in the note column.

    Example:
        hwselj tension sweep --config specimen.toml --paper-fixtures
    """
    try:
        run_config = _load(config, paper_fixtures)
        tension_sweep(run_config, run_config.output_for(out), output_format)
    except HwsEljError as e:
        _fail(e)


@tension_app.command("profile")
def tension_profile_cmd(
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
    samples: int | None = typer.Option(
        None, "--samples", "-n", min=2, help="Points along the wrap (default: [profile] samples)"
    ),
) -> None:
    """
    Tension and normal line load along the wound electrode.

    Example:
        hwselj tension profile --config specimen.toml -n 100
    """
    try:
        run_config = _load(config, paper_fixtures)
        tension_profile(run_config, samples, run_config.output_for(out), output_format)
    except HwsEljError as e:
        _fail(e)


@tension_app.command("design")
def tension_design_cmd(
    target: str = typer.Option(..., "--target", "-t", help="Required terminal tension, e.g. '3 N'"),
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
) -> None:
    """
    Smallest winding angle that reaches a target tension at the configured drive.

    Example:
        hwselj tension design --config specimen.toml --target "3 N"
    """
    try:
        target_tension = parse_quantity(target, Dimension.FORCE, "--target")
        run_config = _load(config, paper_fixtures)
        tension_design(run_config, target_tension, run_config.output_for(out), output_format)
    except HwsEljError as e:
        _fail(e)


@app.command("compare-planar", rich_help_panel="Model")
def compare_planar_cmd(
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
) -> None:
    """
    Compare helical and planar tension over the same contact length.

    Also reports how long a flat strip would need to be to match the
    helical tension.

    Example:
        hwselj compare-planar --config specimen.toml
    """
    try:
        run_config = _load(config, paper_fixtures)
        compare_planar(run_config, run_config.output_for(out), output_format)
    except HwsEljError as e:
        _fail(e)


@app.command("process", rich_help_panel="Experiment")
def process_cmd(
    logs: list[str] = typer.Argument(
        ..., help="Sensor logs as PATH@VOLTAGE (e.g. run1.csv@1000V)"
    ),
    segment: list[str] | None = typer.Option(
        None,
        "--segment",
        "-s",
        help="Cut one continuous log: START:END@VOLTAGE (seconds), repeatable",
    ),
    threshold: float | None = typer.Option(
        None, "--threshold", help="Outlier threshold in robust sigmas (default: 3)"
    ),
    aggregate: bool = typer.Option(
        False,
        "--aggregate",
        help="Combine repeated runs at the same voltage: mean, spread and count per voltage",
    ),
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
) -> None:
    """
    Reduce six-axis force/torque logs to one friction value per voltage.

    Each log is outlier-filtered, averaged and converted with the groove
    radius from [rig]. A log that fails to parse, or has no @VOLTAGE, is
    reported and skipped; the command then exits with status 1 after writing
    the remaining rows.

    Example:
        hwselj process run1.csv@1000V run2.csv@1400V --config rig.toml
        hwselj process sweep.csv --segment 0:10@1000V --segment 10:20@1400V -c rig.toml
        hwselj process a.csv@1kV b.csv@1kV c.csv@2kV --aggregate -c rig.toml
    """
    try:
        run_config = _load(config, paper_fixtures=False)
        failed = process_logs(
            run_config,
            logs,
            segment or [],
            threshold,
            run_config.output_for(out),
            output_format,
            aggregate=aggregate,
        )
    except HwsEljError as e:
        _fail(e)
    if failed:
        raise typer.Exit(code=1)


@app.command("fit", rich_help_panel="Experiment")
def fit_cmd(
    measurements: Path = typer.Argument(..., help="CSV with voltage and F columns"),
    overlay: Path | None = typer.Option(
        None, "--overlay", help="Also write the fitted curve every 50 V to this CSV"
    ),
    compare_model: bool = typer.Option(
        False,
        "--compare-model",
        help="Report residuals against the configured mechanism instead of the coefficients",
    ),
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(False, "--paper-fixtures", help=_FIXTURES_HELP),
) -> None:
    """
    Least-squares fit of T(V) = a V^2 + b to reduced measurements.

    Example:
        hwselj fit reduced.csv --overlay curve.csv
        hwselj fit reduced.csv --compare-model --config specimen.toml
    """
    try:
        run_config = _load(config, paper_fixtures and compare_model)
        fit_measurements(
            run_config,
            measurements,
            overlay,
            compare_model,
            run_config.output_for(out),
            output_format,
        )
    except HwsEljError as e:
        _fail(e)


@app.command("finger", rich_help_panel="Model")
def finger_cmd(
    config: Path | None = typer.Option(None, "--config", "-c", help=_CONFIG_HELP),
    out: Path | None = typer.Option(None, "--out", "-o", help=_OUT_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help=_FORMAT_HELP),
    paper_fixtures: bool = typer.Option(
        False,
        "--paper-fixtures",
        help="Use the reference finger joint and its 0-3 kV x 0.5-1.5 N grid where unset",
    ),
) -> None:
    """
    Bending angle and stiffness of the finger over [sweep] voltages x loads.

    Cells where the load exceeds the joint's holding capability are kept
    and flagged no-equilibrium.

    Example:
        hwselj finger --config finger.toml --out fig-bending.csv
        hwselj finger --paper-fixtures
    """
    try:
        run_config = _load(config, paper_fixtures=False)
        if paper_fixtures:
            run_config = with_reference_finger(run_config)
        finger_sweep(run_config, run_config.output_for(out), output_format)
    except HwsEljError as e:
        _fail(e)


if __name__ == "__main__":
    app()
