"""Command-line interface.

    chi2array run <spec-file>        execute a scenario file
    chi2array figure <fig2..fig5>    run a canned figure preset
    chi2array sweep <spec-file> --axis name=start:stop:count ...
    chi2array validate <spec-file>   parse + validate, print normal form

Common flags on every subcommand: --out PATH (default: scenario output
path or stdout), --format csv|json, --tol FLOAT (integrator tolerance).
`figure --out x.csv` also renders x.png next to the data; `--plot PATH`
requests a rendering explicitly, `--no-plot` suppresses it.

Exit codes: 0 success, 2 validation/configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from .errors import NumericalError, ScenarioError
from .output import write_records
from .runner import FIGURE_IDS, SweepAxis, figure_notes, reproduce_figure, run_scenario, sweep
from .scenario import ScenarioSpec, emit_spec, parse_scenario

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _guarded(f):
    """Map package errors onto the documented exit codes."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ScenarioError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_VALIDATION)
        except NumericalError as exc:
            click.echo(f"numerical failure: {exc}", err=True)
            raise SystemExit(EXIT_NUMERICAL)

    return wrapper


def _common_options(f):
    f = click.option("--out", "out_path", type=click.Path(dir_okay=False),
                     default=None, help="Output file (default: scenario setting or stdout).")(f)
    f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default=None, help="Output format (default: scenario setting or csv).")(f)
    f = click.option("--tol", type=float, default=1e-10, show_default=True,
                     help="Integrator tolerance (local error per step).")(f)
    return f


def _read_spec(path: str) -> ScenarioSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc
    return parse_scenario(text)


def _emit(records, out_path, fmt, comments=(), plot_path=None, plot_title=None):
    if out_path is None:
        write_records(records, sys.stdout, fmt, comments)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            write_records(records, fh, fmt, comments)
        click.echo(f"wrote {out_path}", err=True)
    if plot_path is not None:
        from .plotting import render_records

        render_records(records, plot_path, title=plot_title)
        click.echo(f"wrote {plot_path}", err=True)


@click.group()
@click.version_option()
def main():
    """Quantum light in pumped nonlinear waveguide arrays: intensities and
    continuous-variable entanglement witnesses."""


@main.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@_common_options
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
              help="Also render the records to this PNG.")
@_guarded
def run(spec_file, out_path, fmt, tol, plot_path):
    """Execute a scenario file and emit its records."""
    spec = _read_spec(spec_file)
    records = run_scenario(spec, tol=tol)
    _emit(records,
          out_path if out_path is not None else spec.output.path,
          fmt if fmt is not None else spec.output.format,
          plot_path=plot_path, plot_title=spec.scenario_id)


@main.command()
@click.argument("figure_id", type=click.Choice(list(FIGURE_IDS)))
@_common_options
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
              help="Render to this PNG (default: next to --out).")
@click.option("--no-plot", is_flag=True, default=False,
              help="Skip the PNG even when --out is given.")
@_guarded
def figure(figure_id, out_path, fmt, tol, plot_path, no_plot):
    """Reproduce one of the canned figure presets as data (and a PNG)."""
    records = reproduce_figure(figure_id, tol=tol)
    if plot_path is None and out_path is not None and not no_plot:
        plot_path = str(Path(out_path).with_suffix(".png"))
    if no_plot:
        plot_path = None
    _emit(records, out_path, fmt or "csv", comments=figure_notes(figure_id),
          plot_path=plot_path, plot_title=figure_id)


@main.command("sweep")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--axis", "axes_text", multiple=True, required=True,
              metavar="NAME=START:STOP:COUNT",
              help="Sweep axis (repeatable, up to 3): g_scale, J_scale, gamma, t, phi.")
@_common_options
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
              help="Also render the records to this PNG.")
@_guarded
def sweep_cmd(spec_file, axes_text, out_path, fmt, tol, plot_path):
    """Cartesian parameter sweep around a base scenario."""
    spec = _read_spec(spec_file)
    axes = [SweepAxis.from_cli(a) for a in axes_text]
    records = sweep(spec, axes, tol=tol)
    _emit(records,
          out_path if out_path is not None else spec.output.path,
          fmt if fmt is not None else spec.output.format,
          plot_path=plot_path, plot_title=spec.scenario_id)


@main.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@_guarded
def validate(spec_file):
    """Parse and validate a scenario file; print its normal form."""
    spec = _read_spec(spec_file)
    click.echo(emit_spec(spec), nl=False)


if __name__ == "__main__":
    main()
