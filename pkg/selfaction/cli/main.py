"""
Command line entry point ``selfaction``.

Global options select the configuration file, the output directory and the log level; every
configuration key can be overridden by a long option of the same name.
"""
import functools
import logging
import sys
from pathlib import Path

import click

from .. import __version__
from ..config import ConfigError, load_config
from ..numerics.roots import BracketError
from ..physics.proton import ProtonError
from ..settings import GOLDEN_DIR
from ..solve.mass import MassSolverError
from . import acceptance
from .runs import run_electron, run_neutrino_mass, run_proton_scan

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_BRACKET = 3

_OVERRIDES = [
    ("m_e_eV", float),
    ("m_p_eV", float),
    ("m_pi0_eV", float),
    ("alpha", float),
    ("series_order", int),
    ("quad_abs_tol", float),
    ("quad_rel_tol", float),
    ("eta_lo", float),
    ("eta_hi", float),
    ("c0_mode", click.Choice(["paper", "exact"])),
    ("c0_paper", float),
    ("n_lo", float),
    ("n_hi", float),
    ("n_points", int),
    ("coulomb_sign", click.Choice(["1", "-1"])),
]


def _override_options(func):
    for key, kind in reversed(_OVERRIDES):
        names = sorted({"--" + key.replace("_", "-"), "--" + key}) + [key]
        func = click.option(*names, type=kind, default=None, help="override the config key")(func)
    return func


def exit_codes(func):
    """Map errors of the solver modules to the documented exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ConfigError as exc:
            click.echo(f'configuration error: {exc}', err=True)
            sys.exit(EXIT_CONFIG)
        except BracketError as exc:
            click.echo(f'no bracket: {exc}', err=True)
            sys.exit(EXIT_BRACKET)
        except MassSolverError as exc:
            click.echo(f'mass solver failed: {exc}', err=True)
            sys.exit(EXIT_BRACKET if isinstance(exc.__cause__, BracketError) else EXIT_FAILURE)
    return wrapper


@click.group()
@click.version_option(__version__)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
    help="key = value configuration file")
@click.option("--output-dir", "--output_dir", "output_dir", type=click.Path(file_okay=False), default=None,
    help="directory for all written files")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    default="WARNING", show_default=True)
@_override_options
@click.pass_context
def cli(ctx, config_path, output_dir, log_level, **overrides):
    """Self-action spinor computations."""
    logging.basicConfig(level=log_level, format="%(levelname)s %(name)s: %(message)s")

    overrides = {k: v for k, v in overrides.items() if v is not None}
    if "coulomb_sign" in overrides:
        overrides["coulomb_sign"] = int(overrides["coulomb_sign"])
    try:
        ctx.obj = load_config(config_path, output_dir=output_dir, **overrides)
    except ConfigError as exc:
        click.echo(f'configuration error: {exc}', err=True)
        sys.exit(EXIT_CONFIG)


def _report_files(files):
    for path in files:
        click.echo(f'wrote {path}')


@cli.command()
@click.pass_obj
@exit_codes
def electron(config):
    """Series coefficients, figure curves and join report."""
    run = run_electron(config)
    _report_files(run.files)
    click.echo(f'eta = {run.eta:.8g}, joins {"ok" if run.joins_ok else "NOT ok"}')


@cli.command("neutrino-mass")
@click.pass_obj
@exit_codes
def neutrino_mass(config):
    """Neutrino mass from the closed form and from the full condition."""
    run = run_neutrino_mass(config)
    _report_files(run.files)
    for result in (run.paper, run.exact):
        click.echo(f'{result.mode}: eta = {result.eta_root:.8g}, m_nu = {result.m_nu:.6f} eV')
    click.echo(f'escape probability {run.escape["escape_probability"]:.3e}')


@cli.command("proton-scan")
@click.pass_obj
@exit_codes
def proton_scan(config):
    """Exploratory n scan of the proton condition."""
    try:
        run = run_proton_scan(config)
    except ProtonError as exc:
        click.echo(f'proton scan failed: {exc}', err=True)
        sys.exit(EXIT_FAILURE)
    _report_files(run.files)
    n = run.report.n_calibrated
    click.echo(f'{len(run.report.succeeded)}/{len(run.report.rows)} rows succeeded, '
        f'calibrated n = {"none" if n is None else f"{n:.6g}"}')
    if not run.report.succeeded:
        sys.exit(EXIT_FAILURE)


@cli.command()
@click.option("--list", "list_only", is_flag=True, help="print the criteria without running them")
@click.option("--golden-dir", type=click.Path(file_okay=False, exists=True), default=None,
    help="directory with the golden series files")
@click.pass_obj
@exit_codes
def verify(config, list_only, golden_dir):
    """Run the acceptance criteria, exit 0 only if all pass."""
    if list_only:
        for c in acceptance.CRITERIA:
            click.echo(f'{c.number:2d}  {c.name}')
        return

    ctx = acceptance.Context(
        config=config,
        golden_dir=Path(golden_dir) if golden_dir else GOLDEN_DIR,
        work_dir=Path(config.output_dir) / "verify",
    )
    results = acceptance.run_all(ctx)
    for r in results:
        click.echo(f'{r.number:2d}  {"PASS" if r.passed else "FAIL"}  {r.name}: {r.detail}')
    failed = [r for r in results if not r.passed]
    if failed:
        click.echo('failed criteria: ' + ", ".join(str(r.number) for r in failed), err=True)
        sys.exit(EXIT_FAILURE)


@cli.command("config")
@click.pass_obj
def show_config(config):
    """Print the effective configuration."""
    click.echo(config.to_text(), nl=False)


def main():
    cli()
