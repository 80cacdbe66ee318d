"""
Command-line front end.

    fuzzsim compute A.json B.json --type fb [--crisp] [--cap N] [--tolerance T] [--trace]
    fuzzsim check A.json B.json REL.json --type fb
    fuzzsim degree A.json "x y"

Results go to stdout as JSON, logs and diagnostics to stderr. Exit codes:
0 greatest relation found (or all conditions hold), 1 no simulation (or a
condition fails), 2 iteration cap reached, 64 usage or input error.
"""
import json
import logging
import sys
from typing import List, Optional

import click

from .config import Config
from .exceptions import AutomatonValidationError, FuzzsimError
from .services.computation import (
    USAGE_EXIT_CODE,
    exit_code,
    outcome_to_dict,
    report_to_dict,
    run_check,
    run_compute,
    run_degree,
)
from .services.simbisim import SimulationType
from .utils.helpers import format_value

logger = logging.getLogger(__name__)

TYPE_CHOICES = [t.value for t in SimulationType]
LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']

input_file = click.Path(exists=True, dir_okay=False)


class FuzzsimGroup(click.Group):
    """Click group whose commands return their exit code; every usage error exits with 64."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            code = USAGE_EXIT_CODE
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = 1
        except AutomatonValidationError as e:
            click.echo(f"Error: invalid automaton {e.source or ''}".rstrip(), err=True)
            for diagnostic in e.diagnostics:
                click.echo(f"  - {diagnostic}", err=True)
            code = USAGE_EXIT_CODE
        except FuzzsimError as e:
            click.echo(f"Error: {e}", err=True)
            code = USAGE_EXIT_CODE

        code = code if isinstance(code, int) else 0
        if not standalone_mode:
            return code
        sys.exit(code)


@click.group(cls=FuzzsimGroup)
@click.option('--log-level', type=click.Choice(LOG_LEVELS, case_sensitive=False), default=Config.LOG_LEVEL,
              show_default=True, help="Verbosity of the diagnostics written to stderr.")
def cli(log_level):
    """Greatest simulations and bisimulations between fuzzy automata."""
    logging.basicConfig(
        level=log_level.upper(),
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        force=True,
    )


@cli.command()
@click.argument('a_path', type=input_file)
@click.argument('b_path', type=input_file)
@click.option('--type', 'sim_type', type=click.Choice(TYPE_CHOICES), required=True,
              help="Simulation type: fs, bs, fb, bb, fbb or bfb.")
@click.option('--crisp', is_flag=True, help="Compute the greatest crisp relation instead.")
@click.option('--cap', type=click.IntRange(min=1), envvar='FUZZSIM_CAP', default=None,
              help=f"Highest iterate to compute (default {Config.ITERATION_CAP}, env FUZZSIM_CAP).")
@click.option('--tolerance', type=float, default=None,
              help="Equality tolerance for real-valued lattices (not allowed for boolean and chain).")
@click.option('--trace', is_flag=True, help="Include every iterate in the result.")
def compute(a_path, b_path, sim_type, crisp, cap, tolerance, trace):
    """Compute the greatest simulation of the given type from A to B."""
    outcome = run_compute(a_path, b_path, sim_type, crisp=crisp, cap=cap, tolerance=tolerance, trace=trace)
    for warning in outcome.warnings:
        click.echo(f"Warning: {warning}", err=True)
    click.echo(json.dumps(outcome_to_dict(outcome, include_trace=trace), indent=2))
    return exit_code(outcome)


@cli.command()
@click.argument('a_path', type=input_file)
@click.argument('b_path', type=input_file)
@click.argument('rel_path', type=input_file)
@click.option('--type', 'sim_type', type=click.Choice(TYPE_CHOICES), required=True,
              help="Simulation type whose conditions are checked.")
@click.option('--tolerance', type=float, default=None,
              help="Equality tolerance for real-valued lattices.")
def check(a_path, b_path, rel_path, sim_type, tolerance):
    """Check whether REL is a simulation of the given type from A to B."""
    report = run_check(a_path, b_path, rel_path, sim_type, tolerance=tolerance)
    click.echo(json.dumps(report_to_dict(report), indent=2))
    return 0 if report.holds else 1


@cli.command()
@click.argument('a_path', type=input_file)
@click.argument('word', default='')
def degree(a_path, word):
    """Print the degree to which A accepts WORD (letters separated by spaces)."""
    click.echo(format_value(run_degree(a_path, word)))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    return cli.main(args=argv, prog_name='fuzzsim', standalone_mode=False)
