import time

import click
from flask import Blueprint

from majorise.models.command import CommandRequest
from majorise.routes import config_default, seed_option, trials_option
from majorise.services.selftest_service import MUTATIONS, selftest
from majorise.utils.response_formatter import EXIT_INTERNAL, handle_errors, json_indent_option, success_response

bp = Blueprint("selftest", __name__, cli_group=None)


@bp.cli.command("selftest")
@seed_option
@trials_option
@click.option("--mutate", type=click.Choice(MUTATIONS), default=None, help="Run against a deliberately broken criterion.")
@json_indent_option
@handle_errors
def selftest_command(seed, trials, mutate):
    """Run every acceptance criterion for one seed; exit 3 on any failure."""
    seed = config_default(seed, "DEFAULT_SEED")
    trials = config_default(trials, "DEFAULT_TRIALS")
    CommandRequest("selftest", options={"seed": seed, "trials": trials, "mutate": mutate}).validate()

    started = time.perf_counter()
    report = selftest(seed, trials, mutate=mutate)
    elapsed = time.perf_counter() - started

    success_response(report.serialize())
    # stdout stays identical per seed; timing goes to stderr
    click.echo(f"selftest finished in {elapsed:.2f}s", err=True)
    if not report.ok:
        click.get_current_context().exit(EXIT_INTERNAL)
