import functools
import logging

import click
from flask import current_app

from majorise.utils.exceptions import InvariantViolation, ServiceError

logger = logging.getLogger(__name__)

EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _indent():
    ctx = click.get_current_context(silent=True)
    if ctx is not None and ctx.meta.get("json_indent") is not None:
        return ctx.meta["json_indent"]
    return current_app.config.get("JSON_INDENT")


def render(payload):
    return current_app.json.dumps(payload, indent=_indent())


def success_response(payload):
    click.echo(render(payload))


def error_response(code, message, details=None):
    err = {"error": code, "detail": message}
    if details:
        err["details"] = details
    click.echo(render(err))


def _store_indent(ctx, param, value):
    ctx.meta["json_indent"] = value
    return value


json_indent_option = click.option(
    "--json-indent",
    type=click.IntRange(min=0),
    default=None,
    expose_value=False,
    is_eager=True,
    callback=_store_indent,
    help="Indent the JSON output by this many spaces.",
)


def handle_errors(fn):
    """Turn ServiceErrors into a JSON error document and a nonzero exit status."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return fn(*args, **kwargs)
        except InvariantViolation as exc:
            logger.error("invariant violated: %s", exc.message)
            error_response(exc.code, exc.message, exc.details)
            ctx.exit(EXIT_INTERNAL)
        except ServiceError as exc:
            error_response(exc.code, exc.message, exc.details)
            ctx.exit(EXIT_INPUT)
        except (click.exceptions.Exit, click.ClickException):
            raise
        except Exception as exc:
            logger.exception("unexpected failure in %s", ctx.info_name)
            error_response("InternalError", str(exc))
            ctx.exit(EXIT_INTERNAL)

    return wrapper
