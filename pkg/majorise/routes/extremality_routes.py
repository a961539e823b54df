import click
from flask import Blueprint

from majorise.models.command import CommandRequest
from majorise.routes import input_option, normalize_option
from majorise.services.extremality_service import check_extreme
from majorise.services.measure_service import parse_function
from majorise.services.witness_service import build_witness, verify_witness
from majorise.utils.response_formatter import handle_errors, json_indent_option, success_response

bp = Blueprint("extremality", __name__, cli_group=None)


def _load_pair(request, normalize):
    # y may live on another space; only λ(y) is used
    x = parse_function(request.load("x"), normalize=normalize)
    y = parse_function(request.load("y"), normalize=normalize)
    return x, y


@bp.cli.command("extreme")
@input_option("x", "Function document for x.")
@input_option("y", "Function document for y.")
@click.option("--witness", is_flag=True, help="Include the non-extremality witness.")
@normalize_option
@json_indent_option
@handle_errors
def extreme_command(x_path, y_path, witness, normalize):
    """Decide whether x is an extreme point of the orbit of y."""
    request = CommandRequest(
        "extreme", {"x": x_path, "y": y_path}, {"witness": witness, "normalize": normalize}
    ).validate()
    x, y = _load_pair(request, normalize)
    verdict = check_extreme(x, y)
    success_response(verdict.serialize(include_witness=witness))


@bp.cli.command("witness")
@input_option("x", "Function document for x.")
@input_option("y", "Function document for y.")
@normalize_option
@json_indent_option
@handle_errors
def witness_command(x_path, y_path, normalize):
    """Build x± = x ± δu with midpoint x, both majorised by y."""
    request = CommandRequest("witness", {"x": x_path, "y": y_path}, {"normalize": normalize}).validate()
    x, y = _load_pair(request, normalize)
    pair = build_witness(x, y)
    payload = pair.serialize()
    payload["verified"] = verify_witness(x, y, pair)
    success_response(payload)
