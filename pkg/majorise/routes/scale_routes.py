from flask import Blueprint

from majorise.models.command import CommandRequest
from majorise.routes import input_option, normalize_option
from majorise.services.measure_service import parse_function
from majorise.services.scale_service import load_scale, majorise_check, rearrange, submajorise_check
from majorise.utils.response_formatter import handle_errors, json_indent_option, success_response

bp = Blueprint("scales", __name__, cli_group=None)


@bp.cli.command("rearrange")
@input_option("f", "Function document.")
@normalize_option
@json_indent_option
@handle_errors
def rearrange_command(f_path, normalize):
    """Print the decreasing rearrangement λ(f)."""
    request = CommandRequest("rearrange", {"f": f_path}, {"normalize": normalize}).validate()
    f = parse_function(request.load("f"), normalize=normalize)
    success_response(rearrange(f).serialize())


@bp.cli.command("majorise")
@input_option("x", "Function or scale document for x.")
@input_option("y", "Function or scale document for y.")
@normalize_option
@json_indent_option
@handle_errors
def majorise_command(x_path, y_path, normalize):
    """Report on x ≺ y with the slack at every breakpoint."""
    request = CommandRequest("majorise", {"x": x_path, "y": y_path}, {"normalize": normalize}).validate()
    x = load_scale(request.load("x"), normalize=normalize)
    y = load_scale(request.load("y"), normalize=normalize)
    success_response(majorise_check(x, y).serialize())


@bp.cli.command("submajorise")
@input_option("x", "Function document for x.")
@input_option("y", "Function document for y.")
@normalize_option
@json_indent_option
@handle_errors
def submajorise_command(x_path, y_path, normalize):
    request = CommandRequest("submajorise", {"x": x_path, "y": y_path}, {"normalize": normalize}).validate()
    x = parse_function(request.load("x"), normalize=normalize)
    y = parse_function(request.load("y"), normalize=normalize)
    success_response({"holds": submajorise_check(x, y)})
