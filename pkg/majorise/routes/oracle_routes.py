from flask import Blueprint

from majorise.models.command import CommandRequest
from majorise.routes import config_default, input_option, normalize_option, seed_option
from majorise.services.measure_service import parse_function
from majorise.services.oracle_service import enumerate_extreme, oracle_extreme, sample_orbit, tight_set
from majorise.utils.response_formatter import handle_errors, json_indent_option, success_response

bp = Blueprint("oracle", __name__, cli_group=None)


@bp.cli.command("oracle")
@input_option("x", "Function document for x (purely atomic space).")
@input_option("y", "Function document for y on the same space.")
@normalize_option
@json_indent_option
@handle_errors
def oracle_command(x_path, y_path, normalize):
    """Vertex test of x in the orbit polytope of y."""
    request = CommandRequest("oracle", {"x": x_path, "y": y_path}, {"normalize": normalize}).validate()
    x = parse_function(request.load("x"), normalize=normalize)
    y = parse_function(request.load("y"), space=x.space, normalize=normalize)
    payload = {"extreme": oracle_extreme(x, y)}
    payload.update(tight_set(x, y).serialize())
    success_response(payload)


@bp.cli.command("enumerate")
@input_option("y", "Function document for y (purely atomic space).")
@normalize_option
@json_indent_option
@handle_errors
def enumerate_command(y_path, normalize):
    """List every extreme point of the orbit of y."""
    request = CommandRequest("enumerate", {"y": y_path}, {"normalize": normalize}).validate()
    y = parse_function(request.load("y"), normalize=normalize)
    points = enumerate_extreme(y)
    success_response([p.serialize() for p in points])


@bp.cli.command("sample")
@input_option("y", "Function document for y.")
@seed_option
@normalize_option
@json_indent_option
@handle_errors
def sample_command(y_path, seed, normalize):
    """Draw a seeded element of the orbit of y by partial averaging."""
    seed = config_default(seed, "DEFAULT_SEED")
    request = CommandRequest("sample", {"y": y_path}, {"seed": seed, "normalize": normalize}).validate()
    y = parse_function(request.load("y"), normalize=normalize)
    success_response(sample_orbit(y, seed).serialize())
