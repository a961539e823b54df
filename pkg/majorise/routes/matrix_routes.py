import click
import numpy as np
from flask import Blueprint, current_app

from majorise.models.command import CommandRequest
from majorise.models.matrix import DoublyStochastic
from majorise.routes import config_default, input_option, seed_option, tol_option, trials_option
from majorise.services.identity_service import identity_suite
from majorise.services.matrix_service import (
    birkhoff_decompose,
    check_extreme_diag,
    eig_scale,
    matrix_majorise,
    parse_matrix,
    parse_real_matrix,
    parse_vector,
    t_transform_chain,
)
from majorise.utils.exceptions import SizeLimit
from majorise.utils.response_formatter import handle_errors, json_indent_option, success_response

bp = Blueprint("matrices", __name__, cli_group=None)


def _operator(request, name, tol):
    return parse_matrix(request.load(name), tol=tol, max_dim=current_app.config["MATRIX_MAX_DIM"])


# ------------------------------------------------------------
#  spectral scales
# ------------------------------------------------------------
@bp.cli.command("matrix-eig")
@input_option("f", "Hermitian matrix document.")
@tol_option
@json_indent_option
@handle_errors
def matrix_eig_command(f_path, tol):
    """Print the eigenvalue scale of a Hermitian matrix."""
    request = CommandRequest("matrix-eig", {"f": f_path}, {"tol": tol}).validate()
    a = _operator(request, "f", tol)
    scale = eig_scale(a, snap_denominator=current_app.config["SNAP_DENOMINATOR"])
    success_response(scale.serialize())


@bp.cli.command("matrix-majorise")
@input_option("x", "Hermitian matrix document for x.")
@input_option("y", "Hermitian matrix document for y.")
@tol_option
@json_indent_option
@handle_errors
def matrix_majorise_command(x_path, y_path, tol):
    request = CommandRequest("matrix-majorise", {"x": x_path, "y": y_path}, {"tol": tol}).validate()
    x, y = _operator(request, "x", tol), _operator(request, "y", tol)
    success_response(matrix_majorise(x, y, tol).serialize(exact=False))


@bp.cli.command("matrix-extreme")
@input_option("x", "Diagonal matrix document for x.")
@input_option("y", "Hermitian matrix document for y.")
@tol_option
@json_indent_option
@handle_errors
def matrix_extreme_command(x_path, y_path, tol):
    """Decide extremality of a diagonal x in the orbit of y."""
    request = CommandRequest("matrix-extreme", {"x": x_path, "y": y_path}, {"tol": tol}).validate()
    x, y = _operator(request, "x", tol), _operator(request, "y", tol)
    verdict = check_extreme_diag(x, y, tol, snap_denominator=current_app.config["SNAP_DENOMINATOR"])
    success_response({"extreme": verdict})


# ------------------------------------------------------------
#  doubly stochastic constructions
# ------------------------------------------------------------
@bp.cli.command("birkhoff")
@input_option("f", "Doubly stochastic matrix document.")
@tol_option
@json_indent_option
@handle_errors
def birkhoff_command(f_path, tol):
    request = CommandRequest("birkhoff", {"f": f_path}, {"tol": tol}).validate()
    entries = parse_real_matrix(request.load("f"), max_dim=current_app.config["MATRIX_MAX_DIM"])
    s = DoublyStochastic(entries, config_default(tol, "TOLERANCE"))
    decomposition = birkhoff_decompose(s)
    payload = decomposition.serialize()
    payload["residual"] = float(np.max(np.abs(decomposition.reconstruct() - s.entries)))
    success_response(payload)


@bp.cli.command("ttransform")
@input_option("x", "Vector document for x.")
@input_option("y", "Vector document for y.")
@tol_option
@json_indent_option
@handle_errors
def ttransform_command(x_path, y_path, tol):
    """Doubly stochastic S, a product of T-transforms, with S y = x."""
    request = CommandRequest("ttransform", {"x": x_path, "y": y_path}, {"tol": tol}).validate()
    x, y = parse_vector(request.load("x")), parse_vector(request.load("y"))
    success_response(t_transform_chain(x, y, tol).serialize())


@bp.cli.command("suite")
@seed_option
@trials_option
@click.option("-n", "--dim", "dim", type=click.IntRange(min=1), default=4)
@tol_option
@json_indent_option
@handle_errors
def suite_command(seed, trials, dim, tol):
    """Seeded trace-identity checks on random Hermitian matrices."""
    seed = config_default(seed, "DEFAULT_SEED")
    trials = config_default(trials, "DEFAULT_TRIALS")
    CommandRequest("suite", options={"seed": seed, "trials": trials, "dim": dim}).validate()
    if dim > current_app.config["MATRIX_MAX_DIM"]:
        raise SizeLimit(message=f"dimension {dim} exceeds the limit of {current_app.config['MATRIX_MAX_DIM']}")
    report = identity_suite(seed, dim, trials, config_default(tol, "SUITE_TOLERANCE"))
    success_response(report.serialize())
