import logging
import sys

import click
from flask import Flask
from flask.logging import default_handler

from .config import CONFIGS
from .extensions import ma
from .utils.response_formatter import EXIT_INPUT, error_response

PROG_NAME = "majorise"


def configure_logging(app):
    """Route package logs through Flask's stderr handler at the configured level."""
    package_logger = logging.getLogger("majorise")
    if default_handler not in package_logger.handlers:
        package_logger.addHandler(default_handler)
    package_logger.setLevel(app.config["LOG_LEVEL"])


def create_app(config_name=None):
    app = Flask(__name__, instance_relative_config=False)
    app.config.from_object(CONFIGS[config_name or "default"])
    app.json.sort_keys = False

    # initialize extensions
    ma.init_app(app)
    configure_logging(app)

    # register command blueprints
    from majorise.routes.extremality_routes import bp as extremality_bp
    from majorise.routes.matrix_routes import bp as matrix_bp
    from majorise.routes.oracle_routes import bp as oracle_bp
    from majorise.routes.scale_routes import bp as scale_bp
    from majorise.routes.selftest_routes import bp as selftest_bp

    app.register_blueprint(scale_bp)
    app.register_blueprint(extremality_bp)
    app.register_blueprint(oracle_bp)
    app.register_blueprint(matrix_bp)
    app.register_blueprint(selftest_bp)

    return app


def run_cli(argv=None, config_name=None):
    """Run one command; usage errors become a JSON error document with exit status 2."""
    app = create_app(config_name)
    args = sys.argv[1:] if argv is None else list(argv)
    with app.app_context():
        try:
            return app.cli.main(args=args, prog_name=PROG_NAME, standalone_mode=False) or 0
        except click.ClickException as exc:
            error_response("UsageError", exc.format_message())
            return EXIT_INPUT
        except click.exceptions.Abort:
            error_response("UsageError", "aborted")
            return EXIT_INPUT
