from flask import current_app, has_app_context


class Config:
    # comparison tolerance for floating matrix commands (scaled by 1 + ∞-norm)
    TOLERANCE = 1e-9
    SUITE_TOLERANCE = 1e-8

    DEFAULT_SEED = 0
    DEFAULT_TRIALS = 1000
    JSON_INDENT = None

    ORACLE_MAX_ATOMS = 20
    ENUMERATE_MAX_ATOMS = 6
    MATRIX_MAX_DIM = 12
    SNAP_DENOMINATOR = 10**6

    LOG_LEVEL = "WARNING"


class DevelopmentConfig(Config):
    DEBUG = True
    LOG_LEVEL = "DEBUG"


class TestingConfig(Config):
    TESTING = True


CONFIGS = {
    "default": Config,
    "development": DevelopmentConfig,
    "testing": TestingConfig,
}


def setting(key, value=None):
    """`value` if given, else the app config inside an app context, else the Config default."""
    if value is not None:
        return value
    if has_app_context():
        return current_app.config[key]
    return getattr(Config, key)
