import json
from fractions import Fraction

import pytest

from majorise.main import create_app
from majorise.services.measure_service import atomic_function


@pytest.fixture
def app():
    app = create_app("testing")
    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def write_json(tmp_path):
    def write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return write


def equal(*values):
    """Function with the given values on n atoms of weight 1/n."""
    n = len(values)
    return atomic_function([Fraction(1, n)] * n, values)


@pytest.fixture
def weighted_pair():
    weights = ["1/2", "1/4", "1/4"]
    x = atomic_function(weights, [3, 4, 0], ids=["a", "b", "c"])
    y = atomic_function(weights, [4, 2, 0], ids=["a", "b", "c"])
    return x, y
