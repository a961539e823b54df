import os
from dataclasses import dataclass, field

from flask import json

from majorise.utils.exceptions import InputError, SchemaError

COMMANDS = (
    "rearrange",
    "majorise",
    "submajorise",
    "extreme",
    "witness",
    "oracle",
    "enumerate",
    "sample",
    "matrix-eig",
    "matrix-majorise",
    "matrix-extreme",
    "birkhoff",
    "ttransform",
    "suite",
    "selftest",
)


@dataclass
class CommandRequest:
    command: str
    inputs: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def validate(self):
        if self.command not in COMMANDS:
            raise InputError(message=f"unknown command {self.command!r}")
        for name, path in self.inputs.items():
            if path is None:
                raise InputError(message=f"missing input file for -{name}")
            if not os.path.isfile(path):
                raise InputError(message=f"input file {path!r} does not exist", details={"input": name})
        return self

    def load(self, name):
        path = self.inputs[name]
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            raise InputError(message=f"cannot read {path!r}: {exc.strerror}") from exc
        except ValueError as exc:
            raise SchemaError(message=f"{path!r} is not valid JSON: {exc}") from exc
