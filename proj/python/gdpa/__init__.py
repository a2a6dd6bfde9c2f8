"""Python interface to the exact GDPA toolkit.

Every command of the command-line tool is available through :func:`run`;
the helpers below wrap the most common ones and return decoded JSON.
"""

import json

from ._core import (
    CommandOptions,
    Error,
    PreconditionError,
    SchemaError,
    UnsupportedRing,
    commands,
    run_command,
)

__all__ = [
    "Error",
    "PreconditionError",
    "SchemaError",
    "UnsupportedRing",
    "Result",
    "commands",
    "run",
    "cbinom",
    "pi_check",
    "hilbert",
    "tor",
    "torsion",
    "special_resolution",
    "bound_check",
    "a2_check",
    "counterexample",
    "recover_pi",
]

_JSON_FIELDS = {"values", "input", "ideal"}


class Result:
    """Exit code (0 ok, 1 precondition failure, 2 inconclusive), decoded JSON and text."""

    def __init__(self, code, data, text):
        self.code = code
        self.data = data
        self.text = text

    @property
    def ok(self):
        return self.code == 0

    def __repr__(self):
        return f"Result(code={self.code}, data={self.data!r})"


def run(command, **options):
    """Runs a command; dict and list options are passed as JSON."""
    opts = CommandOptions()
    for key, value in options.items():
        if not hasattr(opts, key):
            raise TypeError(f"unknown option {key!r}")
        if key in _JSON_FIELDS and not isinstance(value, str):
            value = json.dumps(value)
        setattr(opts, key, value)
    code, data, text = run_command(command, opts)
    return Result(code, json.loads(data), text)


def cbinom(n, m, ring="Z", family="classical", values=None):
    """C(n, m) as the ring's string form."""
    extra = {} if values is None else {"values": values}
    return run("cbinom", n=n, m=m, ring=ring, family=family, **extra).data["value"]


def pi_check(up_to, ring="Z", family="classical", values=None):
    extra = {} if values is None else {"values": values}
    return run("pi-check", up_to=up_to, ring=ring, family=family, **extra)


def hilbert(module, horizon=-1):
    return run("hilbert", input=module, horizon=horizon)


def tor(module, max_i=2, horizon=-1):
    return run("tor", input=module, max_i=max_i, horizon=horizon)


def torsion(module, horizon=-1):
    return run("torsion", input=module, horizon=horizon)


def special_resolution(module, horizon=40):
    return run("special", input=module, horizon=horizon)


def bound_check(ideals=None, seed=1, count=50, max_d=4):
    if ideals is None:
        return run("bound-check", seed=seed, count=count, max_d=max_d)
    return run("bound-check", input=ideals)


def a2_check(ideal, h=1, ring="Z", family="classical", limit=10000):
    return run("a2-check", ideal=ideal, h=h, ring=ring, family=family, limit=limit)


def counterexample(p, r):
    return run("counterexample", p=p, r=r)


def recover_pi(ring="Z_(2)", family="classical", up_to=16, table=None):
    if table is not None:
        return run("recover-pi", input={"ring": ring, "table": table})
    return run("recover-pi", ring=ring, family=family, up_to=up_to)
