"""Weyl functions of boundary triplets: evaluation, spectra, negative counts
and characteristic functions. Problems are the JSON documents read by the
``weyl`` command-line tool, given here as dicts or JSON text."""

import json

from . import _core
from ._core import (
    ContractError,
    DomainError,
    ParseError,
    PoleError,
    SchemaError,
    WeylError,
)

__all__ = [
    "version",
    "problem_hash",
    "evaluate",
    "spectrum",
    "count_complex",
    "negcount",
    "charfn",
    "verify",
    "WeylError",
    "ParseError",
    "SchemaError",
    "PoleError",
    "DomainError",
    "ContractError",
]


def _text(problem):
    return problem if isinstance(problem, str) else json.dumps(problem)


def version():
    return _core.version()


def problem_hash(problem):
    return _core.problem_hash(_text(problem))


def evaluate(problem, z):
    """M(z) as a list of rows."""
    return _core.evaluate(_text(problem), complex(z))


def spectrum(problem, a, b, grid_n=400):
    return json.loads(_core.spectrum(_text(problem), a, b, grid_n))


def count_complex(problem, rect):
    return _core.count_complex(_text(problem), list(rect))


def negcount(problem):
    return json.loads(_core.negcount(_text(problem)))


def charfn(problem, z):
    return _core.charfn(_text(problem), complex(z))


def verify(suite="all", seed=0):
    ok, text = _core.verify(suite, seed)
    return ok, json.loads(text)
