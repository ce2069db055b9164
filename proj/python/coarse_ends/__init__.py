"""Finite-window estimators for ends of groups and coarse spaces."""

import json

from . import _core
from ._core import Error, builtin_groups, classify, word_norm

__all__ = ["Error", "builtin_groups", "classify", "word_norm", "run", "ends", "glacial",
           "almost_invariant", "coarse", "selftest"]


def run(command, **config):
    """Run a subcommand. Returns (report, exit_code)."""
    text, code, _dot = _core.command(command, json.dumps(config))
    return json.loads(text), code


def ends(group="Z", radii="1..10", **config):
    return run("ends", group=group, radii=radii, **config)


def glacial(**config):
    return run("glacial", **config)


def almost_invariant(group="Z", set="positives", **config):
    return run("almost-invariant", group=group, set=set, **config)


def coarse(space="cross:4:50", **config):
    return run("coarse", space=space, **config)


def selftest(**config):
    return run("selftest", **config)
