"""Cops and robbers on finite topological spaces."""

import json

from ._core import (
    Error,
    ParseError,
    PreconditionError,
    Space,
    catalog_names,
    enumerate_posets,
    gallery_names,
    is_isomorphic,
    run_cli,
)
from . import _core

__all__ = [
    "Error",
    "ParseError",
    "PreconditionError",
    "Space",
    "bounded_search",
    "catalog_names",
    "classify",
    "cross_validate",
    "enumerate_posets",
    "escape",
    "gallery_names",
    "is_isomorphic",
    "is_strong_strategy",
    "respond",
    "run_cli",
    "step_path_svg",
    "synthesize",
    "watcher",
]


def _text(path):
    return path if isinstance(path, str) else json.dumps(path)


def _space(space):
    return space if isinstance(space, Space) else Space.load(space)


def classify(space, fpf_cap=8):
    """Verdict dict with keys outcome, rule, certificate and trace.

    `space` is a Space, "@Name", a JSON file path or inline JSON. Inline
    preorders that are not antisymmetric are accepted and decided.
    """
    if isinstance(space, Space):
        return json.loads(_core._classify_space(space, fpf_cap))
    if isinstance(space, dict):
        space = json.dumps(space)
    return json.loads(_core._classify(space, fpf_cap))


def synthesize(space):
    """The cop's regular path as a dict, or None when no strategy is known."""
    text = _core._synthesize(_space(space))
    return None if text is None else json.loads(text)


def escape(space, cop):
    """Robber values at the cop's breakpoints, or None if the cop path wins."""
    return _core._escape(_space(space), _text(cop))


def respond(space, cop, strategy="auto"):
    """A coincidence-free robber path for the cop step path, or None."""
    text = _core._respond(_space(space), _text(cop), strategy)
    return None if text is None else json.loads(text)


def is_strong_strategy(space, cop):
    return _core._is_strong(_space(space), _text(cop))


def bounded_search(space, cop, budget=3, unroll=4):
    """(escape_found, summary) for a regular cop path."""
    return _core._bounded_search(_space(space), _text(cop), budget, unroll)


def step_path_svg(space, path):
    return _core._svg(_space(space), _text(path))


def watcher(gallery):
    """(winner, rule, report) for a named gallery."""
    return _core._gallery(gallery)


def cross_validate(n):
    return _core._cross_validate(n)
