"""Python face of the enthymeme decoder.

Thin wrappers over the C++ core: PENMAN -> propositional formula, SAT-backed
entailment checks, and full instance decoding with stub providers.
"""

import json

from ._core import (
    classify,
    contradicts,
    entails,
    instantiate,
    penman_to_formula,
    satisfiable,
    to_dimacs,
)
from . import _core

__all__ = [
    "argument_graph_dot",
    "classify",
    "contradicts",
    "decode",
    "entails",
    "instantiate",
    "metrics",
    "penman_to_formula",
    "satisfiable",
    "to_dimacs",
]


def decode(instance, **kwargs):
    """Decode one instance dict (premise/claim/implicit/amr) to a trace dict."""
    return json.loads(_core.decode_json(json.dumps(instance), **kwargs))


def metrics(tp, fp, fn, tn, errored=0):
    """Confusion counts -> per-class precision/recall/F1 and accuracy."""
    return json.loads(_core.metrics_json(tp, fp, fn, tn, errored))


def argument_graph_dot(premise, implicit, claim, amr=None, **kwargs):
    """Argument graph for one enthymeme, rendered as DOT text."""
    amr_json = json.dumps(amr) if amr else ""
    return _core.argument_graph_dot(premise, implicit, claim, amr_json, **kwargs)
