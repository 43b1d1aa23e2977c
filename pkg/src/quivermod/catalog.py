"""Bundled quiver catalog and generator/relation word data.

Quivers are stored in the documented JSON file format.  Vertex labels
follow the source figures: x7, a2, markov and j are zero-indexed already;
the x6 family, g2star and e6affine come from one-indexed figures and were
shifted down by one, so words transcribed for them parse with base=1.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import QuiverError
from .matrix import ExchangeMatrix

#: label base used when transcribing words for each catalog entry
WORD_BASE = {
    "x7": 0, "a2": 0, "markov": 0, "j": 0,
    "x6": 1, "x6_q1": 1, "x6_q2": 1, "x6_q3": 1, "x6_q4": 1,
    "g2star": 1, "e6affine": 1,
}


def catalog_names():
    root = resources.files("quivermod.data.catalog")
    return sorted(path.name[:-5] for path in root.iterdir()
                  if path.name.endswith(".json"))


def load_quiver(name) -> ExchangeMatrix:
    root = resources.files("quivermod.data.catalog")
    path = root / f"{name}.json"
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise QuiverError(f"unknown catalog quiver {name!r}; "
                          f"available: {', '.join(catalog_names())}")
    return ExchangeMatrix.from_json(text)


def load_relation_file(name):
    """Relation data file: {'quiver', 'base', 'generators', 'relations'}."""
    root = resources.files("quivermod.data.relations")
    path = root / f"{name}.json"
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise QuiverError(f"unknown relation file {name!r}")
    return json.loads(text)


def relation_file_names():
    root = resources.files("quivermod.data.relations")
    return sorted(path.name[:-5] for path in root.iterdir()
                  if path.name.endswith(".json"))
