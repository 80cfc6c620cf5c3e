"""Named fixtures shipped as algebra-definition JSON in the package data.

Each fixture names the module of interest in its ``default_module`` field.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .caps import Caps
from .descriptors import AlgebraSpec, build_spec

FIXTURE_NAMES = ("z2", "z4", "z6", "e28", "e28-regular", "z6-truncated-2.3")


def fixture_doc(name: str) -> dict:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    data = resources.files("modtheory").joinpath(f"fixtures/{name}.json")
    return json.loads(data.read_text())


@lru_cache(maxsize=None)
def fixture_spec(name: str, caps: Caps | None = None) -> AlgebraSpec:
    return build_spec(fixture_doc(name), caps)


def fixture_module(name: str, caps: Caps | None = None):
    """The fixture's module of interest, with its spec."""
    spec = fixture_spec(name, caps)
    return spec, spec.module(spec.doc["default_module"])
