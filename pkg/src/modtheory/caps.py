"""Size caps for the exhaustive algorithms.

Everything in this engine is an exhaustive loop over a finite structure, so
the only resource question is how large a structure we agree to grind
through.  Caps are carried explicitly; ``MODTHEORY_CAPS`` overrides the
defaults with comma-separated ``name=value`` pairs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Caps:
    ring_order: int = 256        # validation is cubic in this
    module_order: int = 256
    lattice_breadth: int = 20000  # submodule lattice enumeration
    hom_count: int = 8192         # hom-set enumeration
    endo_order: int = 1024        # endomorphism ring construction
    power_elements: int = 200000  # elements scanned in bounded singular search
    hull_power: int = 4           # max cogenerator power tried for embeddings

    def scaled(self, **overrides: int) -> "Caps":
        return replace(self, **overrides)

    @classmethod
    def from_env(cls, env: str | None = None) -> "Caps":
        text = os.environ.get("MODTHEORY_CAPS", "") if env is None else env
        values = {}
        names = {f.name for f in fields(cls)}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in names:
                raise ValueError(f"unknown cap {key!r} in MODTHEORY_CAPS")
            values[key] = int(val)
        return cls(**values)


DEFAULT_CAPS = Caps()


def effective(caps: Caps | None) -> Caps:
    return DEFAULT_CAPS if caps is None else caps
