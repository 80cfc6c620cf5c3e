"""Algebra-definition files: JSON descriptors for rings and modules.

The file format is JSON with explicit integer tables (nested rows); every
constructed object is re-validated, so a descriptor that parses but breaks an
axiom fails loudly with the axiom witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .caps import Caps, effective
from .errors import (AxiomViolation, ParseError, ResolutionError,
                     ValidationError)
from .modules import (FiniteModule, Submodule, direct_sum, quotient,
                      regular_module, submodule_generate, submodule_module,
                      validate_module)
from .rings import (FiniteRing, ring_cyclic, ring_product,
                    ring_trivial_extension, validate_ring)

RING_KINDS = ("cyclic", "tables", "trivial_extension", "product")
MODULE_KINDS = ("regular", "tables", "quotient", "direct_sum", "submodule",
                "injective_hull")


@dataclass
class AlgebraSpec:
    rings: dict
    modules: dict
    doc: dict = field(default_factory=dict)

    def module(self, name: str) -> FiniteModule:
        if name not in self.modules:
            raise ResolutionError(f"unknown module {name!r}; "
                                  f"have {sorted(self.modules)}")
        return self.modules[name]


def _require(cond: bool, msg: str):
    if not cond:
        raise ValidationError(msg)


def _build_ring(desc: dict, rings: dict, caps: Caps) -> FiniteRing:
    kind = desc.get("kind")
    name = desc.get("name", "R")
    if kind == "cyclic":
        _require("n" in desc, f"ring {name!r}: cyclic needs n")
        ring = ring_cyclic(int(desc["n"]), name)
    elif kind == "tables":
        try:
            ring = validate_ring(desc["add"], desc["mul"], name,
                                 desc.get("labels", ()), caps)
        except AxiomViolation as e:
            raise ValidationError(f"ring {name!r}: {e}") from e
        return ring
    elif kind == "trivial_extension":
        base = desc.get("base")
        if base not in rings:
            raise ResolutionError(f"ring {name!r}: unknown base ring {base!r}")
        ring = ring_trivial_extension(rings[base], int(desc["rank"]), name)
    elif kind == "product":
        factors = desc.get("factors", [])
        _require(len(factors) >= 2, f"ring {name!r}: product needs two factors")
        for f in factors:
            if f not in rings:
                raise ResolutionError(f"ring {name!r}: unknown factor {f!r}")
        ring = rings[factors[0]]
        for f in factors[1:]:
            ring = ring_product(ring, rings[f])
        ring = FiniteRing(ring.order, ring.add, ring.mul, ring.zero, ring.one,
                          name, ring.labels)
    else:
        raise ValidationError(f"ring {name!r}: unknown kind {kind!r} "
                              f"(expected one of {RING_KINDS})")
    try:  # constructed rings are re-validated: descriptors must be airtight
        validate_ring(ring.add_rows(), ring.mul_rows(), name, caps=caps)
    except AxiomViolation as e:
        raise ValidationError(f"ring {name!r}: {e}") from e
    return ring


def _build_module(desc: dict, rings: dict, modules: dict,
                  caps: Caps) -> FiniteModule:
    kind = desc.get("kind")
    name = desc.get("name", "M")

    def ref(key: str) -> FiniteModule:
        target = desc.get(key)
        if target not in modules:
            raise ResolutionError(f"module {name!r}: unknown module {target!r}")
        return modules[target]

    if kind in ("regular", "tables"):
        rname = desc.get("ring")
        if rname not in rings:
            raise ResolutionError(f"module {name!r}: unknown ring {rname!r}")
        ring = rings[rname]
        if kind == "regular":
            mod = regular_module(ring, name)
        else:
            try:
                return validate_module(ring, desc["add"], desc["action"], name,
                                       desc.get("labels", ()), caps)
            except AxiomViolation as e:
                raise ValidationError(f"module {name!r}: {e}") from e
    elif kind == "quotient":
        base = ref("of")
        sub = submodule_generate(base, [int(i) for i in desc.get("by", [])])
        mod, _ = quotient(base, sub)
    elif kind == "direct_sum":
        summands = desc.get("summands", [])
        _require(len(summands) >= 2, f"module {name!r}: direct_sum needs two summands")
        parts = []
        for s in summands:
            if s not in modules:
                raise ResolutionError(f"module {name!r}: unknown summand {s!r}")
            parts.append(modules[s])
        mod = parts[0]
        for p in parts[1:]:
            mod, _ = direct_sum(mod, p)
    elif kind == "submodule":
        base = ref("of")
        sub = submodule_generate(base, [int(i) for i in desc.get("generators", [])])
        mod, _ = submodule_module(base, sub)
    elif kind == "injective_hull":
        from .injectives import injective_hull
        mod = injective_hull(ref("of"), caps).ambient
    else:
        raise ValidationError(f"module {name!r}: unknown kind {kind!r} "
                              f"(expected one of {MODULE_KINDS})")
    mod = FiniteModule(mod.ring, mod.order, mod.add, mod.zero, mod.action,
                       name, mod.labels)
    try:
        validate_module(mod.ring, mod.add_rows(), mod.action_rows(), name,
                        caps=caps)
    except AxiomViolation as e:
        raise ValidationError(f"module {name!r}: {e}") from e
    return mod


def build_spec(doc: dict, caps: Caps | None = None) -> AlgebraSpec:
    caps = effective(caps)
    _require(isinstance(doc, dict), "top level must be an object")
    rings: dict = {}
    modules: dict = {}
    for desc in doc.get("rings", []):
        name = desc.get("name")
        _require(bool(name), "every ring needs a name")
        _require(name not in rings, f"duplicate ring name {name!r}")
        rings[name] = _build_ring(desc, rings, caps)
    for desc in doc.get("modules", []):
        name = desc.get("name")
        _require(bool(name), "every module needs a name")
        _require(name not in modules and name not in rings,
                 f"duplicate name {name!r}")
        modules[name] = _build_module(desc, rings, modules, caps)
    return AlgebraSpec(rings, modules, doc)


def load_spec(path, caps: Caps | None = None) -> AlgebraSpec:
    """Parse and validate an algebra-definition file."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    return build_spec(doc, caps)


def tables_doc(module: FiniteModule, ring_name: str = "R",
               module_name: str = "M") -> dict:
    """Serialize a module (with its ring) as an explicit-tables descriptor,
    the bit-exact replay form used for witnesses and the fuzz corpus."""
    r = module.ring
    return {
        "rings": [{"name": ring_name, "kind": "tables",
                   "add": r.add_rows(), "mul": r.mul_rows()}],
        "modules": [{"name": module_name, "ring": ring_name, "kind": "tables",
                     "add": module.add_rows(), "action": module.action_rows()}],
    }
