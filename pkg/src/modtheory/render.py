"""Submodule-lattice export: Hasse diagrams as DOT or JSON.

Fully invariant nodes are marked; on a regular module those are exactly the
two-sided ideals, so the two textbook lattice figures are reproducible from
the fixtures.
"""

from __future__ import annotations

import json

from .analysis import Analysis, get_analysis
from .caps import Caps
from .modules import FiniteModule


def lattice_doc(m: FiniteModule, caps: Caps | None = None,
                ctx: Analysis | None = None) -> dict:
    ctx = get_analysis(m, caps, ctx)
    subs = ctx.subs
    fi = {k.elements for k in ctx.fi_subs}
    sets = [set(s.elements) for s in subs]
    edges = []
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            if i == j or not a < b:
                continue
            if any(a < c < b for c in sets):
                continue
            edges.append([i, j])
    return {
        "module": m.name,
        "nodes": [{"elements": list(s.elements), "size": len(s),
                   "fully_invariant": s.elements in fi} for s in subs],
        "edges": sorted(edges),
    }


def lattice_dot(m: FiniteModule, caps: Caps | None = None,
                ctx: Analysis | None = None) -> str:
    doc = lattice_doc(m, caps, ctx)
    lines = [f'digraph "{doc["module"]}" {{',
             "  rankdir=BT;",
             '  node [shape=ellipse, fontsize=10];']
    for i, node in enumerate(doc["nodes"]):
        label = "{" + ",".join(str(e) for e in node["elements"][:10]) + (
            ",..." if len(node["elements"]) > 10 else "") + "}"
        style = ', style=bold, peripheries=2' if node["fully_invariant"] else ""
        lines.append(f'  n{i} [label="{label}\\n|{node["size"]}|"{style}];')
    for a, b in doc["edges"]:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_json(m: FiniteModule, caps: Caps | None = None,
                 ctx: Analysis | None = None) -> str:
    return json.dumps(lattice_doc(m, caps, ctx), indent=2, sort_keys=True)
