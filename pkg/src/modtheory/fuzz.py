"""Randomized verification: generate rings and modules, evaluate the gated
statements, shrink any violation greedily, and persist a replayable witness.

Everything is driven by one integer seed; trials are sequential and the
summary document is byte-stable across runs.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import Analysis
from .caps import Caps, effective
from .descriptors import build_spec, load_spec, tables_doc
from .errors import AxiomViolation, CapExceeded
from .modules import (FiniteModule, all_submodules, direct_sum, quotient,
                      regular_module, submodule_module, validate_module)
from .registry import FUZZ_GATED_IDS, expand_suite, statements
from .reporting import (ENGINE_VERSION, SCHEMA_VERSION, VIOLATION, Finding,
                        canonical_hash, jsonify, run_statement,
                        structure_hash)
from .rings import (FiniteRing, Ideal, ideals, ring_cyclic, ring_product,
                    ring_quotient_with_map, ring_trivial_extension,
                    validate_ring)


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 100
    max_ring_order: int = 16
    max_module_order: int = 32
    seed: int = 42
    suites: tuple = FUZZ_GATED_IDS
    corpus_dir: str | None = None
    corrupt_product: bool = False  # self-test: breaks the product on purpose


# ---------------------------------------------------------------------------
# instance generation

def _structured_ring(rng: random.Random, max_order: int) -> FiniteRing:
    roll = rng.random()
    if roll < 0.40:
        return ring_cyclic(rng.randint(1, max_order))
    if roll < 0.60:
        a = rng.randint(2, max(2, max_order // 2))
        b = rng.randint(2, max(2, max_order // a)) if max_order // a >= 2 else 1
        if b >= 2 and a * b <= max_order:
            return ring_product(ring_cyclic(a), ring_cyclic(b))
        return ring_cyclic(min(a, max_order))
    opts = [(p, k) for p in (2, 3, 4) for k in (1, 2, 3)
            if p ** (1 + k) <= max_order]
    if opts:
        p, k = opts[rng.randrange(len(opts))]
        return ring_trivial_extension(ring_cyclic(p), k)
    return ring_cyclic(rng.randint(1, max_order))


def _random_ring(rng: random.Random, max_order: int, caps: Caps) -> FiniteRing:
    roll = rng.random()
    base = _structured_ring(rng, max_order)
    if roll < 0.70:
        return base
    if roll < 0.90:  # quotient by a random ideal of a structured seed
        ids = [i for i in ideals(base, caps) if 1 < len(i) < base.order]
        if ids:
            return ring_quotient_with_map(base, ids[rng.randrange(len(ids))])[0]
        return base
    # small multiplication-table perturbation, re-validated
    small = ring_cyclic(rng.randint(2, 6))
    n = small.order
    for _ in range(3):
        mul = list(small.mul)
        for _ in range(rng.randint(1, 2)):
            mul[rng.randrange(n * n)] = rng.randrange(n)
        try:
            return validate_ring(small.add_rows(),
                                 [mul[i * n:(i + 1) * n] for i in range(n)],
                                 f"{small.name}p", caps=caps)
        except AxiomViolation:
            continue
    return small


def _random_module(rng: random.Random, ring: FiniteRing, max_order: int,
                   caps: Caps) -> FiniteModule:
    m = regular_module(ring)
    for _ in range(rng.randint(0, 2)):
        op = rng.random()
        try:
            subs = all_submodules(m, caps)
        except CapExceeded:
            break
        if op < 0.4:
            proper = [s for s in subs if len(s) < m.order]
            if proper:
                m = quotient(m, proper[rng.randrange(len(proper))])[0]
        elif op < 0.7:
            nonzero = [s for s in subs if len(s) > 1]
            if nonzero:
                m = submodule_module(m, nonzero[rng.randrange(len(nonzero))])[0]
        else:
            if m.order * ring.order <= max_order:
                m = direct_sum(m, regular_module(ring))[0]
    if m.order > max_order:
        m = regular_module(ring)
    return FiniteModule(m.ring, m.order, m.add, m.zero, m.action, "M", m.labels)


def generate_instance(rng: random.Random, config: FuzzConfig,
                      caps: Caps) -> FiniteModule:
    ring = _random_ring(rng, config.max_ring_order, caps)
    module = _random_module(rng, ring, config.max_module_order, caps)
    validate_module(ring, module.add_rows(), module.action_rows(), "M",
                    caps=caps)
    return module


# ---------------------------------------------------------------------------
# shrinking

def _ring_shrunk(module: FiniteModule) -> FiniteModule | None:
    """Quotient the ring by the annihilator ideal of the module."""
    r = module.ring
    ann = [s for s in range(r.order)
           if all(module.act(s, x) == module.zero for x in range(module.order))]
    if len(ann) <= 1:
        return None
    small, reps = ring_quotient_with_map(r, Ideal(r, tuple(sorted(ann))))
    n = module.order
    act = tuple(module.action[reps[i] * n + x]
                for i in range(small.order) for x in range(n))
    return FiniteModule(small, n, module.add, module.zero, act, "M",
                        module.labels)


def _shrink_candidates(module: FiniteModule, caps: Caps) -> list:
    out = []
    try:
        subs = all_submodules(module, caps)
    except CapExceeded:
        subs = ()
    proper = [s for s in subs if 1 < len(s) < module.order]
    maximal = [s for s in proper if not any(s < t for t in proper)]
    for s in maximal:
        view, _ = submodule_module(module, s)
        out.append(FiniteModule(view.ring, view.order, view.add, view.zero,
                                view.action, "M", view.labels))
        q, _ = quotient(module, s)
        out.append(FiniteModule(q.ring, q.order, q.add, q.zero, q.action,
                                "M", q.labels))
    shrunk = _ring_shrunk(module)
    if shrunk is not None:
        out.append(shrunk)
    out.sort(key=lambda m: (m.order, m.ring.order, m.add, m.action))
    return out


def _violates(module: FiniteModule, stmt_id: str, caps: Caps,
              corrupt: bool) -> Finding | None:
    ctx = Analysis(module, caps, corrupt_product=corrupt)
    finding = run_statement(statements()[stmt_id], ctx)
    return finding if finding.verdict == VIOLATION else None


def minimize_violation(module: FiniteModule, stmt_id: str, caps: Caps,
                       corrupt: bool) -> FiniteModule:
    """Greedy structure shrinking preserving the violation."""
    current = module
    while True:
        for cand in _shrink_candidates(current, caps):
            if (cand.order, cand.ring.order) >= (current.order, current.ring.order):
                continue
            if _violates(cand, stmt_id, caps, corrupt) is not None:
                current = cand
                break
        else:
            return current


# ---------------------------------------------------------------------------
# the campaign

def _corpus_entry(module: FiniteModule, stmt_id: str, finding: Finding,
                  config: FuzzConfig) -> dict:
    doc = tables_doc(module)
    doc["schema_version"] = SCHEMA_VERSION
    doc["replay"] = {"statement": stmt_id, "module": "M",
                     "corrupt_product": config.corrupt_product}
    doc["witness"] = jsonify(finding.witness)
    return doc


def run_fuzz(config: FuzzConfig, caps: Caps | None = None) -> dict:
    """Run the campaign; returns the summary document (hash excludes wall
    time).  Violations are minimized and persisted under the corpus dir."""
    caps = effective(caps)
    suite_ids = expand_suite(list(config.suites))
    started = time.perf_counter()
    trial_rows = []
    violations = []
    caps_exceeded = 0
    for trial in range(config.trials):
        rng = random.Random(f"{config.seed}:{trial}")
        module = generate_instance(rng, config, caps)
        ctx = Analysis(module, caps, corrupt_product=config.corrupt_product)
        row = {"trial": trial, "structure_hash": structure_hash(module),
               "ring_order": module.ring.order, "module_order": module.order,
               "findings": {}}
        for stmt_id in suite_ids:
            finding = run_statement(statements()[stmt_id], ctx)
            row["findings"][stmt_id] = finding.verdict
            if "cap_exceeded" in finding.witness:
                caps_exceeded += 1
            if finding.verdict == VIOLATION:
                small = minimize_violation(module, stmt_id, caps,
                                           config.corrupt_product)
                small_finding = _violates(small, stmt_id, caps,
                                          config.corrupt_product)
                entry = _corpus_entry(small, stmt_id,
                                      small_finding or finding, config)
                path = None
                if config.corpus_dir:
                    d = Path(config.corpus_dir) / stmt_id
                    d.mkdir(parents=True, exist_ok=True)
                    path = d / f"{structure_hash(small)}.json"
                    path.write_text(json.dumps(entry, indent=2, sort_keys=True))
                violations.append({
                    "trial": trial, "statement": stmt_id,
                    "structure_hash": structure_hash(small),
                    "corpus_file": str(path) if path else None,
                    "module_order": small.order,
                    "ring_order": small.ring.order,
                })
        trial_rows.append(row)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "engine_version": ENGINE_VERSION,
        "config": {"trials": config.trials,
                   "max_ring_order": config.max_ring_order,
                   "max_module_order": config.max_module_order,
                   "seed": config.seed,
                   "suites": list(suite_ids),
                   "corrupt_product": config.corrupt_product},
        "trials": trial_rows,
        "violations": violations,
        "caps_exceeded": caps_exceeded,
    }
    doc["report_hash"] = canonical_hash(doc)
    doc["timings"] = {"elapsed_seconds": round(time.perf_counter() - started, 3)}
    return doc


def replay_counterexample(path, caps: Caps | None = None) -> Finding:
    """Re-run a persisted counterexample; the embedded replay hints pick the
    statement and the corruption flag."""
    spec = load_spec(path, caps)
    hints = spec.doc.get("replay", {})
    stmt_id = hints.get("statement")
    module = spec.module(hints.get("module", "M"))
    ctx = Analysis(module, caps,
                   corrupt_product=bool(hints.get("corrupt_product")))
    return run_statement(statements()[stmt_id], ctx)
