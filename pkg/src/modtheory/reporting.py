"""Report structures and JSON serialization.

A Report carries hypothesis verdicts and per-statement findings.  Violations
always embed a replayable witness.  Serialization is canonical (sorted keys,
deterministic ordering); the report hash covers everything except timings.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import CapExceeded, VerificationFailure
from .modules import FiniteModule, Homomorphism, Submodule, Witnessed

SCHEMA_VERSION = 1
ENGINE_VERSION = "0.1.0"

VERIFIED = "verified"
HYPOTHESIS_UNMET = "hypothesis-unmet"
VIOLATION = "VIOLATION"


def jsonify(value):
    """Coerce engine values into JSON-serializable witnesses."""
    if isinstance(value, Submodule):
        return {"submodule": list(value.elements)}
    if isinstance(value, Homomorphism):
        return {"hom": list(value.image), "source": value.source.name,
                "target": value.target.name}
    if isinstance(value, FiniteModule):
        return {"module": value.name, "order": value.order}
    if isinstance(value, Witnessed):
        return {"holds": value.holds, "witness": jsonify(value.witness)}
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [jsonify(v) for v in items]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return repr(value)


@dataclass(frozen=True)
class Finding:
    id: str
    verdict: str
    witness: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {"id": self.id, "verdict": self.verdict,
                "witness": jsonify(self.witness)}


@dataclass
class Report:
    subject: dict
    hypotheses: dict
    findings: list
    timings: dict = field(default_factory=dict)

    @property
    def has_violation(self) -> bool:
        return any(f.verdict == VIOLATION for f in self.findings)

    def to_doc(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "engine_version": ENGINE_VERSION,
            "subject": jsonify(self.subject),
            "hypotheses": jsonify(self.hypotheses),
            "findings": [f.to_doc() for f in sorted(self.findings, key=lambda f: f.id)],
        }
        doc["report_hash"] = canonical_hash(doc)
        doc["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return doc

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_doc(), indent=indent, sort_keys=True)


def canonical_hash(doc: dict) -> str:
    """Hash of a report document with timing fields stripped."""
    clean = {k: v for k, v in doc.items() if k not in ("timings", "report_hash")}
    return hashlib.sha256(
        json.dumps(clean, sort_keys=True).encode()).hexdigest()[:16]


def structure_hash(module: FiniteModule) -> str:
    r = module.ring
    payload = {
        "ring": {"order": r.order, "add": list(r.add), "mul": list(r.mul),
                 "zero": r.zero, "one": r.one},
        "module": {"order": module.order, "add": list(module.add),
                   "zero": module.zero, "action": list(module.action)},
    }
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Statement:
    """A checkable statement: hypothesis gates plus a conclusion check.

    ``gates(ctx)`` returns named hypothesis verdicts; ``check(ctx)`` returns
    (conclusion_holds, witness).  A false conclusion under met gates is a
    VIOLATION; under unmet gates the run is informative only.
    """

    id: str
    title: str
    gates: object   # callable ctx -> dict[str, bool]
    check: object   # callable ctx -> (bool, dict)
    fixture_hash: str | None = None  # fixture-bound statements apply only there


def run_statement(stmt: Statement, ctx) -> Finding:
    from .reporting import structure_hash as _sh  # self-import safe
    if stmt.fixture_hash is not None and _sh(ctx.module) != stmt.fixture_hash:
        return Finding(stmt.id, HYPOTHESIS_UNMET,
                       {"note": "fixture-bound statement; subject differs"})
    try:
        gates = stmt.gates(ctx)
    except CapExceeded as e:
        return Finding(stmt.id, HYPOTHESIS_UNMET, {"cap_exceeded": str(e)})
    met = all(gates.values())
    try:
        holds, witness = stmt.check(ctx)
    except CapExceeded as e:
        return Finding(stmt.id, HYPOTHESIS_UNMET,
                       {"gates": gates, "cap_exceeded": str(e)})
    except VerificationFailure as e:
        holds, witness = False, {"verification_failure": str(e)}
    witness = dict(witness)
    witness["gates"] = gates
    witness["conclusion_holds"] = holds
    if met:
        return Finding(stmt.id, VERIFIED if holds else VIOLATION, witness)
    return Finding(stmt.id, HYPOTHESIS_UNMET, witness)


def subject_of(ctx) -> dict:
    return {"module": ctx.module.name, "order": ctx.module.order,
            "ring": ctx.module.ring.name,
            "structure_hash": structure_hash(ctx.module)}
