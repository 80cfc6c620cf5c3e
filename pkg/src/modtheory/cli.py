"""Command-line surface.

Exit codes: 0 when everything is verified or hypothesis-unmet, 1 when at
least one VIOLATION was found, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import Analysis
from .caps import Caps
from .descriptors import load_spec
from .endo import goldie_report
from .errors import ModTheoryError, ParseError, ResolutionError, UnknownStatementId
from .fixtures import FIXTURE_NAMES, fixture_doc, fixture_spec
from .fuzz import FuzzConfig, run_fuzz
from .injectives import indecomposable_injectives
from .registry import registry_is_total, run_suite
from .render import lattice_dot, lattice_json
from .reporting import VIOLATION
from .spectrum import module_semiprime, spec_min


def _write(text: str, out: str | None):
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args, caps: Caps) -> int:
    spec = load_spec(args.spec, caps)
    name = args.module or spec.doc.get("default_module", "M")
    report = run_suite(spec, name, "all", caps)
    if args.json:
        _write(report.to_json() + "\n", args.out)
        return 1 if report.has_violation else 0
    module = spec.module(name)
    ctx = Analysis(module, caps)
    lines = [f"module {name} over {module.ring.name} "
             f"(order {module.order}, ring order {module.ring.order})"]
    lines.append(f"  submodules: {len(ctx.subs)}  fully invariant: {len(ctx.fi_subs)}"
                 f"  endomorphisms: {len(ctx.endos)}")
    gr = goldie_report(module, caps, ctx)
    lines.append(f"  uniform dimension: {gr.udim}   annihilator chain: {gr.acc_max_chain}")
    lines.append(f"  semiprime: {gr.semiprime}  self-projective: {bool(ctx.self_projective)}"
                 f"  retractable: {bool(ctx.retractable)}")
    lines.append(f"  continuous: {gr.continuity.holds}  "
                 f"k-nonsingular: {gr.k_nonsingular.holds}")
    sm = spec_min(module, caps, ctx)
    lines.append(f"  minimal primes: {len(sm.minimal_primes)} "
                 f"{[list(p.elements) for p in sm.minimal_primes]}")
    hulls = indecomposable_injectives(module, caps, ctx)
    lines.append(f"  {hulls.label}: {len(hulls)}")
    counts = {}
    for f in report.findings:
        counts[f.verdict] = counts.get(f.verdict, 0) + 1
    lines.append(f"  statements: {counts}")
    for f in report.findings:
        if f.verdict == VIOLATION:
            lines.append(f"  VIOLATION {f.id}: {json.dumps(f.to_doc()['witness'])}")
    _write("\n".join(lines) + "\n", args.out)
    return 1 if report.has_violation else 0


def _cmd_verify(args, caps: Caps) -> int:
    spec = load_spec(args.spec, caps)
    hints = spec.doc.get("replay", {})
    name = args.module or hints.get("module") or spec.doc.get("default_module", "M")
    suite = args.suite or hints.get("statement") or "all"
    corrupt = bool(hints.get("corrupt_product")) if not args.suite else False
    report = run_suite(spec, name, suite, caps, corrupt_product=corrupt)
    _write(report.to_json() + "\n", args.out)
    return 1 if report.has_violation else 0


def _cmd_lattice(args, caps: Caps) -> int:
    spec = load_spec(args.spec, caps)
    name = args.module or spec.doc.get("default_module", "M")
    module = spec.module(name)
    text = lattice_dot(module, caps) if args.format == "dot" \
        else lattice_json(module, caps) + "\n"
    _write(text, args.out)
    return 0


def _cmd_fixture(args, caps: Caps) -> int:
    doc = fixture_doc(args.name)
    if args.emit:
        _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
        return 0
    spec = fixture_spec(args.name, caps)
    lines = [f"fixture {args.name}: {doc.get('description', '')}"]
    for rname, ring in spec.rings.items():
        lines.append(f"  ring {rname}: order {ring.order}")
    for mname, mod in spec.modules.items():
        marker = " (default)" if mname == doc.get("default_module") else ""
        lines.append(f"  module {mname}: order {mod.order} over {mod.ring.name}{marker}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_fuzz(args, caps: Caps) -> int:
    config = FuzzConfig(
        trials=args.trials,
        max_ring_order=args.max_ring_order,
        max_module_order=args.max_module_order,
        seed=args.seed,
        suites=tuple(args.suite.split(",")) if args.suite else FuzzConfig.suites,
        corpus_dir=args.corpus,
        corrupt_product=args.selftest_corrupt,
    )
    doc = run_fuzz(config, caps)
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 1 if doc["violations"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modtheory",
        description="Finite module-theory engine: analyze algebras, verify "
                    "structure statements, export lattices, and fuzz.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural overview plus full statement suite")
    p.add_argument("spec", help="algebra-definition JSON file")
    p.add_argument("--module", help="module name (default: file's default_module)")
    p.add_argument("--json", action="store_true", help="emit the report JSON")
    p.add_argument("--out", help="output path ('-' for stdout)")

    p = sub.add_parser("verify", help="run a statement suite and emit the report")
    p.add_argument("spec")
    p.add_argument("--module")
    p.add_argument("--suite", help="comma-separated ids or globs, e.g. 'Thm2.2.*'")
    p.add_argument("--out")

    p = sub.add_parser("lattice", help="export the submodule lattice")
    p.add_argument("spec")
    p.add_argument("--module")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")

    p = sub.add_parser("fixture", help="build a named fixture")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--emit", action="store_true",
                   help="print the fixture's algebra-definition JSON")
    p.add_argument("--out")

    p = sub.add_parser("fuzz", help="randomized verification campaign")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-ring-order", type=int, default=16)
    p.add_argument("--max-module-order", type=int, default=32)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--suite", help="statement-id filter for the gated checks")
    p.add_argument("--corpus", help="directory for minimized counterexamples")
    p.add_argument("--selftest-corrupt", action="store_true",
                   help="run with a deliberately broken product (harness self-test)")
    p.add_argument("--out")
    return parser


COMMANDS = {
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "lattice": _cmd_lattice,
    "fixture": _cmd_fixture,
    "fuzz": _cmd_fuzz,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        caps = Caps.from_env()
        registry_is_total()
        return COMMANDS[args.command](args, caps)
    except (ParseError, ResolutionError, UnknownStatementId, FileNotFoundError,
            KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ModTheoryError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
