"""Statement registry and suite runner.

Every in-scope item of the source material has a statement id here: theorem
ids carry real conclusion checks with hypothesis gates, definition ids carry
definitional consistency checks, and the two worked examples are bound to
their fixtures by structure hash.  A startup self-check asserts the registry
covers the whole scope list.
"""

from __future__ import annotations

import time
from fnmatch import fnmatch
from functools import lru_cache

from .analysis import Analysis
from .caps import Caps
from .descriptors import AlgebraSpec
from .errors import CapExceeded, UnknownStatementId, VerificationFailure
from .injectives import (GOLDIE_STATEMENTS, _ctx_k_singular,
                         indecomposable_injectives)
from .endo import (ENDO_STATEMENTS, _ctx_delta, _ctx_endo_ring, _ctx_jacobson,
                   delta_set, is_continuous, is_k_nonsingular)
from .modules import submodule_generate
from .products import is_tm_nilpotent
from .reporting import (HYPOTHESIS_UNMET, Report, Statement, jsonify,
                        run_statement, structure_hash, subject_of)
from .spectrum import (SECTION1_STATEMENTS, SEMIPRIME_STATEMENTS, gate_sp,
                       module_semiprime, spec_min)


def _no_gates(ctx) -> dict:
    return {}


def _check_product_identity(ctx):
    whole = ctx.whole_sub
    for k in ctx.subs:
        if not set(k.elements) <= set(ctx.product_value(k, whole).elements):
            return False, {"submodule": k, "product": ctx.product_value(k, whole)}
    if len(ctx.product_value(whole, whole)) != ctx.module.order:
        return False, {"reason": "identity map missing from the whole product"}
    return True, {}


def _check_annihilator_identity(ctx):
    ok = (ctx.ann_left(ctx.whole_sub).is_zero
          and len(ctx.ann_left(ctx.zero_sub)) == ctx.module.order)
    return ok, {"ann_of_whole": ctx.ann_left(ctx.whole_sub)}


def _check_semiprime_witness(ctx):
    w = module_semiprime(ctx)
    if w.holds:
        return True, {"verdict": w.kind, "quantifier": w.quantifier}
    k = w.offenders[0]
    valid = ctx.product_value(k, k).is_zero and not k.is_zero
    return valid, {"verdict": w.kind, "offender": k, "quantifier": w.quantifier}


def _check_power_definition(ctx):
    for n in ctx.subs:
        if ctx.power(n, 2) != ctx.product_value(n, n):
            return False, {"submodule": n, "k": 2}
        if ctx.power(n, 3) != ctx.product_value(n, ctx.product_value(n, n)):
            return False, {"submodule": n, "k": 3}
    return True, {}


def _check_right_annihilator_definition(ctx):
    for n in ctx.subs:
        l = ctx.ann_right(n)
        if not ctx.product_value(n, l).is_zero:
            return False, {"submodule": n, "candidate": l}
        for lp in ctx.subs:
            if ctx.product_value(n, lp).is_zero and not lp <= l:
                return False, {"submodule": n, "missed": lp,
                               "reason": "not the largest annihilated submodule"}
    return True, {}


def _check_annihilator_recognition(ctx):
    from .products import is_annihilator_submodule
    for k in ctx.subs:
        n = ctx.ann_left(k)
        w = is_annihilator_submodule(ctx.module, n, ctx.caps, ctx.endos, ctx.subs)
        if not w.holds:
            return False, {"source": k, "annihilator": n}
    return True, {}


def _check_annihilator_set(ctx):
    aset = ctx.annihilator_set()
    members = {s.elements for s in aset.members}
    if tuple(range(ctx.module.order)) not in members:
        return False, {"reason": "whole module missing"}
    if (ctx.module.zero,) not in members:
        return False, {"reason": "zero missing (kernel of the identity)"}
    for a in aset.members:
        for b in aset.members:
            inter = tuple(sorted(set(a.elements) & set(b.elements)))
            if inter not in members:
                return False, {"pair": (a, b), "reason": "not intersection-closed"}
    return aset.acc_holds, {"members": len(aset.members),
                            "longest_chain": aset.longest_chain()}


def _check_goldie_definition(ctx):
    return True, {"acc_on_annihilators": True, "udim": ctx.udim,
                  "is_goldie": True}


def _check_nilpotence_witnesses(ctx):
    for n in ctx.subs:
        w = ctx.is_nilpotent(n)
        if w.holds:
            if not ctx.power(n, w.witness).is_zero:
                return False, {"submodule": n, "index": w.witness}
            if w.witness > 1 and ctx.power(n, w.witness - 1).is_zero:
                return False, {"submodule": n, "index": w.witness,
                               "reason": "index not minimal"}
        else:
            stable = w.witness
            if stable.is_zero or ctx.product_value(n, stable) != stable:
                return False, {"submodule": n, "stable": stable}
    return True, {}


def _check_tm_nilpotence_definition(ctx):
    m = ctx.module
    if not is_tm_nilpotent(m, ctx.zero_sub, ctx.caps, ctx.endos).holds:
        return False, {"reason": "zero submodule must be transfinite nilpotent"}
    if m.order > 1:
        w = is_tm_nilpotent(m, ctx.whole_sub, ctx.caps, ctx.endos)
        if w.holds:
            return False, {"reason": "identity loop not detected on the whole module"}
    return True, {}


def _check_continuity_record(ctx):
    cont = is_continuous(ctx.module, ctx.caps, ctx)
    return True, {"c1": cont.c1, "c2": cont.c2}


def _check_k_nonsingular_definition(ctx):
    direct = is_k_nonsingular(ctx.module, ctx.caps, ctx)
    via_ideal = len(_ctx_delta(ctx)) == 1
    return direct.holds == via_ideal, {"scan": direct.holds,
                                       "ideal_trivial": via_ideal}


def _check_k_singular_definition(ctx):
    zk = _ctx_k_singular(ctx)
    pieces = set()
    for i in delta_set(ctx.module, ctx.endos):
        pieces.update(ctx.endos[i].image)
    rebuilt = submodule_generate(ctx.module, pieces)
    return zk == rebuilt, {"k_singular": zk, "rebuilt": rebuilt}


def _check_example_hull(ctx):
    """The worked hull example: non-associative powers, empty spectrum, one
    hull class, noetherian chain data, and failed self-projectivity."""
    m = ctx.module
    s = ctx.socle
    mids = [k for k in ctx.fi_subs if len(k) == 4]
    if len(s) != 2 or len(mids) != 3 or len(ctx.fi_subs) != 6:
        return False, {"reason": "fully invariant lattice shape mismatch",
                       "sizes": sorted(len(k) for k in ctx.fi_subs)}
    k = mids[0]
    left = ctx.power(k, 3)
    right = ctx.power(k, 3, right_normed=True)
    if not (left == s and right.is_zero and left != right):
        return False, {"left_normed": left, "right_normed": right}
    sm = spec_min(m, ctx.caps, ctx)
    if sm.all_primes:
        return False, {"primes": sm.all_primes}
    e = indecomposable_injectives(m, ctx.caps, ctx)
    from .modules import are_isomorphic
    if len(e.members) != 1 or not are_isomorphic(e.members[0], m):
        return False, {"hull_classes": len(e.members)}
    if ctx.self_projective.holds:
        return False, {"reason": "module must fail self-projectivity"}
    return True, {"acc_max_chain": ctx.annihilator_set().longest_chain(),
                  "retractable": bool(ctx.retractable)}


def _check_example_semisimple(ctx):
    """Finite stand-in for the semisimple example: every submodule is an
    endomorphism kernel, and the two simple parts are the minimal primes'
    right annihilators."""
    aset = ctx.annihilator_set()
    if {s.elements for s in aset.members} != {s.elements for s in ctx.subs}:
        return False, {"reason": "some submodule is not an annihilator"}
    if not (module_semiprime(ctx).holds and ctx.self_projective.holds):
        return False, {"reason": "expected semiprime and self-projective"}
    sm = spec_min(ctx.module, ctx.caps, ctx)
    ok = len(sm.minimal_primes) == 2 and sm.intersection.is_zero
    return ok, {"minimal_primes": len(sm.minimal_primes)}


@lru_cache(maxsize=1)
def _fixture_hashes() -> dict:
    from .fixtures import fixture_module
    return {"e28": structure_hash(fixture_module("e28")[1]),
            "z6-truncated-2.3": structure_hash(fixture_module("z6-truncated-2.3")[1])}


@lru_cache(maxsize=1)
def statements() -> dict:
    base = (
        Statement("Intro.product", "the submodule product contains its left factor",
                  _no_gates, _check_product_identity),
        Statement("Intro.annihilator", "annihilator endpoints",
                  _no_gates, _check_annihilator_identity),
        Statement("Def1.1", "semiprime verdicts carry valid witnesses",
                  _no_gates, _check_semiprime_witness),
        Statement("Def1.5", "powers are left-normed iterated products",
                  _no_gates, _check_power_definition),
        Statement("Def1.14", "right annihilator is the largest annihilated submodule",
                  gate_sp, _check_right_annihilator_definition),
        Statement("Def1.17", "left annihilators are recognized as annihilator submodules",
                  _no_gates, _check_annihilator_recognition),
        Statement("Def2.1", "annihilator set is intersection-closed with chain data",
                  _no_gates, _check_annihilator_set),
        Statement("Def2.11", "Goldie means chain condition plus finite dimension",
                  _no_gates, _check_goldie_definition),
        Statement("Def2.28", "nilpotence witnesses are minimal and stable powers stall",
                  _no_gates, _check_nilpotence_witnesses),
        Statement("Def2.32", "transfinite nilpotence endpoints",
                  _no_gates, _check_tm_nilpotence_definition),
        Statement("Def3.1", "continuity conditions evaluated",
                  _no_gates, _check_continuity_record),
        Statement("Def3.2", "kernel-essential vanishing matches the ideal form",
                  _no_gates, _check_k_nonsingular_definition),
        Statement("Def3.3", "kernel-essential image sum matches its definition",
                  _no_gates, _check_k_singular_definition),
    )
    hashes = _fixture_hashes()
    examples = (
        Statement("Ex2.8", "worked hull example reproduces its conclusions",
                  _no_gates, _check_example_hull, hashes["e28"]),
        Statement("Ex2.3", "semisimple stand-in: submodules are kernels",
                  _no_gates, _check_example_semisimple,
                  hashes["z6-truncated-2.3"]),
    )
    ordered = (base + SECTION1_STATEMENTS + SEMIPRIME_STATEMENTS
               + GOLDIE_STATEMENTS + ENDO_STATEMENTS + examples)
    out = {}
    for stmt in ordered:
        assert stmt.id not in out, f"duplicate statement id {stmt.id}"
        out[stmt.id] = stmt
    return out


PAPER_SCOPE = (
    "Intro.product", "Intro.annihilator",
    "Def1.1", "Def1.5", "Def1.14", "Def1.17", "Def2.1", "Def2.11",
    "Def2.28", "Def2.32", "Def3.1", "Def3.2", "Def3.3",
    "Prop1.3", "Prop1.9", "Prop1.11", "Prop1.16", "Prop1.18",
    "Prop2.17", "Prop2.21", "Prop2.29", "Prop2.33", "Prop3.5",
    "Lem1.6", "Lem1.7", "Lem1.13", "Lem2.16", "Lem2.25",
    "Rem1.2", "Rem1.8", "Rem1.12", "Rem2.6", "Rem2.9", "Rem3.4",
    "Thm2.2", "Thm2.7", "Thm2.18", "Thm2.20", "Thm2.23", "Thm3.6",
    "Cor2.10", "Cor2.30", "Cor2.31",
    "Ex2.3", "Ex2.8",
)

FUZZ_GATED_IDS = (
    "Thm2.2.i", "Thm2.2.ii", "Thm2.2.iii",
    "Lem1.6", "Lem1.7", "Lem2.16", "Lem2.25",
    "Prop1.3", "Prop1.9", "Prop1.16", "Prop1.18", "Prop2.17", "Prop2.21",
    "Prop2.29", "Prop2.33",
    "Thm2.7", "Thm2.18", "Thm2.20", "Thm3.6",
    "Cor2.30", "Cor2.31",
)


def registry_is_total() -> bool:
    """Every in-scope statement id resolves to a registered checker."""
    ids = statements()
    for scope_id in PAPER_SCOPE:
        if scope_id in ids:
            continue
        if any(reg.startswith(scope_id + ".") for reg in ids):
            continue
        raise AssertionError(f"registry misses in-scope statement {scope_id}")
    return True


def expand_suite(suite) -> list:
    """Resolve a suite filter (id list, glob patterns, or 'all') to ids."""
    ids = list(statements())
    if suite is None or suite == "all" or suite == ["all"]:
        return ids
    if isinstance(suite, str):
        parts = [p.strip() for p in suite.split(",") if p.strip()]
    else:
        parts = list(suite)
    out = []
    for part in parts:
        if part == "all":
            return ids
        matched = [i for i in ids if i == part or fnmatch(i, part)]
        if not matched:
            raise UnknownStatementId(part)
        for i in matched:
            if i not in out:
                out.append(i)
    return out


def _hypothesis_summary(ctx: Analysis) -> dict:
    out = {}

    def grab(name, thunk):
        try:
            out[name] = jsonify(thunk())
        except CapExceeded as e:
            out[name] = {"holds": None, "cap_exceeded": str(e)}
        except VerificationFailure as e:
            out[name] = {"holds": None, "verification_failure": str(e)}
    grab("self_projective", lambda: ctx.self_projective)
    grab("semiprime", lambda: {"holds": module_semiprime(ctx).holds})
    grab("retractable", lambda: ctx.retractable)
    grab("continuous", lambda: {"holds": is_continuous(ctx.module, ctx.caps, ctx).holds})
    grab("k_nonsingular", lambda: is_k_nonsingular(ctx.module, ctx.caps, ctx))
    grab("acc_on_annihilators",
         lambda: {"holds": True, "max_chain": ctx.annihilator_set().longest_chain()})
    out["every_submodule_contains_uniform"] = {
        "holds": True, "note": "automatic for finite modules"}
    return out


def run_suite(spec: AlgebraSpec, module_name: str, suite="all",
              caps: Caps | None = None, corrupt_product: bool = False) -> Report:
    """Evaluate the requested statements on one module of an algebra spec.

    Each requested id appears exactly once in the findings.  The corrupt flag
    deliberately breaks the product computation (fuzz self-test only).
    """
    registry_is_total()
    module = spec.module(module_name)
    ctx = Analysis(module, caps, corrupt_product=corrupt_product)
    ids = expand_suite(suite)
    findings = []
    timings = {}
    for stmt_id in ids:
        stmt = statements()[stmt_id]
        t0 = time.perf_counter()
        findings.append(run_statement(stmt, ctx))
        timings[stmt_id] = (time.perf_counter() - t0) * 1000.0
    return Report(subject_of(ctx), _hypothesis_summary(ctx), findings, timings)
