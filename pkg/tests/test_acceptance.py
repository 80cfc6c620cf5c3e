"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every expected value here is an exact finite computation (zero tolerance);
runtime bounds are part of the criteria and asserted.
"""

import json
import subprocess
import sys
import time

import pytest

from modtheory import (Analysis, FuzzConfig, ann_left, build_spec,
                       fixture_doc, goldie_report, ideals,
                       indecomposable_injectives, is_retractable,
                       is_self_projective, power, replay_counterexample,
                       run_fuzz, run_suite, spec_min)
from modtheory.caps import DEFAULT_CAPS
from modtheory.modules import all_submodules, are_isomorphic, hom_set
from modtheory.registry import FUZZ_GATED_IDS
from modtheory.reporting import VIOLATION
from modtheory.spectrum import module_semiprime

from oracles import all_maps_hom_filter, brute_force_product


def _report(criterion, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    print(line)
    assert ok, line


def test_criterion_1_example_hull_exact():
    t0 = time.monotonic()
    spec = build_spec(fixture_doc("e28"))
    m = spec.module("M")
    ctx = Analysis(m)

    ids = ideals(m.ring)
    assert len(ids) == 6
    sizes = sorted(len(i) for i in ids)
    assert sizes == [1, 2, 2, 2, 4, 8]
    maximal = [i for i in ids if len(i) == 4]
    atoms = [i for i in ids if len(i) == 2]
    assert len(maximal) == 1 and len(atoms) == 3
    assert all(set(a.elements) <= set(maximal[0].elements) for a in atoms)

    fi = ctx.fi_subs
    assert sorted(len(k) for k in fi) == [1, 2, 4, 4, 4, 8]
    s = ctx.socle
    assert len(s) == 2
    k, l, n = [x for x in fi if len(x) == 4]

    assert ctx.product_value(k, l) == s
    assert ann_left(m, k) == s
    assert ann_left(m, s) == s
    assert power(m, k, 3) == s
    assert power(m, k, 3, right_normed=True).is_zero

    assert spec_min(m, ctx=ctx).minimal_primes == ()
    hulls = indecomposable_injectives(m, ctx=ctx)
    assert len(hulls) == 1 and are_isomorphic(hulls.members[0], m)
    assert not is_self_projective(m).holds
    assert is_retractable(m).holds

    elapsed = time.monotonic() - t0
    _report(1, elapsed < 60.0,
            f"worked hull example reproduced exactly in {elapsed:.2f}s (< 60s)")


def test_criterion_2_z6_structure():
    t0 = time.monotonic()
    spec = build_spec(fixture_doc("z6"))
    m = spec.module("M")
    ctx = Analysis(m)

    sm = spec_min(m, ctx=ctx)
    assert len(sm.minimal_primes) == 2
    assert sm.intersection.is_zero
    assert all(f.holds for f in sm.annihilator_flags)
    for i, p in enumerate(sm.minimal_primes):
        others = [q for j, q in enumerate(sm.minimal_primes) if j != i]
        expected = set(range(m.order))
        for q in others:
            expected &= set(q.elements)
        assert set(sm.right_annihilators[i].elements) == expected

    hulls = indecomposable_injectives(m, ctx=ctx)
    assert len(hulls) == 2 and hulls.complete
    from modtheory.injectives import _check_spectrum_bijection, _check_uniform_hull_powers
    ok, _ = _check_spectrum_bijection(ctx)
    assert ok
    ok, witness = _check_uniform_hull_powers(ctx)
    assert ok and witness["multiplicities"] == [1, 1]
    e1, e2 = hulls.members
    assert not are_isomorphic(e1, e2)

    gr = goldie_report(m, ctx=ctx)
    assert gr.udim == 2
    verdicts = {f.id: f.verdict for f in gr.findings}
    assert verdicts["Thm3.6"] == "verified"
    assert gr.continuity.holds and gr.k_nonsingular.holds
    assert all(gr.non_m_singular_proxies.values())
    assert gr.semiprime and gr.is_goldie

    elapsed = time.monotonic() - t0
    _report(2, elapsed < 10.0,
            f"semisimple fixture: spectrum, bijection, decomposition in {elapsed:.2f}s (< 10s)")


def test_criterion_3_z4_structure():
    t0 = time.monotonic()
    spec = build_spec(fixture_doc("z4"))
    m = spec.module("M")
    ctx = Analysis(m)

    w = module_semiprime(ctx)
    assert w.kind == "not_semiprime"
    assert w.offenders[0].elements == (0, 2)
    two = ctx.sub((0, 2))
    assert power(m, two, 2).is_zero

    from modtheory import k_singular_submodule
    zk = k_singular_submodule(m)
    assert zk.elements == (0, 2)
    assert ctx.product_value(zk, zk).is_zero  # (Z^K)^2 = 0

    gr = goldie_report(m, ctx=ctx)
    assert gr.radical_nilpotency["jacobson"]["elements"] == [0, 2]
    assert gr.radical_nilpotency["jacobson"]["nilpotency_index"] == 2

    elapsed = time.monotonic() - t0
    _report(3, elapsed < 5.0,
            f"nilpotent fixture: singular and radical data in {elapsed:.2f}s (< 5s)")


def test_criterion_4_oracle_equivalence():
    specs = {name: build_spec(fixture_doc(name))
             for name in ("z2", "z4", "z6", "e28", "e28-regular",
                          "z6-truncated-2.3")}
    modules = {}
    for name, spec in specs.items():
        for mname, mod in spec.modules.items():
            if mod.order <= 8:
                key = (mod.ring, mod.order, mod.add, mod.action)
                modules.setdefault(key, (f"{name}:{mname}", mod))
    mods = [v for _, v in sorted(modules.items(), key=lambda kv: kv[1][0])]

    mismatches = 0
    pairs = 0
    oracle_cache = {}
    for _, a in mods:
        for _, b in mods:
            if a.ring != b.ring:
                continue
            pairs += 1
            oracle = all_maps_hom_filter(a, b)
            oracle_cache[(a, b)] = oracle
            if sorted(f.image for f in hom_set(a, b)) != oracle:
                mismatches += 1

    product_pairs = 0
    for label, m in mods:
        oracle_endos = oracle_cache[(m, m)]
        ctx = Analysis(m)
        for k in ctx.subs:
            for l in ctx.subs:
                product_pairs += 1
                expected = brute_force_product(m, k.elements, l.elements,
                                               oracle_endos)
                if ctx.product_value(k, l).elements != expected:
                    mismatches += 1

    _report(4, mismatches == 0,
            f"backtracking equals exhaustive filtering on {pairs} hom pairs "
            f"and {product_pairs} product pairs, zero mismatches")


def test_criterion_5_fuzz_gate(tmp_path):
    t0 = time.monotonic()
    doc = run_fuzz(FuzzConfig(trials=200, max_ring_order=16,
                              max_module_order=32, seed=42))
    elapsed = time.monotonic() - t0
    assert doc["violations"] == [], doc["violations"][:3]
    assert len(doc["trials"]) == 200
    assert all(set(row["findings"]) == set(FUZZ_GATED_IDS)
               for row in doc["trials"])
    assert elapsed < 900.0

    corpus = tmp_path / "corpus"
    bad = run_fuzz(FuzzConfig(trials=6, seed=7, corrupt_product=True,
                              corpus_dir=str(corpus)))
    assert bad["violations"]
    files = sorted(corpus.rglob("*.json"))
    assert files
    replayed = replay_counterexample(files[0])
    assert replayed.verdict == VIOLATION

    _report(5, True,
            f"200 seeded trials, 0 violations, {elapsed:.1f}s (< 900s); "
            f"corrupted self-test produced {len(bad['violations'])} replayable violations")


def _strip_timings(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timings"}


def test_criterion_6_determinism(tmp_path):
    spec_path = tmp_path / "z6.json"
    spec_path.write_text(json.dumps(fixture_doc("z6")))

    def cli(*args):
        out = subprocess.run([sys.executable, "-m", "modtheory.cli", *args],
                             capture_output=True, text=True)
        assert out.returncode == 0, out.stderr
        return out.stdout

    a = json.loads(cli("verify", str(spec_path), "--module", "M", "--suite", "all"))
    b = json.loads(cli("verify", str(spec_path), "--module", "M", "--suite", "all"))
    assert a["report_hash"] == b["report_hash"]
    assert json.dumps(_strip_timings(a), sort_keys=True) == \
        json.dumps(_strip_timings(b), sort_keys=True)

    la = cli("lattice", str(spec_path), "--module", "M", "--format", "dot")
    lb = cli("lattice", str(spec_path), "--module", "M", "--format", "dot")
    assert la == lb

    fa = json.loads(cli("fuzz", "--trials", "5", "--seed", "42"))
    fb = json.loads(cli("fuzz", "--trials", "5", "--seed", "42"))
    assert fa["report_hash"] == fb["report_hash"]
    assert json.dumps(_strip_timings(fa), sort_keys=True) == \
        json.dumps(_strip_timings(fb), sort_keys=True)

    ra = run_suite(build_spec(fixture_doc("e28")), "M", "all").to_doc()
    rb = run_suite(build_spec(fixture_doc("e28")), "M", "all").to_doc()
    assert ra["report_hash"] == rb["report_hash"]

    _report(6, True, "byte-identical reports modulo timing fields "
                     "(verify, lattice, fuzz, library API)")
