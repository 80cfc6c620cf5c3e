import json
import random

import pytest

from modtheory import Analysis, FuzzConfig, replay_counterexample, run_fuzz
from modtheory.caps import DEFAULT_CAPS
from modtheory.fuzz import (_shrink_candidates, _violates, generate_instance,
                            minimize_violation)
from modtheory.registry import FUZZ_GATED_IDS
from modtheory.reporting import VIOLATION


def test_generate_instance_deterministic_and_valid():
    config = FuzzConfig(trials=1, seed=3)
    a = generate_instance(random.Random("3:0"), config, DEFAULT_CAPS)
    b = generate_instance(random.Random("3:0"), config, DEFAULT_CAPS)
    assert a == b
    assert a.order <= config.max_module_order
    assert a.ring.order <= config.max_ring_order


def test_instance_bounds_hold_across_trials():
    config = FuzzConfig(trials=30, seed=9)
    for t in range(config.trials):
        m = generate_instance(random.Random(f"9:{t}"), config, DEFAULT_CAPS)
        assert m.order <= 32 and m.ring.order <= 16


def test_small_honest_campaign_no_violations():
    doc = run_fuzz(FuzzConfig(trials=12, seed=42))
    assert doc["violations"] == []
    assert len(doc["trials"]) == 12
    assert all(set(r["findings"]) == set(FUZZ_GATED_IDS) for r in doc["trials"])


def test_zero_trials_empty_report():
    doc = run_fuzz(FuzzConfig(trials=0, seed=1))
    assert doc["trials"] == [] and doc["violations"] == []


def test_campaign_determinism():
    a = run_fuzz(FuzzConfig(trials=6, seed=10))
    b = run_fuzz(FuzzConfig(trials=6, seed=10))
    assert a["report_hash"] == b["report_hash"]


def test_selftest_corruption_violates_and_replays(tmp_path):
    corpus = tmp_path / "corpus"
    doc = run_fuzz(FuzzConfig(trials=6, seed=7, corrupt_product=True,
                              corpus_dir=str(corpus)))
    assert doc["violations"], "corrupted product must trigger violations"
    files = sorted(corpus.rglob("*.json"))
    assert files
    for f in files:
        entry = json.loads(f.read_text())
        assert entry["replay"]["corrupt_product"] is True
        assert entry["rings"][0]["kind"] == "tables"
        finding = replay_counterexample(f)
        assert finding.verdict == VIOLATION
    # corpus layout: corpus/<statement-id>/<hash>.json
    for v in doc["violations"]:
        assert v["corpus_file"].endswith(f"{v['structure_hash']}.json")
        assert f"/{v['statement']}/" in v["corpus_file"]


def test_corrupted_fixture_minimizes(z6):
    # Z6 with the corrupted product violates the left/right annihilator
    # identity; shrinking cannot go below a semiprime witness
    finding = _violates(z6, "Prop1.16", DEFAULT_CAPS, corrupt=True)
    assert finding is not None
    small = minimize_violation(z6, "Prop1.16", DEFAULT_CAPS, corrupt=True)
    assert small.order <= z6.order
    assert _violates(small, "Prop1.16", DEFAULT_CAPS, corrupt=True) is not None


def test_shrink_candidates_are_smaller(z6):
    for cand in _shrink_candidates(z6, DEFAULT_CAPS):
        assert (cand.order, cand.ring.order) <= (z6.order, z6.ring.order)


def test_honest_fixtures_never_violate(all_fixture_modules):
    for name, m in all_fixture_modules.items():
        for _ in (0,):
            ctx = Analysis(m)
            from modtheory.registry import statements
            from modtheory.reporting import run_statement
            for sid in FUZZ_GATED_IDS:
                finding = run_statement(statements()[sid], ctx)
                assert finding.verdict != VIOLATION, (name, sid, finding.witness)
