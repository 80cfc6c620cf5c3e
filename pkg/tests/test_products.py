import pytest

from modtheory import (Analysis, VerificationFailure, ann_left, ann_right,
                       annihilator_set, hom_set, is_annihilator_submodule,
                       is_nilpotent_submodule, is_tm_nilpotent, power, product,
                       submodule_module)
from modtheory.modules import Submodule, all_submodules

from oracles import all_maps_hom_filter, brute_force_product


def sub(m, elems):
    return Submodule(m, tuple(elems))


def e28_named_subs(ctx):
    s = ctx.socle
    k, l, n = [x for x in ctx.fi_subs if len(x) == 4]
    return s, k, l, n


def test_product_identity_contribution(z6, e28):
    for m in (z6, e28):
        whole = sub(m, range(m.order))
        for k in all_submodules(m):
            res = product(m, k, whole)
            assert set(k.elements) <= set(res.value.elements)
            assert any(f.image == tuple(range(m.order)) for f in res.contributing_maps)


def test_product_value_is_sum_of_contributing_images(z6, e28):
    for m in (z6, e28):
        subs = all_submodules(m)
        for k in subs:
            for l in subs:
                res = product(m, k, l)
                pieces = {f.image[x] for f in res.contributing_maps for x in k.elements}
                from oracles import additive_closure
                assert additive_closure(m, pieces) == res.value.elements


def test_e28_products(e28, ctx_of):
    ctx = ctx_of(e28)
    s, k, l, n = e28_named_subs(ctx)
    assert ctx.product_value(k, l) == s
    assert ctx.product_value(k, s) == s
    assert ctx.product_value(l, s) == s
    assert ctx.product_value(n, s) == s
    assert ctx.product_value(s, k).is_zero
    assert ctx.ann_left(k) == s
    assert ctx.ann_left(s) == s


def test_power_left_vs_right_normed(e28, z4, ctx_of):
    ctx = ctx_of(e28)
    s, k, _, _ = e28_named_subs(ctx)
    assert power(e28, k, 3) == s
    assert power(e28, k, 3, right_normed=True).is_zero
    assert power(z4, sub(z4, (0, 2)), 2).is_zero
    for m in (e28, z4):
        whole = sub(m, range(m.order))
        assert power(m, whole, 2) == whole


def test_power_requires_positive_exponent(z4):
    with pytest.raises(ValueError):
        power(z4, sub(z4, (0, 2)), 0)


def test_ann_left(z6, e28):
    assert ann_left(z6, sub(z6, (0, 2, 4))).elements == (0, 3)
    assert ann_left(z6, sub(z6, range(6))).is_zero
    assert ann_left(e28, sub(e28, range(8))).is_zero
    assert len(ann_left(z6, sub(z6, (0,)))) == 6


def test_ann_right(z6):
    assert ann_right(z6, sub(z6, (0, 2, 4))).elements == (0, 3)
    assert len(ann_right(z6, sub(z6, (0,)))) == 6
    # semiprime self-projective: left and right annihilators agree
    for k in all_submodules(z6):
        assert ann_left(z6, k) == ann_right(z6, k)


def test_ann_right_brute_force_largest(z6, z4):
    for m in (z6, z4):
        subs = all_submodules(m)
        for n in subs:
            try:
                r = ann_right(m, n)
            except VerificationFailure:
                continue
            annihilated = [l for l in subs if product(m, n, l).value.is_zero]
            best = max(annihilated, key=len)
            assert set(best.elements) <= set(r.elements)
            for l in annihilated:
                assert set(l.elements) <= set(r.elements)


def test_annihilator_set(z6, e28, ctx_of):
    aset = annihilator_set(z6)
    assert [s.elements for s in aset.members] == [
        (0,), (0, 3), (0, 2, 4), (0, 1, 2, 3, 4, 5)]
    assert aset.acc_holds and aset.longest_chain() == 3
    ctx = ctx_of(e28)
    s = ctx.socle
    asetE = annihilator_set(e28)
    assert s in asetE
    v3, _ = submodule_module(z6, sub(z6, (0, 3)))
    simple = annihilator_set(v3)
    assert len(simple.members) == 2


def test_is_annihilator_submodule(z6, ctx_of):
    ctx = ctx_of(z6)
    for p in (sub(z6, (0, 2, 4)), sub(z6, (0, 3))):
        w = is_annihilator_submodule(z6, p)
        assert w.holds
        assert ann_left(z6, w.witness) == p
    assert is_annihilator_submodule(z6, sub(z6, range(6))).holds  # witness 0
    assert is_annihilator_submodule(z6, sub(z6, (0,))).holds      # witness M


def test_is_nilpotent_submodule(z4, e28, ctx_of):
    w = is_nilpotent_submodule(z4, sub(z4, (0, 2)))
    assert w.holds and w.witness == 2
    assert is_nilpotent_submodule(z4, sub(z4, (0,))).holds
    assert is_nilpotent_submodule(z4, sub(z4, (0,))).witness == 1
    whole = sub(z4, range(4))
    assert not is_nilpotent_submodule(z4, whole).holds
    ctx = ctx_of(e28)
    s, k, _, _ = e28_named_subs(ctx)
    assert not is_nilpotent_submodule(e28, k).holds  # powers stall at the socle


def test_is_tm_nilpotent(z4, z6):
    assert is_tm_nilpotent(z4, sub(z4, (0, 2))).holds
    assert is_tm_nilpotent(z4, sub(z4, (0,))).holds
    w = is_tm_nilpotent(z4, sub(z4, range(4)))
    assert not w.holds and len(w.witness) >= 1  # identity loop
    assert not is_tm_nilpotent(z6, sub(z6, (0, 2, 4))).holds


def test_product_distributive_over_sum(all_fixture_modules, ctx_of):
    from modtheory.modules import sum_submodules
    for m in all_fixture_modules.values():
        ctx = ctx_of(m)
        subs = ctx.subs
        for k1 in subs:
            for k2 in subs:
                union = sum_submodules(m, k1, k2)
                for l in subs:
                    left = ctx.product_value(union, l)
                    right = sum_submodules(
                        m, ctx.product_value(k1, l), ctx.product_value(k2, l))
                    assert left == right, (m.name, k1, k2, l)


def test_product_associative_iff_self_projective(z6, z4, e28, ctx_of):
    for m in (z6, z4):
        ctx = ctx_of(m)
        assert ctx.self_projective
        for a in ctx.subs:
            for b in ctx.subs:
                for c in ctx.subs:
                    assert ctx.product_value(a, ctx.product_value(b, c)) == \
                        ctx.product_value(ctx.product_value(a, b), c)
    ctx = ctx_of(e28)
    s, k, _, _ = e28_named_subs(ctx)
    assert ctx.product_value(k, ctx.product_value(k, k)) != \
        ctx.product_value(ctx.product_value(k, k), k)


def test_hom_product_compatibility(z6, z4, e28, ctx_of):
    # composing a map into N with a map into L lands in the product of N by L
    for m in (z6, z4, e28):
        ctx = ctx_of(m)
        from modtheory.products import maps_into
        for n in ctx.subs:
            for l in ctx.subs:
                target = set(ctx.product_value(n, l).elements)
                for f in maps_into(m, l, ctx.endos):
                    for g in maps_into(m, n, ctx.endos):
                        assert {f.image[g.image[x]] for x in range(m.order)} <= target


def test_product_matches_filtered_hom_oracle(z4, z6):
    for m in (z4, z6):
        oracle_maps = all_maps_hom_filter(m, m)
        assert sorted(f.image for f in hom_set(m, m)) == oracle_maps
        subs = all_submodules(m)
        for k in subs:
            for l in subs:
                expected = brute_force_product(m, k.elements, l.elements, oracle_maps)
                assert product(m, k, l).value.elements == expected
