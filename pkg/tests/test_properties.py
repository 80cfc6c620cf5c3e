"""Property-based checks over randomly built small modules."""

import hypothesis.strategies as st
from hypothesis import given, settings

from modtheory import (all_submodules, are_isomorphic, direct_sum, hom_set,
                       injective_hull, is_essential, quotient, regular_module,
                       ring_cyclic, ring_trivial_extension, socle,
                       submodule_generate, submodule_module,
                       uniform_dimension)
from modtheory.analysis import Analysis
from modtheory.modules import Submodule, sum_submodules

from oracles import all_maps_hom_filter


@st.composite
def small_rings(draw):
    if draw(st.booleans()):
        return ring_cyclic(draw(st.integers(2, 8)))
    p = draw(st.sampled_from([2, 3]))
    return ring_trivial_extension(ring_cyclic(p), 1)


@st.composite
def small_modules(draw, max_order=16):
    ring = draw(small_rings())
    m = regular_module(ring)
    for _ in range(draw(st.integers(0, 2))):
        op = draw(st.sampled_from(["quotient", "sub", "sum"]))
        subs = all_submodules(m)
        if op == "quotient":
            proper = [s for s in subs if len(s) < m.order]
            if proper:
                m = quotient(m, draw(st.sampled_from(proper)))[0]
        elif op == "sub":
            nonzero = [s for s in subs if len(s) > 1]
            if nonzero:
                m = submodule_module(m, draw(st.sampled_from(nonzero)))[0]
        elif m.order * ring.order <= max_order:
            m = direct_sum(m, regular_module(ring))[0]
    return m


@settings(max_examples=30, deadline=None)
@given(small_modules(), st.data())
def test_submodule_generate_idempotent_and_monotone(m, data):
    seed = data.draw(st.sets(st.integers(0, m.order - 1), max_size=3))
    s = submodule_generate(m, seed)
    assert submodule_generate(m, s.elements) == s
    extra = data.draw(st.integers(0, m.order - 1))
    bigger = submodule_generate(m, set(seed) | {extra})
    assert set(s.elements) <= set(bigger.elements)


@settings(max_examples=15, deadline=None)
@given(small_modules(max_order=6))
def test_hom_backtracking_matches_exhaustive_filter(m):
    if m.order > 6:
        return
    assert sorted(f.image for f in hom_set(m, m)) == all_maps_hom_filter(m, m)


@settings(max_examples=25, deadline=None)
@given(small_modules())
def test_socle_is_essential(m):
    assert is_essential(m, socle(m))


@settings(max_examples=25, deadline=None)
@given(small_modules(max_order=12))
def test_uniform_dimension_additive_over_direct_sum(m):
    doubled, _ = direct_sum(m, m)
    assert uniform_dimension(doubled) == 2 * uniform_dimension(m)


@settings(max_examples=20, deadline=None)
@given(small_modules(max_order=12))
def test_product_distributes_over_submodule_sums(m):
    ctx = Analysis(m)
    subs = ctx.subs[:6]
    for k1 in subs:
        for k2 in subs:
            union = sum_submodules(m, k1, k2)
            for l in subs:
                assert ctx.product_value(union, l) == sum_submodules(
                    m, ctx.product_value(k1, l), ctx.product_value(k2, l))


@settings(max_examples=15, deadline=None)
@given(small_modules(max_order=8))
def test_hull_embedding_is_essential(m):
    hull = injective_hull(m)
    a = hull.ambient
    image = set(hull.embedding.image)
    assert hull.embedding.is_injective()
    for z in range(a.order):
        if z == a.zero:
            continue
        orbit = {a.act(r, z) for r in range(a.ring.order)}
        assert (orbit & image) - {a.zero}


@settings(max_examples=15, deadline=None)
@given(small_modules(max_order=10))
def test_isomorphism_reflexive_and_symmetric(m):
    assert are_isomorphic(m, m)
    q, _ = quotient(m, Submodule(m, (m.zero,)))
    assert are_isomorphic(m, q) and are_isomorphic(q, m)


@settings(max_examples=15, deadline=None)
@given(small_modules(max_order=10))
def test_annihilator_set_is_intersection_closed(m):
    from modtheory import annihilator_set
    aset = annihilator_set(m)
    members = {s.elements for s in aset.members}
    for a in aset.members:
        for b in aset.members:
            inter = tuple(sorted(set(a.elements) & set(b.elements)))
            assert inter in members
