import pytest

from modtheory import (AxiomViolation, all_submodules, are_isomorphic,
                       direct_sum, find_embedding, hom_set, is_essential,
                       is_fully_invariant, is_retractable, is_self_projective,
                       is_uniform, quotient, regular_module, ring_cyclic,
                       socle, submodule_generate, submodule_module,
                       uniform_dimension, validate_module)
from modtheory.modules import Submodule, generators

from oracles import brute_force_submodules


def sub(m, elems):
    return Submodule(m, tuple(elems))


def test_validate_regular_z6(z6):
    again = validate_module(z6.ring, z6.add_rows(), z6.action_rows())
    assert again.order == 6 and again.zero == 0


def test_validate_rejects_broken_action(z6):
    action = z6.action_rows()
    action[2][3] = 1  # 2*3 must be 0 in Z6
    with pytest.raises(AxiomViolation):
        validate_module(z6.ring, z6.add_rows(), action)


def test_character_module_of_extension_ring_validates(e28):
    # construction then validation of the dual module
    from modtheory import character_module
    c = character_module(e28.ring)
    assert c.order == 8
    validate_module(e28.ring, c.add_rows(), c.action_rows())


def test_submodule_generate(z6):
    assert submodule_generate(z6, {2}).elements == (0, 2, 4)
    assert submodule_generate(z6, set()).elements == (0,)
    assert submodule_generate(z6, {0}).elements == (0,)
    with pytest.raises(ValueError):
        submodule_generate(z6, {9})


def test_submodule_generate_idempotent_monotone(z6, e28):
    for m in (z6, e28):
        for seed in ({1}, {1, 2}, {3}, set(range(m.order))):
            s = submodule_generate(m, seed)
            assert submodule_generate(m, s.elements) == s
            bigger = submodule_generate(m, seed | {m.order - 1})
            assert set(s.elements) <= set(bigger.elements)


@pytest.mark.parametrize("fixture,count", [("z6", 4), ("z4", 3), ("z2", 2)])
def test_all_submodules_counts(fixture, count, all_fixture_modules):
    m = all_fixture_modules[fixture]
    subs = all_submodules(m)
    assert len(subs) == count
    assert [s.elements for s in subs] == brute_force_submodules(m)


def test_all_submodules_against_oracle(e28, e28_regular, z6_truncated):
    for m in (e28, e28_regular, z6_truncated):
        assert [s.elements for s in all_submodules(m)] == brute_force_submodules(m)


def test_e28_fully_invariant_lattice_shape(e28):
    subs = all_submodules(e28)
    endos = hom_set(e28, e28)
    fi = [k for k in subs if is_fully_invariant(e28, k, endos)]
    assert sorted(len(k) for k in fi) == [1, 2, 4, 4, 4, 8]
    s = next(k for k in fi if len(k) == 2)
    mids = [k for k in fi if len(k) == 4]
    # diamond over a stem: the three middle nodes meet in the socle and
    # pairwise join to the whole module
    for i, a in enumerate(mids):
        for b in mids[i + 1:]:
            assert set(a.elements) & set(b.elements) == set(s.elements)
            assert len({e28.a(x, y) for x in a.elements for y in b.elements}) == 8


def test_hom_set_z6_counts(z6):
    assert len(hom_set(z6, z6)) == 6
    v3, _ = submodule_module(z6, sub(z6, (0, 3)))
    assert len(hom_set(z6, v3)) == 2
    from modtheory.modules import zero_module
    z = zero_module(z6.ring)
    maps = hom_set(z6, z)
    assert len(maps) == 1 and maps[0].is_zero


def test_hom_set_independent_of_generators(z6, e28):
    # permuting element order changes the greedy generating set; the hom set
    # must not change (up to the permutation)
    import random
    rng = random.Random(5)
    for m in (z6, e28):
        perm = list(range(m.order))
        rng.shuffle(perm)
        inv = [0] * m.order
        for i, p in enumerate(perm):
            inv[p] = i
        n = m.order
        add = [[inv[m.a(perm[i], perm[j])] for j in range(n)] for i in range(n)]
        act = [[inv[m.act(r, perm[i])] for i in range(n)] for r in range(m.ring.order)]
        shuffled = validate_module(m.ring, add, act, "shuffled")
        assert generators(shuffled) != generators(m) or perm == list(range(n)) \
            or len(generators(m)) <= 1
        expected = sorted(tuple(inv[f.image[perm[x]]] for x in range(n))
                          for f in hom_set(m, m))
        got = sorted(f.image for f in hom_set(shuffled, shuffled))
        assert got == expected


def test_quotient(z6):
    q, pi = quotient(z6, sub(z6, (0, 2, 4)))
    assert q.order == 2 and pi.is_surjective() and pi.check()
    q0, _ = quotient(z6, sub(z6, (0,)))
    assert are_isomorphic(q0, z6)
    qm, _ = quotient(z6, sub(z6, range(6)))
    assert qm.order == 1


def test_direct_sum_and_iso(z6):
    v2, _ = submodule_module(z6, sub(z6, (0, 2, 4)))
    v3, _ = submodule_module(z6, sub(z6, (0, 3)))
    total, (inj_a, inj_b) = direct_sum(v2, v3)
    assert total.order == 6
    assert inj_a.check() and inj_b.check() and inj_a.is_injective()
    assert are_isomorphic(total, z6)
    from modtheory.modules import zero_module
    z = zero_module(z6.ring)
    m0, _ = direct_sum(z6, z)
    assert are_isomorphic(m0, z6)
    zz, _ = direct_sum(z, z)
    assert zz.order == 1


def test_are_isomorphic(z6):
    v2, _ = submodule_module(z6, sub(z6, (0, 2, 4)))
    q3, _ = quotient(z6, sub(z6, (0, 3)))
    w = are_isomorphic(v2, q3)
    assert w.holds and w.witness.check() and w.witness.is_injective()
    v3, _ = submodule_module(z6, sub(z6, (0, 3)))
    assert not are_isomorphic(v2, v3)
    assert are_isomorphic(z6, z6)


def test_are_isomorphic_is_equivalence(all_fixture_modules):
    mods = [m for m in all_fixture_modules.values()]
    for a in mods:
        assert are_isomorphic(a, a)
        for b in mods:
            if a.ring != b.ring:
                continue
            ab = bool(are_isomorphic(a, b))
            assert ab == bool(are_isomorphic(b, a))
            for c in mods:
                if b.ring != c.ring:
                    continue
                if ab and are_isomorphic(b, c):
                    assert are_isomorphic(a, c)


def test_fully_invariant(z6, e28):
    endos6 = hom_set(z6, z6)
    for s in all_submodules(z6):
        assert is_fully_invariant(z6, s, endos6)  # commutative ring: all ideals
    endos = hom_set(e28, e28)
    soc = socle(e28)
    assert is_fully_invariant(e28, soc, endos)
    assert is_fully_invariant(e28, sub(e28, (0,)), endos)
    assert is_fully_invariant(e28, sub(e28, range(8)), endos)


def test_essential(z6, e28):
    assert is_essential(e28, socle(e28))
    assert is_essential(z6, sub(z6, range(6)))
    assert not is_essential(z6, sub(z6, (0, 2, 4)))  # misses (0,3)
    assert not is_essential(z6, sub(z6, (0,)))


def test_uniform_dimension(z6, e28, z4):
    assert uniform_dimension(z6) == 2
    assert uniform_dimension(e28) == 1
    assert uniform_dimension(z4) == 1
    from modtheory.modules import zero_module
    assert uniform_dimension(zero_module(z6.ring)) == 0


def test_uniform_dimension_additive_on_sums(z6, z4, e28):
    for a, b in ((z6, z6), (z4, z4), (e28, e28)):
        total, _ = direct_sum(a, b)
        assert uniform_dimension(total) == uniform_dimension(a) + uniform_dimension(b)


def test_socle(e28_regular, z6, e28):
    assert len(socle(e28_regular)) == 4
    assert socle(z6).elements == tuple(range(6))  # semisimple
    assert is_essential(e28, socle(e28))
    from modtheory.modules import zero_module
    assert socle(zero_module(z6.ring)).is_zero


def test_socle_essential_everywhere(all_fixture_modules):
    for m in all_fixture_modules.values():
        assert is_essential(m, socle(m))


def test_uniform(z6, e28):
    assert is_uniform(z6, sub(z6, (0, 2, 4)))
    assert not is_uniform(z6, sub(z6, range(6)))
    assert not is_uniform(z6, sub(z6, (0,)))
    assert is_uniform(e28, sub(e28, range(8)))  # essential simple socle


def test_retractable(z6, e28):
    assert is_retractable(z6).holds
    assert is_retractable(e28).holds
    assert is_retractable(fixture_simple(z6)).holds


def fixture_simple(z6):
    v, _ = submodule_module(z6, Submodule(z6, (0, 3)))
    return v


def test_self_projective(z6, e28, z2):
    assert is_self_projective(z6).holds
    assert is_self_projective(z2).holds
    w = is_self_projective(e28)
    assert not w.holds
    k, unliftable = w.witness
    # the counterexample is replayable: no endomorphism projects onto it
    q, pi = quotient(e28, k)
    endos = hom_set(e28, e28)
    projected = {tuple(pi.image[g.image[x]] for x in range(e28.order))
                 for g in endos}
    assert unliftable.image not in projected


def test_find_embedding(z6):
    v2, _ = submodule_module(z6, sub(z6, (0, 2, 4)))
    emb = find_embedding(v2, z6)
    assert emb is not None and emb.is_injective() and emb.check()
    v3, _ = submodule_module(z6, sub(z6, (0, 3)))
    assert find_embedding(z6, v3) is None
