import pytest

from modtheory import (AxiomViolation, ideals, ring_cyclic, ring_product,
                       ring_quotient, ring_trivial_extension, validate_ring)
from modtheory.rings import Ideal

from oracles import brute_force_ideals


def test_validate_z6_roundtrip():
    z6 = ring_cyclic(6)
    again = validate_ring(z6.add_rows(), z6.mul_rows(), "Z6")
    assert again.order == 6 and again.zero == 0 and again.one == 1
    assert again.add == z6.add and again.mul == z6.mul


def test_validate_rejects_nonassociative_mul():
    z4 = ring_cyclic(4)
    mul = z4.mul_rows()
    mul[2][3] = 1  # 2*3 = 1 breaks associativity (and distributivity)
    with pytest.raises(AxiomViolation) as exc:
        validate_ring(z4.add_rows(), mul)
    assert exc.value.witness  # carries a witness triple


def test_validate_rejects_bad_shape():
    with pytest.raises(AxiomViolation):
        validate_ring([[0, 1], [1, 0], [0, 0]], [[0, 0], [0, 1]])


def test_cyclic_rings():
    z1 = ring_cyclic(1)
    assert z1.order == 1 and z1.one == z1.zero
    z6 = ring_cyclic(6)
    assert z6.a(4, 5) == 3 and z6.m(4, 5) == 2
    with pytest.raises(ValueError):
        ring_cyclic(0)


def test_trivial_extension_e28_shape():
    r = ring_trivial_extension(ring_cyclic(2), 2)
    assert r.order == 8
    again = validate_ring(r.add_rows(), r.mul_rows())
    assert again.zero == r.zero and again.one == r.one
    ids = ideals(r)
    # the diamond: 0, three simple ideals, the unique maximal ideal, R
    assert len(ids) == 6
    assert sorted(len(i) for i in ids) == [1, 2, 2, 2, 4, 8]
    maximal = [i for i in ids if len(i) == 4]
    assert len(maximal) == 1
    atoms = [i for i in ids if len(i) == 2]
    for a in atoms:
        assert set(a.elements) <= set(maximal[0].elements)


def test_trivial_extension_rank_one_chain():
    # frozen from the subset-filter oracle: 0 < (x) < R
    r = ring_trivial_extension(ring_cyclic(2), 1)
    assert r.order == 4
    got = tuple(i.elements for i in ideals(r))
    assert got == tuple(brute_force_ideals(r))
    assert [len(i) for i in got] == [1, 2, 4]


@pytest.mark.parametrize("n,expected", [
    (6, [(0,), (0, 3), (0, 2, 4), (0, 1, 2, 3, 4, 5)]),
    (4, [(0,), (0, 2), (0, 1, 2, 3)]),
    (2, [(0,), (0, 1)]),
])
def test_ideals_of_cyclic_match_oracle(n, expected):
    r = ring_cyclic(n)
    got = sorted(i.elements for i in ideals(r))
    assert got == sorted(brute_force_ideals(r))
    assert sorted(got, key=lambda t: (len(t), t)) == expected


def test_ideals_closed_under_sum_and_intersection():
    for r in (ring_cyclic(6), ring_trivial_extension(ring_cyclic(2), 2)):
        ids = ideals(r)
        byset = {frozenset(i.elements) for i in ids}
        for a in ids:
            for b in ids:
                inter = frozenset(set(a.elements) & set(b.elements))
                assert inter in byset
                total = frozenset(r.a(x, y) for x in a.elements for y in b.elements)
                assert total in byset


def test_ring_product_and_quotient():
    z2, z3 = ring_cyclic(2), ring_cyclic(3)
    p = ring_product(z2, z3)
    assert p.order == 6
    validate_ring(p.add_rows(), p.mul_rows())
    z6 = ring_cyclic(6)
    ids = ideals(z6)
    q = ring_quotient(z6, next(i for i in ids if len(i) == 3))
    assert q.order == 2
    validate_ring(q.add_rows(), q.mul_rows())


def test_ideal_oracle_on_trivial_extension():
    r = ring_trivial_extension(ring_cyclic(2), 2)
    assert [i.elements for i in ideals(r)] == brute_force_ideals(r)
