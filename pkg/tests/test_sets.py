"""Bitmask set core: construction, algebra, shifts, serialization."""

import itertools
import random

import pytest

from hindman_lab import EmptyFamilyError, IntSet, Universe, finite_sums, intersect_all
from hindman_lab.sets import mask_range, shift, signed


def test_mask_range():
    assert mask_range(0, 4) == 0b1111
    assert mask_range(2, 5) == 0b11100
    assert mask_range(3, 3) == 0
    assert mask_range(5, 2) == 0


def test_universe_validation():
    with pytest.raises(ValueError):
        Universe(0)
    u = Universe(8)
    assert u.full_mask == 0xFF
    assert len(u.full()) == 8
    assert len(u.empty()) == 0
    assert u.interval(3, 6).to_list() == [3, 4, 5]
    # clamped at the edges
    assert u.interval(-2, 100).to_list() == list(range(8))


def test_intset_basics():
    u = Universe(16)
    a = IntSet(u, [1, 3, 5])
    assert 3 in a and 4 not in a
    assert len(a) == 3
    assert list(a) == [1, 3, 5]
    assert a.to_list() == [1, 3, 5]
    assert bool(a) and not bool(u.empty())
    with pytest.raises(ValueError):
        IntSet(u, [16])
    with pytest.raises(ValueError):
        IntSet.from_mask(u, 1 << 16)


def test_intset_algebra():
    u = Universe(12)
    a = IntSet(u, [0, 2, 4, 6])
    b = IntSet(u, [4, 6, 8])
    assert (a & b).to_list() == [4, 6]
    assert (a | b).to_list() == [0, 2, 4, 6, 8]
    assert (a - b).to_list() == [0, 2]
    assert b <= (a | b)
    assert not (a <= b)
    assert a.complement().to_list() == [1, 3, 5, 7, 8, 9, 10, 11]


def test_shift_drops_top():
    u = Universe(10)
    a = IntSet(u, [0, 3, 8, 9])
    assert a.shift(3).to_list() == [0, 5, 6]
    assert shift(a, 3).to_list() == [0, 5, 6]
    assert a.shift(0).to_list() == a.to_list()


def test_shift_padded_grants_top():
    u = Universe(10)
    a = IntSet(u, [0, 3])
    # shifted content plus the unobservable stripe [7, 10)
    assert a.shift_padded(3).to_list() == [0, 7, 8, 9]
    assert a.shift_padded(0).to_list() == [0, 3]


def test_signed():
    u = Universe(6)
    a = IntSet(u, [1, 2])
    assert signed(1, a).to_list() == [1, 2]
    assert signed(-1, a).to_list() == [0, 3, 4, 5]
    with pytest.raises(ValueError):
        signed(0, a)


def test_finite_sums_against_enumeration():
    rng = random.Random(42)
    for _ in range(50):
        xs = [rng.randint(1, 30) for _ in range(rng.randint(0, 6))]
        expect = {0}
        for k in range(1, len(set(xs)) + 1):
            for combo in itertools.combinations(sorted(set(xs)), k):
                expect.add(sum(combo))
        assert finite_sums(xs) == expect


def test_intersect_all():
    u = Universe(8)
    sets = [IntSet(u, [0, 1, 2, 3]), IntSet(u, [1, 3, 5]), IntSet(u, [3, 1])]
    assert intersect_all(sets).to_list() == [1, 3]
    with pytest.raises(EmptyFamilyError):
        intersect_all([])


def test_json_roundtrip():
    from hindman_lab.sets import intset_from_json, intset_to_json

    u = Universe(20)
    a = IntSet(u, [0, 7, 19])
    doc = intset_to_json(a)
    assert doc == {"n": 20, "members": [0, 7, 19]}
    assert intset_from_json(doc).mask == a.mask
