"""Bounded integer sets over a universe [0, N), backed by int bitmasks.

Bit i of the mask records membership of i, so intersection, union,
complement, and shift are single bignum operations (O(N/wordsize)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from .errors import EmptyFamilyError

Sign = Literal[1, -1]


def mask_range(lo: int, hi: int) -> int:
    """Bitmask of [lo, hi); empty when hi <= lo."""
    if hi <= lo:
        return 0
    return ((1 << hi) - 1) & ~((1 << lo) - 1)


@dataclass(frozen=True, order=False)
class Universe:
    """The ambient interval [0, n)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"universe size must be >= 1, got {self.n}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def full(self) -> IntSet:
        return IntSet.from_mask(self, self.full_mask)

    def empty(self) -> IntSet:
        return IntSet.from_mask(self, 0)

    def of(self, members: Iterable[int]) -> IntSet:
        return IntSet(self, members)

    def interval(self, lo: int, hi: int) -> IntSet:
        return IntSet.from_mask(self, mask_range(max(lo, 0), min(hi, self.n)))


@dataclass(frozen=True)
class IntSet:
    """Immutable subset of a Universe."""

    universe: Universe
    mask: int

    def __init__(self, universe: Universe, members: Iterable[int] = ()):
        mask = 0
        for m in members:
            if not 0 <= m < universe.n:
                raise ValueError(f"member {m} outside universe [0, {universe.n})")
            mask |= 1 << m
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, universe: Universe, mask: int) -> IntSet:
        if mask < 0 or mask >> universe.n:
            raise ValueError("mask has bits outside the universe")
        obj = object.__new__(cls)
        object.__setattr__(obj, "universe", universe)
        object.__setattr__(obj, "mask", mask)
        return obj

    # -- container protocol ------------------------------------------------

    def __contains__(self, m: int) -> bool:
        return 0 <= m < self.universe.n and (self.mask >> m) & 1 == 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def to_list(self) -> list[int]:
        return list(self)

    # -- algebra -----------------------------------------------------------

    def _check_same(self, other: IntSet) -> None:
        if self.universe != other.universe:
            raise ValueError("universes differ")

    def __and__(self, other: IntSet) -> IntSet:
        self._check_same(other)
        return IntSet.from_mask(self.universe, self.mask & other.mask)

    def __or__(self, other: IntSet) -> IntSet:
        self._check_same(other)
        return IntSet.from_mask(self.universe, self.mask | other.mask)

    def __sub__(self, other: IntSet) -> IntSet:
        self._check_same(other)
        return IntSet.from_mask(self.universe, self.mask & ~other.mask)

    def __le__(self, other: IntSet) -> bool:
        self._check_same(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> IntSet:
        return IntSet.from_mask(self.universe, self.universe.full_mask & ~self.mask)

    def shift(self, n: int) -> IntSet:
        """{m in [0,N) : m + n in self}. Total for n >= 0; top n positions drop off."""
        if n < 0:
            raise ValueError("shift amount must be >= 0")
        return IntSet.from_mask(self.universe, self.mask >> n)

    def shift_padded(self, n: int) -> IntSet:
        """shift(n) with the unobservable top block [N-n, N) filled in."""
        if n < 0:
            raise ValueError("shift amount must be >= 0")
        nn = self.universe.n
        return IntSet.from_mask(self.universe, (self.mask >> n) | mask_range(max(nn - n, 0), nn))

    def __repr__(self) -> str:
        members = self.to_list()
        if len(members) > 12:
            head = ", ".join(map(str, members[:12]))
            return f"IntSet(n={self.universe.n}, {{{head}, ...}} size={len(members)})"
        return f"IntSet(n={self.universe.n}, {{{', '.join(map(str, members))}}})"


def shift(xs: IntSet, n: int) -> IntSet:
    """Pointwise left shift: {m : m + n in xs}."""
    return xs.shift(n)


def signed(b: Sign, xs: IntSet) -> IntSet:
    """b=1 returns xs unchanged; b=-1 returns its complement in the universe."""
    if b == 1:
        return xs
    if b == -1:
        return xs.complement()
    raise ValueError(f"sign must be 1 or -1, got {b!r}")


def finite_sums(fs: Iterable[int]) -> set[int]:
    """All subset sums of a finite set of integers, 0 included (empty subset).

    Elements are treated as a set; duplicates collapse.
    """
    sums = {0}
    for x in set(fs):
        sums |= {s + x for s in sums}
    return sums


def intersect_all(sets: Iterable[IntSet]) -> IntSet:
    """Intersection of every set in a nonempty collection."""
    it = iter(sets)
    try:
        first = next(it)
    except StopIteration:
        raise EmptyFamilyError("cannot intersect an empty collection") from None
    mask = first.mask
    for xs in it:
        first._check_same(xs)
        mask &= xs.mask
    return IntSet.from_mask(first.universe, mask)


def intset_to_json(xs: IntSet) -> dict:
    return {"n": xs.universe.n, "members": xs.to_list()}


def intset_from_json(doc: dict) -> IntSet:
    return IntSet(Universe(int(doc["n"])), [int(m) for m in doc["members"]])
