"""Families of sets with qualifying intersections.

A family has the P-fip when the intersection of any nonempty subfamily
qualifies under the property P. Because every property here is monotone,
checking the full intersection suffices; the exhaustive subfamily check
lives in the oracle module and stays independent of this one.

A semigroup-like family is additionally closed under pairwise intersection
and passes, for each member X, the shift test: the set of offsets n at
which the family's intersection is forced into the n-shift of X must itself
absorb the intersection. Shifts are only observable below the margin M;
positions that fall off the top edge of the universe are excused, and
offsets above M are taken on faith. That optimism is the price of a
bounded universe, and it is what the breakdown errors report on when it
runs out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    BothFailError,
    CapExceededError,
    ClosureFailedError,
    NoWitnessError,
    PreconditionFailedError,
    UsageError,
)
from .props import DivProp
from .sets import IntSet, Universe, intersect_all, mask_range

DEFAULT_CLOSURE_BUDGET = 4096


@dataclass(frozen=True)
class SetFamily:
    """Ordered, duplicate-free collection of sets over one universe."""

    universe: Universe
    members: tuple[IntSet, ...]

    def __init__(self, universe: Universe, members: Iterable[IntSet] = ()):
        object.__setattr__(self, "universe", universe)
        seen: dict[int, IntSet] = {}
        for xs in members:
            if xs.universe != universe:
                raise ValueError("family members must share one universe")
            seen.setdefault(xs.mask, xs)
        object.__setattr__(self, "members", tuple(seen.values()))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[IntSet]:
        return iter(self.members)

    def __contains__(self, xs: IntSet) -> bool:
        return any(m.mask == xs.mask for m in self.members)

    def with_member(self, xs: IntSet) -> "SetFamily":
        if xs in self:
            return self
        return SetFamily(self.universe, self.members + (xs,))

    def with_members(self, more: Iterable[IntSet]) -> "SetFamily":
        fam = self
        for xs in more:
            fam = fam.with_member(xs)
        return fam

    def intersection(self) -> IntSet:
        return intersect_all(self.members)

    def to_json(self) -> dict:
        return {"n": self.universe.n,
                "members": [m.to_list() for m in self.members]}

    @classmethod
    def from_json(cls, doc: dict) -> "SetFamily":
        try:
            u = Universe(int(doc["n"]))
            members = [IntSet(u, [int(x) for x in row]) for row in doc["members"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad family document: {exc}") from None
        return cls(u, members)


def pfip(family: SetFamily, prop: DivProp) -> bool:
    """Every subfamily intersection qualifies; by monotonicity the full
    intersection decides it."""
    return prop.holds(family.intersection())


def tilde_in(xs: IntSet, family: SetFamily) -> bool:
    """xs absorbs the family: the family intersection sits inside xs."""
    return family.intersection() <= xs


def shift_obligation_ok(core: IntSet, xs: IntSet, n: int) -> bool:
    """Does the core force the n-shift of xs, up to the top edge?

    Positions in [N-n, N) of the shifted set have fallen off the universe
    and are excused.
    """
    nn = xs.universe.n
    visible = core.mask & mask_range(0, nn - n)
    return visible & ~(xs.mask >> n) == 0


def good_shifts(family: SetFamily, xs: IntSet, prop: DivProp) -> IntSet:
    """Offsets at which the family forces the shift of xs.

    Offsets up to the margin are tested against the family intersection;
    everything above the margin is granted. Offset 0 always qualifies.
    """
    u = family.universe
    margin = prop.margin_for(u)
    core = family.intersection()
    mask = mask_range(margin + 1, u.n)
    for n in range(0, min(margin, u.n - 1) + 1):
        if shift_obligation_ok(core, xs, n):
            mask |= 1 << n
    return IntSet.from_mask(u, mask)


def shift_test_ok(family: SetFamily, xs: IntSet, prop: DivProp) -> bool:
    return tilde_in(good_shifts(family, xs, prop), family)


def is_intersection_closed(family: SetFamily) -> bool:
    masks = {m.mask for m in family.members}
    items = family.members
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i].mask & items[j].mask not in masks:
                return False
    return True


def is_semigroup(family: SetFamily, prop: DivProp) -> bool:
    """P-fip, closed under pairwise intersection, and every member passes
    the shift test."""
    if len(family) == 0:
        return False
    if not pfip(family, prop):
        return False
    if not is_intersection_closed(family):
        return False
    return all(shift_test_ok(family, xs, prop) for xs in family)


def intersection_close(family: SetFamily, budget: int = DEFAULT_CLOSURE_BUDGET) -> SetFamily:
    """Close under pairwise intersection, spending budget on new members."""
    masks = {m.mask for m in family.members}
    out = list(family.members)
    added = 0
    frontier = list(family.members)
    while frontier:
        nxt: list[IntSet] = []
        for a in frontier:
            for b in out:
                m = a.mask & b.mask
                if m in masks:
                    continue
                added += 1
                if added > budget:
                    raise CapExceededError(
                        f"intersection closure exceeded budget {budget}")
                xs = IntSet.from_mask(family.universe, m)
                masks.add(m)
                out.append(xs)
                nxt.append(xs)
        frontier = nxt
    return SetFamily(family.universe, out)


def split_extend(family: SetFamily, xs: IntSet, prop: DivProp) -> SetFamily:
    """Extend by xs or by its complement, whichever keeps the P-fip.

    The positive side is tried first. If neither side survives, the
    property was not partition regular enough for this family and we give
    that up loudly.
    """
    cand = family.with_member(xs)
    if pfip(cand, prop):
        return cand
    cand = family.with_member(xs.complement())
    if pfip(cand, prop):
        return cand
    raise BothFailError(
        "neither the set nor its complement preserves the family's fip")


def semigroup_closure(family: SetFamily, prop: DivProp,
                      budget: int = DEFAULT_CLOSURE_BUDGET) -> SetFamily:
    """Grow a P-fip family into a semigroup-like one.

    Alternates intersection closure with repairing the first member that
    fails the shift test, by adjoining its good-offsets set. Each repair
    strictly adds a member (a set already present absorbs the intersection
    trivially), so with the budget this terminates.
    """
    if len(family) == 0:
        raise PreconditionFailedError("cannot close an empty family")
    if not pfip(family, prop):
        raise PreconditionFailedError("family lacks the fip to begin with")
    fam = intersection_close(family, budget)
    spent = len(fam) - len(family)
    while True:
        bad = None
        for xs in fam:
            if not shift_test_ok(fam, xs, prop):
                bad = xs
                break
        if bad is None:
            return fam
        ys = good_shifts(fam, bad, prop)
        if not prop.holds(fam.intersection() & ys):
            margin = prop.margin_for(fam.universe)
            missing = [n for n in range(margin + 1) if n not in ys]
            raise ClosureFailedError(
                "adjoining the good-offsets set would kill the fip",
                offending=missing)
        spent += 1
        if spent > budget:
            raise CapExceededError(f"semigroup closure exceeded budget {budget}")
        fam = fam.with_member(ys)
        before = len(fam)
        fam = intersection_close(fam, budget - spent)
        spent += len(fam) - before


@dataclass(frozen=True)
class ShiftTransferResult:
    family: SetFamily
    prefix: tuple[int, ...]
    good: IntSet


def shift_transfer(family: SetFamily, a: IntSet, s: IntSet,
                   prop: DivProp) -> ShiftTransferResult:
    """Move failure of padded self-shifts of s into blocking sets for a.

    Preconditions: the family is semigroup-like; adjoining the complements
    of all shifts of a at offsets outside s keeps the fip; adjoining the
    padded shifts of s at offsets inside s kills it. The failure is pinned
    to a minimal ascending prefix F of s, and the conclusion adjoins, for
    every good offset m up to the margin, the union over n in F of the
    complements of the (n+m)-shifts of a. The returned family keeps the
    fip; the exhaustive check of that claim lives with the oracles.
    """
    u = family.universe
    nn = u.n
    if a.universe != u or s.universe != u:
        raise ValueError("arguments must share the family's universe")
    if not is_semigroup(family, prop):
        raise PreconditionFailedError("family is not semigroup-like")

    outside = [a.shift(n).complement() for n in range(nn) if n not in s]
    if not prop.holds(intersect_all(list(family.members) + outside)
                      if outside else family.intersection()):
        raise PreconditionFailedError(
            "complements of off-s shifts of a must preserve the fip")

    core = family.intersection()
    inside = core
    prefix: list[int] = []
    failed = False
    for n in s:
        prefix.append(n)
        inside = inside & s.shift_padded(n)
        if not prop.holds(inside):
            failed = True
            break
    if not failed:
        raise PreconditionFailedError(
            "padded self-shifts of s at offsets in s must break the fip")

    margin = prop.margin_for(u)
    good = good_shifts(family, core, prop)

    blockers: list[IntSet] = []
    for m in good:
        if m > margin:
            break
        blk = u.empty()
        for n in prefix:
            blk = blk | a.shift(n + m).complement()
        blockers.append(blk)
    out = family.with_members(blockers)
    if not pfip(out, prop):
        raise NoWitnessError(
            "transferred blocking sets failed to keep the fip; the margin "
            "was too tight for this instance")
    return ShiftTransferResult(out, tuple(prefix), good)
