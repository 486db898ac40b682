"""Largeness of a set relative to a semigroup-like family.

A set A is large for a family V when no adversary, playing up to `depth`
legal extension moves, can reach a family whose fip A breaks. A move
adjoins one set from a fixed pool (padded shifts of A and of the current
members, and pairwise intersections of those), then closes under
intersection; it is legal only if the extended family already passes the
fip and every shift test on its own. No repair moves: an adversary that
may patch a broken shift test afterwards can retreat arbitrarily far into
the granted area above the margin, and largeness stops meaning anything.
For the same reason a candidate must keep at least one member below the
padded top stripe of the universe: two padded shifts with disjoint content
intersect to a block of pure padding, and a set made of nothing but
optimism defeats everyone while saying nothing about A.

On top of the game sit the two constructions that consume it: picking a
color class that stays large, and growing the set of offsets whose shifts
of A remain jointly large.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CapExceededError,
    NoColorError,
    PreconditionFailedError,
    StarFailedError,
)
from .families import (
    DEFAULT_CLOSURE_BUDGET,
    SetFamily,
    intersection_close,
    is_semigroup,
    pfip,
    shift_test_ok,
)
from .props import DivProp
from .sets import IntSet, intersect_all, mask_range


@dataclass(frozen=True)
class LargenessConfig:
    depth: int = 1
    closure_budget: int = DEFAULT_CLOSURE_BUDGET
    pool_cap: int | None = None


def adversary_pool(a: IntSet, family: SetFamily, prop: DivProp,
                   cfg: LargenessConfig) -> tuple[IntSet, ...]:
    """Candidate moves: padded shifts of a and of the members up to the
    margin, plus pairwise intersections of those, minus current members,
    minus anything confined to the padded top stripe, ascending by mask so
    play order is reproducible."""
    u = family.universe
    margin = prop.margin_for(u)
    seen: dict[int, IntSet] = {}
    for b in (a, *family.members):
        for j in range(min(margin, u.n - 1) + 1):
            c = b.shift_padded(j)
            if c.mask:
                seen.setdefault(c.mask, c)
    prim = list(seen.values())
    for i in range(len(prim)):
        for j in range(i + 1, len(prim)):
            m = prim[i].mask & prim[j].mask
            if m and m not in seen:
                seen[m] = IntSet.from_mask(u, m)
    skip = {m.mask for m in family.members}
    observable = mask_range(0, max(u.n - margin, 1))
    pool = sorted((c for c in seen.values()
                   if c.mask not in skip and c.mask & observable),
                  key=lambda c: c.mask)
    if cfg.pool_cap is not None and len(pool) > cfg.pool_cap:
        raise CapExceededError(
            f"adversary pool size {len(pool)} exceeds cap {cfg.pool_cap}")
    return tuple(pool)


def _legal_extension(family: SetFamily, c: IntSet, prop: DivProp,
                     budget: int) -> SetFamily | None:
    try:
        ext = intersection_close(family.with_member(c), budget)
    except CapExceededError:
        return None
    if not pfip(ext, prop):
        return None
    if not all(shift_test_ok(ext, xs, prop) for xs in ext):
        return None
    return ext


def _find_defeat(a: IntSet, family: SetFamily, prop: DivProp,
                 pool: tuple[IntSet, ...], depth: int,
                 budget: int) -> SetFamily | None:
    """Family reachable in at most `depth` moves whose fip a breaks, or
    None. The returned family is itself semigroup-like."""
    if not pfip(family.with_member(a), prop):
        return family
    if depth <= 0:
        return None
    for c in pool:
        if c in family:
            continue
        ext = _legal_extension(family, c, prop, budget)
        if ext is None:
            continue
        found = _find_defeat(a, ext, prop, pool, depth - 1, budget)
        if found is not None:
            return found
    return None


def is_large(a: IntSet, family: SetFamily, prop: DivProp,
             cfg: LargenessConfig | None = None) -> bool:
    cfg = cfg or LargenessConfig()
    if not is_semigroup(family, prop):
        raise PreconditionFailedError("largeness is relative to a semigroup-"
                                      "like family")
    pool = adversary_pool(a, family, prop, cfg)
    return _find_defeat(a, family, prop, pool, cfg.depth,
                        cfg.closure_budget) is None


def color_split(colors: Sequence[IntSet], family: SetFamily, prop: DivProp,
                cfg: LargenessConfig | None = None) -> tuple[int, SetFamily]:
    """First color class that stays large, with the family that witnessed it.

    Classes are tried in order. A defeated class hands its defeating family
    to the next one: whatever killed color i constrains color i+1 too.
    """
    cfg = cfg or LargenessConfig()
    if not colors:
        raise PreconditionFailedError("need at least one color class")
    if not is_semigroup(family, prop):
        raise PreconditionFailedError("family is not semigroup-like")
    union = colors[0]
    for c in colors[1:]:
        union = union | c
    pool = adversary_pool(union, family, prop, cfg)
    if _find_defeat(union, family, prop, pool, cfg.depth,
                    cfg.closure_budget) is not None:
        raise PreconditionFailedError("the union of the classes is not large")
    fam = family
    for i, cls in enumerate(colors):
        pool = adversary_pool(cls, fam, prop, cfg)
        defeat = _find_defeat(cls, fam, prop, pool, cfg.depth,
                              cfg.closure_budget)
        if defeat is None:
            return i, fam
        fam = defeat
    raise NoColorError(f"all {len(colors)} classes were defeated")


def star_set(a: IntSet, family: SetFamily, prop: DivProp,
             cfg: LargenessConfig | None = None) -> tuple[SetFamily, IntSet]:
    """Offsets whose shifts of a stay large, plus the family that supports
    them.

    Scans offsets 1..M keeping a running intersection of shifts of a. When
    the next offset would lose largeness, the family instead absorbs a
    blocking set (union of complements of the offending shifts); when that
    extension is not even legal, the construction has genuinely failed at
    this universe size. At the end the collected offsets must jointly keep
    the fip in their own right, margin-optimistically, and the returned
    offset set B must qualify under the property.
    """
    cfg = cfg or LargenessConfig()
    u = family.universe
    margin = prop.margin_for(u)
    if not is_semigroup(family, prop):
        raise PreconditionFailedError("family is not semigroup-like")
    if not is_large(a, family, prop, cfg):
        raise PreconditionFailedError("a is not large for the family")

    fam = family
    offsets = [0]
    cur = a
    for m in range(1, min(margin, u.n - 1) + 1):
        j = cur & a.shift(m)
        pool = adversary_pool(j, fam, prop, cfg)
        if _find_defeat(j, fam, prop, pool, cfg.depth,
                        cfg.closure_budget) is None:
            offsets.append(m)
            cur = j
            continue
        blk = u.empty()
        for n in (*offsets, m):
            blk = blk | a.shift(n).complement()
        ext = _legal_extension(fam, blk, prop, cfg.closure_budget)
        if ext is None:
            raise StarFailedError(
                f"blocking set for offsets {offsets + [m]} cannot legally "
                f"join the family")
        fam = ext

    s_set = IntSet(u, offsets)
    optimistic = [s_set.shift(n) | u.interval(max(margin + 1 - n, 0), u.n)
                  for n in offsets]
    if not prop.holds(intersect_all(list(fam.members) + optimistic)):
        raise StarFailedError("collected offsets do not keep the fip under "
                              "their own shifts")

    b_mask = 0
    for n in a:
        if n > margin:
            break
        j = a & a.shift(n)
        pool = adversary_pool(j, fam, prop, cfg)
        if _find_defeat(j, fam, prop, pool, cfg.depth,
                        cfg.closure_budget) is None:
            b_mask |= 1 << n
    b = IntSet.from_mask(u, b_mask)
    if not prop.holds(b):
        raise StarFailedError("the qualifying-offset set is itself too thin")
    return fam, b
