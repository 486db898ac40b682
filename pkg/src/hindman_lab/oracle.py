"""Brute-force referees for the fast procedures.

Everything in here decides by exhaustive enumeration and is deliberately
written against the definitions, not against the implementations being
checked: no monotonicity shortcuts, no incremental masks, no shared
helpers beyond the raw set type and the properties themselves. That makes
these slow and small, which is the point; hard caps keep them honest about
what they can referee.
"""

from __future__ import annotations

import itertools

from .errors import TooLargeError
from .props import DivProp
from .sets import IntSet, Universe
from .trees import Coloring

PFIP_CAP = 16
TREE_N_CAP = 12
TREE_DEPTH_CAP = 3
COLORINGS_CAP = 4096


def pfip_oracle(family, prop: DivProp, cap: int = PFIP_CAP) -> bool:
    """Check every nonempty subfamily's intersection, one by one."""
    members = tuple(family)
    if len(members) > cap:
        raise TooLargeError(
            f"pfip oracle capped at {cap} members, got {len(members)}")
    u = members[0].universe if members else None
    for k in range(1, len(members) + 1):
        for combo in itertools.combinations(members, k):
            mask = combo[0].mask
            for xs in combo[1:]:
                mask &= xs.mask
            if not prop.holds(IntSet.from_mask(u, mask)):
                return False
    return True


def tree_oracle(coloring: Coloring, color: int, prop: DivProp,
                depth: int) -> bool:
    """Does any depth-`depth` tree exist for this color? Tiny inputs only.

    At each node, every subset of the arithmetically valid children is
    tried as the offered child set, smallest first.
    """
    n = coloring.n
    if n > TREE_N_CAP:
        raise TooLargeError(f"tree oracle capped at n <= {TREE_N_CAP}, got {n}")
    if depth > TREE_DEPTH_CAP:
        raise TooLargeError(
            f"tree oracle capped at depth <= {TREE_DEPTH_CAP}, got {depth}")
    u = Universe(n)
    in_class = [m for m in range(1, n) if coloring.color_of(m) == color]

    def sums_in_class(f: tuple[int, ...]) -> bool:
        for k in range(1, len(f) + 1):
            for combo in itertools.combinations(f, k):
                s = sum(combo)
                if s >= n or coloring.color_of(s) != color:
                    return False
        return True

    memo: dict[tuple[tuple[int, ...], int], bool] = {}

    def exists(f: tuple[int, ...], rem: int) -> bool:
        if rem == 0:
            return True
        key = (f, rem)
        if key in memo:
            return memo[key]
        last = f[-1] if f else 0
        cand = [m for m in in_class if m > last and sums_in_class(f + (m,))]
        ok = False
        for size in range(len(cand) + 1):
            for picks in itertools.combinations(cand, size):
                if not prop.holds(IntSet(u, picks)):
                    continue
                if all(exists(f + (m,), rem - 1) for m in picks):
                    ok = True
                    break
            if ok:
                break
        memo[key] = ok
        return ok

    return exists((), depth)


def colorings_oracle(n: int, r: int, depth: int, prop: DivProp,
                     cap: int = COLORINGS_CAP) -> dict:
    """Sweep all r-colorings of [1, n), integer 1 pinned to color 0, and
    report whether each admits a tree for some color."""
    total = r ** max(n - 2, 0)
    if total > cap:
        raise TooLargeError(
            f"colorings oracle capped at {cap} colorings, got {total}")
    checked = 0
    first_failing: list[int] | None = None
    for rest in itertools.product(range(r), repeat=max(n - 2, 0)):
        coloring = Coloring(n, r, (0, *rest))
        checked += 1
        if not any(tree_oracle(coloring, i, prop, depth) for i in range(r)):
            first_failing = list(coloring.colors)
            break
    return {"n": n, "r": r, "depth": depth, "colorings_checked": checked,
            "all_admit": first_failing is None,
            "first_failing": first_failing}
