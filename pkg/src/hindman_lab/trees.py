"""Sum trees inside a colored initial segment of the positive integers.

A depth-d tree for color i picks nested finite sets F of positive
integers, ascending along each branch, such that every nonzero subset sum
of F lands in color class i (and below the segment bound). Interior nodes
must offer a set of viable children that qualifies under the property P;
leaves sit at depth d exactly.

Two builders produce certificates. The exact one searches the whole
segment with bitmask arithmetic: the candidate mask of a node F is
obtained from its parent's by one shift-and-intersect, which encodes all
new subset sums at once, and a monotone prune cuts branches whose raw
candidate set already fails P. The guided one walks the largeness
constructions instead and is allowed to fail; when it does, it raises a
breakdown error rather than falling back to search, because the failure is
the interesting part.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import (
    DigestMismatchError,
    GuidedFailedError,
    NotFoundError,
    NoTreeError,
    PreconditionFailedError,
    SurrogateBreakdown,
    UsageError,
)
from .families import SetFamily
from .largeness import LargenessConfig, color_split, star_set
from .props import DivProp, prop_from_json, prop_to_json
from .sets import IntSet, Universe, mask_range


@dataclass(frozen=True)
class Coloring:
    """Assignment of colors 0..r-1 to the integers 1..n-1."""

    n: int
    r: int
    colors: tuple[int, ...]

    def __init__(self, n: int, r: int, colors):
        colors = tuple(int(c) for c in colors)
        if n < 2:
            raise ValueError("need n >= 2")
        if r < 1:
            raise ValueError("need r >= 1")
        if len(colors) != n - 1:
            raise ValueError(f"expected {n - 1} colors, got {len(colors)}")
        if any(not 0 <= c < r for c in colors):
            raise ValueError("colors must lie in [0, r)")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "colors", colors)

    def color_of(self, m: int) -> int:
        if not 1 <= m < self.n:
            raise ValueError(f"{m} is not a colored integer")
        return self.colors[m - 1]

    def class_mask(self, i: int) -> int:
        mask = 0
        for m, c in enumerate(self.colors, start=1):
            if c == i:
                mask |= 1 << m
        return mask

    def class_set(self, i: int, universe: Universe | None = None) -> IntSet:
        u = universe or Universe(self.n)
        return IntSet.from_mask(u, self.class_mask(i))

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, doc: dict) -> "Coloring":
        try:
            return cls(int(doc["n"]), int(doc["r"]), doc["colors"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad coloring document: {exc}") from None

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True,
                          separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    @classmethod
    def random(cls, n: int, r: int, seed: int = 0) -> "Coloring":
        rng = random.Random(seed)
        return cls(n, r, tuple(rng.randrange(r) for _ in range(n - 1)))


@dataclass(frozen=True)
class TreeCert:
    """A materialized tree, portable enough to re-check from scratch."""

    color: int
    prop: DivProp
    nodes: tuple[tuple[int, ...], ...]
    coloring_digest: str

    @property
    def tree_depth(self) -> int:
        return max(len(f) for f in self.nodes)

    def to_json(self) -> dict:
        return {"color": self.color, "prop": prop_to_json(self.prop),
                "nodes": [list(f) for f in self.nodes],
                "coloring_digest": self.coloring_digest}

    @classmethod
    def from_json(cls, doc: dict) -> "TreeCert":
        try:
            nodes = tuple(sorted(tuple(int(m) for m in f) for f in doc["nodes"]))
            return cls(int(doc["color"]), prop_from_json(doc["prop"]),
                       nodes, str(doc["coloring_digest"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad certificate document: {exc}") from None


# -- exact search ------------------------------------------------------------


def _root_viable(coloring: Coloring, color: int, prop: DivProp,
                 depth: int, memo: dict) -> tuple[Universe, int, int]:
    if depth < 1:
        raise UsageError("depth must be >= 1")
    u = Universe(coloring.n)
    a = coloring.class_mask(color)

    def viable(pre: int, last: int, rem: int) -> int:
        cand = pre & mask_range(last + 1, u.n)
        if rem <= 1:
            return cand
        key = (pre, last, rem)
        got = memo.get(key)
        if got is not None:
            return got
        out = 0
        # a branch whose raw candidates already fail P cannot be saved by
        # filtering, so it dies here
        if prop.holds(IntSet.from_mask(u, cand)):
            m = cand
            while m:
                low = m & -m
                pos = low.bit_length() - 1
                m ^= low
                child = viable(pre & (pre >> pos), pos, rem - 1)
                if prop.holds(IntSet.from_mask(u, child)):
                    out |= low
        memo[key] = out
        return out

    return u, a, viable(a, 0, depth)


def exists_tree_exact(coloring: Coloring, color: int, prop: DivProp,
                      depth: int) -> bool:
    memo: dict = {}
    u, _, root = _root_viable(coloring, color, prop, depth, memo)
    return prop.holds(IntSet.from_mask(u, root))


def build_tree_exact(coloring: Coloring, color: int, prop: DivProp,
                     depth: int) -> TreeCert:
    """Full-width certificate for one color, or NoTreeError."""
    memo: dict = {}
    u, a, root = _root_viable(coloring, color, prop, depth, memo)
    if not prop.holds(IntSet.from_mask(u, root)):
        raise NoTreeError(
            f"color {color} admits no depth-{depth} tree on [1, {coloring.n})")

    def viable(pre: int, last: int, rem: int) -> int:
        if rem <= 1:
            return pre & mask_range(last + 1, u.n)
        return memo[(pre, last, rem)]

    nodes: list[tuple[int, ...]] = []

    def walk(prefix: tuple[int, ...], pre: int, last: int, rem: int) -> None:
        nodes.append(prefix)
        if rem == 0:
            return
        m = viable(pre, last, rem)
        while m:
            low = m & -m
            pos = low.bit_length() - 1
            m ^= low
            walk(prefix + (pos,), pre & (pre >> pos), pos, rem - 1)

    walk((), a, 0, depth)
    return TreeCert(color, prop, tuple(sorted(nodes)), coloring.digest())


def _exact_task(payload: dict) -> tuple[int, dict | None]:
    coloring = Coloring.from_json(payload["coloring"])
    prop = prop_from_json(payload["prop"])
    try:
        cert = build_tree_exact(coloring, payload["color"], prop,
                                payload["depth"])
    except NoTreeError:
        return payload["color"], None
    return payload["color"], cert.to_json()


def find_tree_exact(coloring: Coloring, prop: DivProp, depth: int,
                    color: int | None = None,
                    jobs: int | None = None) -> TreeCert:
    """Certificate for the lowest color that admits one.

    With jobs > 1 the colors are searched in parallel processes; the answer
    does not depend on scheduling because every color reports and the
    lowest winner is taken.
    """
    if color is not None:
        return build_tree_exact(coloring, color, prop, depth)
    if jobs is not None and jobs > 1 and coloring.r > 1:
        payloads = [{"coloring": coloring.to_json(), "prop": prop_to_json(prop),
                     "color": i, "depth": depth} for i in range(coloring.r)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_exact_task, payloads))
        for i in range(coloring.r):
            if results[i] is not None:
                return TreeCert.from_json(results[i])
        raise NoTreeError(
            f"no color admits a depth-{depth} tree on [1, {coloring.n})")
    for i in range(coloring.r):
        try:
            return build_tree_exact(coloring, i, prop, depth)
        except NoTreeError:
            continue
    raise NoTreeError(
        f"no color admits a depth-{depth} tree on [1, {coloring.n})")


# -- guided search -----------------------------------------------------------


def build_tree_guided(coloring: Coloring, prop: DivProp, depth: int,
                      cfg: LargenessConfig | None = None) -> TreeCert:
    """Certificate grown from the largeness constructions, or a breakdown.

    The color is chosen by splitting over the trivial family, children come
    from offset sets of the star construction, and subtrees that break down
    are trimmed. If trimming thins a node's children below the property,
    the whole attempt fails; no fallback to exact search.
    """
    if depth < 1:
        raise UsageError("depth must be >= 1")
    cfg = cfg or LargenessConfig()
    u = Universe(coloring.n)
    trivial = SetFamily(u, [u.full()])
    classes = [coloring.class_set(i, u) for i in range(coloring.r)]
    color, fam0 = color_split(classes, trivial, prop, cfg)
    a = classes[color]

    def grow(prefix: tuple[int, ...], a_f: IntSet, fam: SetFamily,
             rem: int) -> list[tuple[int, ...]]:
        if rem == 0:
            return [prefix]
        fam2, b = star_set(a_f, fam, prop, cfg)
        last = prefix[-1] if prefix else 0
        kept: dict[int, list[tuple[int, ...]]] = {}
        for m in b:
            if m <= last:
                continue
            try:
                kept[m] = grow(prefix + (m,), a_f & a_f.shift(m), fam2,
                               rem - 1)
            except (SurrogateBreakdown, PreconditionFailedError):
                continue
        if not prop.holds(IntSet(u, list(kept))):
            raise GuidedFailedError(
                f"children of node {list(prefix)} thinned out below the "
                f"property")
        out = [prefix]
        for m in sorted(kept):
            out.extend(kept[m])
        return out

    nodes = grow((), a, fam0, depth)
    return TreeCert(color, prop, tuple(sorted(nodes)), coloring.digest())


# -- verification ------------------------------------------------------------


def verify_tree(cert: TreeCert, coloring: Coloring,
                prop: DivProp | None = None) -> bool:
    """Re-check a certificate from its serialized content alone.

    Subset sums are recomputed here by explicit enumeration; nothing is
    shared with the builders' incremental masks. A digest mismatch is an
    error (wrong coloring file), a property mismatch is just a False.
    """
    if cert.coloring_digest != coloring.digest():
        raise DigestMismatchError("certificate was issued for a different "
                                  "coloring")
    if prop is not None and prop_to_json(prop) != prop_to_json(cert.prop):
        return False
    check = cert.prop if prop is None else prop
    if not 0 <= cert.color < coloring.r:
        return False
    node_set = set(cert.nodes)
    if () not in node_set:
        return False
    n = coloring.n
    u = Universe(n)
    depth = max(len(f) for f in node_set)
    for f in node_set:
        if any(m < 1 for m in f):
            return False
        if list(f) != sorted(set(f)):
            return False
        if f and f[:-1] not in node_set:
            return False
        for k in range(1, len(f) + 1):
            for combo in itertools.combinations(f, k):
                s = sum(combo)
                if s >= n or coloring.color_of(s) != cert.color:
                    return False
    for f in node_set:
        if len(f) == depth:
            continue
        kids = [g[-1] for g in node_set if len(g) == len(f) + 1 and g[:-1] == f]
        if not check.holds(IntSet(u, kids)):
            return False
    return True


# -- thresholds --------------------------------------------------------------


def colorings_first_pinned(n: int, r: int):
    """All colorings of [1, n) with integer 1 pinned to color 0.

    Color names are interchangeable, so pinning loses no generality and
    divides the work by r.
    """
    for rest in itertools.product(range(r), repeat=n - 2):
        yield Coloring(n, r, (0, *rest))


def _admits_any(coloring: Coloring, prop: DivProp, depth: int) -> bool:
    return any(exists_tree_exact(coloring, i, prop, depth)
               for i in range(coloring.r))


def _threshold_task(payload: dict) -> list[int] | None:
    prop = prop_from_json(payload["prop"])
    for colors in payload["chunk"]:
        coloring = Coloring(payload["n"], payload["r"], colors)
        if not _admits_any(coloring, prop, payload["depth"]):
            return list(colors)
    return None


def threshold(r: int, depth: int, prop: DivProp, n_max: int,
              jobs: int | None = None) -> int:
    """Least n <= n_max such that every r-coloring of [1, n) admits a
    depth-`depth` tree for some color."""
    if r < 1 or depth < 1 or n_max < 2:
        raise UsageError("need r >= 1, depth >= 1, n_max >= 2")
    for n in range(2, n_max + 1):
        if jobs is not None and jobs > 1:
            all_colors = [list(c.colors) for c in colorings_first_pinned(n, r)]
            step = max(1, len(all_colors) // (4 * jobs))
            chunks = [all_colors[i:i + step]
                      for i in range(0, len(all_colors), step)]
            payloads = [{"n": n, "r": r, "depth": depth,
                         "prop": prop_to_json(prop), "chunk": ch}
                        for ch in chunks]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                ok = all(res is None for res in
                         pool.map(_threshold_task, payloads))
        else:
            ok = all(_admits_any(c, prop, depth)
                     for c in colorings_first_pinned(n, r))
        if ok:
            return n
    raise NotFoundError(f"no threshold at or below {n_max}")
