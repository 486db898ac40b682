"""Divisibility-style set properties over a bounded universe.

Each property is a finite stand-in for a notion of "substantial subset of
the naturals": big enough cardinality, window density, bounded gaps on a
window, reciprocal mass, or intersection with a pinned witness set. All of
them are monotone upward. Partition regularity and shift invariance only
survive truncation in relaxed forms, so the axiom harness checks those two
statistically: partitions against documented parameter halving, shifts
through one-directional witness transport up to the margin.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Protocol, runtime_checkable

import numpy as np

from .errors import UsageError
from .sets import IntSet, Universe, mask_range

RELAXED_PASS_RATE = 0.99


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise ValueError(f"cannot read {value!r} as a rational")


def _dilate(mask: int, g: int) -> int:
    """Bit i set iff mask has a bit in [i, i+g)."""
    out, s = mask, 1
    while s < g:
        t = min(s, g - s)
        out |= out >> t
        s += t
    return out


def _run_starts(mask: int, length: int) -> int:
    """Bit i set iff bits i .. i+length-1 are all set in mask."""
    out, s = mask, 1
    while s < length:
        t = min(s, length - s)
        out &= out >> t
        s += t
    return out


def _window_counts(xs: IntSet, w: int) -> np.ndarray:
    """counts[a] = |xs ∩ [a, a+w)| for every window start a in [0, N-w]."""
    n = xs.universe.n
    buf = xs.mask.to_bytes((n + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")[:n]
    csum = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
    return csum[w:] - csum[: n - w + 1]


@lru_cache(maxsize=8)
def _recip_weights(n: int) -> tuple[int, list[int]]:
    """Common denominator L = lcm(1..n-1) and integer weights L // x."""
    scale = math.lcm(*range(1, n)) if n > 1 else 1
    return scale, [0] + [scale // x for x in range(1, n)]


@runtime_checkable
class PropLike(Protocol):
    """What the axiom harness needs from a property object."""

    shift_invariant: bool

    def holds(self, xs: IntSet) -> bool: ...

    def halved(self) -> "PropLike": ...

    def margin_for(self, universe: Universe) -> int: ...

    def holds_in_tail(self, xs: IntSet, n: int) -> bool: ...


@dataclass(frozen=True)
class DivProp:
    """Base class carrying the shift budget shared by every variant."""

    margin: int | None = field(default=None, kw_only=True)

    variant = "?"
    shift_invariant = True

    def margin_for(self, universe: Universe) -> int:
        if self.margin is not None:
            return self.margin
        return universe.n // 4

    def holds(self, xs: IntSet) -> bool:
        raise NotImplementedError

    def halved(self) -> "DivProp":
        raise NotImplementedError

    def holds_in_tail(self, xs: IntSet, n: int) -> bool:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        doc = {"variant": self.variant, **self.params()}
        if self.margin is not None:
            doc["margin"] = self.margin
        return doc


@dataclass(frozen=True)
class Infinite(DivProp):
    """At least k members; the truncation of "X is infinite"."""

    k: int

    variant = "INFINITE"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def holds(self, xs: IntSet) -> bool:
        return len(xs) >= self.k

    def halved(self) -> Infinite:
        return Infinite((self.k + 1) // 2, margin=self.margin)

    def holds_in_tail(self, xs: IntSet, n: int) -> bool:
        return (xs.mask >> n).bit_count() >= self.k

    def params(self) -> dict:
        return {"k": self.k}


@dataclass(frozen=True)
class Banach(DivProp):
    """Some length-w window holds at least delta * w members."""

    delta: Fraction
    w: int

    variant = "BANACH"

    def __post_init__(self):
        object.__setattr__(self, "delta", _as_fraction(self.delta))
        if not 0 < self.delta <= 1:
            raise ValueError("delta must be in (0, 1]")
        if self.w < 1:
            raise ValueError("w must be >= 1")

    def _check(self, universe: Universe) -> None:
        if self.w > universe.n:
            raise ValueError(f"window {self.w} exceeds universe {universe.n}")

    def holds(self, xs: IntSet) -> bool:
        self._check(xs.universe)
        best = int(_window_counts(xs, self.w).max())
        return best * self.delta.denominator >= self.delta.numerator * self.w

    def halved(self) -> Banach:
        return Banach(self.delta / 2, self.w, margin=self.margin)

    def holds_in_tail(self, xs: IntSet, n: int) -> bool:
        self._check(xs.universe)
        counts = _window_counts(xs, self.w)
        if n >= len(counts):
            return False
        best = int(counts[n:].max())
        return best * self.delta.denominator >= self.delta.numerator * self.w

    def params(self) -> dict:
        return {"delta": str(self.delta), "w": self.w}


@dataclass(frozen=True)
class Syndetic(DivProp):
    """Some length-w window in which every length-g subwindow is inhabited.

    Equivalently: members at most g apart across the window, with a member
    among the first g cells and among the last g cells.
    """

    g: int
    w: int

    variant = "SYNDETIC"

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be >= 1")
        if self.w < self.g:
            raise ValueError("w must be >= g")

    def _check(self, universe: Universe) -> None:
        if self.w > universe.n:
            raise ValueError(f"window {self.w} exceeds universe {universe.n}")

    def _witness_starts(self, xs: IntSet) -> int:
        n = xs.universe.n
        hit = _dilate(xs.mask, self.g) & mask_range(0, n - self.g + 1)
        return _run_starts(hit, self.w - self.g + 1) & mask_range(0, n - self.w + 1)

    def holds(self, xs: IntSet) -> bool:
        self._check(xs.universe)
        return self._witness_starts(xs) != 0

    def halved(self) -> Syndetic:
        return Syndetic(min(2 * self.g + 1, self.w), self.w, margin=self.margin)

    def holds_in_tail(self, xs: IntSet, n: int) -> bool:
        self._check(xs.universe)
        return self._witness_starts(xs) >> n != 0

    def params(self) -> dict:
        return {"g": self.g, "w": self.w}


@dataclass(frozen=True)
class Recip(DivProp):
    """Reciprocal mass: sum over members x >= 1 of 1/x reaches s."""

    s: Fraction

    variant = "RECIP"

    def __post_init__(self):
        object.__setattr__(self, "s", _as_fraction(self.s))
        if self.s <= 0:
            raise ValueError("s must be positive")

    def _mass_reaches(self, xs: IntSet, lo: int) -> bool:
        scale, weights = _recip_weights(xs.universe.n)
        total = 0
        for x in IntSet.from_mask(xs.universe, xs.mask & ~mask_range(0, lo)):
            total += weights[x]
        return total * self.s.denominator >= self.s.numerator * scale

    def holds(self, xs: IntSet) -> bool:
        return self._mass_reaches(xs, 1)

    def halved(self) -> Recip:
        return Recip(self.s / 2, margin=self.margin)

    def holds_in_tail(self, xs: IntSet, n: int) -> bool:
        # members <= n would shift onto 0 or below; they cannot carry the witness
        return self._mass_reaches(xs, n + 1)

    def params(self) -> dict:
        return {"s": str(self.s)}


@dataclass(frozen=True)
class HitSet(DivProp):
    """Meets a pinned witness set. Exactly partition regular, not shift invariant."""

    witness: IntSet

    variant = "HITSET"
    shift_invariant = False

    def __post_init__(self):
        if not self.witness:
            raise ValueError("witness set must be nonempty")

    def holds(self, xs: IntSet) -> bool:
        if xs.universe != self.witness.universe:
            raise ValueError("universe mismatch with witness set")
        return xs.mask & self.witness.mask != 0

    def halved(self) -> HitSet:
        return self

    def holds_in_tail(self, xs: IntSet, n: int) -> bool:
        return False  # no transportable witness notion

    def params(self) -> dict:
        return {"members": self.witness.to_list(), "n": self.witness.universe.n}


_VARIANTS = {"INFINITE": Infinite, "BANACH": Banach, "SYNDETIC": Syndetic,
             "RECIP": Recip, "HITSET": HitSet}


def prop_to_json(prop: DivProp) -> dict:
    return prop.to_json()


def prop_from_json(doc: dict) -> DivProp:
    try:
        variant = doc["variant"]
    except (KeyError, TypeError):
        raise UsageError("property document needs a 'variant' field") from None
    margin = doc.get("margin")
    if margin is not None:
        margin = int(margin)
    try:
        if variant == "INFINITE":
            return Infinite(int(doc["k"]), margin=margin)
        if variant == "BANACH":
            return Banach(_as_fraction(doc["delta"]), int(doc["w"]), margin=margin)
        if variant == "SYNDETIC":
            return Syndetic(int(doc["g"]), int(doc["w"]), margin=margin)
        if variant == "RECIP":
            return Recip(_as_fraction(doc["s"]), margin=margin)
        if variant == "HITSET":
            u = Universe(int(doc["n"]))
            return HitSet(IntSet(u, [int(m) for m in doc["members"]]), margin=margin)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad {variant} property: {exc}") from None
    raise UsageError(f"unknown property variant {variant!r} "
                     f"(expected one of {sorted(_VARIANTS)})")


def shipped_props(universe: Universe, margin: int | None = None) -> list[DivProp]:
    """One sane instance of every variant, scaled to the universe."""
    n = universe.n
    return [
        Infinite(max(2, n // 32), margin=margin),
        Banach(Fraction(1, 4), max(4, n // 8), margin=margin),
        Syndetic(max(2, n // 64), max(4, n // 8), margin=margin),
        Recip(Fraction(3, 2), margin=margin),
        HitSet(IntSet(universe, sorted({1, n // 3, (2 * n) // 3})), margin=margin),
    ]


# -- axiom harness ---------------------------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    mode: str  # "exact" | "relaxed" | "not-applicable"
    checked: int
    failures: int

    @property
    def rate(self) -> float:
        return 1.0 if self.checked == 0 else 1.0 - self.failures / self.checked

    @property
    def passed(self) -> bool:
        if self.mode == "not-applicable":
            return True
        if self.mode == "exact":
            return self.failures == 0
        return self.rate >= RELAXED_PASS_RATE

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "mode": self.mode, "checked": self.checked,
                "failures": self.failures, "rate": round(self.rate, 6),
                "passed": self.passed}


@dataclass(frozen=True)
class AxiomReport:
    prop: dict
    universe_n: int
    samples: int
    seed: int
    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"prop": self.prop, "n": self.universe_n, "samples": self.samples,
                "seed": self.seed, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def random_mask(rng, n: int, density: int = 4) -> int:
    """Random n-bit mask; density d/8 for d in 1..7."""
    if not 1 <= density <= 7:
        raise ValueError("density must be in 1..7")
    a, b, c = (rng.getrandbits(n) for _ in range(3))
    picks = {1: a & b & c, 2: a & b, 3: a & (b | c), 4: a,
             5: a | (b & c), 6: a | b, 7: a | b | c}
    return picks[density]


def _densities(rng) -> int:
    return rng.choice((2, 3, 4, 5, 6, 7))


def axiom_report(prop: PropLike, universe: Universe, samples: int = 1000,
                 seed: int = 0) -> AxiomReport:
    """Spot-check the five axioms on pseudorandom sets.

    (1) universe qualifies and (2) the empty set does not: single exact
    checks. (3) monotone on sampled pairs X ⊆ Y: exact. (4) partition
    regularity, relaxed: a random 2-partition of a qualifying set must leave
    one part qualifying under the halved parameters. (5) shift invariance,
    relaxed one-directionally: when the property is witnessed entirely in
    [n, N) for n up to the margin, the n-shift must still qualify.
    """
    rng = random.Random(seed)
    n = universe.n
    full = universe.full()

    ax1 = AxiomCheck("universe-qualifies", "exact", 1, 0 if prop.holds(full) else 1)
    ax2 = AxiomCheck("empty-excluded", "exact", 1,
                     1 if prop.holds(universe.empty()) else 0)

    fails = 0
    for _ in range(samples):
        y = IntSet.from_mask(universe, random_mask(rng, n, _densities(rng)))
        x = IntSet.from_mask(universe, y.mask & random_mask(rng, n, _densities(rng)))
        if prop.holds(x) and not prop.holds(y):
            fails += 1
    ax3 = AxiomCheck("monotone", "exact", samples, fails)

    half = prop.halved()
    checked = fails = 0
    attempts = 0
    while checked < samples and attempts < 20 * samples:
        attempts += 1
        x = IntSet.from_mask(universe, random_mask(rng, n, _densities(rng)))
        if not prop.holds(x):
            continue
        checked += 1
        split = rng.getrandbits(n)
        x0 = IntSet.from_mask(universe, x.mask & split)
        x1 = IntSet.from_mask(universe, x.mask & ~split)
        if not (half.holds(x0) or half.holds(x1)):
            fails += 1
    mode4 = "exact" if getattr(prop, "halved", None) and half is prop else "relaxed"
    ax4 = AxiomCheck("partition-regular", mode4, checked, fails)

    if getattr(prop, "shift_invariant", True):
        margin = prop.margin_for(universe)
        checked = fails = 0
        for _ in range(samples):
            x = IntSet.from_mask(universe, random_mask(rng, n, _densities(rng)))
            k = rng.randint(0, margin)
            if not prop.holds_in_tail(x, k):
                continue
            checked += 1
            if not prop.holds(x.shift(k)):
                fails += 1
        ax5 = AxiomCheck("shift-transport", "exact", checked, fails)
    else:
        ax5 = AxiomCheck("shift-transport", "not-applicable", 0, 0)

    label = prop.to_json() if hasattr(prop, "to_json") else {"repr": repr(prop)}
    return AxiomReport(label, n, samples, seed, (ax1, ax2, ax3, ax4, ax5))
