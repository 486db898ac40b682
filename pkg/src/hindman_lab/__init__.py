"""Finite laboratory for dense sum trees.

Bounded-universe stand-ins for density notions on the naturals, families
of sets with qualifying intersections, a largeness game, and tree searches
that certify monochromatic subset-sum structure, with slow exhaustive
oracles to referee all of it.
"""

from .errors import (
    BothFailError,
    CapExceededError,
    ClosureFailedError,
    DigestMismatchError,
    EmptyFamilyError,
    GuidedFailedError,
    LabError,
    NoColorError,
    NotFoundError,
    NoTreeError,
    NoWitnessError,
    PreconditionFailedError,
    StarFailedError,
    SurrogateBreakdown,
    TooLargeError,
    UsageError,
)
from .families import (
    SetFamily,
    good_shifts,
    intersection_close,
    is_semigroup,
    pfip,
    semigroup_closure,
    shift_transfer,
    split_extend,
    tilde_in,
)
from .largeness import LargenessConfig, color_split, is_large, star_set
from .oracle import colorings_oracle, pfip_oracle, tree_oracle
from .props import (
    AxiomReport,
    Banach,
    DivProp,
    HitSet,
    Infinite,
    Recip,
    Syndetic,
    axiom_report,
    prop_from_json,
    prop_to_json,
    shipped_props,
)
from .sets import IntSet, Universe, finite_sums, intersect_all
from .trees import (
    Coloring,
    TreeCert,
    build_tree_exact,
    build_tree_guided,
    exists_tree_exact,
    find_tree_exact,
    threshold,
    verify_tree,
)

__version__ = "0.1.0"

__all__ = [
    "Banach", "Coloring", "DivProp", "HitSet", "Infinite", "IntSet",
    "LargenessConfig", "Recip", "SetFamily", "Syndetic", "TreeCert",
    "Universe", "axiom_report", "AxiomReport", "build_tree_exact",
    "build_tree_guided", "color_split", "colorings_oracle",
    "exists_tree_exact", "find_tree_exact", "finite_sums", "good_shifts",
    "intersect_all", "intersection_close", "is_large", "is_semigroup",
    "pfip", "pfip_oracle", "prop_from_json", "prop_to_json",
    "semigroup_closure", "shift_transfer", "shipped_props", "split_extend",
    "star_set", "threshold", "tilde_in", "tree_oracle", "verify_tree",
    "LabError", "SurrogateBreakdown", "BothFailError", "CapExceededError",
    "ClosureFailedError", "DigestMismatchError", "EmptyFamilyError",
    "GuidedFailedError", "NoColorError", "NoTreeError", "NotFoundError",
    "NoWitnessError", "PreconditionFailedError", "StarFailedError",
    "TooLargeError", "UsageError",
]
