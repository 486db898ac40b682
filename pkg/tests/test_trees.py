"""Colorings, certificates, exact and guided search, verification, threshold."""

import random

import pytest

from hindman_lab import (
    Coloring,
    DigestMismatchError,
    GuidedFailedError,
    Infinite,
    NotFoundError,
    NoTreeError,
    SurrogateBreakdown,
    TreeCert,
    UsageError,
    build_tree_exact,
    build_tree_guided,
    exists_tree_exact,
    find_tree_exact,
    threshold,
    verify_tree,
)

PARITY = Coloring(64, 2, [m % 2 for m in range(1, 64)])
P5 = Infinite(5)


def test_coloring_validation():
    with pytest.raises(ValueError):
        Coloring(5, 2, [0, 1, 0])  # wrong length
    with pytest.raises(ValueError):
        Coloring(5, 2, [0, 1, 2, 0])  # color out of range
    c = Coloring(5, 2, [0, 1, 0, 1])
    assert c.color_of(2) == 1
    assert c.class_set(0).to_list() == [1, 3]
    assert c.class_set(1).to_list() == [2, 4]
    with pytest.raises(ValueError):
        c.color_of(0)


def test_coloring_digest_and_random():
    a = Coloring.random(20, 3, seed=1)
    b = Coloring.random(20, 3, seed=1)
    c = Coloring.random(20, 3, seed=2)
    assert a.colors == b.colors
    assert a.digest() == b.digest()
    assert a.digest() != c.digest()
    back = Coloring.from_json(a.to_json())
    assert back.digest() == a.digest()
    with pytest.raises(UsageError):
        Coloring.from_json({"n": 5, "r": 2})


def test_exact_parity_frozen():
    # frozen from calibration: evens carry a 235-node depth-2 tree
    cert = find_tree_exact(PARITY, P5, 2)
    assert cert.color == 0
    assert len(cert.nodes) == 235
    assert cert.tree_depth == 2
    assert verify_tree(cert, PARITY)
    # every node's pairwise sums stay even and inside the segment
    for f in cert.nodes:
        assert all(x % 2 == 0 for x in f)
        assert sum(f) < 64


def test_exact_no_tree():
    tiny = Coloring(5, 2, [0, 1, 0, 1])
    with pytest.raises(NoTreeError):
        find_tree_exact(tiny, P5, 2)
    with pytest.raises(NoTreeError):
        build_tree_exact(PARITY, 1, P5, 2)  # odd sums leave the class


def test_exact_color_restriction_and_depth1():
    cert = build_tree_exact(PARITY, 0, Infinite(10), 1)
    assert cert.tree_depth == 1
    # depth-1 tree is the root plus one qualifying child layer
    assert len(cert.nodes) == 1 + 31
    with pytest.raises(UsageError):
        build_tree_exact(PARITY, 0, P5, 0)


def test_exists_matches_build():
    rng = random.Random(31)
    for _ in range(30):
        c = Coloring.random(24, 2, seed=rng.randrange(10**6))
        for i in range(2):
            exists = exists_tree_exact(c, i, Infinite(2), 2)
            try:
                build_tree_exact(c, i, Infinite(2), 2)
                built = True
            except NoTreeError:
                built = False
            assert exists == built


def test_find_tree_parallel_agrees():
    cert_a = find_tree_exact(PARITY, P5, 2)
    cert_b = find_tree_exact(PARITY, P5, 2, jobs=2)
    assert cert_a.to_json() == cert_b.to_json()


def test_guided_monochromatic_frozen():
    mono = Coloring(64, 2, [0] * 63)
    cert = build_tree_guided(mono, P5, 2)
    assert cert.color == 0
    assert len(cert.nodes) == 122  # frozen from calibration
    assert verify_tree(cert, mono)


def test_guided_parity_breaks_down():
    # the margin caps guided children at small offsets; after trimming the
    # root keeps too few, while exact search finds a tree just fine
    with pytest.raises(GuidedFailedError):
        build_tree_guided(PARITY, P5, 2)
    assert isinstance(GuidedFailedError("x"), SurrogateBreakdown)
    find_tree_exact(PARITY, P5, 2)


def test_verify_rejects_tampering():
    cert = find_tree_exact(PARITY, P5, 2)
    doc = cert.to_json()

    flipped = dict(doc, color=1)
    assert not verify_tree(TreeCert.from_json(flipped), PARITY)

    noroot = dict(doc, nodes=[f for f in doc["nodes"] if f != []])
    assert not verify_tree(TreeCert.from_json(noroot), PARITY)

    orphan = dict(doc, nodes=doc["nodes"] + [[2, 62, 63]])
    assert not verify_tree(TreeCert.from_json(orphan), PARITY)

    baddigest = dict(doc, coloring_digest="0" * 64)
    with pytest.raises(DigestMismatchError):
        verify_tree(TreeCert.from_json(baddigest), PARITY)

    # verifying against a different property is a mismatch, not an error
    assert not verify_tree(cert, PARITY, prop=Infinite(6))
    assert verify_tree(cert, PARITY, prop=Infinite(5))


def test_verify_checks_children_property():
    # structurally sound but the root keeps only two children: fails k=5
    cert = find_tree_exact(PARITY, P5, 2)
    doc = dict(cert.to_json(), nodes=[[], [2], [4]])
    assert not verify_tree(TreeCert.from_json(doc), PARITY)


def test_threshold_frozen():
    # frozen from the exhaustive oracle sweep: 10 is the first segment
    # where every 2-coloring carries a depth-2 tree of distinct summands
    assert threshold(2, 2, Infinite(1), 16) == 10
    with pytest.raises(NotFoundError):
        threshold(2, 2, Infinite(1), 9)
    assert threshold(2, 2, Infinite(1), 16, jobs=2) == 10


def test_threshold_validation():
    with pytest.raises(UsageError):
        threshold(0, 2, Infinite(1), 16)
    with pytest.raises(UsageError):
        threshold(2, 2, Infinite(1), 1)
