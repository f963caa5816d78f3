"""Canonical codes for rooted complexes and the isomorphism checker.

Claims checked here:
- equal code <=> root-preserving isomorphism, exhaustively for all rooted
  complexes on up to 4 vertices and on a randomized batch with 5-6 vertices.
- the code is invariant under relabeling.
- root choice matters: path ends and centers get different codes.
- root_isomorphic agrees with a brute-force permutation oracle.
- disconnected complexes: codes separate the root component from the rest.
"""

import random
from itertools import combinations

import pytest
from conftest import cycle_complex, path_complex, torus7
from oracles import brute_root_isomorphic

from nervelab.simplicial import (
    RootedComplex,
    build_complex,
    canonical_code,
    root_isomorphic,
)


def _all_graphs(n):
    """Every downward-closed graph on vertices 0..n-1 (as edge subsets)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        yield build_complex(list(edges) + [[v] for v in range(n)], 1)


def _relabel(K, perm):
    sims = []
    for d in range(K.max_dim + 1):
        for s in K.simplices(d):
            sims.append([perm[v] for v in s])
    return build_complex(sims, K.max_dim)


def test_code_iff_iso_exhaustive_small():
    for n in (1, 2, 3):
        graphs = list(_all_graphs(n))
        rooted = [RootedComplex(K, r) for K in graphs for r in range(n)]
        codes = [canonical_code(rc) for rc in rooted]
        for i in range(len(rooted)):
            for j in range(i, len(rooted)):
                same = codes[i] == codes[j]
                assert same == root_isomorphic(rooted[i], rooted[j])
                assert same == brute_root_isomorphic(rooted[i], rooted[j])


def test_code_iff_iso_randomized():
    rng = random.Random(99)
    batch = []
    for _ in range(40):
        n = rng.randrange(4, 7)
        pairs = list(combinations(range(n), 2))
        edges = [p for p in pairs if rng.random() < 0.5]
        K = build_complex(list(edges) + [[v] for v in range(n)], 1)
        batch.append(RootedComplex(K, rng.randrange(n)))
    codes = [canonical_code(rc) for rc in batch]
    for i in range(len(batch)):
        for j in range(i + 1, len(batch)):
            assert (codes[i] == codes[j]) == root_isomorphic(batch[i], batch[j])


def test_relabel_invariance():
    rng = random.Random(5)
    K = torus7()
    base = canonical_code(RootedComplex(K, 0))
    for _ in range(6):
        perm = list(range(7))
        rng.shuffle(perm)
        assert canonical_code(RootedComplex(_relabel(K, perm), perm[0])) == base


def test_cycle_roots_all_equivalent():
    K = cycle_complex(6)
    codes = {canonical_code(RootedComplex(K, r)) for r in range(6)}
    assert len(codes) == 1


def test_path_end_differs_from_center():
    K = path_complex(5)
    end = canonical_code(RootedComplex(K, 0))
    center = canonical_code(RootedComplex(K, 2))
    assert end != canonical_code(RootedComplex(K, 1))
    assert end != center
    assert canonical_code(RootedComplex(K, 4)) == end
    assert canonical_code(RootedComplex(K, 3)) == canonical_code(RootedComplex(K, 1))


def test_two_dimensional_codes_distinguish():
    filled = build_complex([[0, 1, 2]], 2)
    hollow = build_complex([[0, 1], [1, 2], [0, 2]], 2)
    a = RootedComplex(filled, 0)
    b = RootedComplex(hollow, 0)
    assert canonical_code(a) != canonical_code(b)
    assert not root_isomorphic(a, b)


def test_disconnected_components_in_code():
    K1 = build_complex([[0, 1], [2, 3]], 1)
    K2 = build_complex([[0, 1], [2], [3]], 1)
    a = RootedComplex(K1, 0)
    b = RootedComplex(K2, 0)
    assert canonical_code(a) != canonical_code(b)
    assert not root_isomorphic(a, b)
    # same multiset of side components, different labels
    K3 = build_complex([[1, 2], [0, 3]], 1)
    assert canonical_code(RootedComplex(K3, 0)) == canonical_code(a)
    assert root_isomorphic(RootedComplex(K3, 0), a)


def test_transitivity_spot_check():
    K = cycle_complex(5)
    rcs = [RootedComplex(K, r) for r in range(3)]
    assert root_isomorphic(rcs[0], rcs[1])
    assert root_isomorphic(rcs[1], rcs[2])
    assert root_isomorphic(rcs[0], rcs[2])
