"""Relatedness of pointed measures and subsets.

Claims checked here:
- frozen examples: identical measures are related at every positive eps;
  unit Diracs at distance 1/2 flip between eps 0.6 and 0.4; the segment
  subset example flips between eps 0.4 and 0.2.
- reflexivity and symmetry on random instances.
- the flow check agrees with exhaustive subset enumeration (150 random
  pairs with up to 8 atoms; tolerances chosen off the knife edges).
- composition: relatedness at (e1,R1) and (e2,R2) through a middle measure
  implies relatedness at (e1+e2, min(R1-2e2, R2-2e1)).
"""

import random
from fractions import Fraction

import pytest
from oracles import subsets_related_oracle

from nervelab.errors import ContractError
from nervelab.mmspace import (
    PointedMeasurePair,
    circle_space,
    make_space,
    related_measures,
    related_subsets,
)

F = Fraction
# denominators coprime to the 1/4-grid circle metric and 1/16-grid masses
EPS_POOL = [F(1, 3), F(2, 5), F(3, 7), F(5, 9), F(2, 3)]


def _random_measure(rng, n, max_atoms=8):
    support = rng.sample(range(n), rng.randrange(1, max_atoms + 1))
    return {x: F(rng.randrange(1, 17), 16) for x in support}


def test_identical_measures_related():
    amb = circle_space(4, F(1, 2))
    mu = {0: F(1, 2), 3: F(1, 3)}
    pair = PointedMeasurePair(amb, mu, dict(mu), 1, 1)
    assert related_measures(pair, F(1, 100), 5)


def test_dirac_pair_frozen():
    amb = make_space([[0, F(1, 2)], [F(1, 2), 0]], [1, 1])
    pair = PointedMeasurePair(amb, {0: F(1)}, {1: F(1)}, 0, 1)
    assert related_measures(pair, F(3, 5), 2)
    assert not related_measures(pair, F(2, 5), 2)


def test_basepoint_distance_gates():
    amb = make_space([[0, 1], [1, 0]], [1, 1])
    pair = PointedMeasurePair(amb, {0: F(1)}, {0: F(1)}, 0, 1)
    assert not related_measures(pair, F(1, 2), 2)
    assert related_measures(pair, F(3, 2), 2)


def test_reflexive_random():
    rng = random.Random(31337)
    amb = circle_space(8, F(1, 4))
    for _ in range(20):
        mu = _random_measure(rng, amb.n)
        p = rng.randrange(amb.n)
        pair = PointedMeasurePair(amb, mu, dict(mu), p, p)
        assert related_measures(pair, rng.choice(EPS_POOL), rng.choice([1, 2, 3]))


def test_symmetry_random():
    rng = random.Random(777)
    amb = circle_space(8, F(1, 4))
    for _ in range(30):
        mu1 = _random_measure(rng, amb.n)
        mu2 = _random_measure(rng, amb.n)
        p1, p2 = rng.randrange(amb.n), rng.randrange(amb.n)
        eps, R = rng.choice(EPS_POOL), rng.choice([1, 2, 3])
        a = related_measures(PointedMeasurePair(amb, mu1, mu2, p1, p2), eps, R)
        b = related_measures(PointedMeasurePair(amb, mu2, mu1, p2, p1), eps, R)
        assert a == b


def test_flow_agrees_with_subset_oracle():
    rng = random.Random(2718)
    amb = circle_space(8, F(1, 4))
    hits = 0
    for _ in range(150):
        mu1 = _random_measure(rng, amb.n)
        mu2 = _random_measure(rng, amb.n)
        p1, p2 = rng.randrange(amb.n), rng.randrange(amb.n)
        eps, R = rng.choice(EPS_POOL), rng.choice([F(1, 2), 1, 2, 3])
        got = related_measures(PointedMeasurePair(amb, mu1, mu2, p1, p2), eps, R)
        want = subsets_related_oracle(amb, mu1, mu2, p1, p2, eps, R)
        assert got == want
        hits += got
    # the sample must exercise both outcomes
    assert 0 < hits < 150


def _jitter(rng, amb, mu, spread):
    out: dict[int, F] = {}
    for x, m in mu.items():
        shift = rng.randrange(-spread, spread + 1)
        y = (x + shift) % amb.n
        out[y] = out.get(y, F(0)) + m
    return out


def test_composition_property():
    rng = random.Random(5150)
    amb = circle_space(8, F(1, 4))
    R1 = R2 = F(3)
    checked = 0
    for _ in range(120):
        mu1 = _random_measure(rng, amb.n, 6)
        p1 = rng.randrange(amb.n)
        mu2 = _jitter(rng, amb, mu1, 1)
        p2 = (p1 + rng.randrange(-1, 2)) % amb.n
        mu3 = _jitter(rng, amb, mu2, 1)
        p3 = (p2 + rng.randrange(-1, 2)) % amb.n
        e1, e2 = rng.choice(EPS_POOL), rng.choice(EPS_POOL)
        if not related_measures(PointedMeasurePair(amb, mu1, mu2, p1, p2), e1, R1):
            continue
        if not related_measures(PointedMeasurePair(amb, mu2, mu3, p2, p3), e2, R2):
            continue
        R3 = min(R1 - 2 * e2, R2 - 2 * e1)
        assert R3 > 0
        assert related_measures(
            PointedMeasurePair(amb, mu1, mu3, p1, p3), e1 + e2, R3
        )
        checked += 1
    assert checked >= 30


def test_subsets_frozen_segment():
    seg = make_space(
        [[0, 1, F(13, 10)], [1, 0, F(3, 10)], [F(13, 10), F(3, 10), 0]],
        [1, 1, 1],
    )
    assert related_subsets(seg, [0, 1], [0, 2], 0, 0, F(2, 5), 2)
    assert not related_subsets(seg, [0, 1], [0, 2], 0, 0, F(1, 5), 2)
    assert related_subsets(seg, [0, 1], [0, 1], 0, 0, F(1, 100), 2)


def test_subsets_rejects_bad_args():
    s = circle_space(4, 1)
    with pytest.raises(ContractError):
        related_subsets(s, [], [0], 0, 0, F(1, 2), 1)
    with pytest.raises(ContractError):
        related_subsets(s, [0], [9], 0, 0, F(1, 2), 1)
    with pytest.raises(ContractError):
        related_measures(PointedMeasurePair(s, {0: F(1)}, {0: F(1)}, 0, 0), 0, 1)
