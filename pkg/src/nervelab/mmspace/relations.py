"""Relatedness of pointed measures and pointed subsets inside a common
ambient space, decided exactly for atomic measures.

Two pointed atomic measures are related at tolerance eps within horizon R
when their basepoints are closer than eps and, in both directions, every
atom set F inside the closed R-ball around the basepoint satisfies
mass1(F) < mass2(open eps-neighborhood of F) + eps. The worst F maximizes
mass1(F) - mass2(N(F)); that maximum equals restricted-mass1 minus the value
of a maximum flow from the restricted atoms of measure 1 to the atoms of
measure 2 along pairs at distance < eps, so one exact rational max-flow per
direction decides the condition. All inequalities are strict, which matters
exactly at atomic knife edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import ContractError
from .space import FiniteMMSpace


@dataclass(frozen=True)
class PointedMeasurePair:
    ambient: FiniteMMSpace
    mu1: Mapping[int, Fraction]
    mu2: Mapping[int, Fraction]
    p1: int
    p2: int

    def __post_init__(self):
        n = self.ambient.n
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not 0 <= p < n:
                raise ContractError(f"{name} out of range")
        for name, mu in (("mu1", self.mu1), ("mu2", self.mu2)):
            clean = {}
            for x, m in mu.items():
                if not 0 <= x < n:
                    raise ContractError(f"{name} atom {x} out of range")
                m = Fraction(m)
                if m < 0:
                    raise ContractError(f"{name} has a negative atom at {x}")
                if m > 0:
                    clean[x] = m
            object.__setattr__(self, name, clean)


def _max_flow(sources: dict[int, Fraction], sinks: dict[int, Fraction],
              edges: set[tuple[int, int]]) -> Fraction:
    """Edmonds-Karp on the bipartite atom graph, exact rationals.

    Node ids: 0 = super-source, 1 = super-sink, then sources, then sinks.
    Pair edges get capacity total source mass (effectively unbounded).
    """
    src_ids = {x: 2 + i for i, x in enumerate(sorted(sources))}
    snk_ids = {y: 2 + len(src_ids) + i for i, y in enumerate(sorted(sinks))}
    cap: dict[tuple[int, int], Fraction] = {}
    adj: dict[int, list[int]] = {0: [], 1: []}

    def add(u, v, c):
        if (u, v) not in cap:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
            cap[(u, v)] = Fraction(0)
            cap[(v, u)] = Fraction(0)
        cap[(u, v)] += c

    total = sum(sources.values(), Fraction(0))
    for x, m in sources.items():
        add(0, src_ids[x], m)
    for y, m in sinks.items():
        add(snk_ids[y], 1, m)
    for x, y in edges:
        add(src_ids[x], snk_ids[y], total)
    flow = Fraction(0)
    while True:
        prev = {0: 0}
        q = deque([0])
        while q and 1 not in prev:
            u = q.popleft()
            for v in adj.get(u, ()):
                if v not in prev and cap[(u, v)] > 0:
                    prev[v] = u
                    q.append(v)
        if 1 not in prev:
            return flow
        path = []
        v = 1
        while v != 0:
            path.append((prev[v], v))
            v = prev[v]
        push = min(cap[e] for e in path)
        for u, v in path:
            cap[(u, v)] -= push
            cap[(v, u)] += push
        flow += push


def _one_direction(Z: FiniteMMSpace, mu_a: dict[int, Fraction],
                   mu_b: dict[int, Fraction], p: int, eps: Fraction,
                   R: Fraction) -> bool:
    """max over atom sets F in the closed R-ball of mass_a(F) - mass_b(N(F))
    stays strictly below eps."""
    sources = {x: m for x, m in mu_a.items() if Z.dist(x, p) <= R}
    if not sources:
        return True
    edges = {
        (x, y)
        for x in sources
        for y in mu_b
        if Z.dist(x, y) < eps
    }
    deficiency = sum(sources.values(), Fraction(0)) - _max_flow(sources, mu_b, edges)
    return deficiency < eps


def related_measures(pair: PointedMeasurePair, eps, R) -> bool:
    eps, R = Fraction(eps), Fraction(R)
    if eps <= 0 or R <= 0:
        raise ContractError("eps and R must be positive")
    Z = pair.ambient
    if Z.dist(pair.p1, pair.p2) >= eps:
        return False
    return (_one_direction(Z, pair.mu1, pair.mu2, pair.p1, eps, R)
            and _one_direction(Z, pair.mu2, pair.mu1, pair.p2, eps, R))


def related_subsets(ambient: FiniteMMSpace, X1: Iterable[int], X2: Iterable[int],
                    p1: int, p2: int, eps, R) -> bool:
    """Pointed subsets are related when each one's R-ball part lies in the
    open eps-neighborhood of the other and the basepoints are eps-close."""
    eps, R = Fraction(eps), Fraction(R)
    if eps <= 0 or R <= 0:
        raise ContractError("eps and R must be positive")
    X1, X2 = frozenset(X1), frozenset(X2)
    if not X1 or not X2:
        raise ContractError("subsets must be nonempty")
    n = ambient.n
    if any(not 0 <= x < n for x in X1 | X2) or not (0 <= p1 < n and 0 <= p2 < n):
        raise ContractError("point out of range")
    if ambient.dist(p1, p2) >= eps:
        return False

    def covered(X, p, Y) -> bool:
        for x in X:
            if ambient.dist(x, p) <= R:
                if not any(ambient.dist(x, y) < eps for y in Y):
                    return False
        return True

    return covered(X1, p1, X2) and covered(X2, p2, X1)
