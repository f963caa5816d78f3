"""Boundaries, collars, radius-r Cheeger constants, and the majority-ball
haircut on finite metric measure spaces.

The discrete boundary of a subset M is the set of its points with a
complement point within one resolution step h. The radius-r collar is the
closed r-neighborhood of that boundary measured in the whole space. The
radius-r Cheeger constant minimizes collar volume over subset volume across
connected subsets (connectivity in the h-adjacency graph) occupying at most
half the total volume.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..errors import ContractError
from ..sampling.rng import derive, unit_fraction
from .space import FiniteMMSpace


def boundary_and_collar(space: FiniteMMSpace, M: Iterable[int], r,
                        step=None) -> tuple[frozenset[int], frozenset[int]]:
    """(boundary points of M, points within r of that boundary)."""
    M = frozenset(M)
    if not M:
        raise ContractError("boundary of an empty subset")
    if len(M) >= space.n:
        raise ContractError("boundary of the full space")
    if any(i < 0 or i >= space.n for i in M):
        raise ContractError("subset point out of range")
    r = Fraction(r)
    if r < 0:
        raise ContractError("collar radius must be non-negative")
    h = Fraction(step) if step is not None else space.resolution
    boundary = frozenset(
        x for x in M if any(y not in M for y in space.neighbors_within(x, h))
    )
    collar: set[int] = set()
    for x in boundary:
        collar.update(space.neighbors_within(x, r))
    return boundary, frozenset(collar)


def _adjacency(space: FiniteMMSpace, h: Fraction) -> list[list[int]]:
    return [
        [j for j in space.neighbors_within(i, h) if j != i]
        for i in range(space.n)
    ]


def _components(members: frozenset[int], adj: list[list[int]]) -> list[frozenset[int]]:
    left = set(members)
    out = []
    while left:
        s = left.pop()
        comp = {s}
        frontier = [s]
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y in left:
                    left.remove(y)
                    comp.add(y)
                    frontier.append(y)
        out.append(frozenset(comp))
    return out


def _ratio(space: FiniteMMSpace, members: frozenset[int], r: Fraction,
           h: Fraction) -> Fraction | None:
    """Collar volume over subset volume; None when M is the whole space."""
    if len(members) >= space.n:
        return None
    _, collar = boundary_and_collar(space, members, r, h)
    return space.volume(collar) / space.volume(members)


def _enumerate_connected(adj: list[list[int]], n: int):
    """Every nonempty connected vertex subset, exactly once.

    Standard pivot scheme: subsets whose minimum is v are grown from {v}
    using only vertices > v; each extension step branches on including or
    banning one frontier vertex.
    """
    for v in range(n):
        stack = [(frozenset([v]), frozenset(range(v + 1)))]
        while stack:
            members, banned = stack.pop()
            frontier = set()
            for x in members:
                for y in adj[x]:
                    if y not in members and y not in banned:
                        frontier.add(y)
            if not frontier:
                yield members
                continue
            pick = min(frontier)
            stack.append((members, banned | {pick}))
            stack.append((members | {pick}, banned | {pick}))


def cheeger_radius_r(space: FiniteMMSpace, r, mode: str = "exact",
                     seed: int = 0, cap: int = 24,
                     anneal_steps: int = 2000) -> tuple[Fraction, frozenset[int]]:
    """Minimum collar-to-volume ratio over connected subsets of at most half
    the volume. Exact mode enumerates; heuristic mode (annealing plus a ball
    sweep) returns an upper bound with the best witness found."""
    r = Fraction(r)
    if r <= 0:
        raise ContractError("radius must be positive")
    if mode not in ("exact", "heuristic"):
        raise ContractError(f"unknown mode {mode!r}")
    n = space.n
    h = space.resolution
    half = space.total_volume() / 2
    adj = _adjacency(space, h)
    best: Fraction | None = None
    witness: frozenset[int] | None = None

    def consider(members: frozenset[int]):
        nonlocal best, witness
        if not members or space.volume(members) > half:
            return
        if len(_components(members, adj)) != 1:
            return
        val = _ratio(space, members, r, h)
        if val is not None and (best is None or val < best
                                or (val == best and sorted(members) < sorted(witness))):
            best, witness = val, members

    if mode == "exact":
        if n > cap:
            raise ContractError(f"exact mode capped at {cap} points, space has {n}")
        for members in _enumerate_connected(adj, n):
            consider(members)
    else:
        centers = range(n) if n <= 64 else [
            derive(seed, "sweep-center", t) % n for t in range(64)
        ]
        for c in centers:
            row = sorted((space.dist(c, j), j) for j in range(n))
            members: set[int] = set()
            vol = Fraction(0)
            idx = 0
            while idx < len(row):
                d = row[idx][0]
                while idx < len(row) and row[idx][0] == d:
                    members.add(row[idx][1])
                    vol += space.weight[row[idx][1]]
                    idx += 1
                if vol > half:
                    break
                consider(frozenset(members))
        state = witness if witness is not None else frozenset([seed % n])
        cur = _ratio(space, state, r, h) if space.volume(state) <= half else None
        for t in range(anneal_steps):
            grow = derive(seed, "anneal-op", t) % 2 == 0 or len(state) == 1
            cand = None
            if grow:
                outside = sorted({y for x in state for y in adj[x] if y not in state})
                if outside:
                    cand = state | {outside[derive(seed, "anneal-pick", t) % len(outside)]}
            else:
                inside = sorted(state)
                x = inside[derive(seed, "anneal-pick", t) % len(inside)]
                trimmed = state - {x}
                if trimmed and len(_components(trimmed, adj)) == 1:
                    cand = trimmed
            if cand is None or space.volume(cand) > half:
                continue
            val = _ratio(space, cand, r, h)
            if val is None:
                continue
            accept = cur is None or val <= cur
            if not accept:
                # temperature schedule: exp(-gap/T) with T shrinking linearly
                temp = Fraction(anneal_steps - t, anneal_steps) / 4
                gap = (val - cur) / max(cur, Fraction(1, 10**6))
                accept = temp > 0 and unit_fraction(seed, "anneal-acc", t) < \
                    max(Fraction(0), temp - gap)
            if accept:
                state, cur = cand, val
                consider(cand)
    if best is None:
        raise ContractError("no admissible subset found")
    return best, witness


def haircut(space: FiniteMMSpace, A: Iterable[int], r) -> frozenset[int]:
    """Majority-ball cleanup: keep points whose radius-r ball is mostly
    covered by A, then return the surviving component with the least
    step-h collar per unit volume. Empty if no ball has an A-majority."""
    A = frozenset(A)
    if not A:
        raise ContractError("haircut of an empty subset")
    r = Fraction(r)
    if r <= 0:
        raise ContractError("radius must be positive")
    majority = []
    for p in range(space.n):
        ball = space.neighbors_within(p, r)
        inside = sum((space.weight[x] for x in ball if x in A), Fraction(0))
        if 2 * inside > space.volume(ball):
            majority.append(p)
    if not majority:
        return frozenset()
    h = space.resolution
    adj = _adjacency(space, h)
    best_val: Fraction | None = None
    best_comp: frozenset[int] | None = None
    for comp in _components(frozenset(majority), adj):
        val = _ratio(space, comp, h, h)
        if val is None:
            val = Fraction(0)
        if best_val is None or val < best_val or \
                (val == best_val and sorted(comp) < sorted(best_comp)):
            best_val, best_comp = val, comp
    return best_comp
