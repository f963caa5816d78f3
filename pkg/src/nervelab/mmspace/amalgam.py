"""Amalgamation of metric spaces along pseudo-metric links.

Parts are laid out as a disjoint union; link tables pin down cross-part
pseudo-distances on selected pairs. The amalgam distance is the chain
infimum (all-pairs shortest path with part metrics and link entries as edge
generators), zero-distance points are merged with weights summed, and the
result is checked to restrict to each part's own metric; a link that creates
a shortcut inside some part violates the amalgamation hypothesis and is
reported instead of silently deforming that part.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import ContractError
from .space import FiniteMMSpace, _DenseBackend, _mst_max_edge


@dataclass(frozen=True)
class AmalgamSpec:
    """parts: the spaces to join. links: tables over global point indices
    (part points numbered consecutively, part 0 first)."""

    parts: tuple[FiniteMMSpace, ...]
    links: tuple[Mapping[tuple[int, int], Fraction], ...]

    def __post_init__(self):
        if not self.parts:
            raise ContractError("amalgam of no parts")
        object.__setattr__(self, "parts", tuple(self.parts))
        n = sum(p.n for p in self.parts)
        clean_links = []
        for li, link in enumerate(self.links):
            clean: dict[tuple[int, int], Fraction] = {}
            for (a, b), d in link.items():
                d = Fraction(d)
                if not (0 <= a < n and 0 <= b < n):
                    raise ContractError(f"link {li}: pair ({a},{b}) out of range")
                if d < 0:
                    raise ContractError(f"link {li}: negative distance at ({a},{b})")
                if a == b:
                    if d != 0:
                        raise ContractError(f"link {li}: nonzero diagonal at {a}")
                    continue
                key = (min(a, b), max(a, b))
                if key in clean and clean[key] != d:
                    raise ContractError(f"link {li}: conflicting entries at {key}")
                clean[key] = d
            clean_links.append(clean)
        object.__setattr__(self, "links", tuple(clean_links))

    def offsets(self) -> list[int]:
        out = [0]
        for p in self.parts:
            out.append(out[-1] + p.n)
        return out


def _part_of(offsets: list[int], g: int) -> tuple[int, int]:
    for pi in range(len(offsets) - 1):
        if offsets[pi] <= g < offsets[pi + 1]:
            return pi, g - offsets[pi]
    raise ContractError(f"global index {g} out of range")


def amalgamate(spec: AmalgamSpec) -> FiniteMMSpace:
    offsets = spec.offsets()
    n = offsets[-1]
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for pi, part in enumerate(spec.parts):
        base = offsets[pi]
        for i in range(part.n):
            for j in range(i + 1, part.n):
                d = part.dist(i, j)
                adj[base + i].append((base + j, d))
                adj[base + j].append((base + i, d))
    for li, link in enumerate(spec.links):
        for (a, b), d in link.items():
            pa, ia = _part_of(offsets, a)
            pb, ib = _part_of(offsets, b)
            if pa == pb and spec.parts[pa].dist(ia, ib) != d:
                raise ContractError(
                    f"link {li} disagrees with part {pa} on pair ({a},{b}): "
                    f"{d} vs {spec.parts[pa].dist(ia, ib)}"
                )
            adj[a].append((b, d))
            adj[b].append((a, d))

    dist = [[None] * n for _ in range(n)]
    for s in range(n):
        row = dist[s]
        row[s] = Fraction(0)
        heap = [(Fraction(0), s)]
        while heap:
            d, u = heapq.heappop(heap)
            if row[u] is not None and d > row[u]:
                continue
            for v, w in adj[u]:
                nd = d + w
                if row[v] is None or nd < row[v]:
                    row[v] = nd
                    heapq.heappush(heap, (nd, v))
        if any(x is None for x in row):
            missing = [g for g, x in enumerate(row) if x is None]
            raise ContractError(
                f"no linking chain reaches points {missing[:5]} from point {s}"
            )

    for pi, part in enumerate(spec.parts):
        base = offsets[pi]
        for i in range(part.n):
            for j in range(i + 1, part.n):
                if dist[base + i][base + j] != part.dist(i, j):
                    raise ContractError(
                        f"amalgam shortcuts part {pi}: pair ({i},{j}) "
                        f"contracts from {part.dist(i, j)} to {dist[base + i][base + j]}"
                    )

    # quotient zero-distance classes, first representative wins the slot
    reps: list[int] = []
    cls = [-1] * n
    for g in range(n):
        for r_idx, r in enumerate(reps):
            if dist[r][g] == 0:
                cls[g] = r_idx
                break
        else:
            cls[g] = len(reps)
            reps.append(g)
    m = len(reps)
    weights = [Fraction(0)] * m
    for g in range(n):
        pi, ig = _part_of(offsets, g)
        weights[cls[g]] += spec.parts[pi].weight[ig]
    matrix = [[dist[reps[a]][reps[b]] for b in range(m)] for a in range(m)]
    out = FiniteMMSpace(m, weights, _DenseBackend(matrix), Fraction(1))
    out.resolution = _mst_max_edge(out) if m > 1 else Fraction(0)
    return out
