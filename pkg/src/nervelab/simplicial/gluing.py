"""Chained disjoint unions of weighted complexes.

glue_weighted lays out D*t_j disjoint copies of each member K_j and joins
consecutive copies by a single edge between their basepoints (the lowest
vertex of each copy). The chain edges form a tree across copies, so for every
d >= 1 the d-th Betti number of the result is the weighted sum of the
members', exactly; that identity is what the tests and the acceptance suite
check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import ContractError
from .complexes import SimplicialComplex, connected_components, from_simplex_sets


@dataclass(frozen=True)
class WeightedFamily:
    members: tuple[tuple[SimplicialComplex, Fraction], ...]
    copy_multiplier: int

    def __post_init__(self):
        if not self.members:
            raise ContractError("empty weighted family")
        if self.copy_multiplier < 1:
            raise ContractError("copy multiplier must be a positive integer")
        for idx, (K, t) in enumerate(self.members):
            t = Fraction(t)
            if t <= 0:
                raise ContractError(f"member {idx}: weight must be positive")
            copies = t * self.copy_multiplier
            if copies.denominator != 1:
                raise ContractError(
                    f"member {idx}: D*t = {copies} is not an integer"
                )
            if not K.vertices:
                raise ContractError(f"member {idx}: empty complex")
            if len(connected_components(K)) != 1:
                raise ContractError(f"member {idx}: complex is not connected")

    def copy_counts(self) -> list[int]:
        return [int(Fraction(t) * self.copy_multiplier) for (_, t) in self.members]


def make_family(members: Sequence[tuple[SimplicialComplex, object]], D: int) -> WeightedFamily:
    return WeightedFamily(tuple((K, Fraction(t)) for K, t in members), D)


def glue_weighted(fam: WeightedFamily) -> SimplicialComplex:
    """Connected chain of all copies; vertex ids are assigned copy by copy."""
    max_dim = max(1, max(K.max_dim for K, _ in fam.members))
    by_dim: list[set] = [set() for _ in range(max_dim + 1)]
    offset = 0
    basepoints: list[int] = []
    for (K, _), copies in zip(fam.members, fam.copy_counts()):
        verts = sorted(K.vertices)
        relabel = {v: i for i, v in enumerate(verts)}
        for _ in range(copies):
            for d in range(K.max_dim + 1):
                for s in K.simplices(d):
                    by_dim[d].add(tuple(sorted(offset + relabel[v] for v in s)))
            basepoints.append(offset + 0)
            offset += len(verts)
    for a, b in zip(basepoints, basepoints[1:]):
        by_dim[1].add((a, b))
    return from_simplex_sets(offset, max_dim, by_dim)
