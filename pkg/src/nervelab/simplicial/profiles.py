"""Local statistics: distributions of rooted r-ball isomorphism classes.

The profile of a complex at radius r is the probability mass function, over
canonical codes, of the r-ball around a uniformly random vertex. Masses are
exact rationals. The total variation distance between two profiles is the
convergence diagnostic used by the experiment runners.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ContractError
from .canon import canonical_code
from .complexes import RootedComplex, SimplicialComplex, closed_ball


@dataclass(frozen=True)
class Profile:
    radius: int
    masses: dict[bytes, Fraction]

    def __post_init__(self):
        if self.radius < 1:
            raise ContractError("profile radius must be positive")
        total = sum(self.masses.values(), Fraction(0))
        if total != 1:
            raise ContractError(f"profile masses sum to {total}, expected 1")
        if any(m <= 0 for m in self.masses.values()):
            raise ContractError("profile masses must be positive")

    def support(self) -> list[bytes]:
        return sorted(self.masses)


def local_profile(K: SimplicialComplex, r: int) -> Profile:
    """Empirical distribution of r-ball codes over a uniform root."""
    verts = sorted(K.vertices)
    if not verts:
        raise ContractError("local_profile of an empty complex")
    if r < 1:
        raise ContractError("profile radius must be positive")
    tally: dict[bytes, int] = {}
    for v in verts:
        ball = closed_ball(RootedComplex(K, v), r)
        code = canonical_code(ball)
        tally[code] = tally.get(code, 0) + 1
    n = len(verts)
    return Profile(r, {c: Fraction(k, n) for c, k in tally.items()})


def profile_distance(p: Profile, q: Profile) -> Fraction:
    """Total variation distance, in [0, 1]."""
    if p.radius != q.radius:
        raise ContractError(f"profile radius mismatch: {p.radius} vs {q.radius}")
    keys = set(p.masses) | set(q.masses)
    acc = sum((abs(p.masses.get(c, Fraction(0)) - q.masses.get(c, Fraction(0))) for c in keys),
              Fraction(0))
    return acc / 2
