"""Mass-transport symmetry check for a rooted finite space.

A root law lambda on a space induces two measures on isometry classes of
doubly-rooted spaces: picking the first root by the law and the second by
the volume, or the other way around. The space is unimodular for that law
when the two agree. Classes are keyed by an exact canonical form of
(space, first root, second root): the lexicographically least serialization
of the weight and distance tables over all point orders that place the two
roots first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import ContractError
from .space import FiniteMMSpace

Entry = tuple  # (weight, dist-to-earlier...) as Fractions


def doubly_pointed_code(space: FiniteMMSpace, p: int, q: int) -> tuple:
    """Canonical serialization of the space with ordered root pair (p, q).

    Positions 0 and 1 are pinned to p and q; the remaining order is chosen
    to minimize, position by position with backtracking over ties, the
    sequence of (weight, distances-to-placed) entries. Two root pairs get
    equal codes exactly when a weight- and distance-preserving bijection
    maps one pair to the other in order.
    """
    n = space.n
    if not (0 <= p < n and 0 <= q < n):
        raise ContractError("root out of range")

    def entry(x: int, placed: list[int]) -> Entry:
        return (space.weight[x],) + tuple(space.dist(x, y) for y in placed)

    if p == q:
        prefix = [p]
        rest0 = [x for x in range(n) if x != p]
    else:
        prefix = [p, q]
        rest0 = [x for x in range(n) if x not in (p, q)]
    fixed = [entry(x, prefix[:i]) for i, x in enumerate(prefix)]
    best: list[Entry] | None = None

    def dfs(placed: list[int], rest: list[int], acc: list[Entry]):
        # branch only on per-position minimal entries; the global minimum
        # serialization is then the least leaf
        nonlocal best
        if not rest:
            if best is None or acc < best:
                best = list(acc)
            return
        cands = [(entry(x, placed), x) for x in rest]
        low = min(e for e, _ in cands)
        for e, x in cands:
            if e == low:
                dfs(placed + [x], [y for y in rest if y != x], acc + [e])

    if rest0:
        dfs(prefix, rest0, fixed)
    else:
        best = fixed
    flat: list[int] = [n, 1 if p == q else 0]
    for e in best:
        for f in e:
            flat.extend((f.numerator, f.denominator))
        flat.append(-1)
    return tuple(flat)


def stationary_law(space: FiniteMMSpace) -> tuple[Fraction, ...]:
    """The volume-proportional root law."""
    vol = space.total_volume()
    return tuple(w / vol for w in space.weight)


def unimodular_check(space: FiniteMMSpace, root_law: Sequence) -> bool:
    law = [Fraction(x) for x in root_law]
    if len(law) != space.n:
        raise ContractError(f"{len(law)} law entries for {space.n} points")
    if any(x < 0 for x in law):
        raise ContractError("root law entries must be non-negative")
    if sum(law, Fraction(0)) != 1:
        raise ContractError("root law must sum to 1")
    left: dict[tuple, Fraction] = {}
    right: dict[tuple, Fraction] = {}
    for p in range(space.n):
        for q in range(space.n):
            l_mass = law[p] * space.weight[q]
            r_mass = law[q] * space.weight[p]
            if l_mass == 0 and r_mass == 0:
                continue
            code = doubly_pointed_code(space, p, q)
            if l_mass:
                left[code] = left.get(code, Fraction(0)) + l_mass
            if r_mass:
                right[code] = right.get(code, Fraction(0)) + r_mass
    return left == right
