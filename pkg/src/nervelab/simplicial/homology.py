"""Exact Betti numbers over the rationals.

Ranks of the boundary maps are computed by fraction-free elimination on
sparse integer rows (integer cross-multiplication updates, gcd-normalized to
stop entry growth), so no floating point or rational rounding is involved
anywhere. For large complexes an optional preprocessing step removes free
face pairs (elementary collapses); that step changes the complex, not its
homotopy type, so the computed Betti numbers are unaffected.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from math import gcd

from ..errors import ContractError
from .complexes import Simplex, SimplicialComplex

# Above this many total simplices betti_numbers collapses first by default.
_COLLAPSE_THRESHOLD = 4000


def boundary_rank(rows_index: dict[Simplex, int], cols: list[Simplex]) -> int:
    """Rank of the boundary matrix mapping `cols` simplices to their facets."""
    rows: dict[int, dict[int, int]] = {}
    for j, s in enumerate(cols):
        for i, face in enumerate(combinations(s, len(s) - 1)):
            r = rows_index[face]
            rows.setdefault(r, {})[j] = (-1) ** i
    return sparse_rank(list(rows.values()))


def sparse_rank(rows: list[dict[int, int]]) -> int:
    """Exact rank of an integer matrix given as sparse rows.

    Row update: row <- piv * row - row[pc] * pivot_row, followed by division
    by the row gcd. Both steps are pure integer arithmetic and preserve rank.
    Pivots are chosen Markowitz-style (minimal fill estimate) among entries of
    absolute value 1 when any exist, which keeps the scaling factors trivial.
    """
    live = [dict(r) for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for ri, r in enumerate(live):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    active = set(range(len(live)))
    rank = 0
    while active:
        best = None
        best_key = None
        for ri in active:
            row = live[ri]
            rn = len(row) - 1
            for c, v in row.items():
                key = (0 if abs(v) == 1 else 1, rn * (len(col_rows[c]) - 1))
                if best_key is None or key < best_key:
                    best, best_key = (ri, c), key
                    if key == (0, 0):
                        break
            if best_key == (0, 0):
                break
        if best is None:
            break
        pr, pc = best
        prow = live[pr]
        piv = prow[pc]
        rank += 1
        active.discard(pr)
        for c in prow:
            col_rows[c].discard(pr)
        for ri in list(col_rows.get(pc, ())):
            if ri not in active:
                continue
            row = live[ri]
            factor = row.pop(pc)
            col_rows[pc].discard(ri)
            if piv != 1:
                for c in row:
                    row[c] *= piv
            for c, pv in prow.items():
                if c == pc:
                    continue
                new = row.get(c, 0) - factor * pv
                if new:
                    if c not in row:
                        col_rows.setdefault(c, set()).add(ri)
                    row[c] = new
                elif c in row:
                    del row[c]
                    col_rows[c].discard(ri)
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    for c in row:
                        row[c] //= g
            else:
                active.discard(ri)
    return rank


def betti_numbers(K: SimplicialComplex, up_to: int, reduce: bool | None = None) -> tuple[int, ...]:
    """b_0 .. b_up_to with rational coefficients.

    b_k = dim ker d_k - rank d_{k+1}. Requests beyond K.max_dim are rejected:
    b_k needs the (k+1)-simplices, and a dimension-capped complex does not
    carry them.
    """
    if up_to < 0:
        raise ContractError("up_to must be non-negative")
    if up_to > K.max_dim:
        raise ContractError(
            f"betti request up_to={up_to} exceeds the stored dimension cap {K.max_dim}"
        )
    by_dim: list[set[Simplex]] = [set(K.simplices(d)) for d in range(K.max_dim + 1)]
    total = sum(len(s) for s in by_dim)
    if reduce is None:
        reduce = total > _COLLAPSE_THRESHOLD
    if reduce:
        by_dim = collapse(by_dim)
    ranks = [0] * (up_to + 2)
    for k in range(1, up_to + 2):
        if k >= len(by_dim) or not by_dim[k]:
            ranks[k] = 0
            continue
        rows_index = {s: i for i, s in enumerate(sorted(by_dim[k - 1]))}
        ranks[k] = boundary_rank(rows_index, sorted(by_dim[k]))
    out = []
    for k in range(up_to + 1):
        nk = len(by_dim[k]) if k < len(by_dim) else 0
        out.append(nk - ranks[k] - ranks[k + 1])
    return tuple(out)


def collapse(by_dim: list[set[Simplex]]) -> list[set[Simplex]]:
    """Remove free face pairs until none remain.

    A simplex with exactly one coface of the next dimension is a free face (in
    a downward-closed family it then has no higher cofaces either, and its
    coface is maximal), so removing the pair is an elementary collapse. The
    input sets are not modified.
    """
    sets = [set(s) for s in by_dim]
    top = len(sets) - 1
    if top < 0 or not sets[0]:
        return sets
    counts: list[dict[Simplex, int]] = [dict() for _ in range(top + 1)]
    for d in range(1, top + 1):
        cnt = counts[d - 1]
        for s in sets[d]:
            for face in combinations(s, len(s) - 1):
                cnt[face] = cnt.get(face, 0) + 1
    for d in range(top):
        for s in sets[d]:
            counts[d].setdefault(s, 0)

    adj: dict[int, set[int]] = {v: set() for (v,) in sets[0]}
    if top >= 1:
        for (u, v) in sets[1]:
            adj[u].add(v)
            adj[v].add(u)

    queue: deque[Simplex] = deque(s for d in range(top) for s in sets[d] if counts[d][s] == 1)

    def find_coface(s: Simplex) -> Simplex | None:
        cand = adj[s[0]]
        for v in s[1:]:
            cand = cand & adj[v]
            if not cand:
                return None
        d = len(s) - 1
        for w in cand:
            t = tuple(sorted(s + (w,)))
            if t in sets[d + 1]:
                return t
        return None

    def remove(s: Simplex) -> None:
        d = len(s) - 1
        sets[d].discard(s)
        counts[d].pop(s, None)
        if d >= 1:
            for face in combinations(s, d):
                fc = counts[d - 1]
                if face in fc:
                    fc[face] -= 1
                    if fc[face] == 1:
                        queue.append(face)
        if d == 1:
            adj[s[0]].discard(s[1])
            adj[s[1]].discard(s[0])

    while queue:
        s = queue.popleft()
        d = len(s) - 1
        if d + 1 > top:
            continue
        if s not in sets[d] or counts[d].get(s) != 1:
            continue
        t = find_coface(s)
        if t is None:
            continue
        remove(t)
        remove(s)
    return sets
