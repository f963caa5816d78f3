"""Finite metric measure spaces: atoms with exact positive weights and an
exact (or correctly-rounded, for grid tori) pairwise metric.

Every space carries a resolution h. Generated spaces record the step they
were built with; spaces built from a raw matrix default to the largest edge
of a minimum spanning tree, the smallest h for which the h-adjacency graph
(points at distance <= h are adjacent) is connected.

Grid-backed circles and tori do not store an n x n matrix. Circle distances
are exact rationals (arc steps times h). Torus distances are IEEE doubles,
each the correctly rounded value of h*sqrt(di^2 + dj^2), exposed as the exact
dyadic rational equal to that double; they can be off from the true metric by
an ulp, so triangle validation for them takes a tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ContractError, FormatError

_TRI_EXHAUSTIVE_CAP = 96
_TRI_SAMPLES = 200_000
_PAIR_SAMPLES = 400_000


def _fmt_q(x: Fraction) -> str:
    """Shortest exact token: integer, terminating decimal, or p/q."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x.numerator * 10**digits // x.denominator
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def _parse_q(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad rational token {tok!r}") from e


class _DenseBackend:
    kind = "dense"

    def __init__(self, matrix: list[list[Fraction]]):
        self.matrix = matrix

    def dist(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def neighbors_within(self, i: int, r: Fraction, strict: bool) -> list[int]:
        row = self.matrix[i]
        if strict:
            return [j for j, d in enumerate(row) if d < r]
        return [j for j, d in enumerate(row) if d <= r]


class _CircleBackend:
    """k evenly spaced points on a circle of circumference k*h."""

    kind = "circle"

    def __init__(self, k: int, h: Fraction):
        self.k = k
        self.h = h

    def dist(self, i: int, j: int) -> Fraction:
        u = abs(i - j)
        return min(u, self.k - u) * self.h

    def neighbors_within(self, i: int, r: Fraction, strict: bool) -> list[int]:
        steps = r / self.h
        m = int(steps) if not strict or steps.denominator != 1 else int(steps) - 1
        m = min(m, self.k // 2)
        if 2 * m + 1 >= self.k:
            return list(range(self.k))
        return sorted((i + d) % self.k for d in range(-m, m + 1))


class _TorusBackend:
    """k x k grid on a square flat torus of side k*h; point index = row*k + col.

    Distances come from a wraparound offset table of doubles, each correctly
    rounded from the exact h*sqrt(di^2 + dj^2) (integer di, dj), and are
    exposed as the exact dyadic rationals those doubles denote.
    """

    kind = "torus"

    def __init__(self, k: int, h: Fraction):
        self.k = k
        self.h = h
        hf = float(h)
        half = k // 2
        self.table = [
            [math.sqrt(di * di + dj * dj) * hf for dj in range(half + 1)]
            for di in range(half + 1)
        ]
        self._frac_table: dict[tuple[int, int], Fraction] = {}

    def _offsets(self, i: int, j: int) -> tuple[int, int]:
        k = self.k
        di = abs(i // k - j // k)
        dj = abs(i % k - j % k)
        return min(di, k - di), min(dj, k - dj)

    def offset_dist(self, di: int, dj: int) -> Fraction:
        key = (di, dj) if di >= dj else (dj, di)
        got = self._frac_table.get(key)
        if got is None:
            got = Fraction(self.table[key[0]][key[1]])
            self._frac_table[key] = got
        return got

    def dist(self, i: int, j: int) -> Fraction:
        return self.offset_dist(*self._offsets(i, j))

    def neighbors_within(self, i: int, r: Fraction, strict: bool) -> list[int]:
        k = self.k
        m = min(int(r / self.h) + 1, k // 2)
        ri, ci = divmod(i, k)
        if 2 * m + 1 >= k:
            rows = [(a * k, min(abs(a - ri), k - abs(a - ri))) for a in range(k)]
            cols = [(b, min(abs(b - ci), k - abs(b - ci))) for b in range(k)]
        else:
            rows = [(((ri + a) % k) * k, abs(a)) for a in range(-m, m + 1)]
            cols = [((ci + b) % k, abs(b)) for b in range(-m, m + 1)]
        out = []
        for row, di in rows:
            for col, dj in cols:
                d = self.offset_dist(di, dj)
                if (d < r) if strict else (d <= r):
                    out.append(row + col)
        out.sort()
        return out


class _CoordsBackend:
    """Arbitrary rational coordinates, flat or torus geometry.

    One-dimensional distances are exact rationals. Higher dimensions go
    through a correctly rounded IEEE sqrt, exposed as exact dyadics.
    """

    kind = "coords"

    def __init__(self, coords: list[tuple[Fraction, ...]], geometry: str,
                 period: Fraction | None):
        self.coords = coords
        self.geometry = geometry
        self.period = period
        self.dim = len(coords[0])

    def _deltas(self, i: int, j: int) -> list[Fraction]:
        out = []
        for a, b in zip(self.coords[i], self.coords[j]):
            d = abs(a - b)
            if self.geometry == "torus":
                d = min(d, self.period - d)
            out.append(d)
        return out

    def dist(self, i: int, j: int) -> Fraction:
        ds = self._deltas(i, j)
        if self.dim == 1:
            return ds[0]
        return Fraction(math.sqrt(math.fsum(float(d) * float(d) for d in ds)))

    def neighbors_within(self, i: int, r: Fraction, strict: bool) -> list[int]:
        out = []
        for j in range(len(self.coords)):
            d = self.dist(i, j)
            if (d < r) if strict else (d <= r):
                out.append(j)
        return out


class FiniteMMSpace:
    __slots__ = ("n", "weight", "labels", "resolution", "backend")

    def __init__(self, n: int, weight: Sequence[Fraction], backend, resolution: Fraction,
                 labels: Sequence[str] | None = None):
        if n < 1:
            raise ContractError("a space needs at least one point")
        weight = tuple(Fraction(w) for w in weight)
        if len(weight) != n:
            raise ContractError(f"{len(weight)} weights for {n} points")
        if any(w <= 0 for w in weight):
            raise ContractError("weights must be strictly positive")
        resolution = Fraction(resolution)
        if n > 1 and resolution <= 0:
            raise ContractError("resolution must be positive")
        self.n = n
        self.weight = weight
        self.backend = backend
        self.resolution = resolution
        self.labels = tuple(labels) if labels is not None else None

    def dist(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        return self.backend.dist(i, j)

    def total_volume(self) -> Fraction:
        return sum(self.weight, Fraction(0))

    def neighbors_within(self, i: int, r, strict: bool = False) -> list[int]:
        """Point indices j (including i) with dist(i,j) <= r (or < r)."""
        r = Fraction(r)
        if r < 0:
            return []
        return self.backend.neighbors_within(i, r, strict)

    def volume(self, points: Iterable[int]) -> Fraction:
        return sum((self.weight[i] for i in points), Fraction(0))

    def __repr__(self):
        return f"FiniteMMSpace(n={self.n}, kind={self.backend.kind})"


def _mst_max_edge(space: FiniteMMSpace) -> Fraction:
    """Largest edge of a minimum spanning tree (Prim)."""
    n = space.n
    if n == 1:
        return Fraction(0)
    best = [None] * n
    intree = [False] * n
    intree[0] = True
    for j in range(1, n):
        best[j] = space.dist(0, j)
    worst = Fraction(0)
    for _ in range(n - 1):
        pick, pd = -1, None
        for j in range(n):
            if not intree[j] and (pd is None or best[j] < pd):
                pick, pd = j, best[j]
        intree[pick] = True
        if pd > worst:
            worst = pd
        for j in range(n):
            if not intree[j]:
                d = space.dist(pick, j)
                if d < best[j]:
                    best[j] = d
    return worst


def validate_space(space: FiniteMMSpace, tolerance: Fraction = Fraction(0),
                   seed: int = 0) -> None:
    """Symmetry, zero diagonal, positivity, triangle inequality.

    Exhaustive up to _TRI_EXHAUSTIVE_CAP points; deterministic samples beyond.
    tolerance admits sub-ulp triangle slack for double-backed grid metrics.
    """
    n = space.n
    pair_iter: Iterable[tuple[int, int]]
    if n * n <= _PAIR_SAMPLES:
        pair_iter = ((i, j) for i in range(n) for j in range(i, n))
    else:
        from ..sampling.rng import derive
        pair_iter = (
            (derive(seed, "vpair", t, 0) % n, derive(seed, "vpair", t, 1) % n)
            for t in range(_PAIR_SAMPLES // 2)
        )
    for i, j in pair_iter:
        d = space.dist(i, j)
        if i == j:
            if d != 0:
                raise ContractError(f"nonzero diagonal at point {i}")
            continue
        if d <= 0:
            raise ContractError(f"non-positive distance between {i} and {j}")
        if space.dist(j, i) != d:
            raise ContractError(f"asymmetric distance between {i} and {j}")
    if n <= _TRI_EXHAUSTIVE_CAP:
        triples = (
            (a, b, c) for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)
        )
    else:
        from ..sampling.rng import derive
        triples = (
            tuple(derive(seed, "vtri", t, s) % n for s in range(3))
            for t in range(_TRI_SAMPLES)
        )
    for a, b, c in triples:
        if a == b or b == c or a == c:
            continue
        ab, bc, ac = space.dist(a, b), space.dist(b, c), space.dist(a, c)
        slack = tolerance * max(ab, bc, ac)
        if ac > ab + bc + slack or ab > ac + bc + slack or bc > ab + ac + slack:
            raise ContractError(
                f"triangle inequality fails on witness ({a}, {b}, {c}): "
                f"{ac} vs {ab} + {bc}"
            )


def make_space(dist_matrix: Sequence[Sequence], weights: Sequence,
               labels: Sequence[str] | None = None,
               resolution=None) -> FiniteMMSpace:
    """Validated space from an explicit matrix of exact rationals."""
    n = len(dist_matrix)
    matrix = []
    for i, row in enumerate(dist_matrix):
        if len(row) != n:
            raise ContractError(f"row {i} has {len(row)} entries, expected {n}")
        matrix.append([Fraction(x) for x in row])
    space = FiniteMMSpace(n, [Fraction(w) for w in weights], _DenseBackend(matrix),
                          Fraction(1), labels)
    validate_space(space)
    space.resolution = Fraction(resolution) if resolution is not None \
        else _mst_max_edge(space)
    return space


def circle_space(circumference, resolution) -> FiniteMMSpace:
    L, h = Fraction(circumference), Fraction(resolution)
    if h <= 0 or L <= 0:
        raise ContractError("circumference and resolution must be positive")
    k = L / h
    if k.denominator != 1 or k < 3:
        raise ContractError(f"need L/h an integer >= 3, got {k}")
    k = int(k)
    return FiniteMMSpace(k, [h] * k, _CircleBackend(k, h), h)


def torus_space(side, resolution) -> FiniteMMSpace:
    L, h = Fraction(side), Fraction(resolution)
    if h <= 0 or L <= 0:
        raise ContractError("side and resolution must be positive")
    k = L / h
    if k.denominator != 1 or k < 3:
        raise ContractError(f"need L/h an integer >= 3, got {k}")
    k = int(k)
    return FiniteMMSpace(k * k, [h * h] * (k * k), _TorusBackend(k, h), h)


def metric_graph_space(edges: Sequence[tuple], resolution) -> FiniteMMSpace:
    """Sample points at h-steps along the edges; shortest-path metric.

    edges: (u, v, length) with vertex names hashable and lengths positive
    multiples of h. Loops and parallel edges are allowed.
    """
    h = Fraction(resolution)
    if h <= 0:
        raise ContractError("resolution must be positive")
    if not edges:
        raise ContractError("empty edge list")
    verts = sorted({e[0] for e in edges} | {e[1] for e in edges}, key=repr)
    vid = {v: i for i, v in enumerate(verts)}
    labels = [f"v:{v}" for v in verts]
    adj: dict[int, set[int]] = {i: set() for i in range(len(verts))}
    nxt = len(verts)
    for eidx, (u, v, length) in enumerate(edges):
        m = Fraction(length) / h
        if m.denominator != 1 or m < 1:
            raise ContractError(
                f"edge {eidx}: length {length} is not a positive multiple of h"
            )
        m = int(m)
        chain = [vid[u]]
        for t in range(1, m):
            adj.setdefault(nxt, set())
            labels.append(f"e{eidx}:{t}")
            chain.append(nxt)
            nxt += 1
        chain.append(vid[v])
        for a, b in zip(chain, chain[1:]):
            if a == b:
                raise ContractError(f"edge {eidx}: loop shorter than 2h")
            adj[a].add(b)
            adj[b].add(a)
    n = nxt
    units = [[-1] * n for _ in range(n)]
    for s in range(n):
        row = units[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            new = []
            for x in frontier:
                for y in adj[x]:
                    if row[y] < 0:
                        row[y] = d
                        new.append(y)
            frontier = new
        if any(x < 0 for x in row):
            raise ContractError("graph is not connected")
    matrix = [[units[i][j] * h for j in range(n)] for i in range(n)]
    return FiniteMMSpace(n, [h] * n, _DenseBackend(matrix), h, labels)


def write_space(space: FiniteMMSpace) -> str:
    """Canonical text serialization; fixed ordering for bit-exact round-trip."""
    b = space.backend
    lines = [f"points {space.n}"]
    if b.kind == "circle":
        lines.append(f"coords 1 torus {_fmt_q(b.k * b.h)}")
        for i in range(b.k):
            lines.append(_fmt_q(i * b.h))
    elif b.kind == "torus":
        lines.append(f"coords 2 torus {_fmt_q(b.k * b.h)}")
        for i in range(b.k):
            for j in range(b.k):
                lines.append(f"{_fmt_q(i * b.h)} {_fmt_q(j * b.h)}")
    elif b.kind == "coords":
        geo = f"torus {_fmt_q(b.period)}" if b.geometry == "torus" else "flat"
        lines.append(f"coords {b.dim} {geo}")
        for row in b.coords:
            lines.append(" ".join(_fmt_q(x) for x in row))
    else:
        lines.append("matrix")
        for i in range(space.n):
            lines.append(" ".join(_fmt_q(space.dist(i, j)) for j in range(space.n)))
    lines.append("weights")
    lines.append(" ".join(_fmt_q(w) for w in space.weight))
    return "\n".join(lines) + "\n"


def _detect_grid(coords: list[tuple[Fraction, ...]], period: Fraction):
    """Reconstruct a uniform circle or torus grid backend if the rows match."""
    n = len(coords)
    dim = len(coords[0])
    if dim == 1:
        h = period / n
        if all(coords[i][0] == i * h for i in range(n)):
            return _CircleBackend(n, h) if n >= 3 else None
        return None
    if dim == 2:
        k = math.isqrt(n)
        if k * k != n or k < 3:
            return None
        h = period / k
        idx = 0
        for i in range(k):
            for j in range(k):
                if coords[idx] != (i * h, j * h):
                    return None
                idx += 1
        return _TorusBackend(k, h)
    return None


def read_space(text: str) -> FiniteMMSpace:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("points "):
        raise FormatError("expected leading 'points <n>' line")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as e:
        raise FormatError("bad point count") from e
    if n < 1:
        raise FormatError("point count must be positive")
    if len(lines) < 2:
        raise FormatError("missing body")
    head = lines[1].split()
    backend = None
    if head[0] == "matrix":
        if len(lines) < 2 + n + 2:
            raise FormatError("truncated matrix section")
        matrix = []
        for r in range(n):
            row = [_parse_q(t) for t in lines[2 + r].split()]
            if len(row) != n:
                raise FormatError(f"matrix row {r} has {len(row)} entries")
            matrix.append(row)
        backend = _DenseBackend(matrix)
        wpos = 2 + n
    elif head[0] == "coords":
        if len(head) not in (3, 4):
            raise FormatError(f"bad coords header {lines[1]!r}")
        try:
            dim = int(head[1])
        except ValueError as e:
            raise FormatError("bad coords dimension") from e
        if head[2] == "flat" and len(head) == 3:
            geometry, period = "flat", None
        elif head[2] == "torus" and len(head) == 4:
            geometry, period = "torus", _parse_q(head[3])
            if period <= 0:
                raise FormatError("torus period must be positive")
        else:
            raise FormatError(f"bad geometry in {lines[1]!r}")
        if len(lines) < 2 + n + 2:
            raise FormatError("truncated coords section")
        coords = []
        for r in range(n):
            row = tuple(_parse_q(t) for t in lines[2 + r].split())
            if len(row) != dim:
                raise FormatError(f"coords row {r} has {len(row)} entries")
            if geometry == "torus" and any(x < 0 or x >= period for x in row):
                raise FormatError(f"coords row {r} outside [0, period)")
            coords.append(row)
        if geometry == "torus":
            backend = _detect_grid(coords, period)
        if backend is None:
            backend = _CoordsBackend(coords, geometry, period)
        wpos = 2 + n
    else:
        raise FormatError(f"expected 'matrix' or 'coords', got {lines[1]!r}")
    if lines[wpos] != "weights":
        raise FormatError("expected 'weights' line")
    weights = [_parse_q(t) for t in lines[wpos + 1].split()]
    if len(weights) != n:
        raise FormatError(f"{len(weights)} weights for {n} points")
    if len(lines) > wpos + 2:
        raise FormatError("trailing content after weights")
    if isinstance(backend, (_CircleBackend, _TorusBackend)):
        h = backend.h
    elif isinstance(backend, _CoordsBackend) and n > 1:
        space = FiniteMMSpace(n, weights, backend, Fraction(1))
        h = _mst_max_edge(space)
    elif isinstance(backend, _DenseBackend) and n > 1:
        space = FiniteMMSpace(n, weights, backend, Fraction(1))
        validate_space(space)
        h = _mst_max_edge(space)
    else:
        h = Fraction(0)
    return FiniteMMSpace(n, weights, backend, h)
