"""Finite simplicial complexes with downward-closed simplex storage.

A complex stores every simplex up to `max_dim` explicitly, as sorted vertex
tuples grouped by dimension. All higher-level operations (homology, rooted
balls, profiles, gluing) work on this one representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from ..errors import ContractError, FormatError

Simplex = tuple[int, ...]


class SimplicialComplex:
    """Immutable downward-closed simplex family over vertices [0, vertex_count).

    `vertex_count` is one more than the largest vertex id mentioned at build
    time; ids below it that appear in no simplex are not vertices of the
    complex (the stored 0-simplices are).
    """

    __slots__ = ("vertex_count", "max_dim", "_by_dim", "_adj")

    def __init__(self, vertex_count: int, max_dim: int, by_dim: Sequence[frozenset]):
        self.vertex_count = vertex_count
        self.max_dim = max_dim
        self._by_dim = tuple(by_dim)
        self._adj: dict[int, frozenset[int]] | None = None

    # -- queries ------------------------------------------------------------

    def simplices(self, dim: int) -> frozenset[Simplex]:
        if dim < 0 or dim > self.max_dim:
            return frozenset()
        if dim >= len(self._by_dim):
            return frozenset()
        return self._by_dim[dim]

    def counts(self) -> tuple[int, ...]:
        """Number of stored simplices per dimension, up to the top nonempty one."""
        out = [len(s) for s in self._by_dim]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def has(self, simplex: Simplex) -> bool:
        d = len(simplex) - 1
        return simplex in self.simplices(d)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for (v,) in self.simplices(0))

    def adjacency(self) -> dict[int, frozenset[int]]:
        """Neighbor sets in the 1-skeleton; cached."""
        if self._adj is None:
            nbr: dict[int, set[int]] = {v: set() for (v,) in self.simplices(0)}
            for (u, v) in self.simplices(1):
                nbr[u].add(v)
                nbr[v].add(u)
            self._adj = {v: frozenset(s) for v, s in nbr.items()}
        return self._adj

    def degree(self, v: int) -> int:
        """Number of edges at v."""
        adj = self.adjacency()
        if v not in adj:
            raise ContractError(f"vertex {v} is not in the complex")
        return len(adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.counts() == other.counts()
            and all(
                self.simplices(d) == other.simplices(d)
                for d in range(max(len(self._by_dim), len(other._by_dim)))
            )
        )

    def __hash__(self):
        return hash((self.vertex_count, tuple(self._by_dim)))

    def __repr__(self):
        return f"SimplicialComplex(n={self.vertex_count}, counts={self.counts()})"


@dataclass(frozen=True)
class RootedComplex:
    complex: SimplicialComplex
    root: int

    def __post_init__(self):
        if (self.root,) not in self.complex.simplices(0):
            raise ContractError(f"root {self.root} is not a vertex of the complex")


def _close_downward(maximal: Iterable[Sequence[int]], max_dim: int) -> list[set[Simplex]]:
    by_dim: list[set[Simplex]] = [set() for _ in range(max_dim + 1)]
    for raw in maximal:
        verts = tuple(raw)
        for v in verts:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ContractError(f"vertex ids must be non-negative integers, got {v!r}")
        if len(set(verts)) != len(verts):
            raise ContractError(f"duplicate vertex inside simplex {list(raw)!r}")
        verts = tuple(sorted(verts))
        top = min(len(verts) - 1, max_dim)
        for size in range(1, top + 2):
            for face in combinations(verts, size):
                by_dim[size - 1].add(face)
    # Cascade: every facet of a stored simplex is stored. combinations above
    # already added all subsets, so nothing further is needed.
    return by_dim


def build_complex(maximal_simplices: Iterable[Sequence[int]], max_dim: int) -> SimplicialComplex:
    """Downward closure of the given simplices, truncated at max_dim.

    vertex_count is 1 + the largest id mentioned (0 for empty input).
    """
    if max_dim < 0:
        raise ContractError("max_dim must be non-negative")
    maximal = [list(s) for s in maximal_simplices]
    by_dim = _close_downward(maximal, max_dim)
    top = max((v for s in maximal for v in s), default=-1)
    return SimplicialComplex(top + 1, max_dim, [frozenset(s) for s in by_dim])


def from_simplex_sets(
    vertex_count: int, max_dim: int, by_dim: Sequence[Iterable[Simplex]]
) -> SimplicialComplex:
    """Internal-ish constructor for callers that guarantee downward closure."""
    padded = [frozenset(by_dim[d]) if d < len(by_dim) else frozenset() for d in range(max_dim + 1)]
    return SimplicialComplex(vertex_count, max_dim, padded)


def euler_characteristic(K: SimplicialComplex) -> int:
    """Alternating sum of face counts."""
    return sum((-1) ** d * c for d, c in enumerate(K.counts()))


def closed_ball(K: RootedComplex, r: int) -> RootedComplex:
    """Subcomplex of simplices whose vertices all lie within graph distance r
    of the root in the 1-skeleton, relabeled to compact ids (order-preserving).
    """
    if r < 0:
        raise ContractError("radius must be non-negative")
    cx = K.complex
    adj = cx.adjacency()
    dist = {K.root: 0}
    frontier = [K.root]
    for step in range(1, r + 1):
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = step
                    nxt.append(w)
        frontier = nxt
    kept = sorted(dist)
    relabel = {v: i for i, v in enumerate(kept)}
    keptset = set(kept)
    by_dim = []
    for d in range(cx.max_dim + 1):
        sims = set()
        for s in cx.simplices(d):
            if all(v in keptset for v in s):
                sims.add(tuple(relabel[v] for v in s))
        by_dim.append(frozenset(sims))
    sub = SimplicialComplex(len(kept), cx.max_dim, by_dim)
    return RootedComplex(sub, relabel[K.root])


# -- text format ----------------------------------------------------------
#
# One maximal simplex per line, space-separated decimal vertex ids. `#` opens
# a comment, blank lines are skipped. Written canonically: each simplex
# sorted, lines sorted as integer tuples, so write(read(write(K))) is
# byte-identical to write(K).


def maximal_simplices(K: SimplicialComplex) -> list[Simplex]:
    out = []
    for d in range(K.max_dim + 1):
        above = K.simplices(d + 1)
        cofaced = set()
        for t in above:
            for face in combinations(t, len(t) - 1):
                cofaced.add(face)
        for s in K.simplices(d):
            if s not in cofaced:
                out.append(s)
    return sorted(out)


def write_complex(K: SimplicialComplex) -> str:
    lines = [" ".join(str(v) for v in s) for s in maximal_simplices(K)]
    return "\n".join(lines) + ("\n" if lines else "")


def read_complex(text: str, max_dim: int | None = None) -> SimplicialComplex:
    sims: list[list[int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError as e:
            raise FormatError(f"line {ln}: expected integer vertex ids") from e
        if any(v < 0 for v in verts):
            raise FormatError(f"line {ln}: negative vertex id")
        sims.append(verts)
    if max_dim is None:
        max_dim = max((len(s) - 1 for s in sims), default=0)
    try:
        return build_complex(sims, max_dim)
    except ContractError as e:
        raise FormatError(str(e)) from e


def connected_components(K: SimplicialComplex) -> list[frozenset[int]]:
    """Vertex sets of the 1-skeleton components."""
    adj = K.adjacency()
    seen: set[int] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps
