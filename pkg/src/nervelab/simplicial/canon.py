"""Root-preserving isomorphism and canonical codes for rooted complexes.

The canonical code is the lexicographically least byte serialization of the
complex over all vertex orderings that place the root first. Two rooted
complexes get equal codes exactly when they are root-isomorphic, which makes
the code usable as a dictionary key for isomorphism classes.

Serialization: after placing vertex k, the block for position k lists every
simplex whose largest placed position is k, each encoded as a length byte
followed by position bytes, entries sorted, the block closed by 0xFF. Content
bytes stay below 0xFD, so blocks are prefix-free and concatenations compare
blockwise. The block for position k depends only on the placed order and the
new vertex, so a branch-and-bound search that explores exactly the candidates
with the least next block computes the true minimum.

root_isomorphic is an independent backtracking matcher, deliberately not
implemented via codes; tests cross-check the two against each other.
"""

from __future__ import annotations

from ..errors import ContractError
from .complexes import RootedComplex, Simplex, SimplicialComplex, closed_ball

_END = 0xFF
_SEP = 0xFE
_CODE_VERTEX_LIMIT = 250


def _root_distances(cx: SimplicialComplex, root: int) -> dict[int, int]:
    adj = cx.adjacency()
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def _vertex_invariant(cx: SimplicialComplex, dist: dict[int, int], v: int) -> tuple:
    per_dim = tuple(
        sum(1 for s in cx.simplices(d) if v in s) for d in range(1, cx.max_dim + 1)
    )
    return (dist[v], per_dim)


def _split_components(a: RootedComplex) -> tuple[RootedComplex, list[SimplicialComplex]]:
    """Root component (relabeled) plus the remaining components as complexes."""
    cx = a.complex
    n = cx.vertex_count
    rooted = closed_ball(a, n)
    covered = _root_distances(cx, a.root).keys()
    rest = []
    remaining = sorted(cx.vertices - set(covered))
    seen: set[int] = set()
    for v in remaining:
        if v in seen:
            continue
        comp = closed_ball(RootedComplex(cx, v), n)
        seen |= {u for u in _root_distances(cx, v)}
        rest.append(comp.complex)
    return rooted, rest


def _rooted_iso(a: RootedComplex, b: RootedComplex) -> bool:
    """Backtracking matcher for root-connected complexes."""
    ca, cb = a.complex, b.complex
    if ca.counts() != cb.counts():
        return False
    dist_a = _root_distances(ca, a.root)
    dist_b = _root_distances(cb, b.root)
    if len(dist_a) != len(ca.vertices) or len(dist_b) != len(cb.vertices):
        raise ContractError("_rooted_iso requires root-connected complexes")
    if sorted(dist_a.values()) != sorted(dist_b.values()):
        return False
    inv_a = {v: _vertex_invariant(ca, dist_a, v) for v in dist_a}
    inv_b = {v: _vertex_invariant(cb, dist_b, v) for v in dist_b}
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return False

    order = sorted(dist_a, key=lambda v: (dist_a[v], inv_a[v], v))
    order.remove(a.root)
    order.insert(0, a.root)
    adj_a, adj_b = ca.adjacency(), cb.adjacency()
    sims_of_a: dict[int, list[Simplex]] = {v: [] for v in dist_a}
    for d in range(1, ca.max_dim + 1):
        for s in ca.simplices(d):
            for v in s:
                sims_of_a[v].append(s)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        if inv_a[v] != inv_b[w]:
            return False
        for u, x in mapping.items():
            if (u in adj_a[v]) != (x in adj_b[w]):
                return False
        for s in sims_of_a[v]:
            if all(x in mapping or x == v for x in s):
                img = tuple(sorted(mapping.get(x, w) for x in s))
                if not cb.has(img):
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cands = [b.root] if v == a.root else [w for w in sorted(dist_b) if w not in used]
        for w in cands:
            if consistent(v, w):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)


def root_isomorphic(a: RootedComplex, b: RootedComplex) -> bool:
    """True iff a simplicial isomorphism exists taking a's root to b's root."""
    root_a, rest_a = _split_components(a)
    root_b, rest_b = _split_components(b)
    if not _rooted_iso(root_a, root_b):
        return False
    if len(rest_a) != len(rest_b):
        return False
    if not rest_a:
        return True

    def unrooted_iso(x: SimplicialComplex, y: SimplicialComplex) -> bool:
        va = min(x.vertices)
        return any(
            _rooted_iso(RootedComplex(x, va), RootedComplex(y, w)) for w in sorted(y.vertices)
        )

    unmatched = list(range(len(rest_b)))

    def match(i: int) -> bool:
        if i == len(rest_a):
            return True
        for jpos, j in enumerate(unmatched):
            if unrooted_iso(rest_a[i], rest_b[j]):
                unmatched.pop(jpos)
                if match(i + 1):
                    return True
                unmatched.insert(jpos, j)
        return False

    return match(0)


def _code_connected(a: RootedComplex) -> bytes:
    cx = a.complex
    verts = sorted(cx.vertices)
    n = len(verts)
    if n > _CODE_VERTEX_LIMIT:
        raise ContractError(f"canonical_code supports at most {_CODE_VERTEX_LIMIT} vertices")
    dist = _root_distances(cx, a.root)
    sims_of: dict[int, list[Simplex]] = {v: [] for v in verts}
    for d in range(1, cx.max_dim + 1):
        for s in cx.simplices(d):
            for v in s:
                sims_of[v].append(s)

    def block(placed_pos: dict[int, int], v: int) -> bytes:
        k = len(placed_pos)
        entries = [bytes((1, k))]
        for s in sims_of[v]:
            if all(u == v or u in placed_pos for u in s):
                pos = sorted(placed_pos.get(u, k) for u in s)
                entries.append(bytes((len(pos),)) + bytes(pos))
        entries.sort()
        return b"".join(entries) + bytes((_END,))

    best: list[bytes | None] = [None]

    def search(placed_pos: dict[int, int], remaining: list[int], prefix: bytes) -> None:
        bp = best[0]
        if bp is not None and prefix > bp[: len(prefix)]:
            return
        if not remaining:
            if bp is None or prefix < bp:
                best[0] = prefix
            return
        blocks = {}
        min_block = None
        for v in remaining:
            bl = block(placed_pos, v)
            blocks[v] = bl
            if min_block is None or bl < min_block:
                min_block = bl
        for v in remaining:
            if blocks[v] != min_block:
                continue
            placed_pos[v] = len(placed_pos)
            search(placed_pos, [u for u in remaining if u != v], prefix + min_block)
            del placed_pos[v]

    assert set(dist) == set(verts)
    search({a.root: 0}, [v for v in verts if v != a.root], bytes((n, 1, 0, _END)))
    out = best[0]
    assert out is not None
    return out


def canonical_code(a: RootedComplex) -> bytes:
    """Byte string equal across exactly the root-isomorphism class of `a`.

    Disconnected complexes are encoded as the root component's code followed
    by the sorted minimal codes of the other components.
    """
    rooted, rest = _split_components(a)
    code = _code_connected(rooted)
    if not rest:
        return code
    tail = []
    for comp in rest:
        tail.append(min(_code_connected(RootedComplex(comp, v)) for v in sorted(comp.vertices)))
    tail.sort()
    return code + b"".join(bytes((_SEP,)) + t for t in tail)
