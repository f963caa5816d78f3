"""Shared fixture builders. Imported as plain functions, not pytest fixtures,
so the acceptance module and the demos can reuse them."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from nervelab.simplicial import SimplicialComplex, build_complex


def hollow_triangle() -> SimplicialComplex:
    return build_complex([[0, 1], [1, 2], [0, 2]], 2)


def tetra_boundary() -> SimplicialComplex:
    return build_complex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], 2)


def cycle_complex(n: int) -> SimplicialComplex:
    return build_complex([[i, (i + 1) % n] for i in range(n)], 1)


def path_complex(n: int) -> SimplicialComplex:
    return build_complex([[i, i + 1] for i in range(n - 1)], 1)


def torus7() -> SimplicialComplex:
    """Vertex-minimal torus triangulation: 7 vertices, 21 edges, 14 triangles."""
    tris = [[i % 7, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    tris += [[i % 7, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    return build_complex(tris, 2)


def triangulated_torus(n: int) -> SimplicialComplex:
    """n x n grid on the torus, each square split along one diagonal."""
    def v(a: int, b: int) -> int:
        return (a % n) * n + (b % n)

    tris = []
    for i in range(n):
        for j in range(n):
            tris.append([v(i, j), v(i + 1, j), v(i, j + 1)])
            tris.append([v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)])
    return build_complex(tris, 2)


def wedge_graph(r: int, cycle_len: int = 3) -> SimplicialComplex:
    """r cycles sharing vertex 0; first Betti number r."""
    sims = []
    nxt = 1
    for _ in range(r):
        chain = [0] + list(range(nxt, nxt + cycle_len - 1))
        nxt += cycle_len - 1
        for a, b in zip(chain, chain[1:]):
            sims.append([a, b])
        sims.append([chain[-1], 0])
    return build_complex(sims, 1)


def fixture_set() -> dict[str, SimplicialComplex]:
    return {
        "hollow_triangle": hollow_triangle(),
        "tetra_boundary": tetra_boundary(),
        "torus7": torus7(),
        "wedge2": wedge_graph(2),
        "wedge3": wedge_graph(3),
    }
