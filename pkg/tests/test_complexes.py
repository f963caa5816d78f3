"""Complex construction, closure, balls, Euler characteristic, text format.

Claims checked here:
- build_complex closes downward and truncates at max_dim; vertex_count is
  1 + max id; duplicate ids inside a simplex are rejected.
- closed_ball follows the vertex-distance convention and relabels compactly.
- euler_characteristic is the alternating face-count sum and agrees with the
  alternating Betti sum when the dimension cap covers everything.
- the text format round-trips bit-exactly.
"""

import pytest
from conftest import cycle_complex, hollow_triangle, path_complex, tetra_boundary, torus7

from nervelab.errors import ContractError, FormatError
from nervelab.simplicial import (
    RootedComplex,
    betti_numbers,
    build_complex,
    closed_ball,
    connected_components,
    euler_characteristic,
    maximal_simplices,
    read_complex,
    write_complex,
)


def test_build_triangle_closure():
    K = build_complex([[0, 1, 2]], 2)
    assert K.counts() == (3, 3, 1)
    assert K.vertex_count == 3


def test_build_empty():
    K = build_complex([], 2)
    assert K.counts() == ()
    assert K.vertex_count == 0


def test_build_tetra_boundary_counts():
    K = tetra_boundary()
    assert K.counts() == (4, 6, 4)


def test_build_truncation():
    # A solid tetrahedron capped at dimension 1 keeps only its graph.
    K = build_complex([[0, 1, 2, 3]], 1)
    assert K.counts() == (4, 6)


def test_build_rejects_duplicate_vertex():
    with pytest.raises(ContractError):
        build_complex([[0, 1, 1]], 2)


def test_build_rejects_negative_id():
    with pytest.raises(ContractError):
        build_complex([[-1, 0]], 1)


def test_isolated_vertex_via_singleton():
    K = build_complex([[0, 1], [5]], 1)
    assert (5,) in K.simplices(0)
    assert K.vertex_count == 6
    assert len(K.vertices) == 3


def test_degree_query():
    K = hollow_triangle()
    assert all(K.degree(v) == 2 for v in range(3))


def test_closed_ball_hollow_triangle():
    K = hollow_triangle()
    whole = closed_ball(RootedComplex(K, 0), 1)
    assert whole.complex.counts() == (3, 3)
    single = closed_ball(RootedComplex(K, 0), 0)
    assert single.complex.counts() == (1,)
    assert single.root == 0


def test_closed_ball_path():
    K = path_complex(5)
    b = closed_ball(RootedComplex(K, 0), 2)
    assert b.complex.counts() == (3, 2)


def test_closed_ball_simplex_convention():
    # A triangle hanging off the root at distance 1: one triangle vertex is at
    # distance 2, so the triangle enters the ball only at r = 2.
    K = build_complex([[0, 1], [1, 2, 3]], 2)
    r1 = closed_ball(RootedComplex(K, 0), 1)
    assert r1.complex.counts() == (2, 1)
    r2 = closed_ball(RootedComplex(K, 0), 2)
    assert r2.complex.counts() == (4, 4, 1)


def test_euler_examples():
    assert euler_characteristic(tetra_boundary()) == 2
    assert euler_characteristic(hollow_triangle()) == 0
    assert euler_characteristic(torus7()) == 0


def test_euler_equals_alternating_betti_sum():
    for K in (hollow_triangle(), tetra_boundary(), torus7(), cycle_complex(9)):
        b = betti_numbers(K, K.max_dim)
        assert euler_characteristic(K) == sum((-1) ** i * x for i, x in enumerate(b))


def test_components():
    K = build_complex([[0, 1], [2, 3], [4]], 1)
    assert len(connected_components(K)) == 3


# -- text format -----------------------------------------------------------

def test_maximal_simplices_of_triangle_with_tail():
    K = build_complex([[0, 1, 2], [2, 3]], 2)
    assert maximal_simplices(K) == [(0, 1, 2), (2, 3)]


def test_format_round_trip_bit_exact():
    for K in (torus7(), tetra_boundary(), build_complex([[0, 1], [5]], 1)):
        text = write_complex(K)
        K2 = read_complex(text)
        assert K2 == K
        assert write_complex(K2) == text


def test_format_comments_and_blanks():
    K = read_complex("# header\n\n0 1 2\n\n2 3  # tail edge\n")
    assert K.counts() == (4, 4, 1)


def test_format_rejects_garbage():
    with pytest.raises(FormatError):
        read_complex("0 x 2\n")
    with pytest.raises(FormatError):
        read_complex("0 -2\n")
