import random
from fractions import Fraction

import pytest

from torsionlab.linalg import (
    LinMap,
    Mat,
    ShapeError,
    Subspace,
    image,
    kernel,
    rref,
    solve_affine,
)


def F(x):
    return Fraction(x)


def rand_mat(rng, rows, cols, span=6):
    return Mat(
        [[Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
    )


def test_rref_identity():
    m = Mat.identity(3)
    red, pivots, rank = rref(m)
    assert red == m
    assert pivots == [0, 1, 2]
    assert rank == 3


def test_rref_zero():
    m = Mat.zeros(2, 4)
    red, pivots, rank = rref(m)
    assert red == m
    assert pivots == []
    assert rank == 0


def test_rref_rank_one():
    # [[2,4],[1,2]] row-reduces to [[1,2],[0,0]] by hand.
    m = Mat([[2, 4], [1, 2]])
    red, pivots, rank = rref(m)
    assert red == Mat([[1, 2], [0, 0]])
    assert rank == 1


def test_kernel_identity_and_zero():
    assert kernel(LinMap(Mat.identity(4))).dim == 0
    assert kernel(LinMap(Mat.zeros(1, 3), 3, 1)) == Subspace.full(3)


def test_kernel_hand_example():
    # [[1,1,0]]: kernel solved by hand is span{(1,-1,0),(0,0,1)}.
    ker = kernel(LinMap(Mat([[1, 1, 0]])))
    assert ker == Subspace.span(3, [(1, -1, 0), (0, 0, 1)])
    assert ker.dim == 2


def test_image():
    assert image(Mat.identity(3)) == Subspace.full(3)
    assert image(Mat.zeros(3, 2)).dim == 0
    assert image(Mat([[1, 2], [2, 4]])) == Subspace.span(2, [(1, 2)])


def test_subspace_sum_intersect():
    x_axis = Subspace.span(2, [(1, 0)])
    y_axis = Subspace.span(2, [(0, 1)])
    diag = Subspace.span(2, [(1, 1)])
    assert x_axis + y_axis == Subspace.full(2)
    assert Subspace.full(2).intersect(diag) == diag
    assert x_axis.is_direct_sum(diag)
    assert not (x_axis + y_axis).is_direct_sum(diag)


def test_contains_and_reduce():
    s = Subspace.span(3, [(1, 0, 2), (0, 1, -1)])
    assert s.contains((2, 3, 1))
    assert not s.contains((0, 0, 1))
    assert s.reduce((1, 1, 1)) == (0, 0, 0)


def test_dimension_mismatch_errors():
    with pytest.raises(ShapeError):
        Subspace.span(2, [(1, 0)]) + Subspace.span(3, [(1, 0, 0)])
    with pytest.raises(ShapeError):
        Mat([[1, 2]]) * Mat([[1, 2]])


def test_rank_nullity_randomized():
    rng = random.Random(20240811)
    for _ in range(60):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = rand_mat(rng, rows, cols)
        f = LinMap(m)
        assert kernel(f).dim + image(f).dim == cols


def test_canonicalization_idempotent_order_independent():
    rng = random.Random(7)
    for _ in range(40):
        d = rng.randint(1, 6)
        vs = [rand_mat(rng, 1, d).data[0] for _ in range(rng.randint(1, 5))]
        s1 = Subspace.span(d, vs)
        perm = vs[:]
        rng.shuffle(perm)
        s2 = Subspace.span(d, perm)
        assert s1 == s2
        assert Subspace.span(d, s1.basis) == s1


def test_modular_law_randomized():
    rng = random.Random(99)
    for _ in range(40):
        d = rng.randint(2, 6)
        a = Subspace.span(d, [rand_mat(rng, 1, d).data[0] for _ in range(rng.randint(1, d))])
        b = Subspace.span(d, [rand_mat(rng, 1, d).data[0] for _ in range(rng.randint(1, d))])
        assert (a + b).dim + a.intersect(b).dim == a.dim + b.dim


def test_exactness_bit_identical():
    rng = random.Random(5)
    m = rand_mat(rng, 5, 7)
    assert rref(m) == rref(m)
    f = LinMap(m)
    assert kernel(f) == kernel(f)


def test_inverse_and_det():
    m = Mat([[2, 1], [1, 1]])
    assert m.det() == 1
    assert m.inverse() * m == Mat.identity(2)
    assert Mat([[1, 2], [2, 4]]).det() == 0
    with pytest.raises(ShapeError):
        Mat([[1, 2], [2, 4]]).inverse()


def test_solve_affine():
    sol = solve_affine([[1, 1], [0, 1]], [3, 1])
    assert sol == (F(2), F(1))
    assert solve_affine([[1, 1], [1, 1]], [0, 1]) is None
    # underdetermined: free variable pinned to zero
    assert solve_affine([[1, 1, 0]], [5]) == (F(5), F(0), F(0))


def test_block_and_flatten():
    a = Mat([[1, 2], [3, 4]])
    b = Mat.block([[a, None], [None, Mat.identity(1)]])
    assert b == Mat([[1, 2, 0], [3, 4, 0], [0, 0, 1]])
    assert Mat.unflatten(2, 2, a.flatten()) == a
