from fractions import Fraction

import pytest

from torsionlab.algebras import bracket, is_subalgebra
from torsionlab.builders import (
    build,
    build_delta_gl,
    build_delta_so,
    build_gl,
    build_gl_C,
    build_gl_H,
    build_lagrangian_symplectic,
    build_product_gl,
    build_sl_C,
    build_so,
    build_sp,
    build_sp_C,
    build_sp_H,
    build_su,
    build_tangent_gl,
    build_u,
    catalog,
    hyperparacomplex_triple,
    quaternion_triple,
    standard_J,
    standard_omega,
)
from torsionlab.linalg import Mat


CLASSICAL_DIMS = [
    (build_sp(2), 2 * (2 * 2 + 1) // 2 * 2),          # m(2m+1), m=2 -> 10
    (build_sp(3), 21),
    (build_u(2), 4),
    (build_u(3), 9),
    (build_u(1, 1), 4),
    (build_su(2), 3),
    (build_su(3), 8),
    (build_so(3), 3),
    (build_so(4), 6),
    (build_so(5), 10),
    (build_so(2, 2), 6),
    (build_so(3, 1), 6),
    (build_gl_C(2), 8),
    (build_gl_C(3), 18),
    (build_sl_C(2), 6),
    (build_sl_C(3), 16),
    (build_sp_C(1), 6),
    (build_gl_H(1), 4),
    (build_gl_H(2), 16),
    (build_sp_H(1), 3),
    (build_delta_gl(2), 4),
    (build_delta_gl(3), 9),
    (build_delta_so(3), 3),
]


@pytest.mark.parametrize("h,dim", CLASSICAL_DIMS, ids=lambda x: getattr(x, "name", str(x)))
def test_classical_dimensions(h, dim):
    assert h.dim == dim


def test_sp_builder_example():
    assert build_sp(2).dim == 10
    assert build_u(2).dim == 4
    assert build_gl_H(1).dim == 4


def test_every_catalog_algebra_is_a_subalgebra():
    for h in catalog():
        assert is_subalgebra(h.basis), h.name


def test_metric_builders_exact_skewness():
    for h in (build_so(3, 1), build_u(2), build_sp_H(1), build_delta_so(2)):
        g = h.structures["g"]
        for f in h.basis:
            assert (g * f + f.transpose() * g).is_zero()


def test_complex_builders_commute_with_J():
    for h in (build_gl_C(2), build_sl_C(3), build_sp_C(1), build_u(2), build_su(3)):
        j = h.structures["J"]
        for f in h.basis:
            assert bracket(f, j).is_zero()


def test_quaternion_triple_relations():
    i0, j0, k0 = quaternion_triple(4)
    assert i0 * j0 == k0
    assert j0 * i0 == -1 * k0
    assert (i0 * i0 + Mat.identity(4)).is_zero()
    assert (k0 * k0 + Mat.identity(4)).is_zero()


def test_gl_H_every_nonzero_element_invertible():
    h = build_gl_H(1)
    rng_coeffs = [(1, 0, 0, 0), (1, 2, 3, 4), (0, 1, 0, 0), (2, -1, 5, 7)]
    for cs in rng_coeffs:
        m = h.element([Fraction(c) for c in cs])
        assert m.det() != 0


def test_hyperparacomplex_triple():
    j, e, k = hyperparacomplex_triple(4)
    assert (j * j + Mat.identity(4)).is_zero()
    assert e * e == Mat.identity(4)
    assert j * e == k
    assert e * j == -1 * k
    assert k * k == Mat.identity(4)


def test_omega_invariance_of_sp():
    h = build_sp(2)
    om = h.structures["omega"]
    for f in h.basis:
        assert (f.transpose() * om + om * f).is_zero()


def test_product_tangent_builders():
    assert build_product_gl(4, 2).dim == 8
    assert build_tangent_gl(2).dim == 8
    assert build_product_gl(5, 2).dim == 4 + 9


def test_lagrangian_symplectic_builder():
    h = build_lagrangian_symplectic(2)
    assert h.n == 5
    assert h.dim == 3  # Sym_L: m(m-1)/2 = 1, plus dim L = 2
    assert is_subalgebra(h.basis)
    om = h.structures["omega_u"]
    lag = h.structures["lagrangian"]
    for a in lag.basis:
        for b in lag.basis:
            assert sum(a[i] * om.data[i][j] * b[j] for i in range(4) for j in range(4)) == 0


def test_build_dispatcher():
    h = build({"builder": "sp", "params": {"m": 2}})
    assert h.dim == 10 and h.n == 4
    with pytest.raises(KeyError):
        build({"builder": "nope", "params": {}})
    hb = build({"basis": [[[0, -1], [1, 0]]], "name": "so(2)"})
    assert hb.dim == 1
    with pytest.raises(ValueError):
        build({"basis": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]})


def test_standard_structures_shapes():
    assert standard_J(4) * standard_J(4) == -1 * Mat.identity(4)
    assert standard_omega(4).transpose() == -1 * standard_omega(4)
    assert build_gl(3).dim == 9
