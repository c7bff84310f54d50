import random
from fractions import Fraction

import pytest

from torsionlab.builders import (
    build_gl,
    build_gl_C,
    build_gl_H,
    build_so,
    build_sp,
    build_u,
    standard_J,
)
from torsionlab.engine import (
    AlmostAbelian,
    Certificate,
    ConnectionTensor,
    Refusal,
    apply_torsion,
    characteristic_subalgebra,
    check_torsion_free,
    connection_space,
    curvature_tensor,
    first_prolongation,
    flat_certificate,
    nijenhuis,
    obstruction_space,
    split_torsion,
    tableau,
    torsion_maps,
    torsion_tensor,
)
from torsionlab.algebras import LinearSubalgebra
from torsionlab.linalg import Mat, Subspace


def E(n, i, j):
    out = [[Fraction(0)] * n for _ in range(n)]
    out[i][j] = Fraction(1)
    return Mat(out)


def elementary_flat(m, i, j):
    return E(m, i, j).flatten()


def sp_char_block_subspace():
    """Expected k~ for sp(4,R): [[A, 0], [w^t, a]] with A in sp(2,R)."""
    sp2 = build_sp(1)
    vecs = []
    for a in sp2.basis:
        big = Mat.block([[a, Mat.zeros(2, 1)], [Mat.zeros(1, 2), Mat.zeros(1, 1)]])
        vecs.append(big.flatten())
    vecs += [elementary_flat(3, 2, 0), elementary_flat(3, 2, 1), elementary_flat(3, 2, 2)]
    return Subspace.span(9, vecs)


def glC_char_block_subspace():
    """Expected k~ for gl(2,C): [[A, v], [0, a]] with A in gl(1,C)."""
    vecs = [
        Mat.block([[Mat.identity(2), Mat.zeros(2, 1)], [Mat.zeros(1, 2), Mat.zeros(1, 1)]]).flatten(),
        Mat.block([[standard_J(2), Mat.zeros(2, 1)], [Mat.zeros(1, 2), Mat.zeros(1, 1)]]).flatten(),
        elementary_flat(3, 0, 2),
        elementary_flat(3, 1, 2),
        elementary_flat(3, 2, 2),
    ]
    return Subspace.span(9, vecs)


def test_characteristic_subalgebra_gl():
    h = build_gl(4)
    k = characteristic_subalgebra(h)
    assert k == Subspace.full(9)


def test_characteristic_subalgebra_sp4():
    k = characteristic_subalgebra(build_sp(2))
    assert k.dim == 6
    assert k == sp_char_block_subspace()


def test_characteristic_subalgebra_gl2C():
    k = characteristic_subalgebra(build_gl_C(2))
    assert k.dim == 5
    assert k == glC_char_block_subspace()


def test_tableau_and_prolongation_so4():
    h = build_so(4)
    kt = tableau(h)
    assert kt.dim == 6
    k1 = first_prolongation(h)
    # S^2(R^3)* tensor e_4: symmetric pairs (i,j) with value along the last axis
    vecs = []
    n, m = 4, 3
    for i in range(3):
        for j in range(i, 3):
            flat = [Fraction(0)] * (m * m * n)
            flat[i * m * n + j * n + 3] = Fraction(1)
            flat[j * m * n + i * n + 3] = Fraction(1)
            vecs.append(flat)
    assert k1 == Subspace.span(36, vecs)
    assert k1.dim == 6


def test_prolongation_trivial_cases():
    assert first_prolongation(build_gl_H(1)).dim == 0
    zero = LinearSubalgebra(3, [], name="0")
    assert tableau(zero).dim == 0
    assert first_prolongation(zero).dim == 0


def test_connection_space_gl2():
    # n = 2: a single hyperplane direction, no symmetry constraints
    d = connection_space(build_gl(2))
    assert d.dim == 8
    assert d.contains([Fraction(0)] * 8)


def test_connection_space_independent_route():
    # Zassenhaus oracle: D = ((R^n)* x h) meet (symmetric on hyperplane pairs)
    for h in (build_sp(2), build_u(2)):
        n = h.n
        ambient = n**3
        tens = []
        for i in range(n):
            for b in h.basis:
                flat = [Fraction(0)] * ambient
                for k in range(n):
                    for j in range(n):
                        flat[i * n * n + j * n + k] = b.data[k][j]
                tens.append(flat)
        span_h = Subspace.span(ambient, tens)
        sym_vecs = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if i < n - 1 and j < n - 1 and i != j:
                        continue
                    flat = [Fraction(0)] * ambient
                    flat[i * n * n + j * n + k] = Fraction(1)
                    sym_vecs.append(flat)
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                for k in range(n):
                    flat = [Fraction(0)] * ambient
                    flat[i * n * n + j * n + k] = Fraction(1)
                    flat[j * n * n + i * n + k] = Fraction(1)
                    sym_vecs.append(flat)
        sym = Subspace.span(ambient, sym_vecs)
        assert connection_space(h) == span_h.intersect(sym)


def test_torsion_of_zero_connection():
    h = build_gl(3)
    v = (0, 0, 1)
    tm = apply_torsion([Fraction(0)] * 27, 3, tuple(Fraction(x) for x in v))
    assert tm.is_zero()


def test_torsion_of_direction_only_connection():
    # nabla with only nabla_{e_n} = F, F preserving the hyperplane:
    # T1 = F restricted, T2 = 0
    n = 3
    f_mat = Mat([[1, 2, 0], [3, 4, 0], [0, 0, 5]])
    gamma = [Fraction(0)] * 27
    for j in range(3):
        for k in range(3):
            gamma[(n - 1) * 9 + j * 3 + k] = f_mat.data[k][j]
    v = tuple(Fraction(x) for x in (0, 0, 1))
    t1, t2 = split_torsion(apply_torsion(gamma, 3, v), v)
    assert t1 == Mat([[1, 2], [3, 4]])
    assert t2 == (Fraction(0), Fraction(0))


def test_obstruction_space_sp4_equals_char():
    h = build_sp(2)
    f_space = obstruction_space(h)
    assert f_space.dim == 6
    assert f_space == characteristic_subalgebra(h) == sp_char_block_subspace()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_obstruction_space_so_full(n):
    assert obstruction_space(build_so(n)) == Subspace.full((n - 1) * (n - 1))


def test_obstruction_space_u2():
    h = build_u(2)
    f_space = obstruction_space(h)
    assert f_space.dim == 2
    expected = Subspace.span(
        9,
        [
            Mat.block([[standard_J(2), Mat.zeros(2, 1)], [Mat.zeros(1, 2), Mat.zeros(1, 1)]]).flatten(),
            elementary_flat(3, 2, 2),
        ],
    )
    assert f_space == expected
    assert characteristic_subalgebra(h).dim == 1


def test_v_independence():
    h = build_sp(2)
    base = obstruction_space(h)
    for v in [(0, 0, 0, 1), (1, 0, 0, 1), (2, -1, 3, 5), (0, 0, 0, -2)]:
        assert obstruction_space(h, tuple(Fraction(x) for x in v)) == base
    with pytest.raises(ValueError):
        obstruction_space(h, (1, 0, 0, 0))


def test_check_torsion_free_glC_certificate():
    h = build_gl_C(2)
    f = Mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    res = check_torsion_free(h, AlmostAbelian(f))
    assert isinstance(res, Certificate)
    assert res.residuals["torsion_max_abs"] == 0
    tors = torsion_tensor(res.nabla, AlmostAbelian(f))
    assert all(x == 0 for x in tors)


def test_check_torsion_free_refusal():
    h = build_sp(2)
    f = Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])  # upper-right entry breaks the block form
    res = check_torsion_free(h, AlmostAbelian(f))
    assert isinstance(res, Refusal)
    assert any(x != 0 for x in res.residual)


def test_check_torsion_free_zero_f():
    for h in (build_sp(2), build_u(2), build_gl_H(1)):
        res = check_torsion_free(h, AlmostAbelian(Mat.zeros(h.n - 1, h.n - 1)))
        assert isinstance(res, Certificate)
        assert res.nabla.is_zero()


def test_flat_certificate_zero():
    res = flat_certificate(build_sp(2), AlmostAbelian(Mat.zeros(3, 3)))
    assert isinstance(res, Certificate)
    assert res.nabla.is_zero()


def test_flat_certificate_sp4():
    f = Mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])  # A = [[0,1],[0,0]] in sp(2,R)
    res = flat_certificate(build_sp(2), AlmostAbelian(f))
    assert isinstance(res, Certificate)
    aa = AlmostAbelian(f)
    assert all(x == 0 for x in torsion_tensor(res.nabla, aa))
    assert all(x == 0 for x in curvature_tensor(res.nabla, aa))


def test_flat_certificate_so4_rotation():
    f = Mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    res = flat_certificate(build_so(4), AlmostAbelian(f))
    assert isinstance(res, Certificate)


def test_flat_certificate_refusal():
    f = Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    res = flat_certificate(build_sp(2), AlmostAbelian(f))
    assert isinstance(res, Refusal)


def test_tensors_zero_for_abelian():
    aa = AlmostAbelian(Mat.zeros(2, 2))
    zero = ConnectionTensor(3, [0] * 27)
    assert all(x == 0 for x in torsion_tensor(zero, aa))
    assert all(x == 0 for x in curvature_tensor(zero, aa))


def test_generic_connection_has_torsion():
    rng = random.Random(3)
    f = Mat([[1, 2], [0, 1]])
    aa = AlmostAbelian(f)
    gamma = [Fraction(rng.randint(-3, 3)) for _ in range(27)]
    tors = torsion_tensor(ConnectionTensor(3, gamma), aa)
    assert any(x != 0 for x in tors)


def test_nijenhuis_abelian_zero():
    aa = AlmostAbelian(Mat.zeros(3, 3))
    j = standard_J(4)
    assert all(x == 0 for x in nijenhuis(j, aa))


def test_nijenhuis_integrable_complex():
    # f in the gl(2,C) block pattern -> J0 is integrable on g_f
    f = Mat([[0, -1, 1], [1, 0, 2], [0, 0, 3]])
    aa = AlmostAbelian(f)
    assert all(x == 0 for x in nijenhuis(standard_J(4), aa))


def test_nijenhuis_nonintegrable():
    f = Mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])  # not in the gl(2,C) block form
    aa = AlmostAbelian(f)
    vals = nijenhuis(standard_J(4), aa)
    assert any(x != 0 for x in vals)
    flipped = nijenhuis(standard_J(4), aa, standard_sign=False)
    assert vals != flipped


def test_k_char_inside_obstruction():
    for h in (build_sp(2), build_u(2), build_so(4), build_gl_C(2), build_gl_H(1)):
        kt = characteristic_subalgebra(h)
        fs = obstruction_space(h)
        assert fs.contains_space(kt)


def test_check_torsion_free_with_hyperplane_map():
    # conjugating by the identity must not change the verdict
    h = build_sp(2)
    f = Mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    res = check_torsion_free(h, AlmostAbelian(f), hyperplane_map=Mat.identity(4))
    assert isinstance(res, Certificate)


def test_so4_realizes_elementary_f():
    # F_{so(4)} = End(R^3), so the system T(nabla) = e^1 x e_1 is solvable
    h = build_so(4)
    f = E(3, 0, 0)
    res = check_torsion_free(h, AlmostAbelian(f))
    assert isinstance(res, Certificate)
    v = tuple(Fraction(1 if i == 3 else 0) for i in range(4))
    t1, t2 = split_torsion(apply_torsion(res.nabla.gamma, 4, v), v)
    assert t1 == f
    assert all(x == 0 for x in t2)


def test_check_torsion_free_nonspecial_type():
    # product type [U3]: straighten by the orbit map, then certify an
    # f matching the [U3] pattern and refuse one breaking it
    from torsionlab.builders import build_product_gl
    from torsionlab.existence import orbit_catalog, product_obstruction
    from torsionlab.engine import Refusal

    n, p = 4, 2
    h = build_product_gl(n, p)
    t3 = orbit_catalog("product", n, p=p).reps[2]["T"]
    pattern = product_obstruction(n, p, 3)
    f_good = Mat([[1, 0, 2], [0, 3, 4], [0, 0, 5]])
    assert pattern.contains(f_good.flatten())
    res = check_torsion_free(h, AlmostAbelian(f_good), hyperplane_map=t3)
    assert isinstance(res, Certificate)
    f_bad = Mat([[1, 1, 0], [0, 3, 0], [0, 0, 5]])
    assert not pattern.contains(f_bad.flatten())
    res = check_torsion_free(h, AlmostAbelian(f_bad), hyperplane_map=t3)
    assert isinstance(res, Refusal)


def test_certificate_with_custom_transversal():
    h = build_u(2)
    f = Mat([[0, -1, 0], [1, 0, 0], [0, 0, 2]])
    v = tuple(Fraction(x) for x in (1, 0, -1, 2))
    res = check_torsion_free(h, AlmostAbelian(f), v=v)
    assert isinstance(res, Certificate)
    assert all(x == 0 for x in torsion_tensor(res.nabla, AlmostAbelian(f)))


def test_n2_boundary_so2():
    # n = 2: F_{so(2)} is all of End(R^1) but k~ vanishes, so every f is
    # torsion-free for the metric group while only f = 0 is flat
    so2 = LinearSubalgebra(2, [Mat([[0, -1], [1, 0]])], name="so(2)")
    assert obstruction_space(so2) == Subspace.full(1)
    assert characteristic_subalgebra(so2).dim == 0
    assert isinstance(check_torsion_free(so2, AlmostAbelian(Mat([[1]]))), Certificate)
    assert isinstance(flat_certificate(so2, AlmostAbelian(Mat([[1]]))), Refusal)
    assert isinstance(flat_certificate(so2, AlmostAbelian(Mat([[0]]))), Certificate)
