from fractions import Fraction

import pytest

from torsionlab.builders import (
    build_delta_gl,
    build_gl_C,
    build_gl_H,
    build_lagrangian_symplectic,
    build_so,
    build_so_g,
    build_sp,
    build_su,
    build_u,
    catalog,
    pair_swap_gram,
    standard_omega,
    witt_gram,
)
from torsionlab.engine import obstruction_space
from torsionlab.linalg import Mat, Subspace
from torsionlab.profiles import (
    NoRuleApplies,
    closed_form_F,
    crosscheck,
    profile,
    totally_real_type,
)


def test_profile_so4():
    prof = profile(build_so(4))
    assert prof.h1.dim == 0
    assert prof.W.dim == 0


def test_profile_u2_h2():
    prof = profile(build_u(2))
    # the rotation in the (e3, e4)-plane is the only element killing R^3_J
    rot = Mat(
        [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    )
    assert prof.h2 == Subspace.span(16, [rot.flatten()])
    assert prof.h2_inv.dim == 0
    assert prof.h2_J.dim == 0


def test_profile_requires_structure():
    with pytest.raises(KeyError):
        profile(build_sp(2), require=("J",))


def test_profile_lagrangian_symplectic():
    h = build_lagrangian_symplectic(2)
    prof = profile(h)
    lag = h.structures["lagrangian"]
    om = h.structures["omega_u"]
    # U = the omega-flats of L
    flats = [tuple(sum(u[i] * om.data[i][j] for i in range(4)) for j in range(4)) for u in lag.basis]
    assert prof.U_cal == Subspace.span(4, flats)
    # nu is pinned by F = alpha x v - beta x nu(alpha); here nu(alpha) = -alpha^sharp
    for t, alpha in enumerate(prof.U_cal.basis):
        nu_a = prof.nu.matrix.col(t)
        sharp = None
        rows = [[om.data[i][j] for j in range(4)] for i in range(4)]
        from torsionlab.linalg import solve_affine

        sharp = solve_affine([[om.data[i][j] for i in range(4)] for j in range(4)], list(alpha))
        # omega(sharp, .) = alpha, i.e. sharp^T om = alpha
        assert sharp is not None
        assert tuple(-x for x in nu_a) == tuple(sharp)
    # injective-or-zero
    assert prof.nu.matrix.rank() in (0, prof.U_cal.dim)


def test_totally_real_types():
    assert totally_real_type(build_gl_H(1))[0] == "I"
    assert totally_real_type(build_u(2))[0] == "III"
    assert totally_real_type(build_delta_gl(2))[0] == "II"
    with pytest.raises(ValueError):
        totally_real_type(build_gl_C(2))  # complex, not totally real


def test_closed_form_gl2C():
    sub, label = closed_form_F(build_gl_C(2))
    assert label == "complex"
    assert sub.dim == 5
    assert sub == obstruction_space(build_gl_C(2))


def test_closed_form_so22():
    h = build_so(2, 2)
    sub, label = closed_form_F(h)
    assert sub == obstruction_space(h)


def test_closed_form_lagrangian():
    h = build_lagrangian_symplectic(2)
    sub, label = closed_form_F(h)
    assert label == "S2Uv"
    assert sub.dim == 4
    assert sub == obstruction_space(h)


def test_closed_form_no_rule():
    # a subalgebra with no attached structure and non-vanishing prolongation
    from torsionlab.builders import build_gl

    with pytest.raises(NoRuleApplies):
        closed_form_F(build_gl(3))


def test_crosscheck_sp4():
    rep = crosscheck(build_sp(2))
    assert rep["engine_dim"] == 6
    assert rep["any_rule"]
    assert rep["all_equal"]


def test_crosscheck_u2():
    rep = crosscheck(build_u(2))
    assert rep["engine_dim"] == 2
    assert rep["all_equal"]
    labels = {r["rule"] for r in rep["rules"]}
    assert "totally-real" in labels
    assert "unitary" in labels
    assert "nondeg-metric" in labels


def test_crosscheck_delta_gl2():
    rep = crosscheck(build_delta_gl(2))
    assert rep["engine_dim"] == 4  # (m-1)^2 + 2(m-1) + 1 with m = 2
    assert rep["all_equal"]


def test_crosscheck_degenerate_metric():
    # the degenerate unitary case satisfies the degenerate-metric theorem
    h = build_u(1, 1, gram=pair_swap_gram(2))
    rep = crosscheck(h)
    labels = {r["rule"] for r in rep["rules"]}
    assert "deg-metric" in labels
    assert "unitary" in labels
    assert rep["all_equal"], rep
    # the full so(g) of a degenerate gram fails h_perp = h_perp^{R^{n-1}}:
    # no closed form fires, the generic engine is the only route
    for hh in (build_so_g(witt_gram(3)), build_so_g(witt_gram(4))):
        rep = crosscheck(hh)
        assert not any(r["rule"] == "deg-metric" for r in rep["rules"])
        assert rep["all_equal"]


def test_crosscheck_entire_catalog():
    for h in catalog():
        rep = crosscheck(h)
        assert rep["all_equal"], (h.name, [(r["rule"], r["dim"], r["equal"]) for r in rep["rules"]])


def test_k1_zero_rule_block_example():
    # h = [[A, 0, 0], [0, 0, v], [0, 0, 0]] with A = so(2): F = [[A, 0], [B, C]]
    from torsionlab.algebras import LinearSubalgebra

    rot = Mat([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    shift = Mat([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    h = LinearSubalgebra(4, [rot, shift], name="block-example")
    sub, label = closed_form_F(h)
    assert label == "K1-zero"
    expected = Subspace.span(
        9,
        [rot.submatrix(range(3), range(3)).flatten()]
        + [Mat([[0, 0, 0], [0, 0, 0], [a, b, c]]).flatten() for a, b, c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))],
    )
    assert sub == expected
    assert sub == obstruction_space(h)


def test_k1_zero_rule_case_b():
    # h = span{E13, E33}: h1 = h strictly contains h1_inv = span{E13},
    # so the projected-tableau branch fires; by hand F = (R^2)* x <e1>
    from torsionlab.algebras import LinearSubalgebra

    e13 = Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    e33 = Mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    h = LinearSubalgebra(3, [e13, e33], name="case-b")
    prof = profile(h)
    assert prof.h1.dim == 2 and prof.h1_inv.dim == 1 and prof.W.dim == 1
    sub, label = closed_form_F(h)
    assert label == "K1-zero"
    expected = Subspace.span(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert sub == expected == obstruction_space(h)
