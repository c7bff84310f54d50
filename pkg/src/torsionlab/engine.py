"""The generic obstruction engine for almost Abelian Lie algebras.

Given a linear subalgebra h of gl(n), computes the characteristic
subalgebra, the tableau and its first prolongation, the candidate
connection space D, the torsion maps T = (T1, T2) relative to a
transversal v, and the obstruction space F = T1(ker T2).  Membership
f in F is decided by an exact affine solve and every returned
certificate is re-validated by evaluating the torsion (and curvature)
tensors on the g_f bracket.

Index conventions: gamma[i][j][k] is the k-th component of the
covariant derivative of e_j in the direction e_i; tensors are flattened
row-major, so gamma sits at i*n^2 + j*n + k.  The hyperplane is always
the span of e_1 .. e_{n-1}; other hyperplane types enter exclusively by
conjugating h.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebras import LinearSubalgebra, conjugate
from .linalg import LinMap, Mat, ShapeError, Subspace, fr, kernel, solve_affine, vec


class AlmostAbelian:
    """g_f = R^{n-1} x|_f R: [e_n, u] = f(u), R^{n-1} Abelian."""

    __slots__ = ("f", "n")

    def __init__(self, f: Mat):
        if not f.is_square():
            raise ShapeError("f must be square")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "n", f.rows + 1)

    def __setattr__(self, *a):
        raise AttributeError("AlmostAbelian is immutable")

    def __eq__(self, other):
        return isinstance(other, AlmostAbelian) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def bracket(self, x, y):
        x, y = vec(x), vec(y)
        n = self.n
        fx = self.f.matvec(x[: n - 1])
        fy = self.f.matvec(y[: n - 1])
        return tuple(x[n - 1] * fy[k] - y[n - 1] * fx[k] for k in range(n - 1)) + (Fraction(0),)

    def bracket_tensor(self):
        """c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k, flattened."""
        n = self.n
        c = [Fraction(0)] * (n * n * n)
        for j in range(n - 1):
            col = self.f.col(j)
            for k in range(n - 1):
                c[(n - 1) * n * n + j * n + k] = col[k]
                c[j * n * n + (n - 1) * n + k] = -col[k]
        return tuple(c)


class ConnectionTensor:
    """A full connection on g_f: n^3 rationals gamma[i][j][k]."""

    __slots__ = ("n", "gamma")

    def __init__(self, n, gamma):
        gamma = tuple(fr(x) for x in gamma)
        if len(gamma) != n**3:
            raise ShapeError("gamma must have n^3 entries")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, *a):
        raise AttributeError("ConnectionTensor is immutable")

    def at(self, i, j, k):
        n = self.n
        return self.gamma[i * n * n + j * n + k]

    def derivative_along(self, i) -> Mat:
        """The endomorphism nabla_{e_i}."""
        n = self.n
        return Mat([[self.at(i, j, k) for j in range(n)] for k in range(n)])

    def is_zero(self):
        return all(x == 0 for x in self.gamma)

    def __eq__(self, other):
        return isinstance(other, ConnectionTensor) and self.n == other.n and self.gamma == other.gamma

    def __hash__(self):
        return hash((self.n, self.gamma))


class Certificate:
    """A validated connection certificate; residuals are exactly zero."""

    __slots__ = ("kind", "nabla", "residuals")

    def __init__(self, kind, nabla, residuals):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "nabla", nabla)
        object.__setattr__(self, "residuals", residuals)

    def __setattr__(self, *a):
        raise AttributeError("Certificate is immutable")


class Refusal:
    """An honest negative: f is not in the relevant space; residual reported."""

    __slots__ = ("reason", "residual")

    def __init__(self, reason, residual):
        object.__setattr__(self, "reason", reason)
        object.__setattr__(self, "residual", tuple(residual))

    def __setattr__(self, *a):
        raise AttributeError("Refusal is immutable")


def _hyperplane_preserving_coeffs(h: LinearSubalgebra):
    """Coefficient vectors of {F in h : F(R^{n-1}) <= R^{n-1}}."""
    n, d = h.n, h.dim
    if d == 0:
        return []
    rows = [[h.basis[b].data[n - 1][j] for b in range(d)] for j in range(n - 1)]
    return [list(v) for v in kernel(Mat(rows, n - 1, d)).basis]


@lru_cache(maxsize=None)
def characteristic_subalgebra(h: LinearSubalgebra) -> Subspace:
    """k~_h: restrictions to R^{n-1} of elements of h preserving R^{n-1}."""
    n = h.n
    if n < 2:
        raise ShapeError("need n >= 2")
    vecs = []
    for coeffs in _hyperplane_preserving_coeffs(h):
        f = h.element(coeffs)
        vecs.append(f.submatrix(range(n - 1), range(n - 1)).flatten())
    return Subspace.span((n - 1) * (n - 1), vecs)


@lru_cache(maxsize=None)
def tableau(h: LinearSubalgebra) -> Subspace:
    """K_h = {F restricted to R^{n-1}} inside Hom(R^{n-1}, R^n)."""
    n = h.n
    return Subspace.span(
        n * (n - 1), [f.submatrix(range(n), range(n - 1)).flatten() for f in h.basis]
    )


@lru_cache(maxsize=None)
def first_prolongation(h: LinearSubalgebra) -> Subspace:
    """K^(1) = ((R^{n-1})* x K) meet (S^2(R^{n-1})* x R^n).

    The value space is all of R^n: restricting it to R^{n-1} would kill
    the prolongations of metric and totally real subalgebras, whose
    symmetric parts point along the transversal.
    """
    n = h.n
    kt = tableau(h)
    m = n - 1
    ambient = m * m * n
    if kt.dim == 0 or m == 0:
        return Subspace.zero(ambient)
    kb = list(kt.basis)  # each flat n x (n-1), entry [k][j] at k*m + j
    dom = [(i, t) for i in range(m) for t in range(len(kb))]
    rows = []
    for a in range(m):
        for b in range(a + 1, m):
            for k in range(n):
                row = []
                for (i, t) in dom:
                    coeff = Fraction(0)
                    if i == a:
                        coeff += kb[t][k * m + b]
                    if i == b:
                        coeff -= kb[t][k * m + a]
                    row.append(coeff)
                rows.append(row)
    if rows:
        coeff_kernel = kernel(Mat(rows, len(rows), len(dom))).basis
    else:
        coeff_kernel = Subspace.full(len(dom)).basis
    vecs = []
    for cv in coeff_kernel:
        flat = [Fraction(0)] * ambient
        for (i, t), c in zip(dom, cv):
            if c == 0:
                continue
            for k in range(n):
                for j in range(m):
                    flat[i * m * n + j * n + k] += c * kb[t][k * m + j]
        vecs.append(flat)
    return Subspace.span(ambient, vecs)


@lru_cache(maxsize=None)
def connection_space(h: LinearSubalgebra) -> Subspace:
    """D_h: (R^n)* x h, symmetric on hyperplane pairs, inside R^{n^3}."""
    n = h.n
    ambient = n**3
    if h.dim == 0:
        return Subspace.zero(ambient)
    dom = [(i, b) for i in range(n) for b in range(h.dim)]
    rows = []
    for a in range(n - 1):
        for b in range(a + 1, n - 1):
            for k in range(n):
                row = []
                for (i, c) in dom:
                    coeff = Fraction(0)
                    if i == a:
                        coeff += h.basis[c].data[k][b]
                    if i == b:
                        coeff -= h.basis[c].data[k][a]
                    row.append(coeff)
                rows.append(row)
    if rows:
        coeff_kernel = kernel(Mat(rows, len(rows), len(dom))).basis
    else:
        coeff_kernel = Subspace.full(len(dom)).basis
    vecs = []
    for cv in coeff_kernel:
        flat = [Fraction(0)] * ambient
        for (i, b), c in zip(dom, cv):
            if c == 0:
                continue
            mat = h.basis[b]
            for k in range(n):
                for j in range(n):
                    flat[i * n * n + j * n + k] += c * mat.data[k][j]
        vecs.append(flat)
    return Subspace.span(ambient, vecs)


def _check_transversal(n, v):
    v = vec(v) if v is not None else tuple(Fraction(1 if i == n - 1 else 0) for i in range(n))
    if len(v) != n:
        raise ShapeError("transversal has wrong length")
    if v[n - 1] == 0:
        raise ValueError("transversal v must lie outside R^{n-1}")
    return v


def apply_torsion(gamma, n, v):
    """T(nabla) = (nabla_v - nabla v) on R^{n-1}, as an n x (n-1) matrix."""
    out = []
    for k in range(n):
        row = []
        for a in range(n - 1):
            s = Fraction(0)
            for i in range(n):
                if v[i] != 0:
                    s += v[i] * (gamma[i * n * n + a * n + k] - gamma[a * n * n + i * n + k])
            row.append(s)
        out.append(row)
    return Mat(out, n, n - 1)


def split_torsion(tmat: Mat, v):
    """Split T(nabla) along R^n = R^{n-1} + span(v) into (T1, T2)."""
    n = tmat.rows
    beta = [tmat.data[n - 1][a] / v[n - 1] for a in range(n - 1)]
    t1 = Mat(
        [[tmat.data[k][a] - beta[a] * v[k] for a in range(n - 1)] for k in range(n - 1)],
        n - 1,
        n - 1,
    )
    return t1, tuple(beta)


@lru_cache(maxsize=None)
def torsion_maps(h: LinearSubalgebra, v=None):
    """(T1, T2) as linear maps on D_h coordinates (D given by its canonical basis)."""
    n = h.n
    v = _check_transversal(n, v)
    d = connection_space(h)
    t1_cols, t2_cols = [], []
    for gamma in d.basis:
        tm = apply_torsion(gamma, n, v)
        t1, t2 = split_torsion(tm, v)
        t1_cols.append(t1.flatten())
        t2_cols.append(t2)
    if d.dim == 0:
        t1_mat = Mat.zeros((n - 1) * (n - 1), 0)
        t2_mat = Mat.zeros(n - 1, 0)
    else:
        t1_mat = Mat([[col[r] for col in t1_cols] for r in range((n - 1) * (n - 1))])
        t2_mat = Mat([[col[r] for col in t2_cols] for r in range(n - 1)])
    return LinMap(t1_mat, d.dim, (n - 1) * (n - 1)), LinMap(t2_mat, d.dim, n - 1)


@lru_cache(maxsize=None)
def obstruction_space(h: LinearSubalgebra, v=None) -> Subspace:
    """F_h = T1(ker T2); independent of the choice of transversal v."""
    n = h.n
    v = _check_transversal(n, v)
    t1, t2 = torsion_maps(h, v)
    vecs = [t1.matrix.matvec(c) for c in kernel(t2).basis]
    return Subspace.span((n - 1) * (n - 1), vecs)


def torsion_tensor(nabla: ConnectionTensor, aa: AlmostAbelian):
    """T(e_i, e_j) = nabla_i e_j - nabla_j e_i - [e_i, e_j], flattened n^3."""
    n = aa.n
    if nabla.n != n:
        raise ShapeError("connection/algebra dimension mismatch")
    c = aa.bracket_tensor()
    g = nabla.gamma
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out.append(g[i * n * n + j * n + k] - g[j * n * n + i * n + k] - c[i * n * n + j * n + k])
    return tuple(out)


def curvature_tensor(nabla: ConnectionTensor, aa: AlmostAbelian):
    """R(e_i, e_j) e_k = [nabla_i, nabla_j] e_k - nabla_{[e_i,e_j]} e_k, flattened n^4."""
    n = aa.n
    if nabla.n != n:
        raise ShapeError("connection/algebra dimension mismatch")
    c = aa.bracket_tensor()
    g = nabla.gamma
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = Fraction(0)
                    for m in range(n):
                        s += g[j * n * n + k * n + m] * g[i * n * n + m * n + l]
                        s -= g[i * n * n + k * n + m] * g[j * n * n + m * n + l]
                        s -= c[i * n * n + j * n + m] * g[m * n * n + k * n + l]
                    out.append(s)
    return tuple(out)


def nijenhuis(a: Mat, aa: AlmostAbelian, standard_sign=True):
    """N_A(e_i, e_j), flattened n^3.

    Standard convention: [Ax, Ay] - A[Ax, y] - A[x, Ay] + A^2 [x, y],
    for which N_J = 0 is integrability of a complex structure J; the
    flag flips the sign of the A^2 term.
    """
    n = aa.n
    if a.rows != n or a.cols != n:
        raise ShapeError("A must be n x n")
    sign = Fraction(1 if standard_sign else -1)
    cols = [a.col(j) for j in range(n)]
    a2 = a * a
    out = []
    for i in range(n):
        ai = cols[i]
        for j in range(n):
            aj = cols[j]
            t1 = aa.bracket(ai, aj)
            t2 = a.matvec(aa.bracket(ai, [Fraction(1 if r == j else 0) for r in range(n)]))
            t3 = a.matvec(aa.bracket([Fraction(1 if r == i else 0) for r in range(n)], aj))
            t4 = a2.matvec(aa.bracket([Fraction(1 if r == i else 0) for r in range(n)], [Fraction(1 if r == j else 0) for r in range(n)]))
            for k in range(n):
                out.append(t1[k] - t2[k] - t3[k] + sign * t4[k])
    return tuple(out)


def max_abs(entries):
    m = Fraction(0)
    for x in entries:
        if x < 0:
            x = -x
        if x > m:
            m = x
    return m


def check_torsion_free(h: LinearSubalgebra, aa: AlmostAbelian, hyperplane_map: Mat | None = None, v=None):
    """Certificate of a torsion-free connection with T(nabla) = f, or a refusal.

    A non-special hyperplane type is handled by conjugating h by the
    supplied map; the engine itself always works with R^{n-1}.
    """
    if aa.n != h.n:
        raise ShapeError("algebra/subalgebra dimension mismatch")
    if hyperplane_map is not None:
        h = conjugate(h, hyperplane_map)
    n = h.n
    v = _check_transversal(n, v)
    t1, t2 = torsion_maps(h, v)
    d = connection_space(h)
    rows = [list(r) for r in t2.matrix.data] + [list(r) for r in t1.matrix.data]
    f_flat = aa.f.flatten()
    # ad(v) restricted to the hyperplane is v_n * f, so the torsion-free
    # system for a non-normalized transversal carries that scale
    rhs = [Fraction(0)] * (n - 1) + [v[n - 1] * x for x in f_flat]
    sol = solve_affine(rows, rhs)
    if sol is None:
        residual = obstruction_space(h, v).reduce(f_flat)
        return Refusal("f is not in the obstruction space of h", residual)
    gamma = [Fraction(0)] * n**3
    for c, basis_vec in zip(sol, d.basis):
        if c != 0:
            gamma = [x + c * y for x, y in zip(gamma, basis_vec)]
    nabla = ConnectionTensor(n, gamma)
    tors = torsion_tensor(nabla, aa)
    if any(x != 0 for x in tors):
        raise AssertionError("engine invariant violated: certificate has torsion")
    return Certificate("torsion_free", nabla, {"torsion_max_abs": max_abs(tors)})


def flat_certificate(h: LinearSubalgebra, aa: AlmostAbelian):
    """Left-invariantly flat certificate from f in k~_h: nabla_u = 0, nabla_{e_n} = F."""
    if aa.n != h.n:
        raise ShapeError("algebra/subalgebra dimension mismatch")
    n = h.n
    f_flat = aa.f.flatten()
    rows = []
    rhs = []
    for j in range(n - 1):
        rows.append([h.basis[b].data[n - 1][j] for b in range(h.dim)])
        rhs.append(Fraction(0))
    for i in range(n - 1):
        for j in range(n - 1):
            rows.append([h.basis[b].data[i][j] for b in range(h.dim)])
            rhs.append(aa.f.data[i][j])
    sol = solve_affine(rows, rhs)
    if sol is None:
        residual = characteristic_subalgebra(h).reduce(f_flat)
        return Refusal("f is not in the characteristic subalgebra of h", residual)
    big = h.element(sol)
    gamma = [Fraction(0)] * n**3
    for j in range(n):
        for k in range(n):
            gamma[(n - 1) * n * n + j * n + k] = big.data[k][j]
    nabla = ConnectionTensor(n, gamma)
    tors = torsion_tensor(nabla, aa)
    curv = curvature_tensor(nabla, aa)
    if any(x != 0 for x in tors) or any(x != 0 for x in curv):
        raise AssertionError("engine invariant violated: flat construction has residue")
    return Certificate("flat", nabla, {"torsion_max_abs": max_abs(tors), "curvature_max_abs": max_abs(curv)})
