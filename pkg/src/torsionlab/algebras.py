"""Matrix Lie subalgebras with attached geometric structures.

A ``LinearSubalgebra`` is a bracket-closed span of n x n rational
matrices together with optional attached data (complex structure J,
metric Gram g, product/tangent tensor, hyperparacomplex or hypercomplex
triple, symplectic form).  Attached structures are validated against
their defining identities at construction unless validation is skipped.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Mat, ShapeError, Subspace, kernel, vec


def bracket(a: Mat, b: Mat) -> Mat:
    """Matrix commutator ab - ba."""
    if not (a.is_square() and b.is_square() and a.rows == b.rows):
        raise ShapeError("bracket needs square matrices of equal size")
    return a * b - b * a


def matrix_span(n, mats) -> Subspace:
    return Subspace.span(n * n, [m.flatten() for m in mats])


def is_subalgebra(basis) -> bool:
    """True iff every pairwise bracket stays inside the span of basis."""
    basis = list(basis)
    if not basis:
        return True
    n = basis[0].rows
    span = matrix_span(n, basis)
    for i, a in enumerate(basis):
        for b in basis[i + 1 :]:
            if not span.contains(bracket(a, b).flatten()):
                return False
    return True


def solve_matrix_space(n, condition_fns):
    """Basis of {F in gl(n) : expr(F) = 0 for every expr}.

    Each condition is a function Mat -> Mat (or -> scalar); the linear
    system is assembled by evaluating on elementary matrices.
    """
    elem_images = []
    for a in range(n):
        for b in range(n):
            e = [[Fraction(0)] * n for _ in range(n)]
            e[a][b] = Fraction(1)
            elem_images.append(Mat(e))
    rows = []
    for cond in condition_fns:
        images = []
        for e in elem_images:
            val = cond(e)
            images.append(val.flatten() if isinstance(val, Mat) else (Fraction(val),))
        for k in range(len(images[0])):
            rows.append([img[k] for img in images])
    if not rows:
        return [Mat.unflatten(n, n, v) for v in Subspace.full(n * n).basis]
    ker = kernel(Mat(rows))
    return [Mat.unflatten(n, n, v) for v in ker.basis]


class StructureError(ValueError):
    """An attached structure fails its defining identity."""


def _check_structure(key, value, n, basis):
    ident = Mat.identity(n)
    if key == "J":
        if value * value != -1 * ident:
            raise StructureError("J^2 != -I")
        for f in basis:
            if not bracket(f, value).is_zero():
                raise StructureError("basis element does not commute with J")
    elif key == "g":
        if value.transpose() != value or value.det() == 0:
            raise StructureError("g must be symmetric invertible")
        for f in basis:
            if not (value * f + f.transpose() * value).is_zero():
                raise StructureError("basis element not skew for g")
    elif key == "omega":
        if value.transpose() != -1 * value or value.det() == 0:
            raise StructureError("omega must be antisymmetric invertible")
        for f in basis:
            if not (value * f + f.transpose() * value).is_zero():
                raise StructureError("basis element not in sp(omega)")
    elif key == "product":
        if value * value != ident or value == ident or value == -1 * ident:
            raise StructureError("P^2 = I with P != +-I required")
        for f in basis:
            if not bracket(f, value).is_zero():
                raise StructureError("basis element does not commute with P")
    elif key == "tangent":
        if not (value * value).is_zero() or kernel(value) != Subspace.span(n, [value.col(j) for j in range(n)]):
            raise StructureError("T^2 = 0 with ker T = im T required")
        for f in basis:
            if not bracket(f, value).is_zero():
                raise StructureError("basis element does not commute with T")
    elif key in ("hpc", "hypercomplex"):
        a, b, c = value
        sq_a = -1 * ident
        sq_b = ident if key == "hpc" else -1 * ident
        if a * a != sq_a or b * b != sq_b:
            raise StructureError(f"{key} squares wrong")
        if a * b != c or b * a != -1 * c:
            raise StructureError(f"{key} triple identity fails")
        for f in basis:
            for s in (a, b, c):
                if not bracket(f, s).is_zero():
                    raise StructureError(f"basis element does not commute with {key} triple")
    # hyperplane-level extras (omega_u, lagrangian) are not validated here


class LinearSubalgebra:
    """Bracket-closed subspace of gl(n, Q) with optional attached structures."""

    __slots__ = ("n", "basis", "structures", "name", "_span")

    def __init__(self, n, basis, structures=None, name="", validate=True):
        basis = tuple(basis)
        for m in basis:
            if not (isinstance(m, Mat) and m.rows == n and m.cols == n):
                raise ShapeError("basis must consist of n x n matrices")
        structures = dict(structures or {})
        span = matrix_span(n, basis)
        if validate:
            if span.dim != len(basis):
                raise ValueError("basis is linearly dependent")
            if not is_subalgebra(basis):
                raise ValueError("basis is not bracket-closed")
            for key, value in structures.items():
                if key in ("omega_u", "lagrangian"):
                    continue
                _check_structure(key, value, n, basis)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "structures", structures)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_span", span)

    def __setattr__(self, *a):
        raise AttributeError("LinearSubalgebra is immutable")

    @property
    def dim(self):
        return len(self.basis)

    @property
    def span(self) -> Subspace:
        return self._span

    def contains(self, m: Mat) -> bool:
        return self._span.contains(m.flatten())

    def element(self, coeffs) -> Mat:
        acc = Mat.zeros(self.n, self.n)
        for c, b in zip(coeffs, self.basis):
            acc = acc + b.scale(c)
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, LinearSubalgebra)
            and self.n == other.n
            and self._span == other._span
        )

    def __hash__(self):
        return hash((self.n, self._span))

    def __repr__(self):
        label = self.name or "subalgebra"
        return f"<{label}: dim {self.dim} in gl({self.n})>"


def conjugate(h: LinearSubalgebra, t: Mat) -> LinearSubalgebra:
    """The subalgebra T h T^{-1}, with attached structures conjugated along."""
    if not t.is_square() or t.rows != h.n:
        raise ShapeError("T must be an invertible n x n matrix")
    tinv = t.inverse()
    basis = [t * f * tinv for f in h.basis]
    structures = {}
    for key, value in h.structures.items():
        if key in ("J", "product", "tangent"):
            structures[key] = t * value * tinv
        elif key in ("hpc", "hypercomplex"):
            structures[key] = tuple(t * s * tinv for s in value)
        elif key in ("g", "omega"):
            structures[key] = tinv.transpose() * value * tinv
        # hyperplane-level data does not transport under a general T
    return LinearSubalgebra(h.n, basis, structures, name=f"{h.name}^T" if h.name else "", validate=False)


def commutant(a: Mat) -> LinearSubalgebra:
    """gl(A) = {F : AF = FA}, as a subalgebra."""
    if not a.is_square():
        raise ShapeError("commutant of non-square matrix")
    basis = solve_matrix_space(a.rows, [lambda f, a=a: a * f - f * a])
    return LinearSubalgebra(a.rows, basis, name=f"gl(A)", validate=False)


class MetricContext:
    """A metric g on R^n together with a distinguished hyperplane."""

    __slots__ = ("g", "hyperplane")

    def __init__(self, g: Mat, hyperplane: Subspace | None = None):
        if g.transpose() != g or g.det() == 0:
            raise StructureError("g must be symmetric invertible")
        if hyperplane is None:
            n = g.rows
            hyperplane = Subspace.span(n, [Mat.identity(n).data[i] for i in range(n - 1)])
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "hyperplane", hyperplane)

    def __setattr__(self, *a):
        raise AttributeError("MetricContext is immutable")


def musical_flat(ctx: MetricContext, u):
    """u^b = g(u, .) as a covector."""
    return ctx.g.matvec(vec(u))


def musical_sharp(ctx: MetricContext, alpha):
    """The vector with (alpha^#)^b = alpha."""
    return ctx.g.inverse().matvec(vec(alpha))


def orthogonal_complement(ctx: MetricContext, s: Subspace) -> Subspace:
    rows = [list(ctx.g.matvec(b)) for b in s.basis]
    if not rows:
        return Subspace.full(ctx.g.rows)
    return kernel(Mat(rows, len(rows), ctx.g.rows))


def is_degenerate(ctx: MetricContext, s: Subspace) -> bool:
    return s.intersect(orthogonal_complement(ctx, s)).dim > 0
