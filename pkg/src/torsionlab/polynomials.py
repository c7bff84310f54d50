"""Exact univariate polynomial arithmetic over Q.

Supports the spectral pipeline: characteristic polynomials via
Faddeev-LeVerrier, Yun squarefree decomposition, Sturm-chain real root
counting and rational root extraction.  All coefficients are Fractions;
there is no numerical root finding anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Mat, fr


class Poly:
    """Univariate polynomial, coefficients low-to-high, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [fr(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "Poly(" + " + ".join(terms) + ")"

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        other = other if isinstance(other, Poly) else Poly.const(other)
        return self + (-other)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([fr(other) * c for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.leading()
        dd = other.degree
        while len(rem) - 1 >= dd and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            f = rem[-1] / dlead
            quo[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        q, r = divmod(self, other)
        return q

    def __mod__(self, other):
        q, r = divmod(self, other)
        return r

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division not exact")
        return q

    def __pow__(self, k):
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mat(self, m: Mat) -> Mat:
        acc = Mat.zeros(m.rows, m.cols)
        for c in reversed(self.coeffs):
            acc = acc * m + Mat.identity(m.rows).scale(c)
        return acc

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def compose_linear(self, a, b):
        """p(a*x + b)."""
        out = Poly([])
        lin = Poly([fr(b), fr(a)])
        for c in reversed(self.coeffs):
            out = out * lin + Poly.const(c)
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: returns [(q_i, i)] with p = lc * prod q_i^i, q_i monic squarefree."""
    p = p.monic()
    if p.degree <= 0:
        return []
    d = p.derivative()
    a = poly_gcd(p, d)
    b = p.exact_div(a)
    c = d.exact_div(a)
    out = []
    i = 1
    while b.degree > 0:
        dd = c - b.derivative()
        g = poly_gcd(b, dd)
        if g.degree > 0:
            out.append((g.monic(), i))
        b = b.exact_div(g)
        if b.degree == 0:
            break
        c = dd.exact_div(g)
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic()
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def sturm_chain(p: Poly):
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
        if chain[-1].is_zero():
            chain.pop()
            break
    return [q for q in chain if not q.is_zero()]


def _sign_variations(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x):
    return _sign_variations([q(x) for q in chain])


def _variations_at_inf(chain, positive):
    vals = []
    for q in chain:
        lead = q.leading()
        if positive:
            vals.append(lead)
        else:
            vals.append(lead if q.degree % 2 == 0 else -lead)
    return _sign_variations(vals)


def count_real_roots(p: Poly, a=None, b=None) -> int:
    """Distinct real roots of p in the interval (a, b]; whole line by default."""
    if p.degree <= 0:
        return 0
    sf = squarefree_part(p)
    chain = sturm_chain(sf)
    va = _variations_at(chain, fr(a)) if a is not None else _variations_at_inf(chain, positive=False)
    vb = _variations_at(chain, fr(b)) if b is not None else _variations_at_inf(chain, positive=True)
    return va - vb


def rational_roots(p: Poly):
    """All rational roots of p, as a list of (root, multiplicity)."""
    if p.degree <= 0:
        return []
    roots = []
    work = p
    mult0 = 0
    while work.coeffs[0] == 0:
        work = Poly(work.coeffs[1:])
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if work.degree <= 0:
        return roots
    den = 1
    for c in work.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in work.coeffs]
    g = 0
    for c in ints:
        g = _gcd(g, abs(c))
    ints = [c // g for c in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    candidates = set()
    for pnum in _divisors(a0):
        for qden in _divisors(an):
            candidates.add(Fraction(pnum, qden))
            candidates.add(Fraction(-pnum, qden))
    for cand in sorted(candidates):
        if work(cand) == 0:
            mult = 0
            while work(cand) == 0:
                work = work.exact_div(Poly([-cand, 1]))
                mult += 1
            roots.append((cand, mult))
        if work.degree <= 0:
            break
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def char_poly(m: Mat) -> Poly:
    """Monic characteristic polynomial det(xI - m) by Faddeev-LeVerrier."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Mat.identity(n)
    for k in range(1, n + 1):
        mk = m * mk
        ck = -mk.trace() / k
        coeffs[n - k] = ck
        mk = mk + Mat.identity(n).scale(ck)
    return Poly(coeffs)


def min_poly(m: Mat) -> Poly:
    """Monic minimal polynomial, found as the first linear dependence of powers."""
    if not m.is_square():
        raise ValueError("minimal polynomial of non-square matrix")
    n = m.rows
    powers = [Mat.identity(n)]
    rows = [powers[0].flatten()]
    for k in range(1, n + 1):
        powers.append(powers[-1] * m)
        rows.append(powers[-1].flatten())
        sol = _solve_columns(rows[:-1], rows[-1])
        if sol is not None:
            return Poly([-c for c in sol] + [1])
    raise AssertionError("minimal polynomial must divide char poly")


def _solve_columns(basis_rows, target):
    """Express target as a combination of basis_rows, or None."""
    from .linalg import solve_affine

    cols = list(zip(*basis_rows))
    return solve_affine([list(c) for c in cols], list(target))


# -- bivariate layer: Q[y][z], used for resultant eliminations ---------------


class Bivar:
    """Bivariate polynomial; coeffs[i][j] = coefficient of y^i z^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        rows = [tuple(fr(c) for c in row) for row in coeffs]
        while rows and all(c == 0 for c in rows[-1]):
            rows.pop()
        width = 0
        for row in rows:
            w = len(row)
            while w and row[w - 1] == 0:
                w -= 1
            width = max(width, w)
        object.__setattr__(
            self,
            "coeffs",
            tuple(row[:width] + (Fraction(0),) * (width - len(row[:width])) for row in rows)
            if rows
            else (),
        )

    def __setattr__(self, *a):
        raise AttributeError("Bivar is immutable")

    @classmethod
    def const(cls, c):
        return cls([[c]])

    def is_zero(self):
        return all(c == 0 for row in self.coeffs for c in row)

    def __add__(self, other):
        ry = max(len(self.coeffs), len(other.coeffs))
        rz = max(
            len(self.coeffs[0]) if self.coeffs else 0,
            len(other.coeffs[0]) if other.coeffs else 0,
        )
        out = [[Fraction(0)] * rz for _ in range(ry)]
        for src in (self, other):
            for i, row in enumerate(src.coeffs):
                for j, c in enumerate(row):
                    out[i][j] += c
        return Bivar(out)

    def __neg__(self):
        return Bivar([[-c for c in row] for row in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Bivar([])
        ry = len(self.coeffs) + len(other.coeffs) - 1
        rz = len(self.coeffs[0]) + len(other.coeffs[0]) - 1
        out = [[Fraction(0)] * rz for _ in range(ry)]
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c == 0:
                    continue
                for k, row2 in enumerate(other.coeffs):
                    for l, d in enumerate(row2):
                        if d != 0:
                            out[i + k][j + l] += c * d
        return Bivar(out)

    def z_polys(self):
        """Coefficients of z^j, each a Poly in y."""
        if self.is_zero():
            return []
        rz = len(self.coeffs[0])
        return [Poly([row[j] for row in self.coeffs]) for j in range(rz)]

    def eval_y(self, y0) -> Poly:
        """Specialize y, leaving a Poly in z."""
        zp = self.z_polys()
        return Poly([p(y0) for p in zp])

    def eval(self, y, z):
        acc = Fraction(0)
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                acc += c * y**i * z**j
        return acc


def zp_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def zp_content(p):
    g = Poly([])
    for c in p:
        g = poly_gcd(g, c) if not g.is_zero() else c.monic()
    return g if not g.is_zero() else Poly([1])


def zp_primitive(p):
    p = zp_trim(p)
    if not p:
        return Poly([1]), []
    cont = zp_content(p)
    return cont, [c.exact_div(cont) for c in p]


def zp_scale(p, f: Poly):
    return [c * f for c in p]


def zp_sub(p, q):
    out = [Poly([])] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return zp_trim(out)


def zp_shift(p, k):
    return [Poly([])] * k + list(p)


def zp_pseudo_rem(a, b):
    """Pseudo-remainder of a by b in Q[y][z]."""
    a = zp_trim(a)
    b = zp_trim(b)
    lb = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        la = a[-1]
        a = zp_sub(zp_scale(a, lb), zp_shift(zp_scale(b, la), shift))
    return a


def zp_gcd(a, b):
    """Primitive gcd in Q[y][z] (primitive pseudo-remainder sequence)."""
    a = zp_primitive(a)[1]
    b = zp_primitive(b)[1]
    while b:
        r = zp_primitive(zp_pseudo_rem(a, b))[1]
        a, b = b, r
    return a


def zp_exact_div(a, b):
    """Exact quotient a / b in Q[y][z]; requires b | a."""
    a = zp_trim(a)
    b = zp_trim(b)
    out = [Poly([])] * max(0, len(a) - len(b) + 1)
    while a and len(a) >= len(b):
        shift = len(a) - len(b)
        q = a[-1].exact_div(b[-1])
        out[shift] = out[shift] + q
        a = zp_sub(a, zp_shift(zp_scale(b, q), shift))
    if a:
        raise ArithmeticError("z-division not exact")
    return out


def zp_derivative(p):
    return zp_trim([c * Fraction(j) for j, c in enumerate(p)][1:])


def poly_mat_det(rows):
    """Fraction-free Bareiss determinant of a matrix of Poly entries."""
    k = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly([1])
    for c in range(k - 1):
        if m[c][c].is_zero():
            pivot = next((r for r in range(c + 1, k) if not m[r][c].is_zero()), None)
            if pivot is None:
                return Poly([])
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]).exact_div(prev)
            m[i][c] = Poly([])
        prev = m[c][c]
    det = m[k - 1][k - 1]
    return det if sign == 1 else -det


def zp_resultant(a, b):
    """Res_z of a, b in Q[y][z], as a Poly in y (Sylvester/Bareiss)."""
    a = zp_trim(a)
    b = zp_trim(b)
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return Poly([])
    size = da + db
    if size == 0:
        return Poly([1])
    rows = []
    for i in range(db):
        rows.append([Poly([])] * i + list(reversed(a)) + [Poly([])] * (size - i - da - 1))
    for i in range(da):
        rows.append([Poly([])] * i + list(reversed(b)) + [Poly([])] * (size - i - db - 1))
    return poly_mat_det(rows)


def quadratic_rational_factors(q: Poly):
    """All monic quadratics x^2 - s x + t with rational s, t dividing q.

    Solved exactly: the remainder of q modulo x^2 - s x + t is
    A(s, t) x + B(s, t); rational common zeros of (A, B) are found by a
    resultant elimination plus rational root extraction.  q is assumed
    squarefree with no rational roots; factors the method cannot reach
    stay in the caller's unsplit pile.
    """
    found = []
    work = q.monic()
    while work.degree >= 4:
        fac = _one_quadratic_factor(work)
        if fac is None:
            break
        found.append(fac)
        work = work.exact_div(fac)
    if work.degree == 2:
        found.append(work.monic())
        work = Poly([1])
    return found, work


def _one_quadratic_factor(q):
    # x^k mod (x^2 - s x + t) = a_k x + b_k, with s = y, t = z
    a = [Bivar([]), Bivar.const(1)]
    b = [Bivar.const(1), Bivar([])]
    for _ in range(2, q.degree + 1):
        a_next = Bivar([[0], [1]]) * a[-1] + b[-1]       # s * a + b
        b_next = -(Bivar([[0, 1]]) * a[-1])              # -t * a
        a.append(a_next)
        b.append(b_next)
    abig = Bivar([])
    bbig = Bivar([])
    for k, c in enumerate(q.coeffs):
        if c != 0:
            abig = abig + a[k] * Bivar.const(c)
            bbig = bbig + b[k] * Bivar.const(c)
    za, zb = zp_trim(abig.z_polys()), zp_trim(bbig.z_polys())
    if not za or not zb:
        return None
    elim = zp_resultant(za, zb)
    if elim.is_zero():
        return None
    for s0, _ in rational_roots(elim):
        at = abig.eval_y(s0)
        bt = bbig.eval_y(s0)
        g = poly_gcd(at, bt) if not (at.is_zero() and bt.is_zero()) else Poly([])
        candidates = []
        if g.is_zero():
            continue
        if g.degree == 0:
            continue
        for t0, _ in rational_roots(g):
            candidates.append(t0)
        for t0 in candidates:
            fac = Poly([t0, -s0, 1])
            if (q % fac).is_zero():
                return fac
    return None
