"""Rank bounds for matrix subspaces: witnesses and exact certificates.

A witness of rank <= r refutes (super-)ellipticity and is verified
exactly.  Certification that no nonzero element of rank <= r exists is
three-valued: a structural argument (a commuting hypercomplex triple
makes image dimensions multiples of four), an exhaustive algebraic
solve of the minor equations for spans of dimension <= 3, or an honest
"unknown".  The exhaustive path reduces the minors to a sum of squares
P, removes z-multiplicity with a primitive-PRS gcd, and projects with a
Sylvester resultant whose real roots are counted by Sturm chains; only
rational candidate roots are substituted back, so irrational candidate
fibers downgrade the verdict to unknown instead of guessing.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebras import LinearSubalgebra, bracket
from .polynomials import (
    Bivar,
    Poly,
    count_real_roots,
    poly_gcd,
    rational_roots,
    zp_derivative,
    zp_exact_div,
    zp_gcd,
    zp_primitive,
    zp_resultant,
    zp_trim,
)


def _bivar_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    acc = Bivar([])
    for j in range(len(rows)):
        minor = [[row[k] for k in range(len(rows)) if k != j] for row in rows[1:]]
        term = rows[0][j] * _bivar_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


# -- real-zero decisions -----------------------------------------------------


def _decide_univariate(polys):
    """Common real zeros of univariate Polys: ('empty'|'witness'|'unknown', data)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return "witness", Fraction(0)
    g = Poly([])
    for p in polys:
        g = poly_gcd(g, p) if not g.is_zero() else p.monic()
        if g.degree == 0:
            return "empty", None
    roots = rational_roots(g)
    if roots:
        return "witness", roots[0][0]
    if count_real_roots(g) == 0:
        return "empty", None
    return "unknown", None


def _decide_bivariate(polys):
    """Common real zeros of Bivars: ('empty'|'witness (y,z)'|'unknown', data)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return "witness", (Fraction(0), Fraction(0))
    if any(len(p.coeffs) == 1 and len(p.coeffs[0]) == 1 for p in polys):
        return "empty", None  # a nonzero constant in the system
    big = Bivar([])
    for p in polys:
        big = big + p * p
    zp = zp_trim(big.z_polys())
    cont, prim = zp_primitive(zp)
    # a real root of the content gives a whole line of zeros
    croots = rational_roots(cont)
    if croots:
        return "witness", (croots[0][0], Fraction(0))
    if count_real_roots(cont) > 0:
        return "unknown", None
    if len(prim) == 1:
        # no z-dependence after content: no zeros (content has none)
        return "empty", None
    sf = zp_exact_div(prim, zp_gcd(prim, zp_derivative(prim)))
    elim = zp_resultant(sf, zp_derivative(sf)) * sf[-1]
    if elim.is_zero():
        return "unknown", None
    elim_roots = rational_roots(elim)
    n_real = count_real_roots(elim)
    for y0, _ in elim_roots:
        fiber = []
        for p in polys:
            cs = [Poly([row[j] for row in p.coeffs])(y0) for j in range(len(p.coeffs[0]))]
            fiber.append(Poly(cs))
        verdict, z0 = _decide_univariate(fiber)
        if verdict == "witness":
            return "witness", (y0, z0)
        if verdict == "unknown":
            return "unknown", None
    if n_real > len(elim_roots):
        return "unknown", None
    return "empty", None


# -- public operations -------------------------------------------------------


def generic_rank(h: LinearSubalgebra, seed=0, samples=3):
    """Rank of random rational combinations: a lower bound for the max rank."""
    if h.dim == 0:
        return 0
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(h.dim)]
        best = max(best, h.element(coeffs).rank())
    return best


def low_rank_witness(h: LinearSubalgebra, r, budget=20000, coeff_range=2):
    """Grid search for a nonzero element of rank <= r; None within budget.

    A returned witness is exact: (coeffs, matrix) with rank verified.
    Absence is not a proof; see classify_low_rank for certificates.
    """
    if h.dim == 0:
        return None
    grid = range(-coeff_range, coeff_range + 1)
    tried = 0
    for coeffs in itertools.product(grid, repeat=h.dim):
        if all(c == 0 for c in coeffs):
            continue
        first = next(c for c in coeffs if c != 0)
        if first < 0:
            continue  # sign-normalized
        tried += 1
        if tried > budget:
            return None
        m = h.element([Fraction(c) for c in coeffs])
        if 0 < m.rank() <= r:
            return tuple(Fraction(c) for c in coeffs), m
    return None


def _minors(mat_entries, size, n):
    out = []
    for rows in itertools.combinations(range(n), size):
        for cols in itertools.combinations(range(n), size):
            out.append(_bivar_det([[mat_entries[i][j] for j in cols] for i in rows]))
    return out


def _pencil(h, active, n):
    """Entries of sum_t x_t B_{active[t]} with x = (1, y, z)[:len(active)]."""
    monos = [Bivar.const(1), Bivar([[0], [1]]), Bivar([[0, 1]])]
    entries = [[Bivar([]) for _ in range(n)] for _ in range(n)]
    for t, idx in enumerate(active):
        b = h.basis[idx]
        for i in range(n):
            for j in range(n):
                if b.data[i][j] != 0:
                    entries[i][j] = entries[i][j] + monos[t] * Bivar.const(b.data[i][j])
    return entries


def classify_low_rank(h: LinearSubalgebra, r, budget=20000, seed=0):
    """Decide 'h contains a nonzero element of rank <= r'.

    Returns {"status": "refuted"|"certified"|"unknown", ...}.  refuted
    carries an exact witness; certified carries the method (structural
    quaternionic argument, or the exhaustive minor solve for dim <= 3).
    """
    found = low_rank_witness(h, r, budget=budget)
    if found is not None:
        coeffs, mat = found
        return {"status": "refuted", "witness_coeffs": coeffs, "witness": mat, "method": "grid"}
    triple = h.structures.get("hypercomplex")
    if triple is not None and r <= 3:
        if all(bracket(b, s).is_zero() for b in h.basis for s in triple):
            return {"status": "certified", "method": "quaternionic-image"}
    if h.dim <= 3:
        verdict = _exhaustive_small_dim(h, r)
        if verdict == "empty":
            return {"status": "certified", "method": "minor-variety-empty"}
        if isinstance(verdict, tuple):
            coeffs = verdict
            mat = h.element(coeffs)
            if 0 < mat.rank() <= r:
                return {"status": "refuted", "witness_coeffs": coeffs, "witness": mat, "method": "minor-solve"}
    return {"status": "unknown", "method": "budget-exhausted"}


def _exhaustive_small_dim(h, r):
    """Projective chart sweep of the rank-<= r minor variety for dim h <= 3."""
    n = h.n
    d = h.dim
    if d == 0:
        return "empty"
    for t in range(d):
        active = list(range(t, d))
        free = len(active) - 1
        entries = _pencil(h, active, n)
        minors = _minors(entries, r + 1, n)
        if free == 0:
            if all(m.is_zero() for m in minors):
                point = [Fraction(0)] * d
                point[t] = Fraction(1)
                return tuple(point)
            continue
        if free == 1:
            uni = []
            for m in minors:
                row0 = [row[0] if row else Fraction(0) for row in m.coeffs]
                uni.append(Poly(row0))
            verdict, y0 = _decide_univariate(uni)
            if verdict == "witness":
                point = [Fraction(0)] * d
                point[t] = Fraction(1)
                point[t + 1] = y0
                return tuple(point)
            if verdict == "unknown":
                return "unknown"
            continue
        verdict, data = _decide_bivariate(minors)
        if verdict == "witness":
            y0, z0 = data
            point = [Fraction(0)] * d
            point[t] = Fraction(1)
            point[t + 1] = y0
            point[t + 2] = z0
            return tuple(point)
        if verdict == "unknown":
            return "unknown"
    return "empty"
