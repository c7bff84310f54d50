"""Exact spectral analysis of rational endomorphisms.

Squarefree decomposition with Sturm real-root counts gives the
spectral summary; when the characteristic polynomial splits into
rational-root linear factors and quadratics, the primary decomposition,
Jordan block counts and explicit chain bases are computed exactly over
Q, which is what the existence deciders need to build invariant
subspaces and doubled ("A, A") block structures.  Outside that regime
callers fall back to honest "unknown" verdicts.
"""

from __future__ import annotations

from .linalg import Mat, Subspace, kernel
from .polynomials import (
    Poly,
    char_poly,
    count_real_roots,
    quadratic_rational_factors,
    rational_roots,
    squarefree_decomposition,
)


class SpectralSummary:
    """Squarefree structure of char(f) with exact real-root counts."""

    __slots__ = ("poly", "squarefree", "split_factors", "unsplit", "fully_split")

    def __init__(self, poly, squarefree, split_factors, unsplit):
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "squarefree", tuple(squarefree))
        object.__setattr__(self, "split_factors", tuple(split_factors))
        object.__setattr__(self, "unsplit", tuple(unsplit))
        object.__setattr__(self, "fully_split", not unsplit)

    def __setattr__(self, *a):
        raise AttributeError("SpectralSummary is immutable")


def spectral_summary(f: Mat) -> SpectralSummary:
    chi = char_poly(f)
    sq = []
    split_factors = []
    unsplit = []
    for q, mult in squarefree_decomposition(chi):
        sq.append((q, mult, count_real_roots(q)))
        work = q
        for root, _ in rational_roots(q):
            split_factors.append((Poly([-root, 1]), mult))
            work = work.exact_div(Poly([-root, 1]))
        if work.degree > 2:
            quads, work = quadratic_rational_factors(work)
            for quad in quads:
                split_factors.append((quad, mult))
        if work.degree == 2:
            split_factors.append((work.monic(), mult))
        elif work.degree > 2:
            unsplit.append((work.monic(), mult, count_real_roots(work)))
    return SpectralSummary(chi, sq, split_factors, unsplit)


class FactorData:
    """Primary component data for one irreducible factor (degree 1 or 2)."""

    __slots__ = ("phi", "mult", "deg", "ladder", "block_counts", "component")

    def __init__(self, phi, mult, ladder, block_counts):
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "deg", phi.degree)
        object.__setattr__(self, "ladder", tuple(ladder))
        object.__setattr__(self, "block_counts", dict(block_counts))
        object.__setattr__(self, "component", ladder[-1] if ladder else None)

    def __setattr__(self, *a):
        raise AttributeError("FactorData is immutable")

    @property
    def dim(self):
        return self.ladder[-1].dim if self.ladder else 0

    def rational_eigenvalue(self):
        return -self.phi.coeffs[0] if self.deg == 1 else None


def factor_data(f: Mat, phi: Poly, mult: int) -> FactorData:
    n = f.rows
    nmat = phi.eval_mat(f)
    ladder = []
    power = Mat.identity(n)
    prev_dim = 0
    for _ in range(mult):
        power = power * nmat
        ker = kernel(power)
        ladder.append(ker)
        if ker.dim == prev_dim:
            ladder.pop()
            break
        prev_dim = ker.dim
    dims = [0] + [k.dim for k in ladder]
    while len(dims) < mult + 2:
        dims.append(dims[-1])
    counts = {}
    deg = phi.degree
    for j in range(1, len(dims) - 1):
        c = (2 * dims[j] - dims[j - 1] - dims[j + 1]) // deg
        if c:
            counts[j] = c
    return FactorData(phi, mult, ladder, counts)


def primary_components(f: Mat):
    """FactorData for every split factor, plus unsplit leftovers."""
    summary = spectral_summary(f)
    split = [factor_data(f, phi, mult) for phi, mult in summary.split_factors]
    return summary, split


def jordan_chains(f: Mat, fd: FactorData):
    """Chain generators for one primary component.

    Each chain is a list of levels [g, N g, ..., N^{len-1} g]; for a
    quadratic factor a level spans {w, f w} over Q.
    """
    n = f.rows
    nmat = fd.phi.eval_mat(f)
    s = len(fd.ladder)
    chains = []
    ambient_added = Subspace.zero(n)
    for j in range(s, 0, -1):
        lower = fd.ladder[j - 2] if j >= 2 else Subspace.zero(n)
        pushed = []
        for ch in chains:
            if len(ch) > j:
                pushed.append(ch[len(ch) - j])  # level-j vector of a taller chain
        avoid_vectors = list(lower.basis) + [v for v in pushed]
        if fd.deg == 2:
            avoid_vectors += [f.matvec(v) for v in pushed]
        avoid = Subspace.span(n, avoid_vectors)
        for cand in fd.ladder[j - 1].basis:
            if avoid.contains(cand):
                continue
            chain = [tuple(cand)]
            for _ in range(j - 1):
                chain.append(f_apply(nmat, chain[-1]))
            chains.append(chain)
            new_vs = list(avoid.basis) + [cand]
            if fd.deg == 2:
                new_vs.append(f.matvec(cand))
            avoid = Subspace.span(n, new_vs)
    total = sum(len(c) for c in chains) * fd.deg
    if total != fd.dim:
        raise AssertionError("chain decomposition lost dimensions")
    return chains


def f_apply(m: Mat, v):
    return m.matvec(v)


def chain_vectors(f: Mat, fd: FactorData, chain, levels=None):
    """Flat Q-basis of (a tail of) one chain: deepest levels first."""
    if levels is None:
        levels = len(chain)
    out = []
    for lvl in chain[len(chain) - levels :]:
        out.append(tuple(lvl))
        if fd.deg == 2:
            out.append(tuple(f.matvec(lvl)))
    return out


def achievable_invariant_dims(f: Mat):
    """(set of invariant-subspace dimensions, exact: bool).

    Exact when char(f) fully splits into rational linear and quadratic
    factors; otherwise the set is a sound subset built from kernel
    flags of the unsplit pieces.
    """
    summary, split = primary_components(f)
    options = []
    for fd in split:
        if fd.deg == 1:
            options.append(set(range(fd.dim + 1)))
        else:
            options.append(set(range(0, fd.dim + 1, 2)))
    for q, mult, _ in summary.unsplit:
        flags = {0}
        power = Mat.identity(f.rows)
        qm = q.eval_mat(f)
        prev = 0
        for _ in range(mult):
            power = power * qm
            d = kernel(power).dim
            flags.add(d)
            if d == prev:
                break
            prev = d
        options.append(flags)
    acc = {0}
    for opt in options:
        acc = {a + b for a in acc for b in opt}
    return acc, summary.fully_split


def invariant_subspace(f: Mat, d_target: int):
    """An f-invariant subspace of exactly d_target dimensions, or None.

    Built from kernel flags: inside a linear-factor component any
    dimension is reachable, inside a quadratic component any even one,
    inside an unsplit piece only whole kernel flags.
    """
    n = f.rows
    if d_target == 0:
        return Subspace.zero(n)
    summary, split = primary_components(f)
    parts = []
    for fd in split:
        if fd.deg == 1:
            allowed = list(range(fd.dim + 1))
        else:
            allowed = list(range(0, fd.dim + 1, 2))
        parts.append(("split", fd, allowed))
    for q, mult, _ in summary.unsplit:
        flags = [0]
        power = Mat.identity(n)
        qm = q.eval_mat(f)
        subs = {0: Subspace.zero(n)}
        prev = 0
        for _ in range(mult):
            power = power * qm
            ker = kernel(power)
            if ker.dim == prev:
                break
            flags.append(ker.dim)
            subs[ker.dim] = ker
            prev = ker.dim
        parts.append(("flag", subs, flags))
    choice = _subset_sum([p[2] for p in parts], d_target)
    if choice is None:
        return None
    vectors = []
    for (kind, data, _), want in zip(parts, choice):
        if want == 0:
            continue
        if kind == "flag":
            vectors.extend(list(data[want].basis))
            continue
        fd = data
        remaining = want // fd.deg
        for chain in jordan_chains(f, fd):
            if remaining == 0:
                break
            take = min(remaining, len(chain))
            vectors.extend(chain_vectors(f, fd, chain, take))
            remaining -= take
        if remaining:
            raise AssertionError("component cannot supply requested dimensions")
    sub = Subspace.span(n, vectors)
    if sub.dim != d_target:
        raise AssertionError("invariant subspace has wrong dimension")
    for b in sub.basis:
        if not sub.contains(f.matvec(b)):
            raise AssertionError("constructed subspace is not invariant")
    return sub


def _subset_sum(option_lists, target):
    """One choice per list summing to target, or None (small exact DP)."""
    reach = {0: []}
    for opts in option_lists:
        nxt = {}
        for total, picks in reach.items():
            for o in opts:
                t = total + o
                if t <= target and t not in nxt:
                    nxt[t] = picks + [o]
        reach = nxt
    return reach.get(target)


def block_profile(f: Mat):
    """{factor -> {size: count}} over split factors, plus unsplit info.

    Returns (profile dict keyed by Poly, summary).
    """
    summary, split = primary_components(f)
    profile = {fd.phi: fd for fd in split}
    return profile, summary
