"""Non-intersecting random walks: counting, width distribution, oracles.

Discrete walks live on the even lattice (walker j starts at 2 x_j, ends at
2 y_j after 2T steps); continuous-time walks are differences of two rate-1/2
Poisson processes.  The width CDF is the contour integral of a ratio of
structured determinants built from the root-of-unity discretization of the
walk symbol; for discrete walks every entry is a Laurent polynomial in the
contour variable, so the integral is the constant coefficient and the whole
computation stays in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp

from .numerics import (DEFAULT_PRECISION, NumericsError, PrecisionConfig, bessel_i,
                       binomial, to_mpf)
from .determinants import dense_det, det_cofactor
from .series import LaurentPoly
from .symbols import CircleSymbol, DiscretizedCircleMeasure, make_ctrw_symbol, make_drw_symbol


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class PathEnsembleSpec:
    """Endpoint data for an ensemble of non-intersecting paths."""

    kind: str  # "discrete" | "continuous"
    starts: tuple
    ends: tuple
    T: object

    def __post_init__(self):
        if self.kind not in ("discrete", "continuous"):
            raise SpecError(f"unknown walk kind {self.kind!r}")
        xs, ys = self.starts, self.ends
        if len(xs) != len(ys) or not xs:
            raise SpecError("starts and ends must be same nonzero length")
        if any(b <= a for a, b in zip(xs, xs[1:])) or any(b <= a for a, b in zip(ys, ys[1:])):
            raise SpecError("starts and ends must be strictly increasing")
        if self.kind == "discrete":
            if any(int(v) != v for v in xs + ys) or int(self.T) != self.T or self.T < 1:
                raise SpecError("discrete walks need integer coordinates and T >= 1")

    @property
    def n(self) -> int:
        return len(self.starts)

    def symbol(self, prec: PrecisionConfig = DEFAULT_PRECISION) -> CircleSymbol:
        if self.kind == "discrete":
            return make_drw_symbol(int(self.T))
        return make_ctrw_symbol(self.T, prec=prec)

    def wanderer_split(self):
        """(m1, m2) with x_j = y_j = j on the core block m1 < j <= n - m2.

        Walker labels are 1-based; returns None when no framed split exists.
        """
        n = self.n
        for m1 in range(n):
            for m2 in range(n - m1):
                ok = all(self.starts[j - 1] == j and self.ends[j - 1] == j
                         for j in range(m1 + 1, n - m2 + 1))
                ok = ok and all(self.starts[j - 1] <= m1 and self.ends[j - 1] <= m1
                                for j in range(1, m1 + 1))
                ok = ok and all(self.starts[j - 1] > n - m2 and self.ends[j - 1] > n - m2
                                for j in range(n - m2 + 1, n + 1))
                if ok:
                    return m1, m2
        return None


# ---------------------------------------------------------------------------
# LGV counting / transition probabilities
# ---------------------------------------------------------------------------

def lgv_count(spec: PathEnsembleSpec) -> Fraction:
    """Number of vertex-disjoint discrete path tuples (exact)."""
    if spec.kind != "discrete":
        raise SpecError("counting applies to discrete walks")
    T = int(spec.T)
    rows = [[Fraction(binomial(2 * T, T + int(y) - int(x))) for y in spec.ends]
            for x in spec.starts]
    return dense_det(rows).value


def lgv_probability(spec: PathEnsembleSpec, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Non-intersecting transition probability for the ensemble."""
    n = spec.n
    if spec.kind == "discrete":
        return lgv_count(spec) / Fraction(2 ** (2 * int(spec.T) * n))
    with prec.workprec():
        T = to_mpf(spec.T, prec)
        rows = [[bessel_i(int(y) - int(x), T, prec) for y in spec.ends]
                for x in spec.starts]
        return mp.exp(-n * T) * dense_det(rows, prec).value


# ---------------------------------------------------------------------------
# width CDF
# ---------------------------------------------------------------------------

def _discrete_coeff_poly(symbol: CircleSymbol, M: int, j: int) -> LaurentPoly:
    return DiscretizedCircleMeasure(symbol, M).coefficient_poly(j)


def _bordered_layout(spec: PathEnsembleSpec):
    """Base shift and border data for the all-consecutive-starts layout."""
    n = spec.n
    if any(spec.starts[j] != j + 1 for j in range(n)):
        raise SpecError("bordered form needs starts 1..n")
    split = None
    # bottom wanderers: maximal prefix with y below its slot; top: suffix
    m1 = 0
    while m1 < n and spec.ends[m1] != m1 + 1:
        m1 += 1
    m2 = 0
    while m2 < n - m1 and spec.ends[n - 1 - m2] != n - m2:
        m2 += 1
    core = range(m1 + 1, n - m2 + 1)
    if any(spec.ends[j - 1] != j for j in core):
        raise SpecError("bordered form needs a consecutive middle block of ends")
    betas = [int(spec.ends[j]) for j in range(m1)] + \
            [int(spec.ends[n - m2 + j]) for j in range(m2)]
    return m1, m2, betas


def width_cdf_rw(spec: PathEnsembleSpec, M: int, form: str = "direct",
                 prec: PrecisionConfig = DEFAULT_PRECISION):
    """P(width < M * scale) with scale 2 for discrete walks, 1 for continuous.

    ``form`` selects the matrix arrangement: "direct" evaluates the raw
    endpoint determinant; "bordered"/"framed" rebuild the same contour
    integrand as a bordered/framed structured determinant (row/column
    rearrangements whose permutation signs cancel in the ratio).
    """
    if int(M) < 1:
        raise SpecError("M must be a positive integer")
    M = int(M)
    if form not in ("direct", "bordered", "framed"):
        raise SpecError(f"unknown form {form!r}")
    phi = spec.symbol(prec)
    den = dense_det([[phi.fourier(int(y) - int(x)) if phi.laurent is not None
                      else phi.fourier(int(y) - int(x), prec)
                      for y in spec.ends] for x in spec.starts], prec).value
    if den == 0:
        raise SpecError("non-intersection impossible for this endpoint data")
    # the contour identity assumes the walls clear both endpoint spreads;
    # otherwise the width event is impossible outright
    if (spec.starts[-1] - spec.starts[0] >= M) or (spec.ends[-1] - spec.ends[0] >= M):
        return Fraction(0) if spec.kind == "discrete" else mp.mpf(0)
    if form == "direct":
        num_cols = [(int(y), 0) for y in spec.ends]
        num_rows = [int(x) for x in spec.starts]

        def entry_index(j, k):
            return int(spec.ends[k]) - int(spec.starts[j])

        index_pairs = [[entry_index(j, k) for k in range(spec.n)] for j in range(spec.n)]
        return _width_ratio(phi, index_pairs, M, spec, prec)
    if form == "bordered":
        m1, m2, betas = _bordered_layout(spec)
        n = spec.n
        base = phi.shift(-m1)
        borders = [phi.shift(n - b) for b in betas]
        builder = lambda coeff: _bordered_rows(coeff, n, len(betas))
        return _width_ratio_structured(base, borders, None, None, builder, M, spec, prec)
    # framed
    split = spec.wanderer_split()
    if split is None:
        raise SpecError("framed form needs a consecutive core with wanderers at both labels")
    m1, m2 = split
    n = spec.n
    alphas = [int(spec.starts[j]) for j in range(m1)] + \
             [int(spec.starts[n - m2 + j]) for j in range(m2)]
    betas = [int(spec.ends[j]) for j in range(m1)] + \
            [int(spec.ends[n - m2 + j]) for j in range(m2)]
    borders = [phi.shift(n - m2 - b) for b in betas]
    frames = [phi.shift(-(m1 + 1 - a)) for a in alphas]
    corner_idx = [[bk - aj for bk in betas] for aj in alphas]
    builder = lambda coeff: _framed_rows(coeff, n, len(betas))
    return _width_ratio_structured(phi, borders, frames, corner_idx, builder, M, spec, prec)


def _bordered_rows(coeff_of, n, m):
    """coeff_of(which, index) -> entry; which = ("base"|("border", i))."""
    rows = []
    for j in range(n):
        row = [coeff_of("base", k - j) for k in range(n - m)]
        row.extend(coeff_of(("border", i), n - 1 - j) for i in range(m))
        rows.append(row)
    return rows


def _framed_rows(coeff_of, n, m):
    p = n - m
    rows = []
    for j in range(p):
        row = [coeff_of("base", k - j) for k in range(p)]
        row.extend(coeff_of(("border", i), p - 1 - j) for i in range(m))
        rows.append(row)
    for ell in range(m):
        row = [coeff_of(("frame", ell), k) for k in range(p)]
        row.extend(coeff_of(("corner", ell), i) for i in range(m))
        rows.append(row)
    return rows


def _width_ratio(phi: CircleSymbol, index_pairs, M: int, spec, prec):
    """Direct form: ratio of the contour-integrated and plain determinants."""
    if phi.laurent is not None:
        den_rows = [[phi.fourier(idx) for idx in row] for row in index_pairs]
        den = dense_det(den_rows, prec).value
        if den == 0:
            raise SpecError("non-intersection impossible for this endpoint data")
        num_rows = [[_discrete_coeff_poly(phi, M, idx) for idx in row] for row in index_pairs]
        num = det_cofactor(num_rows)
        c0 = num.coeff(0) if isinstance(num, LaurentPoly) else num
        return Fraction(c0) / Fraction(den)
    with prec.workprec():
        den = dense_det([[phi.fourier(idx, prec) for idx in row] for row in index_pairs],
                        prec).value
        if den == 0:
            raise SpecError("non-intersection impossible for this endpoint data")

        def integrand(s):
            disc = DiscretizedCircleMeasure(phi, M, s)
            rows = [[disc.coefficient(idx, prec) for idx in row] for row in index_pairs]
            return dense_det(rows, prec).value

        total = _s_quadrature(integrand, prec)
        return mp.re(total / den)


def _width_ratio_structured(base, borders, frames, corner_idx, builder, M, spec, prec):
    phi = spec.symbol(prec)
    exact = base.laurent is not None

    def make_coeff(discretize_s):
        if discretize_s is None:
            def coeff_of(which, idx):
                if which == "base":
                    return base.fourier(idx, prec)
                tag, i = which
                if tag == "border":
                    return borders[i].fourier(idx, prec)
                if tag == "frame":
                    return frames[i].fourier(idx, prec)
                return phi.fourier(corner_idx[i][idx], prec)
        else:
            def coeff_of(which, idx):
                if which == "base":
                    return discretize_s("base", base, idx)
                tag, i = which
                if tag == "border":
                    return discretize_s(("border", i), borders[i], idx)
                if tag == "frame":
                    return discretize_s(("frame", i), frames[i], idx)
                return discretize_s(("corner", i), phi, corner_idx[i][idx])
        return coeff_of

    den_rows = builder(make_coeff(None))
    den = dense_det(den_rows, prec).value if not exact else det_cofactor(den_rows)
    if den == 0:
        raise SpecError("non-intersection impossible for this endpoint data")
    if exact:
        cache = {}

        def disc_poly(key, sym, idx):
            return DiscretizedCircleMeasure(sym, M).coefficient_poly(idx)

        num_rows = builder(make_coeff(disc_poly))
        num = det_cofactor(num_rows)
        c0 = num.coeff(0) if isinstance(num, LaurentPoly) else num
        return Fraction(c0) / Fraction(den)
    with prec.workprec():
        def integrand(s):
            mem = {}

            def disc_val(key, sym, idx):
                dk = (key, idx)
                if dk not in mem:
                    mem[dk] = DiscretizedCircleMeasure(sym, M, s).coefficient(idx, prec)
                return mem[dk]

            rows = builder(make_coeff(disc_val))
            return dense_det(rows, prec).value

        total = _s_quadrature(integrand, prec)
        return mp.re(total / den)


def _s_quadrature(integrand, prec: PrecisionConfig, N0: int = 4):
    """Adaptive root-of-unity average of the contour integrand."""
    with prec.workprec():
        N = N0
        prev = mp.fsum(integrand(mp.expjpi(2 * mp.mpf(k) / N)) for k in range(N)) / N
        for _ in range(prec.max_refinements):
            N *= 2
            cur = mp.fsum(integrand(mp.expjpi(2 * mp.mpf(k) / N)) for k in range(N)) / N
            if abs(cur - prev) <= prec.target_tol * (1 + abs(cur)) * 100:
                return cur
            prev = cur
        raise NumericsError("contour quadrature over s did not converge")


# ---------------------------------------------------------------------------
# exhaustive enumeration oracle
# ---------------------------------------------------------------------------

def oracle_enumerate_rw(spec: PathEnsembleSpec, width_bound: Optional[int] = None) -> Fraction:
    """Transfer-matrix count of vertex-disjoint discrete path tuples.

    ``width_bound`` restricts max - min < width_bound at every time step
    (lattice units, i.e. the bound compares against 2M).  Exact integers;
    refuses when n * 2T exceeds the state-space cap.
    """
    if spec.kind != "discrete":
        raise SpecError("enumeration oracle applies to discrete walks")
    n, T = spec.n, int(spec.T)
    if n * 2 * T > 24:
        raise SpecError("state space too large for exhaustive enumeration")
    start = tuple(2 * int(x) for x in spec.starts)
    goal = tuple(2 * int(y) for y in spec.ends)
    if width_bound is not None and start[-1] - start[0] >= width_bound:
        return Fraction(0)
    states = {start: 1}
    for _ in range(2 * T):
        nxt = {}
        for pos, cnt in states.items():
            for mask in range(1 << n):
                cand = tuple(p + (1 if (mask >> i) & 1 else -1)
                             for i, p in enumerate(pos))
                if any(b <= a for a, b in zip(cand, cand[1:])):
                    continue
                if width_bound is not None and cand[-1] - cand[0] >= width_bound:
                    continue
                nxt[cand] = nxt.get(cand, 0) + cnt
        states = nxt
    return Fraction(states.get(goal, 0))


def oracle_width_cdf(spec: PathEnsembleSpec, M: int) -> Fraction:
    """P(width < 2M) by exhaustive enumeration (discrete walks)."""
    total = oracle_enumerate_rw(spec)
    if total == 0:
        raise SpecError("non-intersection impossible for this endpoint data")
    good = oracle_enumerate_rw(spec, width_bound=2 * int(M))
    return good / total
