"""Reflection-principle / Karlin-McGregor oracles for Brownian ensembles.

These are the independent ground-truth evaluators: transition densities
with absorbing walls computed by two analytically distinct series
(reflection images vs. their resummed trigonometric form), determinants of
those densities at epsilon-separated endpoints, and Richardson
extrapolation toward the collapsed-endpoint limits used by the height and
width distribution formulas.
"""

from __future__ import annotations

from typing import Optional, Sequence

import mpmath as mp

from .numerics import (DEFAULT_PRECISION, NumericsError, PrecisionConfig,
                       sum_gaussian_series, to_mpf)
from .determinants import dense_det


def p_abs(t, y, x, prec: PrecisionConfig = DEFAULT_PRECISION):
    """One-wall (at 0) Brownian transition density."""
    with prec.workprec():
        t, y, x = (to_mpf(v, prec) for v in (t, y, x))
        c = 1 / mp.sqrt(2 * mp.pi * t)
        return c * (mp.exp(-(x - y) ** 2 / (2 * t)) - mp.exp(-(x + y) ** 2 / (2 * t)))


def p_abs_abs_reflection(t, y, x, M, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Two-wall density at 0 and M by the method of images."""
    with prec.workprec():
        t, y, x, M = (to_mpf(v, prec) for v in (t, y, x, M))
        c = 1 / mp.sqrt(2 * mp.pi * t)

        def term(h):
            vals = []
            for hh in ((h,) if h == 0 else (h, -h)):
                s = 2 * M * hh
                vals.append(mp.exp(-(x - y + s) ** 2 / (2 * t))
                            - mp.exp(-(x + y + s) ** 2 / (2 * t)))
            return mp.fsum(vals)

        return c * sum_gaussian_series(term, prec, start=0)


def p_abs_abs_poisson(t, y, x, M, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Two-wall density in its resummed sine-series form."""
    with prec.workprec():
        t, y, x, M = (to_mpf(v, prec) for v in (t, y, x, M))
        return (2 / M) * sum_gaussian_series(
            lambda h: mp.exp(-t * mp.pi ** 2 * h * h / (2 * M * M))
            * mp.sin(h * mp.pi * x / M) * mp.sin(h * mp.pi * y / M),
            prec, start=1)


def oracle_km_two_walls(xs: Sequence, ys: Sequence, M, t=1,
                        prec: PrecisionConfig = DEFAULT_PRECISION,
                        check_dual: bool = True):
    """det of two-wall densities; entries cross-checked between both series."""
    with prec.workprec():
        if not all(0 < to_mpf(x, prec) < to_mpf(M, prec) for x in list(xs) + list(ys)):
            raise ValueError("all points must lie strictly between the walls")
        rows = []
        for x in xs:
            row = []
            for y in ys:
                a = p_abs_abs_poisson(t, y, x, M, prec)
                if check_dual:
                    b = p_abs_abs_reflection(t, y, x, M, prec)
                    if abs(a - b) > prec.target_tol * (1 + abs(a)) * 10:
                        raise NumericsError(
                            f"two-wall series disagree at (x={x}, y={y}): {a} vs {b}")
                row.append(a)
            rows.append(row)
        return dense_det(rows, prec).value


def q_abs(xs: Sequence, ys: Sequence, t=1, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Karlin-McGregor determinant with one absorbing wall at 0."""
    with prec.workprec():
        rows = [[p_abs(t, y, x, prec) for y in ys] for x in xs]
        return dense_det(rows, prec).value


def km_height_ratio(xs: Sequence, ys: Sequence, M,
                    prec: PrecisionConfig = DEFAULT_PRECISION, check_dual: bool = False):
    """q^M_abs,abs / q_abs at unit time for distinct endpoint vectors."""
    num = oracle_km_two_walls(xs, ys, M, 1, prec, check_dual=check_dual)
    den = q_abs(xs, ys, 1, prec)
    return num / den


def richardson_even(values: Sequence, ratio=2):
    """Richardson extrapolation assuming an expansion in eps^2.

    ``values`` are F(eps_0), F(eps_0/ratio), F(eps_0/ratio^2), ...
    Returns the extrapolated limit and the last correction size.
    """
    tab = [mp.mpc(v) for v in values]
    r2 = mp.mpf(ratio) ** 2
    order = 1
    while len(tab) > 1:
        fac = r2 ** order
        tab = [(fac * tab[i + 1] - tab[i]) / (fac - 1) for i in range(len(tab) - 1)]
        order += 1
    limit = tab[0]
    if mp.im(limit) == 0:
        limit = mp.re(limit)
    return limit


def km_limit_extrapolate(n: int, m: int, alphas: Sequence, betas: Sequence, M,
                         prec: PrecisionConfig = DEFAULT_PRECISION,
                         eps0=mp.mpf("0.01"), levels: int = 4,
                         collapse_starts: Optional[bool] = None):
    """Height-CDF oracle: collapsed points replaced by eps-spaced ladders.

    Walkers 1..n-m start (and end) near 0 at j*eps; the top m walkers sit
    at the wanderer positions (alphas descending for starts, betas for
    ends; empty alphas means all starts collapse).  The ratio expands in
    even powers of eps, so a Richardson table in eps^2 converges to the
    collapsed limit.
    """
    with prec.workprec():
        alphas = [to_mpf(a, prec) for a in alphas]
        betas = [to_mpf(b, prec) for b in betas]
        if collapse_starts is None:
            collapse_starts = len(alphas) == 0
        vals = []
        e = to_mpf(eps0, prec)
        for _ in range(levels):
            if collapse_starts:
                xs = [j * e for j in range(1, n + 1)]
            else:
                xs = [j * e for j in range(1, n - m + 1)] + sorted(alphas)
            ys = [j * e for j in range(1, n - m + 1)] + sorted(betas)
            vals.append(km_height_ratio(xs, ys, M, prec))
            e = e / 2
        return richardson_even(vals)


# ---------------------------------------------------------------------------
# bridge-width oracle (ratio formula at distinct endpoints + extrapolation)
# ---------------------------------------------------------------------------

def _g_poisson(x, tau, M, prec: PrecisionConfig):
    """(1/M) sum over the shifted lattice of exp(-y^2/2 + i x y)."""
    with prec.workprec():
        Mm, t = to_mpf(M, prec), to_mpf(tau, prec)
        step = 2 * mp.pi / Mm

        def f(h):
            total = []
            for hh in ((h,) if h == 0 else (h, -h)):
                y = step * (hh - t)
                total.append(mp.exp(-y * y / 2 + 1j * to_mpf(x, prec) * y))
            return mp.fsum(total)

        return sum_gaussian_series(f, prec, start=0) / Mm


def _g_reflection(x, tau, M, prec: PrecisionConfig):
    """sum over images of the Gaussian kernel with winding phases."""
    with prec.workprec():
        Mm, t = to_mpf(M, prec), to_mpf(tau, prec)
        c = 1 / mp.sqrt(2 * mp.pi)

        def f(h):
            total = []
            for hh in ((h,) if h == 0 else (h, -h)):
                total.append(mp.exp(-(to_mpf(x, prec) + hh * Mm) ** 2 / 2)
                             * mp.expjpi(2 * hh * t))
            return mp.fsum(total)

        return c * sum_gaussian_series(f, prec, start=0)


def bb_width_ratio(xs: Sequence, ys: Sequence, M, prec: PrecisionConfig = DEFAULT_PRECISION,
                   check_dual: bool = False, tau_points: int = 32):
    """P(width < M) for bridges with distinct endpoints.

    Numerator integrates the lattice-kernel determinant over the lattice
    offset (periodic, so the uniform grid is spectrally accurate);
    denominator is the free Gaussian Karlin-McGregor determinant.
    """
    with prec.workprec():
        c = 1 / mp.sqrt(2 * mp.pi)
        den = dense_det([[c * mp.exp(-(to_mpf(x, prec) - to_mpf(y, prec)) ** 2 / 2)
                          for y in ys] for x in xs], prec).value

        def num_at(tau):
            rows = []
            for x in xs:
                row = []
                for y in ys:
                    g = _g_poisson(to_mpf(x, prec) - to_mpf(y, prec), tau, M, prec)
                    if check_dual:
                        g2 = _g_reflection(to_mpf(x, prec) - to_mpf(y, prec), tau, M, prec)
                        if abs(g - g2) > prec.target_tol * (1 + abs(g)) * 10:
                            raise NumericsError("bridge kernel series disagree")
                    row.append(g)
                rows.append(row)
            return dense_det(rows, prec).value

        N = tau_points
        prev = mp.fsum(num_at(mp.mpf(k) / N) for k in range(N)) / N
        for _ in range(prec.max_refinements):
            N *= 2
            cur = mp.fsum(num_at(mp.mpf(k) / N) for k in range(N)) / N
            if abs(cur - prev) <= prec.target_tol * (1 + abs(cur)) * 100:
                break
            prev = cur
        else:
            raise NumericsError("offset integral did not converge")
        return mp.re(cur / den)


def bb_width_extrapolate(n: int, m1: int, m2: int, alphas: Sequence, betas: Sequence, M,
                         prec: PrecisionConfig = DEFAULT_PRECISION,
                         eps0=mp.mpf("0.01"), levels: int = 4,
                         collapse_starts: bool = False, tau_points: int = 32):
    """Width-CDF oracle at collapsed interior points via eps-ladders."""
    with prec.workprec():
        alphas = [to_mpf(a, prec) for a in alphas]
        betas = [to_mpf(b, prec) for b in betas]
        vals = []
        e = to_mpf(eps0, prec)
        core = n - m1 - m2 if not collapse_starts else n
        for _ in range(levels):
            mid = [(j - (core + 1) / mp.mpf(2)) * e for j in range(1, core + 1)]
            if collapse_starts:
                xs = mid
            else:
                xs = alphas[:m1] + mid + alphas[m1:]
            ys = betas[:m1] + [(j - (n - m1 - m2 + 1) / mp.mpf(2)) * e
                               for j in range(1, n - m1 - m2 + 1)] + betas[m1:]
            vals.append(bb_width_ratio(xs, ys, M, prec, tau_points=tau_points))
            e = e / 2
        return richardson_even(vals)
