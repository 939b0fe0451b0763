"""Width of non-intersecting Brownian bridges with wanderers.

The CDF integrates, over the lattice offset, the ratio of a framed (or
bordered) Hankel determinant for the lattice Gaussian measures to the same
determinant for the continuous ones.  The integrand is 1-periodic in the
offset, so uniform trapezoid sampling with doubling converges spectrally.
"""

from __future__ import annotations

from typing import Sequence

import mpmath as mp

from .numerics import DEFAULT_PRECISION, NumericsError, PrecisionConfig, to_mpf
from .determinants import (bordered_hankel_matrix, dense_det, framed_hankel_matrix,
                           hankel_matrix)
from .symbols import gaussian_lattice_measure, gaussian_measure, gaussian_tilted_measure


class CoincidentParameterError(ValueError):
    pass


def _validate(alphas, betas, m1, m2, tol):
    for name, v in (("alphas", alphas), ("betas", betas)):
        if not v:
            continue
        for a, b in zip(v, v[1:]):
            if not b > a:
                raise ValueError(f"{name} must be strictly increasing")
            if abs(b - a) < tol:
                raise CoincidentParameterError(f"{name} entries within tolerance")
        neg, pos = v[:m1], v[m1:]
        if any(not x < 0 for x in neg) or any(not x > 0 for x in pos):
            raise ValueError(f"{name}: first m1 entries negative, rest positive")


def _corner_continuous(alphas, betas, prec):
    """Rows follow the end offsets, columns the start offsets."""
    m = len(alphas)
    return [[mp.sqrt(2 * mp.pi) * mp.exp(-(alphas[k] - betas[j]) ** 2 / 2)
             for k in range(m)] for j in range(m)]


def _corner_lattice(alphas, betas, M, tau, prec):
    from .numerics import sum_gaussian_series
    m = len(alphas)
    Mm = to_mpf(M, prec)
    step = 2 * mp.pi / Mm
    out = []
    for j in range(m):
        row = []
        for k in range(m):
            d = alphas[k] - betas[j]

            def f(h, d=d):
                vals = []
                for hh in ((h,) if h == 0 else (h, -h)):
                    y = step * (hh - to_mpf(tau, prec))
                    vals.append(mp.exp(-y * y / 2 + 1j * y * d))
                return mp.fsum(vals)

            row.append(step * sum_gaussian_series(f, prec, start=0))
        out.append(row)
    return out


def nibb_width_cdf(n: int, m1: int, m2: int, alphas: Sequence, betas: Sequence, M,
                   form: str = "auto", prec: PrecisionConfig = DEFAULT_PRECISION,
                   tau_points: int = 8):
    """P(width < M) for n bridges with m1 bottom / m2 top wanderers.

    ``alphas``/``betas`` list the nonzero start/end offsets in increasing
    order (bottom wanderers negative, top positive); empty alphas selects
    the bordered formula.  The offset integral runs on a doubling uniform
    grid; the integrand is evaluated through moment oracles of the lattice
    measures.
    """
    with prec.workprec():
        m = m1 + m2
        alphas = [to_mpf(a, prec) for a in alphas]
        betas = [to_mpf(b, prec) for b in betas]
        tol = mp.mpf(10) ** (-8)
        if len(betas) != m or (alphas and len(alphas) != m):
            raise ValueError("need m1+m2 offsets")
        _validate(alphas, betas, m1, m2, tol)
        Mv = to_mpf(M, prec)
        spans = [b - a for a, b in ((min(v + [mp.mpf(0)]), max(v + [mp.mpf(0)]))
                                    for v in (alphas, betas) if v)]
        if spans and not Mv >= max(spans):
            raise ValueError("M must be at least the largest endpoint span")
        if form == "auto":
            form = "framed" if alphas else ("bordered" if betas else "pure")
        mu = gaussian_measure(prec)
        if form == "framed" and not alphas:
            raise ValueError("framed form needs alphas")

        def den_value():
            if form == "pure" or m == 0:
                return dense_det(hankel_matrix(mu, n, prec), prec).value
            nus = [gaussian_tilted_measure(b, prec) for b in betas]
            if form == "bordered":
                return dense_det(bordered_hankel_matrix(mu, nus, n, prec), prec).value
            etas = [gaussian_tilted_measure(-a, prec) for a in alphas]
            corner = _corner_continuous(alphas, betas, prec)
            return dense_det(framed_hankel_matrix(mu, nus, etas, corner, n, prec),
                             prec).value

        def num_at(tau):
            mu_t = gaussian_lattice_measure(Mv, tau, 0, prec)
            if form == "pure" or m == 0:
                return dense_det(hankel_matrix(mu_t, n, prec), prec).value
            nus = [gaussian_lattice_measure(Mv, tau, b, prec) for b in betas]
            if form == "bordered":
                return dense_det(bordered_hankel_matrix(mu_t, nus, n, prec), prec).value
            etas = [gaussian_lattice_measure(Mv, tau, -a, prec) for a in alphas]
            corner = _corner_lattice(alphas, betas, Mv, tau, prec)
            return dense_det(framed_hankel_matrix(mu_t, nus, etas, corner, n, prec),
                             prec).value

        den = den_value()
        if den == 0:
            raise ValueError("degenerate denominator determinant")
        N = tau_points
        prev = mp.fsum(num_at(mp.mpf(k) / N) for k in range(N)) / N
        for _ in range(prec.max_refinements):
            N *= 2
            cur = mp.fsum(num_at(mp.mpf(k) / N) for k in range(N)) / N
            if abs(cur - prev) <= prec.target_tol * (1 + abs(cur)) * 100:
                return mp.re(cur / den)
            prev = cur
        raise NumericsError("offset integral did not converge")
