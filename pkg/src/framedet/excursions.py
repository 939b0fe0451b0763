"""Maximal height of non-intersecting excursions with top wanderers.

The height CDF is a prefactor times a framed (or bordered) Hankel
determinant over the discrete square-supported measure; the wanderer data
enters through the signed sine measures and the two-parameter constants.
All series are truncated under their Gaussian tails.
"""

from __future__ import annotations

from typing import Sequence

import mpmath as mp

from .numerics import DEFAULT_PRECISION, PrecisionConfig, to_mpf
from .determinants import (bordered_hankel_matrix, dense_det, framed_hankel_matrix,
                           hankel_matrix)
from .symbols import nibe_mu, nibe_nu, nibe_s


class CoincidentParameterError(ValueError):
    """Coincident wanderer positions need a l'Hopital limit (not provided)."""


def _check_descending(values, name, tol):
    vals = list(values)
    for a, b in zip(vals, vals[1:]):
        if not a > b:
            raise ValueError(f"{name} must be strictly descending")
        if abs(a - b) < tol:
            raise CoincidentParameterError(
                f"{name} entries within tolerance {tol}; collapsed-parameter "
                "limits are out of scope")
    if vals and not vals[-1] > 0:
        raise ValueError(f"{name} must be positive")


def _sinh_block(alphas, betas, p, prec: PrecisionConfig):
    """Entries sinh(ab)/(ab) - sum_{l<p} (ab)^(2l)/(2l+1)!, reversed order."""
    m = len(alphas)
    rows = []
    for j in range(m):
        row = []
        for k in range(m):
            ab = alphas[m - 1 - j] * betas[m - 1 - k]
            tail = mp.sinh(ab) / ab
            for ell in range(p):
                tail -= ab ** (2 * ell) / mp.factorial(2 * ell + 1)
            row.append(tail)
        rows.append(row)
    return rows


def nibe_height_cdf(n: int, alphas: Sequence = (), betas: Sequence = (), M=1,
                    form: str = "auto", prec: PrecisionConfig = DEFAULT_PRECISION):
    """P(max height < M) for n excursions, top wanderers at alphas/betas.

    ``alphas`` and ``betas`` are the descending positive start/end offsets
    of the top m walkers; empty alphas selects the bordered formula (all
    starts at 0), empty both the pure Hankel case.
    """
    with prec.workprec():
        alphas = [to_mpf(a, prec) for a in alphas]
        betas = [to_mpf(b, prec) for b in betas]
        tol = mp.mpf(10) ** (-8)
        _check_descending(betas, "betas", tol)
        _check_descending(alphas, "alphas", tol)
        m = len(betas)
        Mv = to_mpf(M, prec)
        if alphas and len(alphas) != m:
            raise ValueError("alphas and betas must have equal length when both given")
        if m and not Mv >= max([betas[0]] + ([alphas[0]] if alphas else [])):
            raise ValueError("M must dominate the largest wanderer position")
        if form == "auto":
            form = "framed" if alphas else ("bordered" if betas else "pure")
        mu = nibe_mu(Mv, prec)
        if form == "pure" or m == 0:
            pref = (2 ** (mp.mpf(n) / 2) * mp.pi ** (2 * n * n + mp.mpf(n) / 2)
                    / Mv ** (2 * n * n + n))
            for j in range(1, n + 1):
                pref /= mp.factorial(2 * j - 1)
            return pref * dense_det(hankel_matrix(mu, n, prec), prec).value
        if form == "framed":
            if not alphas:
                raise ValueError("framed form needs alphas")
            p = n - m
            nus = [nibe_nu(Mv, b, prec) for b in reversed(betas)]
            etas = [nibe_nu(Mv, a, prec) for a in reversed(alphas)]
            S = [[nibe_s(Mv, alphas[m - 1 - j], betas[m - 1 - k], prec)
                  for k in range(m)] for j in range(m)]
            H = dense_det(framed_hankel_matrix(mu, nus, etas, S, n, prec), prec).value
            pref = (2 ** (mp.mpf(n) / 2) * mp.pi ** (2 * p * p + mp.mpf(n) / 2)
                    / Mv ** (2 * p * p + n))
            for j in range(m):
                pref *= mp.exp((alphas[j] ** 2 + betas[j] ** 2) / 2)
            pref /= dense_det(_sinh_block(alphas, betas, p, prec), prec).value
            for j in range(1, p + 1):
                pref /= mp.factorial(2 * j - 1)
            return pref * H
        if form != "bordered":
            raise ValueError(f"unknown form {form!r}")
        # bordered: all starts at zero
        p = n - m
        nus = [nibe_nu(Mv, b, prec) for b in reversed(betas)]
        H = dense_det(bordered_hankel_matrix(mu, nus, n, prec), prec).value
        delta = mp.mpf(1)
        for j in range(m):
            for k in range(j + 1, m):
                delta *= betas[k] ** 2 - betas[j] ** 2
        # sign fixed against the two-wall reflection oracle (see tests):
        # of the two printed candidates, (-1)^(m(n-1)) matches.
        sign = (-1) ** (m * (n - 1))
        pref = (sign * 2 ** (mp.mpf(n) / 2)
                * mp.pi ** (n * n + p * p + mp.mpf(n) / 2)
                / (Mv ** (n * n + p * p + n) * delta))
        for j in range(m):
            pref *= mp.exp(betas[j] ** 2 / 2) / betas[j] ** (2 * p)
        for j in range(1, p + 1):
            pref /= mp.factorial(2 * j - 1)
        return pref * H
