"""Pure, bordered, and framed Toeplitz/Hankel matrices and determinants.

Matrix layout conventions (0-indexed rows j, columns k):

* pure Toeplitz: entry phi_{j-k};
* bordered Toeplitz: Toeplitz block phi_{k-j} in the first n-m columns,
  border column i carries psi^(i) coefficients descending n-1 .. 0;
* framed Toeplitz: (n-m)x(n-m) block phi_{k-j}, psi columns descending
  n-m-1 .. 0, eta rows ascending 0 .. n-m-1, m x m corner block A;
* bordered/framed Hankel: analogous with moments mu_{j+k}, border moments
  ascending.

Determinants run fraction-free (Bareiss) in exact mode, with partial
pivoting and a pivot-ratio diagnostic in big-float mode, and by cofactor
expansion when entries live in a commutative ring without division
(Laurent polynomials).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath as mp

from .numerics import DEFAULT_PRECISION, PrecisionConfig, is_exact, to_mpc
from .series import LaurentPoly
from .symbols import CircleSymbol, DiscretizedCircleMeasure, LineMeasure


class DimensionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient adapters
# ---------------------------------------------------------------------------

def circle_coeffs(obj, prec: PrecisionConfig = DEFAULT_PRECISION) -> Callable[[int], object]:
    """Normalize anything circle-like to a Fourier-coefficient callable."""
    if isinstance(obj, CircleSymbol):
        return lambda j: obj.fourier(j, prec)
    if isinstance(obj, DiscretizedCircleMeasure):
        return lambda j: obj.coefficient(j, prec)
    if isinstance(obj, dict):
        return lambda j: obj.get(j, 0)
    if callable(obj):
        return obj
    raise TypeError(f"cannot read Fourier coefficients from {type(obj)!r}")


def line_moments(obj, prec: PrecisionConfig = DEFAULT_PRECISION) -> Callable[[int], object]:
    """Normalize anything measure-like to a moment callable."""
    if isinstance(obj, LineMeasure):
        return lambda k: obj.moment(k, prec)
    if isinstance(obj, (list, tuple)):
        return lambda k: obj[k]
    if isinstance(obj, dict):
        return lambda k: obj[k]
    if callable(obj):
        return obj
    raise TypeError(f"cannot read moments from {type(obj)!r}")


# ---------------------------------------------------------------------------
# determinant core
# ---------------------------------------------------------------------------

@dataclass
class DetResult:
    """Determinant value with magnitude/phase split and conditioning data."""

    value: object
    log10_magnitude: float
    sign_or_phase: object
    pivot_ratio: float

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, (mp.mpf, mp.mpc)):
            v = mp.nstr(v, 30)
        elif isinstance(v, Fraction):
            v = str(v)
        s = self.sign_or_phase
        if isinstance(s, (mp.mpf, mp.mpc)):
            s = mp.nstr(s, 12)
        return {"value": v, "log10_magnitude": self.log10_magnitude,
                "sign": s, "pivot_ratio": self.pivot_ratio}


def _result_exact(value) -> DetResult:
    if value == 0:
        return DetResult(value, float("-inf"), 0, 0.0)
    fv = Fraction(value)
    log10 = (mp.log10(abs(fv.numerator)) - mp.log10(fv.denominator)
             if fv.numerator else mp.mpf("-inf"))
    return DetResult(value, float(log10), 1 if fv > 0 else -1, 1.0)


def _result_float(value, pivots, prec: PrecisionConfig) -> DetResult:
    with prec.workprec():
        v = value
        mag = abs(v)
        if mag == 0:
            return DetResult(v, float("-inf"), 0, 0.0)
        mags = [abs(p) for p in pivots] or [mp.mpf(1)]
        ratio = float(min(mags) / max(mags)) if max(mags) > 0 else 0.0
        return DetResult(v, float(mp.log10(mag)), v / mag, ratio)


def det_bareiss(rows: Sequence[Sequence]) -> object:
    """Fraction-free Gaussian elimination; exact over Fraction/int entries."""
    n = len(rows)
    a = [[Fraction(x) if not isinstance(x, Fraction) else x for x in row] for row in rows]
    if any(len(row) != n for row in a):
        raise DimensionError("matrix must be square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_lu(rows: Sequence[Sequence], prec: PrecisionConfig = DEFAULT_PRECISION):
    """Partially pivoted elimination; returns (value, pivots)."""
    with prec.workprec():
        n = len(rows)
        a = [[to_mpc(x, prec) for x in row] for row in rows]
        if any(len(row) != n for row in a):
            raise DimensionError("matrix must be square")
        sign = 1
        pivots = []
        for k in range(n):
            piv, pr = abs(a[k][k]), k
            for r in range(k + 1, n):
                if abs(a[r][k]) > piv:
                    piv, pr = abs(a[r][k]), r
            if piv == 0:
                return mp.mpc(0), pivots
            if pr != k:
                a[k], a[pr] = a[pr], a[k]
                sign = -sign
            pivots.append(a[k][k])
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if f == 0:
                    continue
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        value = mp.mpc(sign)
        for p in pivots:
            value *= p
        if mp.im(value) == 0:
            value = mp.re(value)
        return value, pivots


def det_cofactor(rows: Sequence[Sequence]):
    """Cofactor expansion over any commutative ring (Laurent entries, oracles)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for k in range(n):
        c = rows[0][k]
        if c == 0:
            continue
        minor = [[row[j] for j in range(n) if j != k] for row in rows[1:]]
        term = c * det_cofactor(minor)
        if k % 2 == 1:
            term = -term
        total = term if total is None else total + term
    return 0 if total is None else total


def dense_det(rows: Sequence[Sequence], prec: PrecisionConfig = DEFAULT_PRECISION) -> DetResult:
    """Determinant with mode dispatch on the entry types."""
    n = len(rows)
    if n == 0:
        return _result_exact(Fraction(1))
    flat = [x for row in rows for x in row]
    if any(isinstance(x, LaurentPoly) for x in flat):
        raise TypeError("Laurent-valued matrices: use det_cofactor directly")
    if all(is_exact(x) for x in flat):
        return _result_exact(det_bareiss(rows))
    value, pivots = det_lu(rows, prec)
    return _result_float(value, pivots, prec)


def minor_det(rows, drop_rows=(), drop_cols=(), prec: PrecisionConfig = DEFAULT_PRECISION):
    sub = [[x for k, x in enumerate(row) if k not in drop_cols]
           for j, row in enumerate(rows) if j not in drop_rows]
    if sub and any(isinstance(x, LaurentPoly) for r in sub for x in r):
        return det_cofactor(sub)
    return dense_det(sub, prec).value


def dodgson_check(rows, j_pair, k_pair, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Residual of the condensation identity on the given row/column pairs."""
    j1, j2 = j_pair
    k1, k2 = k_pair
    n = len(rows)
    if n < 2:
        raise DimensionError("need n >= 2")
    if not (0 <= j1 < j2 < n and 0 <= k1 < k2 < n):
        raise DimensionError("invalid index pairs")
    full = minor_det(rows, (), (), prec)
    inner = minor_det(rows, (j1, j2), (k1, k2), prec)
    m11 = minor_det(rows, (j1,), (k1,), prec)
    m22 = minor_det(rows, (j2,), (k2,), prec)
    m12 = minor_det(rows, (j1,), (k2,), prec)
    m21 = minor_det(rows, (j2,), (k1,), prec)
    return full * inner - (m11 * m22 - m12 * m21)


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------

def toeplitz_matrix(symbol, n: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    f = circle_coeffs(symbol, prec)
    return [[f(j - k) for k in range(n)] for j in range(n)]


def hankel_matrix(measure, n: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    f = line_moments(measure, prec)
    return [[f(j + k) for k in range(n)] for j in range(n)]


def bordered_toeplitz_matrix(phi, borders: Sequence, n: int,
                             prec: PrecisionConfig = DEFAULT_PRECISION,
                             ascending_border: Sequence[int] = ()):
    """Toeplitz-in-phi first n-m columns, psi columns descending n-1..0.

    ``ascending_border`` lists border positions (1-based) whose Fourier
    indices run upward instead; used by the index-order transformation checks.
    """
    m = len(borders)
    if m >= n:
        raise DimensionError("need m < n")
    f = circle_coeffs(phi, prec)
    cols = [circle_coeffs(b, prec) for b in borders]
    out = []
    for j in range(n):
        row = [f(k - j) for k in range(n - m)]
        for i, g in enumerate(cols, start=1):
            row.append(g(j) if i in ascending_border else g(n - 1 - j))
        out.append(row)
    return out


def framed_toeplitz_matrix(phi, borders: Sequence, frames: Sequence, corner,
                           n: int, prec: PrecisionConfig = DEFAULT_PRECISION,
                           ascending_border: Sequence[int] = (),
                           descending_frame: Sequence[int] = ()):
    m = len(borders)
    if len(frames) != m or m >= n:
        raise DimensionError("need len(frames) == len(borders) < n")
    if len(corner) != m or any(len(r) != m for r in corner):
        raise DimensionError("corner must be m x m")
    f = circle_coeffs(phi, prec)
    cols = [circle_coeffs(b, prec) for b in borders]
    rows_f = [circle_coeffs(e, prec) for e in frames]
    p = n - m
    out = []
    for j in range(p):
        row = [f(k - j) for k in range(p)]
        for i, g in enumerate(cols, start=1):
            row.append(g(j) if i in ascending_border else g(p - 1 - j))
        out.append(row)
    for ell, g in enumerate(rows_f, start=1):
        row = [g(p - 1 - k) if ell in descending_frame else g(k) for k in range(p)]
        row.extend(corner[ell - 1])
        out.append(row)
    return out


def bordered_hankel_matrix(mu, borders: Sequence, n: int,
                           prec: PrecisionConfig = DEFAULT_PRECISION):
    m = len(borders)
    if m >= n:
        raise DimensionError("need m < n")
    f = line_moments(mu, prec)
    cols = [line_moments(b, prec) for b in borders]
    return [[f(j + k) for k in range(n - m)] + [g(j) for g in cols] for j in range(n)]


def framed_hankel_matrix(mu, borders: Sequence, frames: Sequence, corner, n: int,
                         prec: PrecisionConfig = DEFAULT_PRECISION):
    m = len(borders)
    if len(frames) != m or m >= n:
        raise DimensionError("need len(frames) == len(borders) < n")
    if len(corner) != m or any(len(r) != m for r in corner):
        raise DimensionError("corner must be m x m")
    f = line_moments(mu, prec)
    cols = [line_moments(b, prec) for b in borders]
    rows_f = [line_moments(e, prec) for e in frames]
    p = n - m
    out = [[f(j + k) for k in range(p)] + [g(j) for g in cols] for j in range(p)]
    for ell, g in enumerate(rows_f):
        out.append([g(k) for k in range(p)] + list(corner[ell]))
    return out


def point_bordered_hankel_matrix(mu, points: Sequence, n: int,
                                 prec: PrecisionConfig = DEFAULT_PRECISION):
    """Moment block with Vandermonde border columns 1, z, ..., z^(n-1)."""
    m = len(points)
    f = line_moments(mu, prec)
    return [[f(j + k) for k in range(n - m)] + [z ** j for z in points]
            for j in range(n)]


def point_framed_hankel_matrix(mu, xs: Sequence, ys: Sequence, corner, n: int,
                               prec: PrecisionConfig = DEFAULT_PRECISION):
    m = len(xs)
    f = line_moments(mu, prec)
    p = n - m
    out = [[f(j + k) for k in range(p)] + [x ** j for x in xs] for j in range(p)]
    for ell, y in enumerate(ys):
        out.append([y ** k for k in range(p)] + list(corner[ell]))
    return out


def point_bordered_toeplitz_matrix(phi, points: Sequence, n: int,
                                   prec: PrecisionConfig = DEFAULT_PRECISION):
    """Block phi_{k-j} with Vandermonde border columns."""
    m = len(points)
    f = circle_coeffs(phi, prec)
    return [[f(k - j) for k in range(n - m)] + [z ** j for z in points]
            for j in range(n)]


def point_framed_toeplitz_matrix(phi, xs: Sequence, ys: Sequence, corner, n: int,
                                 prec: PrecisionConfig = DEFAULT_PRECISION):
    """Block phi_{j-k} with ascending point borders and frames."""
    m = len(xs)
    f = circle_coeffs(phi, prec)
    p = n - m
    out = [[f(j - k) for k in range(p)] + [x ** j for x in xs] for j in range(p)]
    for ell, y in enumerate(ys):
        out.append([y ** k for k in range(p)] + list(corner[ell]))
    return out


def semi_framed_toeplitz_matrix(phi, psi, eta, corner, n: int,
                                prec: PrecisionConfig = DEFAULT_PRECISION):
    """Single-border single-frame layout with block phi_{j-k}."""
    if n < 2:
        raise DimensionError("need n >= 2")
    f = circle_coeffs(phi, prec)
    g = circle_coeffs(psi, prec)
    h = circle_coeffs(eta, prec)
    p = n - 1
    out = [[f(j - k) for k in range(p)] + [g(p - 1 - j)] for j in range(p)]
    out.append([h(k) for k in range(p)] + [corner])
    return out


# ---------------------------------------------------------------------------
# determinant wrappers
# ---------------------------------------------------------------------------

def toeplitz_det(symbol, n: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> DetResult:
    if n < 0:
        raise DimensionError("n must be >= 0")
    return dense_det(toeplitz_matrix(symbol, n, prec), prec)


def hankel_det(measure, n: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> DetResult:
    if n < 0:
        raise DimensionError("n must be >= 0")
    return dense_det(hankel_matrix(measure, n, prec), prec)


def bordered_toeplitz_det(phi, borders, n, prec: PrecisionConfig = DEFAULT_PRECISION,
                          **kw) -> DetResult:
    return dense_det(bordered_toeplitz_matrix(phi, borders, n, prec, **kw), prec)


def framed_toeplitz_det(phi, borders, frames, corner, n,
                        prec: PrecisionConfig = DEFAULT_PRECISION, **kw) -> DetResult:
    return dense_det(framed_toeplitz_matrix(phi, borders, frames, corner, n, prec, **kw), prec)


def bordered_hankel_det(mu, borders, n, prec: PrecisionConfig = DEFAULT_PRECISION) -> DetResult:
    return dense_det(bordered_hankel_matrix(mu, borders, n, prec), prec)


def framed_hankel_det(mu, borders, frames, corner, n,
                      prec: PrecisionConfig = DEFAULT_PRECISION) -> DetResult:
    return dense_det(framed_hankel_matrix(mu, borders, frames, corner, n, prec), prec)


def semi_framed_toeplitz_det(phi, psi, eta, corner, n,
                             prec: PrecisionConfig = DEFAULT_PRECISION) -> DetResult:
    return dense_det(semi_framed_toeplitz_matrix(phi, psi, eta, corner, n, prec), prec)
