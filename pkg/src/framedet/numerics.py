"""Scalar arithmetic policy, special functions, and quadrature.

Two scalar modes are used throughout the package:

* exact rationals (``fractions.Fraction``) for identity verification with
  rational data -- no rounding, ever;
* arbitrary-precision reals/complexes (``mpmath.mpf`` / ``mpmath.mpc``)
  for analytic weights, with the working precision carried by a
  :class:`PrecisionConfig`.

All functions here are pure; precision is applied locally via
``mpmath.workprec`` so concurrent evaluation is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import mpmath as mp

Exact = Union[int, Fraction]
Number = Union[int, Fraction, mp.mpf, mp.mpc, float, complex]

DEFAULT_BITS = 256


class NumericsError(Exception):
    """Raised when an adaptive procedure fails to converge."""


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision and stopping rules for adaptive procedures.

    ``target_tol`` defaults to 2**(-bits//2): comfortably below every
    application tolerance while staying far from the rounding floor.
    """

    bits: int = DEFAULT_BITS
    target_tol: mp.mpf = None  # type: ignore[assignment]
    max_refinements: int = 16

    def __post_init__(self):
        if self.bits < 128:
            raise ValueError("precision must be at least 128 bits")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")
        if self.target_tol is None:
            with mp.workprec(self.bits):
                object.__setattr__(self, "target_tol", mp.mpf(2) ** (-(self.bits // 2)))
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")

    def workprec(self):
        """Context manager setting the mpmath precision to ``bits``."""
        return mp.workprec(self.bits)


DEFAULT_PRECISION = PrecisionConfig()


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def to_mpf(x, prec: PrecisionConfig = DEFAULT_PRECISION):
    with prec.workprec():
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        return mp.mpf(x)


def to_mpc(x, prec: PrecisionConfig = DEFAULT_PRECISION):
    with prec.workprec():
        if isinstance(x, Fraction):
            return mp.mpc(x.numerator) / x.denominator
        return mp.mpc(x)


def binomial(n: int, k: int) -> int:
    """C(n, k) computed exactly, with C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


def inv_factorial(n: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    """1/n! as an mpf, with the convention 1/(negative)! = 0."""
    with prec.workprec():
        if n < 0:
            return mp.mpf(0)
        return mp.mpf(1) / math.factorial(n)


def double_factorial(n: int) -> int:
    """(2k-1)!! style double factorial; (-1)!! = 1."""
    if n <= 0:
        return 1
    out = 1
    for m in range(n, 0, -2):
        out *= m
    return out


def bessel_i(order: int, argument, prec: PrecisionConfig = DEFAULT_PRECISION,
             max_terms: int = 100000):
    """Modified Bessel function I_order via its power series.

    Sums (x/2)^(2k+|v|) / (k! (k+|v|)!) until the term drops below
    target_tol times the partial sum; I_{-v} = I_v for integer v.
    """
    nu = abs(int(order))
    with prec.workprec():
        x = to_mpf(argument, prec) if not isinstance(argument, mp.mpc) else mp.mpc(argument)
        if x == 0:
            return mp.mpf(1) if nu == 0 else mp.mpf(0)
        half = x / 2
        # terms are cheap: run the series down to the working-precision floor
        eps = mp.mpf(2) ** (-(prec.bits + 16))
        term = half ** nu / math.factorial(nu)
        total = term
        k = 0
        h2 = half * half
        while k < max_terms:
            k += 1
            term = term * h2 / (k * (k + nu))
            total += term
            if abs(term) < eps * (abs(total) + 1):
                return total
        raise NumericsError(f"bessel_i series did not converge for order={order}")


def circle_quadrature_fixed(f: Callable, N: int, prec: PrecisionConfig = DEFAULT_PRECISION,
                            radius=1, offset=0.0):
    """(1/N) sum of f over N equispaced points on the circle of given radius.

    Exact for Laurent polynomials of degree < N in both directions when
    radius == 1.  ``offset`` rotates the grid by offset radians.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    with prec.workprec():
        r = to_mpf(radius, prec)
        total = mp.mpc(0)
        for k in range(N):
            z = r * mp.expjpi(2 * mp.mpf(k) / N + mp.mpf(offset) / mp.pi)
            total += f(z)
        return total / N


def circle_quadrature(f: Callable, prec: PrecisionConfig = DEFAULT_PRECISION,
                      radius=1, N0: int = 16, offset=0.0):
    """Adaptive trapezoid rule on a circle: double N until two successive
    values agree to target_tol.  Spectrally accurate on analytic integrands.
    """
    with prec.workprec():
        N = N0
        prev = circle_quadrature_fixed(f, N, prec, radius, offset)
        for _ in range(prec.max_refinements):
            N *= 2
            cur = circle_quadrature_fixed(f, N, prec, radius, offset)
            if abs(cur - prev) <= prec.target_tol * (1 + abs(cur)):
                return cur
            prev = cur
        raise NumericsError(f"circle quadrature did not converge by N={N}")


def series_sum(term: Callable[[int], Number], tail_bound: Callable[[int], Number],
               prec: PrecisionConfig = DEFAULT_PRECISION, start: int = 0):
    """Sum term(h) for h = start, start+1, ... until tail_bound(h) (a bound on
    the magnitude of the *remaining* tail after index h) falls below
    target_tol times the partial sum magnitude.
    """
    with prec.workprec():
        total = mp.mpc(0)
        h = start
        limit = start + prec.max_refinements * 10 ** 4
        while h < limit:
            total += term(h)
            bound = tail_bound(h)
            if bound is not None and abs(bound) <= prec.target_tol * (abs(total) + 1):
                if mp.im(total) == 0:
                    return mp.re(total)
                return total
            h += 1
        raise NumericsError("series_sum: tail bound never triggered")


def sum_gaussian_series(term: Callable[[int], Number], prec: PrecisionConfig = DEFAULT_PRECISION,
                        start: int = 1, min_terms: int = 8):
    """Sum a series whose terms eventually decay super-geometrically
    (Gaussian-type factors).  Stops once the running 4-term envelope is
    tiny relative to the partial sum and at most half the previous
    envelope; the window makes isolated sine-factor zeros harmless (two
    zero-progressions with gaps >= 2 cannot cover four consecutive terms).
    """
    with prec.workprec():
        total = mp.mpc(0)
        mags = []
        h = start
        limit = start + prec.max_refinements * 10 ** 4
        while h < limit:
            t = mp.mpc(term(h))
            total += t
            mags.append(abs(t))
            if len(mags) >= max(min_terms, 8):
                w_last = max(mags[-4:])
                w_prev = max(mags[-8:-4])
                if w_last <= prec.target_tol * (abs(total) + 1):
                    if w_last == 0 and w_prev == 0:
                        break
                    if w_prev > 0 and w_last <= w_prev / 2:
                        break
            h += 1
        else:
            raise NumericsError("gaussian series did not converge")
        if mp.im(total) == 0:
            return mp.re(total)
        return total


def nearly_equal(a, b, tol) -> bool:
    return abs(mp.mpc(a) - mp.mpc(b)) <= tol * (1 + max(abs(mp.mpc(a)), abs(mp.mpc(b))))
