"""Laurent polynomials and truncated power series.

``LaurentPoly`` is the workhorse for exact-mode circle symbols (finite
Fourier data with rational coefficients) and for the width-CDF contour
integral, where determinant entries are Laurent polynomials in the
root-of-unity parameter and the integral extracts the constant coefficient.

``TruncSeries`` provides order-capped Taylor arithmetic (composition with
affine shifts, products, reciprocals) used to differentiate the six-vertex
weight ratio without finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

import mpmath as mp


class LaurentPoly:
    """A finite Laurent polynomial sum_k c_k z^k held as {k: c_k}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, object] | None = None):
        self.coeffs = {}
        if coeffs:
            for k, c in coeffs.items():
                if c != 0:
                    self.coeffs[int(k)] = c

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    def coeff(self, k: int):
        return self.coeffs.get(k, 0)

    def degrees(self):
        if not self.coeffs:
            return (0, 0)
        ks = self.coeffs.keys()
        return (min(ks), max(ks))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other})
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly({0: other}) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({k: c * other for k, c in self.coeffs.items()})
        out: Dict[int, object] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                s = out.get(k, 0) + c1 * c2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, a: int) -> "LaurentPoly":
        """Multiply by z^a."""
        return LaurentPoly({k + a: c for k, c in self.coeffs.items()})

    def reversed(self) -> "LaurentPoly":
        """z -> 1/z."""
        return LaurentPoly({-k: c for k, c in self.coeffs.items()})

    def __call__(self, z):
        total = 0
        for k, c in self.coeffs.items():
            total = total + c * z ** k
        return total

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        parts = [f"{c!r}*z^{k}" for k, c in sorted(self.coeffs.items())]
        return "LaurentPoly(" + " + ".join(parts) + ")"


@dataclass
class TruncSeries:
    """Power series in s truncated at order ``order`` (inclusive)."""

    coeffs: list
    order: int

    @classmethod
    def constant(cls, c, order: int) -> "TruncSeries":
        out = [mp.mpf(0)] * (order + 1)
        out[0] = c
        return cls(out, order)

    @classmethod
    def variable(cls, order: int) -> "TruncSeries":
        out = [mp.mpf(0)] * (order + 1)
        if order >= 1:
            out[1] = mp.mpf(1)
        return cls(out, order)

    @classmethod
    def sin_at(cls, a, order: int) -> "TruncSeries":
        """Series of sin(a + s) about s = 0."""
        return cls._trig_at(a, order, mp.sin, mp.cos)

    @classmethod
    def sinh_at(cls, a, order: int) -> "TruncSeries":
        """Series of sinh(a + s) about s = 0."""
        sa, ca = mp.sinh(a), mp.cosh(a)
        out = []
        for k in range(order + 1):
            val = sa if k % 2 == 0 else ca
            out.append(val / mp.factorial(k))
        return cls(out, order)

    @classmethod
    def _trig_at(cls, a, order: int, s_fn, c_fn) -> "TruncSeries":
        # d^k/ds^k sin(a+s) cycles through sin, cos, -sin, -cos
        sa, ca = s_fn(a), c_fn(a)
        cycle = [sa, ca, -sa, -ca]
        return cls([cycle[k % 4] / mp.factorial(k) for k in range(order + 1)], order)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            out = list(self.coeffs)
            out[0] = out[0] + other
            return TruncSeries(out, self.order)
        assert self.order == other.order
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncSeries) else -mp.mpf(other))

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self.coeffs], self.order)
        assert self.order == other.order
        K = self.order
        out = [mp.mpf(0)] * (K + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(0, K - i + 1):
                out[i + j] += a * other.coeffs[j]
        return TruncSeries(out, K)

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has vanishing constant term")
        K = self.order
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [mp.mpf(0)] * K
        for k in range(1, K + 1):
            acc = mp.mpf(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out[k] = -inv0 * acc
        return TruncSeries(out, K)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.reciprocal()
        return self * (1 / mp.mpf(other))

    def derivative_at_zero(self, k: int):
        """k-th derivative of the underlying function at the expansion point."""
        if k > self.order:
            raise ValueError("series order too low for requested derivative")
        return self.coeffs[k] * mp.factorial(k)
