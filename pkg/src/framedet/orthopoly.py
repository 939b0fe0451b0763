"""Orthogonal polynomial systems from moment and Fourier oracles.

``MonicOPSystem`` holds monic polynomials orthogonal against a (possibly
signed or complex) line measure, built by the three-term recurrence of the
bilinear moment functional.  ``BiOPSystem`` holds the bi-orthogonal pairs
on the unit circle in *monic* normalization A_n, Ahat_n with pairing
<A_n, Ahat_n> = e_n; the conventional normalized polynomials are
Q_n = A_n / sqrt(e_n), so every square-root-free quantity (kernels, the
2x2 matrix of Cauchy transforms, norm ratios) is exposed without branch
choices.

Degenerate leading minors raise ``DegenerateSystemError`` naming the
failing determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

import mpmath as mp

from .numerics import DEFAULT_PRECISION, PrecisionConfig, is_exact, to_mpc
from .determinants import (circle_coeffs, dense_det, hankel_matrix, line_moments,
                           toeplitz_matrix)


class DegenerateSystemError(ValueError):
    pass


def poly_eval(coeffs: Sequence, x):
    """Evaluate sum coeffs[k] x^k by Horner."""
    total = 0
    for c in reversed(list(coeffs)):
        total = total * x + c
    return total


def _poly_eval_inv(coeffs: Sequence, z):
    """Evaluate P(1/z) without forming 1/z twice."""
    return poly_eval(coeffs, 1 / z)


# ---------------------------------------------------------------------------
# OPRL
# ---------------------------------------------------------------------------

class MonicOPSystem:
    """Monic orthogonal polynomials P_0..P_degree with norms h_k.

    The bilinear form is <x^i, x^j> = mu_{i+j}; no conjugation, so signed
    and complex measures are supported as long as every leading Hankel
    minor is nonzero.
    """

    def __init__(self, measure, degree: int, prec: PrecisionConfig = DEFAULT_PRECISION):
        self.measure = measure
        self.degree = int(degree)
        self.prec = prec
        mom = line_moments(measure, prec)
        # the degree-d system needs exactly the moments 0 .. 2d
        self._mu = [mom(k) for k in range(2 * self.degree + 1)]
        self.coeffs: List[List] = []
        self.norms: List = []
        self._build()

    def _dot_xk(self, coeffs, shift: int):
        """<P, x^shift> = sum_i c_i mu_{i+shift}."""
        return sum(c * self._mu[i + shift] for i, c in enumerate(coeffs) if c != 0)

    def _dot(self, a, b):
        total = 0
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb == 0:
                    continue
                total = total + ca * cb * self._mu[i + j]
        return total

    def _build(self):
        with self.prec.workprec():
            exact = all(is_exact(m) for m in self._mu)
            zero = Fraction(0) if exact else mp.mpf(0)
            one = Fraction(1) if exact else mp.mpf(1)
            p_prev: List = []
            p_cur = [one]
            h_cur = self._mu[0]
            if h_cur == 0:
                raise DegenerateSystemError("vanishing Hankel minor H_1")
            self.coeffs.append(list(p_cur))
            self.norms.append(h_cur)
            h_prev = None
            for k in range(self.degree):
                a_k = self._dot_xk([c for c in p_cur], 0)  # placeholder, replaced below
                # a_k = <x P_k, P_k> / h_k
                xp = [zero] + list(p_cur)
                a_k = self._dot(xp, p_cur) / h_cur
                nxt = [c for c in xp]
                for i, c in enumerate(p_cur):
                    nxt[i] = nxt[i] - a_k * c
                if h_prev is not None:
                    b_k = h_cur / h_prev
                    for i, c in enumerate(p_prev):
                        nxt[i] = nxt[i] - b_k * c
                h_next = self._dot(nxt, nxt)
                if h_next == 0:
                    raise DegenerateSystemError(f"vanishing Hankel minor H_{k + 2}")
                p_prev, p_cur = p_cur, nxt
                h_prev, h_cur = h_cur, h_next
                self.coeffs.append(list(p_cur))
                self.norms.append(h_cur)

    def poly(self, n: int) -> List:
        return self.coeffs[n]

    def eval(self, n: int, x):
        return poly_eval(self.coeffs[n], x)

    def kernel(self, n: int, x, y):
        """K_n(x, y) = sum_{k<=n} P_k(x) P_k(y) / h_k."""
        if n > self.degree:
            raise ValueError("kernel order exceeds built degree")
        total = 0
        for k in range(n + 1):
            total = total + poly_eval(self.coeffs[k], x) * poly_eval(self.coeffs[k], y) / self.norms[k]
        return total

    def moment_pairing(self, coeffs: Sequence, measure, shift: int = 0,
                       prec: Optional[PrecisionConfig] = None):
        """integral of P(x) x^shift d nu(x) through nu's moment oracle."""
        mom = line_moments(measure, prec or self.prec)
        return sum(c * mom(i + shift) for i, c in enumerate(coeffs) if c != 0)


def build_oprl(measure, degree: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> MonicOPSystem:
    return MonicOPSystem(measure, degree, prec)


def oprl_det_rep(measure, n: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> List:
    """Determinantal construction of monic P_n; cross-check oracle."""
    mom = line_moments(measure, prec)
    Hn = dense_det(hankel_matrix(measure, n, prec), prec).value
    if Hn == 0:
        raise DegenerateSystemError(f"vanishing Hankel minor H_{n}")
    coeffs = []
    for k in range(n + 1):
        rows = [[mom(j + c) for c in range(n + 1) if c != k] for j in range(n)]
        minor = dense_det(rows, prec).value
        sign = -1 if (n + k) % 2 else 1
        coeffs.append(sign * minor / Hn)
    return coeffs


def hankel_lu_check(measure, n: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Residual of the moment-matrix LU factorization through the OPs.

    With unnormalized rows p_{j,.} the product L H_{n+1} L^T must equal
    diag(h_0..h_n) exactly; returns the max-magnitude entry of the
    difference (exact zero in rational mode).  Also checks the norm
    product identity prod h_j = H_{n+1}.
    """
    sys = build_oprl(measure, n, prec)
    H = hankel_matrix(measure, n + 1, prec)
    size = n + 1
    L = [[sys.coeffs[j][i] if i <= j else 0 for i in range(size)] for j in range(size)]
    # L H L^T - diag(h)
    LH = [[sum(L[j][a] * H[a][b] for a in range(size) if L[j][a] != 0)
           for b in range(size)] for j in range(size)]
    resid = 0
    for j in range(size):
        for k in range(size):
            v = sum(LH[j][b] * L[k][b] for b in range(size) if L[k][b] != 0)
            if j == k:
                v = v - sys.norms[j]
            if abs(v) > abs(resid):
                resid = v
    prod_h = 1
    for h in sys.norms:
        prod_h = prod_h * h
    det_H = dense_det(hankel_matrix(measure, n + 1, prec), prec).value
    norm_resid = prod_h - det_H
    return resid, norm_resid


# ---------------------------------------------------------------------------
# BOPUC
# ---------------------------------------------------------------------------

class BiOPSystem:
    """Bi-orthogonal pairs on the circle in monic normalization.

    Pairing: <f, g> = integral of f(z) g(1/z) d phi(z), i.e.
    <z^i, z^j> = phi_{j-i}.  Monic A_n, Ahat_n satisfy
    <A_n, Ahat_k> = delta_{nk} e_n with e_n = D_{n+1}/D_n.
    """

    def __init__(self, symbol, degree: int, prec: PrecisionConfig = DEFAULT_PRECISION):
        self.symbol = symbol
        self.degree = int(degree)
        self.prec = prec
        f = circle_coeffs(symbol, prec)
        self._phi = {j: f(j) for j in range(-(self.degree + 2), self.degree + 3)}
        self.A: List[List] = []
        self.Ahat: List[List] = []
        self.e: List = []
        self._build()

    def fourier(self, j: int):
        if j not in self._phi:
            self._phi[j] = circle_coeffs(self.symbol, self.prec)(j)
        return self._phi[j]

    def _pair(self, a: Sequence, b: Sequence):
        """<sum a_i z^i, sum b_j z^j> = sum a_i b_j phi_{j-i}."""
        total = 0
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb == 0:
                    continue
                total = total + ca * cb * self.fourier(j - i)
        return total

    def _build(self):
        with self.prec.workprec():
            exact = all(is_exact(v) for v in self._phi.values())
            one = Fraction(1) if exact else mp.mpf(1)
            zero = Fraction(0) if exact else mp.mpf(0)
            for n in range(self.degree + 1):
                mono = [zero] * n + [one]
                a = list(mono)
                ahat = list(mono)
                for k in range(n):
                    ca = self._pair(mono, self.Ahat[k]) / self.e[k]
                    if ca != 0:
                        for i, c in enumerate(self.A[k]):
                            a[i] = a[i] - ca * c
                    cb = self._pair(self.A[k], mono) / self.e[k]
                    if cb != 0:
                        for i, c in enumerate(self.Ahat[k]):
                            ahat[i] = ahat[i] - cb * c
                e_n = self._pair(a, ahat)
                if e_n == 0:
                    raise DegenerateSystemError(f"vanishing Toeplitz minor ratio D_{n + 1}/D_{n}")
                self.A.append(a)
                self.Ahat.append(ahat)
                self.e.append(e_n)

    # -- normalized views ----------------------------------------------------

    def kappa_sq(self, n: int):
        """kappa_n^2 = D_n / D_{n+1} = 1 / e_n."""
        return 1 / self.e[n]

    def kappa(self, n: int):
        with self.prec.workprec():
            return mp.sqrt(to_mpc(self.kappa_sq(n), self.prec))

    def Q(self, n: int) -> List:
        k = self.kappa(n)
        return [k * c for c in self.A[n]]

    def Qhat(self, n: int) -> List:
        k = self.kappa(n)
        return [k * c for c in self.Ahat[n]]

    def eval_A(self, n: int, z):
        return poly_eval(self.A[n], z)

    def eval_Ahat_inv(self, n: int, z):
        """Ahat_n(1/z)."""
        return _poly_eval_inv(self.Ahat[n], z)

    def kernel(self, n: int, x, y):
        """Reproducing kernel sum_{j<=n} Q_j(y) Qhat_j(x) = sum A_j(y) Ahat_j(x)/e_j."""
        if n > self.degree:
            raise ValueError("kernel order exceeds built degree")
        total = 0
        for j in range(n + 1):
            total = total + poly_eval(self.A[j], y) * poly_eval(self.Ahat[j], x) / self.e[j]
        return total

    def pair_with_symbol(self, coeffs: Sequence, weight, shift: int = 0,
                         hat: bool = False):
        """integral of P(z) z^shift d psi(z) for a coefficient oracle psi.

        With ``hat`` the polynomial is evaluated at 1/z instead:
        integral of P(1/z) z^shift d psi(z).

        Fourier convention: integral of z^a d psi = psi_{-a}, so the pairing
        is a finite coefficient sum -- exact whenever psi is.
        """
        g = circle_coeffs(weight, self.prec)
        total = 0
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            a = (-i if hat else i) + shift
            total = total + c * g(-a)
        return total


def build_bopuc(symbol, degree: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> BiOPSystem:
    return BiOPSystem(symbol, degree, prec)


def bopuc_det_rep(symbol, n: int, hat: bool = False,
                  prec: PrecisionConfig = DEFAULT_PRECISION) -> List:
    """Monic A_n (or Ahat_n) by the determinantal construction; oracle."""
    f = circle_coeffs(symbol, prec)
    Dn = dense_det(toeplitz_matrix(symbol, n, prec), prec).value
    if Dn == 0:
        raise DegenerateSystemError(f"vanishing Toeplitz minor D_{n}")
    coeffs = []
    for k in range(n + 1):
        if hat:
            rows = [[f(j - c) for c in range(n)] for j in range(n + 1) if j != k]
        else:
            rows = [[f(j - c) for c in range(n + 1) if c != k] for j in range(n)]
        minor = dense_det(rows, prec).value
        sign = -1 if (n + k) % 2 else 1
        coeffs.append(sign * minor / Dn)
    return coeffs


# ---------------------------------------------------------------------------
# the 2x2 matrix of BOPUC data (orthogonality + Cauchy transforms)
# ---------------------------------------------------------------------------

@dataclass
class MatrixFn:
    entries: list  # 2x2 nested list of values

    def __getitem__(self, jk):
        return self.entries[jk[0]][jk[1]]

    def times(self, other: "MatrixFn") -> "MatrixFn":
        a, b = self.entries, other.entries
        return MatrixFn([[a[0][0] * b[0][0] + a[0][1] * b[1][0],
                          a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                         [a[1][0] * b[0][0] + a[1][1] * b[1][0],
                          a[1][0] * b[0][1] + a[1][1] * b[1][1]]])

    def det(self):
        a = self.entries
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]

    def max_abs_diff(self, other: "MatrixFn"):
        return max(abs(mp.mpc(self.entries[j][k]) - mp.mpc(other.entries[j][k]))
                   for j in range(2) for k in range(2))


class FikMatrix:
    """Evaluator for the 2x2 solution built from a BiOPSystem.

    Entries (size parameter n >= 1):
      [0,0] = A_n(z)
      [0,1] = Cauchy transform of A_n(zeta) phi(zeta) zeta^(1-n) / (zeta - z)
      [1,0] = -z^(n-1) Ahat_{n-1}(1/z) / e_{n-1}
      [1,1] = -(1/e_{n-1}) Cauchy transform of Ahat_{n-1}(1/zeta) phi(zeta)/(zeta-z)

    ``side`` resolves boundary values on the unit circle by deforming the
    quadrature contour off the pole ('in' = limit from inside).
    """

    def __init__(self, system: BiOPSystem, prec: PrecisionConfig = DEFAULT_PRECISION):
        self.sys = system
        self.prec = prec

    def _contour_radius(self, z, side: Optional[str]):
        az = abs(mp.mpc(z))
        lo, hi = self.sys.symbol.annulus if isinstance(self.sys.symbol.annulus, tuple) else (0.99, 1.01)
        if side == "in" or (side is None and az < 1):
            r = min(mp.mpf(1.25), mp.sqrt(mp.mpf(hi))) if hi > 1 else mp.mpf(1)
            if side is None and az >= r:
                r = (az + mp.mpf(hi if hi != mp.inf else az + 1)) / 2
            return r
        r = max(mp.mpf(0.8), mp.sqrt(mp.mpf(lo))) if lo < 1 else mp.mpf(1)
        if side is None and az <= r:
            r = (az + lo) / 2 if lo > 0 else az / 2 + mp.mpf("0.05")
        return r

    def _cauchy(self, g: Callable, z, side: Optional[str]):
        """(1/2 pi i) integral g(zeta)/(zeta - z) d zeta on a deformed circle."""
        from .numerics import circle_quadrature
        r = self._contour_radius(z, side)
        # d zeta = i zeta d theta: quadrature of g(zeta) zeta/(zeta - z) d mu
        return circle_quadrature(lambda w: g(w) * w / (w - z), self.prec, radius=r)

    def eval(self, n: int, z, side: Optional[str] = None) -> MatrixFn:
        if n < 1:
            raise ValueError("size parameter must be >= 1")
        if n > self.sys.degree:
            raise ValueError("system degree too small")
        with self.prec.workprec():
            z = mp.mpc(z)
            if side is None and mp.almosteq(abs(z), 1, 1e-12):
                raise ValueError("z on the unit circle: specify side='in' or 'out'")
            sysn = self.sys
            phi = sysn.symbol
            e_prev = to_mpc(sysn.e[n - 1], self.prec)
            a_n = [to_mpc(c, self.prec) for c in sysn.A[n]]
            ahat_prev = [to_mpc(c, self.prec) for c in sysn.Ahat[n - 1]]
            x11 = poly_eval(a_n, z)
            x21 = -z ** (n - 1) * _poly_eval_inv(ahat_prev, z) / e_prev
            x12 = self._cauchy(lambda w: poly_eval(a_n, w) * phi(w) * w ** (-n), z, side)
            x22 = -self._cauchy(lambda w: _poly_eval_inv(ahat_prev, w) * phi(w) * w ** (-1),
                                z, side) / e_prev
            return MatrixFn([[x11, x12], [x21, x22]])

    def jump_matrix(self, n: int, z) -> MatrixFn:
        with self.prec.workprec():
            z = mp.mpc(z)
            return MatrixFn([[mp.mpf(1), z ** (-n) * self.sys.symbol(z)],
                             [mp.mpf(0), mp.mpf(1)]])

    def x_infinity(self, n: int, order: int = 2, radius=2.0, N: int = 64):
        """Laurent coefficients of X(z) z^(-n sigma3) - I at infinity.

        Extracted by contour quadrature on |z| = radius; returns a list
        [X1, X2, ...] of MatrixFn coefficient matrices.
        """
        with self.prec.workprec():
            R = mp.mpf(radius)
            samples = []
            for k in range(N):
                z = R * mp.expjpi(2 * mp.mpf(k) / N)
                X = self.eval(n, z)
                zn = z ** n
                F = [[X[0, 0] / zn - 1, X[0, 1] * zn],
                     [X[1, 0] / zn, X[1, 1] * zn - 1]]
                samples.append((z, F))
            out = []
            for m in range(1, order + 1):
                acc = [[mp.mpc(0), mp.mpc(0)], [mp.mpc(0), mp.mpc(0)]]
                for z, F in samples:
                    w = z ** m
                    for a in range(2):
                        for b in range(2):
                            acc[a][b] += F[a][b] * w
                out.append(MatrixFn([[acc[a][b] / N for b in range(2)] for a in range(2)]))
            return out

    def x_infinity_algebraic(self, n: int):
        """X1, X2 from the polynomial data; oracle for the quadrature path."""
        with self.prec.workprec():
            s = self.sys
            a_n = s.A[n]
            e_prev = to_mpc(s.e[n - 1], self.prec)
            pad = lambda c, i: to_mpc(c[i], self.prec) if 0 <= i < len(c) else mp.mpc(0)
            x1_11 = pad(a_n, n - 1)
            x2_11 = pad(a_n, n - 2)
            x1_12 = -to_mpc(s.pair_with_symbol(a_n, s.symbol, shift=1), self.prec)
            x2_12 = -to_mpc(s.pair_with_symbol(a_n, s.symbol, shift=2), self.prec)
            x1_21 = -pad(s.Ahat[n - 1], 0) / e_prev
            x2_21 = -pad(s.Ahat[n - 1], 1) / e_prev
            # <z^k, Ahat_{n-1}> / e_{n-1} for k = n, n+1
            mono = lambda k: [0] * k + [1]
            x1_22 = to_mpc(s._pair(mono(n), s.Ahat[n - 1]), self.prec) / e_prev
            x2_22 = to_mpc(s._pair(mono(n + 1), s.Ahat[n - 1]), self.prec) / e_prev
            return [MatrixFn([[x1_11, x1_12], [x1_21, x1_22]]),
                    MatrixFn([[x2_11, x2_12], [x2_21, x2_22]])]


def fik_matrix_eval(system: BiOPSystem, n: int, z, side: Optional[str] = None,
                    prec: PrecisionConfig = DEFAULT_PRECISION) -> MatrixFn:
    return FikMatrix(system, prec).eval(n, z, side)


def kernel_oprl(system: MonicOPSystem, n: int, x, y):
    """Reproducing kernel of the line system at order n."""
    return system.kernel(n, x, y)


def kernel_bopuc(system: BiOPSystem, n: int, x, y):
    """Reproducing kernel of the circle system at order n."""
    return system.kernel(n, x, y)
