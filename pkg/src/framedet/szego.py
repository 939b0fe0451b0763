"""Szego machinery and large-size behavior of the walk determinants.

Provides the limit constants and scalar function solving the multiplicative
jump problem, finite-size vs. limit comparison tables, the contour
coefficients controlling the subleading corrections, and the closed-form
leading terms of the ensemble asymptotics together with convergence
studies against exact structured determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import mpmath as mp

from .numerics import (DEFAULT_PRECISION, NumericsError, PrecisionConfig, bessel_i,
                       circle_quadrature, circle_quadrature_fixed, inv_factorial, to_mpf)
from .determinants import (bordered_toeplitz_matrix, dense_det,
                           semi_framed_toeplitz_matrix, toeplitz_matrix)
from .orthopoly import FikMatrix, MatrixFn, build_bopuc
from .symbols import CircleSymbol, make_ctrw_symbol


class NotSzegoTypeError(ValueError):
    pass


@dataclass
class SzegoData:
    """Limit constants and the scalar jump solution for one symbol."""

    symbol: CircleSymbol
    log_coeff: Callable[[int], object]
    G: object
    E: object
    alpha: Callable[[object], object]

    def alpha_jump_residual(self, z):
        """alpha_+ - alpha_- phi at a circle point, via radial limits."""
        eps = mp.mpf(2) ** (-40)
        inner = self.alpha(z * (1 - eps))
        outer = self.alpha(z * (1 + eps))
        return inner - outer * self.symbol(z)


def _log_coeff_factory(symbol: CircleSymbol, prec: PrecisionConfig):
    cache = {}

    def log_coeff(k: int):
        if k not in cache:
            cache[k] = circle_quadrature(
                lambda z: mp.log(symbol(z)) * z ** (-k), prec)
        return cache[k]

    return log_coeff


def build_szego(symbol: CircleSymbol, prec: PrecisionConfig = DEFAULT_PRECISION,
                tail_terms: int = 400) -> SzegoData:
    """Limit constants G, E and the piecewise scalar function.

    G = exp(c_0) and E = exp(sum k c_k c_{-k}) from the log-coefficients;
    the scalar function is exp of the split Laurent tail (closed form for
    the continuous-walk family, where only the +-1 coefficients survive).
    """
    if not symbol.is_szego_type:
        raise NotSzegoTypeError(f"{symbol.label} is not a Szego-type symbol")
    with prec.workprec():
        if symbol.label.startswith("ctrw"):
            # log phi = (T/2)(z + 1/z) + const; closed forms short-circuit
            T, norm = _ctrw_params(symbol, prec)
            c0 = -T if norm else mp.mpf(0)

            def log_coeff(k):
                if k == 0:
                    return c0
                return T / 2 if abs(k) == 1 else mp.mpf(0)

            G = mp.exp(c0)
            E = mp.exp(T * T / 4)

            def alpha(z):
                z = mp.mpc(z)
                if abs(z) < 1:
                    return mp.exp(c0 + T * z / 2)
                return mp.exp(-T / (2 * z))

            return SzegoData(symbol, log_coeff, G, E, alpha)
        log_coeff = _log_coeff_factory(symbol, prec)
        G = mp.exp(log_coeff(0))
        total = mp.mpc(0)
        k = 1
        while k <= tail_terms:
            term = k * log_coeff(k) * log_coeff(-k)
            total += term
            if k >= 8 and abs(term) <= prec.target_tol * (1 + abs(total)):
                break
            k += 1
        else:
            raise NumericsError("E tail did not converge; symbol may vanish "
                                "on the circle (non-Szego tail)")
        E = mp.exp(total)

        def alpha(z, _lc=log_coeff):
            z = mp.mpc(z)
            acc = mp.mpc(0)
            if abs(z) < 1:
                acc += _lc(0)
                for j in range(1, tail_terms):
                    t = _lc(j) * z ** j
                    acc += t
                    if j > 4 and abs(t) <= prec.target_tol * (1 + abs(acc)):
                        break
            else:
                for j in range(1, tail_terms):
                    t = -_lc(-j) * z ** (-j)
                    acc += t
                    if j > 4 and abs(t) <= prec.target_tol * (1 + abs(acc)):
                        break
            return mp.exp(acc)

        return SzegoData(symbol, log_coeff, G, E, alpha)


def _ctrw_params(symbol: CircleSymbol, prec: PrecisionConfig):
    """(T, normalized?) back-parsed from the evaluator; avoids re-plumbing."""
    with prec.workprec():
        v1 = mp.log(symbol(mp.mpf(1)))
        vm = mp.log(symbol(mp.mpf(-1)))
        # log phi(1) = T + c0, log phi(-1) = -T + c0
        T = (v1 - vm) / 2
        c0 = (v1 + vm) / 2
        return mp.re(T), abs(c0) > mp.mpf(2) ** (-prec.bits // 2)


def strong_szego_check(symbol: CircleSymbol, n_list: Sequence[int],
                       prec: PrecisionConfig = DEFAULT_PRECISION):
    """Rows (n, D_n, G^n E, relative deviation) for the limit comparison."""
    data = build_szego(symbol, prec)
    rows = []
    with prec.workprec():
        for n in n_list:
            Dn = dense_det(toeplitz_matrix(symbol, n, prec), prec).value
            ref = data.G ** n * data.E
            dev = abs(Dn - ref) / abs(ref)
            rows.append({"n": n, "det": Dn, "szego": ref, "deviation": dev})
    return rows


# ---------------------------------------------------------------------------
# contour coefficients and the shifted-weight ratio
# ---------------------------------------------------------------------------

def c_n_phi(n: int, T, prec: PrecisionConfig = DEFAULT_PRECISION, rho=1.5,
            N: int = 256):
    """Contour coefficient of the inverse weight times the squared scalar
    function, on the inner circle; returns (quadrature value, leading term).

    For the continuous-walk weight the integrand reduces to
    tau^n exp((T/2)(tau - 1/tau)); the leading term is
    (-1)^(n+1) (T/2)^(n+1) / (n+1)!.
    """
    with prec.workprec():
        T = to_mpf(T, prec)
        r = 1 / to_mpf(rho, prec)

        def f(tau):
            return tau ** n * mp.exp(T / 2 * (tau - 1 / tau)) * tau

        val = circle_quadrature_fixed(f, N, prec, radius=r)
        lead = (-1) ** (n + 1) * (T / 2) ** (n + 1) / mp.factorial(n + 1)
        return mp.re(val) if abs(mp.im(val)) < abs(val) * mp.mpf(2) ** (-20) else val, lead


def script_b_n(n: int, T, prec: PrecisionConfig = DEFAULT_PRECISION,
               system=None):
    """The z^-1 correction coefficient of the shifted-weight solution.

    Computed exactly from the polynomial data as
    <A_n z phi> / (e_{n-1} A_n(0)); returned with the contour-ratio
    estimate -C_n/C_{n-1} and the first-order form T/(2(n+1)).
    """
    with prec.workprec():
        T = to_mpf(T, prec)
        if system is None:
            symbol = make_ctrw_symbol(T, prec=prec)
            system = build_bopuc(symbol, n + 1, prec)
        a_n = system.A[n]
        num = system.pair_with_symbol(a_n, system.symbol, shift=1)
        from .orthopoly import poly_eval
        a0 = poly_eval(a_n, mp.mpf(0))
        exact = num / (system.e[n - 1] * a0)
        cn, _ = c_n_phi(n, T, prec)
        cn1, _ = c_n_phi(n - 1, T, prec)
        ratio = -cn / cn1
        first_order = T / (2 * (n + 1))
        return exact, ratio, first_order


# ---------------------------------------------------------------------------
# asymptotic formulas for the walk ensembles
# ---------------------------------------------------------------------------

THEOREMS = ("7.2", "1.14", "1.15", "multi")


def asymptotic_value(theorem: str, n: int, T, params: dict,
                     prec: PrecisionConfig = DEFAULT_PRECISION,
                     variant: str = "derived"):
    """Closed-form leading term of the non-intersection probability.

    theorem "7.2":  one gapped endpoint, gap beta >= 1;
    theorem "1.14": two gapped endpoints, integer gaps beta2 > beta1 >= 1;
    theorem "1.15": one walker with gapped start gamma and end beta.
        ``variant`` chooses the bracket: "printed" adds the free-propagator
        term to the finite sum; "derived" uses the truncated series of the
        free propagator alone, which matches the exact determinants (the
        printed bracket double-counts; see the convergence studies).
    theorem "multi": the speculative multi-gap product form (not proposed
        as a conjecture by its source; flagged in reports).
    """
    with prec.workprec():
        T = to_mpf(T, prec)
        e_pref = mp.exp(T * T / 4)
        if theorem == "7.2":
            beta = int(params["beta1"])
            if beta < 1:
                raise ValueError("beta1 must be >= 1")
            return (mp.exp(-(n + 1) * T) * (T / 2) ** (beta - 1) * e_pref
                    * inv_factorial(beta - 1, prec))
        if theorem == "1.14":
            b1, b2 = int(params["beta1"]), int(params["beta2"])
            if not (b2 > b1 >= 1):
                raise ValueError("need beta2 > beta1 >= 1")
            return (mp.exp(-(n + 2) * T) * (T / 2) ** (b1 + b2 - 3) * e_pref
                    * (b2 - b1) * inv_factorial(b1 - 1, prec) * inv_factorial(b2 - 1, prec))
        if theorem == "1.15":
            g1, b1 = int(params["gamma1"]), int(params["beta1"])
            if g1 < 1 or b1 < 1:
                raise ValueError("need gamma1, beta1 >= 1")
            k0 = min(g1 - 1, b1 - 1)
            ksum = mp.mpf(0)
            for k in range(k0 + 1):
                ksum += ((T / 2) ** (g1 + b1 - 2 - 2 * k)
                         * inv_factorial(g1 - 1 - k, prec) * inv_factorial(b1 - 1 - k, prec))
            if variant == "printed":
                bracket = bessel_i(b1 - g1, T, prec) + ksum
            elif variant == "derived":
                bracket = ksum
            else:
                raise ValueError(f"unknown variant {variant!r}")
            return mp.exp(-(n + 1) * T) * e_pref * bracket
        if theorem == "multi":
            betas = [int(b) for b in params["betas"]]
            m = len(betas)
            out = e_pref * mp.exp(-(n + m) * T)
            for j, b in enumerate(betas, start=1):
                out *= (T / 2) ** (b - j) * inv_factorial(b - j, prec)
            for j in range(m):
                for k in range(j + 1, m):
                    out *= betas[k] - betas[j]
            return out
        raise ValueError(f"unknown theorem {theorem!r}")


def exact_probability(theorem: str, n: int, T, params: dict,
                      prec: PrecisionConfig = DEFAULT_PRECISION):
    """Exact finite-n probability via the matching structured determinant."""
    with prec.workprec():
        T = to_mpf(T, prec)
        phi = make_ctrw_symbol(T, prec=prec)
        if theorem == "7.2":
            beta = int(params["beta1"])
            N = n + 1
            psi = phi.shift(-(beta - 1))
            det = dense_det(bordered_toeplitz_matrix(phi, [psi], N, prec), prec).value
            return mp.exp(-N * T) * det
        if theorem in ("1.14", "multi"):
            betas = ([int(params["beta1"]), int(params["beta2"])]
                     if theorem == "1.14" else [int(b) for b in params["betas"]])
            m = len(betas)
            N = n + m
            psis = [phi.shift(-(b - m)) for b in betas]
            det = dense_det(bordered_toeplitz_matrix(phi, psis, N, prec), prec).value
            return mp.exp(-N * T) * det
        if theorem == "1.15":
            g1, b1 = int(params["gamma1"]), int(params["beta1"])
            N = n + 1
            psi = phi.shift(-b1)
            eta = phi.shift(n + g1 - 1)
            a = phi.fourier(b1 - g1, prec)
            det = dense_det(semi_framed_toeplitz_matrix(phi, psi, eta, a, N, prec),
                            prec).value
            return mp.exp(-N * T) * det
        raise ValueError(f"unknown theorem {theorem!r}")


def convergence_study(theorem: str, T, params: dict, n_values: Sequence[int],
                      prec: PrecisionConfig = DEFAULT_PRECISION,
                      variant: str = "derived"):
    """Rows (n, exact, asymptotic, |ratio - 1| [, n^2 |ratio - 1|])."""
    rows = []
    with prec.workprec():
        for n in n_values:
            ex = exact_probability(theorem, n, T, params, prec)
            asym = asymptotic_value(theorem, n, T, params, prec, variant=variant)
            resid = abs(ex / asym - 1) if asym != 0 else mp.inf
            row = {"n": n, "exact": ex, "asymptotic": asym, "residual": resid}
            if theorem == "1.14":
                row["n2_residual"] = n * n * resid
            if theorem == "multi":
                row["status"] = "speculative-form"
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# parametrix comparison
# ---------------------------------------------------------------------------

def _r1_entries(data: SzegoData, n: int, z, rho, prec: PrecisionConfig):
    """Off-diagonal first-correction entries by contour quadrature."""
    with prec.workprec():
        phi = data.symbol
        r_in = 1 / to_mpf(rho, prec)
        r_out = to_mpf(rho, prec)
        z = mp.mpc(z)

        def f12(tau):
            return -(tau ** n / phi(tau) * data.alpha(tau) ** 2) / (tau - z) * tau

        def f21(tau):
            return (tau ** (-n) / phi(tau) * data.alpha(tau) ** (-2)) / (tau - z) * tau

        r12 = circle_quadrature(f12, prec, radius=r_in)
        r21 = circle_quadrature(f21, prec, radius=r_out)
        return r12, r21


def parametrix_matrix(data: SzegoData, n: int, z, rho=1.5,
                      prec: PrecisionConfig = DEFAULT_PRECISION,
                      with_correction: bool = True) -> MatrixFn:
    """(I + R_1) times the region-wise outer model of the 2x2 solution."""
    with prec.workprec():
        z = mp.mpc(z)
        az = abs(z)
        rho = to_mpf(rho, prec)
        a = data.alpha(z)
        phi = data.symbol
        if az > rho:
            P = MatrixFn([[a * z ** n, mp.mpc(0)], [mp.mpc(0), z ** (-n) / a]])
        elif az > 1:
            P = MatrixFn([[a * z ** n, mp.mpc(0)],
                          [-(1 / (a * phi(z))), z ** (-n) / a]])
        elif az > 1 / rho:
            P = MatrixFn([[z ** n * a / phi(z), a], [-1 / a, mp.mpc(0)]])
        else:
            P = MatrixFn([[mp.mpc(0), a], [-1 / a, mp.mpc(0)]])
        if not with_correction:
            return P
        r12, r21 = _r1_entries(data, n, z, rho, prec)
        R = MatrixFn([[mp.mpc(1), r12], [r21, mp.mpc(1)]])
        return R.times(P)


def rh_parametrix_check(symbol: CircleSymbol, n: int, z_samples: Sequence,
                        rho=1.5, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Max relative entrywise gap between the exact 2x2 solution and the
    first-corrected parametrix over the samples; expected O(rho^-2n)."""
    data = build_szego(symbol, prec)
    system = build_bopuc(symbol, n + 1, prec)
    fik = FikMatrix(system, prec)
    with prec.workprec():
        worst = mp.mpf(0)
        for z in z_samples:
            z = mp.mpc(z)
            az = abs(z)
            for radius in (to_mpf(rho, prec), 1 / to_mpf(rho, prec), mp.mpf(1)):
                if abs(az - radius) < mp.mpf("1e-9"):
                    raise ValueError(f"sample {z} lies on a contour")
            X = fik.eval(n, z)
            P = parametrix_matrix(data, n, z, rho, prec)
            for j in range(2):
                for k in range(2):
                    scale = max(abs(P[j, k]), abs(X[j, k]), mp.mpf(1))
                    worst = max(worst, abs(X[j, k] - P[j, k]) / scale)
        return worst
