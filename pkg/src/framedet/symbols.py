"""Weights on the unit circle and measures on the line.

Circle symbols expose a Fourier-coefficient oracle (closed form, finite
Laurent data, or adaptive quadrature); line measures expose a moment
oracle.  Both are immutable value objects, safe to share.

Families provided here cover the package's applications: random-walk
generating functions, Gaussian and tilted-Gaussian bridge measures with
their lattice discretizations, the excursion measures supported on perfect
squares, and the six-vertex weight ratio with its Taylor-series
differentiation engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

import mpmath as mp

from .numerics import (DEFAULT_PRECISION, NumericsError, PrecisionConfig, bessel_i,
                       binomial, circle_quadrature, is_exact, sum_gaussian_series,
                       to_mpc, to_mpf)
from .series import LaurentPoly, TruncSeries


# ---------------------------------------------------------------------------
# circle symbols
# ---------------------------------------------------------------------------

class CircleSymbol:
    """A weight on the unit circle with a Fourier-coefficient oracle.

    ``fourier(j)`` returns the coefficient of the measure
    phi(z) dz / (2 pi i z), i.e. the integral of phi(z) z^-j against the
    normalized arc measure.  Exact symbols carry a ``laurent`` payload and
    their coefficients are exact rationals.
    """

    def __init__(self, evaluate: Callable, *, fourier_closed: Optional[Callable] = None,
                 laurent: Optional[LaurentPoly] = None,
                 annulus: Tuple[float, float] = (0.99, 1.01), winding: int = 0,
                 even: bool = False, label: str = "symbol"):
        self._evaluate = evaluate
        self._fourier_closed = fourier_closed
        self.laurent = laurent
        self.annulus = annulus
        self.winding = winding
        self.even = even
        self.label = label
        self._cache = {}

    # -- evaluation --------------------------------------------------------

    def __call__(self, z):
        return self._evaluate(z)

    @property
    def is_exact(self) -> bool:
        return self.laurent is not None

    @property
    def is_szego_type(self) -> bool:
        lo, hi = self.annulus
        return self.winding == 0 and lo < 1 < hi

    def fourier(self, j: int, prec: PrecisionConfig = DEFAULT_PRECISION):
        j = int(j)
        if self.laurent is not None:
            return self.laurent.coeff(j)
        key = (j, prec.bits)
        if key not in self._cache:
            if self._fourier_closed is not None:
                val = self._fourier_closed(j, prec)
            else:
                val = circle_quadrature(lambda z: self._evaluate(z) * z ** (-j), prec)
            self._cache[key] = val
        return self._cache[key]

    def fourier_by_quadrature(self, j: int, prec: PrecisionConfig = DEFAULT_PRECISION):
        """Quadrature path regardless of closed form; used by self-tests."""
        return circle_quadrature(lambda z: self._evaluate(z) * z ** (-j), prec)

    def self_test(self, prec: PrecisionConfig = DEFAULT_PRECISION, jmax: int = 10):
        """Check closed-form/lattice coefficients against quadrature."""
        with prec.workprec():
            for j in range(-jmax, jmax + 1):
                a = to_mpc(self.fourier(j, prec), prec)
                b = self.fourier_by_quadrature(j, prec)
                if abs(a - b) > prec.target_tol * (1 + abs(a)) * 100:
                    raise NumericsError(
                        f"fourier self-test failed at j={j}: {a} vs {b}")
        return True

    # -- algebra -----------------------------------------------------------

    def shift(self, a: int) -> "CircleSymbol":
        """The symbol z^a * phi(z); Fourier coefficients shift by a."""
        a = int(a)
        if a == 0:
            return self
        base = self
        return CircleSymbol(
            lambda z: z ** a * base._evaluate(z),
            fourier_closed=(None if base._fourier_closed is None and base.laurent is None
                            else lambda j, prec: base.fourier(j - a, prec)),
            laurent=None if base.laurent is None else base.laurent.shift(a),
            annulus=base.annulus, winding=base.winding + a, even=False,
            label=f"z^{a}*{base.label}")

    def mul_laurent(self, L: LaurentPoly, label: Optional[str] = None) -> "CircleSymbol":
        """The symbol L(z) * phi(z) for a finite Laurent polynomial L."""
        base = self

        def closed(j, prec):
            return sum(c * base.fourier(j - k, prec) for k, c in L.coeffs.items())

        return CircleSymbol(
            lambda z: L(z) * base._evaluate(z),
            fourier_closed=None if base._fourier_closed is None and base.laurent is None else closed,
            laurent=None if base.laurent is None else base.laurent * L,
            annulus=base.annulus, winding=base.winding, even=False,
            label=label or f"L*{base.label}")

    def reversed(self) -> "CircleSymbol":
        """The symbol phi(1/z); Fourier coefficients reflect."""
        base = self
        lo, hi = base.annulus
        new_lo = 0.0 if hi == mp.inf else 1 / hi
        new_hi = mp.inf if lo == 0 else 1 / lo
        return CircleSymbol(
            lambda z: base._evaluate(1 / z),
            fourier_closed=(None if base._fourier_closed is None and base.laurent is None
                            else lambda j, prec: base.fourier(-j, prec)),
            laurent=None if base.laurent is None else base.laurent.reversed(),
            annulus=(new_lo, new_hi),
            winding=-base.winding, even=base.even, label=f"{base.label}~")


def constant_symbol(c=1) -> CircleSymbol:
    return CircleSymbol(lambda z: c, laurent=LaurentPoly({0: c}),
                        annulus=(0.0, mp.inf), even=True, label=f"const({c})")


def laurent_symbol(coeffs: dict, label: str = "laurent") -> CircleSymbol:
    L = LaurentPoly(coeffs)
    return CircleSymbol(lambda z: L(z), laurent=L, annulus=(0.0, mp.inf),
                        even=all(L.coeff(-k) == c for k, c in L.coeffs.items()),
                        label=label)


def make_ctrw_symbol(T, normalized: bool = False,
                     prec: PrecisionConfig = DEFAULT_PRECISION) -> CircleSymbol:
    """exp((T/2)(z + 1/z)); Fourier coefficient j is I_j(T).

    With ``normalized`` the weight carries the extra factor exp(-T), making
    the Fourier data transition probabilities rather than raw coefficients.
    """
    Tm = to_mpf(T, prec)
    if not Tm > 0:
        raise ValueError("T must be positive")
    scale = mp.exp(-Tm) if normalized else mp.mpf(1)

    def evaluate(z):
        return scale * mp.exp(Tm / 2 * (z + 1 / z))

    def closed(j, p):
        return scale * bessel_i(j, Tm, p)

    return CircleSymbol(evaluate, fourier_closed=closed, annulus=(0.0, mp.inf),
                        even=True, label=f"ctrw(T={T})" + ("norm" if normalized else ""))


def make_drw_symbol(T: int, probability: bool = False) -> CircleSymbol:
    """z^-T (z+1)^(2T); Fourier coefficient j is C(2T, T+j).

    With ``probability`` the symbol is divided by 2^(2T) so determinants of
    its coefficients are non-intersection probabilities.
    """
    T = int(T)
    if T <= 0:
        raise ValueError("T must be a positive integer")
    denom = 2 ** (2 * T) if probability else 1
    coeffs = {j: Fraction(binomial(2 * T, T + j), denom) for j in range(-T, T + 1)}
    return laurent_symbol(coeffs, label=f"drw(T={T})" + ("prob" if probability else ""))


# ---------------------------------------------------------------------------
# discretized circle measures
# ---------------------------------------------------------------------------

class DiscretizedCircleMeasure:
    """The measure (1/M) sum over z^M = s of base(z) delta_z.

    ``coefficient(j)`` returns (1/M) sum base(z) z^-j, the discrete analogue
    of a Fourier coefficient.  When the base carries finite Laurent data the
    coefficient is itself a Laurent polynomial in s over the exact field:
    only base exponents i with i = j (mod M) survive, contributing s^((i-j)/M).
    """

    def __init__(self, base: CircleSymbol, M: int, s=1):
        if int(M) < 1:
            raise ValueError("M must be a positive integer")
        self.base = base
        self.M = int(M)
        self.s = s
        self._cache = {}

    def coefficient(self, j: int, prec: PrecisionConfig = DEFAULT_PRECISION):
        j = int(j)
        key = (j, prec.bits)
        if key in self._cache:
            return self._cache[key]
        if self.base.laurent is not None:
            poly = self.coefficient_poly(j)
            val = poly(self.s)
        else:
            with prec.workprec():
                M = self.M
                s = mp.mpc(self.s)
                root = s ** (mp.mpf(1) / M)
                val = mp.mpc(0)
                for k in range(M):
                    z = root * mp.expjpi(2 * mp.mpf(k) / M)
                    val += self.base(z) * z ** (-j)
                val /= M
        self._cache[key] = val
        return val

    def coefficient_poly(self, j: int) -> LaurentPoly:
        """The coefficient as a Laurent polynomial in s (exact bases only)."""
        if self.base.laurent is None:
            raise ValueError("coefficient_poly requires an exact base symbol")
        out = {}
        for i, c in self.base.laurent.coeffs.items():
            if (i - j) % self.M == 0:
                q = (i - j) // self.M
                out[q] = out.get(q, 0) + c
        return LaurentPoly(out)


def discretize_circle_symbol(symbol: CircleSymbol, M: int, s=1) -> DiscretizedCircleMeasure:
    return DiscretizedCircleMeasure(symbol, M, s)


# ---------------------------------------------------------------------------
# line measures
# ---------------------------------------------------------------------------

class LineMeasure:
    """A measure on the real line exposed through its moment oracle."""

    CONTINUOUS = "ContinuousDensity"
    DISCRETE = "DiscreteSupport"
    SERIES = "WeightedSeries"

    def __init__(self, moment: Callable[[int, PrecisionConfig], object], kind: str,
                 support: str = "R", atoms: Optional[Sequence] = None,
                 label: str = "measure"):
        self._moment = moment
        self.kind = kind
        self.support = support
        self.atoms = list(atoms) if atoms is not None else None
        self.label = label
        self._cache = {}

    def moment(self, k: int, prec: PrecisionConfig = DEFAULT_PRECISION):
        k = int(k)
        if k < 0:
            raise ValueError("moment index must be >= 0")
        key = (k, prec.bits)
        if key not in self._cache:
            self._cache[key] = self._moment(k, prec)
        return self._cache[key]

    @classmethod
    def from_atoms(cls, atoms: Sequence[Tuple[object, object]], label: str = "atoms"):
        """Finite discrete measure: exact moments when the data is exact."""
        atoms = list(atoms)

        def moment(k, prec):
            if all(is_exact(x) and is_exact(w) for x, w in atoms):
                return sum(w * x ** k for x, w in atoms)
            with prec.workprec():
                return mp.fsum(to_mpc(w, prec) * to_mpc(x, prec) ** k for x, w in atoms)

        return cls(moment, cls.DISCRETE, support="atoms", atoms=atoms, label=label)

    @classmethod
    def from_moments(cls, moments, kind: str = SERIES, label: str = "moments"):
        if callable(moments):
            return cls(lambda k, prec: moments(k), kind, label=label)
        seq = list(moments)

        def moment(k, prec):
            if k >= len(seq):
                raise ValueError(f"moment {k} not available for {label}")
            return seq[k]

        return cls(moment, kind, label=label)


def gaussian_measure(prec: PrecisionConfig = DEFAULT_PRECISION) -> LineMeasure:
    """d mu = exp(-x^2/2) dx: even moments sqrt(2 pi) (2k-1)!!."""

    def moment(k, p):
        with p.workprec():
            if k % 2 == 1:
                return mp.mpf(0)
            out = mp.sqrt(2 * mp.pi)
            for m in range(k - 1, 0, -2):
                out *= m
            return out

    return LineMeasure(moment, LineMeasure.CONTINUOUS, label="gauss")


def gaussian_tilted_measure(beta, prec: PrecisionConfig = DEFAULT_PRECISION) -> LineMeasure:
    """d mu_beta = exp(-x^2/2 - i beta x) dx.

    Moments satisfy m_{k+1} = -i beta m_k + k m_{k-1} (integration by parts),
    seeded by the Gaussian Fourier transform m_0 = sqrt(2 pi) exp(-beta^2/2).
    """

    def moment(k, p):
        with p.workprec():
            b = to_mpf(beta, p)
            m_prev = mp.mpc(0)
            m_cur = mp.sqrt(2 * mp.pi) * mp.exp(-b * b / 2)
            if k == 0:
                return m_cur
            for j in range(k):
                m_next = -1j * b * m_cur + j * m_prev
                m_prev, m_cur = m_cur, m_next
            return m_cur

    return LineMeasure(moment, LineMeasure.CONTINUOUS, label=f"gauss_tilt({beta})")


def _lattice_sum(f, prec: PrecisionConfig):
    """Sum f(k) over all integers k, assuming Gaussian decay both ways."""
    def term(h):
        if h == 0:
            return f(0)
        return f(h) + f(-h)

    return sum_gaussian_series(term, prec, start=0)


def gaussian_lattice_measure(M, tau, beta=0,
                             prec: PrecisionConfig = DEFAULT_PRECISION) -> LineMeasure:
    """(2 pi / M) sum over x in {2 pi (k - tau)/M} of exp(-x^2/2 - i beta x) delta_x."""

    def moment(k, p):
        with p.workprec():
            Mm = to_mpf(M, p)
            t = to_mpf(tau, p)
            b = to_mpf(beta, p)
            step = 2 * mp.pi / Mm

            def f(j):
                x = step * (j - t)
                w = mp.exp(-x * x / 2)
                if b != 0:
                    w = w * mp.exp(-1j * b * x)
                return w * x ** k

            return step * _lattice_sum(f, p)

    tag = f"gauss_lat(M={M},tau={tau}" + (f",beta={beta})" if beta != 0 else ")")
    return LineMeasure(moment, LineMeasure.SERIES, support="lattice", label=tag)


def make_nibb_measures(M, tau, beta, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Continuous and lattice Gaussian measures, plain and beta-tilted."""
    return (gaussian_measure(prec),
            gaussian_lattice_measure(M, tau, 0, prec),
            gaussian_tilted_measure(beta, prec),
            gaussian_lattice_measure(M, tau, beta, prec))


# -- non-intersecting excursion measures ------------------------------------

def nibe_mu(M, prec: PrecisionConfig = DEFAULT_PRECISION) -> LineMeasure:
    """Atoms at the perfect squares h = j^2 with weight h exp(-pi^2 h / (2 M^2))."""
    Mv = M

    def moment(k, p):
        with p.workprec():
            Mm = to_mpf(Mv, p)
            c = mp.pi ** 2 / (2 * Mm * Mm)
            return sum_gaussian_series(
                lambda j: mp.mpf(j) ** (2 * k + 2) * mp.exp(-c * j * j), p, start=1)

    if not to_mpf(M, prec) > 0:
        raise ValueError("M must be positive")
    return LineMeasure(moment, LineMeasure.SERIES, support="squares", label=f"nibe_mu(M={M})")


def nibe_nu(M, alpha, prec: PrecisionConfig = DEFAULT_PRECISION) -> LineMeasure:
    """Signed measure with atoms (sqrt(h)/alpha) exp(-pi^2 h/(2M^2)) sin(sqrt(h) pi alpha / M)."""

    def moment(k, p):
        with p.workprec():
            Mm = to_mpf(M, p)
            a = to_mpf(alpha, p)
            c = mp.pi ** 2 / (2 * Mm * Mm)
            return sum_gaussian_series(
                lambda j: (mp.mpf(j) / a) * mp.exp(-c * j * j)
                * mp.sin(j * mp.pi * a / Mm) * mp.mpf(j) ** (2 * k),
                p, start=1)

    return LineMeasure(moment, LineMeasure.SERIES, support="squares",
                       label=f"nibe_nu(M={M},a={alpha})")


def nibe_s(M, alpha, beta, prec: PrecisionConfig = DEFAULT_PRECISION):
    """The two-parameter constant sum over h >= 1 (see the height CDF)."""
    with prec.workprec():
        Mm = to_mpf(M, prec)
        a = to_mpf(alpha, prec)
        b = to_mpf(beta, prec)
        c = mp.pi ** 2 / (2 * Mm * Mm)
        return sum_gaussian_series(
            lambda h: mp.exp(-c * h * h) * mp.sin(h * mp.pi * a / Mm)
            * mp.sin(h * mp.pi * b / Mm), prec, start=1) / (a * b)


def make_nibe_measures(M, prec: PrecisionConfig = DEFAULT_PRECISION):
    """mu, alpha -> nu(alpha), and (alpha, beta) -> s(alpha, beta)."""
    if not to_mpf(M, prec) > 0:
        raise ValueError("M must be positive")
    return (nibe_mu(M, prec),
            lambda alpha: nibe_nu(M, alpha, prec),
            lambda alpha, beta: nibe_s(M, alpha, beta, prec))


# ---------------------------------------------------------------------------
# six-vertex weights
# ---------------------------------------------------------------------------

PHASES = ("ferroelectric", "disordered", "antiferroelectric")


@dataclass(frozen=True)
class SixVertexWeights:
    """Phase parametrization of the vertex weights a, b, c.

    ferroelectric:      a=sinh(t-g), b=sinh(g+t), c=sinh(2g), 0<|g|<t
    disordered:         a=sin(g-t),  b=sin(g+t),  c=sin(2g),  |t|<g<pi/2
    antiferroelectric:  a=sinh(g-t), b=sinh(g+t), c=sinh(2g), |t|<g
    """

    phase: str
    t: object
    gamma: object
    prec: PrecisionConfig = field(default=DEFAULT_PRECISION, compare=False)

    def __post_init__(self):
        if self.phase not in PHASES:
            raise ValueError(f"unknown phase {self.phase!r}")
        with self.prec.workprec():
            t, g = self._tg()
            if self.phase == "ferroelectric" and not (0 < abs(g) < t):
                raise ValueError("ferroelectric phase requires 0 < |gamma| < t")
            if self.phase == "disordered" and not (abs(t) < g < mp.pi / 2):
                raise ValueError("disordered phase requires |t| < gamma < pi/2")
            if self.phase == "antiferroelectric" and not (abs(t) < g):
                raise ValueError("antiferroelectric phase requires |t| < gamma")
            for w in (self.a(), self.b(), self.c()):
                if not w > 0:
                    raise ValueError("weights a, b, c must be positive")

    def _tg(self):
        return to_mpf(self.t, self.prec), to_mpf(self.gamma, self.prec)

    def a(self, at=None):
        t, g = self._tg()
        x = t if at is None else to_mpf(at, self.prec)
        if self.phase == "ferroelectric":
            return mp.sinh(x - g)
        if self.phase == "disordered":
            return mp.sin(g - x)
        return mp.sinh(g - x)

    def b(self, at=None):
        t, g = self._tg()
        x = t if at is None else to_mpf(at, self.prec)
        if self.phase == "disordered":
            return mp.sin(g + x)
        return mp.sinh(g + x)

    def c(self):
        _, g = self._tg()
        if self.phase == "disordered":
            return mp.sin(2 * g)
        return mp.sinh(2 * g)

    def b_gamma0(self, x):
        """b(x, 0): the gamma -> 0 weight entering prefactor denominators."""
        xv = to_mpf(x, self.prec)
        return mp.sin(xv) if self.phase == "disordered" else mp.sinh(xv)

    def phi(self, at=None):
        """c / (a b) evaluated at the configured t or a supplied argument."""
        av, bv = self.a(at), self.b(at)
        if av == 0 or bv == 0:
            raise ZeroDivisionError("singular weight: a b vanishes")
        return self.c() / (av * bv)

    def phi_series(self, order: int, at=None) -> TruncSeries:
        """Taylor series of phi about the evaluation point, to given order."""
        with self.prec.workprec():
            t, g = self._tg()
            x = t if at is None else to_mpf(at, self.prec)
            if self.phase == "disordered":
                a_ser = TruncSeries.sin_at(g - x, order)
                a_ser = TruncSeries([c * (-1) ** k for k, c in enumerate(a_ser.coeffs)], order)
                b_ser = TruncSeries.sin_at(g + x, order)
            else:
                sign = -1 if self.phase == "ferroelectric" else 1
                # ferro: a = sinh((x-g) + s); antiferro: a = sinh((g-x) - s)
                if self.phase == "ferroelectric":
                    a_ser = TruncSeries.sinh_at(x - g, order)
                else:
                    a_ser = TruncSeries.sinh_at(g - x, order)
                    a_ser = TruncSeries([c * (-1) ** k for k, c in enumerate(a_ser.coeffs)], order)
                b_ser = TruncSeries.sinh_at(g + x, order)
            return TruncSeries.constant(self.c(), order) / (a_ser * b_ser)

    def phi_derivatives(self, k_max: int, at=None):
        """[phi(t), phi'(t), ..., phi^(k_max)(t)] by series arithmetic."""
        if k_max < 0:
            raise ValueError("k_max must be >= 0")
        ser = self.phi_series(k_max, at)
        return [ser.derivative_at_zero(k) for k in range(k_max + 1)]


def sixv_symbol_derivatives(w: SixVertexWeights, order: int, at=None):
    return w.phi_derivatives(order, at)


# ---------------------------------------------------------------------------
# config-driven construction
# ---------------------------------------------------------------------------

def symbol_from_config(cfg: dict, prec: PrecisionConfig = DEFAULT_PRECISION) -> CircleSymbol:
    family = cfg.get("family")
    if family == "ctrw":
        return make_ctrw_symbol(cfg["T"], bool(cfg.get("normalized", False)), prec)
    if family == "drw":
        return make_drw_symbol(int(cfg["T"]), bool(cfg.get("probability", False)))
    if family == "constant":
        return constant_symbol(cfg.get("value", 1))
    if family == "laurent":
        coeffs = {int(k): Fraction(str(v)) for k, v in cfg["coeffs"].items()}
        return laurent_symbol(coeffs)
    raise ValueError(f"unknown symbol family {family!r}")


def weights_from_config(cfg: dict, prec: PrecisionConfig = DEFAULT_PRECISION) -> SixVertexWeights:
    gamma = cfg["gamma"]
    if isinstance(gamma, str):
        with prec.workprec():
            gamma = mp.mpf(mp.pi) * Fraction(gamma[3:]) if gamma.startswith("pi*") else mp.mpf(gamma)
    return SixVertexWeights(cfg.get("phase", "disordered"), cfg.get("t", 0), gamma, prec)


def fourier_coefficient(symbol, j: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Fourier coefficient of a circle symbol or discretized measure."""
    if isinstance(symbol, DiscretizedCircleMeasure):
        return symbol.coefficient(j, prec)
    return symbol.fourier(j, prec)
