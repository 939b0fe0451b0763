"""Six-vertex model with domain wall boundary conditions.

The inhomogeneous partition function is a prefactored determinant of the
weight ratio; homogeneous and partially refined versions follow from
sequential parameter collapse and become Hankel determinants in the
derivatives of the weight ratio.  A backtracking/row-transfer enumeration
over arrow configurations provides exact ground truth for small lattices.

Edge conventions: horizontal arrows carry bit 1 when pointing east,
vertical arrows bit 1 when pointing south; rows are numbered from the top.
Domain wall boundaries: left/right horizontal arrows point outward, top
and bottom vertical arrows point inward.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath as mp

from .numerics import DEFAULT_PRECISION, PrecisionConfig, to_mpf
from .determinants import (bordered_hankel_matrix, dense_det, framed_hankel_matrix,
                           hankel_matrix)
from .symbols import SixVertexWeights


class CoincidentParameterError(ValueError):
    pass


@dataclass(frozen=True)
class SixVertexSpec:
    weights: SixVertexWeights
    n: int
    chis: Optional[tuple] = None
    psis: Optional[tuple] = None
    xi1: Optional[object] = None
    xi2: Optional[object] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if (self.chis is None) != (self.psis is None):
            raise ValueError("chis and psis must be supplied together")
        if self.chis is not None and (len(self.chis) != self.n or len(self.psis) != self.n):
            raise ValueError("need n inhomogeneity parameters on each axis")


# ---------------------------------------------------------------------------
# Izergin-Korepin determinant
# ---------------------------------------------------------------------------

def ik_partition(spec: SixVertexSpec, prec: PrecisionConfig = DEFAULT_PRECISION,
                 tol=None):
    """Fully inhomogeneous partition function via the determinant formula."""
    if spec.chis is None:
        raise ValueError("ik_partition needs inhomogeneity parameters")
    w = spec.weights
    with prec.workprec():
        tol = tol if tol is not None else mp.mpf(10) ** (-10)
        chis = [to_mpf(c, prec) for c in spec.chis]
        psis = [to_mpf(p, prec) for p in spec.psis]
        for vals, name in ((chis, "chis"), (psis, "psis")):
            for i in range(len(vals)):
                for j in range(i + 1, len(vals)):
                    if abs(vals[i] - vals[j]) < tol:
                        raise CoincidentParameterError(f"{name} {i} and {j} coincide")
        n = spec.n
        c = w.c()
        pref = mp.mpf(1)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                ab = w.a(psis[j] - chis[i]) * w.b(psis[j] - chis[i])
                pref *= ab
                row.append(c / ab)
            rows.append(row)
        # antisymmetric orientation (chi_i - chi_j against psi_j - psi_i):
        # pinned by the weighted enumeration oracle and consistent with the
        # b(psi_n - t)^(n-1) prefactor of the partially homogeneous limit
        for i in range(n):
            for j in range(i + 1, n):
                bchi = w.b_gamma0(chis[i] - chis[j])
                bpsi = w.b_gamma0(psis[j] - psis[i])
                if bchi == 0 or bpsi == 0:
                    raise CoincidentParameterError("vanishing gamma->0 weight difference")
                pref /= bchi * bpsi
        return pref * dense_det(rows, prec).value


# ---------------------------------------------------------------------------
# homogeneous and refined limits
# ---------------------------------------------------------------------------

def _factorial_product(k: int):
    out = mp.mpf(1)
    for j in range(k):
        out *= mp.factorial(j)
    return out


def sixv_partition(spec: SixVertexSpec, variant: str = "homogeneous",
                   prec: PrecisionConfig = DEFAULT_PRECISION):
    """Partition function in a (partially) homogeneous limit.

    homogeneous:    all column parameters 0, all row parameters t;
    refined:        last row parameter offset by xi2 (bordered Hankel);
    doubly_refined: also last column offset by -xi1 (framed Hankel).
    """
    w = spec.weights
    n = spec.n
    with prec.workprec():
        ab = w.a() * w.b()
        if variant == "homogeneous":
            ders = w.phi_derivatives(max(2 * n - 2, 0))
            rows = [[ders[i + j] for j in range(n)] for i in range(n)]
            return (ab ** (n * n) / _factorial_product(n) ** 2
                    * dense_det(rows, prec).value)
        if variant == "refined":
            if spec.xi2 is None:
                raise ValueError("refined variant needs xi2")
            xi = to_mpf(spec.xi2, prec)
            if xi == 0:
                raise ValueError("xi must be nonzero; use the homogeneous variant")
            t = to_mpf(w.t, prec)
            mu = w.phi_derivatives(max(2 * n - 3, 0))
            nu = w.phi_derivatives(n - 1, at=t + xi)
            rows = [[mu[i + j] for j in range(n - 1)] + [nu[i]] for i in range(n)]
            ab_xi = w.a(t + xi) * w.b(t + xi)
            pref = (ab ** (n * n - n) * ab_xi ** n
                    / (mp.factorial(n - 1) * w.b_gamma0(xi) ** (n - 1)
                       * _factorial_product(n - 1) ** 2))
            return pref * dense_det(rows, prec).value
        if variant == "doubly_refined":
            if spec.xi1 is None or spec.xi2 is None:
                raise ValueError("doubly refined variant needs xi1 and xi2")
            xi1 = to_mpf(spec.xi1, prec)
            xi2 = to_mpf(spec.xi2, prec)
            if xi1 == 0 or xi2 == 0:
                raise ValueError("offsets must be nonzero")
            t = to_mpf(w.t, prec)
            mu = w.phi_derivatives(max(2 * n - 4, 0))
            nu = w.phi_derivatives(n - 2, at=t + xi2)
            eta = w.phi_derivatives(n - 2, at=t + xi1)
            corner = w.phi(t + xi1 + xi2)
            rows = [[mu[i + j] for j in range(n - 1)] + [nu[i]] for i in range(n - 1)]
            rows.append(list(eta) + [corner])
            ab1 = w.a(t + xi1) * w.b(t + xi1)
            ab2 = w.a(t + xi2) * w.b(t + xi2)
            ab12 = w.a(t + xi1 + xi2) * w.b(t + xi1 + xi2)
            pref = (ab ** ((n - 1) ** 2) * (ab1 * ab2) ** (n - 1) * ab12
                    / ((w.b_gamma0(xi1) * w.b_gamma0(xi2)) ** (n - 1)
                       * _factorial_product(n - 1) ** 2))
            return pref * dense_det(rows, prec).value
        raise ValueError(f"unknown variant {variant!r}")


def sixv_refined_op_form(spec: SixVertexSpec, prec: PrecisionConfig = DEFAULT_PRECISION):
    """Refined partition function through the orthogonal-polynomial pairing.

    Same prefactor as the refined determinant, with the bordered Hankel
    replaced by H_{n-1} times the pairing of the top monic polynomial
    against the offset moment sequence.
    """
    from .orthopoly import build_oprl
    w = spec.weights
    n = spec.n
    with prec.workprec():
        t = to_mpf(w.t, prec)
        xi = to_mpf(spec.xi2, prec)
        mu_m = w.phi_derivatives(max(2 * n - 1, 1))
        nu_m = w.phi_derivatives(n - 1, at=t + xi)
        mu = lambda k: mu_m[k]
        sysP = build_oprl(mu, n - 1, prec)
        pairing = sum(c * nu_m[i] for i, c in enumerate(sysP.coeffs[n - 1]))
        Hn1 = dense_det(hankel_matrix(mu, n - 1, prec), prec).value
        ab = w.a() * w.b()
        ab_xi = w.a(t + xi) * w.b(t + xi)
        pref = (ab ** (n * n - n) * ab_xi ** n
                / (mp.factorial(n - 1) * w.b_gamma0(xi) ** (n - 1)
                   * _factorial_product(n - 1) ** 2))
        return pref * Hn1 * pairing


# ---------------------------------------------------------------------------
# exhaustive enumeration oracle
# ---------------------------------------------------------------------------

VERTEX_TYPES = {
    # (h_west, h_east, v_north, v_south) -> type index 1..6
    (1, 1, 0, 0): 1,
    (0, 0, 1, 1): 2,
    (1, 1, 1, 1): 3,
    (0, 0, 0, 0): 4,
    (1, 0, 0, 1): 5,
    (0, 1, 1, 0): 6,
}


def _site_weight(w: SixVertexWeights, vtype: int, arg):
    if vtype in (1, 2):
        return w.a(arg)
    if vtype in (3, 4):
        return w.b(arg)
    return w.c()


def oracle_enumerate_sixvertex(spec: SixVertexSpec,
                               prec: PrecisionConfig = DEFAULT_PRECISION,
                               unit_weights: bool = False):
    """Sum of configuration weights over all DWBC states (n <= 4).

    With inhomogeneities the vertex at row y (from top), column x (from
    left) carries a(psi_y - chi_x) / b(psi_y - chi_x) / c per its type;
    with ``unit_weights`` every vertex counts 1 and the result is the bare
    state count.
    """
    n = spec.n
    if n > 4:
        raise ValueError("enumeration capped at n = 4")
    w = spec.weights
    with prec.workprec():
        if spec.chis is not None:
            chis = [to_mpf(c, prec) for c in spec.chis]
            psis = [to_mpf(p, prec) for p in spec.psis]
        else:
            chis = [mp.mpf(0)] * n
            psis = [to_mpf(w.t, prec)] * n
        # state: tuple of vertical-arrow bits between row r and r+1
        top = tuple([1] * n)
        bottom = tuple([0] * n)
        states = {top: mp.mpf(1) if not unit_weights else 1}
        for y in range(1, n + 1):
            nxt = {}
            for v_in, acc in states.items():
                # scan the row: h = 0 entering (left boundary arrow points west)
                stack = [(0, 0, tuple(), acc)]
                while stack:
                    x, h_w, v_out, weight = stack.pop()
                    if x == n:
                        if h_w == 1:  # right boundary arrow points east
                            key = v_out
                            nxt[key] = nxt.get(key, 0) + weight
                        continue
                    v_n = v_in[x]
                    for h_e in (0, 1):
                        v_s = h_w + v_n - h_e
                        if v_s not in (0, 1):
                            continue
                        vtype = VERTEX_TYPES[(h_w, h_e, v_n, v_s)]
                        if unit_weights:
                            wt = 1
                        else:
                            wt = _site_weight(w, vtype, psis[y - 1] - chis[x])
                        stack.append((x + 1, h_e, v_out + (v_s,), weight * wt))
            states = nxt
        return states.get(bottom, 0)
