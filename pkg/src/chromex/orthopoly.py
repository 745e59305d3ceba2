"""Orthonormal polynomial evaluation and Christoffel-Darboux kernels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import poly_grid, poly_sequence
from .errors import ParameterError
from .families import FamilyId, family_spec, gamma_beta_arrays


@dataclass(frozen=True)
class PolyEvaluation:
    family: FamilyId
    degree: int
    values: np.ndarray                    # p_0(omega) .. p_N(omega)
    derivative_values: np.ndarray | None  # p'_0(omega) .. p'_N(omega)


def eval_all_p(family, N: int, omega: float, derivatives: bool = False) -> PolyEvaluation:
    """Evaluate p_0..p_N at a single omega by the forward recurrence.

    With derivatives=True also returns p'_n via the differentiated
    recurrence p'_{n+1} = (p_n + (w+beta_n) p'_n)/gamma_n
                           - (gamma_{n-1}/gamma_n) p'_{n-1}.
    """
    if N < 0:
        raise ParameterError("N must be nonnegative")
    spec = family_spec(family)
    gam, bet = gamma_beta_arrays(spec, N)
    values = poly_sequence(gam, bet, float(omega))
    dvals = None
    if derivatives:
        dvals = np.zeros(N + 1)
        p = values
        dm1, d = 0.0, 0.0
        for n in range(N):
            gm1 = gam[n - 1] if n >= 1 else 1.0
            dn = (p[n] + (omega + bet[n]) * d - gm1 * dm1) / gam[n]
            dm1, d = d, dn
            dvals[n + 1] = d
    return PolyEvaluation(spec.id, N, values, dvals)


def eval_p_grid(family, N: int, omegas) -> np.ndarray:
    """p_n(omega) for n <= N over a grid; shape (N+1, len(omegas))."""
    if N < 0:
        raise ParameterError("N must be nonnegative")
    gam, bet = gamma_beta_arrays(family, N)
    return poly_grid(gam, bet, np.asarray(omegas, dtype=np.float64))


def cd_kernel(family, N: int, omega: float, sigma: float) -> float:
    """sum_{k<=N} p_k(omega) p_k(sigma) via the Christoffel-Darboux quotient.

    Requires omega != sigma; use cd_diagonal on the diagonal.
    """
    if omega == sigma:
        raise ParameterError("omega == sigma: use cd_diagonal")
    spec = family_spec(family)
    gam, bet = gamma_beta_arrays(spec, N + 1)
    po = poly_sequence(gam, bet, float(omega))
    ps = poly_sequence(gam, bet, float(sigma))
    return float(gam[N] * (po[N + 1] * ps[N] - ps[N + 1] * po[N]) / (omega - sigma))


def cd_diagonal(family, N: int, omega: float) -> float:
    """sum_{k<=N} p_k(omega)^2 via gamma_N (p'_{N+1} p_N - p_{N+1} p'_N)."""
    ev = eval_all_p(family, N + 1, omega, derivatives=True)
    gam, _ = gamma_beta_arrays(family, N)
    p, d = ev.values, ev.derivative_values
    return float(gam[N] * (d[N + 1] * p[N] - p[N + 1] * d[N]))
