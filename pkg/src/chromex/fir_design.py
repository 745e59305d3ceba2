"""FIR filters that evaluate chromatic derivatives from unit-spaced samples.

The design is weighted least squares on a band-edge-clustered frequency
grid, optionally refined by Lawson iterations (iteratively reweighted
least squares, which drives the solution toward the minimax optimum).
The tap parity is imposed structurally: a cosine half-system for even
operator orders, a sine half-system for odd orders, matching the parity
of the target i^n p_n(w).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterError, UnsupportedFamilyError
from .families import FamilyId, family_spec, parse_family
from .orthopoly import eval_p_grid

_BANDLIMITED = ("legendre", "chebyshev_t", "chebyshev_u", "gegenbauer", "jacobi")


@dataclass(frozen=True)
class FirFilter:
    family: FamilyId
    operator_order: int
    half_width: int
    taps: np.ndarray          # c_{-N} .. c_{N}
    passband_edge: float
    stopband_edge: float

    def tap(self, k: int) -> float:
        return float(self.taps[self.half_width + k])


@dataclass(frozen=True)
class DesignReport:
    passband_max_error: float
    stopband_max_magnitude: float
    grid_size: int
    condition_number: float
    passband_median_relative_error: float


def _target_values(spec, n, omegas, target):
    if target == "operator":
        vals = eval_p_grid(spec, n, omegas)[n]
    elif target == "monomial":
        vals = (omegas / math.pi) ** n
    else:
        raise ParameterError(f"unknown target {target!r}")
    # real projection of i^n * vals: (-1)^(n//2) vals for even n (real part),
    # (-1)^((n-1)//2) vals for odd n (imaginary part)
    sign = (-1.0) ** (n // 2) if n % 2 == 0 else (-1.0) ** ((n - 1) // 2)
    return sign * vals


def _design_grid(half_width, passband_edge, stopband_edge, grid_density):
    total = grid_density * (2 * half_width + 1)
    npass = max(int(total * 0.85), 8)
    nstop = max(total - npass, 8)
    # cosine clustering concentrates points at band edges
    om_pass = passband_edge * 0.5 * (1.0 - np.cos(np.linspace(0, math.pi, npass)))
    om_stop = stopband_edge + (math.pi - stopband_edge) * 0.5 * (
        1.0 - np.cos(np.linspace(0, math.pi, nstop))
    )
    omegas = np.concatenate([om_pass, om_stop])
    in_pass = np.concatenate([np.ones(npass, bool), np.zeros(nstop, bool)])
    return omegas, in_pass


def design_ls(family, n: int, half_width: int,
              passband_edge: float = 0.9 * math.pi,
              stopband_edge: float = 0.98 * math.pi,
              grid_density: int = 16,
              weight_ratio: float = 10.0,
              refine_iterations: int = 8,
              target: str = "operator"):
    """Design taps for K^n (or the monomial contrast target (w/pi)^n).

    Returns (FirFilter, DesignReport).  weight_ratio is the stopband
    weight relative to the passband; refine_iterations > 0 applies Lawson
    reweighting after the initial least-squares solve.
    """
    spec = family_spec(family)
    if spec.tag not in _BANDLIMITED:
        raise UnsupportedFamilyError(
            f"{spec.tag} support is not contained in [-pi, pi]"
        )
    if n < 0 or half_width < 1:
        raise ParameterError("need n >= 0 and half_width >= 1")
    if n > 2 * half_width:
        raise ParameterError(f"operator order n={n} exceeds 2*half_width={2*half_width}")
    if not 0.0 < passband_edge < stopband_edge <= math.pi:
        raise ParameterError("need 0 < passband_edge < stopband_edge <= pi")

    omegas, in_pass = _design_grid(half_width, passband_edge, stopband_edge, grid_density)
    tgt = np.where(in_pass, _target_values(spec, n, omegas, target), 0.0)
    w = np.where(in_pass, 1.0, float(weight_ratio))

    k = np.arange(1, half_width + 1)
    if n % 2 == 0:
        A = np.hstack([np.ones((omegas.size, 1)), 2.0 * np.cos(np.outer(omegas, k))])
    else:
        A = 2.0 * np.sin(np.outer(omegas, k))

    coef = None
    cond = np.inf
    for it in range(refine_iterations + 1):
        sw = np.sqrt(w)[:, None]
        coef, _, rank, sv = np.linalg.lstsq(A * sw, tgt * sw[:, 0], rcond=None)
        if rank < A.shape[1] or not np.all(np.isfinite(coef)):
            raise NumericError(
                f"ill-conditioned design system (rank {rank} of {A.shape[1]})"
            )
        cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
        if it < refine_iterations:
            r = np.abs(A @ coef - tgt)
            w = w * (r + 1e-3 * r.max())
            w *= omegas.size / w.sum()

    taps = np.zeros(2 * half_width + 1)
    if n % 2 == 0:
        taps[half_width] = coef[0]
        taps[half_width + 1 :] = coef[1:]
        taps[:half_width] = coef[:0:-1]
    else:
        taps[half_width + 1 :] = coef
        taps[:half_width] = -coef[::-1]
    filt = FirFilter(spec.id, n, half_width, taps, passband_edge, stopband_edge)

    dense = np.linspace(0.0, math.pi, 8001)
    dpass = dense <= passband_edge
    dstop = dense >= stopband_edge
    td = _target_values(spec, n, dense, target)
    if n % 2 == 0:
        H = coef[0] + 2.0 * np.cos(np.outer(dense, k)) @ coef[1:]
    else:
        H = 2.0 * np.sin(np.outer(dense, k)) @ coef
    err = np.abs(H - td)
    nonzero = dpass & (np.abs(td) > 1e-300)
    rel_median = float(np.median(err[nonzero] / np.abs(td[nonzero]))) if nonzero.any() else np.inf
    report = DesignReport(
        passband_max_error=float(err[dpass].max()),
        stopband_max_magnitude=float(np.abs(H[dstop]).max()),
        grid_size=int(omegas.size),
        condition_number=cond,
        passband_median_relative_error=rel_median,
    )
    return filt, report


def transfer_function(filt: FirFilter, omega):
    """H(w) = sum_k c_k e^{i w k}; omega scalar or array."""
    om = np.asarray(omega, dtype=float)
    ks = np.arange(-filt.half_width, filt.half_width + 1)
    H = np.exp(1j * np.multiply.outer(om, ks)) @ filt.taps
    return complex(H) if om.ndim == 0 else H


def apply_filter(filt: FirFilter, samples, t: int):
    """sum_k c_k samples[t+k]; samples indexed 0..len-1, unit spacing."""
    samples = np.asarray(samples)
    N = filt.half_width
    if t - N < 0 or t + N >= samples.size:
        raise ParameterError(
            f"index {t} needs samples on [{t-N}, {t+N}] but 0..{samples.size-1} given"
        )
    window = samples[t - N : t + N + 1]
    out = np.sum(filt.taps * window)
    return complex(out) if np.iscomplexobj(samples) else float(out)


def shannon_decay_report(n: int, t: float, m_range: int):
    """Rows (m, |K^n[sinc](t - m)|) for |m| <= m_range (Legendre family).

    Documents the O(1/|m|) decay that makes evaluating chromatic
    derivatives by differentiating the Shannon expansion impractical.
    """
    from .basis_functions import spherical_j_all

    rows = []
    for m in range(-m_range, m_range + 1):
        x = math.pi * (t - m)
        js = spherical_j_all(n, x)
        rows.append((m, abs(math.sqrt(2 * n + 1) * js[n])))
    return rows


# ---------------------------------------------------------------------------
# serialization

FILTER_FORMAT_VERSION = 1


def save_filter(filt: FirFilter, path: str) -> None:
    doc = {
        "format_version": FILTER_FORMAT_VERSION,
        "family": str(filt.family),
        "operator_order": filt.operator_order,
        "half_width": filt.half_width,
        "passband_edge": f"{filt.passband_edge:.17g}",
        "stopband_edge": f"{filt.stopband_edge:.17g}",
        "taps": [f"{c:.17g}" for c in filt.taps],
    }
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)


def load_filter(path: str) -> FirFilter:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format_version") != FILTER_FORMAT_VERSION:
        raise ParameterError(f"unsupported filter format version in {path}")
    return FirFilter(
        family=parse_family(doc["family"]),
        operator_order=int(doc["operator_order"]),
        half_width=int(doc["half_width"]),
        taps=np.array([float(c) for c in doc["taps"]]),
        passband_edge=float(doc["passband_edge"]),
        stopband_edge=float(doc["stopband_edge"]),
    )
