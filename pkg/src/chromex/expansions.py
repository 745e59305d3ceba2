"""Chromatic approximations, error envelopes, local norms and identities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis_functions import SeriesEvalConfig, kbasis_series, spherical_j_all
from .chromatic_core import (
    ChromaticTable,
    TaylorJet,
    chromatic_jet_from_taylor,
    conversion_matrices,
    table_for,
    taylor_from_chromatic_jet,
)
from .errors import ParameterError, UnsupportedFamilyError
from .families import family_spec
from .orthopoly import eval_all_p


# ---------------------------------------------------------------------------
# test-signal specifications

class FunctionSpec:
    """A function together with a way to obtain its chromatic jets."""

    def value(self, z):
        raise NotImplementedError

    def chromatic_jet(self, family, t, N) -> np.ndarray:
        raise NotImplementedError

    def taylor_jet(self, u, length) -> TaylorJet:
        raise NotImplementedError

    def norm_sq(self, family) -> float | None:
        """Squared local norm sum |K^n[f]|^2 under the given family, when
        known in closed form (used for truncation-error bounds)."""
        return None


@dataclass
class Exponential(FunctionSpec):
    """f(z) = e^{i w z}; K^n[f](t) = i^n p_n(w) e^{i w t} exactly."""

    omega: float

    def value(self, z):
        return np.exp(1j * self.omega * np.asarray(z, dtype=np.complex128))

    def chromatic_jet(self, family, t, N):
        pv = eval_all_p(family, N, self.omega).values
        ph = 1j ** np.arange(N + 1)
        return ph * pv * np.exp(1j * self.omega * t)

    def taylor_jet(self, u, length):
        k = np.arange(length)
        coeff = (1j * self.omega) ** k / np.array([math.factorial(j) for j in k])
        return TaylorJet(u, coeff * np.exp(1j * self.omega * u))


@dataclass
class Cosine(FunctionSpec):
    """f(z) = cos(w z), the real combination of two exponentials."""

    omega: float

    def value(self, z):
        return np.cos(self.omega * np.asarray(z, dtype=np.complex128))

    def chromatic_jet(self, family, t, N):
        plus = Exponential(self.omega).chromatic_jet(family, t, N)
        minus = Exponential(-self.omega).chromatic_jet(family, t, N)
        return 0.5 * (plus + minus)

    def taylor_jet(self, u, length):
        c = np.cos(self.omega * u)
        s = np.sin(self.omega * u)
        coeff = np.empty(length, dtype=np.complex128)
        for j in range(length):
            coeff[j] = self.omega ** j / math.factorial(j) * (c, -s, -c, s)[j % 4]
        return TaylorJet(u, coeff)


@dataclass
class Constant(FunctionSpec):
    c: float = 1.0

    def value(self, z):
        return self.c * np.ones_like(np.asarray(z, dtype=np.complex128))

    def chromatic_jet(self, family, t, N):
        mats = conversion_matrices(family, N)
        return self.c * mats.k2d[:, 0].copy()

    def taylor_jet(self, u, length):
        coeff = np.zeros(length, dtype=np.complex128)
        coeff[0] = self.c
        return TaylorJet(u, coeff)


@dataclass
class Sinc(FunctionSpec):
    """sinc z = sin(pi z)/(pi z); unit norm under the Legendre functional."""

    def norm_sq(self, family):
        return 1.0 if family_spec(family).tag == "legendre" else None

    def value(self, z):
        zs = np.asarray(z, dtype=np.complex128)
        out = np.ones_like(zs)
        nz = zs != 0
        out[nz] = np.sin(math.pi * zs[nz]) / (math.pi * zs[nz])
        return out

    def chromatic_jet(self, family, t, N):
        spec = family_spec(family)
        if spec.tag != "legendre":
            jet = self.taylor_jet(t, 2 * N + 16)
            return chromatic_jet_from_taylor(spec, jet, N).values
        js = spherical_j_all(N, math.pi * t)
        n = np.arange(N + 1)
        return ((-1.0) ** n * np.sqrt(2 * n + 1) * js).astype(np.complex128)

    def taylor_jet(self, u, length):
        if u == 0:
            # sinc z = sum_j (-1)^j pi^{2j} z^{2j} / (2j+1)!
            coeff = np.zeros(length, dtype=np.complex128)
            for j in range(0, (length - 1) // 2 + 1):
                coeff[2 * j] = (-1.0) ** j * math.pi ** (2 * j) / math.factorial(2 * j + 1)
            return TaylorJet(0.0, coeff)
        cjet = self.chromatic_jet("legendre", float(u), length - 1)
        from .chromatic_core import ChromaticJet

        return taylor_from_chromatic_jet(
            "legendre", ChromaticJet(family_spec("legendre").id, u, cjet), length - 1
        )


@dataclass
class ShannonCombo(FunctionSpec):
    """f(t) = sum_m samples[m] sinc(t - m0 - m): the Shannon interpolant
    of unit-spaced samples starting at integer m0 (Legendre functional)."""

    samples: np.ndarray
    first_index: int = 0

    def value(self, z):
        zs = np.asarray(z, dtype=np.complex128)
        idx = self.first_index + np.arange(len(self.samples))
        acc = np.zeros_like(zs)
        for m, s in zip(idx, self.samples):
            acc += s * Sinc().value(zs - m)
        return acc

    def chromatic_jet(self, family, t, N):
        spec = family_spec(family)
        if spec.tag != "legendre":
            raise UnsupportedFamilyError("shannon_combo jets are Legendre-only")
        idx = self.first_index + np.arange(len(self.samples))
        acc = np.zeros(N + 1, dtype=np.complex128)
        for m, s in zip(idx, self.samples):
            acc += s * Sinc().chromatic_jet(spec, t - m, N)
        return acc

    def taylor_jet(self, u, length):
        from .chromatic_core import ChromaticJet

        cjet = self.chromatic_jet("legendre", float(u), length - 1)
        return taylor_from_chromatic_jet(
            "legendre", ChromaticJet(family_spec("legendre").id, u, cjet), length - 1
        )


@dataclass
class JetFunction(FunctionSpec):
    """A function known only through a Taylor jet at its center."""

    jet: TaylorJet

    def value(self, z):
        dz = np.asarray(z, dtype=np.complex128) - self.jet.u
        k = np.arange(len(self.jet))
        return np.polyval(self.jet.coefficients[::-1], dz) if dz.ndim == 0 else np.array(
            [np.sum(self.jet.coefficients * d ** k) for d in np.atleast_1d(dz)]
        )

    def chromatic_jet(self, family, t, N):
        if t != self.jet.u:
            raise ParameterError("jet-backed functions provide jets at their center only")
        return chromatic_jet_from_taylor(family, self.jet, N).values

    def taylor_jet(self, u, length):
        if u != self.jet.u or length > len(self.jet):
            raise ParameterError("requested jet outside the stored one")
        return TaylorJet(u, self.jet.coefficients[:length])


# ---------------------------------------------------------------------------
# approximation and envelopes

@dataclass(frozen=True)
class ApproximationResult:
    value: complex
    order: int
    tail_bound: float | None


def _basis_values(table, kmax, dz, cfg):
    """K^k[m](dz) for k <= kmax at scalar or array dz."""
    dzs = np.atleast_1d(np.asarray(dz, dtype=np.complex128))
    out = np.empty((kmax + 1, dzs.size), dtype=np.complex128)
    for k in range(kmax + 1):
        out[k] = kbasis_series(table, k, dzs, cfg)
    return out


def chromatic_approximation(family, f: FunctionSpec, u, N: int, z,
                            table: ChromaticTable | None = None,
                            cfg: SeriesEvalConfig | None = None) -> ApproximationResult:
    """CA[f, N, u](z) = sum_{k<=N} (-1)^k K^k[f](u) K^k[m](z - u).

    z is a single point; use chromatic_approximation_grid for arrays.
    """
    if np.asarray(z).ndim != 0:
        raise ParameterError("z must be scalar; use chromatic_approximation_grid")
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    jet = f.chromatic_jet(spec, u, N)
    signs = (-1.0) ** np.arange(N + 1)
    basis = _basis_values(table, N, np.asarray(z) - u, cfg)
    value = np.sum(signs * jet * basis[:, 0])
    tail = None
    fnorm = f.norm_sq(spec)
    if fnorm is not None and np.isrealobj(np.asarray(z)) and np.isreal(u):
        tail_energy = max(0.0, fnorm - float(np.sum(np.abs(jet) ** 2)))
        tail = math.sqrt(tail_energy) * error_envelope(spec, N, float(np.real(z - u)), table)
    return ApproximationResult(complex(value), N, tail)


def chromatic_approximation_grid(family, f, u, N, zs, table=None, cfg=None):
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    jet = f.chromatic_jet(spec, u, N)
    signs = (-1.0) ** np.arange(N + 1)
    basis = _basis_values(table, N, np.asarray(zs) - u, cfg)
    return (signs * jet) @ basis


def error_envelope(family, N: int, t: float, table: ChromaticTable | None = None) -> float:
    """E_N(t) = sqrt(max(0, 1 - sum_{k<=N} |K^k[m](t)|^2)), clamped at 0."""
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    vals = _basis_values(table, N, float(t), None)[:, 0]
    s = float(np.sum(np.abs(vals) ** 2))
    return math.sqrt(max(0.0, 1.0 - s))


def local_norm_sq(family, f: FunctionSpec, t: float, N: int) -> float:
    """sum_{n<=N} |K^n[f](t)|^2; t-independent in the limit for f in L^2_M."""
    jet = f.chromatic_jet(family_spec(family), t, N)
    return float(np.sum(np.abs(jet) ** 2))


def local_scalar(family, f: FunctionSpec, g: FunctionSpec, t: float, N: int) -> complex:
    spec = family_spec(family)
    jf = f.chromatic_jet(spec, t, N)
    jg = g.chromatic_jet(spec, t, N)
    return complex(np.sum(jf * np.conj(jg)))


def local_convolution(family, f: FunctionSpec, g: FunctionSpec, u: float, t: float, N: int) -> complex:
    spec = family_spec(family)
    jf = f.chromatic_jet(spec, u, N)
    jg = g.chromatic_jet(spec, t - u, N)
    signs = (-1.0) ** np.arange(N + 1)
    return complex(np.sum(signs * jf * jg))


# ---------------------------------------------------------------------------
# identity verifiers (all return the residual, never assert)

def identity_exponential(family, omega: float, z, N: int,
                         table: ChromaticTable | None = None) -> float:
    """| e^{i w z} - sum_n (-i)^n p_n(w) K^n[m](z) |."""
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    pv = eval_all_p(spec, N, omega).values
    basis = _basis_values(table, N, z, None)[:, 0]
    s = np.sum((-1j) ** np.arange(N + 1) * pv * basis)
    return float(abs(np.exp(1j * omega * np.asarray(z, dtype=complex)) - s))


def identity_translation(family, u, z, N: int, table: ChromaticTable | None = None) -> float:
    """| m(z+u) - sum_n (-1)^n K^n[m](u) K^n[m](z) |."""
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    bu = _basis_values(table, N, u, None)[:, 0]
    bz = _basis_values(table, N, z, None)[:, 0]
    lhs = kbasis_series(table, 0, np.asarray(z) + u)
    s = np.sum((-1.0) ** np.arange(N + 1) * bu * bz)
    return float(abs(lhs - s))


def identity_constant_one(family, z, N: int, table: ChromaticTable | None = None) -> float:
    """| 1 - sum_k (-1)^k K^k[1](0) K^k[m](z) |.

    The coefficients K^k[1](0) come from the constant jet (column 0 of the
    monomial conversion matrix), not from any printed sign pattern.
    """
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    cjet = Constant(1.0).chromatic_jet(spec, 0.0, N)
    basis = _basis_values(table, N, z, None)[:, 0]
    s = np.sum((-1.0) ** np.arange(N + 1) * cjet * basis)
    return float(abs(1.0 - s))


def taylor_vs_chromatic_comparison(family, f: FunctionSpec, u: float, N: int, grid,
                                   table: ChromaticTable | None = None):
    """Rows (t, f(t), CA[f,N,u](t), Taylor_N[f,u](t)) over the grid."""
    spec = family_spec(family)
    if table is None:
        table = table_for(spec, N)
    grid = np.asarray(grid, dtype=float)
    ca = chromatic_approximation_grid(spec, f, u, N, grid, table)
    tj = f.taylor_jet(u, N + 1)
    k = np.arange(N + 1)
    taylor = np.array([np.sum(tj.coefficients * (t - u) ** k) for t in grid])
    fvals = f.value(grid)
    return [
        (float(t), complex(fv), complex(cv), complex(tv))
        for t, fv, cv, tv in zip(grid, fvals, ca, taylor)
    ]
