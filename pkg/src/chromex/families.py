"""Moment functionals: recursion coefficients, moments and Gauss quadrature.

Eight families are supported.  Each is defined by the recursion
coefficients (gamma_n, beta_n) of its orthonormal polynomials

    p_{n+1}(w) = ((w + beta_n)/gamma_n) p_n(w) - (gamma_{n-1}/gamma_n) p_{n-1}(w)

with p_{-1} = 0, gamma_{-1} = 1, together with the moments mu_k of the
normalized measure (mu_0 = 1).  The symmetric tridiagonal Jacobi matrix
(diagonal -beta_n, off-diagonal gamma_n) encodes multiplication by w and
supplies both a moment oracle and Gauss quadrature.

Sign convention: the Jacobi matrix diagonal entry n is -beta_n.  For the
Laguerre family beta_n = -(2n+1), so the diagonal is +(2n+1), matching the
classical Laguerre operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import christoffel_weights
from .errors import ParameterError, UnsupportedFamilyError

FAMILY_TAGS = (
    "legendre",
    "chebyshev_t",
    "chebyshev_u",
    "gegenbauer",
    "jacobi",
    "hermite",
    "laguerre",
    "herron",
)

_SYMMETRIC = frozenset(
    ("legendre", "chebyshev_t", "chebyshev_u", "gegenbauer", "hermite", "herron")
)

PI_LD = np.longdouble("3.141592653589793238462643383279502884")


@dataclass(frozen=True)
class FamilyId:
    """A family tag plus its parameters (gegenbauer: a; jacobi: a, b)."""

    tag: str
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ParameterError(f"unknown family tag {self.tag!r}")
        if self.tag == "gegenbauer":
            if self.a is None or not (self.a > -0.5) or self.a == 0.0:
                raise ParameterError("gegenbauer requires a > -1/2 and a != 0")
        elif self.tag == "jacobi":
            if self.a is None or self.b is None or not (self.a > -1.0 and self.b > -1.0):
                raise ParameterError("jacobi requires a > -1 and b > -1")
        elif self.a is not None or self.b is not None:
            raise ParameterError(f"family {self.tag!r} takes no parameters")

    def __str__(self):
        if self.tag == "gegenbauer":
            return f"gegenbauer({self.a:g})"
        if self.tag == "jacobi":
            return f"jacobi({self.a:g},{self.b:g})"
        return self.tag


def parse_family(text: str) -> FamilyId:
    """Parse identifiers like ``legendre`` or ``jacobi(0.5,-0.25)``."""
    text = text.strip().lower()
    if "(" in text:
        if not text.endswith(")"):
            raise ParameterError(f"malformed family string {text!r}")
        tag, args = text[:-1].split("(", 1)
        parts = [p.strip() for p in args.split(",") if p.strip()]
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise ParameterError(f"malformed family parameters in {text!r}") from exc
        if tag == "gegenbauer" and len(vals) == 1:
            return FamilyId("gegenbauer", a=vals[0])
        if tag == "jacobi" and len(vals) == 2:
            return FamilyId("jacobi", a=vals[0], b=vals[1])
        raise ParameterError(f"wrong parameter count for {tag!r}")
    return FamilyId(text)


@dataclass(frozen=True)
class FamilySpec:
    """A family plus the metadata the rest of the library consults."""

    id: FamilyId
    symmetric: bool
    growth_exponent: float          # p in the weak-boundedness definition
    weak_bound_M: float | None      # absent for the p = 1 families
    support: str
    rho: float

    @property
    def tag(self):
        return self.id.tag

    def __str__(self):
        return str(self.id)


def family_spec(family) -> FamilySpec:
    """Build a FamilySpec from a FamilyId, tag string, or pass one through."""
    if isinstance(family, FamilySpec):
        return family
    fid = family if isinstance(family, FamilyId) else parse_family(str(family))
    tag = fid.tag
    symmetric = tag in _SYMMETRIC
    if tag in ("legendre", "chebyshev_t", "chebyshev_u", "gegenbauer", "jacobi"):
        p, M, support, rho = 0.0, (2.0 if tag == "legendre" else 4.0), "[-pi, pi]", 0.0
    elif tag == "hermite":
        p, M, support, rho = 0.5, 2.0, "real line", 0.0
    elif tag == "laguerre":
        p, M, support, rho = 1.0, None, "half line", 1.0
    else:  # herron
        p, M, support, rho = 1.0, None, "real line", 2.0 / math.pi
    return FamilySpec(fid, symmetric, p, M, support, rho)


def _gamma_beta_ld(spec: FamilySpec, n: int):
    """(gamma_n, beta_n) in extended precision."""
    tag = spec.tag
    one = np.longdouble(1.0)
    nn = np.longdouble(n)
    if tag == "legendre":
        return PI_LD * (nn + 1) / np.sqrt(4 * (nn + 1) ** 2 - 1), np.longdouble(0.0)
    if tag == "chebyshev_t":
        g = PI_LD / np.sqrt(np.longdouble(2.0)) if n == 0 else PI_LD / 2
        return g, np.longdouble(0.0)
    if tag == "chebyshev_u":
        return PI_LD / 2, np.longdouble(0.0)
    if tag == "gegenbauer":
        a = np.longdouble(spec.id.a)
        g = PI_LD / 2 * np.sqrt((nn + 1) * (nn + 2 * a) / ((nn + a) * (nn + a + 1)))
        return g, np.longdouble(0.0)
    if tag == "jacobi":
        a = np.longdouble(spec.id.a)
        b = np.longdouble(spec.id.b)
        s = 2 * nn + a + b
        g = (
            2 * PI_LD / (s + 2)
            * np.sqrt((nn + 1) * (nn + a + 1) * (nn + b + 1) * (nn + a + b + 1)
                      / ((s + 1) * (s + 3)))
        )
        if n == 0:
            # the (a+b) factor of the printed closed form cancels at n = 0
            beta = PI_LD * (a - b) / (a + b + 2)
        else:
            beta = PI_LD * (a - b) * (a + b) / ((s + 2) * s)
        return g, beta
    if tag == "hermite":
        return np.sqrt((nn + 1) / 2), np.longdouble(0.0)
    if tag == "laguerre":
        return nn + 1, -(2 * nn + 1)
    if tag == "herron":
        return nn + 1, np.longdouble(0.0)
    raise UnsupportedFamilyError(tag)


def recursion_coefficients(family, n: int):
    """(gamma_n, beta_n) as floats; gamma_n > 0 for every n >= 0."""
    spec = family_spec(family)
    if n < 0:
        raise ParameterError("n must be nonnegative")
    g, b = _gamma_beta_ld(spec, n)
    return float(g), float(b)


def gamma_beta_arrays(family, horizon: int, longdouble: bool = False):
    """gamma_0..gamma_horizon and beta_0..beta_horizon as arrays."""
    spec = family_spec(family)
    dt = np.longdouble if longdouble else np.float64
    gam = np.empty(horizon + 1, dtype=dt)
    bet = np.empty(horizon + 1, dtype=dt)
    for n in range(horizon + 1):
        g, b = _gamma_beta_ld(spec, n)
        gam[n] = g
        bet[n] = b
    return gam, bet


@dataclass(frozen=True)
class JacobiMatrix:
    """Truncated symmetric tridiagonal encoding of the recurrence."""

    dimension: int
    diagonal: np.ndarray      # entry n is -beta_n
    offdiagonal: np.ndarray   # entry n is gamma_n

    def dense(self) -> np.ndarray:
        J = np.diag(self.diagonal)
        J += np.diag(self.offdiagonal, 1) + np.diag(self.offdiagonal, -1)
        return J


def jacobi_matrix(family, dimension: int) -> JacobiMatrix:
    if dimension < 1:
        raise ParameterError("dimension must be positive")
    gam, bet = gamma_beta_arrays(family, dimension - 1)
    return JacobiMatrix(dimension, -bet, gam[: dimension - 1])


@lru_cache(maxsize=None)
def euler_numbers(nmax: int):
    """E_0..E_nmax as exact integers (odd indices are zero)."""
    E = [0] * (nmax + 1)
    E[0] = 1
    for n in range(1, nmax // 2 + 1):
        E[2 * n] = -sum(math.comb(2 * n, 2 * j) * E[2 * j] for j in range(n))
    return tuple(E)


def moment_analytic(family, k: int) -> float:
    """mu_k from the closed forms; gegenbauer/jacobi are unsupported."""
    spec = family_spec(family)
    tag = spec.tag
    if k < 0:
        raise ParameterError("k must be nonnegative")
    if tag in ("gegenbauer", "jacobi"):
        raise UnsupportedFamilyError(
            f"{tag} has no closed moment form; use moment_jacobi_matrix"
        )
    if tag == "laguerre":
        return float(math.factorial(k))
    if k % 2 == 1:
        return 0.0
    n = k // 2
    if tag == "legendre":
        return math.pi ** k / (k + 1)
    if tag == "chebyshev_t":
        return math.pi ** k * math.comb(k, n) / 4 ** n
    if tag == "chebyshev_u":
        # Catalan number over 4^n; the extra 1/(n+1) relative to chebyshev_t
        return math.pi ** k * math.comb(k, n) / (4 ** n * (n + 1))
    if tag == "hermite":
        v = 1.0
        for j in range(1, n + 1):
            v *= (2 * j - 1) / 2.0
        return v
    # herron: from sech z = sum E_{2n} z^{2n}/(2n)! and m^(k)(0) = i^k mu_k
    return float((-1) ** n * euler_numbers(k)[k])


def _ld_from_fraction(fr: Fraction) -> np.longdouble:
    # double-double split keeps ~32 significant digits of the ratio
    hi = float(fr)
    lo = float(fr - Fraction(hi))
    return np.longdouble(hi) + np.longdouble(lo)


def moment_over_factorial_ld(family, kmax: int) -> np.ndarray:
    """mu_k / k! for k <= kmax in extended precision (table base row)."""
    spec = family_spec(family)
    tag = spec.tag
    out = np.zeros(kmax + 1, dtype=np.longdouble)
    out[0] = 1.0
    if tag == "laguerre":
        out[:] = 1.0
        return out
    if tag in ("gegenbauer", "jacobi"):
        # scaled vector iteration v_k = J v_{k-1} / k, entry 0 is mu_k/k!
        dim = kmax + 2
        gam, bet = gamma_beta_arrays(spec, dim, longdouble=True)
        diag = -bet[:dim]
        off = gam[: dim - 1]
        v = np.zeros(dim, dtype=np.longdouble)
        v[0] = 1.0
        for k in range(1, kmax + 1):
            w = diag * v
            w[:-1] += off * v[1:]
            w[1:] += off * v[:-1]
            v = w / np.longdouble(k)
            out[k] = v[0]
        return out
    if tag == "legendre":
        r = np.longdouble(1.0)
        for k in range(2, kmax + 1, 2):
            r = r * PI_LD * PI_LD / (np.longdouble(k) * np.longdouble(k + 1))
            out[k] = r
    elif tag == "chebyshev_t":
        r = np.longdouble(1.0)
        for n in range(1, kmax // 2 + 1):
            r = r * PI_LD * PI_LD / (4 * np.longdouble(n) ** 2)
            out[2 * n] = r
    elif tag == "chebyshev_u":
        r = np.longdouble(1.0)
        for n in range(1, kmax // 2 + 1):
            r = r * PI_LD * PI_LD / (4 * np.longdouble(n) * np.longdouble(n + 1))
            out[2 * n] = r
    elif tag == "hermite":
        r = np.longdouble(1.0)
        for n in range(1, kmax // 2 + 1):
            r = r / (4 * np.longdouble(n))
            out[2 * n] = r
    elif tag == "herron":
        E = euler_numbers(kmax)
        for n in range(1, kmax // 2 + 1):
            out[2 * n] = _ld_from_fraction(
                Fraction((-1) ** n * E[2 * n], math.factorial(2 * n))
            )
    else:
        raise UnsupportedFamilyError(tag)
    return out


def moment_jacobi_matrix(family, k: int, dimension: int | None = None) -> float:
    """mu_k as the top-left entry of the k-th power of the Jacobi matrix."""
    if k < 0:
        raise ParameterError("k must be nonnegative")
    if k == 0:
        return 1.0
    dim = dimension if dimension is not None else k + 1
    if dim < k + 1:
        raise ParameterError("truncation dimension must be at least k+1")
    J = jacobi_matrix(family, dim).dense()
    return float(np.linalg.matrix_power(J, k)[0, 0])


def gauss_quadrature(family, n: int):
    """n-point Gauss rule for the family's measure.

    Nodes are the eigenvalues of the n-by-n Jacobi matrix; weights are the
    Christoffel numbers 1/sum_k p_k(node)^2 (equal to the squared first
    eigenvector components), renormalized to sum to one.
    """
    if n < 1:
        raise ParameterError("n must be positive")
    spec = family_spec(family)
    J = jacobi_matrix(spec, n).dense()
    try:
        nodes = np.linalg.eigvalsh(J)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numpy rarely fails here
        from .errors import NumericError

        raise NumericError("Jacobi matrix eigendecomposition failed") from exc
    gam, bet = gamma_beta_arrays(spec, n - 1)
    w = christoffel_weights(gam, bet, nodes)
    w = w / w.sum()
    return nodes, w
