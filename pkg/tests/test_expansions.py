import math

import numpy as np
import pytest

from chromex import (
    Constant,
    Cosine,
    Exponential,
    ShannonCombo,
    Sinc,
    bessel_j_all,
    build_table,
    chromatic_approximation,
    chromatic_approximation_grid,
    error_envelope,
    identity_constant_one,
    identity_exponential,
    identity_translation,
    local_convolution,
    local_norm_sq,
    local_scalar,
    table_for,
    taylor_vs_chromatic_comparison,
)
from chromex.families import gamma_beta_arrays


def test_constant_reproduced_at_center():
    res = chromatic_approximation("legendre", Constant(1.0), 0.3, 10, 0.3)
    assert res.value == pytest.approx(1.0, abs=1e-13)


def test_exponential_convergence():
    t = table_for("legendre", 40)
    res = chromatic_approximation("legendre", Exponential(2.0), 0.0, 40, 1.5, t)
    assert abs(res.value - np.exp(3j)) < 1e-8


def test_exponential_convergence_other_families():
    for fam in ("chebyshev_u", "hermite", "jacobi(0.5,-0.25)"):
        t = table_for(fam, 40)
        res = chromatic_approximation(fam, Exponential(1.0), 0.0, 40, 1.2, t)
        assert abs(res.value - np.exp(1.2j)) < 1e-8


def test_sinc_truncation_bound():
    t = table_for("legendre", 15, 160)
    u = 0.3
    grid = np.arange(u - 1.0, u + 1.0001, 0.125)
    f = Sinc()
    for z in grid:
        res = chromatic_approximation("legendre", f, u, 15, float(z), t)
        err = abs(res.value - f.value(float(z)))
        assert res.tail_bound is not None
        assert err <= res.tail_bound + 1e-12


def test_ca_bounded_by_jet_l1_norm():
    t = table_for("legendre", 15, 160)
    f = Sinc()
    jet = f.chromatic_jet("legendre", 0.3, 15)
    bound = np.sum(np.abs(jet))
    grid = np.arange(-3.0, 3.0001, 0.25)
    ca = chromatic_approximation_grid("legendre", f, 0.3, 15, grid, t)
    assert np.abs(ca).max() <= bound + 1e-12


def test_jet_matching_invariant():
    """K^m applied to CA[f,N,u] at z=u reproduces K^m[f](u) for m <= N."""
    from chromex import TaylorJet, chromatic_jet_from_taylor

    N = 12
    t = table_for("legendre", N, 64)
    f = Exponential(1.3)
    jet = f.chromatic_jet("legendre", 0.0, N)
    # Taylor coefficients of CA at u: sum_k (-1)^k jet_k b[k][j]
    signs = (-1.0) ** np.arange(N + 1)
    coeffs = (signs * jet) @ t.b[:, : N + 1]
    back = chromatic_jet_from_taylor("legendre", TaylorJet(0.0, coeffs), N)
    assert np.abs(back.values - jet).max() < 1e-8


def test_envelope_zero_at_origin():
    for fam in ("legendre", "chebyshev_t", "hermite"):
        tab = table_for(fam, 8)
        for N in (0, 3, 8):
            assert error_envelope(fam, N, 0.0, tab) == 0.0


def test_envelope_nonnegative_grid():
    tab = table_for("legendre", 6, 120)
    for t in np.arange(-3.0, 3.0001, 0.25):
        assert error_envelope("legendre", 6, float(t), tab) >= 0.0


def test_envelope_flatness_order():
    tab = table_for("legendre", 3, 64)
    r = error_envelope("legendre", 3, 0.1, tab) ** 2 / error_envelope("legendre", 3, 0.05, tab) ** 2
    assert 2 ** 8 / 1.3 <= r <= 2 ** 8 * 1.3


def test_local_norm_sinc():
    f = Sinc()
    for t in (0.0, 0.37, 1.5):
        assert abs(local_norm_sq("legendre", f, t, 60) - 1.0) < 1e-6


def test_local_norm_t_independence():
    f = Sinc()
    a = local_norm_sq("legendre", f, 0.0, 60)
    b = local_norm_sq("legendre", f, 2.0, 60)
    assert abs(a - b) < 1e-6


def test_local_norm_zero_function():
    assert local_norm_sq("legendre", Constant(0.0), 0.7, 30) == 0.0


def test_local_scalar_matches_norm():
    f = Sinc()
    s = local_scalar("legendre", f, f, 0.4, 50)
    assert s.imag == pytest.approx(0.0, abs=1e-12)
    assert s.real == pytest.approx(local_norm_sq("legendre", f, 0.4, 50), rel=1e-12)


def test_convolution_center_independence():
    f = Sinc()
    vals = [local_convolution("legendre", f, f, u, 0.8, 60) for u in (0.0, 0.8, 0.4)]
    assert abs(vals[0] - vals[1]) < 1e-7
    assert abs(vals[0] - vals[2]) < 1e-7


def test_convolution_with_mother_reproduces():
    # (f * m)(t) = f(t): m has the jet K^n[m](x) which is the sinc jet at
    # x for the Legendre family, i.e. convolving sinc with itself
    f = Sinc()
    t = 0.6
    conv = local_convolution("legendre", f, f, 0.0, t, 60)
    assert abs(conv - f.value(t)) < 1e-7


def test_identity_exponential():
    tab = table_for("legendre", 40)
    assert identity_exponential("legendre", math.pi / 2, 1.0, 40, tab) <= 1e-9
    tabh = table_for("hermite", 20)
    assert identity_exponential("hermite", 1.0, 0.0, 20, tabh) < 1e-13


def test_identity_exponential_matches_classical_chebyshev():
    # e^{i w z} = J_0(pi z) + 2 sum i^n T_n(w/pi) J_n(pi z)
    omega, z, N = 2.0, 0.5, 40
    tab = table_for("chebyshev_t", N)
    resid = identity_exponential("chebyshev_t", omega, z, N, tab)
    assert resid <= 1e-9
    jb = bessel_j_all(N, math.pi * z)
    x = omega / math.pi
    tvals = np.cos(np.arange(N + 1) * math.acos(x))
    classical = jb[0] + 2 * np.sum(1j ** np.arange(1, N + 1) * tvals[1:] * jb[1:])
    assert abs(classical - np.exp(1j * omega * z)) < 1e-9


def test_identity_translation():
    tab = table_for("legendre", 50, 180)
    assert identity_translation("legendre", 0.4, 0.7, 50, tab) <= 1e-8
    assert identity_translation("legendre", 0.4, 0.0, 50, tab) < 1e-14


def test_identity_constant_one():
    tab = table_for("chebyshev_t", 60, 180)
    assert identity_constant_one("chebyshev_t", 0.6, 60, tab) <= 1e-8
    # which reduces to J_0 + 2 sum J_2n = 1
    jb = bessel_j_all(60, math.pi * 0.6)
    assert abs(jb[0] + 2 * np.sum(jb[2:61:2]) - 1.0) <= 1e-10


def test_operator_christoffel_darboux():
    # d/dt sum_{m<=n} K^m[f] conj(K^m[g]) equals
    # gamma_n (K^{n+1}[f] conj(K^n[g]) + K^n[f] conj(K^{n+1}[g]))
    f, g = Sinc(), Cosine(1.2)
    n, t0, h = 12, 0.4, 1e-4
    gam, _ = gamma_beta_arrays("legendre", n)

    def partial(t):
        jf = f.chromatic_jet("legendre", t, n)
        jg = g.chromatic_jet("legendre", t, n)
        return float(np.sum(jf * np.conj(jg)).real)

    fd = (partial(t0 + h) - partial(t0 - h)) / (2 * h)
    jf = f.chromatic_jet("legendre", t0, n + 1)
    jg = g.chromatic_jet("legendre", t0, n + 1)
    rhs = gam[n] * (jf[n + 1] * np.conj(jg[n]) + jf[n] * np.conj(jg[n + 1]))
    assert abs(fd - rhs.real) < 1e-5


def test_comparison_taylor_exact_at_center(rng):
    f = Cosine(0.9)
    rows = taylor_vs_chromatic_comparison("legendre", f, 0.5, 10, [0.5])
    t, fv, ca, ty = rows[0]
    assert ty == pytest.approx(fv, rel=1e-12)
    assert ca == pytest.approx(fv, rel=1e-9)


def test_comparison_chromatic_beats_taylor_off_center(rng):
    samples = rng.uniform(-1.0, 1.0, 65)
    f = ShannonCombo(samples, first_index=-32)
    rows = taylor_vs_chromatic_comparison("legendre", f, 0.0, 15, [-1.0, 1.0])
    for _, fv, ca, ty in rows:
        assert abs(ca - fv) < abs(ty - fv)


def test_identity_exponential_residual_decreases():
    tab = table_for("legendre", 40)
    residuals = [identity_exponential("legendre", 1.5, 1.0, N, tab) for N in (10, 20, 40)]
    assert residuals[0] > residuals[1] > residuals[2]
    assert residuals[2] < 1e-10


def test_identity_translation_other_families():
    for fam in ("chebyshev_u", "hermite"):
        tab = table_for(fam, 40, 160)
        assert identity_translation(fam, 0.3, 0.5, 40, tab) < 1e-8


def test_identity_exponential_matches_classical_hermite():
    # e^{i w z} = sum_n H_n(w)/n! (iz/2)^n e^{-z^2/4}
    omega, z, N = 1.3, 0.8, 30
    tab = table_for("hermite", N, 140)
    assert identity_exponential("hermite", omega, z, N, tab) <= 1e-10
    H = np.zeros(N + 1)
    H[0], H[1] = 1.0, 2.0 * omega
    for n in range(1, N):
        H[n + 1] = 2.0 * omega * H[n] - 2.0 * n * H[n - 1]
    fac = np.array([math.factorial(n) for n in range(N + 1)], dtype=float)
    classical = np.sum(H / fac * (1j * z / 2.0) ** np.arange(N + 1)) * np.exp(-z * z / 4.0)
    assert abs(classical - np.exp(1j * omega * z)) < 1e-10
