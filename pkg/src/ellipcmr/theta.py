"""Theta function, Weierstrass-type kernels, and their analytic derivatives.

Everything is built from the truncated products

    theta(z; p)  = (1 - z) prod_{n>=1} (1 - p^n z)(1 - p^n / z)
    vt1(x)       = 2 sin(pi x / 2 ell) prod_{n>=1} (1 - p^n z)(1 - p^n / z),
                   z = exp(i pi x / ell),

so that vt1(x) = i z^{-1/2} theta(z; p).  Log-derivatives in x and in tau are
differentiated term by term; finite differences appear only in test oracles.
tau-derivatives use d/dtau = 2 pi i p d/dp, valid since p = e^{2 pi i tau}.
"""

from __future__ import annotations

import math

import numpy as np

from .domain import DEFAULT_POLICY, EllipticDomain, TruncationPolicy
from .errors import BranchError, PoleError

__all__ = [
    "theta_q", "log_theta_q", "theta1", "theta1_logderiv", "theta1_dlog2",
    "theta1_dtau", "theta1_tau_logderiv", "theta1_power", "wp1",
    "wp1_fourier_coeffs", "WpFourierCoeffs", "heat_constant_c0",
    "eta1_over_omega1", "heat_residual",
]


def _scale_for(z) -> float:
    az = np.abs(np.asarray(z))
    if np.any(az == 0.0):
        raise PoleError("zero argument z")
    return float(np.max(az + 1.0 / az))


def theta_q(z, p: float, pol: TruncationPolicy = DEFAULT_POLICY):
    """Truncated product (1-z) prod (1 - p^n z)(1 - p^n / z); p in [0, 1)."""
    z = np.asarray(z, dtype=complex)
    nt = pol.n_terms(p, _scale_for(z))
    out = 1.0 - z
    pn = 1.0
    for _ in range(nt):
        pn *= p
        out = out * (1.0 - pn * z) * (1.0 - pn / z)
    return out if out.shape else complex(out)


def log_theta_q(z, p: float, pol: TruncationPolicy = DEFAULT_POLICY):
    """log theta(z; p) as a sum of principal logs of the product factors.

    Smooth and single-valued on the annulus p < |z| < 1 (each factor then has
    positive real part except possibly 1 - z, which stays in the unit disk).
    This is the branch used for theta^g on quadrature contours.
    """
    z = np.asarray(z, dtype=complex)
    nt = pol.n_terms(p, _scale_for(z))
    out = np.log(1.0 - z)
    pn = 1.0
    for _ in range(nt):
        pn *= p
        out = out + np.log(1.0 - pn * z) + np.log(1.0 - pn / z)
    return out if out.shape else complex(out)


def theta1(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """Odd theta function vt1(x) = 2 sin(pi x/2 ell) prod (1-p^n z)(1-p^n/z)."""
    x = np.asarray(x, dtype=complex)
    z = np.exp(1j * math.pi * x / dom.ell)
    nt = pol.n_terms(dom.p, _scale_for(z))
    out = 2.0 * np.sin(math.pi * x / (2.0 * dom.ell))
    pn = 1.0
    for _ in range(nt):
        pn *= dom.p
        out = out * (1.0 - pn * z) * (1.0 - pn / z)
    return out if out.shape else complex(out)


def theta1_logderiv(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """zeta1(x) = vt1'(x)/vt1(x), term-wise analytic.

    zeta1(x) = (pi/2 ell) cot(pi x/2 ell)
               - (i pi/ell) sum_n [ p^n z/(1-p^n z) - (p^n/z)/(1-p^n/z) ].
    """
    x = np.asarray(x, dtype=complex)
    c = math.pi / dom.ell
    z = np.exp(1j * c * x)
    s = np.sin(0.5 * c * x)
    if np.any(np.abs(s) < 1e-300):
        raise PoleError("zeta1 pole: x on the period lattice")
    nt = pol.n_terms(dom.p, _scale_for(z))
    out = (0.5 * c) * np.cos(0.5 * c * x) / s
    pn = 1.0
    for _ in range(nt):
        pn *= dom.p
        w, v = pn * z, pn / z
        out = out - (1j * c) * (w / (1.0 - w) - v / (1.0 - v))
    return out if out.shape else complex(out)


def theta1_dlog2(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """Second log-derivative (ln vt1)''(x), term-wise analytic.

    Equals -wp1(x); computed from the product representation directly so the
    two routes stay independent (wp1 uses the cosine series).
    """
    x = np.asarray(x, dtype=complex)
    c = math.pi / dom.ell
    z = np.exp(1j * c * x)
    s = np.sin(0.5 * c * x)
    if np.any(np.abs(s) < 1e-300):
        raise PoleError("x on the period lattice")
    nt = pol.n_terms(dom.p, _scale_for(z))
    out = -(0.5 * c) ** 2 / s ** 2
    pn = 1.0
    for _ in range(nt):
        pn *= dom.p
        w, v = pn * z, pn / z
        out = out + c ** 2 * (w / (1.0 - w) ** 2 + v / (1.0 - v) ** 2)
    return out if out.shape else complex(out)


def theta1_tau_logderiv(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """d/dtau ln vt1(x) via d/dtau = 2 pi i p d/dp applied to each factor."""
    x = np.asarray(x, dtype=complex)
    z = np.exp(1j * math.pi * x / dom.ell)
    nt = pol.n_terms(dom.p, _scale_for(z))
    out = np.zeros_like(z)
    pn = 1.0
    for n in range(1, nt + 1):
        pn *= dom.p
        w, v = pn * z, pn / z
        out = out - n * (w / (1.0 - w) + v / (1.0 - v))
    out = 2j * math.pi * out
    return out if out.shape else complex(out)


def theta1_dtau(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """d/dtau vt1(x), analytic (no finite differences)."""
    return theta1(x, dom, pol) * theta1_tau_logderiv(x, dom, pol)


def theta1_power(x, g: float, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """vt1(x)^g with the principal branch on the Re vt1 > 0 domain.

    Integer g is exact for any x.  Otherwise the base must have positive real
    part (real x in (0, 2 ell) mod 2 ell gives vt1 > 0); elsewhere the branch
    is ambiguous and a BranchError is raised.
    """
    v = theta1(x, dom, pol)
    if g == int(round(g)):
        return v ** int(round(g))
    if np.any(np.real(np.asarray(v)) <= 0.0):
        raise BranchError("vt1(x)^g outside principal-branch domain (Re vt1 <= 0)")
    return np.exp(g * np.log(v))


def wp1(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """Weierstrass-type function with constant shifted so wp1 = -(ln vt1)''.

    Series form: (pi/2 ell)^2 / sin^2(pi x/2 ell)
                 - 2 (pi/ell)^2 sum_m m p^m/(1-p^m) cos(m pi x/ell).
    The cosine series converges for |Im x| < 2 delta, so the argument is first
    reduced by the imaginary period 2 i delta; the truncation policy then
    certifies the tail with the grown ratio p * max(|z|, 1/|z|).
    """
    x = np.asarray(x, dtype=complex)
    if dom.p > 0.0:
        shift = np.round(np.imag(x) / (2.0 * dom.delta))
        x = x - 2j * dom.delta * shift
    c = math.pi / dom.ell
    s = np.sin(0.5 * c * x)
    if np.any(np.abs(s) < 1e-300):
        raise PoleError("wp1 pole: x on the period lattice")
    out = (0.5 * c) ** 2 / s ** 2
    if dom.p > 0.0:
        z = np.exp(1j * c * x)
        zmax = float(np.max(np.maximum(np.abs(z), 1.0 / np.abs(z))))
        nt = pol.n_terms(dom.p * zmax, 2.0 / max(1e-300, 1.0 - dom.p))
        pm = 1.0
        for m in range(1, nt + 1):
            pm *= dom.p
            out = out - 2.0 * c ** 2 * m * pm / (1.0 - pm) * np.cos(m * c * x)
    return out if out.shape else complex(out)


class WpFourierCoeffs:
    """Coefficients of z^{+-m} in the |z|-annulus expansion of wp1.

    wp1(x) = -(pi/ell)^2 sum_{m>=1} m ( z^m + sum_{nu>=1} p^{m nu} (z^m + z^-m) )
    for p < |z| < 1.  Per m, the z^m coefficient is the p-polynomial
    -(pi/ell)^2 m (1 + p^m + p^{2m} + ...), and the z^-m coefficient is the
    same without the leading 1; p-powers are kept symbolic up to order k_max.
    """

    def __init__(self, dom: EllipticDomain, m_max: int, k_max: int):
        self.ell = dom.ell
        self.p = dom.p
        self.m_max = int(m_max)
        self.k_max = int(k_max)
        c = -((math.pi / dom.ell) ** 2)
        # plus[m][k], minus[m][k]: coefficient of z^{+-m} p^k, m = 1..m_max
        self.plus = np.zeros((m_max + 1, k_max + 1))
        self.minus = np.zeros((m_max + 1, k_max + 1))
        for m in range(1, m_max + 1):
            self.plus[m, 0] = c * m
            for nu in range(1, k_max // m + 1):
                self.plus[m, nu * m] = c * m
                self.minus[m, nu * m] = c * m

    def coefficient(self, m: int, p: float | None = None):
        """Numeric z^m coefficient (m may be negative) from the p-power table."""
        p = self.p if p is None else p
        table = self.plus if m > 0 else self.minus
        powers = p ** np.arange(self.k_max + 1)
        return float(table[abs(m)] @ powers)

    def reconstruct(self, x, p: float | None = None):
        """Sum the expansion at z = exp(i pi x/ell) from the tabulated powers.

        The p-independent part sum_m m z^m only converges for |z| < 1, so it is
        resummed as z/(1-z)^2; every p-dependent coefficient is summed as the
        finite p-polynomial stored in the table.
        """
        p = self.p if p is None else p
        z = np.exp(1j * math.pi * np.asarray(x, dtype=complex) / self.ell)
        c = -((math.pi / self.ell) ** 2)
        total = c * z / (1.0 - z) ** 2
        for m in range(1, self.m_max + 1):
            cp = self.coefficient(m, p) - c * m   # p-dependent part of z^m
            total = total + cp * z ** m + self.coefficient(-m, p) * z ** (-m)
        return total


def wp1_fourier_coeffs(dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY,
                       m_max: int = 32, k_max: int | None = None) -> WpFourierCoeffs:
    """Expansion coefficients of wp1 used by the nome-series solver."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if k_max is None:
        k_max = max(m_max, pol.n_terms(dom.p, 1.0) if dom.p > 0 else m_max)
    return WpFourierCoeffs(dom, m_max, k_max)


def eta1_over_omega1(dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY) -> float:
    """(pi/ell)^2 (1/12 - sum_n p^n/(1-p^n)^2)."""
    c = (math.pi / dom.ell) ** 2
    total = 1.0 / 12.0
    if dom.p > 0.0:
        nt = pol.n_terms(dom.p, 1.0 / (1.0 - dom.p) ** 2)
        pn = 1.0
        for _ in range(nt):
            pn *= dom.p
            total -= pn / (1.0 - pn) ** 2
    return c * total


def heat_constant_c0(dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY) -> float:
    """c0 = (pi/ell)^2 (1/4 - 2 sum_n n p^n/(1-p^n)).

    Cross-identity: c0 = 2 eta1/omega1 + (pi/ell)^2/12 through an independent
    series (checked in the test suite).
    """
    c = (math.pi / dom.ell) ** 2
    total = 0.25
    if dom.p > 0.0:
        nt = pol.n_terms(dom.p, 1.0 / (1.0 - dom.p))
        pn = 1.0
        for n in range(1, nt + 1):
            pn *= dom.p
            total -= 2.0 * n * pn / (1.0 - pn)
    return c * total


def heat_residual(x, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """Relative residual of (i pi/ell^2 d_tau - d_x^2 - c0) vt1 at x."""
    zeta = theta1_logderiv(x, dom, pol)
    dlog2 = theta1_dlog2(x, dom, pol)
    tlog = theta1_tau_logderiv(x, dom, pol)
    c0 = heat_constant_c0(dom, pol)
    # vt1'' / vt1 = zeta1^2 + zeta1'
    return (1j * math.pi / dom.ell ** 2) * tlog - (zeta ** 2 + dlog2) - c0
