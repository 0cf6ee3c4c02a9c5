"""Contour-quadrature kernel transforms and elliptic Jack-type eigenfunctions.

Circle contours use the equispaced trapezoid rule, spectrally accurate for
analytic periodic integrands; node counts are powers of two so a node-doubling
delta certifies every reported value.  theta powers on contours are taken with
the factor-wise principal logarithm of theta, single-valued on p < |w| < 1;
all contours are chosen so every theta argument stays in that annulus, and the
total winding of the assembled integrand is monitored.

The two-variable eigenfunction integral is

    P_lam(z) = (z1 z2)^{lam2} . mean_{|xi| = R} xi^{lam1 - lam2}
               / ( theta(z1/xi; p)^g theta(z2/xi; p)^g ),   1 < R < 1/p,

which at p = 0, g = 1 reduces by residue calculus to the Schur polynomial
s_lam(z1, z2); the double-contour building block is

    F_lam(z) = mean_{|xi1| = R1} mean_{|xi2| = R2} xi1^{lam1} xi2^{lam2}
               theta(xi1/xi2; p)^g / prod_{i,j} theta(z_i/xi_j; p)^g,

with 1 < R1 < R2 < 1/p (at p = 0, g = 1 this is the Jacobi-Trudi determinant
h_{lam1} h_{lam2} - h_{lam1+1} h_{lam2-1}).  Values are reported raw: no
normalization is fixed, only proportionality to reference polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .domain import DEFAULT_POLICY, EllipticDomain, TruncationPolicy
from .errors import ConvergenceError, DomainError, SeamError, WindowError
from .kernels import KernelSpec, kernel_K
from .pseries import PSeriesTable
from .theta import log_theta_q

__all__ = [
    "Partition2", "ContourConfig", "ContourResult", "n2_single_contour_P",
    "contour_F_lambda", "assemble_P_lambda", "eigen_residual_P_lambda",
    "eigen_residuals_P_lambda", "single_contour_psi_field", "kernel_transform",
]


@dataclass(frozen=True)
class Partition2:
    """Two-row partition (lam1 >= lam2); lam2 < 0 is reachable by translation."""

    lam1: int
    lam2: int

    def __post_init__(self):
        if self.lam1 < self.lam2:
            raise DomainError("need lam1 >= lam2")

    @property
    def diff(self) -> int:
        return self.lam1 - self.lam2


@dataclass(frozen=True)
class ContourConfig:
    """Circle radii (None = window defaults) and per-circle node count."""

    R1: Optional[float] = None
    R2: Optional[float] = None
    nodes: int = 256

    def __post_init__(self):
        if self.nodes < 64 or (self.nodes & (self.nodes - 1)) != 0:
            raise DomainError("nodes must be a power of two >= 64")

    def radii(self, p: float):
        """Defaults sit at the geometric thirds of the window (1, 1/p)."""
        top = 1.0 / p if p > 0 else 16.0
        r1 = self.R1 if self.R1 is not None else top ** (1.0 / 3.0)
        r2 = self.R2 if self.R2 is not None else top ** (2.0 / 3.0)
        if not (1.0 < r1 < r2 < top):
            raise WindowError(f"radii must satisfy 1 < R1 < R2 < 1/p, got ({r1}, {r2})")
        return r1, r2

    def single_radius(self, p: float) -> float:
        top = 1.0 / p if p > 0 else 4.0
        r = self.R1 if self.R1 is not None else math.sqrt(top)
        if not (1.0 < r < top):
            raise WindowError(f"radius must satisfy 1 < R < 1/p, got {r}")
        return r


class ContourResult(NamedTuple):
    value: complex
    node_delta: float


def _nodes(radius: float, count: int):
    return radius * np.exp(2j * math.pi * np.arange(count) / count)


def _check_winding(values, what: str):
    """Total argument change of the theta-power factor must vanish on a loop.

    Integer monomial powers wind harmlessly and are excluded by the callers;
    a nonzero total (or a jump between nodes) signals a crossed branch cut,
    i.e. a contour outside the zero-free annulus.
    """
    v = np.asarray(values).ravel()
    steps = np.angle(np.roll(v, -1) / v)
    total = float(np.sum(steps))
    if abs(total) > math.pi or np.max(np.abs(steps)) > 0.5 * math.pi:
        raise WindowError(f"{what}: theta-power factor winds by {total / (2 * math.pi):.2f} turns")


def _wdlog_theta(w, p: float, pol: TruncationPolicy):
    """w d/dw log theta(w; p), term-wise."""
    w = np.asarray(w, dtype=complex)
    nt = pol.n_terms(p, float(np.max(np.abs(w) + 1.0 / np.abs(w))))
    out = -w / (1.0 - w)
    pn = 1.0
    for _ in range(nt):
        pn *= p
        out = out - pn * w / (1.0 - pn * w) + (pn / w) / (1.0 - pn / w)
    return out


def _w2dlog_theta(w, p: float, pol: TruncationPolicy):
    """(w d/dw)^2 log theta(w; p), term-wise."""
    w = np.asarray(w, dtype=complex)
    nt = pol.n_terms(p, float(np.max(np.abs(w) + 1.0 / np.abs(w))))
    out = -w / (1.0 - w) ** 2
    pn = 1.0
    for _ in range(nt):
        pn *= p
        out = out - pn * w / (1.0 - pn * w) ** 2 - (pn / w) / (1.0 - pn / w) ** 2
    return out


def _single_P(lam1: int, lam2: int, z, g: float, p: float, radius: float,
              count: int, pol) -> complex:
    xi = _nodes(radius, count)
    theta_part = np.exp(-g * (log_theta_q(z[0] / xi, p, pol)
                              + log_theta_q(z[1] / xi, p, pol)))
    _check_winding(theta_part, "single contour")
    integrand = xi ** (lam1 - lam2) * theta_part
    return complex((z[0] * z[1]) ** lam2 * np.mean(integrand))


def n2_single_contour_P(lam_diff: int, lam2: int, z, g: float, p: float,
                        cfg: ContourConfig = ContourConfig(),
                        pol: TruncationPolicy = DEFAULT_POLICY) -> ContourResult:
    """Single-contour P for N = 2: lam = (lam2 + lam_diff, lam2), lam_diff >= 0.

    The contour |xi| = R must satisfy p < |z_j|/R < 1; psi0 * P solves the
    kappa = g non-stationary equation (certified in the test suite).
    """
    if lam_diff < 0:
        raise DomainError("need lam1 - lam2 >= 0")
    z = np.asarray(z, dtype=complex)
    r = cfg.single_radius(p)
    for zj in z:
        if not (p < abs(zj) / r < 1.0):
            raise WindowError(f"|z|/R = {abs(zj) / r} outside (p, 1)")
    lam1 = lam2 + lam_diff
    a = _single_P(lam1, lam2, z, g, p, r, cfg.nodes, pol)
    b = _single_P(lam1, lam2, z, g, p, r, 2 * cfg.nodes, pol)
    return ContourResult(value=b, node_delta=abs(b - a))


def _f_moments(mu_pairs, z, g: float, p: float, r1: float, r2: float,
               count: int, pol, derivs: bool = False):
    """F_mu (and optional z-Euler moments) for a list of (mu1, mu2) pairs.

    Shared node data is contracted once: F = mean_a mean_b xi1^mu1 xi2^mu2 M_ab
    with M_ab = theta(xi1a/xi2b)^g u_a v_b, u_a = prod_i theta(z_i/xi1a)^-g.
    """
    xi1 = _nodes(r1, count)
    xi2 = _nodes(r2, count)
    u = np.exp(-g * (log_theta_q(z[0] / xi1, p, pol) + log_theta_q(z[1] / xi1, p, pol)))
    v = np.exp(-g * (log_theta_q(z[0] / xi2, p, pol) + log_theta_q(z[1] / xi2, p, pol)))
    cross = np.exp(g * log_theta_q(xi1[:, None] / xi2[None, :], p, pol))
    M = cross * u[:, None] * v[None, :]   # theta-power factor of the integrand
    _check_winding(M[:, 0], "F contour 1")
    _check_winding(M[0, :], "F contour 2")
    _check_winding(u, "F z-legs on contour 1")
    _check_winding(v, "F z-legs on contour 2")

    out = {"F": np.empty(len(mu_pairs), dtype=complex)}
    if derivs:
        # alpha_i[a] = z_i dlog of the xi1-leg, beta_i[b] of the xi2-leg
        al = [-g * _wdlog_theta(z[i] / xi1, p, pol) for i in range(2)]
        be = [-g * _wdlog_theta(z[i] / xi2, p, pol) for i in range(2)]
        al2 = [-g * _w2dlog_theta(z[i] / xi1, p, pol) for i in range(2)]
        be2 = [-g * _w2dlog_theta(z[i] / xi2, p, pol) for i in range(2)]
        for key in ("D1", "D11", "D2", "D22"):
            out[key] = np.empty(len(mu_pairs), dtype=complex)

    w2 = {}
    for idx, (m1, m2) in enumerate(mu_pairs):
        if m2 not in w2:
            w2[m2] = xi2 ** m2
        col = M @ w2[m2] / count            # [a]
        w1 = xi1 ** m1
        out["F"][idx] = np.mean(w1 * col)
        if derivs:
            for i, k1, k2 in ((0, "D1", "D11"), (1, "D2", "D22")):
                colb = M @ (w2[m2] * be[i]) / count
                colb2 = M @ (w2[m2] * (be[i] ** 2 + be2[i])) / count
                out[k1][idx] = np.mean(w1 * (al[i] * col + colb))
                out[k2][idx] = np.mean(w1 * ((al[i] ** 2 + al2[i]) * col
                                             + 2.0 * al[i] * colb + colb2))
    return out


def contour_F_lambda(lam1: int, lam2: int, z, g: float, p: float,
                     cfg: ContourConfig = ContourConfig(),
                     pol: TruncationPolicy = DEFAULT_POLICY) -> ContourResult:
    """Double-contour F_lam with its node-doubling certificate."""
    z = np.asarray(z, dtype=complex)
    r1, r2 = cfg.radii(p)
    a = _f_moments([(lam1, lam2)], z, g, p, r1, r2, cfg.nodes, pol)["F"][0]
    b = _f_moments([(lam1, lam2)], z, g, p, r1, r2, 2 * cfg.nodes, pol)["F"][0]
    return ContourResult(value=complex(b), node_delta=abs(b - a))


def _check_table(lam: Partition2, table: PSeriesTable, g: float):
    s_want = (lam.lam1 + g / 2.0, lam.lam2 - g / 2.0)
    if (abs(complex(table.s[0]) - s_want[0]) > 1e-12
            or abs(complex(table.s[1]) - s_want[1]) > 1e-12):
        raise DomainError(
            f"table solved at s={table.s}, but lam={lam} needs s={s_want}")


def _assembly_weights(lam: Partition2, table: PSeriesTable, p: float, K: int):
    """Per-n weights sum_k a_{n,k} p^k and the (mu1, mu2) pair list."""
    ns = range(-K, table.n_cap + 1)
    pairs, weights = [], []
    for n in ns:
        w = sum(complex(table.coefficient(n, k)) * p ** k for k in range(K + 1))
        pairs.append((lam.lam1 + n, lam.lam2 - n))
        weights.append(w)
    return pairs, np.array(weights)


def assemble_P_lambda(lam: Partition2, table: PSeriesTable, z, g: float, p: float,
                      cfg: ContourConfig = ContourConfig(),
                      pol: TruncationPolicy = DEFAULT_POLICY,
                      K: Optional[int] = None) -> ContourResult:
    """P_lam(z) = sum_{k <= K} sum_n a_{n,k} F_{lam1+n, lam2-n}(z) p^k.

    The table must be a Variant-I solve at s = (lam1 + g/2, lam2 - g/2); K
    defaults to the table's truncation order.
    """
    _check_table(lam, table, g)
    K = table.K if K is None else K
    if K > table.K:
        raise DomainError(f"K={K} exceeds table order {table.K}")
    z = np.asarray(z, dtype=complex)
    r1, r2 = cfg.radii(p)
    pairs, weights = _assembly_weights(lam, table, p, K)
    a = _f_moments(pairs, z, g, p, r1, r2, cfg.nodes, pol)["F"] @ weights
    b = _f_moments(pairs, z, g, p, r1, r2, 2 * cfg.nodes, pol)["F"] @ weights
    return ContourResult(value=complex(b), node_delta=abs(b - a))


def eigen_residuals_P_lambda(lam: Partition2, table: PSeriesTable, x, g: float,
                             dom: EllipticDomain,
                             cfg: ContourConfig = ContourConfig(),
                             pol: TruncationPolicy = DEFAULT_POLICY,
                             Ks: Optional[Sequence[int]] = None):
    """|H_2 psi - E psi| / |psi| for psi = psi0 P_lam at real x, per order K.

    All derivatives are analytic: psi0 contributes zeta1/wp1 log-derivatives
    and P contributes Euler moments differentiated under the integral; E is
    (pi/ell)^2 times the truncated eigenvalue series of the table.  The
    contour moments are computed once and shared across the requested orders.
    """
    from .theta import theta1_logderiv, wp1

    _check_table(lam, table, g)
    Ks = list(Ks) if Ks is not None else [table.K]
    if max(Ks) > table.K:
        raise DomainError(f"K={max(Ks)} exceeds table order {table.K}")
    x = np.asarray(x, dtype=float)
    p = dom.p
    z = np.exp(1j * math.pi * x / dom.ell)
    r1, r2 = cfg.radii(p)
    pairs, _ = _assembly_weights(lam, table, p, table.K)
    mom = _f_moments(pairs, z, g, p, r1, r2, cfg.nodes, pol, derivs=True)

    u = x[0] - x[1]
    zl = theta1_logderiv(u, dom, pol)
    wp = wp1(u, dom, pol)
    ipl = 1j * math.pi / dom.ell
    out = []
    for K in Ks:
        weights = np.array([sum(complex(table.coefficient(n, k)) * p ** k
                                for k in range(K + 1))
                            for n in range(-table.K, table.n_cap + 1)])
        P = mom["F"] @ weights
        if abs(P) == 0.0:
            raise ConvergenceError("assembled P vanished at this point")
        d = {key: (mom[key] @ weights) / P for key in ("D1", "D11", "D2", "D22")}
        h = 0.0 + 0.0j
        for i, (first, second) in enumerate((("D1", "D11"), ("D2", "D22"))):
            li = g * zl * (1.0 if i == 0 else -1.0)      # d_i ln psi0
            psi_ii = (li * li - g * wp) + 2.0 * li * ipl * d[first] + ipl ** 2 * d[second]
            h += -0.5 * psi_ii
        h += g * (g - 1.0) * wp
        E = (math.pi / dom.ell) ** 2 * sum(complex(table.eps[k]) * p ** k
                                           for k in range(K + 1))
        out.append(abs(h - E))
    return np.array(out)


def eigen_residual_P_lambda(lam: Partition2, table: PSeriesTable, x, g: float,
                            dom: EllipticDomain,
                            cfg: ContourConfig = ContourConfig(),
                            pol: TruncationPolicy = DEFAULT_POLICY,
                            K: Optional[int] = None) -> float:
    """Single-order convenience wrapper around eigen_residuals_P_lambda."""
    K = table.K if K is None else K
    return float(eigen_residuals_P_lambda(lam, table, x, g, dom, cfg, pol, [K])[0])


def _taulog_theta(w, p: float, pol: TruncationPolicy):
    """d/dtau log theta(w; p) via d/dtau = 2 pi i p d/dp, term-wise."""
    w = np.asarray(w, dtype=complex)
    nt = pol.n_terms(p, float(np.max(np.abs(w) + 1.0 / np.abs(w)))) if p > 0 else 0
    out = np.zeros_like(w)
    pn = 1.0
    for n in range(1, nt + 1):
        pn *= p
        out = out - n * (pn * w / (1.0 - pn * w) + (pn / w) / (1.0 - pn / w))
    return 2j * math.pi * out


def single_contour_psi_field(lam_diff: int, lam2: int, g: float,
                             dom: EllipticDomain,
                             cfg: ContourConfig = ContourConfig(),
                             pol: TruncationPolicy = DEFAULT_POLICY):
    """psi(x) = psi0(x) P_lam(z(x)) as a SmoothField with analytic derivatives.

    psi0 = vt1(x1-x2)^g; x-derivatives of P are Euler moments differentiated
    under the integral and the tau-derivative follows from the p-dependence of
    the contour theta factors, so operators.nonstationary_residual can certify
    the kappa = g equation directly.
    """
    from .fields import SmoothField
    from .theta import theta1_logderiv, theta1_power, theta1_tau_logderiv, wp1

    p = dom.p
    r = cfg.single_radius(p)
    lam1 = lam2 + lam_diff
    xi = _nodes(r, cfg.nodes)
    sigma = (1.0, -1.0)

    def moments(x):
        z = np.exp(1j * math.pi * np.asarray(x, dtype=complex) / dom.ell)
        logs = log_theta_q(z[0] / xi, p, pol) + log_theta_q(z[1] / xi, p, pol)
        base = xi ** lam_diff * np.exp(-g * logs)
        _check_winding(np.exp(-g * logs), "single contour")
        pref = (z[0] * z[1]) ** lam2
        P = pref * np.mean(base)
        d = {}
        for i in range(2):
            al = lam2 - g * _wdlog_theta(z[i] / xi, p, pol)    # z_i-Euler weight
            al2 = -g * _w2dlog_theta(z[i] / xi, p, pol)
            d[("e1", i)] = pref * np.mean(base * al)
            d[("e2", i)] = pref * np.mean(base * (al * al + al2))
        tau_w = -g * (_taulog_theta(z[0] / xi, p, pol) + _taulog_theta(z[1] / xi, p, pol))
        d["tau"] = pref * np.mean(base * tau_w)
        return P, d

    def val(x):
        P, _ = moments(x)
        return complex(theta1_power(x[0] - x[1], g, dom, pol) * P)

    def d1(x, i):
        P, d = moments(x)
        psi0 = theta1_power(x[0] - x[1], g, dom, pol)
        li = sigma[i] * g * theta1_logderiv(x[0] - x[1], dom, pol)
        return complex(psi0 * (li * P + (1j * math.pi / dom.ell) * d[("e1", i)]))

    def d2(x, i):
        P, d = moments(x)
        u = x[0] - x[1]
        psi0 = theta1_power(u, g, dom, pol)
        li = sigma[i] * g * theta1_logderiv(u, dom, pol)
        lii = -g * wp1(u, dom, pol)
        ipl = 1j * math.pi / dom.ell
        return complex(psi0 * ((li * li + lii) * P
                               + 2.0 * li * ipl * d[("e1", i)]
                               + ipl ** 2 * d[("e2", i)]))

    def dtau(x):
        P, d = moments(x)
        u = x[0] - x[1]
        psi0 = theta1_power(u, g, dom, pol)
        return complex(psi0 * (g * theta1_tau_logderiv(u, dom, pol) * P + d["tau"]))

    return SmoothField(value=val, d1=d1, d2=d2, dtau=dtau)


def kernel_transform(spec: KernelSpec, source: Callable, x,
                     dom: EllipticDomain, epsilons: Optional[Sequence[float]] = None,
                     nodes: int = 256, pol: TruncationPolicy = DEFAULT_POLICY,
                     seam_tol: float = 1e-10) -> ContourResult:
    """Generic transform int K_{N,M}(x, y) source(y) dy over line contours.

    Each y_j runs over the straight line from -ell - i eps_j to +ell - i eps_j;
    closure requires the integrand to be 2 ell periodic in every y_j, which is
    checked at the seam (mismatch raises SeamError; e.g. non-integer plane-wave
    labels).  Trapezoid product rule; a node-doubling delta is attached.
    """
    x = np.asarray(x, dtype=complex)
    if epsilons is None:
        epsilons = [0.25 * dom.delta * (j + 1) / (spec.M + 1) if not math.isinf(dom.delta)
                    else 0.25 * (j + 1) for j in range(spec.M)]
    if len(epsilons) != spec.M:
        raise DomainError("need one contour offset per y coordinate")

    def integrand(y):
        return kernel_K(spec, x, y, dom, pol) * source(y)

    def run(count):
        s_grid = -dom.ell + 2.0 * dom.ell * np.arange(count) / count
        # seam check per axis at the resolved endpoints
        base = np.array([-1j * e for e in epsilons], dtype=complex)
        for j in range(spec.M):
            lo = base.copy()
            hi = base.copy()
            lo[j] += -dom.ell
            hi[j] += dom.ell
            a, b = integrand(lo), integrand(hi)
            scale = max(abs(a), abs(b), 1e-300)
            if abs(a - b) > seam_tol * scale:
                raise SeamError(
                    f"contour not closed in y_{j}: seam mismatch {abs(a - b) / scale:.2e}")
        if spec.M == 0:
            return integrand(np.array([], dtype=complex))
        grids = np.meshgrid(*[s_grid - 1j * e for e in epsilons], indexing="ij")
        pts = np.stack([gr.ravel() for gr in grids], axis=-1)
        vals = np.array([integrand(y) for y in pts])
        return complex(np.mean(vals) * (2.0 * dom.ell) ** spec.M)

    a = run(nodes)
    b = run(2 * nodes)
    return ContourResult(value=b, node_delta=abs(b - a))
