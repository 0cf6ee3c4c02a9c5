"""Nome-series eigenfunctions of the two-variable eCS equation.

With z_j = e^{i pi x_j / ell}, u = z_1/z_2 and dimensionless eigenvalue
Eps = (ell/pi)^2 E, the (non-stationary) equation reads L f = 0 with

    L = -kappa p d_p + 1/2 (z_1 d_1)^2 + 1/2 (z_2 d_2)^2 - Eps - gamma * Phat,
    Phat = sum_{m>=1} m ( u^m + sum_{nu>=1} p^{m nu} (u^m + u^-m) ),

acting on f = z_1^{s_1} z_2^{s_2} sum_{k, n >= -k} a_{n,k} u^n p^k.  Setting the
coefficient of every basis function to zero gives the triangular recursion

    (Eps^(n) - Eps_0 - k kappa) a_{n,k} = sum_{k'=1..k} Eps_{k'} a_{n,k-k'}
        + gamma sum_{m=1..n+k} m a_{n-m,k}
        + gamma sum_{nu=1..k} sum_{m=1..k/nu} m (a_{n-m,k-nu m} + a_{n+m,k-nu m})

with Eps^(n) - Eps_0 = n(n + s_1 - s_2).  Variant I fixes the gauge by
a_{0,k} = 0 (k >= 1), which turns the n = 0 rows into equations for Eps_k;
Variant II keeps kappa != 0 and fixes Eps_k = 0 (k >= 1) instead, determining
the constant part C = 1 + sum a_{0,k} p^k.

Entries are exact finite rational expressions in (s, gamma, kappa): there is
no upward coupling inside a fixed k, so filling k levels in ascending n order
closes.  Level k is filled up to n = n_cap + 2(K - k) + k so every reported
entry (n <= n_cap + k) is exact; an exact Fraction mode is available for
rational inputs as an external cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .domain import DEFAULT_POLICY, EllipticDomain, TruncationPolicy
from .errors import DomainError, ResonanceError
from .theta import wp1_fourier_coeffs

__all__ = [
    "PSeriesTable", "solve_variant_I", "solve_variant_II", "apply_L_series",
    "LaurentPSeries", "eigenvalue_from_gauge", "pseries_log", "pseries_inv",
]

_RES_GUARD = 1e-10


@dataclass(frozen=True)
class PSeriesTable:
    """Solved coefficient table a_{n,k} and eigenvalue series Eps_0..Eps_K."""

    K: int
    s: tuple
    gamma: complex
    kappa: complex
    n_cap: int
    variant: str
    a: dict
    eps: tuple
    exact: bool = False

    def coefficient(self, n: int, k: int):
        return self.a.get((n, k), 0.0)

    def n_max(self, k: int) -> int:
        """Guaranteed-exact fill level of row k (at least n_cap + k)."""
        return self.n_cap + 2 * (self.K - k) + k

    def constant_part(self):
        """C = 1 + sum_{k>=1} a_{0,k} p^k as a coefficient array."""
        return np.array([self.coefficient(0, k) for k in range(self.K + 1)], dtype=complex)

    def normalized_coefficients(self) -> dict:
        """Coefficients of f / C: the gauge-invariant normal form (constant part 1)."""
        cinv = pseries_inv(self.constant_part())
        out = {}
        for k in range(self.K + 1):
            for n in range(-k, self.n_cap + k + 1):
                v = sum(self.coefficient(n, k - j) * cinv[j] for j in range(k + 1))
                out[(n, k)] = v
        return out

    def to_dict(self) -> dict:
        entries = []
        for (n, k) in sorted(self.a):
            v = complex(self.a[(n, k)])
            entries.append([n, k, v.real, v.imag])
        d = {
            "schema": 1,
            "variant": self.variant,
            "K": self.K,
            "n_cap": self.n_cap,
            "s": [float(self.s[0]), float(self.s[1])],
            "gamma": [complex(self.gamma).real, complex(self.gamma).imag],
            "kappa": [complex(self.kappa).real, complex(self.kappa).imag],
            "entries": entries,
            "eps": [[complex(e).real, complex(e).imag] for e in self.eps],
        }
        if self.exact:
            d["s_exact"] = [str(Fraction(self.s[0])), str(Fraction(self.s[1]))]
            d["gamma_exact"] = str(Fraction(self.gamma))
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PSeriesTable":
        a = {(int(n), int(k)): complex(re, im) for n, k, re, im in d["entries"]}
        eps = tuple(complex(re, im) for re, im in d["eps"])
        return cls(K=int(d["K"]), s=tuple(d["s"]),
                   gamma=complex(d["gamma"][0], d["gamma"][1]),
                   kappa=complex(d["kappa"][0], d["kappa"][1]),
                   n_cap=int(d["n_cap"]), variant=d["variant"], a=a, eps=eps)


def _solve(s, gamma, kappa, K, n_cap, variant, exact):
    s1, s2 = s
    delta = s1 - s2
    if exact:
        s1, s2, delta = Fraction(s1), Fraction(s2), Fraction(s1) - Fraction(s2)
        gamma = Fraction(gamma)
        if kappa != 0:
            raise DomainError("exact mode supports kappa = 0 only")
        kappa = Fraction(0)
        zero, one = Fraction(0), Fraction(1)
    else:
        zero, one = 0.0 + 0.0j, 1.0 + 0.0j
        gamma = complex(gamma)
        kappa = complex(kappa)

    if variant == "II" and kappa == 0:
        raise DomainError("Variant II needs kappa != 0")

    a = {(0, 0): one}
    eps = {0: (s1 * s1 + s2 * s2) / 2}
    running_scale = 1.0

    for k in range(K + 1):
        fill_to = n_cap + 2 * (K - k) + k
        for n in range(-k, fill_to + 1):
            if (n, k) == (0, 0):
                continue
            rhs = zero
            for kp in range(1, k + 1):
                if kp in eps and eps[kp] != 0:
                    prev = a.get((n, k - kp))
                    if prev is not None and prev != 0:
                        rhs += eps[kp] * prev
            for m in range(1, n + k + 1):
                prev = a.get((n - m, k))
                if prev is not None and prev != 0:
                    rhs += gamma * m * prev
            for nu in range(1, k + 1):
                for m in range(1, k // nu + 1):
                    kp2 = k - nu * m
                    lo = a.get((n - m, kp2), zero)
                    hi = a.get((n + m, kp2))
                    if hi is None:
                        if n + m >= -kp2:   # inside support: must have been filled
                            raise AssertionError(
                                f"fill order violated: ({n + m},{kp2}) unfilled")
                        hi = zero
                    rhs += gamma * m * (lo + hi)

            div = n * (n + delta) - k * kappa
            if n == 0 and k >= 1 and variant == "I":
                # row determines Eps_k (divisor is -k kappa, zero in the
                # stationary case); gauge a_{0,k} = 0
                eps[k] = -rhs
                a[(0, k)] = zero
            elif n == 0 and k >= 1 and variant == "II":
                eps[k] = zero
                a[(0, k)] = rhs / div
            elif (exact and div == 0) or (not exact and abs(div) < _RES_GUARD):
                src = abs(rhs) if not exact else (0.0 if rhs == 0 else 1.0)
                if src > 1e-9 * max(1.0, running_scale) * max(1.0, abs(complex(gamma))):
                    raise ResonanceError(
                        f"unresolvable resonance at (n,k)=({n},{k}): divisor "
                        f"{complex(div):.2e} with source {src:.2e}")
                a[(n, k)] = zero     # resolvable: source vanishes identically
            else:
                a[(n, k)] = rhs / div
            if not exact:
                running_scale = max(running_scale, abs(a[(n, k)]))

    eps_t = tuple(eps[k] for k in range(K + 1))
    return PSeriesTable(K=K, s=(s1, s2), gamma=gamma, kappa=kappa, n_cap=n_cap,
                        variant=variant, a=a, eps=eps_t, exact=exact)


def solve_variant_I(s, gamma, K: int, n_cap: int = 16, kappa: complex = 0.0,
                    exact: bool = False) -> PSeriesTable:
    """Gauge a_{0,k} = 0 (k >= 1); the n = 0 rows determine Eps_k.

    Integer s_1 - s_2 hits zero divisors at n = -(s_1 - s_2); these are
    resolvable exactly when the source term vanishes (it does at the physical
    points s = (lambda_1 + g/2, lambda_2 - g/2), where the coefficient is set
    to zero), otherwise a ResonanceError is raised.
    """
    return _solve(s, gamma, kappa, K, n_cap, "I", exact)


def solve_variant_II(s, gamma, kappa, K: int, n_cap: int = 16,
                     exact: bool = False) -> PSeriesTable:
    """Gauge Eps_k = 0 (k >= 1) at kappa != 0; n = 0 rows determine a_{0,k}.

    kappa must keep every divisor n(n + s_1 - s_2) - k kappa away from zero
    (an imaginary part suffices); violations raise ResonanceError.
    """
    s1, s2 = s
    delta = s1 - s2
    for k in range(1, K + 1):
        for n in range(-k, n_cap + 2 * K + 1):
            if (n, k) != (0, 0) and abs(n * (n + delta) - k * kappa) < _RES_GUARD and n != 0:
                raise ResonanceError(
                    f"small divisor at (n,k)=({n},{k}) for kappa={kappa}")
    return _solve(s, gamma, kappa, K, n_cap, "II", exact)


class LaurentPSeries:
    """Truncated double series sum c_{n,k} u^n p^k (result of apply_L_series)."""

    def __init__(self, data: dict, K: int, n_lo, n_hi):
        self.data = data
        self.K = K
        self.n_lo = n_lo
        self.n_hi = n_hi

    def coefficient(self, n: int, k: int):
        return self.data.get((n, k), 0.0)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.data.values()), default=0.0)


def apply_L_series(table: PSeriesTable, dom: Optional[EllipticDomain] = None,
                   pol: TruncationPolicy = DEFAULT_POLICY) -> LaurentPSeries:
    """Apply L to the stored series exactly in the truncated ring.

    Independent route: the p-expansion coefficients of the potential come from
    wp1_fourier_coeffs (rescaled to the dimensionless Phat), each operator
    piece acts by series arithmetic, and the residual coefficients are
    collected on the window k <= K, -k <= n <= n_cap (where the truncation is
    exact).  For a correctly solved table every entry vanishes.
    """
    K, n_cap = table.K, table.n_cap
    s1, s2 = complex(table.s[0]), complex(table.s[1])
    gamma, kappa = complex(table.gamma), complex(table.kappa)
    dom = dom or EllipticDomain.from_nome(math.pi, 0.0)
    m_max = n_cap + 3 * K + 1
    fc = wp1_fourier_coeffs(dom, pol, m_max=m_max, k_max=K)
    scale = -((dom.ell / math.pi) ** 2)      # Phat = -(ell/pi)^2 * wp1-coefficients
    phat_plus = scale * fc.plus              # [m, k] -> coeff of u^m p^k
    phat_minus = scale * fc.minus

    eps = np.array([complex(e) for e in table.eps])
    out = {}
    for k in range(K + 1):
        for n in range(-k, n_cap + 1):
            acc = 0.0 + 0.0j
            # Euler and p d_p parts (diagonal)
            e_n = 0.5 * (n + s1) ** 2 + 0.5 * (s2 - n) ** 2
            acc += (e_n - kappa * k) * complex(table.coefficient(n, k))
            # -Eps * f as a p-product
            for kp in range(0, k + 1):
                acc -= eps[kp] * complex(table.coefficient(n, k - kp))
            # -gamma * Phat * f
            for kp in range(0, k + 1):
                for m in range(1, m_max + 1):
                    cp = phat_plus[m, kp]
                    cm = phat_minus[m, kp]
                    if cp != 0.0:
                        acc -= gamma * cp * complex(table.coefficient(n - m, k - kp))
                    if cm != 0.0:
                        acc -= gamma * cm * complex(table.coefficient(n + m, k - kp))
            out[(n, k)] = acc
    return LaurentPSeries(out, K, lambda k: -k, n_cap)


def pseries_inv(c):
    """Multiplicative inverse of a p-series with c[0] != 0."""
    c = np.asarray(c, dtype=complex)
    if c[0] == 0:
        raise DomainError("series has no inverse: zero constant term")
    out = np.zeros_like(c)
    out[0] = 1.0 / c[0]
    for k in range(1, len(c)):
        out[k] = -sum(c[j] * out[k - j] for j in range(1, k + 1)) / c[0]
    return out


def pseries_log(c):
    """log of a p-series with c[0] = 1, via L' C = C' term matching."""
    c = np.asarray(c, dtype=complex)
    if abs(c[0] - 1.0) > 1e-12:
        raise DomainError("log series needs constant term 1")
    out = np.zeros_like(c)
    for k in range(1, len(c)):
        out[k] = c[k] - sum(j * out[j] * c[k - j] for j in range(1, k)) / k
    return out


def gauge_eps_series(tableII: PSeriesTable):
    """Eps_k of the a_{0,k} = 0 gauge at the same kappa: kappa * k * [log C]_k.

    Exact at every kappa (not just the limit); follows from transferring the
    gauge factor C through the -kappa p d_p term.
    """
    logc = pseries_log(tableII.constant_part())
    kap = complex(tableII.kappa)
    out = np.array([kap * k * logc[k] for k in range(tableII.K + 1)])
    out[0] = complex(tableII.eps[0])
    return out


def _neville(xs, ys):
    table = [list(ys)]
    for lev in range(1, len(xs)):
        row = []
        for i in range(len(xs) - lev):
            num = -xs[i + lev] * table[lev - 1][i] + xs[i] * table[lev - 1][i + 1]
            row.append(num / (xs[i] - xs[i + lev]))
        table.append(row)
    return table[-1][0]


def eigenvalue_from_gauge(s, gamma, K: int, n_cap: int = 16,
                          kappas: Optional[Sequence[complex]] = None):
    """Variant-I eigenvalue series recovered from Variant-II constant parts.

    Evaluates kappa * k * [log C^{II}]_k on a shrinking ladder of imaginary
    kappa values and extrapolates kappa -> 0 by Neville's scheme.  The ladder
    stops at 2^-10: the Variant-II coefficients grow like kappa^{-k}, so
    smaller kappa trades truncation error for roundoff.
    """
    if kappas is None:
        kappas = [1j * 2.0 ** (-j) for j in range(4, 11)]
    xs = [abs(k) for k in kappas]
    series = []
    for kap in kappas:
        t2 = solve_variant_II(s, gamma, kap, K, n_cap)
        series.append(gauge_eps_series(t2))
    out = np.zeros(K + 1, dtype=complex)
    out[0] = series[0][0]
    for k in range(1, K + 1):
        out[k] = _neville(xs, [ser[k] for ser in series])
    return out
