"""Hermite's Bethe-ansatz solutions of the Lame equation at n = -g in Z>=1.

The ansatz psi(x) = e^{xi x} prod_j vt1(x - t_j)/vt1(x) solves

    (-d^2/dx^2 + n(n+1) wp1(x)) psi = E psi

whenever the roots satisfy, for j = 1..n,

    sum_{k != j} ( zeta1(t_j - t_k) - zeta1(t_j) + zeta1(t_k) ) = 0,

with xi = sum_j zeta1(t_j).  The n residuals sum to zero identically (zeta1 is
odd), so the solution set is a curve; Newton steps use the least-squares
pseudo-inverse and homotopy in the nome seeds the iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .domain import DEFAULT_POLICY, EllipticDomain, TruncationPolicy
from .errors import (BranchError, ConvergenceError, DomainError,
                     EllipcmrError, PoleError)
from .fields import SmoothField
from .theta import theta1, theta1_logderiv, wp1

__all__ = [
    "BetheState", "bethe_residuals", "bethe_jacobian", "solve_bethe",
    "hermite_psi", "hermite_psi_field", "bloch_multipliers",
    "energy_from_roots", "saddle_G_value", "saddle_G_gradient",
]

# imaginary spread of the trigonometric seed roots, (ell/pi) ln(2+sqrt 3) per step
_SEED_SPREAD = math.log(2.0 + math.sqrt(3.0)) / math.pi


@dataclass(frozen=True)
class BetheState:
    """Converged Bethe data with its certificates."""

    n: int
    roots: tuple
    xi: complex
    energy: complex
    bethe_residual: float
    ode_residual: float
    xi_residual: float
    energy_spread: float
    energy_constant: complex
    wronskian: float

    @property
    def degenerate(self) -> bool:
        """Doubly-periodic eigenvalue: psi(x) and psi(-x) proportional."""
        return self.wronskian <= 1e-8


def _check_roots(t, dom):
    t = np.asarray(t, dtype=complex)
    for j in range(len(t)):
        if abs(theta1(t[j], dom)) < 1e-12:
            raise PoleError(f"root t_{j} on the period lattice")
        for k in range(j + 1, len(t)):
            if abs(theta1(t[j] - t[k], dom)) < 1e-12:
                raise PoleError(f"coincident roots t_{j}, t_{k}")
    return t


def bethe_residuals(t, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """The n left-hand sides of the Bethe system at roots t."""
    t = _check_roots(t, dom)
    n = len(t)
    zt = np.array([theta1_logderiv(tj, dom, pol) for tj in t])
    out = np.zeros(n, dtype=complex)
    for j in range(n):
        for k in range(n):
            if k != j:
                out[j] += theta1_logderiv(t[j] - t[k], dom, pol) - zt[j] + zt[k]
    return out


def bethe_jacobian(t, dom: EllipticDomain, pol: TruncationPolicy = DEFAULT_POLICY):
    """Analytic Jacobian d residual_j / d t_i (zeta1' = -wp1)."""
    t = np.asarray(t, dtype=complex)
    n = len(t)
    J = np.zeros((n, n), dtype=complex)
    wp_t = np.array([wp1(tj, dom, pol) for tj in t])
    for j in range(n):
        for i in range(n):
            if i == j:
                J[j, j] = sum(wp_t[j] - wp1(t[j] - t[k], dom, pol)
                              for k in range(n) if k != j)
            else:
                J[j, i] = wp1(t[j] - t[i], dom, pol) - wp_t[i]
    return J


def default_seed(n: int, dom: EllipticDomain):
    """Trigonometric-degeneration seed: real part ell, spread imaginary parts.

    For n = 2 these are the exact p = 0 roots; for larger n they sit close
    enough for Newton at a small starting nome.
    """
    return np.array([dom.ell * (1.0 + 1j * _SEED_SPREAD * (n + 1 - 2 * j))
                     for j in range(1, n + 1)], dtype=complex)


def _newton(t0, dom, pol, tol, max_iter):
    t = np.array(t0, dtype=complex)
    r = bethe_residuals(t, dom, pol)
    for _ in range(max_iter):
        if np.max(np.abs(r)) < tol:
            return t, float(np.max(np.abs(r)))
        step, *_ = np.linalg.lstsq(bethe_jacobian(t, dom, pol), -r, rcond=None)
        lam, nxt = 1.0, None
        for _ in range(25):
            try:
                tn = t + lam * step
                rn = bethe_residuals(tn, dom, pol)
                if np.max(np.abs(rn)) < np.max(np.abs(r)):
                    nxt = (tn, rn)
                    break
            except EllipcmrError:
                pass
            lam /= 2.0
        if nxt is None:
            break
        t, r = nxt
    res = float(np.max(np.abs(r)))
    if res >= tol:
        raise ConvergenceError(f"Bethe Newton stalled at residual {res:.3e}")
    return t, res


def solve_bethe(n: int, dom: EllipticDomain, seed: Optional[Sequence[complex]] = None,
                pol: TruncationPolicy = DEFAULT_POLICY, tol: float = 1e-12,
                max_iter: int = 50, homotopy_step: float = 1.5) -> BetheState:
    """Solve the Bethe system and certify the resulting eigenfunction.

    Without a seed, the system is first solved at a small nome (where the
    trigonometric seed is accurate) and the nome is continued geometrically to
    dom.p, Newton-correcting at each step.  One branch is returned per seed; no
    completeness claim is made.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if n == 1:
        t = np.array([seed[0] if seed is not None else
                      dom.ell * (0.31 + 0.07j)], dtype=complex)
        _check_roots(t, dom)
        return _certify(t, dom, pol, 0.0)

    if seed is not None:
        t, res = _newton(np.asarray(seed, dtype=complex), dom, pol, tol, max_iter)
        return _certify(t, dom, pol, res)

    # seed roots only fit inside |Im x| < 2 delta at a small enough nome
    p_fit = 0.5 * math.exp(-2.0 * math.pi * _SEED_SPREAD) ** (n - 1)
    p_start = min(dom.p if dom.p > 0 else p_fit, p_fit)
    steps = [p_start]
    while steps[-1] < dom.p:
        steps.append(min(steps[-1] * homotopy_step, dom.p))
    if dom.p == 0.0:
        steps = [0.0]
    t = default_seed(n, EllipticDomain.from_nome(dom.ell, steps[0]))
    res = math.inf
    for pk in steps:
        dk = EllipticDomain.from_nome(dom.ell, pk)
        t, res = _newton(t, dk, pol, tol, max_iter)
    return _certify(t, dom, pol, res)


def hermite_psi(x, roots, xi: complex, dom: EllipticDomain,
                pol: TruncationPolicy = DEFAULT_POLICY):
    """psi(x) = e^{xi x} prod_j vt1(x - t_j) / vt1(x)^n."""
    roots = np.asarray(roots, dtype=complex)
    x = np.asarray(x, dtype=complex)
    den = theta1(x, dom, pol) ** len(roots)
    if np.any(np.abs(den) < 1e-300):
        raise PoleError("x on the period lattice")
    num = np.prod([theta1(x - tj, dom, pol) for tj in roots], axis=0)
    return np.exp(xi * x) * num / den


def hermite_psi_field(roots, xi: complex, dom: EllipticDomain,
                      pol: TruncationPolicy = DEFAULT_POLICY,
                      reflect: bool = False) -> SmoothField:
    """One-coordinate field psi(+-x) with analytic first/second derivatives.

    psi'/psi = xi + sum_j zeta1(x - t_j) - n zeta1(x)
    psi''/psi = (psi'/psi)^2 - sum_j wp1(x - t_j) + n wp1(x).
    """
    roots = np.asarray(roots, dtype=complex)
    n = len(roots)
    s = -1.0 if reflect else 1.0

    def val(xv):
        return complex(hermite_psi(s * xv[0], roots, xi, dom, pol))

    def logd(x):
        return xi + sum(theta1_logderiv(x - tj, dom, pol) for tj in roots) \
            - n * theta1_logderiv(x, dom, pol)

    def d1(xv, i):
        return s * logd(s * xv[0]) * val(xv)

    def d2(xv, i):
        x = s * xv[0]
        ld = logd(x)
        curv = -sum(wp1(x - tj, dom, pol) for tj in roots) + n * wp1(x, dom, pol)
        return (ld * ld + curv) * val(xv)

    return SmoothField(value=val, d1=d1, d2=d2)


def bloch_multipliers(roots, xi: complex, dom: EllipticDomain):
    """(B_ell, B_delta) for psi: shifts by 2 ell and 2 i delta.

    B_ell = e^{2 ell xi} (the vt1 sign flips cancel between numerator and
    denominator); B_delta = e^{2 i delta xi} e^{i pi sum_j t_j / ell}.
    """
    roots = np.asarray(roots, dtype=complex)
    b_ell = np.exp(2.0 * dom.ell * xi)
    b_delta = np.exp(2j * dom.delta * xi) * np.exp(1j * math.pi * np.sum(roots) / dom.ell)
    return b_ell, b_delta


def _energy_grid(roots, dom):
    """Ten deterministic probe points off the lattice and away from the roots."""
    pts = []
    j = 0
    step = 0.0
    while len(pts) < 10:
        x = dom.ell * (0.083 + 0.0947 * j + step) + 0.11j * dom.ell
        j += 1
        ok = abs(theta1(x, dom)) > 1e-6
        for tj in roots:
            if abs(theta1(x - tj, dom)) < 1e-6:
                ok = False
        if ok:
            pts.append(x)
        elif j > 40:
            step += 0.0173
            j = 0
    return pts


def energy_from_roots(roots, xi: complex, dom: EllipticDomain,
                      pol: TruncationPolicy = DEFAULT_POLICY):
    """E from the operator quotient, certified x-independent over 10 points.

    E(x) = (-psi'' + n(n+1) wp1(x) psi)/psi; returns (E, spread, constant)
    where constant = E + (2n-1) sum_j wp1(t_j) is the root-independent shift
    in the closed-form energy report.
    """
    roots = np.asarray(roots, dtype=complex)
    n = len(roots)
    f = hermite_psi_field(roots, xi, dom, pol)
    gamma = n * (n + 1.0)    # g = -n, so g(g-1) = n(n+1)
    vals = []
    for x in _energy_grid(roots, dom):
        xv = np.array([x])
        vals.append((-f.second(xv, 0) + gamma * wp1(x, dom, pol) * f(xv)) / f(xv))
    vals = np.array(vals)
    E = vals[0]
    spread = float(np.max(np.abs(vals - E)))
    const = E + (2.0 * n - 1.0) * sum(wp1(tj, dom, pol) for tj in roots)
    return E, spread, const


def _certify(t, dom, pol, newton_res) -> BetheState:
    n = len(t)
    xi = sum(theta1_logderiv(tj, dom, pol) for tj in t)
    bres = float(np.max(np.abs(bethe_residuals(t, dom, pol)))) if n > 1 else 0.0
    E, spread, const = energy_from_roots(t, xi, dom, pol)

    f = hermite_psi_field(t, xi, dom, pol)
    gamma_points = [dom.ell * (0.21 + 0.12 * j) + 0.09j * dom.ell for j in range(5)]
    from .operators import lame_residual   # local import avoids a cycle
    ode = max(abs(lame_residual(f, E, x, -float(n), dom, pol)) / abs(f(np.array([x])))
              for x in gamma_points)

    # Bloch-ratio certificate for xi: psi(x + 2 ell)/psi(x) = e^{2 ell xi}
    x0 = dom.ell * (0.29 + 0.13j)
    ratio = hermite_psi(x0 + 2 * dom.ell, t, xi, dom, pol) / hermite_psi(x0, t, xi, dom, pol)
    xi_res = abs(ratio - np.exp(2.0 * dom.ell * xi)) / abs(np.exp(2.0 * dom.ell * xi))

    fm = hermite_psi_field(t, xi, dom, pol, reflect=True)
    xv = np.array([x0])
    wron = f(xv) * fm.first(xv, 0) - f.first(xv, 0) * fm(xv)
    scale = max(abs(f(xv) * fm(xv)), 1e-300)
    return BetheState(
        n=n, roots=tuple(np.asarray(t, dtype=complex)), xi=complex(xi), energy=complex(E),
        bethe_residual=bres, ode_residual=float(ode), xi_residual=float(xi_res),
        energy_spread=spread, energy_constant=complex(const),
        wronskian=float(abs(wron) / scale))


def saddle_G_value(t, xi: complex, dom: EllipticDomain,
                   pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """G(t) = sum_j (xi t_j - n ln vt1(t_j)) + sum_{j<k} ln vt1(t_j - t_k).

    Principal logarithms; every vt1 value must have positive real part, else
    the branch is ambiguous and a BranchError is raised (the gradient below is
    branch-free and always available).
    """
    t = _check_roots(t, dom)
    n = len(t)
    total = 0.0 + 0.0j
    for j in range(n):
        v = theta1(t[j], dom, pol)
        if v.real <= 0.0:
            raise BranchError("ln vt1(t_j) outside principal-branch domain")
        total += xi * t[j] - n * np.log(v)
    for j in range(n):
        for k in range(j + 1, n):
            v = theta1(t[j] - t[k], dom, pol)
            if v.real <= 0.0:
                raise BranchError("ln vt1(t_j - t_k) outside principal-branch domain")
            total += np.log(v)
    return complex(total)


def saddle_G_gradient(t, xi: complex, dom: EllipticDomain,
                      pol: TruncationPolicy = DEFAULT_POLICY):
    """dG/dt_j = xi - n zeta1(t_j) + sum_{k != j} zeta1(t_j - t_k)."""
    t = _check_roots(t, dom)
    n = len(t)
    out = np.zeros(n, dtype=complex)
    for j in range(n):
        out[j] = xi - n * theta1_logderiv(t[j], dom, pol) + sum(
            theta1_logderiv(t[j] - t[k], dom, pol) for k in range(n) if k != j)
    return out
