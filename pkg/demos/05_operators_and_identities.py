"""Operator zoo: kernel identities, deformed duality, Calogero's trick, and
the relativistic difference operator.

Run:  python demos/05_operators_and_identities.py
"""

import numpy as np

from ellipcmr import (EllipticDomain, KernelSpec, RuijsenaarsParams, SmoothField,
                      apply_deformed_ecs, apply_ecs, apply_generalized_ecs,
                      apply_ruijsenaars_D, fit_nonstationary_E, ground_state_field,
                      heat_constant_c0, kernel_identity_residual)
from ellipcmr.fields import plane_wave

dom = EllipticDomain.from_nome(ell=2.0, p=0.1)
g = 1.4

# Generalized kernel identity: the residual is the constant C_{N,M} ~ (N - M)
print("kernel-identity residual R (constant, proportional to N - M):")
for (N, M) in ((2, 2), (2, 1), (2, 0), (3, 1)):
    vals = [kernel_identity_residual(
        KernelSpec(N, M, g),
        np.array([0.9, 0.1, -0.7])[:N] + 0.04 * j,
        np.array([0.55, -0.62, 1.2])[:M] + 0.06 * j, dom) for j in range(3)]
    spread = max(abs(v - vals[0]) for v in vals)
    print(f"   (N,M)=({N},{M}): R = {vals[0]:.8g}   spread over configs {spread:.1e}")

# (N,0) ties to the ground-state factor solving the kappa = N g equation
psi0 = ground_state_field(2, g, dom)
E = fit_nonstationary_E(psi0, 2 * g, [0.9, 0.1], g, dom)
print(f"\npsi0 generalized eigenvalue (N=2, kappa=2g): {E:.8g} = g^2 c0 = "
      f"{g * g * heat_constant_c0(dom):.8g}")

# Deformed model: swapping families swaps g <-> 1/g
psi = plane_wave([0.5, 0.2])
psi_sw = SmoothField(value=lambda u: psi(u[::-1]),
                     d1=lambda u, i: psi.d1(u[::-1], 1 - i),
                     d2=lambda u, i: psi.d2(u[::-1], 1 - i))
a = apply_deformed_ecs(psi, [0.4], [1.1], g, dom)
b = apply_deformed_ecs(psi_sw, [1.1], [0.4], 1 / g, dom)
print(f"\ndeformed duality H(g) + g H(1/g): {abs(a + g * b):.2e}")

# Calogero's trick: shifting a family by i delta is the generalized model
k = np.array([0.4, -0.2, 0.9])
psi3 = plane_wave(k)
xx, yy = np.array([0.5, 1.4]), np.array([-0.3])
sub = lambda u: np.concatenate([u[:2], [u[2] - 1j * dom.delta]])
psi_sub = SmoothField(value=lambda u: psi3(sub(u)),
                      d1=lambda u, i: psi3.d1(sub(u), i),
                      d2=lambda u, i: psi3.d2(sub(u), i))
lhs = apply_generalized_ecs(psi_sub, xx, [], yy, [], 1.5, dom)
rhs = apply_ecs(psi3, np.concatenate([xx, yy - 1j * dom.delta]), 1.5, dom)
print(f"Calogero-trick evaluation match: {abs(lhs - rhs):.2e}")

# Relativistic difference operator at p = 0: Macdonald spectrum
par = RuijsenaarsParams(p=0.0, q=0.31, t=0.47)
z = np.exp(1j * np.array([0.3, 1.7]))
d0 = apply_ruijsenaars_D(lambda zz: 1.0, z, par)
e1 = lambda zz: zz[0] + zz[1]
d1 = apply_ruijsenaars_D(e1, z, par) / e1(z)
print(f"\nD at p=0 on the Macdonald basis: D 1 = {d0:.6g} (1 + t = {1 + par.t}),"
      f"  D e1/e1 = {d1:.6g} (q + t = {par.q + par.t})")
