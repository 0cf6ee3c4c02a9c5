"""Bethe-ansatz eigenfunctions of the Lame equation, with certificates.

The double-Bloch ansatz psi(x) = e^{xi x} prod_j vt1(x - t_j)/vt1(x) solves
(-d^2/dx^2 + n(n+1) wp1(x)) psi = E psi once the roots satisfy the Bethe
system.  Run:  python demos/02_lame_bethe.py
"""

import numpy as np

from ellipcmr import EllipticDomain, bloch_multipliers, hermite_psi, solve_bethe
from ellipcmr.bethe import saddle_G_gradient

dom = EllipticDomain.from_nome(ell=2.0, p=0.05)

for n in (1, 2, 3):
    st = solve_bethe(n, dom)
    print(f"n = {n}  (potential n(n+1) wp1 = {n * (n + 1)} wp1)")
    for j, t in enumerate(st.roots):
        print(f"   t_{j + 1} = {t:.10f}")
    print(f"   xi = {st.xi:.10g}   E = {st.energy:.10g}")
    print(f"   certificates: bethe {st.bethe_residual:.1e}, ode {st.ode_residual:.1e}, "
          f"xi {st.xi_residual:.1e}, energy spread {st.energy_spread:.1e}")
    grad = saddle_G_gradient(st.roots, st.xi, dom)
    print(f"   saddle-point gradient of G: {np.max(np.abs(grad)):.1e}")
    print(f"   doubly periodic branch (Wronskian test): {st.degenerate}")
    b_ell, b_delta = bloch_multipliers(st.roots, st.xi, dom)
    print(f"   Bloch multipliers: B_ell = {b_ell:.6g}, B_delta = {b_delta:.6g}\n")

# The n = 1 family: every t is a root and E(t) + wp1(t) is constant
from ellipcmr import wp1

print("n = 1 family, E(t) + wp1(t):")
for c in (0.25, 0.4, 0.55):
    st = solve_bethe(1, dom, seed=[c * dom.ell])
    print(f"   t = {c} ell: {complex(st.energy + wp1(st.roots[0], dom)):.10g}")

# Double-Bloch property in action
st = solve_bethe(2, dom)
x = 0.43 * dom.ell + 0.2j
ratio = hermite_psi(x + 2 * dom.ell, st.roots, st.xi, dom) / hermite_psi(x, st.roots, st.xi, dom)
print(f"\npsi(x + 2 ell)/psi(x) = {ratio:.10g} = e^(2 ell xi) = "
      f"{np.exp(2 * dom.ell * st.xi):.10g}")
