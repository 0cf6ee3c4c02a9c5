import numpy as np
import pytest

from ellipcmr.domain import RuijsenaarsParams
from ellipcmr.errors import PoleError
from ellipcmr.gamma import elliptic_gamma, ground_state_psi0, weight_W, weight_Wrel
from ellipcmr.theta import theta_q


class TestEllipticGamma:
    def test_shift_identity(self):
        par = RuijsenaarsParams(p=0.1, q=0.1, t=0.3)
        z = 0.8
        lhs = elliptic_gamma(par.q * z, par)
        rhs = theta_q(z, par.p) * elliptic_gamma(z, par)
        assert abs(lhs - rhs) <= 1e-13 * abs(rhs)

    def test_p_zero_single_product(self):
        par = RuijsenaarsParams(p=0.0, q=0.2, t=0.3)
        z = 0.5 + 0.1j
        direct = 1.0 + 0.0j
        qm = 1.0
        for _ in range(200):
            direct /= (1.0 - qm * z)
            qm *= par.q
        assert abs(elliptic_gamma(z, par) - direct) <= 1e-13 * abs(direct)

    def test_reflection(self):
        par = RuijsenaarsParams(p=0.1, q=0.1, t=0.3)
        z = 0.6 + 0.2j
        prod = elliptic_gamma(par.p * par.q / z, par) * elliptic_gamma(z, par)
        assert abs(prod - 1.0) <= 1e-13

    def test_pole_rejected(self):
        par = RuijsenaarsParams(p=0.1, q=0.2, t=0.3)
        with pytest.raises(PoleError):
            elliptic_gamma(1.0, par)       # denominator factor n = m = 0
        with pytest.raises(PoleError):
            elliptic_gamma(0.0, par)


class TestWeights:
    def test_trig_two_point_closed_form(self):
        z = np.exp(1j * np.array([0.7, 2.1]))
        w = weight_W(z, 1.0, 0.0)
        expect = (2 - z[0] / z[1] - z[1] / z[0]).real
        assert abs(w - expect) <= 1e-14 * abs(expect)
        assert w >= 0.0

    def test_nonnegative_on_torus(self, dom):
        for j in range(8):
            z = np.exp(1j * np.array([0.3 + 0.4 * j, 2.0 - 0.3 * j]))
            assert weight_W(z, 1.3, dom.p) >= 0.0

    def test_matches_ground_state_square(self, dom):
        x = np.array([0.9, 0.2, -0.8])   # real ordered
        z = np.exp(1j * np.pi * x / dom.ell)
        g = 1.3
        w = weight_W(z, g, dom.p)
        psi0 = ground_state_psi0(x, g, dom)
        assert abs(w - abs(psi0) ** 2) <= 1e-10 * abs(w)

    def test_coincident_arguments_rejected(self, dom):
        with pytest.raises(PoleError):
            weight_W(np.array([1.0 + 0j, 1.0 + 0j]), 1.0, dom.p)

    def test_unimodularity_required(self, dom):
        with pytest.raises(PoleError):
            weight_W(np.array([1.2 + 0j, 1.0 + 0j]), 1.0, dom.p)

    def test_relativistic_weight_t_one(self):
        par = RuijsenaarsParams(p=0.1, q=0.2, t=1.0)
        z = np.exp(1j * np.array([0.4, 1.5]))
        assert weight_Wrel(z, par) == 1.0

    def test_relativistic_weight_real(self):
        par = RuijsenaarsParams(p=0.05, q=0.2, t=0.4)
        z = np.exp(1j * np.array([0.4, 1.5]))
        w = weight_Wrel(z, par)
        assert isinstance(w, float) and w > 0.0
