from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gjms.backgrounds import Background, verify_spaceform_conditions
from gjms.core import AlgebraError
from gjms.series import R, RHO, TruncatedSeries

QE = Background.quasi_einstein(3, 2, 1)
GL = Background.gover_leitner(3, 2)


def leading(series, n):
    return [c.coeff(0) for c in series.coeffs[: n + 1]]


class TestConstruction:
    def test_validation(self):
        with pytest.raises(AlgebraError):
            Background.quasi_einstein(1, 2, 1)  # d < 2
        with pytest.raises(AlgebraError):
            Background.quasi_einstein(3, -1, 1)  # m < 0
        with pytest.raises(AlgebraError):
            Background.quasi_einstein(2, 0, 1)  # d + m = 2
        with pytest.raises(AlgebraError):
            Background("quasi_einstein", 3, F(2))  # missing lambda
        with pytest.raises(AlgebraError):
            Background("gover_leitner", 3, F(2), lam=F(1), mu=F(1))
        with pytest.raises(AlgebraError):
            Background("bogus", 3, F(2))

    def test_labels(self):
        assert QE.label() == "QE(d=3, m=2, lambda=1)"
        assert GL.label() == "GL(d=3, m=2)"

    def test_json_round_trip(self):
        for bg in (QE, GL, Background.quasi_einstein(4, F(1, 2), F(-1, 3))):
            assert Background.from_json(bg.to_json()) == bg

    def test_fractional_m(self):
        bg = Background.quasi_einstein(4, F(7, 3), F(1, 2))
        assert bg.dm == F(19, 3)


class TestExpansionData:
    def test_qe_traces_rho(self):
        # gtr = 2 d lam / (1 + lam rho) = 6 - 6 rho + 6 rho^2 - ... at lam = 1
        assert leading(QE.metric_trace(RHO, 2), 2) == [6, -6, 6]
        # mtr = m lam / (1 + lam rho)
        assert leading(QE.measure_trace(RHO, 2), 2) == [2, -2, 2]
        # trace_term = (d + m) lam / (1 + lam rho) at rho = 0
        assert QE.trace_term(RHO, 0).coeff(0).coeff(0) == 5

    def test_gl_traces_rho(self):
        # gtr = -d / (1 - rho/2),  mtr = (m/2) / (1 + rho/2)
        assert leading(GL.metric_trace(RHO, 2), 2) == [-3, F(-3, 2), F(-3, 4)]
        assert leading(GL.measure_trace(RHO, 2), 2) == [1, F(-1, 2), F(1, 4)]
        # drift trace at rho = 0 is (m - d)/2
        assert GL.trace_term(RHO, 0).coeff(0).coeff(0) == F(GL.m - GL.d, 2)

    def test_qe_trace_r_picture(self):
        # T(r) = -lam (d+m) r + O(r^3)
        t = QE.trace_term(R, 3)
        assert leading(t, 3) == [0, -5, 0, F(-5, 2)]

    def test_laplacian_factor(self):
        # c^-2 = (1 + rho)^-2 at lam = 1
        assert leading(QE.laplacian_factor(RHO, 3), 3) == [1, -2, 3, -4]
        # GL r picture: (1 + r^2/4)^-2
        assert leading(GL.laplacian_factor(R, 4), 4) == [1, 0, F(-1, 2), 0, F(3, 16)]

    def test_density_factor(self):
        # q^m c^d = (1 - r^2/4)^2 (1 + r^2/4)^3 = 1 + r^2/4 - r^4/8 + ...
        assert leading(GL.density_factor(4), 4) == [1, 0, F(1, 4), 0, F(-1, 8)]
        # QE: (1 - r^2/2)^(d+m) at lam = 1
        assert leading(QE.density_factor(2), 2) == [1, 0, F(-5, 2)]

    def test_flat_limit(self):
        flat = Background.quasi_einstein(3, 2, 0)
        assert flat.trace_term(RHO, 4).is_zero()
        assert flat.laplacian_factor(R, 4) == TruncatedSeries.constant(R, 1, 4)
        assert flat.density_factor(4) == TruncatedSeries.constant(R, 1, 4)

    def test_r_picture_parity(self):
        for bg in (QE, GL):
            assert all(c.is_zero() for c in bg.laplacian_factor(R, 7).coeffs[1::2])
            assert all(c.is_zero() for c in bg.density_factor(7).coeffs[1::2])
            assert all(c.is_zero() for c in bg.trace_term(R, 7).coeffs[0::2])

    def test_picture_consistency_chain_rule(self):
        # with rho = -r^2/2:  T_r(r) = -r * T_rho(-r^2/2),  LF_r(r) = LF_rho(-r^2/2)
        for bg in (QE, GL):
            t_rho = bg.trace_term(RHO, 10)
            expected_t = -(t_rho.substitute_rho().mul_var())
            assert bg.trace_term(R, 10) == expected_t.truncate(10)
            lf_rho = bg.laplacian_factor(RHO, 10)
            assert bg.laplacian_factor(R, 10) == lf_rho.substitute_rho().truncate(10)

    @settings(max_examples=25)
    @given(
        st.integers(2, 6),
        st.fractions(min_value=0, max_value=4, max_denominator=3),
        st.fractions(min_value=-2, max_value=2, max_denominator=4),
    )
    def test_picture_consistency_random_backgrounds(self, d, m, lam):
        if d + m == 2:
            return
        bg = Background.quasi_einstein(d, m, lam)
        t_rho = bg.trace_term(RHO, 6)
        assert bg.trace_term(R, 6) == (-(t_rho.substitute_rho().mul_var())).truncate(6)


class TestSpaceforms:
    def test_round_case_d2_m2(self):
        rep = verify_spaceform_conditions(2, 2, 1, 1, 1)
        assert rep.R_phi == 4
        assert rep.J_phi == F(2, 3)
        assert rep.P_coeff == F(1, 6)
        assert rep.is_quasi_einstein
        assert not rep.is_gover_leitner

    def test_hyperbolic_case_d3_m2(self):
        rep = verify_spaceform_conditions(3, 2, 1, -1, 1)
        assert rep.R_phi == -4
        assert rep.J_phi == F(-1, 2)
        assert rep.P_coeff == F(-1, 2)
        assert rep.is_gover_leitner
        assert not rep.is_quasi_einstein

    def test_m_zero_einstein_is_always_quasi_einstein(self):
        # with m = 0 the weighted Schouten is kappa/2 * g and J = d * kappa/2 / ... holds
        for d, kappa in [(3, 1), (4, F(-1, 2)), (5, F(2, 3))]:
            rep = verify_spaceform_conditions(d, 0, 0, kappa, 1)
            assert rep.P_coeff == F(kappa, 2)
            assert rep.is_quasi_einstein

    def test_f0_scaling(self):
        # mu and f0 enter only through mu / f0^2
        assert verify_spaceform_conditions(3, 2, 4, 1, 2) == verify_spaceform_conditions(3, 2, 1, 1, 1)

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(AlgebraError):
            verify_spaceform_conditions(2, 0, 1, 1, 1)
        with pytest.raises(AlgebraError):
            verify_spaceform_conditions(3, 2, 1, 1, 0)

    def test_json(self):
        rep = verify_spaceform_conditions(2, 2, 1, 1, 1)
        assert rep.to_json()["P_coeff"] == "1/6"
        assert rep.to_json()["is_quasi_einstein"] is True
