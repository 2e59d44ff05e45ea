import math

import numpy as np
import pytest

import detfield


def soliton():
    return detfield.realize_from_bound_states(detfield.ScatteringData([(1.0, math.sqrt(2.0))]))


def test_phi_of_single_bound_state():
    sys = detfield.realize_from_bound_states(detfield.ScatteringData([(1.0, 1.0)]))
    assert sys.dim == 1
    assert abs(detfield.phi(sys, math.log(2.0)) - 0.5) < 1e-15


def test_gramians_and_gap():
    sys = detfield.realize_from_bound_states(detfield.ScatteringData([(1.0, 1.0)]))
    g = detfield.gramians(sys, 0.5)
    assert g.Q.shape == (1, 1)
    assert abs(g.Q[0, 0] - math.exp(-1.0) / 2.0) < 1e-15
    assert detfield.det_gap(sys, 0.0) == pytest.approx(0.5, rel=1e-15)
    assert detfield.lyapunov_residual(sys, 0.5) < 1e-12


def test_general_system_from_numpy():
    a = np.array([[1.0, 0.2], [0.0, 2.0]], dtype=complex)
    b = np.array([[1.0], [0.5]], dtype=complex)
    c = np.array([[0.3, 0.8]], dtype=complex)
    sys = detfield.StateSpaceSystem(a, b, c)
    lam = 0.4 + 0.1j
    product = detfield.det_hankel(sys, 0.2, lam) * detfield.det_hankel(sys, 0.2, -lam)
    assert abs(detfield.det_square(sys, 0.2, lam) - product) < 1e-12
    assert detfield.det_gramian(sys, 0.2, 0.0) == 1.0
    with pytest.raises(detfield.InvalidArgument):
        detfield.StateSpaceSystem(-a, b, c)


def test_soliton_potential():
    sol = detfield.GLSolution(soliton())
    for x in (-1.0, 0.0, 1.5):
        assert detfield.potential_q_analytic(sol, x) == pytest.approx(-2.0 / math.cosh(x) ** 2, abs=1e-10)
        assert detfield.potential_q(sol, x) == pytest.approx(-2.0 / math.cosh(x) ** 2, abs=1e-6)


def test_hypothesis_violation_raises():
    sys = detfield.realize_from_bound_states(detfield.ScatteringData([(1.0, 2.0)]))
    assert not detfield.validate_hypotheses(sys).ok
    with pytest.raises(detfield.HypothesisViolation):
        detfield.det_gap(sys, 0.0)


def test_counts():
    cd = detfield.count_distribution([0.2, 0.5])
    assert sum(cd.probabilities) == pytest.approx(1.0, abs=1e-14)
    assert detfield.gap_probability(cd) == pytest.approx(0.4, abs=1e-14)
    assert cd.mean == pytest.approx(0.7, abs=1e-14)
    assert detfield.sample_count(cd, 7) == detfield.sample_count(cd, 7)


def test_tracy_widom_and_kdv():
    assert 0.0 < detfield.tw_gap(-2.0) < detfield.tw_gap(0.0) < 1.0
    data = detfield.ScatteringData([(1.0, math.sqrt(2.0))])
    assert detfield.kdv_potential(data, 0.0, 0.0) == pytest.approx(-2.0, abs=1e-10)
    assert detfield.kdv_pde_residual(data, 0.5, 0.1) < 1e-3


def test_verification_report():
    report = detfield.run_verification()
    assert report.all_passed()
    assert len(report.rows) >= 12
