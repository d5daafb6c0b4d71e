import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from tetradcalc import algebra as A


def test_metric_and_epsilon_conventions():
    assert np.array_equal(A.ETA @ A.ETA, np.eye(4))
    assert A.EPS_UP[0, 1, 2, 3] == 1 and A.EPS_DOWN[0, 1, 2, 3] == -1
    assert A.EPS_UP[1, 0, 2, 3] == -1
    assert A.epsilon_contraction_residual() == 0.0


def test_clifford_identities_exact():
    assert A.clifford_identity_residual() < 1e-14
    assert A.anticommutator_residual() < 1e-14


def test_clifford_detects_flipped_orientation():
    assert A.clifford_identity_residual(eps_up=-A.EPS_UP) > 0.5


def test_clifford_detects_flipped_signature():
    assert A.clifford_identity_residual(eta=-A.ETA) > 0.5


def test_pauli_traces():
    assert A.pauli_trace_residual() < 1e-14
    assert A.pauli_trace(A.SIGMA_BAR_LOW[0], A.SIGMA_LOW[0]) == 2
    # direct 2x2 products: sb_1 s_2 sb_1 s_2 with lowered indices
    direct = np.trace(A.SIGMA_BAR_LOW[1] @ A.SIGMA_LOW[2] @ A.SIGMA_BAR_LOW[1] @ A.SIGMA_LOW[2])
    assert abs(direct - (-2)) < 1e-15
    assert abs(A.pauli_trace(A.SIGMA_BAR_LOW[1], A.SIGMA_LOW[2], A.SIGMA_BAR_LOW[1], A.SIGMA_LOW[2]) + 2) < 1e-15


def test_gamma5_and_spinor_metric():
    assert np.allclose(A.GAMMA5, np.diag([-1, -1, 1, 1]))
    assert np.allclose(A.GAMMA5 @ A.GAMMA5, np.eye(4))
    assert np.allclose(A.EPS2 @ A.EPS2, -np.eye(2))
    assert np.allclose(A.EPS2.T, -A.EPS2)


def test_chiral_blocks():
    for a in range(4):
        assert np.array_equal(A.GAMMA[a][:2, 2:], A.SIGMA_BAR[a])
        assert np.array_equal(A.GAMMA[a][2:, :2], A.SIGMA[a])
    assert np.array_equal(A.SIGMA[0], A.SIGMA_BAR[0])


def test_hat_example():
    assert np.array_equal(A.hat([1, 0, 0, 2]), [3, -1, 0, 0])


@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=8, max_size=8))
def test_hat_round_trip(vals):
    v = np.array(vals[:4]) + 1j * np.array(vals[4:])
    assert np.allclose(A.unhat(A.hat(v)), v, atol=1e-12)
