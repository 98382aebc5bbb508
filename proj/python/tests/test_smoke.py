import numpy as np
import pytest

import qcorr


def test_bell_state_quantities():
    bell = qcorr.max_entangled(2)
    assert bell.rho.shape == (4, 4)
    assert (bell.d_A, bell.d_B) == (2, 2)
    n = qcorr.negativity(bell)
    assert n["value"] == pytest.approx(0.5)
    assert n["n_minus"] == 1
    assert qcorr.discord(bell, p=2)["value"] == pytest.approx(0.5, abs=1e-8)
    assert qcorr.discord(bell, p=1)["value"] == pytest.approx(1.0, abs=1e-6)


def test_negativity_matches_numpy_partial_transpose():
    rng = np.random.default_rng(7)
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    st = qcorr.State(rho, 2, 3, "random")
    # T_A by reshaping: (i, j, k, l) -> (k, j, i, l)
    pt = rho.reshape(2, 3, 2, 3).transpose(2, 1, 0, 3).reshape(6, 6)
    assert np.allclose(qcorr.partial_transpose(rho, 2, 3), pt)
    expected = (np.abs(np.linalg.eigvalsh(pt)).sum() - 1) / 2
    assert qcorr.negativity(st)["value"] == pytest.approx(expected, abs=1e-12)


def test_state_round_trip_and_validation():
    st = qcorr.werner(3, -0.5)
    back = qcorr.state_from_dict(st.to_dict())
    assert np.array_equal(back.rho, st.rho)
    assert back.label == st.label
    with pytest.raises(ValueError):
        qcorr.State(np.eye(4), 2, 2)  # trace 4
    with pytest.raises(ValueError):
        qcorr.werner(3, 2.0)
    with pytest.raises(ValueError):
        qcorr.discord(st, side="C")


def test_rebipartition_keeps_the_matrix():
    w = qcorr.werner(8, -1.0)
    r = qcorr.rebipartition(w, 2, 32)
    assert (r.d_A, r.d_B) == (2, 32)
    assert np.array_equal(r.rho, w.rho)
    assert qcorr.negativity(r)["n_minus"] == 10


def test_bound_report_margins():
    rep = qcorr.verify_bounds(qcorr.max_entangled(2))
    assert rep["min_margin"] >= -1e-6
    assert rep["bounds"]["d2_wn"] == pytest.approx(0.25)
    assert {c["name"] for c in rep["checks"]} >= {"D1 >= bound_wn", "D2 >= N^2/n_minus"}


def test_sweep_is_deterministic():
    a = qcorr.sweep("werner", [-1.0, 0.0, 1.0], d_A=3)
    b = qcorr.sweep("werner", [-1.0, 0.0, 1.0], d_A=3)
    assert a == b
    assert len(a["reports"]) == 3
    assert qcorr.sweep("werner", [])["reports"] == []


def test_certified_robustness_detects_ppt_entanglement():
    r = qcorr.random_robustness_certified(qcorr.horodecki_3x3(0.3), restarts=50)
    assert r["value"] > 1e-3
    assert r["witness"]["certificate"]["certified"]
