# Copyright 2026 The sangernet Authors
# SPDX-License-Identifier: Apache-2.0

import numpy as np
import pytest

import sangernet as sn


def _data(d=6, n=2000, gap=0.6, seed=3):
    return sn.center(sn.generate_gaussian(d, n, sn.geometric_spectrum(d, gap), seed))


def test_sanger_direction_hand_value():
    c = np.diag([3.0, 2.0, 1.0])
    x = np.array([[2.0], [0.0], [0.0]])
    np.testing.assert_allclose(sn.sanger_direction(c, x), [[-18.0], [0.0], [0.0]])


def test_metropolis_cycle4_beta():
    w = sn.metropolis_weights(4, sn.graph_edges("cycle", 4))
    np.testing.assert_allclose(w.sum(axis=1), 1.0, atol=1e-12)
    assert sn.mixing_beta(w) == pytest.approx(1 / 3, abs=1e-10)


def test_center_example():
    y = sn.center(np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]))
    np.testing.assert_allclose(y, [[-1, 0, 1], [-1, 0, 1]])


def test_gha_matches_numpy_eigenvectors():
    c = np.diag([3.0, 2.0, 1.0])
    init = np.linalg.qr(np.random.default_rng(0).normal(size=(3, 2)))[0]
    x, flags = sn.gha_run(c, init, 0.05, 3000)
    vals, vecs = sn.orthogonal_iteration(c, 2)
    np.testing.assert_allclose(vals, [3.0, 2.0])
    assert sn.avg_angle_error([x], vecs) < 1e-8
    assert "step_above_bound" in flags


def test_dsa_beats_local_and_is_deterministic():
    y = _data()
    a = sn.dsa_run(y, 5, 2, 0.2, 1500)
    b = sn.dsa_run(y, 5, 2, 0.2, 1500)
    assert a["error"] == b["error"]
    assert a["comm_units"][-1] == 1500
    assert a["error"][-1] < 1e-3 < a["error"][0]


def test_seqdistpm_and_dpgd_run():
    y = _data()
    s = sn.seqdistpm_run(y, 5, 2, tc=10, outer_iters=20)
    assert s["comm_units"][-1] == pytest.approx(40 * 10 / 2)
    assert s["phase"][-1] == 1
    d = sn.dpgd_run(y, 5, 2, 0.1, 500, topology="star")
    assert d["error"][-1] < d["error"][0]


def test_config_round_trip_and_errors():
    text = "M = 3\nd = 4\nK = 2\nN = 300\nT = 50\ntrials = 2\n"
    csv = sn.run_config(text)
    assert csv.startswith("comm_units,mean_error,std_error,n_trials\n")
    assert csv == sn.run_config(text)
    with pytest.raises(sn.SangernetError):
        sn.validate_config("eigengap = 1\n")
    assert sn.validate_config(text + "alpha = 9\n")
