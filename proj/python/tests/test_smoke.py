import json
import math

import numpy as np
import pytest

import vtsi


def test_cases_listed():
    names = vtsi.cases()
    assert "case1" in names and "case6-irregular" in names
    assert vtsi.case_description("case5")


def test_simply_supported_frequency():
    spec = vtsi.BridgeSpec()
    spec.spans = [vtsi.SpanSpec(30.0, 40)]
    spec.E, spec.I, spec.mu = 29e9, 8.65, 36000.0
    spec.ends = vtsi.EndCondition.simply_supported
    f = vtsi.natural_frequencies(vtsi.assemble_bridge(spec), 1)[0]
    exact = (math.pi / 30.0) ** 2 * math.sqrt(29e9 * 8.65 / 36000.0) / (2 * math.pi)
    assert f == pytest.approx(exact, rel=1e-4)


def test_car_matrices():
    car = vtsi.CarSpec()
    car.m_c, car.I_c, car.m_w = 60000.0, 1.125e6, 1000.0
    car.k_s, car.c_s, car.l_c, car.l_ct = 5e6, 27000.0, 15.0, 20.0
    train = vtsi.build_train([car, car])
    assert train.M.shape == (8, 8)
    assert np.allclose(train.K, train.K.T)
    assert train.weight == pytest.approx(2 * 62000.0 * 9.81)
    assert train.wheel_offsets == [0.0, 15.0, 20.0, 35.0]


def test_lcp():
    A = np.array([[2.0, 0.5], [0.5, 1.0]])
    z, w = vtsi.lcp_solve(A, np.array([1.0, -1.0]))
    assert np.all(z >= 0) and np.all(w >= -1e-12)
    assert abs(z @ w) < 1e-12


def test_irregularity_normalized():
    prof = vtsi.generate_irregularity(1, x_to=60.0, zero_after=60.0)
    x = np.linspace(0.0, 60.0, 6001)
    assert np.max(np.abs(prof(x))) == pytest.approx(2.7e-3, rel=1e-9)
    assert vtsi.psd(np.array([0.1, 1.0])).shape == (2,)


def test_bspline_partition_of_unity():
    knots = vtsi.open_uniform_knots(8)
    for t in np.linspace(0.0, 5.0, 11):
        assert sum(vtsi.bspline_basis(knots, i, 4, t) for i in range(8)) == pytest.approx(1.0, abs=1e-12)


def test_short_run():
    cfg = vtsi.case_config("case2")
    cfg.t_end = 0.05
    cfg.bridge.spans = [vtsi.SpanSpec(30.0, 10), vtsi.SpanSpec(30.0, 10)]
    trace = vtsi.run(cfg)
    assert len(trace.t) == 51
    assert trace.contact_forces.shape == (51, 2)
    assert np.allclose(trace.column("lambda_1"), trace.contact_forces[:, 0])
    assert trace.header()[0] == "t"
    again = vtsi.run(cfg.to_json())
    assert np.array_equal(again.contact_forces, trace.contact_forces)
    assert json.loads(cfg.to_json())["name"] == "case2"


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        vtsi.run('{"name": "x", "colour": 1}')
