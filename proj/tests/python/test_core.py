import math

import numpy as np
import pytest

import critprm


def test_constants():
    assert critprm.gamma_star(2) == pytest.approx(0.5992373341)
    assert critprm.p_star(11) == pytest.approx(0.04794969)
    with pytest.raises(IndexError):
        critprm.gamma_star(13)


def test_critical_radius_formula():
    assert critprm.critical_radius(2, 1e4) == pytest.approx(critprm.gamma_star(2) / 100)


def test_sample_ppp_shape_and_determinism():
    a = critprm.sample_ppp(500, 3, 7)
    b = critprm.sample_ppp(500, 3, 7)
    assert a.ndim == 2 and a.shape[1] == 3
    assert np.array_equal(a, b)
    assert ((a >= 0) & (a <= 1)).all()


def test_component_sizes():
    pts = np.array([[0.0, 0.0], [0.1, 0.0], [0.9, 0.9]])
    assert critprm.component_sizes(pts, 0.2) == [2, 1]
    assert critprm.component_sizes(pts, 2.0) == [3]


def test_plan_empty_square():
    r = critprm.plan("empty-hypercube:2", "prm", 2000, 3 * critprm.critical_radius(2, 2000), 2.0, 1)
    assert r["success"]
    assert r["cost"] >= 0.8 * math.sqrt(2) - 1e-12
    assert r["path"].shape[1] == 2


def test_plan_scenario_error():
    with pytest.raises(critprm.ScenarioError):
        critprm.plan("no-such-scenario", "prm", 100, 0.1, 0.1, 1)


def test_component_table_rows():
    rows = critprm.component_table([2], [1000], ["r10"], 3, 5)
    assert len(rows) == 1
    assert rows[0]["largest_fraction_mean"] > 0.99


def test_headers():
    assert critprm.RECORDS_COLUMNS[0] == "scenario"
    assert "simplified_cost" in critprm.RECORDS_COLUMNS
    assert "radius_label" in critprm.AGGREGATES_COLUMNS
