import math

import pytest

import gdof


def test_closed_form():
    r = gdof.gdof(1, 2, 0.5, 0.2)
    assert math.isclose(r.value, 0.8)
    assert r.regime == "WEAK"
    assert r.face_id == 1
    assert math.isclose(gdof.gdof(1, 2, 1.4, 1.1).value, 5 / 6)


def test_errors():
    with pytest.raises(gdof.BoundaryError):
        gdof.gdof(1, 2, 1.0, 0.5)
    with pytest.raises(ValueError):
        gdof.gdof(1, 2, 0.2, 0.5)


def test_prelog():
    assert math.isclose(gdof.predicted_prelog(2, 5, [1.0, 0.6, 0.2]), 3.4)


def test_rates():
    lo = gdof.achievable_rate(1, 2, 1.5, 0.5, 1e6, seed=1)
    hi = gdof.achievable_rate(1, 2, 1.5, 0.5, 1e9, seed=1)
    assert 0.9 < (hi - lo) / math.log2(1e3) < 1.1
    value, label, per = gdof.outer_bound(1, 2, 0.9, 0.7, 1e6)
    assert label in per
    assert value == min(per.values())


def test_det_and_sweep():
    cap, term = gdof.det_capacity(1, 2, 0.5, 0.2, 10)
    assert cap == 8
    assert term == "term1"
    csv = gdof.sweep(step=0.5)
    lines = csv.strip().splitlines()
    assert lines[0] == "alpha1,alpha2,regime,gdof,active_term,face_id"
    assert len(lines) > 1
