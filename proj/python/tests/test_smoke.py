import json
import math

import numpy as np
import pytest

import corruga


def test_builtin_names():
    names = corruga.builtin_names()
    assert "eggbox" in names and "plane" in names


def test_plane_dims():
    a = corruga.analyze(corruga.Chart.builtin("plane"), resolution=8)
    assert a.dims == [0, 3]
    assert not a.ambiguous
    assert len(a.chi_basis) == 3


def test_eggbox_membrane_strain():
    a = corruga.analyze(corruga.Chart.builtin("eggbox"), resolution=16)
    assert a.dims == [1, 2]
    E = np.asarray(a.E_basis[0])
    E = E / E[0, 0]
    assert np.allclose(E, np.diag([1.0, -1.0]), atol=1e-6)
    report = json.loads(a.report_json())
    assert report["dims"] == [1, 2]


def test_chart_json_round_trip():
    c = corruga.Chart.builtin("miura")
    c2 = corruga.Chart.from_json(c.to_json())
    assert np.allclose(c.evaluate(0.3, 1.1), c2.evaluate(0.3, 1.1))


def test_warping_sections():
    assert corruga.dislocation(corruga.square_section(1.0), 2.0) == pytest.approx(-4.0)
    circle = corruga.circle_section(1.0, 4096)
    assert corruga.dislocation(circle, 1.0) == pytest.approx(-2 * math.pi, rel=1e-5)
    s, w = corruga.warping(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]), 1.0)
    assert len(s) == len(w) == 3
    assert w[0] == 0.0


def test_open_section_rejected_as_closed():
    with pytest.raises(ValueError):
        corruga.dislocation(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]), 1.0)


def test_verify_warping_suite():
    results = corruga.verify("warping")
    assert [r["id"] for r in results] == [11]
    assert results[0]["passed"]
    assert results[0]["line"].startswith("PASS")
