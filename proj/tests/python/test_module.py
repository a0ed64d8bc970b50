import math

import numpy as np
import pytest

import pcr3bp


def test_dynamics():
    mu = pcr3bp.NOMINAL_MU
    assert pcr3bp.effective_potential((0.0, 0.0), 0.5) == pytest.approx(2.0)
    ex = pcr3bp.reference_example(1)
    assert pcr3bp.jacobi_constant(ex["initial"], pcr3bp.EXAMPLE_MU) == pytest.approx(ex["jacobi"], abs=1e-11)
    l4 = (0.5 - mu, math.sqrt(3) / 2)
    s = pcr3bp.field_sample(l4, mu, 2.9)
    assert s["delta_ln_f"] == pytest.approx(3 / (3 - mu + mu * mu - 2.9), rel=1e-12)
    rhs = pcr3bp.vector_field((l4[0], l4[1], 0.0, 0.0), mu)
    assert max(abs(x) for x in rhs) < 1e-12


def test_errors_carry_a_kind():
    with pytest.raises(pcr3bp.Error) as info:
        pcr3bp.propagate((0.5, 0.5, 0.0, 0.1), 0.0, pcr3bp.EXAMPLE_MU)
    assert info.value.args[0] == "empty-interval"
    with pytest.raises(pcr3bp.Error):
        pcr3bp.parse_orbit_json("garbage")


def test_propagate_and_orbit():
    ex = pcr3bp.reference_example(2)
    rows = pcr3bp.propagate(ex["initial"], ex["period"], pcr3bp.EXAMPLE_MU, samples=100)
    assert rows.shape == (101, 5)
    assert np.linalg.norm(rows[-1, 1:] - np.array(ex["initial"])) < 1e-8

    orbit = pcr3bp.detect_period(ex["initial"], pcr3bp.EXAMPLE_MU, (0.1, 0.5))
    assert abs(orbit.period - 0.30139544664015) <= 1e-6
    assert orbit.max_jacobi_drift <= 1e-9
    assert orbit.samples(64).shape == (64, 5)
    doc = pcr3bp.parse_orbit_json(orbit.to_json("pytest", 32))
    assert doc["period"] == orbit.period and len(doc["samples"]) == 32


def test_verify_example_4():
    orbit = pcr3bp.example_orbit(4)
    case = pcr3bp.classify(orbit)
    assert case["k"] == 3 and case["covering_index"] == 3 and case["sign"] == -1
    report = pcr3bp.verify(orbit)
    assert report["quadrature_status"] == "ok"
    assert abs(report["area_integral"] - -21.9944) <= 2e-2
    assert report["residual_identity"] <= 2e-2
    assert report["lifted_n"] == 3


def test_curves():
    s = np.linspace(0, 2 * np.pi, 200, endpoint=False)
    circle = np.column_stack([np.cos(s), np.sin(s)])
    assert pcr3bp.signed_area(circle) == pytest.approx(math.pi, abs=1e-3)
    assert pcr3bp.winding_number(circle, (0.0, 0.0)) == 1
    assert pcr3bp.is_simple(circle)
    twice = np.column_stack([8 * np.cos(2 * s), 8 * np.sin(2 * s)])
    lifted = pcr3bp.lift(twice, (0.0, 0.0), 2)
    assert np.allclose(np.hypot(lifted["beta"][:, 0], lifted["beta"][:, 1]), math.sqrt(8))
    value, err = pcr3bp.area_integral(circle * 0.1 + np.array([0.5, 0.5]), pcr3bp.NOMINAL_MU, -1.0)
    assert math.isfinite(value) and err < 1e-3


def test_l4():
    r4 = pcr3bp.l4_direction_analysis(pcr3bp.NOMINAL_MU, 2.9)
    r5 = pcr3bp.l4_direction_analysis(pcr3bp.NOMINAL_MU, 2.9, point="L5")
    assert r4["verdict"] == "clockwise only" and r4["radius"] > 0
    assert r5["position"][1] == -r4["position"][1]
