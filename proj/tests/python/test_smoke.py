import cmath
import math

import pytest

import rayland as rl


def test_polynomial_basics():
    f = rl.Polynomial.quadratic(1j)
    assert f.degree == 2
    assert f(1.0) == 1 + 1j
    assert f.derivative(2.0) == 4.0
    assert rl.Polynomial.from_dict(f.to_dict()) == f
    with pytest.raises(rl.DomainError):
        rl.Polynomial(2, [])


def test_portraits():
    p = rl.quadratic_portrait("1/6")
    assert p == {"degree": 2, "blocks": [["1/12", "7/12"]]}
    assert rl.validate_portrait(p)["valid"]
    bad = rl.validate_portrait({"degree": 3, "blocks": [["0", "1/2"]]})
    assert not bad["valid"] and not bad["cp1"]
    assert rl.classify_portrait({"degree": 2, "blocks": [["0", "1/2"]]}) == "ContainsPeriodic"
    assert len(rl.enumerate_portraits(2, 4)) > 0


def test_green_and_bottcher():
    f = rl.Polynomial.quadratic(-2.0)
    z = 3.0
    # Chebyshev: psi(z) = (z + sqrt(z^2 - 4)) / 2
    psi = (z + math.sqrt(z * z - 4)) / 2
    assert rl.green(f, z) == pytest.approx(math.log(psi), abs=1e-12)
    assert abs(rl.bottcher(f, z) - psi) < 1e-10
    g = rl.Polynomial.quadratic(1j)
    w = 0.3 + 2j
    assert rl.green(g, g(w)) == pytest.approx(2 * rl.green(g, w), abs=1e-12)


def test_rays():
    f = rl.Polynomial.quadratic(-2.0)
    assert abs(rl.landing_point(f, "0") - 2.0) < 1e-8
    r = rl.trace_ray(rl.Polynomial.quadratic(-6.0), "1/4")
    assert r["terminal"] == "bifurcated"
    assert len(r["points"]) == len(r["potential"])
    with pytest.raises(rl.DomainError):
        rl.landing_point(rl.Polynomial.quadratic(-6.0), "0")


def test_shift_locus_round_trip():
    cubic = {"degree": 3, "blocks": [["1/9", "4/9", "7/9"]]}
    f = rl.solve_f_r(cubic, 1.0)
    assert rl.portrait_of(f) == cubic
    for _, rate in rl.critical_value_rates(f):
        assert rate == pytest.approx(1.0, abs=1e-8)
    diag = rl.landing_probe(rl.quadratic_portrait("1/2"), 1e-4, 1e-4)
    assert diag["verdict"] == "landed"
    c = complex(*diag["extrapolated_limit"]["lower"][0])
    assert abs(c + 2) < 1e-4


def test_geometry():
    assert rl.shape([0, 1, 1 + 1j, 1j], 0.5 + 0.5j) == pytest.approx(math.sqrt(2))
    assert rl.modulus_concentric(1, math.exp(2 * math.pi)) == pytest.approx(1.0)
    assert rl.area_rho_star_annulus(1, math.e) == pytest.approx(1 / (2 * math.pi), rel=1e-9)
    sys = [{"label": [10, 0], "inner": {"c": [10, 0], "r": 1}, "mid": {"c": [10, 0], "r": 2},
            "outer": {"c": [10, 0], "r": 60}}]
    assert rl.validate_m_nested(sys, 0.5)["pass"]
    levels = rl.preimage_components(rl.Polynomial.power(2), 4.0, 1.0, 1)
    assert len(levels[0]) == 2
    rep = rl.backward_stability_probe(rl.Polynomial.power(2), 1.0, 0.1, 4, 0, 1)
    assert rep["degree_sums_ok"] and rep["diameters_decreasing"]
    with pytest.raises(rl.DomainError):
        rl.area_rho_star_disk(0.5, 1.0)
