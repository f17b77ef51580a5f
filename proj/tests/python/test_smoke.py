import math

import pytest

import memfract


def test_gamma_and_version():
    assert memfract.__version__
    assert memfract.gamma(5.0) == 24.0
    assert math.isclose(memfract.gamma(0.5), math.sqrt(math.pi), rel_tol=1e-13)
    assert memfract.recip_gamma(0.0) == 0.0


def test_polynomial_fit_round_trip():
    p = memfract.Polynomial([0.5, -0.01, 2e-4])
    t = [float(k) for k in range(0, 100)]
    y = [p(x) for x in t]
    fit, stats = memfract.fit_polynomial(t, y, 2)
    assert all(math.isclose(fit(x), p(x), rel_tol=1e-9, abs_tol=1e-12) for x in t)
    assert math.isclose(stats.sst, stats.sse + stats.ssr, rel_tol=1e-9)


def test_fractional_derivative_integer_collapse():
    p = memfract.Polynomial([1.0, 2.0, 3.0])
    assert math.isclose(memfract.rl_derivative(p, 1.0, 2.0), 2.0 + 6.0 * 2.0, rel_tol=1e-12)
    gl = memfract.gl_derivative(lambda x: p(x), 0.5, 3.0)
    assert math.isclose(gl, memfract.rl_derivative(p, 0.5, 3.0), rel_tol=1e-3)


def test_model_eval_and_search():
    v = memfract.Polynomial([0.2, 0.3, -0.02])
    i = memfract.Polynomial([1e-9, 2e-10, -1e-11])
    model = memfract.MemfractanceModel.from_global(v, i, 10.0)
    assert math.isclose(model.eval(1.0, 1.0, 2.0) * i(2.0), v(2.0), rel_tol=1e-9)
    result = memfract.search(model, grid=11, t_points=128)
    assert 0.0 <= result["alpha1"] <= 2.0
    assert result["range"] >= 0.0


def test_zero_charge_is_infeasible():
    model = memfract.MemfractanceModel.from_global(memfract.Polynomial([1.0]), memfract.Polynomial([0.0]), 10.0)
    with pytest.raises(memfract.NoFeasibleCandidate):
        memfract.search(model, grid=3, t_points=64)


def test_reference_models_and_spikes():
    sweep = memfract.simulate_ideal_memristor(samples=128)
    assert len(sweep["t"]) == 129
    for v, i in zip(sweep["v"], sweep["i"]):
        if abs(v) < 1e-12:
            assert abs(i) < 1e-12
    t = [0.5 * k for k in range(200)]
    v = [math.sin(x / 30.0) for x in t]
    cur = [1e-9 * math.sin(x / 10.0) for x in t]
    cur[100] += 5e-9
    assert memfract.detect_spikes(t, v, cur) == [100]


def test_classification():
    label, _ = memfract.classify(1.0, 1.0)
    assert label == "memristor"
