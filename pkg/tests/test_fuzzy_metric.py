import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzyshadow import fuzzy_metric as fm
from fuzzyshadow.systems import perturbation_g
from fuzzyshadow.tnorm import TNorm


def test_eval_examples(standard_metric, ratio_phi_metric, ratio_metric):
    assert standard_metric.eval(0.0, 0.5, 1.0) == pytest.approx(2.0 / 3.0)
    assert ratio_phi_metric.eval(0.25, 0.5, 0.5) == pytest.approx(0.25)
    for x in (0.1, 0.5, 1.0):
        for t in (0.2, 1.0, 7.0):
            assert ratio_metric.eval(x, x, t) == 1.0


def test_eval_domain_errors(standard_metric, ratio_metric):
    with pytest.raises(ValueError):
        standard_metric.eval(0.2, 0.3, 0.0)
    with pytest.raises(ValueError):
        standard_metric.eval(1.5, 0.3, 1.0)
    with pytest.raises(ValueError):
        ratio_metric.eval(0.0, 0.3, 1.0)
    with pytest.raises(ValueError):
        ratio_metric.eval(-0.2, 0.3, 1.0)


def test_metric_from_name():
    assert fm.metric_from_name("standard").name == "standard"
    assert fm.metric_from_name("ratio-phi").name == "ratio-phi"
    assert fm.metric_from_name("ratio").name == "ratio"
    with pytest.raises(ValueError):
        fm.metric_from_name("euclid")


@pytest.mark.parametrize("name", fm.METRIC_NAMES)
def test_axiom_suite_passes(name):
    report = fm.check_axioms(fm.metric_from_name(name), samples=10_000, seed=0)
    assert report.all_passed, report.failing()


def test_broken_metric_fails_triangle():
    # the ratio construction needs the product t-norm; the minimum t-norm
    # demands more than multiplicative ratios can deliver
    broken = fm.RatioFuzzyMetric(TNorm("minimum"))
    report = fm.check_axioms(broken, samples=10_000, seed=0)
    assert not report.all_passed
    assert "triangle" in report.failing()
    failing = [c for c in report.checks if c.name == "triangle"][0]
    w = failing.counterexample
    assert w is not None
    lhs = broken.eval(w["x"], w["z"], w["t"] + w["s"])
    rhs = min(broken.eval(w["x"], w["y"], w["t"]), broken.eval(w["y"], w["z"], w["s"]))
    assert lhs < rhs


def test_horizon_monotonicity_bulk(standard_metric, ratio_phi_metric):
    rng = np.random.default_rng(5)
    for m in (standard_metric, ratio_phi_metric):
        x = m.sample_states(rng, 10_000)
        y = m.sample_states(rng, 10_000)
        t1 = rng.uniform(0.01, 3.0, size=10_000)
        t2 = t1 + rng.uniform(0.0, 3.0, size=10_000)
        assert np.all(m.eval_array(x, y, t1) <= m.eval_array(x, y, t2) + 1e-12)


def test_ratio_phi_discreteness(ratio_phi_metric):
    rng = np.random.default_rng(9)
    x = ratio_phi_metric.sample_states(rng, 1_000)
    y = ratio_phi_metric.sample_states(rng, 1_000)
    distinct = x != y
    vals = ratio_phi_metric.eval_array(x[distinct], y[distinct], 0.5)
    assert np.all(vals <= 0.5)
    ball = fm.Ball(float(x[0]), 0.5, 0.5)
    for v in y[:50]:
        if v != ball.center:
            assert not fm.ball_membership(ratio_phi_metric, ball, float(v))


def test_ball_membership_cases(standard_metric):
    ball = fm.Ball(0.5, 0.1, 1.0)
    assert fm.ball_membership(standard_metric, ball, 0.5)
    assert fm.ball_membership(standard_metric, ball, 0.6)
    assert fm.ball_membership(standard_metric, ball, 0.59)
    # nearness at 0.5 + 1/9 evaluates to 0.8999999999999999, not above 1 - r
    assert not fm.ball_membership(standard_metric, ball, 0.5 + 1.0 / 9.0)
    # exact boundary: M(0, 1, 1) = 0.5, excluded open, included closed
    assert not fm.ball_membership(standard_metric, fm.Ball(0.0, 0.5, 1.0), 1.0)
    assert fm.ball_membership(standard_metric, fm.Ball(0.0, 0.5, 1.0, closed=True), 1.0)


def test_ball_validation():
    with pytest.raises(ValueError):
        fm.Ball(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        fm.Ball(0.5, 0.5, 0.0)


def test_uniform_horizon_standard(standard_metric):
    # solve t/(t + diameter) = 1 - eps: t = 9 for eps = 0.1, t = 1 for eps = 0.5
    t_01 = fm.uniform_horizon(standard_metric, 0.1, resolution=1e-2)
    assert t_01 == pytest.approx(9.0, abs=1e-6)
    assert np.min(standard_metric.eval_array(0.0, 1.0, t_01)) > 0.9
    t_05 = fm.uniform_horizon(standard_metric, 0.5, resolution=1e-2)
    assert t_05 == pytest.approx(1.0, abs=1e-6)


def test_uniform_horizon_ratio_none(ratio_metric, ratio_phi_metric):
    assert fm.uniform_horizon(ratio_metric, 0.1, resolution=1e-2) is None
    assert fm.uniform_horizon(ratio_phi_metric, 0.1, resolution=1e-2) is None


def test_converges_examples(standard_metric):
    n = np.arange(31, dtype=float)
    seq = 0.5 + 2.0**-n
    assert fm.converges(standard_metric, seq, 0.5, 0.01, [1.0])
    assert fm.converges(standard_metric, np.full(10, 0.37), 0.37, 0.01, [0.5, 1.0])
    alternating = np.array([0.0, 1.0] * 20)
    assert not fm.converges(standard_metric, alternating, 0.0, 0.1, [1.0])


def test_bridge_threshold_matches_predicate(standard_metric):
    # the standard-metric bound and the classical distance bound pick out the
    # same pairs, checked over an exhaustive value/parameter lattice
    xs = np.linspace(0.0, 1.0, 101)
    for delta in (0.05, 0.3, 0.7):
        for t0 in (0.5, 1.0, 9.0):
            thr = fm.bridge_threshold(delta, t0)
            fuzzy = standard_metric.eval_array(xs[:, None], xs[None, :], t0) > 1 - delta
            classical = np.abs(xs[:, None] - xs[None, :]) < thr
            assert np.array_equal(fuzzy, classical)


@given(
    delta=st.floats(min_value=1e-6, max_value=1 - 1e-6),
    t0=st.floats(min_value=1e-3, max_value=100.0),
    d=st.floats(min_value=0.0, max_value=1.0),
)
def test_bridge_threshold_pointwise(delta, t0, d):
    thr = fm.bridge_threshold(delta, t0)
    lhs = t0 / (t0 + d) > 1 - delta
    # guard the float boundary: the two predicates are equivalent in exact
    # arithmetic, so only compare off the knife edge
    if abs(d - thr) > 1e-12 * max(1.0, thr):
        assert lhs == (d < thr)


def test_certify_identity(standard_metric):
    class Identity:
        def eval_array(self, xs):
            return np.asarray(xs, dtype=float)

    cert = fm.certify_fuzzy_continuity(standard_metric, Identity(), eps=0.3, t=1.0)
    assert cert.holds
    assert cert.delta == pytest.approx(0.3)
    assert cert.t_prime == 1.0


def test_certify_concrete_maps(ratio_phi_metric, ratio_metric, three_piece):
    cert = fm.certify_fuzzy_continuity(ratio_phi_metric, three_piece, eps=0.2, t=1.0)
    assert cert.holds and cert.delta > 0
    cert = fm.certify_fuzzy_continuity(ratio_metric, three_piece, eps=0.2, t=1.0)
    assert cert.holds and cert.delta > 0


def test_ratio_modulus_three_piece(three_piece):
    report = fm.check_ratio_modulus(three_piece, factor=0.1, resolution=1e-3)
    assert report.passed
    assert report.pairs == 1_000_000
    assert report.worst_margin > 0


def test_metric_domination_perturbation(ratio_metric, three_piece):
    g = perturbation_g(1.0 / 256.0)
    report = fm.check_metric_domination(
        ratio_metric, g, three_piece, factor=0.5, t=1.0, resolution=1e-3
    )
    assert report.passed
    assert report.pairs == 1_000_000


def test_grid_respects_open_endpoint(ratio_metric, standard_metric):
    g = ratio_metric.grid(1e-3)
    assert g[0] == pytest.approx(1e-3)
    assert g[-1] == 1.0
    assert g.size == 1000
    h = standard_metric.grid(1e-3)
    assert h[0] == 0.0 and h[-1] == 1.0 and h.size == 1001


def test_sample_states_stay_in_space(ratio_metric):
    rng = np.random.default_rng(0)
    xs = ratio_metric.sample_states(rng, 10_000)
    assert np.all(xs > 0.0) and np.all(xs <= 1.0)
