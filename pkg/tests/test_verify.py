import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalebb.core import (
    Box,
    DimensionTooLarge,
    InputError,
    NegativeAlpha,
    PointMatrix,
    ScalingStatus,
    alpha,
    alpha_objective,
    li1,
    li2,
    normalize,
    parse,
)
from scalebb.experiment import exlin_matrix, trial_rng
from scalebb.verify import (
    CONDITION_RULES,
    check_optimality,
    conjecture_test,
    irreducible_instance,
    oracle_min,
    underestimation_check,
)
from scalebb.verify.conjecture import allowance

# ---------------------------------------------------------------------------
# Optimality conditions
# ---------------------------------------------------------------------------


def test_check_optimality_at_exoscil_optimum(exoscil):
    report = check_optimality(exoscil, [0.5, 1.0, 0.5])
    assert report.passed
    assert report.i_star == (1,)
    assert report.c4_diag_dominant_exclusion.witness["dominant_rows"] == [0, 2]
    assert report.c3_dominance.witness["pair"] == [0, 1]
    assert report.deficit_objective == pytest.approx(2.5)
    assert report.alpha_objective == pytest.approx(1.25)
    assert not report.zero_objective


def test_check_optimality_reports_unsaturated_row(exoscil):
    report = check_optimality(exoscil, [1.0, 1.0, 1.0])
    assert not report.passed
    check = report.c1_saturation
    assert not check.passed
    assert check.witness["row"] == 0
    assert check.witness["value"] == pytest.approx(1.0)
    assert check.message == CONDITION_RULES["c1_saturation"]["failure"]


def test_check_optimality_rejects_closed_form_exlin_vector():
    # d_k = 1 - 2^(1 - 2k) leaves the first row unsaturated by 1/8
    report = check_optimality(exlin_matrix(4), [1 / 2, 7 / 8, 31 / 32, 1])
    check = report.c1_saturation
    assert not check.passed
    assert not report.passed
    assert check.witness["row"] == 0
    assert check.witness["value"] == pytest.approx(1 / 8)


def test_check_optimality_cubic(cubic_point):
    assert check_optimality(cubic_point, [0.1, 1.0]).passed

    report = check_optimality(cubic_point, [0.05, 1.0])
    assert report.i_star == (0, 1)
    assert report.c1_saturation.passed
    assert not report.c2_equal_on_istar.passed
    assert report.c2_equal_on_istar.witness["max_deviation"] == pytest.approx(0.95)
    assert not report.c4_diag_dominant_exclusion.passed
    assert report.c4_diag_dominant_exclusion.witness["row"] == 0


def test_check_optimality_normalizes_radii(cubic_point):
    rad = np.array([0.5, 2.0])
    c = np.array([0.1, 1.0])
    scaled = check_optimality(cubic_point, rad * c, rad)
    plain = check_optimality(normalize(cubic_point, rad), c)
    assert scaled.passed == plain.passed
    assert scaled.i_star == plain.i_star
    np.testing.assert_allclose(scaled.saturation, plain.saturation, rtol=1e-12)
    assert scaled.alpha_objective == pytest.approx(plain.alpha_objective, rel=1e-12)


def test_convex_point_has_zero_objective():
    h = PointMatrix(np.array([[2.0, -1.0], [-1.0, 2.0]]))
    report = check_optimality(h, [1.0, 1.0])
    assert report.passed
    assert report.zero_objective
    assert report.i_star == ()
    assert report.alpha_objective == 0.0


def test_li2_outputs_satisfy_conditions():
    checked = 0
    for t in range(1000):
        n = (3, 5, 10)[t % 3]
        h = irreducible_instance(n, trial_rng(11, t))
        state = li2(h, np.ones(n))
        report = check_optimality(h, state.d)
        if state.status is ScalingStatus.CONVEX:
            assert report.zero_objective
            continue
        failed = [check.name for check in report.conditions if not check.passed]
        assert not failed, f"trial {t}: {failed}"
        checked += 1
    assert checked > 500


def test_to_dict_separates_informational_check(exoscil):
    data = check_optimality(exoscil, [0.5, 1.0, 0.5]).to_dict()
    assert data["passed"] is True
    assert [c["name"] for c in data["conditions"]] == [
        "c1_saturation",
        "c2_equal_on_istar",
        "c3_dominance",
        "c4_diag_dominant_exclusion",
    ]
    assert data["informational"][0]["name"] == "c3_unnormalized"


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------


def _sweep_minimum(h: PointMatrix) -> float:
    ratios = np.logspace(-3, 3, 200001)
    c = np.column_stack([np.minimum(ratios, 1.0), np.minimum(1.0 / ratios, 1.0)])
    hc = c @ h.h.T
    return float((0.5 * np.maximum(0.0, -hc / c).sum(axis=1)).min())


def test_oracle_exoscil(exoscil):
    result = oracle_min(exoscil)
    assert result.alpha_objective == pytest.approx(1.25, abs=1e-3)
    np.testing.assert_allclose(result.d_star, [0.5, 1.0, 0.5], atol=1e-2)
    assert result.d_star.max() == 1.0


def test_oracle_single_variable():
    result = oracle_min(PointMatrix(np.array([[-4.0]])))
    assert result.alpha_objective == 2.0
    np.testing.assert_array_equal(result.d_star, [1.0])


def test_oracle_matches_dense_sweep_for_two_variables():
    for t in range(50):
        h = irreducible_instance(2, trial_rng(3, t))
        result = oracle_min(h)
        assert result.alpha_objective == pytest.approx(
            _sweep_minimum(h), abs=1e-3 * max(1.0, h.norm_inf)
        )


def test_oracle_is_not_worse_than_heuristics():
    for t in range(30):
        h = irreducible_instance(3, trial_rng(5, t))
        result = oracle_min(h, grid_step=0.02)
        ones = np.ones(3)
        # d = 1 is a grid point
        assert result.alpha_objective <= alpha_objective(h, ones)
        heuristic = alpha_objective(h, li1(h, ones).d)
        assert result.alpha_objective <= heuristic + allowance(h, 0.02)


def test_oracle_threads_do_not_change_result(exoscil):
    single = oracle_min(exoscil, grid_step=0.05)
    threaded = oracle_min(exoscil, grid_step=0.05, jobs=3)
    np.testing.assert_array_equal(single.d_star, threaded.d_star)
    assert single.alpha_objective == threaded.alpha_objective


def test_oracle_respects_radii(exoscil):
    rad = np.array([0.5, 1.0, 2.0])
    result = oracle_min(exoscil, rad, grid_step=0.05)
    normalized = oracle_min(normalize(exoscil, rad), grid_step=0.05)
    assert result.alpha_objective == pytest.approx(normalized.alpha_objective, rel=1e-9)


def test_oracle_rejects_bad_input():
    with pytest.raises(DimensionTooLarge):
        oracle_min(PointMatrix(-np.ones((5, 5)) + 6 * np.eye(5)))
    with pytest.raises(InputError):
        oracle_min(PointMatrix(np.array([[-4.0]])), grid_step=0.7)


def test_oracle_minimum_satisfies_conditions(exoscil):
    result = oracle_min(exoscil, grid_step=0.05)
    report = check_optimality(exoscil, result.d_star, tol=1e-4)
    assert report.c2_equal_on_istar.passed
    assert report.c3_dominance.passed
    assert report.c4_diag_dominant_exclusion.passed


# ---------------------------------------------------------------------------
# Conjecture harness
# ---------------------------------------------------------------------------


def test_conjecture_without_trials():
    report = conjecture_test(3, 0, seed=1)
    assert report.passes == report.failures == 0
    assert report.to_dict()["counterexamples"] == []


def test_conjecture_small_run():
    report = conjecture_test(3, 5, seed=1, grid_step=0.05)
    assert report.passes + report.failures == 5
    assert len(report.counterexamples) == report.failures


def test_conjecture_rejects_dimension():
    with pytest.raises(ValueError):
        conjecture_test(5, 1, seed=1)
    with pytest.raises(ValueError):
        conjecture_test(1, 1, seed=1)


@pytest.mark.slow
def test_conjecture_full_run():
    report = conjecture_test(3, 100, seed=42)
    assert report.failures == 0
    assert report.passes == 100


# ---------------------------------------------------------------------------
# Underestimator sampling
# ---------------------------------------------------------------------------


def test_underestimation_cubic(cubic_text):
    f = parse(cubic_text, 2)
    box = Box.from_pairs([[1, 2], [1, 2]])
    report = underestimation_check(f, box, [0.0, 3.0], samples=10000, seed=0)
    assert report.underestimates
    assert report.max_underestimation_gap <= 1e-12
    assert report.max_separation == pytest.approx(0.75, abs=1e-6)
    assert report.midpoint_separation == pytest.approx(0.75)
    assert report.analytic_separation == pytest.approx(0.75)
    assert report.argmax[1] == pytest.approx(1.5, abs=1e-3)
    assert report.min_eigenvalue >= -1e-8


def test_underestimation_with_zero_alpha(cubic_text):
    f = parse(cubic_text, 2)
    box = Box.from_pairs([[1, 2], [1, 2]])
    report = underestimation_check(f, box, [0.0, 0.0], samples=100)
    assert report.max_separation == 0.0
    assert report.max_underestimation_gap == 0.0
    assert report.min_eigenvalue < 0


def test_underestimation_rejects_bad_alpha(cubic_text):
    f = parse(cubic_text, 2)
    box = Box.from_pairs([[1, 2], [1, 2]])
    with pytest.raises(NegativeAlpha):
        underestimation_check(f, box, [-1.0, 3.0], samples=10)
    with pytest.raises(ValueError):
        underestimation_check(f, box, [1.0], samples=10)


def test_underestimation_accepts_alpha_vector(cubic_text, cubic_point):
    f = parse(cubic_text, 2)
    box = Box.from_pairs([[1, 2], [1, 2]])
    report = underestimation_check(f, box, alpha(cubic_point, [0.05, 0.5]), samples=100)
    assert report.analytic_separation == pytest.approx(0.75)


# ---------------------------------------------------------------------------
# Radius-saturated matrices
# ---------------------------------------------------------------------------


def _saturated_at_radius(seed: int) -> tuple[PointMatrix, np.ndarray]:
    """Random H with H rad <= 0 row-wise."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    rad = rng.uniform(0.1, 3.0, size=n)
    upper = np.triu(-rng.uniform(0.0, 5.0, size=(n, n)), 1)
    off = upper + upper.T
    slack = rng.uniform(0.0, 2.0, size=n)
    diagonal = -(off @ rad) / rad - slack
    return PointMatrix(off + np.diag(diagonal)), rad


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_radius_is_optimal_when_rows_saturated_at_radius(seed):
    h, rad = _saturated_at_radius(seed)
    at_radius = alpha_objective(h, rad, rad)
    rng = np.random.default_rng(seed + 1)
    for _ in range(100):
        d = rad * rng.uniform(0.2, 5.0, size=h.n)
        assert at_radius <= alpha_objective(h, d, rad) + 1e-9 * max(1.0, abs(at_radius))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_saturation_condition_matches_sign_of_hd(seed):
    rng = np.random.default_rng(seed)
    h = irreducible_instance(4, rng)
    d = rng.uniform(0.1, 2.0, size=4)
    report = check_optimality(h, d)
    s = np.asarray(report.saturation)
    assert report.c1_saturation.passed == bool(np.all(s <= report.tolerance))
    np.testing.assert_allclose(s, h.h @ d / d.max(), rtol=1e-12, atol=1e-12 * h.norm_inf)
