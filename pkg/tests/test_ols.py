import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wetmeta.design import default_schema, encode, from_arrays
from wetmeta.errors import InsufficientObservations, InvalidDf, RankDeficient
from wetmeta.ols import (
    RegressionFit, adjusted_r_squared, f_statistic, fit_ols, significance_stars,
)

from oracles import normal_equations_solve


def random_instance(rng):
    n = int(rng.integers(8, 31))
    k = int(rng.integers(1, 6))
    X = np.column_stack([np.ones(n), rng.normal(size=(n, k))])
    y = X @ rng.normal(size=k + 1) + rng.normal(scale=0.5, size=n)
    return X, y


def test_three_point_exact_line():
    fit = fit_ols(from_arrays([[1, 0], [1, 1], [1, 2]], [1.0, 3.0, 5.0]))
    np.testing.assert_allclose(fit.coefficients, [1.0, 2.0], atol=1e-12)
    assert fit.r2 == 1.0
    assert np.max(np.abs(fit.residuals)) < 1e-12


def test_matches_normal_equations_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        X, y = random_instance(rng)
        fit = fit_ols(from_arrays(X, y))
        ref = np.array(normal_equations_solve(X, y))
        np.testing.assert_allclose(fit.coefficients, ref, rtol=1e-8, atol=1e-10)
        scaled = np.abs(X.T @ fit.residuals) / (np.linalg.norm(X, axis=0) * np.linalg.norm(y))
        assert scaled.max() < 1e-8


def test_standard_errors_match_textbook_formula():
    rng = np.random.default_rng(11)
    X, y = random_instance(rng)
    fit = fit_ols(from_arrays(X, y))
    n, p = X.shape
    r = y - X @ fit.coefficients
    cov = (r @ r / (n - p)) * np.linalg.inv(X.T @ X)
    np.testing.assert_allclose(fit.std_errors, np.sqrt(np.diag(cov)), rtol=1e-9)
    np.testing.assert_allclose(fit.t_values, fit.coefficients / fit.std_errors, rtol=1e-12)


def test_duplicate_column_is_named():
    rng = np.random.default_rng(3)
    a = rng.normal(size=10)
    X = np.column_stack([np.ones(10), a, rng.normal(size=10), a])
    with pytest.raises(RankDeficient) as err:
        fit_ols(from_arrays(X, rng.normal(size=10), ["intercept", "a", "z", "a2"]))
    assert set(err.value.labels) == {"a", "a2"}


def test_dummy_trap_is_named():
    d = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]] * 4, dtype=float)
    X = np.column_stack([np.ones(12), d])
    with pytest.raises(RankDeficient) as err:
        fit_ols(from_arrays(X, np.arange(12.0), ["intercept", "d1", "d2", "d3"]))
    assert set(err.value.labels) == {"intercept", "d1", "d2", "d3"}


def test_too_few_observations():
    with pytest.raises(InsufficientObservations):
        fit_ols(from_arrays([[1, 0], [1, 1]], [1.0, 2.0]))


def test_adjusted_r_squared_examples():
    assert adjusted_r_squared(0.676, 70, 18) == pytest.approx(1 - 0.324 * 69 / 51, abs=1e-12)
    assert adjusted_r_squared(0.5, 12, 3) == pytest.approx(0.3125, abs=1e-12)


def test_f_statistic_examples():
    assert f_statistic(0.5, 12, 3) == pytest.approx(8 / 3, abs=1e-12)
    assert f_statistic(0.0, 30, 4) == 0.0
    assert f_statistic(1.0, 30, 4) == math.inf


def test_df_guards():
    with pytest.raises(InvalidDf):
        adjusted_r_squared(0.5, 5, 4)
    with pytest.raises(InvalidDf):
        f_statistic(0.5, 10, 0)


@pytest.mark.parametrize("p,stars", [(0.038, "**"), (0.060, "*"), (0.009, "***"), (0.5, ""), (0.05, "*"), (0.1, "")])
def test_stars(p, stars):
    assert significance_stars(p) == stars


def test_fit_statistics_consistent():
    rng = np.random.default_rng(5)
    X, y = random_instance(rng)
    fit = fit_ols(from_arrays(X, y))
    assert fit.adj_r2 == pytest.approx(adjusted_r_squared(fit.r2, fit.n, fit.k), abs=1e-15)
    assert fit.f_stat == pytest.approx(f_statistic(fit.r2, fit.n, fit.k), rel=1e-12)
    assert fit.df_residual == fit.n - fit.k - 1


def test_bundled_fit_has_nineteen_labeled_parameters(analysis_set, tables):
    fit = fit_ols(encode(analysis_set, default_schema(), tables))
    assert fit.column_labels == tuple(default_schema().column_labels)
    assert len(fit.coefficients) == 19
    assert 0.0 <= fit.r2 <= 1.0


def test_dict_round_trip_and_model_id():
    rng = np.random.default_rng(1)
    fit = fit_ols(from_arrays(*random_instance(rng)))
    again = RegressionFit.from_dict(json.loads(json.dumps(fit.to_dict())))
    np.testing.assert_array_equal(again.coefficients, fit.coefficients)
    assert again.model_id == fit.model_id


# properties -----------------------------------------------------------

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_residuals_sum_to_zero_with_intercept(seed):
    X, y = random_instance(np.random.default_rng(seed))
    assert abs(fit_ols(from_arrays(X, y)).residuals.sum()) < 1e-9 * (1 + np.abs(y).sum())


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_adding_a_column_never_lowers_r2(seed):
    rng = np.random.default_rng(seed)
    X, y = random_instance(rng)
    if X.shape[0] - X.shape[1] < 2:
        return
    wider = np.column_stack([X, rng.normal(size=X.shape[0])])
    assert fit_ols(from_arrays(wider, y)).r2 >= fit_ols(from_arrays(X, y)).r2 - 1e-12


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_swapping_reference_level_preserves_fit(seed):
    rng = np.random.default_rng(seed)
    n = 24
    group = np.arange(n) % 3
    x = rng.normal(size=n)
    y = 1.0 + 0.5 * x + np.array([0.0, 1.0, -2.0])[group] + rng.normal(scale=0.3, size=n)
    d = np.eye(3)[group]
    a = fit_ols(from_arrays(np.column_stack([np.ones(n), x, d[:, 1], d[:, 2]]), y))
    b = fit_ols(from_arrays(np.column_stack([np.ones(n), x, d[:, 0], d[:, 2]]), y))
    assert a.r2 == pytest.approx(b.r2, abs=1e-12)
    np.testing.assert_allclose(a.residuals, b.residuals, atol=1e-10)
    assert a.coefficients[1] == pytest.approx(b.coefficients[1], abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(seeds, st.floats(min_value=0.01, max_value=100))
def test_scale_equivariance(seed, c):
    X, y = random_instance(np.random.default_rng(seed))
    a = fit_ols(from_arrays(X, y))
    b = fit_ols(from_arrays(X, c * y))
    np.testing.assert_allclose(b.coefficients, c * a.coefficients, rtol=1e-8, atol=1e-10 * c)
    np.testing.assert_allclose(b.t_values, a.t_values, rtol=1e-7)
    assert b.r2 == pytest.approx(a.r2, abs=1e-12)
