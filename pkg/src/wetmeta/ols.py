"""Ordinary least squares with classical inference statistics."""

import hashlib
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
import scipy.linalg

from .distributions import f_p_value, t_p_value_two_sided
from .errors import InsufficientObservations, InvalidDf, RankDeficient

RANK_TOL = 1e-10


@dataclass(frozen=True)
class RegressionFit:
    column_labels: Tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    r2: float
    adj_r2: float
    f_stat: float
    f_p_value: float
    df_residual: int
    sigma2: float
    residuals: np.ndarray

    @property
    def n(self) -> int:
        return len(self.residuals)

    @property
    def k(self) -> int:
        return len(self.coefficients) - 1

    @property
    def model_id(self) -> str:
        h = hashlib.sha256()
        h.update("\x1f".join(self.column_labels).encode())
        h.update(np.asarray(self.coefficients, dtype="<f8").tobytes())
        h.update(np.float64(self.sigma2).astype("<f8").tobytes())
        return h.hexdigest()[:12]

    def coef(self, label: str) -> float:
        return float(self.coefficients[self.column_labels.index(label)])

    def to_dict(self) -> Dict:
        return {
            "column_labels": list(self.column_labels),
            "coefficients": [float(v) for v in self.coefficients],
            "std_errors": [float(v) for v in self.std_errors],
            "t_values": [float(v) for v in self.t_values],
            "p_values": [float(v) for v in self.p_values],
            "r2": self.r2, "adj_r2": self.adj_r2,
            "f_stat": self.f_stat, "f_p_value": self.f_p_value,
            "df_residual": self.df_residual, "sigma2": self.sigma2,
            "residuals": [float(v) for v in self.residuals],
        }

    @classmethod
    def from_dict(cls, d: Dict) -> "RegressionFit":
        arr = lambda key: np.array(d[key], dtype=float)
        return cls(
            column_labels=tuple(d["column_labels"]),
            coefficients=arr("coefficients"), std_errors=arr("std_errors"),
            t_values=arr("t_values"), p_values=arr("p_values"),
            r2=float(d["r2"]), adj_r2=float(d["adj_r2"]),
            f_stat=float(d["f_stat"]), f_p_value=float(d["f_p_value"]),
            df_residual=int(d["df_residual"]), sigma2=float(d["sigma2"]),
            residuals=arr("residuals"),
        )


def _check_df(n, k):
    if k < 0 or n - k - 1 <= 0:
        raise InvalidDf(f"need n > k + 1, got n={n}, k={k}")


def adjusted_r_squared(r2: float, n: int, k: int) -> float:
    _check_df(n, k)
    return 1.0 - (1.0 - r2) * (n - 1) / (n - k - 1)


def f_statistic(r2: float, n: int, k: int) -> float:
    """Overall-significance F from R-squared, n observations and k regressors."""
    _check_df(n, k)
    if k < 1:
        raise InvalidDf("F statistic needs at least one regressor")
    if r2 >= 1.0:
        return math.inf
    return (r2 / k) / ((1.0 - r2) / (n - k - 1))


def significance_stars(p: float) -> str:
    if p < 0.01:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.10:
        return "*"
    return ""


def _dependent_columns(X, R, perm, rank, labels):
    """Labels of the columns involved in each detected linear dependency."""
    norms = np.linalg.norm(X, axis=0)
    R11 = R[:rank, :rank]
    involved = set()
    for j in range(rank, R.shape[1]):
        col = perm[j]
        involved.add(col)
        if rank == 0 or norms[col] == 0:
            continue
        c = scipy.linalg.solve_triangular(R11, R[:rank, j])
        weight = np.abs(c) * norms[perm[:rank]] / norms[col]
        involved.update(int(perm[i]) for i in np.flatnonzero(weight > 1e-8))
    return [labels[i] for i in sorted(involved)]


def fit_ols(design) -> RegressionFit:
    """Least-squares fit of ``design.y`` on ``design.X``.

    Uses a column-pivoted QR decomposition. A diagonal entry of R below
    ``RANK_TOL`` times the largest one marks a rank deficiency, reported
    with the labels of the columns that are linearly dependent.

    Raises
    ------
    InsufficientObservations
        If n <= k + 1.
    RankDeficient
        If X does not have full column rank.
    """
    X = np.asarray(design.X, dtype=float)
    y = np.asarray(design.y, dtype=float)
    labels = tuple(design.column_labels)
    n, p = X.shape
    k = p - 1
    if n - p <= 0:
        raise InsufficientObservations(n, k)

    Q, R, perm = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > RANK_TOL * diag[0])) if diag[0] > 0 else 0
    if rank < p:
        raise RankDeficient(_dependent_columns(X, R, perm, rank, labels))

    beta_perm = scipy.linalg.solve_triangular(R, Q.T @ y)
    beta = np.empty(p)
    beta[perm] = beta_perm
    resid = y - X @ beta
    ssr = float(resid @ resid)
    dev = y - y.mean()
    sst = float(dev @ dev)
    df_res = n - p
    sigma2 = ssr / df_res

    Rinv = scipy.linalg.solve_triangular(R, np.eye(p))
    var_perm = np.sum(Rinv * Rinv, axis=1)
    variances = np.empty(p)
    variances[perm] = var_perm
    se = np.sqrt(sigma2 * variances)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, beta / se, np.where(beta == 0, 0.0, np.copysign(np.inf, beta)))
    pvals = np.array([t_p_value_two_sided(float(ti), df_res) for ti in t])

    if sst > 0:
        r2 = min(max(1.0 - ssr / sst, 0.0), 1.0)
    else:
        # constant response: any model with an intercept reproduces it exactly
        r2 = 1.0 if ssr <= 1e-24 else 0.0
    adj = adjusted_r_squared(r2, n, k)
    if k >= 1:
        f = f_statistic(r2, n, k)
        fp = f_p_value(f, k, df_res)
    else:
        f, fp = math.nan, math.nan

    return RegressionFit(
        column_labels=labels, coefficients=beta, std_errors=se, t_values=t,
        p_values=pvals, r2=r2, adj_r2=adj, f_stat=f, f_p_value=fp,
        df_residual=df_res, sigma2=sigma2, residuals=resid,
    )
