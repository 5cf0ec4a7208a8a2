"""Least-squares machinery: OLS, the power-law curve fit, error metrics.

The nonlinear model is the four-parameter family a*(K/N + c)^b + d fitted
per list length N over (K, SC) points, minimized by a damped Gauss-Newton
(Levenberg-Marquardt) iteration with an analytic Jacobian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FitError",
    "LinearModel",
    "CurveModel",
    "ErrorReport",
    "ols_fit",
    "lm_predict",
    "nls_fit",
    "curve_predict",
    "error_report",
]


class FitError(ValueError):
    """Raised for underdetermined or rank-deficient fits."""


@dataclass(frozen=True)
class LinearModel:
    feature_names: tuple[str, ...]
    coef: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.feature_names) != len(self.coef):
            raise ValueError("coefficient count must match feature count")
        if not np.all(np.isfinite(self.coef)):
            raise ValueError("non-finite coefficients")


def ols_fit(design: np.ndarray, targets: np.ndarray,
            feature_names: tuple[str, ...] | None = None,
            cond_limit: float = 1e12) -> LinearModel:
    """Ordinary least squares via SVD; exact interpolation when square."""
    design = np.asarray(design, dtype=float)
    targets = np.asarray(targets, dtype=float)
    n_points, n_feat = design.shape
    if n_points < n_feat:
        raise FitError(f"{n_points} points cannot determine {n_feat} coefficients")
    singulars = np.linalg.svd(design, compute_uv=False)
    cond = singulars[0] / singulars[-1] if singulars[-1] > 0 else np.inf
    if cond > cond_limit:
        raise FitError(f"rank-deficient design (condition estimate {cond:.3e})")
    coef, *_ = np.linalg.lstsq(design, targets, rcond=None)
    if feature_names is None:
        feature_names = tuple(f"x{i}" for i in range(n_feat))
    return LinearModel(tuple(feature_names), coef)


def lm_predict(model: LinearModel, design: np.ndarray) -> np.ndarray:
    return np.asarray(design, dtype=float) @ model.coef


@dataclass(frozen=True)
class CurveModel:
    a: float
    b: float
    c: float
    d: float
    n_context: int
    iterations: int = 0
    rss: float = np.inf
    converged: bool = False

    @property
    def params(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])


def curve_predict(model: CurveModel, k_values) -> np.ndarray:
    """Evaluate a*(K/N + c)^b + d at the given K values."""
    x = np.asarray(k_values, dtype=float) / model.n_context + model.c
    if np.any(x <= 0):
        raise ValueError(f"K/N + c <= 0 for c={model.c}")
    return model.a * x ** model.b + model.d


def _curve_residuals(params, x, y):
    a, b, c, d = params
    return a * (x + c) ** b + d - y


def _curve_jacobian(params, x):
    a, b, c, d = params
    base = (x + c) ** b
    return np.column_stack([
        base,
        a * base * np.log(x + c),
        a * b * (x + c) ** (b - 1),
        np.ones_like(x),
    ])


_DOMAIN_EPS = 1e-9


def _lm_minimize(x, y, p0, fix_c, max_iter=200):
    """Damped least squares on the curve family; returns (params, rss, iters)."""
    p = np.array(p0, dtype=float)
    free = np.array([True, True, not fix_c, True])
    r = _curve_residuals(p, x, y)
    rss = float(r @ r)
    lam = 1e-3
    it = 0
    for it in range(1, max_iter + 1):
        jac = _curve_jacobian(p, x)[:, free]
        grad = jac.T @ r
        if np.max(np.abs(grad)) < 1e-10:
            break
        hess = jac.T @ jac
        accepted = False
        for _ in range(60):
            damped = hess + lam * np.diag(np.diag(hess) + 1e-12)
            try:
                step = np.linalg.solve(damped, -grad)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            cand = p.copy()
            cand[free] += step
            # Steps that push the curve onto its pole are backtracked.
            if np.min(x) + cand[2] <= _DOMAIN_EPS:
                lam *= 10
                continue
            r_cand = _curve_residuals(cand, x, y)
            rss_cand = float(r_cand @ r_cand)
            if np.isfinite(rss_cand) and rss_cand < rss:
                rel_drop = (rss - rss_cand) / max(rss, 1e-300)
                p, r, rss = cand, r_cand, rss_cand
                lam = max(lam * 0.3, 1e-14)
                accepted = True
                if rel_drop < 1e-10:
                    return p, rss, it
                break
            lam *= 10
        if not accepted:
            break
    return p, rss, it


def _default_starts(x, y, fix_c, n_context):
    span = y[0] - y[-1]
    tail = y[-1]
    c_seed = float(np.clip(2.2 / n_context, 1e-4, 1.0))
    starts = []
    for b0 in (-0.5, -0.7, -1.0):
        for c0 in (c_seed, 0.01, 0.1):
            starts.append((span, b0, c0, tail))
    if fix_c:
        starts = [(a0, b0, 0.0, d0) for a0, b0, _, d0 in starts]
        # c frozen at a small positive shift so K/N=0 never hits the pole
        starts = [(a0, b0, 1e-6, d0) for a0, b0, _, d0 in starts]
    return starts


def nls_fit(k_values, sc_values, n_context: int,
            init: tuple[float, float, float, float] | None = None,
            fix_c: bool = False) -> CurveModel:
    """Fit a*(K/N + c)^b + d to (K, SC) points by Levenberg-Marquardt.

    Runs a deterministic multi-start and keeps the lowest residual; a
    CurveModel with converged=False is returned if no start produces a
    finite fit.  With fix_c=True the shift c is frozen (3-parameter fit).
    """
    k_values = np.asarray(k_values, dtype=float)
    sc_values = np.asarray(sc_values, dtype=float)
    n_params = 3 if fix_c else 4
    if len(k_values) < n_params:
        raise FitError(f"need at least {n_params} points, got {len(k_values)}")
    if np.any((k_values < 1) | (k_values > n_context)):
        raise ValueError(f"K values outside [1, {n_context}]")
    order = np.argsort(k_values)
    x = k_values[order] / n_context
    y = sc_values[order]
    starts = [init] if init is not None else _default_starts(x, y, fix_c, n_context)
    best = None
    for p0 in starts:
        if np.min(x) + p0[2] <= _DOMAIN_EPS:
            continue
        p, rss, iters = _lm_minimize(x, y, p0, fix_c)
        if np.all(np.isfinite(p)) and (best is None or rss < best[1]):
            best = (p, rss, iters)
    if best is None:
        a0, b0, c0, d0 = starts[0]
        return CurveModel(a0, b0, c0, d0, n_context, 0, np.inf, False)
    p, rss, iters = best
    return CurveModel(float(p[0]), float(p[1]), float(p[2]), float(p[3]),
                      n_context, iters, rss, True)


@dataclass(frozen=True)
class ErrorReport:
    mae: float
    rmse: float
    mape_percent: float
    n: int


def error_report(pred, truth) -> ErrorReport:
    """MAE, RMSE and MAPE (percent) over a prediction/truth pairing."""
    pred = np.asarray(pred, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if pred.shape != truth.shape or pred.ndim != 1:
        raise ValueError("pred and truth must be equal-length vectors")
    if len(pred) < 1:
        raise ValueError("need at least one pair")
    if np.any(truth == 0):
        raise ValueError("zero truth value: MAPE undefined")
    err = pred - truth
    return ErrorReport(
        mae=float(np.mean(np.abs(err))),
        rmse=float(np.sqrt(np.mean(err ** 2))),
        mape_percent=float(100.0 * np.mean(np.abs(err / truth))),
        n=len(pred),
    )
