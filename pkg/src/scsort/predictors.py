"""The two SC prediction models.

TLR: one linear regression over the whole (N, K) surface, using the
transformed feature (K+a)^b * MaxRuntime alongside N and K.

NLR: per-K "anchor" regressions over N (whose basis follows the
algorithm's worst- or average-case regime) synthesize a handful of points
at each target N, and a per-N power-law curve fit fills in the interior K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dataset import Dataset, SCRecord, Source
from .regression import (CurveModel, FitError, LinearModel, curve_predict,
                         error_report, lm_predict, nls_fit, ols_fit)
from .sorters import Algorithm, MaxStrategy, Regime, max_runtime

__all__ = [
    "TlrConfig",
    "NlrConfig",
    "tlr_feature",
    "tlr_fit",
    "tlr_predict",
    "tlr_grid_search",
    "nlr_fit_anchors",
    "nlr_predict",
    "max_runtime_value",
    "BIG_ANCHOR",
]

# Key for the K=N anchor in anchor-model maps.
BIG_ANCHOR = "N"


@lru_cache(maxsize=None)
def max_runtime_value(alg: Algorithm, n: int, seed: int = 0, restarts: int = 50) -> int:
    """MaxRuntime feature: closed form where known, else seeded hill climb."""
    if alg in (Algorithm.QUICKSORT, Algorithm.BUBBLESORT_OPT):
        return max_runtime(alg, n, MaxStrategy.CLOSED_FORM)[0]
    return max_runtime(alg, n, MaxStrategy.HILL_CLIMB, seed=seed, restarts=restarts)[0]


# ---------------------------------------------------------------------------
# TLR

@dataclass(frozen=True)
class TlrConfig:
    a: float = 2.2
    b: float = -0.7


def tlr_feature(n: int, k: int, max_rt: float, cfg: TlrConfig = TlrConfig()) -> float:
    """(K + a)^b * MaxRuntime."""
    if k + cfg.a <= 0:
        raise ValueError(f"K + a = {k + cfg.a} not positive")
    return (k + cfg.a) ** cfg.b * max_rt


_TLR_FEATURES = ("tlr_feature", "N", "K", "1")


def _tlr_design(alg: Algorithm, nks, cfg: TlrConfig) -> np.ndarray:
    return np.array(
        [[tlr_feature(n, k, max_runtime_value(alg, n), cfg), n, k, 1.0] for n, k in nks]
    )


def _single_algorithm(train: Dataset) -> Algorithm:
    algs = {r.algorithm for r in train}
    if len(algs) != 1:
        raise ValueError(f"training data must cover exactly one algorithm, got {algs}")
    return algs.pop()


def tlr_fit(train: Dataset, cfg: TlrConfig = TlrConfig()) -> LinearModel:
    """OLS over {tlr_feature, N, K, 1} with SC targets."""
    records = list(train)
    if len(records) < 4 or len({r.n for r in records}) < 2:
        raise FitError("TLR needs >= 4 records spanning >= 2 distinct N")
    alg = _single_algorithm(train)
    design = _tlr_design(alg, [(r.n, r.k) for r in records], cfg)
    targets = np.array([r.value for r in records])
    return ols_fit(design, targets, _TLR_FEATURES)


def tlr_predict(model: LinearModel, alg: Algorithm, nks, cfg: TlrConfig = TlrConfig()) -> np.ndarray:
    return lm_predict(model, _tlr_design(alg, list(nks), cfg))


def tlr_grid_search(train: Dataset, validation: Dataset, a_range, b_range) -> TlrConfig:
    """(a, b) minimizing validation MAE; ties prefer smaller |b|, then a."""
    a_range = list(a_range)
    b_range = list(b_range)
    if not a_range or not b_range:
        raise ValueError("empty grid")
    alg = _single_algorithm(train)
    val_records = list(validation)
    val_nks = [(r.n, r.k) for r in val_records]
    truth = np.array([r.value for r in val_records])
    candidates = []
    for a in a_range:
        for b in b_range:
            cfg = TlrConfig(a, b)
            model = tlr_fit(train, cfg)
            pred = tlr_predict(model, alg, val_nks, cfg)
            mae = error_report(pred, truth).mae
            candidates.append((mae, abs(b), a, cfg))
    candidates.sort(key=lambda t: t[:3])
    return candidates[0][3]


# ---------------------------------------------------------------------------
# NLR

@dataclass(frozen=True)
class NlrConfig:
    """Anchor layout: t models total, the small-K set plus the K=N anchor."""

    t: int = 5
    small_anchor_ks: tuple[int, ...] = (2, 3, 4, 5)
    use_big_anchor: bool = True
    fix_c: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.t < 3:
            raise ValueError("need t >= 3 anchors")
        expected = self.t - (1 if self.use_big_anchor else 0)
        if len(self.small_anchor_ks) != expected:
            raise ValueError(
                f"{len(self.small_anchor_ks)} small anchors inconsistent with t={self.t}"
            )

    @classmethod
    def for_algorithm(cls, alg: Algorithm, t: int | None = None, **kwargs) -> "NlrConfig":
        """Per-algorithm defaults: t=5 from K=2 (Quicksort), from K=4 for
        M3Quicksort (its recurrence has no K<4 data), t=4 for Bubblesort
        and Mergesort."""
        if alg is Algorithm.M3QUICKSORT:
            t = 5 if t is None else t
            start = 4
        elif alg in (Algorithm.BUBBLESORT_OPT, Algorithm.MERGESORT):
            t = 4 if t is None else t
            start = 2
        else:
            t = 5 if t is None else t
            start = 2
        return cls(t=t, small_anchor_ks=tuple(range(start, start + t - 1)), **kwargs)


def _regime_design(regime: Regime, n_values) -> tuple[np.ndarray, tuple[str, ...]]:
    n = np.asarray(n_values, dtype=float)
    if regime is Regime.QUADRATIC:
        return np.column_stack([n * n, n, np.ones_like(n)]), ("N^2", "N", "1")
    return np.column_stack([n * np.log(n), n, np.ones_like(n)]), ("N*ln(N)", "N", "1")


def nlr_fit_anchors(alg: Algorithm, train: Dataset, cfg: NlrConfig) -> dict:
    """One OLS model per anchor K (and one for K=N), regressed over N.

    Small-K anchors use the algorithm's worst-case regime basis, the K=N
    anchor its average-case regime basis.
    """
    train = train.filter(algorithm=alg)
    models = {}
    for k in cfg.small_anchor_ks:
        rows = [r for r in train if r.k == k]
        if len({r.n for r in rows}) < 3:
            raise FitError(f"anchor K={k}: need >= 3 distinct N in training data")
        design, names = _regime_design(alg.worst_regime, [r.n for r in rows])
        models[k] = ols_fit(design, np.array([r.value for r in rows]), names)
    if cfg.use_big_anchor:
        rows = [r for r in train if r.k == r.n]
        if len({r.n for r in rows}) < 3:
            raise FitError("anchor K=N: need >= 3 distinct N in training data")
        design, names = _regime_design(alg.avg_regime, [r.n for r in rows])
        models[BIG_ANCHOR] = ols_fit(design, np.array([r.value for r in rows]), names)
    return models


def _anchor_value(models, alg: Algorithm, anchor, n: int) -> float:
    regime = alg.avg_regime if anchor == BIG_ANCHOR else alg.worst_regime
    design, _ = _regime_design(regime, [n])
    return float(lm_predict(models[anchor], design)[0])


@dataclass
class NlrDiagnostics:
    n: int
    curve: CurveModel
    monotone: bool
    notes: list[str] = field(default_factory=list)


def nlr_predict(alg: Algorithm, train: Dataset, target_ns, cfg: NlrConfig | None = None,
                k_min: int = 2) -> tuple[Dataset, list[NlrDiagnostics]]:
    """Predict SC for every 2 <= K <= N* at each target N*.

    Anchor K values take the anchor-model predictions directly; interior K
    come from the per-N* curve fit through the synthesized anchor points.
    """
    if cfg is None:
        cfg = NlrConfig.for_algorithm(alg)
    target_ns = list(target_ns)
    if not target_ns:
        raise ValueError("no targets")
    models = nlr_fit_anchors(alg, train, cfg)
    out = Dataset()
    diags: list[NlrDiagnostics] = []
    for n_t in target_ns:
        anchors = {k: _anchor_value(models, alg, k, n_t) for k in cfg.small_anchor_ks}
        if cfg.use_big_anchor:
            anchors[n_t] = _anchor_value(models, alg, BIG_ANCHOR, n_t)
        ks = sorted(anchors)
        curve = nls_fit(ks, [anchors[k] for k in ks], n_t, fix_c=cfg.fix_c)
        notes = []
        if not curve.converged:
            notes.append("curve fit did not converge; anchors emitted, interior skipped")
        values = {}
        for k in range(k_min, n_t + 1):
            if k in anchors:
                values[k] = anchors[k]
            elif curve.converged:
                values[k] = float(curve_predict(curve, [k])[0])
        monotone = all(
            values[k] >= values[k + 1] - 1e-9 for k in sorted(values)[:-1] if k + 1 in values
        )
        if not monotone:
            notes.append("predicted SC not monotone non-increasing in K")
        for k, v in values.items():
            out.add(SCRecord(alg, n_t, k, v, Source.PREDICTED))
        diags.append(NlrDiagnostics(n_t, curve, monotone, notes))
    return out, diags
