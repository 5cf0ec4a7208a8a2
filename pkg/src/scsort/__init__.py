"""Smoothed complexity of sorting algorithms: oracles and predictors."""

__version__ = "0.1.0"

from .budgets import Budgets, BudgetExceededError
from .dataset import Dataset, SCRecord, Source
from .modular import modular_sc_m3quicksort, modular_sc_quicksort, modular_table, quicksort_sc_table
from .oracle import oracle_cost, sc_exhaustive, sc_hillclimb
from .perturb import RuntimeMemo, avg_perturbed_runtime, group_size, perturbed_group
from .predictors import NlrConfig, TlrConfig, nlr_fit_anchors, nlr_predict, tlr_feature, tlr_fit, tlr_grid_search
from .regression import CurveModel, ErrorReport, LinearModel, curve_predict, error_report, lm_predict, nls_fit, ols_fit
from .sorters import Algorithm, MaxStrategy, Regime, average_runtime_exact, count_comparisons, max_runtime

__all__ = [
    "Algorithm", "Budgets", "BudgetExceededError", "CurveModel", "Dataset",
    "ErrorReport", "LinearModel", "MaxStrategy", "NlrConfig", "Regime",
    "RuntimeMemo", "SCRecord", "Source", "TlrConfig",
    "average_runtime_exact", "avg_perturbed_runtime", "count_comparisons",
    "curve_predict", "error_report", "group_size", "lm_predict",
    "max_runtime", "modular_sc_m3quicksort", "modular_sc_quicksort",
    "modular_table", "nlr_fit_anchors", "nlr_predict", "nls_fit", "ols_fit",
    "oracle_cost", "perturbed_group", "quicksort_sc_table", "sc_exhaustive",
    "sc_hillclimb", "tlr_feature", "tlr_fit", "tlr_grid_search",
]
