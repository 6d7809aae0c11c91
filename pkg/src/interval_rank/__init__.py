"""Online passive-aggressive ordinal ranking from exact or interval labels.

A linear ranker (weight vector plus ordered thresholds) is trained one
instance at a time.  Labels may be exact classes or closed class intervals;
on every trial the learner makes the smallest parameter change that brings
the instance's threshold margins into line: exactly for the hard-margin
variant, with linear or squared slack for the clamped variants.  Baselines,
an experiment harness with cumulative-loss bound checks, and brute-force
reference solvers round out the package.
"""

from .baselines import MCPModel, PRankModel, mcp_predict, mcp_update, prank_predict, prank_update
from .data import (DEFAULT_INTERVAL_OFFSETS, DatasetSpec, IntervalPolicy,
                   OrdinalDataset, PreparedTable, assemble_dataset, bin_target,
                   builtin_spec, label_stream, load_csv, load_letor,
                   load_spec_toml, make_interval, normalize, prepare_letor,
                   prepare_tabular, separable_stream, synthetic_table)
from .harness import (BoundReport, ExperimentResult, RunConfig, RunMetrics,
                      average_runs, bound_check_suite, bound_pa1, bound_pa2,
                      bound_pa_general, fit_reference, interval_mae,
                      run_experiment, run_online, stream_of)
from .loss import ThresholdLosses, interval_mae_loss, surrogate_losses, total_surrogate
from .model import (IntervalInstance, RankingModel, label_from_score, predict,
                    score)
from .oracle import (MAX_ORACLE_CLASSES, OracleSolution, oracle_pa, oracle_pa1,
                     oracle_pa2, random_trial, trial_objective)
from .support import (SolverError, SupportSolution, solve_pa, solve_pa1,
                      solve_pa2)
from .updates import UpdateReport, update_pa, update_pa1, update_pa2

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_INTERVAL_OFFSETS", "MAX_ORACLE_CLASSES",
    "BoundReport", "DatasetSpec", "ExperimentResult", "IntervalInstance",
    "IntervalPolicy", "MCPModel", "OracleSolution", "OrdinalDataset",
    "PRankModel", "PreparedTable", "RankingModel", "RunConfig", "RunMetrics",
    "SolverError", "SupportSolution", "ThresholdLosses", "UpdateReport",
    "assemble_dataset", "average_runs", "bin_target", "bound_check_suite",
    "bound_pa1", "bound_pa2", "bound_pa_general", "builtin_spec",
    "fit_reference", "interval_mae", "interval_mae_loss", "label_from_score",
    "label_stream", "load_csv", "load_letor", "load_spec_toml",
    "make_interval", "mcp_predict", "mcp_update", "normalize", "oracle_pa",
    "oracle_pa1", "oracle_pa2", "prank_predict", "prank_update",
    "predict", "prepare_letor", "prepare_tabular", "random_trial",
    "run_experiment", "run_online", "score", "separable_stream", "solve_pa",
    "solve_pa1", "solve_pa2", "stream_of", "surrogate_losses",
    "synthetic_table", "total_surrogate", "trial_objective", "update_pa",
    "update_pa1", "update_pa2",
]
