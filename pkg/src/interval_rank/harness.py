"""Online experiment driver: trial loops, MAE tracking, run averaging, and
cumulative-loss bound checks.

The online protocol per trial is strict: sample an instance, record the
prediction of the *current* model, then update.  Models start at zero.  The
average-MAE curve at trial t is the mean of the first t instantaneous errors.
Repeated runs re-draw both the interval labeling and the trial sampling from
seeds spawned off one root seed, so a (config, seed) pair pins the entire
experiment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from .baselines import MCPModel, PRankModel, mcp_update, prank_update
from .data import IntervalPolicy, OrdinalDataset, PreparedTable, assemble_dataset
from .loss import surrogate_losses
from .model import IntervalInstance, RankingModel, label_from_score
from .updates import update_pa, update_pa1, update_pa2

ALGORITHMS = ("pa", "pa1", "pa2", "prank", "mcp")
PA_VARIANTS = ("pa", "pa1", "pa2")

#: A reference predictor with cumulative loss below this counts as ideal.
IDEAL_TOL = 1e-12


@dataclass
class RunConfig:
    """Everything that pins one experiment."""

    algorithm: str = "pa1"
    C: float = 1.0
    trials: int = 7000
    runs: int = 100
    seed: int = 0
    interval_fraction: float = 0.0
    dataset: str = "synthetic"
    metric: str = "exact"               # 'exact' or 'interval'
    sample_mode: str = "replacement"    # 'replacement' or 'epochs'

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.trials < 1 or self.runs < 1:
            raise ValueError("trials and runs must be at least 1")
        if self.algorithm in ("pa1", "pa2") and self.C <= 0:
            raise ValueError(f"algorithm {self.algorithm} needs C > 0")
        if self.metric not in ("exact", "interval"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.sample_mode not in ("replacement", "epochs"):
            raise ValueError(f"unknown sample mode {self.sample_mode!r}")
        if not 0.0 <= self.interval_fraction <= 1.0:
            raise ValueError("interval fraction must be in [0, 1]")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class RunMetrics:
    """Per-trial records of one online run."""

    instantaneous: np.ndarray
    avg_curve: np.ndarray
    cum_surrogate: float
    cum_sq_surrogate: float
    final_model: object
    trial_indices: np.ndarray


@dataclass
class BoundReport:
    """One evaluated cumulative-loss guarantee."""

    variant: str
    case: str                   # 'general' or 'ideal'
    r_squared: float
    c: int
    d_value: float
    v_norm_sq: float
    reference_loss_term: float
    bound: float
    measured: float
    satisfied: bool
    run_c: float | None = None
    optimal_c: float | None = None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def interval_mae(pred: int, y_l: int, y_r: int) -> int:
    """Distance from a prediction to the label interval (zero inside it)."""
    return max(y_l - pred, pred - y_r, 0)


def _trial_order(config: RunConfig, n: int, rng: np.random.Generator) -> np.ndarray:
    if config.sample_mode == "replacement":
        return rng.integers(0, n, size=config.trials)
    passes = math.ceil(config.trials / n)
    order = np.concatenate([rng.permutation(n) for _ in range(passes)])
    return order[:config.trials]


def run_online(config: RunConfig, dataset: OrdinalDataset,
               rng: np.random.Generator | None = None) -> RunMetrics:
    """One seeded online run of the configured learner over a dataset.

    Per trial: sample, predict with the current model, score the prediction
    under the configured metric, then update.  The hinge losses the update
    sees are also accumulated (plain and squared) for the bound checkers;
    baselines have no hinge losses and accumulate zero.
    """
    if not dataset.instances:
        raise ValueError("dataset has no instances")
    if rng is None:
        rng = np.random.default_rng(config.seed)
    instances = dataset.instances
    num_classes = dataset.num_classes
    num_features = instances[0].features.shape[0]
    algo = config.algorithm

    if algo in PA_VARIANTS:
        model: object = RankingModel.zeros(num_features, num_classes)
    elif algo == "prank":
        model = PRankModel.zeros(num_features, num_classes)
    else:
        model = MCPModel.zeros(num_features, num_classes)

    indices = _trial_order(config, len(instances), rng)
    errors = np.empty(config.trials)
    cum_loss = 0.0
    cum_sq = 0.0
    for t, raw_idx in enumerate(indices):
        inst = instances[int(raw_idx)]
        if algo in PA_VARIANTS:
            s = float(np.dot(model.weights, inst.features))
            pred = label_from_score(model.thresholds, s)
            losses = surrogate_losses(s, model.thresholds, inst.y_l, inst.y_r)
            cum_loss += losses.total()
            cum_sq += losses.squared_total()
            if algo == "pa":
                update_pa(model, inst)
            elif algo == "pa1":
                update_pa1(model, inst, config.C)
            else:
                update_pa2(model, inst, config.C)
        elif algo == "prank":
            if inst.exact_label is None:
                raise ValueError("baselines require exact labels")
            pred = prank_update(model, inst.features, inst.exact_label)
        else:
            if inst.exact_label is None:
                raise ValueError("baselines require exact labels")
            pred = mcp_update(model, inst.features, inst.exact_label)

        if config.metric == "exact":
            if inst.exact_label is None:
                raise ValueError("exact-MAE metric needs exact labels on every "
                                 "instance; use the interval metric instead")
            errors[t] = abs(pred - inst.exact_label)
        else:
            errors[t] = interval_mae(pred, inst.y_l, inst.y_r)

    avg_curve = np.cumsum(errors) / np.arange(1, config.trials + 1)
    return RunMetrics(errors, avg_curve, cum_loss, cum_sq, model, indices)


def average_runs(curves) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise mean and standard error of equally long metric curves."""
    if not curves:
        raise ValueError("no curves to average")
    lengths = {len(c) for c in curves}
    if len(lengths) != 1:
        raise ValueError(f"curve lengths differ: {sorted(lengths)}")
    arr = np.asarray(curves, dtype=np.float64)
    mean = arr.mean(axis=0)
    if arr.shape[0] > 1:
        stderr = arr.std(axis=0, ddof=1) / math.sqrt(arr.shape[0])
    else:
        stderr = np.zeros_like(mean)
    return mean, stderr


@dataclass
class ExperimentResult:
    """Aggregate of R seeded runs of one configuration."""

    config: RunConfig
    mean_curve: np.ndarray
    stderr_curve: np.ndarray
    run_curves: list = field(default_factory=list)
    dataset_name: str = ""
    dataset_hash: str = ""
    warnings: dict = field(default_factory=dict)

    @property
    def final_mae(self) -> float:
        return float(self.mean_curve[-1])


def run_experiment(config: RunConfig, table: PreparedTable) -> ExperimentResult:
    """R independent runs: each re-draws interval labels and trial order from
    seeds spawned off ``config.seed``, then curves are averaged.

    Runs share nothing but the read-only table, so they are safe to farm out
    to workers; executed sequentially here since single runs are cheap.
    """
    children = np.random.SeedSequence(config.seed).spawn(config.runs)
    policy = IntervalPolicy(fraction=config.interval_fraction)
    curves = []
    for child in children:
        label_seed, run_seed = child.spawn(2)
        ds = assemble_dataset(table, policy, np.random.default_rng(label_seed))
        metrics = run_online(config, ds, rng=np.random.default_rng(run_seed))
        curves.append(metrics.avg_curve)
    mean, stderr = average_runs(curves)
    return ExperimentResult(config, mean, stderr, curves, table.name,
                            table.source_hash, dict(table.warnings))


def fit_reference(instances, num_classes: int, C: float = 1.0,
                  epochs: int = 5, seed: int = 0) -> RankingModel:
    """Offline comparison predictor: a few shuffled clamped-update passes.

    The bound checks hold for *any* fixed predictor; a trained one just makes
    them non-vacuous.
    """
    if not instances:
        raise ValueError("cannot fit a reference on an empty stream")
    model = RankingModel.zeros(instances[0].features.shape[0], num_classes)
    rng = np.random.default_rng(seed)
    for _ in range(epochs):
        for i in rng.permutation(len(instances)):
            update_pa1(model, instances[int(i)], C)
    return model


def stream_of(dataset: OrdinalDataset, metrics: RunMetrics) -> list[IntervalInstance]:
    """The instance sequence a recorded run actually saw."""
    return [dataset.instances[int(i)] for i in metrics.trial_indices]


def _stream_stats(stream) -> tuple[int, float]:
    if not stream:
        raise ValueError("empty stream")
    c = min(inst.y_r - inst.y_l for inst in stream)
    r_squared = max(float(np.dot(inst.features, inst.features)) for inst in stream)
    return c, r_squared


def _reference_losses(stream, reference: RankingModel) -> tuple[float, float]:
    total = 0.0
    total_sq = 0.0
    for inst in stream:
        s = float(np.dot(reference.weights, inst.features))
        losses = surrogate_losses(s, reference.thresholds, inst.y_l, inst.y_r)
        total += losses.total()
        total_sq += losses.squared_total()
    return total, total_sq


def _v_norm_sq(reference: RankingModel) -> float:
    return float(np.dot(reference.weights, reference.weights)
                 + np.dot(reference.thresholds, reference.thresholds))


def bound_pa_general(stream, metrics: RunMetrics,
                     reference: RankingModel) -> BoundReport:
    """Cumulative squared hinge loss of the hard-margin learner against
    ``D^2 (||v|| + 4(K-c-1) sqrt(sum of squared reference losses))^2`` with
    ``D = 1 + R^2 (K-c-1)``; collapses to the tighter ``D ||v||^2`` when the
    reference is loss-free on the stream (the ideal case)."""
    c, r_squared = _stream_stats(stream)
    k1 = reference.num_classes - c - 1
    d_value = 1.0 + r_squared * k1
    v_sq = _v_norm_sq(reference)
    _, u_sq = _reference_losses(stream, reference)
    if u_sq <= IDEAL_TOL:
        case = "ideal"
        bound = v_sq * d_value
    else:
        case = "general"
        bound = d_value ** 2 * (math.sqrt(v_sq) + 4.0 * k1 * math.sqrt(u_sq)) ** 2
    measured = metrics.cum_sq_surrogate
    return BoundReport("PA", case, r_squared, c, d_value, v_sq, u_sq,
                       bound, measured, measured <= bound)


def bound_pa1(stream, metrics: RunMetrics, reference: RankingModel,
              run_c: float) -> BoundReport:
    """Cumulative plain hinge loss of the clamped learner against the
    C-dependent guarantee

        sum l* + ||v||^2 / (2C) + C T D / 2,   D = 1 + 2 R^2 (K-c-1)^2,

    which at the optimal C = ||v|| / sqrt(T D) (reported) equals the familiar
    ``sum l* + sqrt(D T) ||v||`` form."""
    if run_c <= 0:
        raise ValueError(f"run C must be positive, got {run_c}")
    c, r_squared = _stream_stats(stream)
    k1 = reference.num_classes - c - 1
    d_value = 1.0 + 2.0 * r_squared * k1 * k1
    v_sq = _v_norm_sq(reference)
    u_sum, _ = _reference_losses(stream, reference)
    trials = len(stream)
    optimal_c = math.sqrt(v_sq) / math.sqrt(trials * d_value) if v_sq > 0 else 0.0
    bound = u_sum + v_sq / (2.0 * run_c) + run_c * trials * d_value / 2.0
    case = "ideal" if u_sum <= IDEAL_TOL else "general"
    measured = metrics.cum_surrogate
    return BoundReport("PA1", case, r_squared, c, d_value, v_sq, u_sum,
                       bound, measured, measured <= bound,
                       run_c=run_c, optimal_c=optimal_c)


def bound_pa2(stream, metrics: RunMetrics, reference: RankingModel,
              run_c: float) -> BoundReport:
    """Cumulative squared hinge loss of the squared-slack learner against
    ``D (||v||^2 + 2C sum of squared reference losses)`` with
    ``D = 1 + 1/(2C) + R^2 (K-c-1)``."""
    if run_c <= 0:
        raise ValueError(f"run C must be positive, got {run_c}")
    c, r_squared = _stream_stats(stream)
    k1 = reference.num_classes - c - 1
    d_value = 1.0 + 0.5 / run_c + r_squared * k1
    v_sq = _v_norm_sq(reference)
    _, u_sq = _reference_losses(stream, reference)
    bound = d_value * (v_sq + 2.0 * run_c * u_sq)
    case = "ideal" if u_sq <= IDEAL_TOL else "general"
    measured = metrics.cum_sq_surrogate
    return BoundReport("PA2", case, r_squared, c, d_value, v_sq, u_sq,
                       bound, measured, measured <= bound, run_c=run_c)


def bound_check_suite(table: PreparedTable, seeds, trials: int = 500,
                      C: float = 1.0, interval_fraction: float = 0.5,
                      reference_epochs: int = 5) -> list[BoundReport]:
    """Run all three variants across seeds and evaluate their guarantees
    against a reference predictor fit offline on each labeled dataset."""
    reports = []
    for seed in seeds:
        streams = np.random.SeedSequence(seed).spawn(4)
        ds = assemble_dataset(table, IntervalPolicy(fraction=interval_fraction),
                              np.random.default_rng(streams[0]))
        reference = fit_reference(ds.instances, ds.num_classes, C=C, seed=seed)
        for algo, child in zip(PA_VARIANTS, streams[1:]):
            config = RunConfig(algorithm=algo, C=C, trials=trials, runs=1,
                               seed=seed, interval_fraction=interval_fraction,
                               dataset=table.name)
            metrics = run_online(config, ds, rng=np.random.default_rng(child))
            stream = stream_of(ds, metrics)
            if algo == "pa":
                reports.append(bound_pa_general(stream, metrics, reference))
            elif algo == "pa1":
                reports.append(bound_pa1(stream, metrics, reference, C))
            else:
                reports.append(bound_pa2(stream, metrics, reference, C))
    return reports
