"""Dataset ingestion, normalization, ordinal binning and interval synthesis.

Regression-style tables become ordinal problems by binning the target into
K classes with right-inclusive edges.  Interval labels are synthesized for a
seeded fraction of instances by drawing one of a small menu of offset pairs
around the exact label and clipping to [1, K]; the exact label always stays
inside the drawn interval and rides along for evaluation.

All randomness goes through numpy's PCG64 (``numpy.random.default_rng``).
``label_stream`` draws, in order: one permutation to pick the interval-labeled
subset, then one menu index per selected instance in ascending instance
order.  Fixing the draw discipline makes streams byte-identical across
platforms for a given seed.
"""

from __future__ import annotations

import csv
import hashlib
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .model import IntervalInstance, RankingModel, label_from_score

#: Offset menu (left, right) around the exact label; the repeated (1, 0)
#: entry is intentional and carries double weight.
DEFAULT_INTERVAL_OFFSETS: tuple[tuple[int, int], ...] = (
    (1, 0), (0, 1), (1, 0), (2, 0), (0, 2), (2, 2))

DATA_DIR_ENV = "INTERVAL_RANK_DATA"


@dataclass
class DatasetSpec:
    """Where a tabular dataset lives and how to turn it into classes.

    ``bin_edges`` are the K-1 interior class boundaries, right-inclusive:
    a target lands in class ``1 + #{edges < target}``.  ``target_range``
    (when declared) is only used to count out-of-range targets, which are
    clamped by the binning rule anyway.  ``column_names`` supplies a header
    for headerless files; ``category_maps`` translates string-valued columns
    to floats before anything else happens.
    """

    name: str
    path: str | None
    feature_columns: list[str]
    target_column: str
    bin_edges: list[float]
    target_range: tuple[float, float] | None = None
    category_maps: dict[str, dict[str, float]] | None = None
    column_names: list[str] | None = None

    def __post_init__(self):
        edges = list(self.bin_edges)
        if not edges:
            raise ValueError("need at least one bin edge (two classes)")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise ValueError(f"bin edges must be strictly increasing: {edges}")

    @property
    def num_classes(self) -> int:
        return len(self.bin_edges) + 1


@dataclass
class IntervalPolicy:
    """How many instances get interval labels and from which offset menu."""

    fraction: float
    offsets: tuple[tuple[int, int], ...] = DEFAULT_INTERVAL_OFFSETS
    seed: int = 0
    deduplicate: bool = False

    def __post_init__(self):
        if not 0.0 <= self.fraction <= 1.0:
            raise ValueError(f"fraction must be in [0, 1], got {self.fraction}")
        for lo, hi in self.offsets:
            if lo < 0 or hi < 0:
                raise ValueError(f"offsets must be non-negative, got ({lo}, {hi})")

    def menu(self) -> tuple[tuple[int, int], ...]:
        if not self.deduplicate:
            return self.offsets
        seen: list[tuple[int, int]] = []
        for pair in self.offsets:
            if pair not in seen:
                seen.append(pair)
        return tuple(seen)


def load_csv(spec: DatasetSpec) -> list[tuple[np.ndarray, float]]:
    """Read (features, target) rows in file order.

    The file needs a header row unless the spec carries ``column_names``.
    Malformed rows, NaN/inf values and non-numeric targets are rejected with
    the offending line number.
    """
    if spec.path is None:
        raise ValueError(f"dataset {spec.name!r} has no source path configured")
    path = Path(spec.path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")
    maps = spec.category_maps or {}

    rows: list[tuple[np.ndarray, float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        if spec.column_names is None:
            header = next(reader, None)
            if header is None:
                raise ValueError(f"{path}: empty file, expected a header row")
            header = [h.strip() for h in header]
            first_line = 2
        else:
            header = list(spec.column_names)
            first_line = 1
        positions = {}
        for col in spec.feature_columns + [spec.target_column]:
            if col not in header:
                raise ValueError(f"{path}: column {col!r} not in header {header}")
            positions[col] = header.index(col)

        def parse(col: str, text: str, line: int) -> float:
            text = text.strip()
            mapping = maps.get(col)
            if mapping is not None and text in mapping:
                return float(mapping[text])
            try:
                value = float(text)
            except ValueError:
                raise ValueError(f"{path}, line {line}: column {col!r} has "
                                 f"non-numeric value {text!r}") from None
            if math.isnan(value) or math.isinf(value):
                raise ValueError(f"{path}, line {line}: column {col!r} is {text!r}")
            return value

        for line, record in enumerate(reader, start=first_line):
            if not record or (len(record) == 1 and not record[0].strip()):
                continue
            if len(record) != len(header):
                raise ValueError(f"{path}, line {line}: expected {len(header)} "
                                 f"fields, got {len(record)}")
            features = np.array(
                [parse(c, record[positions[c]], line) for c in spec.feature_columns])
            target = parse(spec.target_column, record[positions[spec.target_column]], line)
            rows.append((features, target))
    return rows


def load_letor(path, num_features: int = 136) -> list[tuple[np.ndarray, float]]:
    """Minimal reader for ``label qid:... i:value`` ranking files.

    Only the relevance label and the feature values are used; 0-based
    relevance grades are shifted up by one later, at binning time.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")
    rows: list[tuple[np.ndarray, float]] = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                label = float(parts[0])
            except ValueError:
                raise ValueError(f"{path}, line {line_no}: bad relevance label "
                                 f"{parts[0]!r}") from None
            features = np.zeros(num_features)
            for token in parts[1:]:
                key, _, value = token.partition(":")
                if key == "qid":
                    continue
                idx = int(key)
                if 1 <= idx <= num_features:
                    features[idx - 1] = float(value)
            rows.append((features, label))
    return rows


def normalize(rows):
    """Shift/scale every feature to zero mean and unit (population) variance.

    Constant features map to zero.  Returns (rows, means, stds) with stds as
    measured, before the zero-guard.
    """
    if not rows:
        raise ValueError("cannot normalize an empty dataset")
    X = np.array([features for features, _ in rows], dtype=np.float64)
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    safe = np.where(stds == 0.0, 1.0, stds)
    Xn = (X - means) / safe
    out = [(Xn[i], target) for i, (_, target) in enumerate(rows)]
    return out, means, stds


def bin_target(value: float, spec: DatasetSpec) -> int:
    """Class of a raw target under the spec's right-inclusive edges."""
    cls = 1
    for edge in spec.bin_edges:
        if value > edge:
            cls += 1
    return cls


def make_interval(y: int, num_classes: int, policy: IntervalPolicy,
                  rng: np.random.Generator) -> tuple[int, int]:
    """One interval drawn from the policy menu, clipped to [1, K].

    Every menu entry straddles the exact label, so ``y_l <= y <= y_r`` holds
    unconditionally.
    """
    menu = policy.menu()
    lo, hi = menu[int(rng.integers(len(menu)))]
    return max(1, y - lo), min(num_classes, y + hi)


def label_stream(pairs, num_classes: int, policy: IntervalPolicy,
                 rng: np.random.Generator | None = None) -> list[IntervalInstance]:
    """Attach interval labels to ``round(fraction * N)`` of the given pairs.

    ``pairs`` are (features, exact_class) with classes already binned.  The
    interval-labeled subset is drawn without replacement; everything else
    gets the degenerate interval [y, y].  Output order matches input order
    and every instance keeps its exact label.
    """
    if rng is None:
        rng = np.random.default_rng(policy.seed)
    n = len(pairs)
    n_interval = round(policy.fraction * n)
    selected = np.zeros(n, dtype=bool)
    if n_interval:
        selected[rng.permutation(n)[:n_interval]] = True
    out = []
    for i, (features, y) in enumerate(pairs):
        y = int(y)
        if selected[i]:
            y_l, y_r = make_interval(y, num_classes, policy, rng)
        else:
            y_l = y_r = y
        out.append(IntervalInstance(features, y_l, y_r, exact_label=y))
    return out


# ---------------------------------------------------------------------------
# Prepared tables and datasets


@dataclass
class PreparedTable:
    """Normalized features with binned classes, ready for labeling."""

    name: str
    pairs: list[tuple[np.ndarray, int]]
    num_classes: int
    warnings: dict[str, int] = field(default_factory=dict)
    source_hash: str = ""


@dataclass
class OrdinalDataset:
    """A labeled instance pool one online run samples from."""

    name: str
    num_classes: int
    instances: list[IntervalInstance]
    warnings: dict[str, int] = field(default_factory=dict)
    source_hash: str = ""


def _hash_pairs(pairs) -> str:
    digest = hashlib.sha256()
    for features, y in pairs:
        digest.update(np.asarray(features, dtype=np.float64).tobytes())
        digest.update(str(y).encode())
    return digest.hexdigest()


def prepare_tabular(spec: DatasetSpec) -> PreparedTable:
    """Load, normalize and bin one CSV dataset."""
    raw = load_csv(spec)
    rows, _, _ = normalize(raw)
    out_of_range = 0
    pairs = []
    for features, target in rows:
        if spec.target_range is not None:
            lo, hi = spec.target_range
            if target < lo or target > hi:
                out_of_range += 1
        pairs.append((features, bin_target(target, spec)))
    warnings = {"targets_out_of_range": out_of_range} if out_of_range else {}
    digest = hashlib.sha256(Path(spec.path).read_bytes()).hexdigest()
    return PreparedTable(spec.name, pairs, spec.num_classes, warnings, digest)


def prepare_letor(path, num_classes: int = 5, num_features: int = 136,
                  max_rows: int | None = None, seed: int = 0) -> PreparedTable:
    """Load a relevance-ranking file; grades 0..K-1 become classes 1..K.

    ``max_rows`` subsamples without replacement under the given seed, which
    keeps full-scale files at desk scale.
    """
    raw = load_letor(path, num_features=num_features)
    if max_rows is not None and max_rows < len(raw):
        keep = np.sort(np.random.default_rng(seed).permutation(len(raw))[:max_rows])
        raw = [raw[i] for i in keep]
    rows, _, _ = normalize(raw)
    clipped = 0
    pairs = []
    for features, grade in rows:
        cls = int(grade) + 1
        if not 1 <= cls <= num_classes:
            clipped += 1
            cls = min(max(cls, 1), num_classes)
        pairs.append((features, cls))
    warnings = {"grades_out_of_range": clipped} if clipped else {}
    return PreparedTable(Path(path).stem, pairs, num_classes, warnings,
                         _hash_pairs(pairs))


def assemble_dataset(table: PreparedTable, policy: IntervalPolicy,
                     rng: np.random.Generator | None = None) -> OrdinalDataset:
    """Interval-label a prepared table into a runnable dataset."""
    instances = label_stream(table.pairs, table.num_classes, policy, rng)
    return OrdinalDataset(table.name, table.num_classes, instances,
                          dict(table.warnings), table.source_hash)


# ---------------------------------------------------------------------------
# Built-in dataset specs (files are user-supplied, see README)

_ABALONE_COLUMNS = ["sex", "length", "diameter", "height", "whole_weight",
                    "shucked_weight", "viscera_weight", "shell_weight", "rings"]

_PARKINSON_FEATURES = [
    "age", "sex", "test_time", "Jitter(%)", "Jitter(Abs)", "Jitter:RAP",
    "Jitter:PPQ5", "Jitter:DDP", "Shimmer", "Shimmer(dB)", "Shimmer:APQ3",
    "Shimmer:APQ5", "Shimmer:APQ11", "Shimmer:DDA", "NHR", "HNR", "RPDE",
    "DFA", "PPE"]

_CALIFORNIA_FEATURES = ["longitude", "latitude", "housing_median_age",
                        "total_rooms", "total_bedrooms", "population",
                        "households", "median_income"]

BUILTIN_FILES = {
    "abalone": "abalone.data",
    "california": "california.csv",
    "parkinson": "parkinsons_updrs.data",
    "mslr": "mslr_fold1.txt",
}


def data_dir(override=None) -> Path:
    if override is not None:
        return Path(override)
    return Path(os.environ.get(DATA_DIR_ENV, "data"))


def builtin_spec(name: str, directory=None) -> DatasetSpec:
    """Spec for one of the four reference datasets (abalone, california,
    parkinson, mslr); the data file is looked up under ``directory``, the
    ``INTERVAL_RANK_DATA`` env var, or ``./data``."""
    base = data_dir(directory)
    if name == "abalone":
        return DatasetSpec(
            name="abalone",
            path=str(base / BUILTIN_FILES[name]),
            feature_columns=_ABALONE_COLUMNS[:-1],
            target_column="rings",
            bin_edges=[7, 9, 12],           # ring bands 1-7 / 8-9 / 10-12 / 13-29
            target_range=(1, 29),
            category_maps={"sex": {"M": 0.0, "F": 1.0, "I": 2.0}},
            column_names=_ABALONE_COLUMNS,  # UCI file ships headerless
        )
    if name == "california":
        return DatasetSpec(
            name="california",
            path=str(base / BUILTIN_FILES[name]),
            feature_columns=_CALIFORNIA_FEATURES,
            target_column="median_house_value",
            bin_edges=[100000, 200000, 300000, 400000],
            target_range=(1, 500001),
        )
    if name == "parkinson":
        return DatasetSpec(
            name="parkinson",
            path=str(base / BUILTIN_FILES[name]),
            feature_columns=list(_PARKINSON_FEATURES),
            target_column="total_UPDRS",
            bin_edges=[17, 27, 37],
            target_range=(7, 54.992),
        )
    raise ValueError(f"unknown built-in dataset {name!r} "
                     f"(mslr is prepared via prepare_letor)")


def load_spec_toml(path) -> DatasetSpec:
    """Dataset spec from a TOML file; relative data paths resolve against
    the TOML file's directory."""
    try:
        import tomllib
    except ImportError:                       # Python 3.10
        import tomli as tomllib
    path = Path(path)
    with open(path, "rb") as fh:
        obj = tomllib.load(fh)
    data_path = obj.get("path")
    if data_path is not None and not Path(data_path).is_absolute():
        data_path = str(path.parent / data_path)
    target_range = obj.get("target_range")
    return DatasetSpec(
        name=obj.get("name", path.stem),
        path=data_path,
        feature_columns=list(obj["feature_columns"]),
        target_column=obj["target_column"],
        bin_edges=[float(v) for v in obj["bin_edges"]],
        target_range=tuple(target_range) if target_range else None,
        category_maps=obj.get("category_maps"),
        column_names=obj.get("column_names"),
    )


# ---------------------------------------------------------------------------
# Synthetic data


def synthetic_table(seed: int = 0, n: int = 400, num_features: int = 6,
                    num_classes: int = 5, label_noise: float = 0.15) -> PreparedTable:
    """Noisy linearly-thresholded ordinal table; not margin-separable.

    A hidden ranker scores Gaussian features, scores are jittered before
    thresholding, and a ``label_noise`` fraction of labels takes an extra
    +-1 class hit, so no predictor achieves zero hinge loss.
    """
    rng = np.random.default_rng(seed)
    hidden = rng.normal(0.0, 1.0, num_features)
    hidden /= np.linalg.norm(hidden)
    edges = np.linspace(-1.2, 1.2, num_classes - 1)
    pairs = []
    for _ in range(n):
        x = rng.normal(0.0, 1.0, num_features) / math.sqrt(num_features)
        s = float(np.dot(hidden, x)) * 2.0 + rng.normal(0.0, 0.3)
        y = label_from_score(edges, s)
        if rng.random() < label_noise:
            y = min(max(y + (1 if rng.random() < 0.5 else -1), 1), num_classes)
        pairs.append((x, y))
    return PreparedTable(f"synthetic(seed={seed})", pairs, num_classes,
                         source_hash=_hash_pairs(pairs))


def separable_stream(seed: int, trials: int, num_features: int = 5,
                     num_classes: int = 5, interval_width: int = 0,
                     threshold_gap: float = 2.6):
    """Margin-separable interval stream plus the ranker that separates it.

    The ideal ranker reads the score off the first coordinate against evenly
    spaced thresholds.  Every trial first picks an interval of exactly
    ``interval_width`` classes, then a score clearing each constrained
    threshold by at least a unit margin, so the ideal ranker's hinge loss is
    zero on the whole stream.  Remaining coordinates are bounded noise.

    Returns (instances, ideal_model).
    """
    if interval_width > num_classes - 1:
        raise ValueError("interval width cannot exceed num_classes - 1")
    if threshold_gap <= 2.0:
        raise ValueError("threshold gap must exceed 2 to leave a margin band")
    rng = np.random.default_rng(seed)
    centered = np.arange(num_classes - 1) - (num_classes - 2) / 2.0
    edges = centered * threshold_gap
    outer = threshold_gap / 2.0    # band half-width outside the extreme edges
    instances = []
    for _ in range(trials):
        y_l = int(rng.integers(1, num_classes - interval_width + 1))
        y_r = y_l + interval_width
        low = edges[y_l - 2] + 1.0 if y_l >= 2 else edges[0] - 1.0 - outer
        high = edges[y_r - 1] - 1.0 if y_r <= num_classes - 1 else edges[-1] + 1.0 + outer
        s = float(rng.uniform(low, high))
        x = np.empty(num_features)
        x[0] = s
        x[1:] = rng.uniform(-0.8, 0.8, num_features - 1)
        exact = label_from_score(edges, s)
        instances.append(IntervalInstance(x, y_l, y_r, exact))
    ideal_weights = np.zeros(num_features)
    ideal_weights[0] = 1.0
    return instances, RankingModel(ideal_weights, edges)
