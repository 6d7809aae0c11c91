"""Linear ranking hypothesis: a weight vector and ordered thresholds.

A ranker over classes ``1..K`` keeps a weight vector ``w`` and ``K-1``
non-decreasing thresholds.  An instance scores ``w @ x`` and is assigned the
first class whose threshold the score fails to reach; the top class acts as a
catch-all, so no infinite threshold is ever stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

#: Threshold ordering is enforced up to this slack (float noise from updates).
ORDER_TOL = 1e-12


@dataclass
class RankingModel:
    """Weight vector plus ordered thresholds cutting the score line into classes.

    Parameters
    ----------
    weights : array of shape (d,)
        Linear score coefficients.
    thresholds : array of shape (K-1,)
        Non-decreasing class boundaries; class ``K`` needs no stored boundary.
    """

    weights: np.ndarray
    thresholds: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.thresholds = np.asarray(self.thresholds, dtype=np.float64)
        self.validate()

    @classmethod
    def zeros(cls, num_features: int, num_classes: int) -> "RankingModel":
        """All-zero model, the conventional starting point for online runs."""
        if num_classes < 2:
            raise ValueError(f"need at least 2 classes, got {num_classes}")
        return cls(np.zeros(num_features), np.zeros(num_classes - 1))

    @property
    def num_classes(self) -> int:
        return self.thresholds.shape[0] + 1

    @property
    def num_features(self) -> int:
        return self.weights.shape[0]

    def validate(self) -> None:
        """Raise ValueError if the threshold ordering invariant is broken."""
        if self.weights.ndim != 1:
            raise ValueError("weights must be a 1-d vector")
        if self.thresholds.ndim != 1 or self.thresholds.shape[0] < 1:
            raise ValueError("need at least one threshold (two classes)")
        th = self.thresholds
        if np.any(th[1:] - th[:-1] < -ORDER_TOL):
            raise ValueError(f"thresholds out of order: {th!r}")

    def copy(self) -> "RankingModel":
        return RankingModel(self.weights.copy(), self.thresholds.copy())

    def allclose(self, other: "RankingModel", tol: float = 1e-9) -> bool:
        """Elementwise comparison at the tolerance used throughout the tests."""
        return (
            self.weights.shape == other.weights.shape
            and self.thresholds.shape == other.thresholds.shape
            and bool(np.all(np.abs(self.weights - other.weights) <= tol))
            and bool(np.all(np.abs(self.thresholds - other.thresholds) <= tol))
        )

    def to_json(self) -> str:
        """Serialize as ``{"K":..., "weights":[...], "thresholds":[...]}``.

        Floats are written with 17 significant digits so parsing the text
        recovers bit-identical values.
        """
        w = ", ".join(format(v, ".17g") for v in self.weights)
        t = ", ".join(format(v, ".17g") for v in self.thresholds)
        return f'{{"K": {self.num_classes}, "weights": [{w}], "thresholds": [{t}]}}'

    @classmethod
    def from_json(cls, text: str) -> "RankingModel":
        obj = json.loads(text)
        model = cls(np.array(obj["weights"], dtype=np.float64),
                    np.array(obj["thresholds"], dtype=np.float64))
        if obj["K"] != model.num_classes:
            raise ValueError(
                f"inconsistent snapshot: K={obj['K']} but "
                f"{len(obj['thresholds'])} thresholds")
        return model


@dataclass
class IntervalInstance:
    """Feature vector with an interval label ``[y_l, y_r]``.

    The annotation promises only that the true class lies in the closed
    interval; ``y_l == y_r`` is the exact-label case.  When known, the exact
    label rides along for evaluation.
    """

    features: np.ndarray
    y_l: int
    y_r: int
    exact_label: int | None = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        if not 1 <= self.y_l <= self.y_r:
            raise ValueError(f"bad interval [{self.y_l}, {self.y_r}]")
        if self.exact_label is not None and not self.y_l <= self.exact_label <= self.y_r:
            raise ValueError(
                f"exact label {self.exact_label} outside [{self.y_l}, {self.y_r}]")


def score(model: RankingModel, features: np.ndarray) -> float:
    """Dot product ``w @ x``; raises ValueError on dimension mismatch."""
    x = np.asarray(features, dtype=np.float64)
    if x.shape != model.weights.shape:
        raise ValueError(
            f"feature vector has shape {x.shape}, model expects {model.weights.shape}")
    return float(np.dot(model.weights, x))


def label_from_score(thresholds: np.ndarray, value: float) -> int:
    """Class of a raw score: the first ``i`` with ``value - thresholds[i] < 0``.

    The implicit top boundary is +inf, so every finite score gets a class.  A
    score exactly equal to a threshold clears it (the comparison is strict),
    which pushes boundary ties to the higher class.
    """
    return int(1 + np.count_nonzero(value >= thresholds))


def predict(model: RankingModel, features: np.ndarray) -> int:
    """Predicted class in ``1..K`` for a feature vector."""
    return label_from_score(model.thresholds, score(model, features))
