"""Online baselines trained on exact labels only.

Two standard comparison learners: a threshold perceptron ranker that keeps a
shared weight vector with per-class thresholds, and a multiclass perceptron
that ranks by argmax over per-class weight vectors (ignoring label order).
Both are passive on correctly ranked instances and both return the label
they predicted *before* updating, as the online protocol requires.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import label_from_score


@dataclass
class PRankModel:
    """Threshold perceptron ranker: weight vector plus K-1 thresholds."""

    weights: np.ndarray
    thresholds: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.thresholds = np.asarray(self.thresholds, dtype=np.float64)

    @classmethod
    def zeros(cls, num_features: int, num_classes: int) -> "PRankModel":
        return cls(np.zeros(num_features), np.zeros(num_classes - 1))

    @property
    def num_classes(self) -> int:
        return self.thresholds.shape[0] + 1


def prank_predict(model: PRankModel, features: np.ndarray) -> int:
    return label_from_score(model.thresholds, float(np.dot(model.weights, features)))


def prank_update(model: PRankModel, features: np.ndarray, label: int | None) -> int:
    """One ranking perceptron step; returns the pre-update prediction.

    Each threshold i has a direction target: +1 when the label sits above it,
    -1 otherwise.  Every threshold whose margin sign is violated (including
    exact ties) contributes a unit correction: the weight vector gains
    ``target * x`` and the threshold moves one unit against its target.
    """
    if label is None:
        raise ValueError("baseline update requires an exact label")
    if not 1 <= label <= model.num_classes:
        raise ValueError(f"label {label} out of range 1..{model.num_classes}")
    x = np.asarray(features, dtype=np.float64)
    if x.shape != model.weights.shape:
        raise ValueError(
            f"feature vector has shape {x.shape}, model expects {model.weights.shape}")
    s = float(np.dot(model.weights, x))
    pred = label_from_score(model.thresholds, s)
    th = model.thresholds
    shift = 0.0
    for i in range(1, model.num_classes):
        target = 1.0 if label > i else -1.0
        if target * (s - th[i - 1]) <= 0.0:
            shift += target
            th[i - 1] -= target
    if shift != 0.0:
        model.weights += shift * x
    return pred


@dataclass
class MCPModel:
    """Multiclass perceptron: one weight row per class."""

    weights: np.ndarray   # shape (K, d)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)

    @classmethod
    def zeros(cls, num_features: int, num_classes: int) -> "MCPModel":
        return cls(np.zeros((num_classes, num_features)))

    @property
    def num_classes(self) -> int:
        return self.weights.shape[0]


def mcp_predict(model: MCPModel, features: np.ndarray) -> int:
    # np.argmax takes the first maximum, so score ties break to the lowest class.
    return int(np.argmax(model.weights @ features)) + 1


def mcp_update(model: MCPModel, features: np.ndarray, label: int | None) -> int:
    """One multiclass perceptron step; returns the pre-update prediction."""
    if label is None:
        raise ValueError("baseline update requires an exact label")
    if not 1 <= label <= model.num_classes:
        raise ValueError(f"label {label} out of range 1..{model.num_classes}")
    x = np.asarray(features, dtype=np.float64)
    if x.shape != (model.weights.shape[1],):
        raise ValueError(
            f"feature vector has shape {x.shape}, model expects ({model.weights.shape[1]},)")
    pred = mcp_predict(model, x)
    if pred != label:
        model.weights[label - 1] += x
        model.weights[pred - 1] -= x
    return pred
