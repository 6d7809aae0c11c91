"""Interval-insensitive ranking losses.

For an interval label ``[y_l, y_r]`` only the thresholds *outside* the
interval band constrain the score: thresholds ``1..y_l-1`` should sit at
least a unit margin below it and thresholds ``y_r..K-1`` at least a unit
margin above.  The counting loss tallies violated thresholds; the convex
surrogate replaces each indicator with a hinge

    left  i < y_l :  max(0, 1 - score + thresholds[i])
    right i >= y_r:  max(0, 1 + score - thresholds[i])

and is zero exactly when every margin holds.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class ThresholdLosses:
    """Per-threshold hinge losses of one instance against one model.

    ``left`` / ``right`` map 1-based threshold indices to hinge values; middle
    thresholds (inside the label interval) are unconstrained and absent.
    ``left_raw`` / ``right_raw`` keep the signed hinge arguments over the same
    indices: the stored loss is their positive part, and the sign carries how
    much slack a satisfied margin has, which the update solvers need when a
    satisfied threshold is dragged to its margin boundary.
    """

    score: float
    left: dict[int, float]
    right: dict[int, float]
    left_raw: dict[int, float]
    right_raw: dict[int, float]

    def total(self) -> float:
        return sum(self.left.values()) + sum(self.right.values())

    def squared_total(self) -> float:
        return (sum(v * v for v in self.left.values())
                + sum(v * v for v in self.right.values()))


def _check_interval(y_l: int, y_r: int, num_classes: int) -> None:
    if not 1 <= y_l <= y_r <= num_classes:
        raise ValueError(
            f"interval [{y_l}, {y_r}] out of bounds for {num_classes} classes")


def interval_mae_loss(score: float, thresholds, y_l: int, y_r: int) -> int:
    """Count of constrained thresholds on the wrong side of the score.

    Left thresholds count when ``score < threshold``, right ones when
    ``score >= threshold`` (a score exactly on a right threshold counts as a
    violation, matching the strict prediction rule).
    """
    th = [float(v) for v in thresholds]
    _check_interval(y_l, y_r, len(th) + 1)
    violations = 0
    for i in range(1, y_l):
        if score < th[i - 1]:
            violations += 1
    for i in range(y_r, len(th) + 1):
        if score >= th[i - 1]:
            violations += 1
    return violations


def surrogate_losses(score: float, thresholds, y_l: int, y_r: int) -> ThresholdLosses:
    """Hinge losses of every constrained threshold, see module docstring."""
    th = [float(v) for v in thresholds]
    _check_interval(y_l, y_r, len(th) + 1)
    left: dict[int, float] = {}
    left_raw: dict[int, float] = {}
    # grouping as 1 -/+ (score - threshold) keeps the hinge consistent with
    # the counting-loss indicators at exact float equality: a fired indicator
    # always sees a hinge of at least 1
    for i in range(1, y_l):
        raw = 1.0 - (score - th[i - 1])
        left_raw[i] = raw
        left[i] = raw if raw > 0.0 else 0.0
    right: dict[int, float] = {}
    right_raw: dict[int, float] = {}
    for i in range(y_r, len(th) + 1):
        raw = 1.0 + (score - th[i - 1])
        right_raw[i] = raw
        right[i] = raw if raw > 0.0 else 0.0
    return ThresholdLosses(score=float(score), left=left, right=right,
                           left_raw=left_raw, right_raw=right_raw)


def total_surrogate(losses: ThresholdLosses) -> float:
    """Sum of all stored hinge values."""
    return losses.total()
