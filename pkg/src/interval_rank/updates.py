"""One-trial online updates for the three ranking variants.

Every update is passive on zero hinge loss (the model is left untouched,
bit for bit) and otherwise applies the closed-form solution of its
projection problem: ``w += step * x``, supported left thresholds move down
by their multipliers, supported right thresholds move up.  Threshold order
is preserved by construction.  Updates mutate the model in place (callers
that need history must snapshot first) and return a trial report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .loss import surrogate_losses
from .model import IntervalInstance, RankingModel
from .support import SupportSolution, solve_pa, solve_pa1, solve_pa2


@dataclass
class UpdateReport:
    """What one trial did: variant, activity, and loss before/after."""

    variant: str
    passive: bool
    pre_loss: float
    post_loss: float
    solution: SupportSolution | None = None


def _apply(model: RankingModel, inst: IntervalInstance, variant: str, solver) -> UpdateReport:
    x = inst.features
    if x.shape != model.weights.shape:
        raise ValueError(
            f"feature vector has shape {x.shape}, model expects {model.weights.shape}")
    current = float(np.dot(model.weights, x))
    losses = surrogate_losses(current, model.thresholds, inst.y_l, inst.y_r)
    pre = losses.total()
    if pre == 0.0:
        return UpdateReport(variant, True, 0.0, 0.0, None)

    h = float(np.dot(x, x))
    sol = solver(losses, h)
    model.weights += sol.step * x
    th = model.thresholds
    for i, v in sol.left_multipliers.items():
        th[i - 1] -= v
    for i, v in sol.right_multipliers.items():
        th[i - 1] += v
    post = surrogate_losses(current + sol.step * h, th, inst.y_l, inst.y_r).total()
    return UpdateReport(variant, False, pre, post, sol)


def update_pa(model: RankingModel, inst: IntervalInstance) -> UpdateReport:
    """Hard-margin update: the smallest parameter change that zeroes the
    hinge loss of this instance."""
    return _apply(model, inst, "PA",
                  lambda losses, h: solve_pa(losses, inst.y_l, inst.y_r, h))


def update_pa1(model: RankingModel, inst: IntervalInstance, C: float) -> UpdateReport:
    """Linear-slack update: multipliers clamped into [0, C], so no threshold
    moves by more than C in one trial."""
    return _apply(model, inst, "PA1",
                  lambda losses, h: solve_pa1(losses, inst.y_l, inst.y_r, h, C))


def update_pa2(model: RankingModel, inst: IntervalInstance, C: float) -> UpdateReport:
    """Squared-slack update: unclamped multipliers shrunk by 1 + 1/(2C)."""
    return _apply(model, inst, "PA2",
                  lambda losses, h: solve_pa2(losses, inst.y_l, inst.y_r, h, C))
