"""Brute-force reference solvers for the per-trial update problems.

These certify the closed-form update path, so they deliberately share as
little structure with it as possible: the hard-margin and squared-slack
problems are solved by enumerating *every* subset pair of candidate active
thresholds (not only the contiguous blocks the greedy path relies on),
keeping the feasible KKT-consistent candidates and returning the one with
the smallest objective.  The clamped variant is solved as a box-constrained
dual by projected coordinate ascent driven to a tiny duality gap.

Exponential in the number of classes; guarded at 12 and meant for tests and
spot checks, not for training loops.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .loss import surrogate_losses
from .model import IntervalInstance, RankingModel
from .support import SolverError

#: Enumeration explores 2^(K-1) subset pairs; refuse beyond this many classes.
MAX_ORACLE_CLASSES = 12

_FEAS_TOL = 1e-10


@dataclass
class OracleSolution:
    """Optimal parameters of one trial's problem with KKT diagnostics."""

    weights: np.ndarray
    thresholds: np.ndarray
    objective: float
    multipliers: dict[int, float]
    kkt_residual: float


def _setup(model: RankingModel, inst: IntervalInstance):
    if model.num_classes > MAX_ORACLE_CLASSES:
        raise ValueError(
            f"oracle enumeration supports at most {MAX_ORACLE_CLASSES} classes, "
            f"got {model.num_classes}")
    x = inst.features
    if x.shape != model.weights.shape:
        raise ValueError(
            f"feature vector has shape {x.shape}, model expects {model.weights.shape}")
    s = float(np.dot(model.weights, x))
    h = float(np.dot(x, x))
    losses = surrogate_losses(s, model.thresholds, inst.y_l, inst.y_r)
    left_idx = sorted(losses.left_raw)
    right_idx = sorted(losses.right_raw)
    left_raw = [losses.left_raw[i] for i in left_idx]
    right_raw = [losses.right_raw[i] for i in right_idx]
    return x, s, h, left_idx, left_raw, right_idx, right_raw


def _mask_sums(values):
    """Subset sums and popcounts for every bitmask over ``values``."""
    sums = [0.0] * (1 << len(values))
    bits = [0] * (1 << len(values))
    for mask in range(1, 1 << len(values)):
        low = mask & (-mask)
        rest = mask ^ low
        sums[mask] = sums[rest] + values[low.bit_length() - 1]
        bits[mask] = bits[rest] + 1
    return sums, bits


def _apply_solution(model, x, a, left_idx, right_idx, lam, mu):
    weights = model.weights + a * x
    thresholds = model.thresholds.copy()
    multipliers: dict[int, float] = {}
    for i, v in zip(left_idx, lam):
        if v != 0.0:
            thresholds[i - 1] -= v
            multipliers[i] = v
    for i, v in zip(right_idx, mu):
        if v != 0.0:
            thresholds[i - 1] += v
            multipliers[i] = v
    return weights, thresholds, multipliers


def _enumerate(model: RankingModel, inst: IntervalInstance, quad: float) -> OracleSolution:
    x, _, h, left_idx, left_raw, right_idx, right_raw = _setup(model, inst)
    nl, nr = len(left_raw), len(right_raw)
    sums_l, bits_l = _mask_sums(left_raw)
    sums_r, bits_r = _mask_sums(right_raw)

    best = None
    for ml in range(1 << nl):
        for mr in range(1 << nr):
            taken = bits_l[ml] + bits_r[mr]
            a = (sums_l[ml] - sums_r[mr]) / (quad + taken * h)
            ok = True
            sq = 0.0
            residual = 0.0
            for k in range(nl):
                v = left_raw[k] - a * h
                if (ml >> k) & 1:
                    m = v / quad
                    if m < -_FEAS_TOL:
                        ok = False
                        break
                    sq += m * m
                    residual = max(residual, -m)
                elif v > _FEAS_TOL:
                    ok = False
                    break
                else:
                    residual = max(residual, v)
            if not ok:
                continue
            for k in range(nr):
                v = right_raw[k] + a * h
                if (mr >> k) & 1:
                    m = v / quad
                    if m < -_FEAS_TOL:
                        ok = False
                        break
                    sq += m * m
                    residual = max(residual, -m)
                elif v > _FEAS_TOL:
                    ok = False
                    break
                else:
                    residual = max(residual, v)
            if not ok:
                continue
            objective = 0.5 * a * a * h + 0.5 * quad * sq
            if best is None or objective < best[0]:
                best = (objective, a, ml, mr, max(residual, 0.0))
    if best is None:
        raise RuntimeError("internal error: no feasible subset candidate; the "
                           "projection problem is always feasible")

    objective, a, ml, mr, residual = best
    lam = [(left_raw[k] - a * h) / quad if (ml >> k) & 1 else 0.0 for k in range(nl)]
    mu = [(right_raw[k] + a * h) / quad if (mr >> k) & 1 else 0.0 for k in range(nr)]
    weights, thresholds, multipliers = _apply_solution(
        model, x, a, left_idx, right_idx, lam, mu)
    return OracleSolution(weights, thresholds, objective, multipliers, residual)


def oracle_pa(model: RankingModel, inst: IntervalInstance) -> OracleSolution:
    """Exhaustive solution of the hard-margin trial problem."""
    return _enumerate(model, inst, 1.0)


def oracle_pa2(model: RankingModel, inst: IntervalInstance, C: float) -> OracleSolution:
    """Exhaustive solution of the squared-slack trial problem."""
    if C <= 0:
        raise ValueError(f"aggressiveness C must be positive, got {C}")
    return _enumerate(model, inst, 1.0 + 0.5 / C)


def oracle_pa1(model: RankingModel, inst: IntervalInstance, C: float, *,
               gap_tol: float = 1e-12, max_steps: int = 10 ** 6) -> OracleSolution:
    """Clamped trial problem solved as a box dual by coordinate ascent.

    Runs exact coordinate maximization passes until the duality gap and the
    per-pass multiplier change are negligible; raises SolverError with the
    achieved gap if the step budget runs out first.  Tolerances are relative
    to the objective scale: on badly scaled problems the representable gap is
    floored by float precision times that scale.
    """
    if C <= 0:
        raise ValueError(f"aggressiveness C must be positive, got {C}")
    x, _, h, left_idx, left_raw, right_idx, right_raw = _setup(model, inst)
    raws = left_raw + right_raw
    signs = [1.0] * len(left_raw) + [-1.0] * len(right_raw)
    n = len(raws)

    alpha = [0.0] * n
    a = 0.0
    denom = 1.0 + h
    steps = 0
    gap = 0.0
    while n:
        change = 0.0
        for k in range(n):
            rest = a - signs[k] * alpha[k]
            new = (raws[k] - signs[k] * rest * h) / denom
            new = 0.0 if new < 0.0 else (C if new > C else new)
            change = max(change, abs(new - alpha[k]))
            a = rest + signs[k] * new
            alpha[k] = new
        steps += n
        sq = sum(v * v for v in alpha)
        slack = sum(max(0.0, raws[k] - signs[k] * a * h - alpha[k]) for k in range(n))
        primal = 0.5 * a * a * h + 0.5 * sq + C * slack
        dual = sum(alpha[k] * raws[k] for k in range(n)) - 0.5 * a * a * h - 0.5 * sq
        gap = primal - dual
        scale = max(1.0, abs(primal), abs(dual))
        if gap <= gap_tol * scale and change <= 1e-10 * max(1.0, max(alpha)):
            break
        if steps >= max_steps:
            raise SolverError(
                f"coordinate ascent exhausted {max_steps} steps; achieved "
                f"duality gap {gap:.3e}")

    sq = sum(v * v for v in alpha)
    slack = sum(max(0.0, raws[k] - signs[k] * a * h - alpha[k]) for k in range(n))
    objective = 0.5 * a * a * h + 0.5 * sq + C * slack
    weights, thresholds, multipliers = _apply_solution(
        model, x, a, left_idx, right_idx,
        alpha[:len(left_raw)], alpha[len(left_raw):])
    return OracleSolution(weights, thresholds, objective, multipliers, max(gap, 0.0))


def trial_objective(before: RankingModel, after: RankingModel,
                    inst: IntervalInstance, variant: str,
                    C: float | None = None) -> float:
    """Objective value a closed-form update achieved, for oracle comparison.

    All variants pay half the squared parameter movement; the slack variants
    add their penalty on the hinge losses remaining at the new parameters
    (linear in them for "pa1", squared for "pa2").
    """
    dw = after.weights - before.weights
    dth = after.thresholds - before.thresholds
    base = 0.5 * float(np.dot(dw, dw)) + 0.5 * float(np.dot(dth, dth))
    if variant == "pa":
        return base
    if C is None or C <= 0:
        raise ValueError(f"variant {variant!r} needs C > 0")
    s = float(np.dot(after.weights, inst.features))
    post = surrogate_losses(s, after.thresholds, inst.y_l, inst.y_r)
    if variant == "pa1":
        return base + C * post.total()
    if variant == "pa2":
        return base + C * post.squared_total()
    raise ValueError(f"unknown variant {variant!r}")


def random_trial(rng: np.random.Generator, max_features: int = 6,
                 max_classes: int = 8):
    """Random (model, instance) pair for oracle-vs-closed-form comparisons.

    Dimensions, scales, interval widths and boundary cases (``y_l = 1``,
    ``y_r = K``) all vary; roughly a third of the trials come out passive.
    """
    d = int(rng.integers(1, max_features + 1))
    num_classes = int(rng.integers(2, max_classes + 1))
    weights = rng.normal(0.0, 1.0, d)
    thresholds = np.sort(rng.normal(0.0, 2.0, num_classes - 1))
    model = RankingModel(weights, thresholds)
    x = rng.normal(0.0, 1.0, d) * rng.uniform(0.2, 2.0)
    y_l = int(rng.integers(1, num_classes + 1))
    width = int(rng.integers(0, num_classes - y_l + 1))
    y_r = y_l + width
    exact = int(rng.integers(y_l, y_r + 1))
    return model, IntervalInstance(x, y_l, y_r, exact)
