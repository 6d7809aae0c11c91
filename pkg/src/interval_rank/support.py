"""Active-threshold discovery for the per-trial ranking updates.

Each update variant solves a small projection problem: move (w, thresholds) as
little as possible while satisfying (exactly, or up to penalized slack) the
unit-margin constraints of the current instance.  At the optimum only a
*support set* of thresholds moves: a contiguous block ending at ``y_l - 1`` on
the left and one starting at ``y_r`` on the right.  The weight vector moves by
``step * x`` where ``step`` is the signed sum of the thresholds' multipliers.

Given supports, everything reduces to one scalar.  Writing ``h = ||x||^2``,
``quad = 1`` for the hard-margin variant and ``1 + 1/(2C)`` for the
squared-slack one, and ``g_i`` for the signed hinge argument of threshold
``i``:

    step = (sum of left g_i - sum of right g_i) / (quad + |support| * h)
    left multiplier  = (g_i - step * h) / quad
    right multiplier = (g_i + step * h) / quad

The supports themselves are grown greedily outward from the label interval: a
candidate joins iff its multiplier, computed with the candidate tentatively
included, is positive.  Each accepted member moves ``step`` in the direction
that keeps every earlier member's multiplier positive, so the loop never has
to remove anything and stops at the exact optimum.

The linear-slack variant instead clamps multipliers into [0, C]; its fixed
point is found by repeated full sweeps, with an exact piecewise-linear root
solve as a fallback when the sweeps cycle (see ``solve_pa1``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .loss import ThresholdLosses

#: A multiplier must exceed this to count as support membership.
MEMBER_TOL = 1e-12


class SolverError(RuntimeError):
    """An iterative solve failed to reach its tolerance."""


@dataclass
class SupportSolution:
    """Support sets with their multipliers and the aggregate weight step."""

    left_support: tuple[int, ...]
    right_support: tuple[int, ...]
    left_multipliers: dict[int, float]
    right_multipliers: dict[int, float]
    step: float

    def multiplier_sum(self) -> float:
        return (sum(self.left_multipliers.values())
                - sum(self.right_multipliers.values()))


def _sides(losses: ThresholdLosses, y_l: int, y_r: int):
    """Anchor-first index/argument lists for both sides of the interval."""
    left_idx = sorted(losses.left_raw, reverse=True)   # y_l-1 down to 1
    right_idx = sorted(losses.right_raw)               # y_r up to K-1
    if left_idx and left_idx[0] != y_l - 1:
        raise ValueError(f"losses were built for a different interval than [{y_l}, {y_r}]")
    if right_idx and right_idx[0] != y_r:
        raise ValueError(f"losses were built for a different interval than [{y_l}, {y_r}]")
    left_raw = [losses.left_raw[i] for i in left_idx]
    right_raw = [losses.right_raw[i] for i in right_idx]
    return left_idx, left_raw, right_idx, right_raw


def _check_active(losses: ThresholdLosses, left_idx, right_idx) -> None:
    if not left_idx and not right_idx:
        raise ValueError("label interval spans every class: no constrained "
                         "thresholds, nothing to solve")
    if losses.total() <= 0.0:
        raise ValueError("all hinge losses are zero: the trial is passive and "
                         "must be skipped by the caller")


def _greedy_solution(losses: ThresholdLosses, y_l: int, y_r: int,
                     h: float, quad: float) -> SupportSolution:
    left_idx, left_raw, right_idx, right_raw = _sides(losses, y_l, y_r)
    _check_active(losses, left_idx, right_idx)

    signed = 0.0   # running sum of left args minus right args over the supports
    taken = 0
    nl = nr = 0
    while True:
        added = False
        if nl < len(left_raw):
            g = left_raw[nl]
            lam = (g - h * (signed + g) / (quad + (taken + 1) * h)) / quad
            if lam > MEMBER_TOL:
                signed += g
                taken += 1
                nl += 1
                added = True
        if nr < len(right_raw):
            g = right_raw[nr]
            mu = (g + h * (signed - g) / (quad + (taken + 1) * h)) / quad
            if mu > MEMBER_TOL:
                signed -= g
                taken += 1
                nr += 1
                added = True
        if not added:
            break

    a = signed / (quad + taken * h) if taken else 0.0
    lam = {left_idx[k]: (left_raw[k] - a * h) / quad for k in range(nl)}
    mu = {right_idx[k]: (right_raw[k] + a * h) / quad for k in range(nr)}
    step = sum(lam.values()) - sum(mu.values())
    return SupportSolution(tuple(sorted(lam)), tuple(sorted(mu)), lam, mu, step)


def solve_pa(losses: ThresholdLosses, y_l: int, y_r: int,
             x_norm_sq: float) -> SupportSolution:
    """Supports and multipliers of the hard-margin update.

    Raises ValueError when every hinge is zero (passive trial) or when the
    interval covers all classes (no constraints exist).
    """
    return _greedy_solution(losses, y_l, y_r, x_norm_sq, 1.0)


def solve_pa2(losses: ThresholdLosses, y_l: int, y_r: int,
              x_norm_sq: float, C: float) -> SupportSolution:
    """Supports and multipliers of the squared-slack update.

    Identical greedy growth with the multiplier scale ``1 + 1/(2C)``; as
    ``C`` grows the solution approaches the hard-margin one.
    """
    if C <= 0:
        raise ValueError(f"aggressiveness C must be positive, got {C}")
    return _greedy_solution(losses, y_l, y_r, x_norm_sq, 1.0 + 0.5 / C)


def _clip(v: float, C: float) -> float:
    if v <= 0.0:
        return 0.0
    return v if v < C else C


def _clamped_root(left_raw, right_raw, h: float, C: float) -> float:
    """Exact aggregate step of the clamped system.

    Solves ``F(a) = 0`` for
    ``F(a) = sum clip(g - a h, 0, C) - sum clip(g + a h, 0, C) - a``,
    which is continuous, piecewise linear and strictly decreasing (slope at
    most -1), so the root is unique.  Scan the clamp breakpoints for the sign
    change and solve the affine piece containing it.
    """

    def value(a: float) -> float:
        total = -a
        for g in left_raw:
            total += _clip(g - a * h, C)
        for g in right_raw:
            total -= _clip(g + a * h, C)
        return total

    if h == 0.0:
        return value(0.0)   # F(a) = const - a

    points = set()
    for g in left_raw:
        points.add(g / h)
        points.add((g - C) / h)
    for g in right_raw:
        points.add(-g / h)
        points.add((C - g) / h)

    def slope(a: float) -> float:
        s = -1.0
        for g in left_raw:
            if 0.0 < g - a * h < C:
                s -= h
        for g in right_raw:
            if 0.0 < g + a * h < C:
                s -= h
        return s

    prev = None
    for b in sorted(points):
        fb = value(b)
        if fb == 0.0:
            return b
        if fb < 0.0:
            if prev is None:
                return b + fb            # flat (slope -1) region below all breakpoints
            mid = 0.5 * (prev + b)
            return mid - value(mid) / slope(mid)
        prev = b
    return prev + value(prev)            # crossing beyond the last breakpoint


def solve_pa1(losses: ThresholdLosses, y_l: int, y_r: int, x_norm_sq: float,
              C: float, *, tol: float = 1e-10, max_sweeps: int = 10_000,
              exact_fallback: bool = True) -> SupportSolution:
    """Supports and multipliers of the linear-slack (clamped) update.

    The optimum is the fixed point of the simultaneous system

        left multiplier  = clip(g_i - step * h, 0, C)
        right multiplier = clip(g_i + step * h, 0, C)
        step             = sum(left) - sum(right)

    computed by full sweeps that refresh ``step`` once per sweep.  The sweep
    map is one-dimensional in ``step`` and decreasing, so when its local slope
    exceeds 1 in magnitude the iterates settle into a period-2 cycle instead
    of converging; that cycle (or exhausting ``max_sweeps``) triggers an exact
    piecewise-linear root solve unless ``exact_fallback`` is off, in which
    case SolverError is raised.
    """
    if C <= 0:
        raise ValueError(f"aggressiveness C must be positive, got {C}")
    left_idx, left_raw, right_idx, right_raw = _sides(losses, y_l, y_r)
    _check_active(losses, left_idx, right_idx)
    h = x_norm_sq

    lam = [0.0] * len(left_raw)
    mu = [0.0] * len(right_raw)
    a = 0.0
    a_hist = [a]
    converged = False
    delta = float("inf")
    for _ in range(max_sweeps):
        new_lam = [_clip(g - a * h, C) for g in left_raw]
        new_mu = [_clip(g + a * h, C) for g in right_raw]
        delta = 0.0
        for old, new in zip(lam, new_lam):
            delta = max(delta, abs(new - old))
        for old, new in zip(mu, new_mu):
            delta = max(delta, abs(new - old))
        lam, mu = new_lam, new_mu
        a = sum(lam) - sum(mu)
        if delta < tol:
            converged = True
            break
        a_hist.append(a)
        if len(a_hist) >= 3 and abs(a - a_hist[-3]) <= 1e-12 * (1.0 + abs(a)):
            break   # period-2 cycle: sweeps will never meet the tolerance
    if not converged:
        if not exact_fallback:
            raise SolverError(
                f"clamped fixed point not reached in {max_sweeps} sweeps "
                f"(last multiplier change {delta:.3e})")
        a = _clamped_root(left_raw, right_raw, h, C)
        lam = [_clip(g - a * h, C) for g in left_raw]
        mu = [_clip(g + a * h, C) for g in right_raw]

    lam_map = {i: v for i, v in zip(left_idx, lam) if v > MEMBER_TOL}
    mu_map = {i: v for i, v in zip(right_idx, mu) if v > MEMBER_TOL}
    step = sum(lam_map.values()) - sum(mu_map.values())
    return SupportSolution(tuple(sorted(lam_map)), tuple(sorted(mu_map)),
                           lam_map, mu_map, step)
