"""Support-set solvers: hand traces, structure invariants, KKT certification."""

import numpy as np
import pytest

from interval_rank import (SolverError, random_trial, solve_pa, solve_pa1,
                           solve_pa2, surrogate_losses)


def _solution_for(score, thresholds, y_l, y_r, h, solver):
    losses = surrogate_losses(score, thresholds, y_l, y_r)
    return solver(losses, y_l, y_r, h)


class TestHardMarginTraces:
    def test_one_sided_all_thresholds_join(self):
        sol = _solution_for(0.0, [0, 0, 0], 4, 4, 1.0, solve_pa)
        assert sol.left_support == (1, 2, 3)
        assert sol.right_support == ()
        assert sol.step == pytest.approx(0.75)
        for v in sol.left_multipliers.values():
            assert v == pytest.approx(0.25)

    def test_distant_threshold_rejected(self):
        sol = _solution_for(0.0, [-10, 0, 0], 4, 4, 1.0, solve_pa)
        assert sol.left_support == (2, 3)
        assert sol.step == pytest.approx(2.0 / 3.0)
        for v in sol.left_multipliers.values():
            assert v == pytest.approx(1.0 / 3.0)

    def test_symmetric_two_sided(self):
        sol = _solution_for(0.0, [0, 0], 2, 2, 1.0, solve_pa)
        assert sol.left_support == (1,)
        assert sol.right_support == (2,)
        assert sol.step == pytest.approx(0.0)
        assert sol.left_multipliers[1] == pytest.approx(1.0)
        assert sol.right_multipliers[2] == pytest.approx(1.0)

    def test_zero_loss_anchor_dragged_into_support(self):
        # the left margin is satisfied with 0.1 slack, but the right side's
        # pull moves the score enough that it must be pinned at its margin
        sol = _solution_for(1.0, [-0.1, 0.5, 0.5, 0.5], 2, 2, 1.0, solve_pa)
        assert sol.left_support == (1,)
        assert sol.right_support == (2, 3, 4)
        assert sol.step == pytest.approx(-0.92)
        assert sol.left_multipliers[1] == pytest.approx(0.82)


class TestClamped:
    def test_symmetric_clamp_active(self):
        losses = surrogate_losses(0.0, [0, 0], 2, 2)
        sol = solve_pa1(losses, 2, 2, 1.0, 0.5)
        assert sol.left_multipliers[1] == pytest.approx(0.5)
        assert sol.right_multipliers[2] == pytest.approx(0.5)
        assert sol.step == pytest.approx(0.0)

    def test_large_c_matches_hard_margin(self):
        losses = surrogate_losses(0.0, [0, 0], 2, 2)
        clamped = solve_pa1(losses, 2, 2, 1.0, 10.0)
        hard = solve_pa(losses, 2, 2, 1.0)
        assert clamped.left_multipliers[1] == pytest.approx(hard.left_multipliers[1])
        assert clamped.right_multipliers[2] == pytest.approx(hard.right_multipliers[2])

    def test_single_constraint_clamped(self):
        losses = surrogate_losses(0.0, [0.0], 1, 1)
        sol = solve_pa1(losses, 1, 1, 1.0, 0.25)
        assert sol.right_multipliers[1] == pytest.approx(0.25)
        assert sol.step == pytest.approx(-0.25)

    def test_oscillating_sweeps_hit_exact_fallback(self):
        # one active constraint with ||x||^2 = 2: the sweep map has slope -2,
        # so iterates cycle with period 2 and never meet the tolerance
        losses = surrogate_losses(0.0, [0.0], 1, 1)
        with pytest.raises(SolverError):
            solve_pa1(losses, 1, 1, 2.0, 10.0, exact_fallback=False)
        sol = solve_pa1(losses, 1, 1, 2.0, 10.0)
        # fixed point of mu = clip(1 - 2 mu): mu = 1/3
        assert sol.right_multipliers[1] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert sol.step == pytest.approx(-1.0 / 3.0, abs=1e-12)

    def test_rejects_non_positive_c(self):
        losses = surrogate_losses(0.0, [0.0], 1, 1)
        with pytest.raises(ValueError):
            solve_pa1(losses, 1, 1, 1.0, 0.0)


class TestSquaredSlack:
    def test_symmetric(self):
        losses = surrogate_losses(0.0, [0, 0], 2, 2)
        sol = solve_pa2(losses, 2, 2, 1.0, 0.5)
        assert sol.step == pytest.approx(0.0)
        assert sol.left_multipliers[1] == pytest.approx(0.5)
        assert sol.right_multipliers[2] == pytest.approx(0.5)

    def test_single_constraint(self):
        losses = surrogate_losses(0.0, [0.0], 1, 1)
        sol = solve_pa2(losses, 1, 1, 1.0, 0.5)
        assert sol.step == pytest.approx(-1.0 / 3.0)
        assert sol.right_multipliers[1] == pytest.approx(1.0 / 3.0)

    def test_degenerates_to_hard_margin_at_huge_c(self):
        losses = surrogate_losses(0.0, [0, 0, 0], 4, 4)
        soft = solve_pa2(losses, 4, 4, 1.0, 1e9)
        hard = solve_pa(losses, 4, 4, 1.0)
        assert soft.step == pytest.approx(hard.step, abs=1e-6)
        for i in hard.left_multipliers:
            assert soft.left_multipliers[i] == pytest.approx(
                hard.left_multipliers[i], abs=1e-6)


class TestContractErrors:
    def test_all_losses_zero_rejected(self):
        losses = surrogate_losses(0.0, [-5.0, 5.0], 2, 2)
        assert losses.total() == 0.0
        for solver in (lambda: solve_pa(losses, 2, 2, 1.0),
                       lambda: solve_pa1(losses, 2, 2, 1.0, 1.0),
                       lambda: solve_pa2(losses, 2, 2, 1.0, 1.0)):
            with pytest.raises(ValueError):
                solver()

    def test_interval_spanning_all_classes_rejected(self):
        losses = surrogate_losses(0.0, [0, 0], 1, 3)
        with pytest.raises(ValueError):
            solve_pa(losses, 1, 3, 1.0)


def _fuzz_cases(count, seed):
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < count:
        model, inst = random_trial(rng)
        s = float(np.dot(model.weights, inst.features))
        losses = surrogate_losses(s, model.thresholds, inst.y_l, inst.y_r)
        if losses.total() <= 0.0 or (not losses.left_raw and not losses.right_raw):
            continue
        h = float(np.dot(inst.features, inst.features))
        if h == 0.0:
            continue
        produced += 1
        yield losses, inst.y_l, inst.y_r, h, float(rng.uniform(0.05, 3.0))


class TestStructureInvariants:
    def test_supports_are_contiguous_and_anchored(self):
        for losses, y_l, y_r, h, C in _fuzz_cases(400, seed=21):
            for sol in (solve_pa(losses, y_l, y_r, h),
                        solve_pa1(losses, y_l, y_r, h, C),
                        solve_pa2(losses, y_l, y_r, h, C)):
                if sol.left_support:
                    top = sol.left_support[-1]
                    assert top == y_l - 1
                    assert sol.left_support == tuple(
                        range(top - len(sol.left_support) + 1, top + 1))
                if sol.right_support:
                    assert sol.right_support[0] == y_r
                    assert sol.right_support == tuple(
                        range(y_r, y_r + len(sol.right_support)))

    def test_step_equals_multiplier_sum(self):
        for losses, y_l, y_r, h, C in _fuzz_cases(400, seed=22):
            for sol in (solve_pa(losses, y_l, y_r, h),
                        solve_pa1(losses, y_l, y_r, h, C),
                        solve_pa2(losses, y_l, y_r, h, C)):
                assert sol.step == pytest.approx(sol.multiplier_sum(), abs=1e-12)

    def test_multipliers_strictly_positive_and_clamped(self):
        for losses, y_l, y_r, h, C in _fuzz_cases(400, seed=23):
            hard = solve_pa(losses, y_l, y_r, h)
            for v in list(hard.left_multipliers.values()) + list(
                    hard.right_multipliers.values()):
                assert v > 0.0
            clamped = solve_pa1(losses, y_l, y_r, h, C)
            for v in list(clamped.left_multipliers.values()) + list(
                    clamped.right_multipliers.values()):
                assert 0.0 < v <= C + 1e-12

    def test_hard_margin_tightness(self):
        """Reconstructed parameters sit exactly on their margins."""
        for losses, y_l, y_r, h, _ in _fuzz_cases(400, seed=24):
            sol = solve_pa(losses, y_l, y_r, h)
            new_score = losses.score + sol.step * h
            for i, lam in sol.left_multipliers.items():
                raw = losses.left_raw[i]
                new_threshold_gap = new_score - (losses.score - 1.0 + raw - lam)
                assert new_threshold_gap == pytest.approx(1.0, abs=1e-9)
            for i, mu in sol.right_multipliers.items():
                raw = losses.right_raw[i]
                new_threshold_gap = new_score - (losses.score + 1.0 - raw + mu)
                assert new_threshold_gap == pytest.approx(-1.0, abs=1e-9)

    def test_exclusion_certificate(self):
        """Tentatively adding the first rejected index yields a non-positive
        multiplier (the greedy stopping rule is the optimality condition)."""
        for losses, y_l, y_r, h, _ in _fuzz_cases(400, seed=25):
            sol = solve_pa(losses, y_l, y_r, h)
            signed = (sum(losses.left_raw[i] for i in sol.left_support)
                      - sum(losses.right_raw[i] for i in sol.right_support))
            taken = len(sol.left_support) + len(sol.right_support)
            k = (sol.left_support[0] - 1 if sol.left_support else y_l - 1)
            if k >= 1:
                raw = losses.left_raw[k]
                tentative = raw - h * (signed + raw) / (1.0 + (taken + 1) * h)
                assert tentative <= 1e-9
            q = (sol.right_support[-1] + 1 if sol.right_support else y_r)
            if q in losses.right_raw:
                raw = losses.right_raw[q]
                tentative = raw + h * (signed - raw) / (1.0 + (taken + 1) * h)
                assert tentative <= 1e-9

    def test_clamped_fixed_point_certificate(self):
        """solve_pa1 output satisfies its simultaneous clamp system."""
        for losses, y_l, y_r, h, C in _fuzz_cases(400, seed=26):
            sol = solve_pa1(losses, y_l, y_r, h, C)
            a = sol.step
            for i, raw in losses.left_raw.items():
                expected = min(C, max(0.0, raw - a * h))
                assert sol.left_multipliers.get(i, 0.0) == pytest.approx(
                    expected, abs=1e-9)
            for i, raw in losses.right_raw.items():
                expected = min(C, max(0.0, raw + a * h))
                assert sol.right_multipliers.get(i, 0.0) == pytest.approx(
                    expected, abs=1e-9)
