"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Criteria 7 and 8 need the public abalone file (see README) and skip
with instructions when it is absent.
"""

import json
import math
import time

import numpy as np
import pytest

from interval_rank import (IntervalInstance, OrdinalDataset, RunConfig,
                           bound_pa1, bound_pa2, bound_pa_general, oracle_pa,
                           random_trial, run_experiment, run_online,
                           separable_stream, solve_pa, stream_of,
                           surrogate_losses, update_pa, update_pa1,
                           update_pa2)
from interval_rank.cli import main, oracle_comparison

OBJECTIVE_TOL = 1e-8
PARAMETER_TOL = 1e-6
ORDER_TOL = 1e-12


def _report(number, name):
    print(f"\nACCEPTANCE {number} ({name}): PASS")


def test_criterion_1_oracle_equivalence():
    start = time.time()
    worst = oracle_comparison(trials=1000, seed=123)
    for variant, devs in worst.items():
        assert devs["objective"] <= OBJECTIVE_TOL, (
            f"{variant}: objective deviation {devs['objective']:.3e}")
        assert devs["parameters"] <= PARAMETER_TOL, (
            f"{variant}: parameter deviation {devs['parameters']:.3e}")
    elapsed = time.time() - start
    assert elapsed <= 120.0, f"took {elapsed:.1f}s, budget 120s"
    _report(1, "oracle equivalence, 1000 random trials per variant")


def test_criterion_2_order_preservation():
    start = time.time()
    budget_per_variant = 100_000
    for variant, seed, apply_update in (
            ("pa", 201, lambda m, i, c: update_pa(m, i)),
            ("pa1", 202, update_pa1),
            ("pa2", 203, update_pa2)):
        worst = 0.0
        rng = np.random.default_rng(seed)
        fresh = budget_per_variant // 2
        for _ in range(fresh):
            model, inst = random_trial(rng)
            apply_update(model, inst, 0.8)
            gap = float(np.min(np.diff(model.thresholds))) if model.num_classes > 2 else 0.0
            worst = min(worst, gap)
        chains = 5
        per_chain = (budget_per_variant - fresh) // chains
        for chain in range(chains):
            model, _ = random_trial(rng, max_features=4, max_classes=8)
            d = model.num_features
            C = float(rng.uniform(0.05, 3.0))
            num_classes = model.num_classes
            for _ in range(per_chain):
                y_l = int(rng.integers(1, num_classes + 1))
                y_r = int(rng.integers(y_l, num_classes + 1))
                inst = IntervalInstance(rng.normal(0, 1, d), y_l, y_r)
                apply_update(model, inst, C)
                if num_classes > 2:
                    worst = min(worst, float(np.min(np.diff(model.thresholds))))
        assert worst >= -ORDER_TOL, f"{variant}: inversion {worst:.3e}"
    elapsed = time.time() - start
    assert elapsed <= 60.0, f"took {elapsed:.1f}s, budget 60s"
    _report(2, "order preservation, 1e5 fuzzed updates per variant")


def test_criterion_3_tightness_and_passivity():
    rng = np.random.default_rng(77)
    active = passive = 0
    while active < 15_000 or passive < 2_000:
        model, inst = random_trial(rng)
        before_w = model.weights.copy()
        before_t = model.thresholds.copy()
        report = update_pa(model, inst)
        if report.passive:
            passive += 1
            assert np.array_equal(model.weights, before_w)
            assert np.array_equal(model.thresholds, before_t)
            continue
        active += 1
        assert report.post_loss <= 1e-9, f"residual loss {report.post_loss:.3e}"
        s = float(np.dot(model.weights, inst.features))
        for i in report.solution.left_support:
            assert abs(s - model.thresholds[i - 1] - 1.0) <= 1e-9
        for i in report.solution.right_support:
            assert abs(s - model.thresholds[i - 1] + 1.0) <= 1e-9
    _report(3, "hard-margin tightness and bitwise passivity")


def test_criterion_4_contiguity_and_greedy_agreement():
    rng = np.random.default_rng(404)
    checked = 0
    while checked < 10_000:
        model, inst = random_trial(rng)
        s = float(np.dot(model.weights, inst.features))
        losses = surrogate_losses(s, model.thresholds, inst.y_l, inst.y_r)
        if losses.total() <= 0.0:
            continue
        h = float(np.dot(inst.features, inst.features))
        if h == 0.0:
            continue
        checked += 1
        reference = oracle_pa(model, inst)
        left = sorted(i for i, v in reference.multipliers.items()
                      if i < inst.y_l and v > 1e-12)
        right = sorted(i for i, v in reference.multipliers.items()
                       if i >= inst.y_r and v > 1e-12)
        if left:
            assert left[-1] == inst.y_l - 1, f"left block detached: {left}"
            assert left == list(range(left[0], inst.y_l)), f"gap in {left}"
        if right:
            assert right[0] == inst.y_r, f"right block detached: {right}"
            assert right == list(range(inst.y_r, right[-1] + 1)), f"gap in {right}"
        greedy = solve_pa(losses, inst.y_l, inst.y_r, h)
        assert tuple(left) == greedy.left_support
        assert tuple(right) == greedy.right_support
    _report(4, "enumerated support sets contiguous and equal to greedy, 1e4 trials")


def test_criterion_5_ideal_case_bounds():
    start = time.time()
    trials = 5000
    for width in (0, 1, 2):
        instances, ideal = separable_stream(seed=50 + width, trials=trials,
                                            num_features=5, num_classes=5,
                                            interval_width=width)
        ds = OrdinalDataset("separable", 5, instances)

        def run(algorithm, C=1.0):
            config = RunConfig(algorithm=algorithm, C=C, trials=trials, runs=1,
                               seed=width, metric="interval",
                               sample_mode="epochs")
            metrics = run_online(config, ds, rng=np.random.default_rng(width))
            return metrics, stream_of(ds, metrics)

        metrics, stream = run("pa")
        report = bound_pa_general(stream, metrics, ideal)
        assert report.case == "ideal" and report.c == width
        assert report.satisfied, (
            f"pa width={width}: {report.measured:.2f} > {report.bound:.2f}")

        probe = bound_pa1(stream, metrics, ideal, 1.0)
        metrics1, stream1 = run("pa1", C=probe.optimal_c)
        report1 = bound_pa1(stream1, metrics1, ideal, probe.optimal_c)
        closed_form_bound = report1.reference_loss_term + math.sqrt(
            report1.d_value * trials) * math.sqrt(report1.v_norm_sq)
        assert report1.case == "ideal"
        assert report1.measured <= closed_form_bound, (
            f"pa1 width={width}: {report1.measured:.2f} > {closed_form_bound:.2f}")

        metrics2, stream2 = run("pa2", C=1.0)
        report2 = bound_pa2(stream2, metrics2, ideal, 1.0)
        assert report2.case == "ideal"
        assert report2.satisfied, (
            f"pa2 width={width}: {report2.measured:.2f} > {report2.bound:.2f}")
    elapsed = time.time() - start
    assert elapsed <= 60.0, f"took {elapsed:.1f}s, budget 60s"
    _report(5, "ideal-case cumulative-loss bounds, widths 0/1/2")


def test_criterion_6_general_case_bound_check(tmp_path):
    out = tmp_path / "bounds.json"
    code = main(["bound-check", "--dataset", "synthetic", "--runs", "20",
                 "--trials", "250", "--seed", "0", "--out", str(out)])
    assert code == 0
    manifest = json.loads(out.read_text())
    assert len(manifest["reports"]) == 60
    assert manifest["violations"] == 0
    assert all(r["satisfied"] for r in manifest["reports"])
    _report(6, "general-case bounds satisfied across 20 seeds, all variants")


@pytest.mark.usefixtures("abalone_table")
def test_criterion_7_abalone_vs_baselines(abalone_table):
    start = time.time()
    finals = {}
    for algo in ("pa1", "prank", "mcp"):
        config = RunConfig(algorithm=algo, C=1.0, trials=7000, runs=20, seed=0,
                           interval_fraction=0.0, metric="exact",
                           dataset="abalone")
        finals[algo] = run_experiment(config, abalone_table).final_mae
    print(f"\n  abalone final average MAE: {finals}")
    assert finals["pa1"] <= finals["prank"] + 0.05, finals
    assert finals["pa1"] <= finals["mcp"] + 0.05, finals
    elapsed = time.time() - start
    assert elapsed <= 600.0, f"took {elapsed:.1f}s, budget 600s"
    _report(7, "abalone: clamped variant within 0.05 of both baselines")


@pytest.mark.usefixtures("abalone_table")
def test_criterion_8_interval_fraction_monotonicity(abalone_table):
    finals = {}
    for fraction in (0.5, 0.75):
        config = RunConfig(algorithm="pa1", C=1.0, trials=7000, runs=20,
                           seed=0, interval_fraction=fraction,
                           metric="interval", dataset="abalone")
        finals[fraction] = run_experiment(config, abalone_table).final_mae
    print(f"\n  abalone final average interval MAE: {finals}")
    assert finals[0.75] <= finals[0.5], finals
    _report(8, "interval MAE at 75% labels <= at 50%")


def test_criterion_9_csv_determinism(tmp_path):
    args = ["train", "--algo", "pa1", "--dataset", "synthetic",
            "--trials", "120", "--runs", "3", "--seed", "17",
            "--interval-fraction", "0.5", "--metric", "interval"]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    _report(9, "byte-identical CSV across repeated invocations")
