"""Cumulative-loss guarantees, ideal and general case.

On a stream some fixed ranker separates with unit margins (the ideal case),
each variant's cumulative hinge loss is bounded by a closed-form expression
in that ranker's norm, the feature radius, the class count and the interval
width, independent of the stream length for the hard-margin and
squared-slack variants.  On noisy streams the same quantities are bounded in
terms of *any* comparison predictor's own losses.
"""

import numpy as np

from interval_rank import (IntervalPolicy, OrdinalDataset, RunConfig,
                           assemble_dataset, bound_pa1, bound_pa2,
                           bound_pa_general, fit_reference, run_online,
                           separable_stream, stream_of, synthetic_table)

T = 3000
print("ideal case: margin-separable streams, interval widths 0/1/2")
print(f"{'width':>5} {'variant':>8} {'measured':>10} {'bound':>12}")
for width in (0, 1, 2):
    instances, ideal = separable_stream(seed=width, trials=T, interval_width=width)
    ds = OrdinalDataset("separable", 5, instances)

    def run(algorithm, C=1.0):
        config = RunConfig(algorithm=algorithm, C=C, trials=T, runs=1,
                           seed=width, metric="interval", sample_mode="epochs")
        metrics = run_online(config, ds, rng=np.random.default_rng(width))
        return metrics, stream_of(ds, metrics)

    metrics, stream = run("pa")
    rep = bound_pa_general(stream, metrics, ideal)
    print(f"{width:>5} {'pa':>8} {rep.measured:>10.2f} {rep.bound:>12.2f}")

    probe = bound_pa1(stream, metrics, ideal, 1.0)     # to get the optimal C
    metrics, stream = run("pa1", C=probe.optimal_c)
    rep = bound_pa1(stream, metrics, ideal, probe.optimal_c)
    print(f"{width:>5} {'pa1':>8} {rep.measured:>10.2f} {rep.bound:>12.2f}"
          f"   (C optimized to {probe.optimal_c:.4f})")

    metrics, stream = run("pa2", C=1.0)
    rep = bound_pa2(stream, metrics, ideal, 1.0)
    print(f"{width:>5} {'pa2':>8} {rep.measured:>10.2f} {rep.bound:>12.2f}")

print("\ngeneral case: noisy stream, reference fit offline on the same pool")
table = synthetic_table(seed=9, n=300)
ds = assemble_dataset(table, IntervalPolicy(fraction=0.5, seed=9))
reference = fit_reference(ds.instances, ds.num_classes, seed=9)
for algo, checker in (("pa", bound_pa_general),
                      ("pa1", lambda s, m, r: bound_pa1(s, m, r, 1.0)),
                      ("pa2", lambda s, m, r: bound_pa2(s, m, r, 1.0))):
    config = RunConfig(algorithm=algo, C=1.0, trials=1500, runs=1, seed=3)
    metrics = run_online(config, ds, rng=np.random.default_rng(3))
    rep = checker(stream_of(ds, metrics), metrics, reference)
    print(f"  {algo:4s} measured {rep.measured:>8.2f} <= bound {rep.bound:>12.2f}"
          f"   satisfied={rep.satisfied}")
