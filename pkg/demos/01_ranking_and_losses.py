"""A linear ranker, its prediction rule, and the two interval losses.

The model keeps a weight vector and ordered thresholds; a score lands in the
first class whose threshold it fails to reach.  An interval label [y_l, y_r]
only constrains the thresholds outside the interval: the counting loss tallies
how many sit on the wrong side of the score, the hinge surrogate measures by
how much (plus a unit margin) and upper-bounds the count.
"""

import numpy as np

from interval_rank import (IntervalInstance, RankingModel, interval_mae_loss,
                           predict, score, surrogate_losses, total_surrogate)

model = RankingModel(weights=np.array([1.0, -0.5]),
                     thresholds=np.array([-1.0, 0.0, 1.0]))
print(f"4-class model, thresholds {model.thresholds}")

for x in (np.array([-3.0, 1.0]), np.array([0.6, 0.2]), np.array([4.0, -2.0])):
    print(f"  x={x}  score={score(model, x):+.2f}  class={predict(model, x)}")

# An interval label [2, 3] says: the true class is 2 or 3.  Only threshold 1
# (must sit a margin below the score) and threshold 3 (a margin above) matter.
inst = IntervalInstance(np.array([0.6, 0.2]), y_l=2, y_r=3)
s = score(model, inst.features)
losses = surrogate_losses(s, model.thresholds, inst.y_l, inst.y_r)

print(f"\ninterval label [{inst.y_l}, {inst.y_r}] at score {s:+.2f}")
print(f"  counting loss : {interval_mae_loss(s, model.thresholds, inst.y_l, inst.y_r)}")
print(f"  left hinges   : {losses.left}")
print(f"  right hinges  : {losses.right}")
print(f"  surrogate     : {total_surrogate(losses):.3f}")

# The surrogate dominates the counting loss everywhere.
rng = np.random.default_rng(0)
gap = []
for _ in range(2000):
    th = np.sort(rng.normal(0, 2, 4))
    s = rng.normal(0, 3)
    y_l = rng.integers(1, 6)
    y_r = rng.integers(y_l, 6)
    surrogate = total_surrogate(surrogate_losses(s, th, y_l, y_r))
    counting = interval_mae_loss(s, th, y_l, y_r)
    gap.append(surrogate - counting)
print(f"\nsurrogate - counting over 2000 random cases: "
      f"min {min(gap):.3f} (never negative)")
