"""Drive one bond with the clock-and-cascade sampler and compare against the exact law."""
from collections import Counter

import numpy as np

from multiasep.process import RIGHT
from multiasep.qarith import eval_at
from multiasep.sim import decision_tree, inductive_step
from multiasep.statespace import Config

c = Config(((1, 2, 3, 0, 1), (2, 1, 1, 2, 1)), 5, 7)
law = decision_tree(c, 1, RIGHT)
rng = np.random.default_rng(1)
draws = Counter(inductive_step(c, 1, RIGHT, 0.5, rng)[0] for _ in range(50_000))
print(f"{'outcome':>24} {'exact':>9} {'sampled':>9}")
for target, prob in sorted(law.items(), key=lambda kv: -float(eval_at(kv[1], 0.5))):
    label = "no jump" if target is None else str(target)
    print(f"{label:>24} {float(eval_at(prob, 0.5)):9.5f} {draws[target] / 50_000:9.5f}")
