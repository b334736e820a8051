"""Compare both sides of the duality relation by simulation and by the exact semigroup."""
import numpy as np

from multiasep.duality import duality_a
from multiasep.process import build_generator
from multiasep.qarith import eval_at
from multiasep.sim import estimate_duality_gap, semigroup
from multiasep.statespace import Config, sector_of

q0, t = 0.5, 1.0
x0 = Config(((1, 0), (1, 0), (0, 1)), 2, 1)
y0 = Config(((0, 1), (1, 0), (0, 1)), 2, 1)

gen = build_generator("asep", 2, 1, 3, sector_of(x0))
d = np.array([float(eval_at(duality_a(e, y0), q0)) for e in gen.row_basis])
exact = (semigroup(gen, t, q0) @ d)[gen.row_basis.rank(x0)]

for seed in (1, 2, 3):
    r = estimate_duality_gap(x0, y0, t, q0, 100_000, seed)
    print(f"seed {seed}: lhs {r['lhs']:.6f} +/- {r['lhs_stderr']:.1e}   "
          f"rhs {r['rhs']:.6f} +/- {r['rhs_stderr']:.1e}   exact {exact:.6f}")

x1 = Config(((0, 0), (1, 1), (0, 0), (0, 0)), 3, None)
y1 = Config(((1, 1), (0, 0), (0, 0), (0, 0)), 3, None)
r = estimate_duality_gap(x1, y1, t, q0, 100_000, 7, model="tazrp")
print(f"q-TAZRP: lhs {r['lhs']:.6f} +/- {r['lhs_stderr']:.1e}   rhs {r['rhs']:.6f} +/- {r['rhs_stderr']:.1e}")
