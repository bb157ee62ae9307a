"""Axiom checking, the separating counterexample, and Monte-Carlo estimation.

The classical axioms admit many indices; the increment-sharing requirement
pins the exact one down.  Each registered foil breaks exactly one axiom.
"""

import random
from fractions import Fraction as F

from powerdex import (counterexample_game, product_power_game, psi_exact,
                      psi_mc, psi_point, psi_product_oracle,
                      weighted_mean_game)
from powerdex.axioms import check_axioms, make_handles, separation_demo
from powerdex.sampling import random_regular_game

# v(x) = x1 * x2^2 separates the exact index from every pinned-profile one.
print("closed form:", psi_product_oracle([1, 2]).shares)
game = counterexample_game(2)
for a in (F(0), F(1, 4), F(1, 2), F(1)):
    print(f"pinned at {a}:", psi_point(game, a).shares)

demo = separation_demo()
print("classical axioms insufficient:", demo["classical_axioms_insufficient"])

# The axiom battery: the exact index passes, each foil fails its own axiom.
rng = random.Random(1)
suite = [random_regular_game(rng, 2, rng.randrange(1, 4)) for _ in range(10)]
suite += [random_regular_game(rng, 3, 2) for _ in range(5)]
handles = make_handles()
for name in ("psi_exact", "two_psi", "half_psi_half_ed", "psi_point",
             "psi_square"):
    report = check_axioms(handles[name], suite, seed=1)
    failed = sorted(report.failed_axioms()) or ["none"]
    print(f"{name:18s} fails: {failed}")

# Monte-Carlo estimation for black-box games, seeded and reproducible.
mean = weighted_mean_game([F(3, 10), F(7, 10)])
pv = psi_mc(mean, 200_000, seed=11)
print("\nweighted mean 0.3/0.7 estimate:",
      ["%.4f +- %.4f" % (e, s) for e, s in zip(pv.shares, pv.stderr)])

cubic = product_power_game([1, 2, 3])
oracle = psi_product_oracle([1, 2, 3])
pv = psi_mc(cubic, 200_000, seed=12)
print("product game estimate:  ",
      ["%.4f" % e for e in pv.shares])
print("product game closed form:", [str(x) for x in oracle.shares],
      "=", ["%.4f" % float(x) for x in oracle.shares])
