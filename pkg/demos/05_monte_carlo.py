"""
Seeded Monte Carlo against the exact formulas
=============================================

Both coalescents have exact transition laws, so simulation here is a
validation instrument: run many seeded replicates, compare empirical
frequencies to the closed forms, and report z-scores.  Replicate i of a
run with seed s draws from numpy's default generator seeded with (s, i),
which makes every number below reproducible.
"""

from math import sqrt

from coalspec import (
    PartitionLattice,
    SetPartition,
    bs_hitting,
    bs_transition,
    estimate_containment,
    estimate_transition,
    replicate_rng,
    simulate_bs,
    simulate_kingman,
)

# One Bolthausen-Sznitman path, simulated by cutting a random recursive
# tree: with b blocks the tree has b - 1 edges, each carrying an
# exponential clock, which is exactly the total jump rate b - 1.
traj = simulate_bs(6, None, replicate_rng(2024, 0))
print("one Bolthausen-Sznitman path on [6]:")
for time, state in zip((0.0, *traj.times), traj.states):
    print(f"  t = {time:7.4f}  {state.to_string()}")
print()

# A Kingman path merges uniform pairs at rate C(b, 2).
traj = simulate_kingman(6, None, replicate_rng(2024, 0))
print("one Kingman path on [6]:")
for time, state in zip((0.0, *traj.times), traj.states):
    print(f"  t = {time:7.4f}  {state.to_string()}")
print()

# The empirical law of Pi(1) over 20000 replicates, against the closed
# form.  Estimates are exact fractions (so they sum to exactly 1) paired
# with binomial standard errors.
n, t, reps = 4, 1.0, 20000
est = estimate_transition("bs", n, t, reps=reps, seed=11)
delta = SetPartition.singletons(n)
print(f"empirical vs exact law of Pi({t}) from {delta.to_string()}, "
      f"{reps} replicates:")
print(f"  {'partition':12s} {'estimate':>9s} {'exact':>9s} {'z':>6s}")
worst = 0.0
for rho in PartitionLattice(n):
    p_hat, se = est[rho]
    p = bs_transition(delta, rho, t)
    z = (float(p_hat) - p) / se if se else 0.0
    worst = max(worst, abs(z))
    print(f"  {rho.to_string():12s} {float(p_hat):9.5f} {p:9.5f} {z:6.2f}")
print(f"  largest |z| = {worst:.2f}")
print()

# Visit frequencies estimate hitting probabilities.
rho = SetPartition.from_string("1,2|3,4")
h = bs_hitting(delta, rho)
hits = sum(
    rho in simulate_bs(n, None, replicate_rng(5, i)).states for i in range(reps)
)
sigma = sqrt(float(h) * (1 - float(h)) / reps)
print(f"visits to {rho.to_string()}: {hits / reps:.5f}"
      f" vs hitting probability {h} = {float(h):.5f}"
      f" (z = {(hits / reps - float(h)) / sigma:.2f})")
print()

# Tree containment frequencies estimate the eigenvector entries directly.
rho = SetPartition.from_string("1,2,3|4")
p_hat, se = estimate_containment(delta, rho, reps=reps, seed=3)
print(f"containment of {rho.to_string()} in a uniform tree:"
      f" {float(p_hat):.5f} vs 1/3 (se {se:.5f})")
