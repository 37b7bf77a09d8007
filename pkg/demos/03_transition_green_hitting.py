"""
Transition probabilities, Green's matrix, hitting probabilities
===============================================================

Everything here runs off the two partitions alone; no lattice enumeration
is needed.  Transition probabilities for the Bolthausen-Sznitman model have
a closed form in ascending factorials of -e^(-t); substituting an exact
rational x for e^(-t) turns the formula into a polynomial identity that can
be checked with exact arithmetic.
"""

import numpy as np

from coalspec import (
    PartitionLattice,
    SetPartition,
    bs_green,
    bs_hitting,
    bs_transition,
    bs_transition_exact,
    bs_triple,
    kingman_hitting,
    matexp_series,
    transition_via_triple,
)

P = SetPartition.from_string
delta = P("1|2|3|4")

# Closed-form transition probabilities from the singletons at t = 1.
print("Bolthausen-Sznitman law of Pi(1) from 1|2|3|4:")
lattice = PartitionLattice(4)
for rho in lattice:
    p = bs_transition(delta, rho, 1.0)
    print(f"  {rho.to_string():12s} {p:.6f}")
total = sum(bs_transition(delta, rho, 1.0) for rho in lattice)
print(f"  row sum = {total:.15f}")
print()

# The same matrix from the spectral triple, and from a Taylor-series
# matrix exponential; all three agree to floating-point accuracy.
from coalspec import build_generator, bs_rates

Q = build_generator(lattice, bs_rates(4))
via_triple = transition_via_triple(bs_triple(lattice), 1.0)
via_series = matexp_series(Q.to_float(), 1.0)
closed = np.array([[bs_transition(a, b, 1.0) for b in lattice] for a in lattice])
print("max |closed - spectral| :", np.max(np.abs(closed - via_triple)))
print("max |closed - series|   :", np.max(np.abs(closed - via_series)))
print()

# At the exact point x = 1 (that is t = 0) the transition polynomial
# collapses to the identity matrix; that collapse is literally L = R^(-1).
print("exact evaluation at rational points x:")
rho = P("1,2|3,4")
for x in ("1", "1/2", "2/3"):
    print(f"  p(1|2|3|4 -> 1,2|3,4; x={x}) = {bs_transition_exact(delta, rho, x)}")
print()

# Green's matrix: expected total time spent in each state before
# absorption.  The absorbing one-block column carries +infinity.
print("expected time in rho starting from the singletons:")
for rho in lattice:
    print(f"  {rho.to_string():12s} {bs_green(delta, rho)}")
print()

# Hitting probabilities: g(pi, rho) times the exit rate |rho| - 1.
targets = [P("1,2|3|4"), P("1,2|3,4"), P("1,2,3|4")]
print("probability of ever visiting rho (Bolthausen-Sznitman vs Kingman):")
for rho in targets:
    print(
        f"  {rho.to_string():12s} bs {str(bs_hitting(delta, rho)):>6s}"
        f"   kingman {kingman_hitting(delta, rho)}"
    )
print()

# Kingman hitting probabilities are ratios of maximal-chain counts: the
# jump chain walks a uniformly random maximal chain of the lattice.
from coalspec import count_maximal_chains

rho = P("1,2|3,4")
top = P("1,2,3,4")
ratio = (
    count_maximal_chains(delta, rho)
    * count_maximal_chains(rho, top)
    / count_maximal_chains(delta, top)
)
print(f"chain-count route to the same number: {ratio} = {kingman_hitting(delta, rho)}")
