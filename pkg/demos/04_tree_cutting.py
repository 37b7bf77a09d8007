"""
Random recursive trees, cutting, and containment
================================================

The combinatorial engine behind the Bolthausen-Sznitman eigenvectors.
An increasing tree on a partition has the blocks as nodes and block minima
increasing away from the root.  Cutting an edge merges the whole subtree
above it into the node below, which coarsens the label partition by one
merger; iterating cuts drives the labels through the coalescent.
"""

from collections import Counter
from fractions import Fraction

import numpy as np

from coalspec import (
    PartitionLattice,
    SetPartition,
    bs_rates,
    bs_triple,
    contains,
    count_trees_containing,
    cut_edge,
    cut_random,
    enumerate_increasing_trees,
    sample_rrt,
)

delta = SetPartition.singletons(4)

# All increasing trees on four singleton blocks: (4-1)! = 6 of them.
trees = enumerate_increasing_trees(delta)
print(f"increasing trees on {delta.to_string()}: {len(trees)}")
for k, t in enumerate(trees):
    edges = ", ".join(f"{c[0]}<-{p[0]}" for c, p in sorted(t.parent.items()))
    print(f"  tree {k}:  {edges}")
print()

# One explicit cut: removing the edge below node {2} deletes the subtree
# hanging there and merges its labels into the root.
t = trees[1]  # 2<-1, 3<-1, 4<-2
cut = cut_edge(t, (2,))
print(f"cutting below block {{2}} in tree 1: labels {t.labels.to_string()}"
      f" -> {cut.labels.to_string()}")
print()

# Containment: a tree contains rho when some cut sequence reaches rho.
# Exactly (|rho|-1)! * prod (m_B - 1)! trees qualify, and dividing by the
# (|pi|-1)! total gives the right-eigenvector entry of the generator.
rho = SetPartition.from_string("1,2,3|4")
hits = [k for k, t in enumerate(trees) if contains(t, rho)]
print(f"trees containing {rho.to_string()}: {hits}"
      f" ({count_trees_containing(delta, rho)} by the closed form)")

lattice = PartitionLattice(4)
R = bs_triple(lattice).R
entry = R.get(lattice.index_of(delta), lattice.index_of(rho))
print(f"containment probability {Fraction(len(hits), len(trees))}"
      f" = eigenvector entry r = {entry}")
print()

# The cutting law, exactly: over all (tree, edge) pairs with uniform tree
# and uniform edge, the label partition after one cut follows the jump
# chain of the coalescent.  No sampling needed, just enumeration.
outcomes = Counter()
for t in trees:
    for node in t.non_root_nodes:
        outcomes[cut_edge(t, node).labels] += 1
total = sum(outcomes.values())
rates = bs_rates(4)
print("one uniform cut from a uniform tree (18 equally likely outcomes):")
for rho, cnt in sorted(outcomes.items(), key=lambda kv: kv[0].sort_key):
    k = 4 - len(rho) + 1
    jump = rates.rate(4, k) / rates.total_rate(4)
    print(f"  {rho.to_string():10s} observed {Fraction(cnt, total)},"
          f" jump chain {jump}")
print()

# Sampling: the uniform tree comes from sequential uniform attachment.
rng = np.random.default_rng(7)
counts = Counter(sample_rrt(delta, rng) for _ in range(60000))
print("60000 sampled trees, frequency of each of the 6 shapes:")
print("  ", sorted(f"{c / 60000:.4f}" for c in counts.values()), "(target 0.1667)")
print()

# Repeated random cuts reproduce the coalescent's jump chain trajectory.
t = sample_rrt(SetPartition.singletons(6), rng)
path = [t.labels]
while t.edge_count:
    t = cut_random(t, rng)
    path.append(t.labels)
print("one cutting trajectory on six blocks:")
for s in path:
    print("  ", s.to_string())
