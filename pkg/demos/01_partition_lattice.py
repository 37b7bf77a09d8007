"""
The partition lattice of {1..n}
===============================

Set partitions under the refinement order, enumerated in a fixed linear
extension: finer partitions always come before coarser ones, so every
matrix supported on comparable pairs is upper triangular.
"""

from coalspec import (
    PartitionLattice,
    SetPartition,
    bell,
    count_maximal_chains,
    interval,
    merge_covers,
    pair_covers,
)

# A partition is written "1,3|2|4": blocks separated by bars, elements by
# commas, everything in canonical sorted order.
pi = SetPartition.from_string("1,3|2|4")
print("partition:", pi.to_string())
print("blocks:   ", pi.blocks)
print("ground:   ", pi.ground, " with", len(pi), "blocks")
print()

# Refinement: pi <= rho when every block of pi sits inside a block of rho.
rho = SetPartition.from_string("1,2,3|4")
print(pi.to_string(), "refines", rho.to_string(), "->", pi.refines(rho))
print(rho.to_string(), "refines", pi.to_string(), "->", rho.refines(pi))
print()

# The full lattice P([4]): bell(4) = 15 partitions, singletons first,
# the one-block partition last.
lattice = PartitionLattice(4)
print(f"P([4]) has {len(lattice)} = bell(4) = {bell(4)} elements:")
for p in lattice:
    print(f"  index {lattice.index_of(p):2d}  {p.to_string():12s} ({len(p)} blocks)")
print()

# Covers of the bottom element: merging any pair of blocks gives the
# C(4,2) = 6 lattice covers, merging any subset of >= 2 blocks gives all
# 2^4 - 4 - 1 = 11 single-merger targets.
delta = lattice.bottom
print("pair covers of the singletons:  ", len(pair_covers(delta)))
print("merge covers of the singletons: ", len(merge_covers(delta)))
print()

# Intervals factor over the blocks of the top partition; [pi, rho] here is a
# copy of the lattice of partitions of a 3-element set.
seg = interval(SetPartition.singletons(4), rho)
print(f"interval [1|2|3|4, {rho.to_string()}] has {len(seg)} elements:")
print(" ", ", ".join(p.to_string() for p in seg))
print()

# Maximal chains from bottom to top: 2^(1-n) n! (n-1)! of them.
for n in range(2, 7):
    m = count_maximal_chains(SetPartition.singletons(n), SetPartition.whole(n))
    print(f"maximal chains in P([{n}]): {m}")
