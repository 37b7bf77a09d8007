"""
A tour of the command-line interface
====================================

The ``coalspec`` console script exposes the library for batch use; this
demo drives the same entry point in-process.  Exit codes: 0 on success,
1 when a verification fails, 2 on usage or domain errors.  Rationals
print as "p/q", reals with 15 significant digits, divergent Green
entries as "inf".
"""

from coalspec.cli import main

DIVIDER = "-" * 64


def run(*argv):
    print(DIVIDER)
    print("$ coalspec", " ".join(argv))
    code = main(list(argv))
    print(f"[exit {code}]")


# Enumerate the lattice as CSV, one partition per row.
run("lattice", "--n", "3", "--format", "csv")

# The generator in sparse (row, col, value) form.
run("qmatrix", "--n", "3", "--model", "bs", "--format", "csv")

# Block-counting generator for Kingman: a pure death chain.
run("qmatrix", "--n", "5", "--model", "kingman", "--block", "--format", "csv")

# Exact transition polynomial at x = 1/2 (that is t = log 2).
run("transition", "--n", "3", "--x", "1/2", "--format", "csv")

# Green's matrix: how long the process lingers in each state.
run("green", "--n", "3", "--format", "csv")

# Hitting probabilities under both models.
run("hitting", "--n", "4", "--model", "kingman", "--format", "csv")

# Seeded simulation with z-scores against the exact law; rerunning with
# the same seed reproduces this table byte for byte.
run("simulate", "--n", "3", "--t", "0.5", "--reps", "2000", "--seed", "42",
    "--format", "csv")

# The spectral payload is JSON only; asking for CSV is a usage error.
run("spectral", "--n", "3", "--format", "csv")

# The full invariant suite; exit 0 means every check passed.
run("verify", "--n-max", "4")
