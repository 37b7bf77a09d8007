"""Transition probabilities, Green's matrix and hitting probabilities.

Closed forms for the Bolthausen-Sznitman coalescent started from π:

    p(π, ρ; t) = (-1)^|ρ| e^t ((|ρ|-1)!/(|π|-1)!) ∏_B (-e^-t)^(m_B ascending)

with m_B = |restrict(π, B)| and x^(k ascending) the ascending factorial; the
same expression with a free rational x = e^-t is evaluated exactly by
``bs_transition_exact`` (at x = 1 it collapses to the indicator of π = ρ,
which is the statement L = R^-1).

The Green's matrix g(π, ρ) (expected total time in ρ before absorption) has
an exact finite-sum expression over tuples of cycle counts; it is +infinity
exactly on the absorbing column ρ = {[n]} and the hitting probability is
h(π, ρ) = g(π, ρ) (|ρ| - 1).  Kingman hitting probabilities come from
maximal-chain counting and reduce to a Lah-number product.

Nothing here needs the full lattice: every formula runs off the two
partitions alone.  ``transition_via_triple`` exponentiates any spectral
triple in floating point (works for lattice and block-counting triples of
both models).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np

from .combinatorics import ascending_factorial, lah, stirling_first, stirling_second
from .partitions import SetPartition, restriction_sizes
from .spectral import SpectralTriple

__all__ = [
    "bs_transition",
    "bs_transition_exact",
    "bs_green",
    "bs_hitting",
    "bs_block_green",
    "kingman_hitting",
    "transition_via_triple",
]


def _same_ground(pi: SetPartition, rho: SetPartition) -> None:
    if pi.ground != rho.ground:
        raise ValueError("partitions live on different ground sets")


def bs_transition(pi: SetPartition, rho: SetPartition, t: float) -> float:
    """P(Π(t) = ρ | Π(0) = π) for the Bolthausen-Sznitman coalescent."""
    _same_ground(pi, rho)
    if t < 0:
        raise ValueError("time must be nonnegative")
    if not pi.refines(rho):
        return 0.0
    p, r = len(pi), len(rho)
    x = math.exp(-t)
    value = math.exp(t) * factorial(r - 1) / factorial(p - 1)
    for s in restriction_sizes(pi, rho):
        value *= ascending_factorial(-x, s)
    if r % 2:
        value = -value
    return value

def bs_transition_exact(pi: SetPartition, rho: SetPartition, x) -> Fraction:
    """The transition polynomial Σ_σ r(π, σ) x^(|σ|-1) l(σ, ρ), exactly.

    Evaluated through its closed form
    (-1)^|ρ| x^-1 ((|ρ|-1)!/(|π|-1)!) ∏_B (-x)^(m_B ascending),
    valid for any rational x != 0; x = e^-t recovers the transition
    probability and x = 1 the identity matrix.
    """
    _same_ground(pi, rho)
    x = Fraction(x)
    if x == 0:
        raise ValueError("x must be nonzero")
    if not pi.refines(rho):
        return Fraction(0)
    p, r = len(pi), len(rho)
    value = Fraction(factorial(r - 1), factorial(p - 1)) / x
    for s in restriction_sizes(pi, rho):
        value *= ascending_factorial(-x, s)
    return -value if r % 2 else value


def bs_green(pi: SetPartition, rho: SetPartition):
    """Expected total time the Bolthausen-Sznitman coalescent spends in ρ.

    Returns an exact Fraction for ρ below the top, ``math.inf`` when
    ρ = {[n]} (the absorbing state is never left), and 0 when π is not finer
    than ρ.
    """
    _same_ground(pi, rho)
    if not pi.refines(rho):
        return Fraction(0)
    if len(rho) == 1:
        return math.inf
    p, r = len(pi), len(rho)
    sizes = restriction_sizes(pi, rho)
    total = Fraction(0)
    for ks in product(*(range(1, s + 1) for s in sizes)):
        ktot = sum(ks)
        if ktot < 2:
            continue
        term = Fraction(1, ktot - 1)
        for s, k in zip(sizes, ks):
            term *= stirling_first(s, k)
        total += -term if ktot % 2 else term
    value = Fraction(factorial(r - 1), factorial(p - 1)) * total
    return -value if r % 2 else value


def bs_hitting(pi: SetPartition, rho: SetPartition) -> Fraction:
    """P(the Bolthausen-Sznitman coalescent from π ever visits ρ).

    Equals g(π, ρ) (|ρ| - 1) since the chain leaves ρ at rate |ρ| - 1 and
    never returns.  The absorbing target ρ = {[n]} is rejected (absorption is
    certain; there is no finite Green entry to normalize).
    """
    _same_ground(pi, rho)
    if len(rho) == 1:
        raise ValueError("hitting the absorbing one-block state is certain; "
                         "only non-absorbing targets are supported")
    if not pi.refines(rho):
        return Fraction(0)
    return bs_green(pi, rho) * (len(rho) - 1)


def bs_block_green(i: int, j: int, n: int) -> Fraction:
    """Aggregated Green's matrix of the block-counting process.

    Expected total time with j blocks started from i blocks,

        (-1)^j ((j-1)!/(i-1)!) Σ_{k=j}^{i} ((-1)^k/(k-1)) [i, k] {k, j},

    requiring 2 <= j <= i <= n (j = 1 is the absorbing count).
    """
    if not (1 <= j <= i <= n):
        raise ValueError(f"need 1 <= j <= i <= n, got i={i}, j={j}, n={n}")
    if j == 1:
        raise ValueError("the one-block count is absorbing; its Green entry diverges")
    total = Fraction(0)
    for k in range(j, i + 1):
        term = Fraction(stirling_first(i, k) * stirling_second(k, j), k - 1)
        total += -term if k % 2 else term
    value = Fraction(factorial(j - 1), factorial(i - 1)) * total
    return -value if j % 2 else value


def kingman_hitting(pi: SetPartition, rho: SetPartition) -> Fraction:
    """P(the Kingman coalescent from π ever visits ρ).

    The jump chain picks uniform pair mergers, so the probability is the
    ratio of maximal-chain counts through ρ and reduces to

        h(π, ρ) = (∏_B m_B!) / L(|π|, |ρ|)

    with L the Lah number.  Zero when π is not finer than ρ.
    """
    _same_ground(pi, rho)
    if not pi.refines(rho):
        return Fraction(0)
    prod = 1
    for s in restriction_sizes(pi, rho):
        prod *= factorial(s)
    return Fraction(prod, lah(len(pi), len(rho)))


def transition_via_triple(triple: SpectralTriple, t: float) -> np.ndarray:
    """Floating-point transition matrix e^(tQ) = R e^(tD) L from a triple.

    Works for lattice triples and block-counting triples of either model.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    R = triple.R.to_float()
    L = triple.L.to_float()
    w = np.exp(t * np.array([float(d) for d in triple.D]))
    return (R * w) @ L
