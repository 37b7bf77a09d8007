"""Reference implementations that validate the closed forms by other routes.

Each oracle deliberately avoids the formula it is used to check: the matrix
exponential is a scaling-and-squaring Taylor series, the Green's matrix comes
from an exact triangular solve of the fundamental-matrix equation, maximal
chains are enumerated by depth-first search over pair mergers, and hitting
probabilities follow the memoized jump-chain recursion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from .generator import RateTable, bs_rates, kingman_rates
from .matrices import RatMatrix, TriMatrix
from .partitions import (
    SetPartition,
    SizeLimitError,
    merge_covers,
    pair_covers,
)

__all__ = [
    "matexp_series",
    "fundamental_matrix",
    "enumerate_maximal_chains",
    "hitting_bruteforce",
]

_CHAIN_ENUM_CAP = 6


def matexp_series(Q, t: float, tol: float = 1e-13) -> np.ndarray:
    """e^(tQ) by scaling-and-squaring Taylor summation.

    Scales so the infinity norm of the scaled argument is below 1/2, sums
    the series until the term norm drops below ``tol``, then squares back.
    """
    A = np.asarray(Q, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matexp needs a square matrix")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    B = t * A
    norm = np.max(np.sum(np.abs(B), axis=1)) if A.size else 0.0
    s = 0
    while norm > 0.5:
        norm /= 2.0
        s += 1
    B = B / (2 ** s)
    dim = A.shape[0]
    X = np.eye(dim)
    term = np.eye(dim)
    k = 0
    while True:
        k += 1
        term = term @ B / k
        X = X + term
        if np.max(np.sum(np.abs(term), axis=1)) < tol:
            break
        if k > 200:
            raise ArithmeticError("matrix exponential series failed to converge")
    for _ in range(s):
        X = X @ X
    return X


def fundamental_matrix(Q: TriMatrix) -> RatMatrix:
    """Exact Green's matrix N = (-Q_TT)^-1 over the transient states.

    Q must be a lattice generator whose unique absorbing state is the last
    index (the one-block partition); the triangular system is solved by
    back-substitution in exact rationals.
    """
    size = len(Q.lattice)
    m = size - 1
    if len(Q.lattice.top) != 1:
        raise ValueError("the lattice's last element must be the one-block partition")
    for i in range(m):
        if Q.get(i, i) == 0:
            raise ValueError(
                f"transient state {Q.lattice[i].to_string()} has zero total rate"
            )
    if Q.get(size - 1, size - 1) != 0:
        raise ValueError("the absorbing state must have zero rate")
    # solve U N = I with U = -Q restricted to transient states (upper triangular)
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m)]
    for i in reversed(range(m)):
        qrow = Q.row(i)
        diag = -qrow.pop(i)
        acc: dict[int, Fraction] = {i: Fraction(1)}
        for k, v in qrow.items():
            if k >= m:
                continue
            for j, w in rows[k].items():
                coeff = v * w  # U[i,k] = -q[i,k], moved to the right-hand side
                prev = acc.get(j)
                acc[j] = coeff if prev is None else prev + coeff
        rows[i] = {j: v / diag for j, v in acc.items() if v != 0}
    N = RatMatrix(m)
    for i, row in enumerate(rows):
        for j, v in row.items():
            N.set(i, j, v)
    return N


def enumerate_maximal_chains(
    pi: SetPartition, rho: SetPartition
) -> list[list[SetPartition]]:
    """All maximal chains π = σ_0 ⋖ σ_1 ⋖ ... ⋖ σ_k = ρ, by DFS over pair mergers."""
    if pi.ground != rho.ground:
        raise ValueError("partitions live on different ground sets")
    if not pi.refines(rho):
        raise ValueError("chain enumeration requires π ≤ ρ")
    if pi.n > _CHAIN_ENUM_CAP:
        raise SizeLimitError(
            f"chain enumeration is capped at ground sets of size {_CHAIN_ENUM_CAP}"
        )
    if pi == rho:
        return [[pi]]
    out = []
    for sigma in pair_covers(pi):
        if sigma.refines(rho):
            for tail in enumerate_maximal_chains(sigma, rho):
                out.append([pi] + tail)
    return out


def hitting_bruteforce(model: str, pi: SetPartition, rho: SetPartition) -> Fraction:
    """Exact hitting probability by the memoized jump-chain recursion.

    h(σ) = Σ_τ P(jump σ → τ) h(τ) with h(ρ) = 1, P taken from the model's
    rate table; states that are not below ρ can never reach it and score 0.
    """
    if pi.ground != rho.ground:
        raise ValueError("partitions live on different ground sets")
    if pi == rho:
        return Fraction(1)
    n = pi.n
    rates_for: Callable[[int], RateTable] = {
        "bs": bs_rates,
        "kingman": kingman_rates,
    }.get(model, None)
    if rates_for is None:
        raise ValueError(f"unknown model {model!r}; use 'bs' or 'kingman'")
    rates = rates_for(max(n, 2))
    memo: dict[SetPartition, Fraction] = {}

    def h(sigma: SetPartition) -> Fraction:
        if sigma == rho:
            return Fraction(1)
        if not sigma.refines(rho):
            return Fraction(0)
        cached = memo.get(sigma)
        if cached is not None:
            return cached
        b = len(sigma)
        total = rates.total_rate(b)
        acc = Fraction(0)
        if model == "kingman":
            covers = pair_covers(sigma)
            for tau in covers:
                acc += h(tau) / len(covers)
        else:
            for tau in merge_covers(sigma):
                k = b - len(tau) + 1
                v = rates.rate(b, k)
                if v:
                    acc += (v / total) * h(tau)
        memo[sigma] = acc
        return acc

    return h(pi)
