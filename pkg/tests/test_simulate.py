"""Seeded Monte Carlo paths and estimators against the exact laws."""

from collections import Counter
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from coalspec import (
    SetPartition,
    Trajectory,
    bs_hitting,
    bs_transition,
    estimate_containment,
    estimate_transition,
    kingman_block_triple,
    merge_covers,
    pair_covers,
    replicate_rng,
    simulate_bs,
    simulate_kingman,
    transition_via_triple,
)

F = Fraction


def P(text):
    return SetPartition.from_string(text)


class TestTrajectory:
    def test_state_lookup(self):
        traj = Trajectory(
            times=(1.0, 2.5),
            states=(P("1|2|3"), P("1,2|3"), P("1,2,3")),
        )
        assert traj.state_at(0.0) == P("1|2|3")
        assert traj.state_at(0.99) == P("1|2|3")
        assert traj.state_at(1.0) == P("1,2|3")
        assert traj.state_at(2.4) == P("1,2|3")
        assert traj.state_at(7.0) == P("1,2,3") == traj.final
        with pytest.raises(ValueError):
            traj.state_at(-0.1)

    def test_validation(self):
        with pytest.raises(ValueError):
            Trajectory(times=(1.0,), states=(P("1|2"),))
        with pytest.raises(ValueError):
            Trajectory(times=(2.0, 1.0), states=(P("1|2|3"), P("1,2|3"), P("1,2,3")))
        with pytest.raises(ValueError):
            Trajectory(times=(1.0,), states=(P("1,2|3"), P("1|2|3")))
        with pytest.raises(ValueError):
            Trajectory(times=(1.0,), states=(P("1|2"), P("1|2")))


class TestSimulateBs:
    def test_runs_to_absorption(self):
        rng = np.random.default_rng(1)
        for n in (1, 2, 5):
            traj = simulate_bs(n, None, rng)
            assert traj.states[0] == SetPartition.singletons(n)
            assert traj.final == SetPartition.whole(n)

    def test_jumps_are_single_mergers(self):
        rng = np.random.default_rng(2)
        for _ in range(25):
            traj = simulate_bs(5, None, rng)
            for a, b in zip(traj.states, traj.states[1:]):
                assert b in merge_covers(a)

    def test_horizon(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            traj = simulate_bs(6, 0.5, rng)
            assert all(t <= 0.5 for t in traj.times)
            assert traj.state_at(0.5) == traj.final

    def test_reproducible_streams(self):
        a = simulate_bs(6, None, replicate_rng(11, 4))
        b = simulate_bs(6, None, replicate_rng(11, 4))
        c = simulate_bs(6, None, replicate_rng(11, 5))
        assert a == b
        assert a != c

    def test_errors(self):
        with pytest.raises(ValueError):
            simulate_bs(0, None, np.random.default_rng(0))
        with pytest.raises(ValueError):
            simulate_bs(3, -1.0, np.random.default_rng(0))


class TestSimulateKingman:
    def test_runs_through_every_block_count(self):
        rng = np.random.default_rng(4)
        traj = simulate_kingman(6, None, rng)
        assert [len(s) for s in traj.states] == [6, 5, 4, 3, 2, 1]

    def test_jumps_are_pair_mergers(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            traj = simulate_kingman(5, None, rng)
            for a, b in zip(traj.states, traj.states[1:]):
                assert b in pair_covers(a)

    def test_horizon_and_errors(self):
        rng = np.random.default_rng(6)
        traj = simulate_kingman(5, 0.2, rng)
        assert all(t <= 0.2 for t in traj.times)
        with pytest.raises(ValueError):
            simulate_kingman(-1, None, rng)
        with pytest.raises(ValueError):
            simulate_kingman(4, -0.5, rng)


class TestEstimateTransition:
    def test_fractions_sum_to_one(self):
        est = estimate_transition("bs", 3, 0.4, reps=500, seed=7)
        assert sum((p for p, _ in est.values()), F(0)) == 1
        assert all(se >= 0 for _, se in est.values())

    def test_bs_matches_closed_form(self):
        n, t, reps = 4, 1.0, 20000
        est = estimate_transition("bs", n, t, reps=reps, seed=20240811)
        delta = SetPartition.singletons(n)
        for rho, (p_hat, se) in est.items():
            p = bs_transition(delta, rho, t)
            sigma = sqrt(p * (1 - p) / reps)
            assert abs(float(p_hat) - p) < 4.5 * sigma + 1e-9

    def test_kingman_block_marginal(self):
        n, t, reps = 5, 0.5, 20000
        est = estimate_transition("kingman", n, t, reps=reps, seed=31)
        by_count = Counter()
        for rho, (p_hat, _) in est.items():
            by_count[len(rho)] += p_hat
        M = transition_via_triple(kingman_block_triple(n), t)
        for j in range(1, n + 1):
            p = M[n - 1, j - 1]
            sigma = sqrt(max(p * (1 - p), 1e-12) / reps)
            assert abs(float(by_count[j]) - p) < 4.5 * sigma + 1e-9

    def test_errors(self):
        with pytest.raises(ValueError):
            estimate_transition("moran", 3, 1.0, reps=10, seed=0)
        with pytest.raises(ValueError):
            estimate_transition("bs", 3, 1.0, reps=0, seed=0)


class TestPathLaws:
    def test_kingman_jump_chain_is_uniform_on_chains(self):
        # every maximal lattice chain is equally likely under pair sampling
        n, reps = 4, 18000
        chains = Counter()
        for i in range(reps):
            traj = simulate_kingman(n, None, replicate_rng(17, i))
            chains[traj.states] += 1
        assert len(chains) == 18
        p = 1 / 18
        sigma = sqrt(reps * p * (1 - p))
        for cnt in chains.values():
            assert abs(cnt - reps * p) < 4.5 * sigma

    def test_bs_visit_frequency_matches_hitting(self):
        n, reps = 4, 20000
        rho = P("1,2|3,4")
        h = float(bs_hitting(SetPartition.singletons(n), rho))
        hits = 0
        for i in range(reps):
            if rho in simulate_bs(n, None, replicate_rng(23, i)).states:
                hits += 1
        sigma = sqrt(reps * h * (1 - h))
        assert abs(hits - reps * h) < 4.5 * sigma


class TestEstimateContainment:
    def test_matches_eigenvector_entry(self):
        pi, rho, reps = P("1|2|3|4"), P("1,2,3|4"), 20000
        p_hat, se = estimate_containment(pi, rho, reps=reps, seed=5)
        p = 1 / 3
        sigma = sqrt(p * (1 - p) / reps)
        assert abs(float(p_hat) - p) < 4.5 * sigma
        assert se == pytest.approx(sigma, rel=0.1)

    def test_certain_containment(self):
        pi = P("1|2|3")
        assert estimate_containment(pi, P("1,2,3"), reps=50, seed=0)[0] == 1

    def test_errors(self):
        with pytest.raises(ValueError):
            estimate_containment(P("1|2"), P("1,2"), reps=0, seed=0)


def test_replicate_rng_is_deterministic():
    a = replicate_rng(3, 9).integers(0, 1000, size=5)
    b = replicate_rng(3, 9).integers(0, 1000, size=5)
    c = replicate_rng(3, 10).integers(0, 1000, size=5)
    assert list(a) == list(b)
    assert list(a) != list(c)
