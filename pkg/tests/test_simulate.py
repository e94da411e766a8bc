"""Seeded cohort simulation and the brute-force grid oracle."""

import numpy as np
import pytest

from bayescreen import (
    BetaParams,
    CohortObservation,
    CoverageResult,
    SimConfig,
    SimResult,
    TestCharacteristics,
    beta_update,
    beta_pdf,
    coverage_experiment,
    grid_bayes_oracle,
    replicate_table,
    simulate,
)

NINE_NINE = TestCharacteristics(0.9, 0.9)


class TestDeterminism:
    def test_same_seed_bit_identical(self):
        cfg = SimConfig(n=500, true_prevalence=0.2, test=NINE_NINE,
                        seed=42, replicates=4)
        assert simulate(cfg) == simulate(cfg)

    def test_different_seed_differs(self):
        base = SimConfig(n=5000, true_prevalence=0.2, test=NINE_NINE, seed=1)
        other = SimConfig(n=5000, true_prevalence=0.2, test=NINE_NINE, seed=2)
        assert simulate(base).t != simulate(other).t

    def test_replicates_independent_of_count(self):
        # Replicate i draws from SeedSequence((seed, i)), so the first
        # replicates match regardless of how many are requested.
        short = simulate(SimConfig(n=200, true_prevalence=0.3,
                                   test=NINE_NINE, seed=7, replicates=2))
        long = simulate(SimConfig(n=200, true_prevalence=0.3,
                                  test=NINE_NINE, seed=7, replicates=5))
        assert long.replicates[:2] == short.replicates


class TestDegenerate:
    def test_no_disease_perfect_test(self):
        cfg = SimConfig(n=100, true_prevalence=0.0,
                        test=TestCharacteristics(1, 1), seed=3)
        res = simulate(cfg)
        assert res.t == 0
        assert res.confusion == (0, 0, 100, 0)

    def test_all_diseased_perfect_test(self):
        cfg = SimConfig(n=100, true_prevalence=1.0,
                        test=TestCharacteristics(1, 1), seed=3)
        res = simulate(cfg)
        assert res.t == 100
        assert res.confusion == (100, 0, 0, 0)

    def test_counts_sum_to_n(self):
        cfg = SimConfig(n=777, true_prevalence=0.4,
                        test=TestCharacteristics(0.8, 0.7), seed=9,
                        replicates=3)
        for rep in simulate(cfg).replicates:
            assert rep.tp + rep.fp + rep.tn + rep.fn == 777
            assert rep.t == rep.tp + rep.fp

    def test_rejects_bad_config(self):
        with pytest.raises(ValueError):
            SimConfig(n=0, true_prevalence=0.5, test=NINE_NINE)
        with pytest.raises(ValueError):
            SimConfig(n=10, true_prevalence=1.5, test=NINE_NINE)
        with pytest.raises(ValueError):
            SimConfig(n=10, true_prevalence=0.5, test=NINE_NINE, replicates=0)


class TestConcentration:
    def test_apparent_rate_near_expectation(self):
        # At n = 1e6 the apparent positive rate (1-b) + J*phi should sit
        # within a few standard errors of its expectation.
        a, b, phi = 0.9, 0.8, 0.1
        cfg = SimConfig(n=1_000_000, true_prevalence=phi,
                        test=TestCharacteristics(a, b), seed=2024)
        res = simulate(cfg)
        expected = (1 - b) + (a + b - 1) * phi
        se = np.sqrt(expected * (1 - expected) / cfg.n)
        assert abs(res.t / cfg.n - expected) < 5 * se


class TestCoverage:
    def test_bookkeeping(self):
        cfg = SimConfig(n=200, true_prevalence=0.3,
                        test=TestCharacteristics(1, 1), seed=5,
                        replicates=40)
        res = coverage_experiment(cfg)
        assert isinstance(res, CoverageResult)
        assert 0.0 <= res.coverage <= 1.0
        assert 0.0 <= res.clamp_rate <= 1.0
        assert res.replicates == 40

    def test_perfect_test_near_nominal(self):
        cfg = SimConfig(n=1000, true_prevalence=0.3,
                        test=TestCharacteristics(1, 1), seed=11,
                        replicates=200)
        res = coverage_experiment(cfg)
        assert abs(res.coverage - 0.95) < 0.05
        assert res.clamp_rate == 0.0


class TestGridOracle:
    def test_uniform_prior_no_test_matches_beta(self):
        obs = CohortObservation(n=20, t=7)
        grid = grid_bayes_oracle(obs)
        conjugate = beta_pdf(beta_update(BetaParams(1, 1), obs),
                             grid_size=grid.support.size)
        assert np.array_equal(grid.support, conjugate.support)
        assert np.max(np.abs(grid.values - conjugate.values)) < 1e-6

    def test_zero_successes(self):
        grid = grid_bayes_oracle(CohortObservation(n=10, t=0))
        # Posterior Beta(1, 11): density 11 at 0, decreasing.
        assert grid.values[0] == pytest.approx(11.0, abs=1e-3)
        assert np.all(np.diff(grid.values) <= 1e-12)

    def test_all_successes(self):
        grid = grid_bayes_oracle(CohortObservation(n=10, t=10))
        assert grid.values[-1] == pytest.approx(11.0, abs=1e-3)

    def test_normalized(self):
        grid = grid_bayes_oracle(CohortObservation(n=50, t=20),
                                 prior=BetaParams(2, 3))
        assert grid.integral() == pytest.approx(1.0, abs=1e-9)

    def test_imperfect_test_mode_shifts_up(self):
        # Same observed t: correcting for false positives with an
        # imperfect test moves mass relative to the naive read t/n.
        obs = CohortObservation(n=100, t=30)
        naive = grid_bayes_oracle(obs)
        corrected = grid_bayes_oracle(obs, test=TestCharacteristics(0.9, 0.8))
        mode_naive = naive.support[np.argmax(naive.values)]
        mode_corr = corrected.support[np.argmax(corrected.values)]
        assert mode_naive == pytest.approx(0.3, abs=0.01)
        # (t/n - (1-b)) / J = (0.3 - 0.2) / 0.7
        assert mode_corr == pytest.approx(0.1 / 0.7, abs=0.01)

    def test_rejects_uninformative_test(self):
        from bayescreen import UninformativeTest
        with pytest.raises(UninformativeTest):
            grid_bayes_oracle(CohortObservation(n=10, t=5),
                              test=TestCharacteristics(0.5, 0.5))

    def test_rejects_tiny_grid(self):
        with pytest.raises(ValueError):
            grid_bayes_oracle(CohortObservation(n=10, t=5), grid_size=100)


class TestReplicateTable:
    def test_format(self):
        cfg = SimConfig(n=50, true_prevalence=0.2, test=NINE_NINE,
                        seed=1, replicates=2)
        text = replicate_table(simulate(cfg))
        lines = text.strip().split("\n")
        assert lines[0] == "replicate,t,TP,FP,TN,FN"
        assert len(lines) == 3
        first = [int(v) for v in lines[1].split(",")]
        assert first[0] == 0
        assert first[2] + first[3] + first[4] + first[5] == 50

    def test_byte_reproducible(self):
        cfg = SimConfig(n=50, true_prevalence=0.2, test=NINE_NINE,
                        seed=1, replicates=3)
        assert replicate_table(simulate(cfg)) == replicate_table(simulate(cfg))
