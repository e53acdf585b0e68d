import dataclasses
import math

import numpy as np
import pytest

import gatebayes as gb


@pytest.fixture
def optimal():
    return gb.optimal_single_qubit_model()


class TestSampleOutcomes:
    def test_degenerate_law_at_zero_angle(self, optimal):
        # P(0|0) = 1, so every shot lands in the first bin
        rng = gb.replicate_rng(123, 0)
        counts = gb.sample_outcomes(optimal, 0.0, 50, rng)
        assert counts == gb.OutcomeCounts((50, 0))

    def test_binomial_concentration_at_central_angle(self, optimal):
        rng = gb.replicate_rng(123, 1)
        counts = gb.sample_outcomes(optimal, math.pi / 2, 100_000, rng)
        assert 0.495 <= counts.counts[0] / 100_000 <= 0.505

    def test_bell_law_degenerate_at_pi(self):
        model = gb.BellProbeModel((0.0, 1.0, 0.0, 0.0))
        rng = gb.replicate_rng(123, 2)
        counts = gb.sample_outcomes(model, math.pi, 10_000, rng)
        assert counts == gb.OutcomeCounts((0, 0, 10_000, 0))

    def test_bell_frequencies_near_exact_law(self):
        model = gb.BellProbeModel.normalized((0.3, 0.5, -0.4, 0.2))
        probs = np.asarray(model.prob_table(np.asarray(0.9)))
        rng = gb.replicate_rng(123, 3)
        counts = gb.sample_outcomes(model, 0.9, 200_000, rng)
        freq = np.asarray(counts.counts) / 200_000
        # 4 sigma binomial tolerance per outcome
        sigma = np.sqrt(probs * (1 - probs) / 200_000)
        assert np.all(np.abs(freq - probs) <= 4 * sigma + 1e-9)

    def test_same_stream_reproduces_counts(self, optimal):
        a = gb.sample_outcomes(optimal, 0.7, 500, gb.replicate_rng(9, 4))
        b = gb.sample_outcomes(optimal, 0.7, 500, gb.replicate_rng(9, 4))
        assert a == b

    def test_distinct_replicate_streams_differ(self, optimal):
        a = gb.sample_outcomes(optimal, 0.7, 500, gb.replicate_rng(9, 0))
        b = gb.sample_outcomes(optimal, 0.7, 500, gb.replicate_rng(9, 1))
        assert a != b


class TestExperimentSpec:
    def test_validation(self, optimal):
        with pytest.raises(gb.DomainError):
            gb.ExperimentSpec(model=optimal, theta_star=4.0, n_measurements=10)
        with pytest.raises(gb.DomainError):
            gb.ExperimentSpec(model=optimal, theta_star=0.5, n_measurements=0)
        with pytest.raises(gb.DomainError):
            gb.ExperimentSpec(model=optimal, theta_star=0.5, n_measurements=10,
                              replicates=0)
        with pytest.raises(gb.DomainError):
            gb.ExperimentSpec(model=optimal, theta_star=0.5, n_measurements=10,
                              seed=-1)


class TestRunExperiment:
    def test_bit_identical_reruns(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=200,
                                 replicates=12, seed=77)
        first = gb.run_experiment(spec)
        second = gb.run_experiment(spec)
        assert first == second

    def test_seed_changes_results(self, optimal):
        base = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=200,
                                 replicates=5, seed=77)
        other = dataclasses.replace(base, seed=78)
        assert gb.run_experiment(base) != gb.run_experiment(other)

    def test_asymptotic_region_at_moderate_budget(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=500,
                                 replicates=50, seed=20260809)
        agg = gb.summarize(gb.run_experiment(spec))
        assert 0.9 <= agg.rescaled_variance <= 1.15

    def test_small_budget_sits_above_the_asymptote(self, optimal):
        small = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=20,
                                  replicates=50, seed=20260809)
        large = dataclasses.replace(small, n_measurements=500)
        small_agg = gb.summarize(gb.run_experiment(small))
        large_agg = gb.summarize(gb.run_experiment(large))
        # wider posterior and visibly larger rescaled variance at M = 20
        assert small_agg.rescaled_variance > large_agg.rescaled_variance + 0.02
        mean_var_small = np.mean([r.posterior_variance
                                  for r in gb.run_experiment(small)])
        mean_var_large = np.mean([r.posterior_variance
                                  for r in gb.run_experiment(large)])
        assert mean_var_small > 10 * mean_var_large

    @pytest.mark.parametrize("theta_star", [0.6, 0.8, 1.2])
    def test_efficiency_reached_at_moderate_budget(self, optimal, theta_star):
        spec = gb.ExperimentSpec(model=optimal, theta_star=theta_star,
                                 n_measurements=500, replicates=100, seed=11)
        agg = gb.summarize(gb.run_experiment(spec))
        assert abs(agg.rescaled_variance - 1.0) < 0.1

    def test_mean_ratio_near_one_at_large_budget(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=1.8, n_measurements=700,
                                 replicates=300, seed=20260809)
        agg = gb.summarize(gb.run_experiment(spec))
        assert abs(agg.mean_ratio - 1.0) < 0.005

    def test_boundary_degenerate_flagged_and_reported(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.0, n_measurements=40,
                                 replicates=3, seed=1)
        results = gb.run_experiment(spec)
        for r in results:
            assert r.boundary_degenerate
            assert r.counts == gb.OutcomeCounts((40, 0))
            assert math.isnan(r.mean_ratio)
            assert r.posterior_mean < 0.2       # posterior piles up at the edge

    def test_interior_runs_not_flagged(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.9, n_measurements=40,
                                 replicates=2, seed=1)
        assert not any(r.boundary_degenerate for r in gb.run_experiment(spec))

    def test_rescaled_variance_uses_posterior_information(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.7, n_measurements=150,
                                 replicates=4, seed=5)
        info = gb.generalized_fisher_asymptotic(optimal, 0.7, 150,
                                                grid_size=spec.grid_size)
        for r in gb.run_experiment(spec):
            assert r.rescaled_variance == pytest.approx(r.posterior_variance * info,
                                                        rel=1e-14)


class TestBiasTrend:
    def test_bias_magnitude_shrinks_with_budget(self, optimal):
        # the estimator is asymptotically unbiased; near angles where the
        # leading bias coefficient crosses zero the comparison is only
        # meaningful up to the Monte Carlo resolution, hence the 2 sigma slack
        for theta_star in (0.8, 1.2, 1.8):
            biases = {}
            errs = {}
            for budget in (50, 1000):
                spec = gb.ExperimentSpec(model=optimal, theta_star=theta_star,
                                         n_measurements=budget, replicates=400,
                                         seed=99)
                results = gb.run_experiment(spec)
                values = [r.empirical_bias for r in results]
                biases[budget] = abs(float(np.mean(values)))
                errs[budget] = float(np.std(values)) / math.sqrt(len(values))
            slack = 2.0 * (errs[50] + errs[1000])
            assert biases[1000] < biases[50] + slack


class TestConvergenceSweep:
    def test_single_entry_duplicates_run_experiment(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=100,
                                 replicates=10, seed=7)
        rows = gb.convergence_sweep(spec, [100])
        agg = gb.summarize(gb.run_experiment(spec))
        assert rows[0].n_measurements == 100
        assert rows[0].mean_ratio == agg.mean_ratio
        assert rows[0].rescaled_variance == agg.rescaled_variance

    def test_rescaled_variance_decreases_toward_one(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=20,
                                 replicates=50, seed=20260809)
        rows = gb.convergence_sweep(spec, [20, 50, 100, 200, 500])
        values = [row.rescaled_variance for row in rows]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(1.0, abs=0.1)

    def test_deterministic(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=20,
                                 replicates=8, seed=3)
        assert gb.convergence_sweep(spec, [20, 80]) == gb.convergence_sweep(spec, [20, 80])

    def test_rejects_non_increasing_budgets(self, optimal):
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=20,
                                 replicates=2, seed=3)
        with pytest.raises(gb.DomainError):
            gb.convergence_sweep(spec, [50, 50])
        with pytest.raises(gb.DomainError):
            gb.convergence_sweep(spec, [])


class TestPosteriorAgainstAsymptotic:
    def test_replicate_averaged_posterior_matches_asymptotic(self, optimal):
        # with 500 shots the experimental posterior is essentially the
        # large-sample one: close in mean, variance, and total variation
        spec = gb.ExperimentSpec(model=optimal, theta_star=0.6, n_measurements=500,
                                 replicates=100, seed=20260809)
        results = gb.run_experiment(spec)
        asym = gb.asymptotic_posterior(optimal, 0.6, 500, grid_size=spec.grid_size)
        mean_exp = float(np.mean([r.posterior_mean for r in results]))
        var_exp = float(np.mean([r.posterior_variance for r in results]))
        assert abs(mean_exp - asym.mean) / asym.mean < 0.05
        assert abs(var_exp - asym.variance) / asym.variance < 0.05
        log_avg = np.mean([gb.posterior_from_counts(optimal, r.counts,
                                                    grid_size=spec.grid_size).log_density
                           for r in results], axis=0)
        averaged = gb.PosteriorGrid.from_log_density(asym.grid, log_avg, asym.weights)
        assert gb.total_variation_distance(averaged, asym) < 0.05
