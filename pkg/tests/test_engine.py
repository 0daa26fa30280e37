import math

import numpy as np
import pytest
from scipy.optimize import linprog

from scenariorisk import (
    DimensionError, DomainError, InfeasibleProblemError, MaxOfSamples, RobustLP2D, ScenarioDatasets,
    UnsupportedProblemError, check_assumption1, coverage_experiment, extract_support, solve,
)
from scenariorisk.constants import QMC_POINTS
from scenariorisk.engine import PROBLEMS, CertificateKind, DecisionProblem, LabeledScenario, vertex_solve


def small_lp(**kwargs):
    return RobustLP2D(**{"qmc_points": 2**12, **kwargs})


class MeanOfSamples(MaxOfSamples):
    """Breaks stability under confirmation: any added scenario moves the mean."""

    def decide(self, datasets):
        values = np.concatenate([rows[:, 0] for rows in datasets.lists])
        return float(values.mean()) if values.size else 0.0


class WithoutOracle(MaxOfSamples):
    true_risks = DecisionProblem.true_risks


class TestDatasets:
    def test_draw_and_shape(self, rng):
        data = ScenarioDatasets.draw(MaxOfSamples(), (20, 30), rng)
        assert data.m == 2
        assert data.N.to_list() == [20, 30]
        assert len(data) == 50
        assert {s.criterion_id for s in data} == {1, 2}

    def test_derived_datasets(self, rng):
        data = ScenarioDatasets.draw(small_lp(), (5, 4), rng)
        assert data.without(0, 2).N.to_list() == [4, 4]
        extra = LabeledScenario(2, (0.3, 1.5))
        grown = data.with_extra(extra)
        assert grown.N.to_list() == [5, 5]
        assert grown.scenarios(1)[-1] == extra
        assert data.subset([(0, 3), ()]).N.to_list() == [2, 0]
        shuffled = data.permuted(rng)
        for a, b in zip(data.lists, shuffled.lists):
            np.testing.assert_array_equal(np.sort(a, axis=0), np.sort(b, axis=0))
        with pytest.raises(DomainError):
            data.with_extra(LabeledScenario(3, (0.0, 1.0)))
        with pytest.raises(DomainError):
            LabeledScenario(0, (1.0,))

    def test_duplicates_are_kept(self):
        data = ScenarioDatasets.from_scenarios(1, [LabeledScenario(1, (0.5,))] * 3)
        assert data.N.to_list() == [3]

    def test_csv_round_trip(self, rng):
        data = ScenarioDatasets.draw(small_lp(centers=(0.0, 1.0, 2.0)), (3, 0, 2), rng)
        text = data.to_csv()
        assert text.splitlines()[0] == "criterion_id,p1,p2"
        back = ScenarioDatasets.from_csv(text, m=3)
        assert back.N == data.N
        for a, b in zip(data.lists, back.lists):
            if len(a):
                np.testing.assert_allclose(a, b, rtol=1e-14)


class TestMaxOfSamples:
    def test_decision(self):
        data = ScenarioDatasets(([[1.0], [3.7]], [[0.2], [2.5], [0.4]]))
        assert solve(MaxOfSamples(scales=(4.0, 4.0)), data) == 3.7

    def test_empty_list_is_rejected(self):
        with pytest.raises(DomainError):
            solve(MaxOfSamples(), ScenarioDatasets(([[1.0]], np.empty((0, 1)))))
        with pytest.raises(DimensionError):
            solve(MaxOfSamples(), ScenarioDatasets(([[1.0]],)))

    def test_unique_maximizer_is_the_only_support(self, rng):
        problem = MaxOfSamples()
        data = ScenarioDatasets.draw(problem, (20, 30), rng)
        outcome = extract_support(problem, data)
        owner = int(np.argmax([rows.max() for rows in data.lists]))
        expected = [0, 0]
        expected[owner] = 1
        assert outcome.complexity.to_list() == expected
        assert not outcome.degenerate
        assert outcome.complexity.leq(data.N)

    def test_tied_maximum_is_degenerate(self, capsys):
        data = ScenarioDatasets(([[0.9], [0.1]], [[0.9], [0.3]]))
        outcome = extract_support(MaxOfSamples(), data)
        assert outcome.complexity.to_list() == [0, 0]
        assert outcome.degenerate
        assert "degenerate" in capsys.readouterr().err

    def test_true_risks(self):
        risks = MaxOfSamples(scales=(1.0, 1.0, 1.0)).true_risks(0.9)
        np.testing.assert_allclose(risks.individual, [0.1, 0.1, 0.1])
        assert risks.joint == pytest.approx(1 - 0.9**3)
        assert risks.exact
        assert MaxOfSamples(scales=(1.0, 2.0)).true_risks(2.5).joint == 0.0

    def test_decision_map_contract(self, rng):
        problem = MaxOfSamples()
        data = ScenarioDatasets.draw(problem, (20, 30), rng)
        extra = ScenarioDatasets.draw(problem, (10, 10), rng)
        report = check_assumption1(problem, data, extra, rng=rng, permutations=50)
        assert report.ok, report.failures
        assert report.confirmations + report.contradictions == 20

    def test_contract_violation_is_reported(self, rng):
        problem = MeanOfSamples()
        data = ScenarioDatasets.draw(problem, (10, 10), rng)
        extra = ScenarioDatasets(([[0.0]], [[0.0]]))
        report = check_assumption1(problem, data, extra, rng=rng)
        assert not report.ok
        assert any("confirming" in f for f in report.failures)


class TestRobustLP:
    def test_vertex_enumeration_matches_linprog(self, rng):
        for _ in range(20):
            theta = rng.uniform(0, 2 * math.pi, 60)
            A = np.column_stack([np.cos(theta), np.sin(theta)])
            b = rng.uniform(1.0, 2.0, 60)
            A = np.vstack([A, [[1, 0], [-1, 0], [0, 1], [0, -1]]])
            b = np.concatenate([b, np.full(4, 10.0)])
            cost = rng.normal(size=2)
            z = vertex_solve(A, b, cost)
            reference = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * 2, method="highs")
            assert reference.status == 0
            assert cost @ z == pytest.approx(reference.fun, abs=1e-7)
            assert np.all(A @ z <= b + 1e-9)

    def test_single_scenario_per_criterion(self):
        problem = small_lp()
        data = ScenarioDatasets(([[0.0, 1.0]], [[math.pi / 2, 2.0]]))
        np.testing.assert_allclose(solve(problem, data), [1.0, 2.0], atol=1e-12)

    def test_infeasible(self):
        A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
        b = np.array([-1.0, -1.0, 1.0])
        with pytest.raises(InfeasibleProblemError):
            vertex_solve(A, b, np.array([1.0, 1.0]))

    def test_complexity_bounded_by_dimension(self, rng):
        problem = small_lp()
        for _ in range(100):
            data = ScenarioDatasets.draw(problem, (30, 30), rng)
            outcome = extract_support(problem, data, quiet=True)
            if not outcome.degenerate:
                assert outcome.complexity.total() <= 2

    def test_pruned_extraction_matches_exhaustive(self, rng):
        problem = small_lp()
        for _ in range(5):
            data = ScenarioDatasets.draw(problem, (15, 15), rng)
            pruned = extract_support(problem, data)
            full = extract_support(problem, data, exhaustive=True)
            assert pruned.support == full.support
            assert pruned.resolves <= full.resolves

    def test_decision_map_contract(self, rng):
        problem = small_lp()
        data = ScenarioDatasets.draw(problem, (20, 20), rng)
        extra = ScenarioDatasets.draw(problem, (100, 100), rng)
        report = check_assumption1(problem, data, extra, rng=rng, permutations=50)
        assert report.ok, report.failures

    def test_oracle_is_stable(self, rng):
        problem = small_lp(qmc_points=2**14)
        z = solve(problem, ScenarioDatasets.draw(problem, (20, 20), rng))
        a, b = problem.true_risks(z, seed=1), problem.true_risks(z, seed=2)
        spread = 3 * np.sqrt(a.stderr**2 + b.stderr**2) + 1e-9
        assert np.all(np.abs(a.individual - b.individual) <= spread)
        assert not a.exact

    def test_invalid_parameters(self):
        with pytest.raises(DomainError):
            RobustLP2D(r_range=(2.0, 1.0))
        with pytest.raises(DomainError):
            RobustLP2D(qmc_points=4, qmc_replicates=8)


class TestCoverage:
    def test_small_run(self):
        report = coverage_experiment(MaxOfSamples(), (20, 30), beta=0.2, trials=300, rng_seed=7)
        assert report.trials + report.degenerate + report.failed == report.requested == 300
        assert report.hits <= report.trials
        assert report.passed
        assert report.wilson[0] <= report.empirical_coverage <= report.wilson[1]
        assert report.mean_bound_gap >= 0
        assert sum(report.complexity_histogram.values()) == report.trials

    def test_single_trial(self):
        report = coverage_experiment(MaxOfSamples(), (5, 5), beta=0.1, trials=1)
        assert report.hits in (0, 1)

    def test_independent_of_workers(self):
        args = dict(N=(10, 15), beta=0.1, trials=60, certificate_kind="box", rng_seed=3)
        serial = coverage_experiment(MaxOfSamples(), workers=1, **args)
        threaded = coverage_experiment(MaxOfSamples(), workers=4, **args)
        assert serial.to_dict() == threaded.to_dict()

    def test_report_serialization(self):
        data = coverage_experiment(MaxOfSamples(), (5, 5), beta=0.1, trials=10, rng_seed=1).to_dict()
        assert data["certificate"] == "diagonal"
        assert data["N"] == [5, 5]
        assert isinstance(data["empirical_coverage"], str)

    def test_invalid_runs(self):
        with pytest.raises(DomainError):
            coverage_experiment(MaxOfSamples(), (5, 5), beta=0.1, trials=0)
        with pytest.raises(DomainError):
            coverage_experiment(MaxOfSamples(), (5, 5, 5), beta=0.1, trials=5)
        with pytest.raises(UnsupportedProblemError):
            coverage_experiment(WithoutOracle(), (5, 5), beta=0.1, trials=5)

    def test_registry(self):
        assert set(PROBLEMS) == {"max-of-samples", "robust-lp2d"}

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", list(CertificateKind))
    @pytest.mark.parametrize("beta", [0.1, 0.2])
    def test_max_of_samples_acceptance(self, kind, beta):
        report = coverage_experiment(MaxOfSamples(), (20, 30), beta=beta, trials=10**4, certificate_kind=kind,
                                     rng_seed=2024, workers=4)
        assert report.passed, report.to_dict()

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", [CertificateKind.DIAGONAL, CertificateKind.BOX])
    def test_robust_lp_acceptance(self, kind):
        problem = RobustLP2D()
        assert problem.qmc_points == QMC_POINTS
        report = coverage_experiment(problem, (40, 40), beta=0.2, trials=2000, certificate_kind=kind,
                                     rng_seed=11, workers=4)
        assert report.passed, report.to_dict()
        assert report.mean_bound_gap >= 0
