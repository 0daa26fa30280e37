"""
Scenario datasets, decision problems and the experiments run on them.
"""
from .datasets import LabeledScenario, ScenarioDatasets
from .problem import DecisionProblem, RiskEstimate
from .max_of_samples import MaxOfSamples
from .robust_lp import RobustLP2D, vertex_solve
from .support import Assumption1Report, DecisionOutcome, check_assumption1, extract_support, solve
from .coverage import CertificateKind, CoverageReport, TrialResult, coverage_experiment

PROBLEMS = {
    MaxOfSamples.name: MaxOfSamples,
    RobustLP2D.name: RobustLP2D,
}
"""Built-in problems by command-line name."""

__all__ = [
    "LabeledScenario", "ScenarioDatasets", "DecisionProblem", "RiskEstimate",
    "MaxOfSamples", "RobustLP2D", "vertex_solve",
    "DecisionOutcome", "Assumption1Report", "solve", "extract_support", "check_assumption1",
    "CertificateKind", "CoverageReport", "TrialResult", "coverage_experiment", "PROBLEMS",
]
