from ..errors import DomainError
from .datasets import LabeledScenario, ScenarioDatasets
from .problem import DecisionProblem, RiskEstimate

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

__all__ = ["MaxOfSamples"]


@dataclass(frozen=True)
class MaxOfSamples(DecisionProblem):
    """
    z = largest value observed over all criteria.

    Criterion i observes f_i ~ Uniform[0, c_i] independently of the others
    and is satisfied when f_i <= z, so V_i(z) = clip(1 - z / c_i, 0, 1) and
    V(z) = 1 - prod(1 - V_i). Decisions are compared exactly.
    """
    scales: Tuple[float, ...] = (1.0, 1.0)
    """Upper ends c_i of the uniform distributions."""
    name = "max-of-samples"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scales", tuple(float(c) for c in self.scales))
        if not self.scales or any(c <= 0 for c in self.scales):
            raise DomainError(f"scales must be positive, got {self.scales}")

    @property
    def m(self) -> int:
        return len(self.scales)

    def payload_width(self, criterion: int) -> int:
        return 1

    def sample(self, rng: np.random.Generator, criterion: int, size: int) -> np.ndarray:
        return rng.uniform(0.0, self.scales[criterion], size=(size, 1))

    @property
    def empty_decision(self) -> float:
        return 0.0

    def decide(self, datasets: ScenarioDatasets) -> float:
        values = [rows[:, 0].max() for rows in datasets.lists if len(rows)]
        return float(max(values)) if values else self.empty_decision

    def same_decision(self, a: float, b: float) -> bool:
        return a == b

    def is_appropriate(self, z: float, scenario: LabeledScenario) -> bool:
        return scenario.payload[0] <= z

    def true_risks(self, z: float, seed=None) -> RiskEstimate:
        individual = np.clip(1.0 - z / np.asarray(self.scales), 0.0, 1.0)
        return RiskEstimate(individual=individual, joint=float(1.0 - np.prod(1.0 - individual)))

    def support_candidates(self, z: float, datasets: ScenarioDatasets) -> List[np.ndarray]:
        # only a scenario attaining the maximum can move it
        return [np.flatnonzero(rows[:, 0] == z) for rows in datasets.lists]

    def describe(self) -> dict:
        return {"name": self.name, "m": self.m, "scales": list(self.scales)}
