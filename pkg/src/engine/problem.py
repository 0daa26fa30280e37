from ..errors import UnsupportedProblemError
from .datasets import LabeledScenario, ScenarioDatasets

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, List

import numpy as np

__all__ = ["DecisionProblem", "RiskEstimate"]


@dataclass(frozen=True)
class RiskEstimate:
    """Individual risks V_1..V_m and the joint risk V of a decision."""
    individual: np.ndarray
    joint: float
    stderr: np.ndarray | None = None
    """Standard errors of the individual risks, None when they are exact."""
    joint_stderr: float | None = None

    @property
    def exact(self) -> bool:
        return self.stderr is None


class DecisionProblem(ABC):
    """
    A decision map z* = M(D_1, ..., D_m) together with the scenario
    distributions it is tested against.

    Subclasses must be permutation invariant, stable when an appropriate
    scenario is added and responsive when a violating one is added.
    """
    name: str = "problem"

    @property
    @abstractmethod
    def m(self) -> int:
        """Number of criteria."""

    @abstractmethod
    def payload_width(self, criterion: int) -> int:
        """Number of payload columns seen by criterion `criterion` (0-based)."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, criterion: int, size: int) -> np.ndarray:
        """Draw `size` i.i.d. payloads for criterion `criterion` (0-based), shape (size, width)."""

    @property
    @abstractmethod
    def empty_decision(self) -> Any:
        """The decision returned when every list is empty."""

    @abstractmethod
    def decide(self, datasets: ScenarioDatasets) -> Any:
        """The decision map itself; must accept empty lists."""

    @abstractmethod
    def is_appropriate(self, z: Any, scenario: LabeledScenario) -> bool:
        """Whether z satisfies the criterion of `scenario` under its realization."""

    def same_decision(self, a: Any, b: Any) -> bool:
        return bool(np.array_equal(np.asarray(a), np.asarray(b)))

    def true_risks(self, z: Any, seed=None) -> RiskEstimate:
        """Risks of z under a fresh scenario; problems without an oracle raise."""
        raise UnsupportedProblemError(f"{self.name} has no risk oracle")

    @property
    def has_oracle(self) -> bool:
        return type(self).true_risks is not DecisionProblem.true_risks

    def support_candidates(self, z: Any, datasets: ScenarioDatasets) -> List[np.ndarray]:
        """
        Indices, per criterion, of the scenarios that may be support scenarios of z.

        Every scenario by default; problems may exclude scenarios whose
        removal provably keeps the decision.
        """
        return [np.arange(len(rows)) for rows in datasets.lists]

    def empty_datasets(self) -> ScenarioDatasets:
        return ScenarioDatasets.empty([self.payload_width(i) for i in range(self.m)])

    def describe(self) -> dict:
        return {"name": self.name, "m": self.m}
