"""
Solving, support-scenario extraction and the decision-map contract checks.
"""
from ..errors import DimensionError, DomainError
from ..numerics import MultiIndex
from ..utils.engine import info, warning
from .datasets import ScenarioDatasets
from .problem import DecisionProblem

from dataclasses import dataclass, field
from typing import Any, Tuple

import numpy as np

__all__ = ["DecisionOutcome", "Assumption1Report", "solve", "extract_support", "check_assumption1"]


@dataclass(frozen=True, eq=False)
class DecisionOutcome:
    """A decision with its support scenarios and complexity."""
    decision: Any
    support: Tuple[Tuple[int, ...], ...]
    """Positions of the support scenarios inside each list."""
    support_datasets: ScenarioDatasets
    complexity: MultiIndex
    degenerate: bool = False
    """True when re-solving on the support scenarios alone does not give the decision back."""
    resolves: int = 0
    """Number of re-solves performed."""


def _check_shape(problem: DecisionProblem, datasets: ScenarioDatasets) -> None:
    if datasets.m != problem.m:
        raise DimensionError(f"{problem.name} has {problem.m} criteria, datasets have {datasets.m}")


def solve(problem: DecisionProblem, datasets: ScenarioDatasets) -> Any:
    """
    Apply the decision map.

    Args:
        problem (DecisionProblem): The decision problem.
        datasets (ScenarioDatasets): One non-empty list per criterion.

    Returns:
        Any: The decision.

    Raises:
        DomainError: If some list is empty.
        InfeasibleProblemError: If the scenarios admit no decision.
    """
    _check_shape(problem, datasets)
    empty = [i + 1 for i, n in enumerate(datasets.N) if n == 0]
    if empty:
        raise DomainError(f"datasets of criteria {empty} are empty")
    return problem.decide(datasets)


def extract_support(problem: DecisionProblem, datasets: ScenarioDatasets,
                    exhaustive: bool = False, quiet: bool = False) -> DecisionOutcome:
    """
    Find the scenarios whose removal changes the decision.

    Each candidate scenario is removed in turn (keeping all the others) and
    the problem re-solved. Unless `exhaustive` is set, only the scenarios the
    problem reports as possible support are tried. The support lists are then
    re-solved on their own; a different decision marks the draw degenerate.

    Args:
        problem (DecisionProblem): The decision problem.
        datasets (ScenarioDatasets): The data.
        exhaustive (bool): Try every scenario.
        quiet (bool): Do not print a warning on degenerate draws.

    Returns:
        DecisionOutcome: Decision, support lists and complexity.
    """
    z = solve(problem, datasets)
    if exhaustive:
        candidates = [np.arange(n) for n in datasets.N]
    else:
        candidates = problem.support_candidates(z, datasets)

    support = []
    resolves = 0
    for i, indices in enumerate(candidates):
        kept = []
        for j in indices:
            resolves += 1
            if not problem.same_decision(problem.decide(datasets.without(i, int(j))), z):
                kept.append(int(j))
        support.append(tuple(kept))

    support_datasets = datasets.subset(support)
    degenerate = not problem.same_decision(problem.decide(support_datasets), z)
    complexity = MultiIndex(tuple(len(s) for s in support))
    if degenerate and not quiet:
        warning(f"degenerate draw: the {complexity.total()} support scenarios do not reproduce the decision")
    info(f"support extracted: s* = ({complexity}) after {resolves} re-solves")
    return DecisionOutcome(
        decision=z, support=tuple(support), support_datasets=support_datasets,
        complexity=complexity, degenerate=degenerate, resolves=resolves,
    )


@dataclass(frozen=True)
class Assumption1Report:
    """Outcome of the decision-map contract checks."""
    permutations: int
    confirmations: int
    contradictions: int
    failures: Tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def check_assumption1(problem: DecisionProblem, datasets: ScenarioDatasets, extra: ScenarioDatasets,
                      rng: np.random.Generator | int | None = None, permutations: int = 10) -> Assumption1Report:
    """
    Property checks of a decision map on one dataset.

    Reordering the lists must keep the decision. Appending a single extra
    scenario must keep the decision when the decision is appropriate for it,
    and change it otherwise. Never raises on a failed check: counterexamples
    are listed in the report.

    Args:
        problem (DecisionProblem): The decision problem.
        datasets (ScenarioDatasets): The base data.
        extra (ScenarioDatasets): Scenarios appended one at a time.
        rng (np.random.Generator | int | None): Source of the permutations.
        permutations (int): Number of random reorderings tried.

    Returns:
        Assumption1Report: Counts and counterexamples.
    """
    rng = np.random.default_rng(rng)
    z = problem.decide(datasets)
    failures = []

    for p in range(permutations):
        if not problem.same_decision(problem.decide(datasets.permuted(rng)), z):
            failures.append(f"permutation {p} changed the decision")

    confirmations = contradictions = 0
    for scenario in extra:
        changed = not problem.same_decision(problem.decide(datasets.with_extra(scenario)), z)
        if problem.is_appropriate(z, scenario):
            confirmations += 1
            if changed:
                failures.append(f"confirming scenario {scenario} changed the decision")
        else:
            contradictions += 1
            if not changed:
                failures.append(f"contradicting scenario {scenario} left the decision unchanged")

    return Assumption1Report(permutations=permutations, confirmations=confirmations,
                             contradictions=contradictions, failures=tuple(failures))
