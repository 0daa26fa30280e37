"""
A two-variable robust linear program.

Each scenario of criterion i is a half-plane cos(theta) z1 + sin(theta) z2 <= r
with theta ~ Uniform[center_i - w, center_i + w] and r ~ Uniform[r_lo, r_hi].
The decision minimizes c . z over the intersection of all scenario half-planes
and the box |z_j| <= bound, and is computed by enumerating every vertex.
"""
from ..constants import DECISION_TOLERANCE, EVAL_CELLS, QMC_POINTS, QMC_REPLICATES
from ..errors import DomainError, InfeasibleProblemError
from .datasets import LabeledScenario, ScenarioDatasets
from .problem import DecisionProblem, RiskEstimate

from dataclasses import dataclass
from typing import List, Tuple

import math

import numpy as np
from scipy.stats import qmc

__all__ = ["RobustLP2D", "vertex_solve"]

DET_TOLERANCE = 1e-12
FEASIBILITY_TOLERANCE = 1e-9
ACTIVE_TOLERANCE = 1e-7


def vertex_solve(A: np.ndarray, b: np.ndarray, cost: np.ndarray,
                 feasibility: float = FEASIBILITY_TOLERANCE) -> np.ndarray:
    """
    Minimize cost . z subject to A z <= b in two variables by vertex enumeration.

    Every pair of rows is intersected by Cramer's rule; near-parallel pairs
    are skipped. Among feasible vertices the cheapest wins, ties going to the
    lexicographically smallest vertex.

    Args:
        A (np.ndarray): Constraint normals, shape (n, 2).
        b (np.ndarray): Right-hand sides, shape (n,).
        cost (np.ndarray): Objective, shape (2,).
        feasibility (float): Slack allowed on A z <= b.

    Returns:
        np.ndarray: The optimal vertex, shape (2,).

    Raises:
        InfeasibleProblemError: If no feasible vertex exists.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    first, second = np.triu_indices(len(b), 1)
    chunk = max(1, EVAL_CELLS // max(1, len(b)))

    best_value, best_point = math.inf, None
    for start in range(0, first.size, chunk):
        i, j = first[start:start + chunk], second[start:start + chunk]
        a1, a2 = A[i], A[j]
        det = a1[:, 0] * a2[:, 1] - a1[:, 1] * a2[:, 0]
        keep = np.abs(det) > DET_TOLERANCE
        if not np.any(keep):
            continue
        a1, a2, det, bi, bj = a1[keep], a2[keep], det[keep], b[i[keep]], b[j[keep]]
        points = np.column_stack([
            (bi * a2[:, 1] - bj * a1[:, 1]) / det,
            (a1[:, 0] * bj - a2[:, 0] * bi) / det,
        ])
        feasible = np.all(points @ A.T <= b[None, :] + feasibility, axis=1)
        points = points[feasible]
        if not len(points):
            continue
        values = points @ cost
        order = np.lexsort((points[:, 1], points[:, 0], values))
        candidate = points[order[0]]
        value = float(values[order[0]])
        if value < best_value or (value == best_value and tuple(candidate) < tuple(best_point)):
            best_value, best_point = value, candidate
    if best_point is None:
        raise InfeasibleProblemError("the scenario half-planes admit no feasible vertex")
    return best_point


@dataclass(frozen=True)
class RobustLP2D(DecisionProblem):
    """
    Robust LP in the plane with one family of random half-planes per criterion.

    Risks are estimated by conditional quasi-Monte Carlo: r is integrated in
    closed form and theta by scrambled Sobol points, split into independent
    replicates that give the standard error.
    """
    centers: Tuple[float, ...] = (0.0, math.pi / 2)
    """Mean angle of the half-plane normals of each criterion."""
    half_width: float = math.pi / 4
    r_range: Tuple[float, float] = (1.0, 2.0)
    bound: float = 10.0
    """Half side of the bounding box."""
    cost: Tuple[float, float] = (-1.0, -1.0)
    qmc_points: int = QMC_POINTS
    qmc_replicates: int = QMC_REPLICATES
    tolerance: float = DECISION_TOLERANCE
    name = "robust-lp2d"

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(float(c) for c in self.centers))
        if not self.centers:
            raise DomainError("at least one criterion is needed")
        lo, hi = self.r_range
        if not lo < hi:
            raise DomainError(f"r range must be increasing, got {self.r_range}")
        if self.half_width <= 0 or self.bound <= 0:
            raise DomainError("half width and box bound must be positive")
        if self.qmc_replicates < 2 or self.qmc_points < 2 * self.qmc_replicates:
            raise DomainError("need at least 2 QMC replicates of at least 2 points")

    @property
    def m(self) -> int:
        return len(self.centers)

    def payload_width(self, criterion: int) -> int:
        return 2

    def sample(self, rng: np.random.Generator, criterion: int, size: int) -> np.ndarray:
        center = self.centers[criterion]
        theta = rng.uniform(center - self.half_width, center + self.half_width, size=size)
        r = rng.uniform(*self.r_range, size=size)
        return np.column_stack([theta, r])

    # --- decision map ---
    def _box(self) -> Tuple[np.ndarray, np.ndarray]:
        A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
        return A, np.full(4, self.bound)

    def constraints(self, datasets: ScenarioDatasets) -> Tuple[np.ndarray, np.ndarray]:
        """Stacked (A, b): every scenario half-plane, then the four box sides."""
        payload = np.vstack([rows for rows in datasets.lists] + [np.empty((0, 2))])
        box_A, box_b = self._box()
        A = np.vstack([np.column_stack([np.cos(payload[:, 0]), np.sin(payload[:, 0])]), box_A])
        return A, np.concatenate([payload[:, 1], box_b])

    @property
    def empty_decision(self) -> np.ndarray:
        return vertex_solve(*self._box(), np.asarray(self.cost))

    def decide(self, datasets: ScenarioDatasets) -> np.ndarray:
        A, b = self.constraints(datasets)
        return vertex_solve(A, b, np.asarray(self.cost))

    def same_decision(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(np.max(np.abs(np.asarray(a) - np.asarray(b))) <= self.tolerance)

    def is_appropriate(self, z: np.ndarray, scenario: LabeledScenario) -> bool:
        theta, r = scenario.payload
        return math.cos(theta) * z[0] + math.sin(theta) * z[1] <= r

    def support_candidates(self, z: np.ndarray, datasets: ScenarioDatasets) -> List[np.ndarray]:
        # an inactive half-plane can be dropped without moving the optimum
        out = []
        for rows in datasets.lists:
            slack = rows[:, 1] - (np.cos(rows[:, 0]) * z[0] + np.sin(rows[:, 0]) * z[1])
            out.append(np.flatnonzero(np.abs(slack) <= ACTIVE_TOLERANCE))
        return out

    # --- risk oracle ---
    def _violation_probability(self, criterion: int, z: np.ndarray, u: np.ndarray) -> float:
        center = self.centers[criterion]
        theta = center - self.half_width + 2.0 * self.half_width * u
        lhs = np.cos(theta) * z[0] + np.sin(theta) * z[1]
        lo, hi = self.r_range
        # P{r < lhs | theta}
        return float(np.mean(np.clip((lhs - lo) / (hi - lo), 0.0, 1.0)))

    def true_risks(self, z: np.ndarray, seed=None) -> RiskEstimate:
        """
        QMC estimate of V_1..V_m and V with standard errors.

        Args:
            z (np.ndarray): The decision.
            seed (int | np.random.SeedSequence | None): Seed of the scrambles.
        """
        sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        per_replicate = max(1, int(round(math.log2(self.qmc_points / self.qmc_replicates))))
        streams = sequence.spawn(self.qmc_replicates * self.m)

        estimates = np.empty((self.qmc_replicates, self.m), dtype=float)
        for r in range(self.qmc_replicates):
            for i in range(self.m):
                sobol = qmc.Sobol(d=1, scramble=True, seed=np.random.default_rng(streams[r * self.m + i]))
                u = sobol.random_base2(m=per_replicate)[:, 0]
                estimates[r, i] = self._violation_probability(i, z, u)

        joint = 1.0 - np.prod(1.0 - estimates, axis=1)
        scale = math.sqrt(self.qmc_replicates)
        return RiskEstimate(
            individual=estimates.mean(axis=0),
            joint=float(joint.mean()),
            stderr=estimates.std(axis=0, ddof=1) / scale,
            joint_stderr=float(joint.std(ddof=1) / scale),
        )

    def describe(self) -> dict:
        return {
            "name": self.name, "m": self.m, "centers": list(self.centers),
            "half_width": self.half_width, "r_range": list(self.r_range), "bound": self.bound,
            "qmc_points": self.qmc_points, "qmc_replicates": self.qmc_replicates,
        }
