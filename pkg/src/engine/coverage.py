"""
Monte Carlo coverage of the certificates.

Each trial draws fresh datasets, solves, extracts the complexity, builds the
requested certificate at that complexity and checks it against the true risks
of the decision. The fraction of hits must not fall below 1 - beta beyond
sampling error.
"""
from ..allocations import Theorem1Choice
from ..certificates import (
    box_region, criteria, diagonal_region, joint_bound_diagonal, joint_bound_independent,
)
from ..constants import ACCEPTANCE_SIGMAS, BISECTION_TOLERANCE
from ..errors import DomainError, ScenarioRiskError, UnsupportedProblemError
from ..export import plain as _serialize
from ..numerics import MultiIndex, as_multi_index, check_beta
from ..utils.engine import info
from .datasets import ScenarioDatasets
from .problem import DecisionProblem
from .support import extract_support

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Mapping, Tuple

import math

import numpy as np
from statsmodels.stats.proportion import proportion_confint

__all__ = ["CertificateKind", "TrialResult", "CoverageReport", "coverage_experiment"]


class CertificateKind(str, Enum):
    BOX = "box"
    """Product of single-criterion intervals, beta_i = beta / m."""
    DIAGONAL = "diagonal"
    """Diagonal band, event t_bar <= prod(1 - V_i) <= t_underbar."""
    JOINT_DIAGONAL = "joint-diagonal"
    """V <= min(m (1 - t_bar^(1/m)), 1)."""
    JOINT_INDEPENDENT = "joint-independent"
    """V <= min(sum of single-criterion upper ends, 1)."""


@dataclass(frozen=True)
class TrialResult:
    status: str
    """"ok", "degenerate" or "failed"."""
    complexity: MultiIndex | None = None
    hit: bool = False
    risks: np.ndarray | None = None
    joint_risk: float = math.nan
    bound_gap: float = math.nan


@dataclass(frozen=True)
class CoverageReport:
    """Outcome of a coverage experiment; degenerate and failed trials are excluded from `trials`."""
    problem: Mapping
    kind: CertificateKind
    N: MultiIndex
    beta: float
    requested: int
    trials: int
    hits: int
    degenerate: int
    failed: int
    complexity_histogram: Mapping[str, int]
    mean_true_risks: Tuple[float, ...]
    mean_joint_risk: float
    mean_bound_gap: float
    seed: int
    sigmas: float = ACCEPTANCE_SIGMAS
    wilson: Tuple[float, float] = field(default=(math.nan, math.nan))
    """95% Wilson interval of the coverage."""

    @property
    def target(self) -> float:
        return 1.0 - self.beta

    @property
    def empirical_coverage(self) -> float:
        return self.hits / self.trials if self.trials else math.nan

    @property
    def sigma(self) -> float:
        """Binomial standard deviation of the coverage at the target."""
        return math.sqrt(self.target * self.beta / self.trials) if self.trials else math.nan

    @property
    def threshold(self) -> float:
        return self.target - self.sigmas * self.sigma

    @property
    def passed(self) -> bool:
        return bool(self.trials) and self.empirical_coverage >= self.threshold

    def to_dict(self) -> dict:
        return {
            "problem": _serialize(self.problem),
            "certificate": self.kind.value,
            "N": self.N.to_list(),
            "beta": _serialize(self.beta),
            "seed": self.seed,
            "requested": self.requested,
            "trials": self.trials,
            "hits": self.hits,
            "degenerate": self.degenerate,
            "failed": self.failed,
            "empirical_coverage": _serialize(self.empirical_coverage),
            "target": _serialize(self.target),
            "sigma": _serialize(self.sigma),
            "threshold": _serialize(self.threshold),
            "passed": self.passed,
            "wilson": [_serialize(w) for w in self.wilson],
            "complexity_histogram": dict(self.complexity_histogram),
            "mean_true_risks": [_serialize(r) for r in self.mean_true_risks],
            "mean_joint_risk": _serialize(self.mean_joint_risk),
            "mean_bound_gap": _serialize(self.mean_bound_gap),
        }


def _builder(kind: CertificateKind, N: MultiIndex, H: MultiIndex, beta: float,
             choice: Theorem1Choice, tolerance: float) -> Callable:
    """Cached map from complexity to (event test on the risks, joint bound)."""

    @lru_cache(maxsize=None)
    def build(k: MultiIndex):
        if kind is CertificateKind.BOX:
            per = criteria(N, k, beta)
            region = box_region(per, choice, tolerance)
            bound = joint_bound_independent(per, choice, tolerance).bound
            return (lambda risks: bool(region.contains(risks.individual))), bound
        if kind is CertificateKind.DIAGONAL:
            region = diagonal_region(N, H, k, beta, tolerance)
            bound = joint_bound_diagonal(N, k, beta, tolerance).bound
            return (lambda risks: bool(region.contains(risks.individual))), bound
        if kind is CertificateKind.JOINT_DIAGONAL:
            bound = joint_bound_diagonal(N, k, beta, tolerance).bound
        else:
            bound = joint_bound_independent(criteria(N, k, beta), choice, tolerance).bound
        return (lambda risks: risks.joint <= bound), bound

    return build


def _run_trial(problem: DecisionProblem, N: MultiIndex, sequence: np.random.SeedSequence, build: Callable) -> TrialResult:
    data_seq, oracle_seq = sequence.spawn(2)
    rng = np.random.default_rng(data_seq)
    try:
        datasets = ScenarioDatasets.draw(problem, N, rng)
        outcome = extract_support(problem, datasets, quiet=True)
    except ScenarioRiskError:
        return TrialResult(status="failed")
    if outcome.degenerate:
        return TrialResult(status="degenerate", complexity=outcome.complexity)
    risks = problem.true_risks(outcome.decision, seed=oracle_seq)
    event, bound = build(outcome.complexity)
    return TrialResult(
        status="ok", complexity=outcome.complexity, hit=event(risks),
        risks=np.asarray(risks.individual, dtype=float), joint_risk=risks.joint,
        bound_gap=bound - risks.joint,
    )


def coverage_experiment(problem: DecisionProblem, N, beta: float, trials: int,
                        certificate_kind: CertificateKind | str = CertificateKind.DIAGONAL,
                        rng_seed: int = 0, H=None,
                        choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
                        workers: int = 1, sigmas: float = ACCEPTANCE_SIGMAS,
                        tolerance: float = BISECTION_TOLERANCE) -> CoverageReport:
    """
    Repeat draw / solve / certify / check `trials` times.

    All randomness comes from one `SeedSequence(rng_seed)`, spawned once per
    trial, so the report does not depend on `workers`.

    Args:
        problem (DecisionProblem): A problem with a risk oracle.
        N (MultiIndex): Dataset sizes.
        beta (float): Confidence parameter of the certificate.
        trials (int): Number of repetitions, >= 1.
        certificate_kind (CertificateKind | str): Which certified event is checked.
        rng_seed (int): Seed of the whole experiment.
        H (MultiIndex | None): Extent of the diagonal band, N by default.
        choice (Theorem1Choice | str): Single-criterion choice of the box kinds.
        workers (int): Threads running trials concurrently.
        sigmas (float): Binomial standard deviations tolerated below 1 - beta.
        tolerance (float): Bisection bracket width.

    Returns:
        CoverageReport: Hits, exclusions, coverage and monitoring statistics.

    Raises:
        UnsupportedProblemError: If the problem has no risk oracle.
        DomainError: On invalid parameters.
    """
    if not problem.has_oracle:
        raise UnsupportedProblemError(f"{problem.name} has no risk oracle")
    trials = int(trials)
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    beta = check_beta(beta)
    kind = CertificateKind(certificate_kind)
    N = as_multi_index(N, problem.m)
    if len(N) != problem.m:
        raise DomainError(f"{problem.name} has {problem.m} criteria, N has {len(N)} entries")
    H = N if H is None else as_multi_index(H, problem.m)
    build = _builder(kind, N, H, beta, Theorem1Choice(choice), tolerance)

    sequences = np.random.SeedSequence(rng_seed).spawn(trials)
    run = lambda seq: _run_trial(problem, N, seq, build)
    if workers == 1:
        results = [run(seq) for seq in sequences]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, sequences))

    done = [r for r in results if r.status == "ok"]
    histogram = {}
    for r in done:
        key = str(r.complexity)
        histogram[key] = histogram.get(key, 0) + 1
    hits = sum(r.hit for r in done)
    if done:
        wilson = tuple(float(x) for x in proportion_confint(hits, len(done), alpha=0.05, method="wilson"))
        mean_risks = tuple(float(x) for x in np.mean([r.risks for r in done], axis=0))
        mean_joint = float(np.mean([r.joint_risk for r in done]))
        mean_gap = float(np.mean([r.bound_gap for r in done]))
    else:
        wilson = (math.nan, math.nan)
        mean_risks = (math.nan,) * problem.m
        mean_joint = mean_gap = math.nan

    report = CoverageReport(
        problem=problem.describe(), kind=kind, N=N, beta=beta, requested=trials,
        trials=len(done), hits=hits,
        degenerate=sum(r.status == "degenerate" for r in results),
        failed=sum(r.status == "failed" for r in results),
        complexity_histogram=dict(sorted(histogram.items())),
        mean_true_risks=mean_risks, mean_joint_risk=mean_joint, mean_bound_gap=mean_gap,
        seed=int(rng_seed), sigmas=sigmas, wilson=wilson,
    )
    info(f"coverage {report.empirical_coverage:.4f} over {report.trials} trials "
         f"({report.degenerate} degenerate, {report.failed} failed)")
    return report
