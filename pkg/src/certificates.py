"""
Risk certificates.

A-posteriori certificates are computed at the observed complexity k:
regions containing the vector of individual risks (`box_region`,
`diagonal_region`, `allocation_region`) and scalar bounds on the joint risk
(`joint_bound_independent`, `joint_bound_diagonal`, `joint_bound_region_max`).

A-priori certificates only need a cap K* on the total number of support
scenarios (`apriori_bound_independent`, `apriori_bound_diagonal`,
`apriori_bound_bestcase`, `uniform_in_m_bound`) and drive `size_datasets`.

Every joint bound is capped at 1; the uncapped value is kept in `raw`.
"""
from .constants import (
    BISECTION_TOLERANCE, DIMS_LIMIT, GRID_RESOLUTION,
    REGION_MAX_CANDIDATES, REGION_MAX_LEVELS, REGION_MAX_POINTS, REGION_MAX_REFINE,
)
from .errors import DomainError, DimensionError
from .numerics import MultiIndex, PsiSpec, RootPair, as_multi_index, check_beta, find_root_pair, psi_eval_many
from .allocations import (
    AllocationSpec, IntervalBound, Scheme, Theorem1Choice,
    region_function, region_grid, theorem1_interval, theorem1_upper_ends,
)
from .export import plain as _serialize
from .utils.engine import info, warning

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Iterable, Iterator, List, Mapping, Sequence, Tuple

import math

import numpy as np

__all__ = [
    "RegionKind", "BoundMethod", "SizingMode",
    "RegionCertificate", "JointRiskCertificate", "SizingRequest", "AprioriRow", "Table1Row",
    "criteria", "box_region", "diagonal_region", "allocation_region",
    "region_membership", "region_grid_rows",
    "joint_bound_independent", "joint_bound_diagonal", "joint_bound_region_max",
    "apriori_bound_independent", "apriori_bound_diagonal", "apriori_bound_bestcase",
    "apriori_bound_collective_exact", "uniform_in_m_bound", "apriori_tbar",
    "size_datasets", "sizing_threshold", "apriori_sweep", "table1_rows",
    "APRIORI_COLUMNS", "TABLE1", "TABLE1_BETA", "TABLE1_DIAGONAL_BETA",
]


class RegionKind(str, Enum):
    INDEPENDENT_BOX = "IndependentBox"
    DIAGONAL_BAND = "DiagonalBand"
    GENERAL_ALLOCATION = "GeneralAllocation"


class BoundMethod(str, Enum):
    INDEPENDENT_SUM = "IndependentSum"
    DIAGONAL_CLOSED_FORM = "DiagonalClosedForm"
    GENERAL_REGION_MAX = "GeneralRegionMax"
    APRIORI_INDEPENDENT = "AprioriIndependent"
    APRIORI_DIAGONAL = "AprioriDiagonal"
    APRIORI_BESTCASE = "AprioriBestCase"
    APRIORI_COLLECTIVE_EXACT = "AprioriCollectiveExact"
    UNIFORM_IN_M = "UniformInM"


class SizingMode(str, Enum):
    FINITE_M = "finite-m"
    UNIFORM_IN_M = "uniform-in-m"


# --- regions ---

@dataclass(frozen=True)
class RegionCertificate:
    """
    A set of individual-risk vectors containing V(z*) with probability >= confidence.

    Exactly one of `intervals` (IndependentBox), `roots` (DiagonalBand) and
    `allocation` (GeneralAllocation) is set.
    """
    kind: RegionKind
    confidence: float
    k: MultiIndex
    N: MultiIndex
    H: MultiIndex
    intervals: Tuple[IntervalBound, ...] = ()
    roots: RootPair | None = None
    allocation: AllocationSpec | None = None

    def __post_init__(self) -> None:
        payloads = (bool(self.intervals), self.roots is not None, self.allocation is not None)
        if sum(payloads) != 1:
            raise DomainError("a region certificate carries exactly one payload")

    @property
    def m(self) -> int:
        return len(self.N)

    @property
    def beta(self) -> float:
        return 1.0 - self.confidence

    def contains(self, v) -> bool | np.ndarray:
        """Membership of one point (m,) or of a batch (n, m) of points in [0,1)^m."""
        points = np.atleast_2d(np.asarray(v, dtype=float))
        if points.shape[-1] != self.m:
            raise DimensionError(f"points must have {self.m} coordinates")
        if self.kind is RegionKind.INDEPENDENT_BOX:
            inside = np.ones(points.shape[0], dtype=bool)
            for i, interval in enumerate(self.intervals):
                inside &= interval.contains(points[:, i])
        elif self.kind is RegionKind.DIAGONAL_BAND:
            inside = self.roots.contains(np.prod(1.0 - points, axis=1))
        else:
            inside = np.asarray(region_function(self.allocation, self.k, points)) >= 0
        return bool(inside[0]) if np.ndim(v) == 1 else inside

    def grid_values(self, axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        """
        Membership and defining-function values on the tensor grid spanned by `axes`.

        The defining function is psi(prod(1 - v)) for a band, the region
        function for an allocation and the smallest single-criterion band
        function for a box.

        Returns:
            Tuple[np.ndarray, np.ndarray]: (member, g_value), both of the grid shape.
        """
        if len(axes) != self.m:
            raise DimensionError(f"expected {self.m} axes, got {len(axes)}")
        axes = [np.asarray(a, dtype=float).reshape(-1) for a in axes]
        shape = tuple(a.size for a in axes)

        def along(i: int, values: np.ndarray) -> np.ndarray:
            view = [1] * self.m
            view[i] = values.size
            return values.reshape(view)

        if self.kind is RegionKind.INDEPENDENT_BOX:
            member = np.ones(shape, dtype=bool)
            g = np.full(shape, np.inf)
            for i, (a, interval) in enumerate(zip(axes, self.intervals)):
                member = member & along(i, interval.contains(a))
                g = np.minimum(g, along(i, np.asarray(interval.function()(1.0 - a))))
            return member, g
        if self.kind is RegionKind.DIAGONAL_BAND:
            t = np.ones(shape, dtype=float)
            for i, a in enumerate(axes):
                t = t * along(i, 1.0 - a)
            spec = PsiSpec(self.k, self.N, self.H, self.beta)
            return self.roots.contains(t), psi_eval_many(spec, t)
        g = region_grid(self.allocation, self.k, axes)
        return g >= 0, g

    def to_dict(self) -> dict:
        data = {
            "kind": self.kind.value,
            "confidence": _serialize(self.confidence),
            "k": self.k.to_list(),
            "N": self.N.to_list(),
            "H": self.H.to_list(),
        }
        if self.kind is RegionKind.INDEPENDENT_BOX:
            data["intervals"] = [
                {"eps_lo": _serialize(b.eps_lo), "eps_hi": _serialize(b.eps_hi), "k": b.k, "N": b.N,
                 "beta": _serialize(b.beta), "choice": b.choice.value}
                for b in self.intervals
            ]
        elif self.kind is RegionKind.DIAGONAL_BAND:
            data["t_bar"] = _serialize(self.roots.t_bar)
            data["t_underbar"] = _serialize(self.roots.t_underbar)
        else:
            data["scheme"] = self.allocation.scheme.value
            data["beta"] = _serialize(self.allocation.beta)
        return data


def criteria(N, k, beta: float | Sequence[float], split: Sequence[float] | None = None) -> List[Tuple[int, int, float]]:
    """
    Per-criterion (N_i, k_i, beta_i) triples.

    A scalar `beta` is split as beta_i = beta / m unless `split` gives the
    relative weights.
    """
    N = as_multi_index(N)
    k = as_multi_index(k, len(N))
    if len(k) != len(N):
        raise DimensionError(f"k and N lengths differ: {len(k)} vs {len(N)}")
    if isinstance(beta, (int, float)):
        weights = np.full(len(N), 1.0 / len(N)) if split is None else np.asarray(split, dtype=float) / np.sum(split)
        betas = [float(beta) * w for w in weights]
    else:
        betas = [float(b) for b in beta]
    if len(betas) != len(N):
        raise DimensionError(f"expected {len(N)} beta_i values, got {len(betas)}")
    return [(n, kk, b) for n, kk, b in zip(N, k, betas)]


def _check_criteria(per_criterion: Iterable[Tuple[int, int, float]]) -> List[Tuple[int, int, float]]:
    items = [(int(n), int(kk), check_beta(b, "beta_i")) for n, kk, b in per_criterion]
    if not items:
        raise DimensionError("at least one criterion is needed")
    total = math.fsum(b for *_, b in items)
    if total >= 1.0:
        raise DomainError(f"sum of beta_i must be < 1, got {total}")
    for n, kk, _ in items:
        if kk > n:
            raise DomainError(f"k exceeds N: {kk} > {n}")
    return items


def box_region(per_criterion: Iterable[Tuple[int, int, float]],
               choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
               tolerance: float = BISECTION_TOLERANCE) -> RegionCertificate:
    """
    Product of single-criterion intervals, with confidence 1 - sum(beta_i).

    Args:
        per_criterion (Iterable[Tuple[int, int, float]]): (N_i, k_i, beta_i) per criterion.
        choice (Theorem1Choice | str): Single-criterion weight choice.
        tolerance (float): Bisection bracket width.

    Returns:
        RegionCertificate: An IndependentBox certificate.
    """
    items = _check_criteria(per_criterion)
    choice = Theorem1Choice(choice)
    intervals = tuple(theorem1_interval(n, kk, b, choice, tolerance) for n, kk, b in items)
    N = MultiIndex(tuple(n for n, _, _ in items))
    H = N if choice is Theorem1Choice.UPPER_ONLY else MultiIndex(tuple(4 * n for n in N))
    return RegionCertificate(
        kind=RegionKind.INDEPENDENT_BOX,
        confidence=1.0 - math.fsum(b for *_, b in items),
        k=MultiIndex(tuple(kk for _, kk, _ in items)),
        N=N, H=H, intervals=intervals,
    )


def diagonal_region(N, H, k, beta: float, tolerance: float = BISECTION_TOLERANCE) -> RegionCertificate:
    """
    The band {v : t_bar <= prod(1 - v_i) <= t_underbar} of the diagonal allocation.

    Args:
        N (MultiIndex): Dataset sizes.
        H (MultiIndex): Allocation extent, H >= N (H = N controls the upper boundary only).
        k (MultiIndex): Observed complexity, k <= N.
        beta (float): Confidence parameter.
        tolerance (float): Bisection bracket width.

    Returns:
        RegionCertificate: A DiagonalBand certificate with confidence 1 - beta.
    """
    N = as_multi_index(N)
    spec = PsiSpec(k=as_multi_index(k, len(N)), N=N, H=as_multi_index(H, len(N)), beta=beta)
    roots = find_root_pair(spec, tolerance)
    return RegionCertificate(
        kind=RegionKind.DIAGONAL_BAND, confidence=1.0 - spec.beta,
        k=spec.k, N=spec.N, H=spec.H, roots=roots,
    )


def allocation_region(alloc: AllocationSpec, k) -> RegionCertificate:
    """The region {v : g_k(v) >= 0} of any allocation, as a GeneralAllocation certificate."""
    k = as_multi_index(k, alloc.m)
    if not k.leq(alloc.N):
        raise DomainError(f"k exceeds N: {k} vs {alloc.N}")
    return RegionCertificate(
        kind=RegionKind.GENERAL_ALLOCATION, confidence=1.0 - alloc.beta,
        k=k, N=alloc.N, H=alloc.H, allocation=alloc,
    )


def region_membership(cert: RegionCertificate, v) -> bool | np.ndarray:
    return cert.contains(v)


def region_grid_rows(cert: RegionCertificate, resolution: int = GRID_RESOLUTION,
                     dims_limit: int = DIMS_LIMIT) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Sample a certificate on the grid {0, 1/r, ..., (r-1)/r}^m.

    Returns:
        Tuple[np.ndarray, np.ndarray, np.ndarray]: points (n, m), member (n,), g_value (n,),
        with the first coordinate varying slowest.
    """
    if cert.m > dims_limit:
        raise DimensionError(f"grid export supports m <= {dims_limit}, got m = {cert.m}")
    if resolution < 1:
        raise DomainError(f"resolution must be positive, got {resolution}")
    axis = np.arange(resolution, dtype=float) / resolution
    member, g = cert.grid_values([axis] * cert.m)
    points = np.stack(np.meshgrid(*([axis] * cert.m), indexing="ij"), axis=-1).reshape(-1, cert.m)
    return points, member.reshape(-1), g.reshape(-1)


# --- joint bounds ---

@dataclass(frozen=True)
class JointRiskCertificate:
    """V(z*) <= bound with probability >= confidence."""
    bound: float
    confidence: float
    method: BoundMethod
    inputs: Mapping[str, Any] = field(default_factory=dict, hash=False)
    raw: float | None = None
    """The value before capping at 1 (equals `bound` when below 1)."""

    def __post_init__(self) -> None:
        if not 0.0 <= self.bound <= 1.0:
            raise DomainError(f"joint bound must lie in [0,1], got {self.bound}")
        object.__setattr__(self, "inputs", MappingProxyType(dict(self.inputs)))
        if self.raw is None:
            object.__setattr__(self, "raw", self.bound)

    def to_dict(self) -> dict:
        return {
            "bound": _serialize(self.bound),
            "raw": _serialize(self.raw),
            "confidence": _serialize(self.confidence),
            "method": self.method.value,
            "inputs": _serialize(self.inputs),
        }


def _capped(raw: float) -> float:
    return float(min(max(raw, 0.0), 1.0))


def _diagonal_closed_form(t_bar: float, m: int) -> float:
    # m (1 - t^(1/m)), accurate for large m
    if t_bar <= 0.0:
        return float(m)
    return float(-m * math.expm1(math.log(t_bar) / m))


def joint_bound_independent(per_criterion: Iterable[Tuple[int, int, float]],
                            choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
                            tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    Sum of the single-criterion upper ends, capped at 1.

    Args:
        per_criterion (Iterable[Tuple[int, int, float]]): (N_i, k_i, beta_i) per criterion.
        choice (Theorem1Choice | str): Single-criterion weight choice.
        tolerance (float): Bisection bracket width.

    Returns:
        JointRiskCertificate: method IndependentSum, confidence 1 - sum(beta_i).
    """
    items = _check_criteria(per_criterion)
    choice = Theorem1Choice(choice)
    raw = math.fsum(_upper_end(n, kk, b, choice, tolerance) for n, kk, b in items)
    return JointRiskCertificate(
        bound=_capped(raw), raw=raw,
        confidence=1.0 - math.fsum(b for *_, b in items),
        method=BoundMethod.INDEPENDENT_SUM,
        inputs={
            "N": MultiIndex(tuple(n for n, _, _ in items)),
            "k": MultiIndex(tuple(kk for _, kk, _ in items)),
            "beta_i": [b for *_, b in items],
            "choice": choice,
        },
    )


def joint_bound_diagonal(N, k, beta: float, tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    Closed-form maximum of |v| over the diagonal band with H = N: min(m (1 - t_bar^(1/m)), 1).

    Args:
        N (MultiIndex): Dataset sizes.
        k (MultiIndex): Observed complexity, k <= N.
        beta (float): Confidence parameter.
        tolerance (float): Bisection bracket width.

    Returns:
        JointRiskCertificate: method DiagonalClosedForm.
    """
    N = as_multi_index(N)
    k = as_multi_index(k, len(N))
    spec = PsiSpec(k=k, N=N, H=N, beta=beta)
    t_bar = find_root_pair(spec, tolerance).t_bar
    raw = _diagonal_closed_form(t_bar, len(N))
    return JointRiskCertificate(
        bound=_capped(raw), raw=raw, confidence=1.0 - spec.beta,
        method=BoundMethod.DIAGONAL_CLOSED_FORM,
        inputs={"N": N, "k": k, "beta": spec.beta, "t_bar": t_bar},
    )


def joint_bound_region_max(cert: RegionCertificate, dims_limit: int = DIMS_LIMIT,
                           points: int = REGION_MAX_POINTS, levels: int = REGION_MAX_LEVELS,
                           refine: int = REGION_MAX_REFINE,
                           candidates: int = REGION_MAX_CANDIDATES) -> JointRiskCertificate:
    """
    Numerical maximum of |v| over a certified region.

    A coarse grid over [0,1)^m is refined `levels` times around the best
    members; the best value found is inflated by m times the final grid
    spacing so the result does not under-report the true maximum.

    Args:
        cert (RegionCertificate): Usually a GeneralAllocation certificate.
        dims_limit (int): Largest accepted m.
        points (int): Total points of the coarse grid.
        levels (int): Refinement rounds.
        refine (int): Subdivisions of a cell per round.
        candidates (int): Members kept as seeds per round.

    Returns:
        JointRiskCertificate: method GeneralRegionMax.

    Raises:
        DimensionError: If m > dims_limit.
    """
    m = cert.m
    if m > dims_limit:
        raise DimensionError(f"region maximum search supports m <= {dims_limit}, got m = {m}")

    resolution = max(2, int(round(points ** (1.0 / m))))
    spacing = 1.0 / resolution
    axis = np.arange(resolution, dtype=float) * spacing
    member, _ = cert.grid_values([axis] * m)
    idx = np.argwhere(member)
    inputs = {"N": cert.N, "k": cert.k, "H": cert.H, "region": cert.kind}
    if cert.allocation is not None:
        inputs["scheme"] = cert.allocation.scheme
    if idx.size == 0:
        warning(f"no grid point of the {cert.kind.value} region found at resolution {resolution}, reporting 1")
        return JointRiskCertificate(bound=1.0, confidence=cert.confidence,
                                    method=BoundMethod.GENERAL_REGION_MAX, inputs=inputs)

    seeds = idx * spacing
    seeds = seeds[np.argsort(-seeds.sum(axis=1), kind="stable")[:candidates]]
    best = float(seeds[0].sum())

    offsets = np.arange(-refine, refine + 1, dtype=float)
    for _ in range(levels):
        spacing /= refine
        found = [seeds]
        for seed in seeds:
            local_axes = []
            for c in seed:
                a = c + offsets * spacing
                local_axes.append(a[(a >= 0.0) & (a < 1.0)])
            local_member, _ = cert.grid_values(local_axes)
            local_idx = np.argwhere(local_member)
            if local_idx.size:
                found.append(np.stack([local_axes[i][local_idx[:, i]] for i in range(m)], axis=1))
        pool = np.concatenate(found, axis=0)
        seeds = pool[np.argsort(-pool.sum(axis=1), kind="stable")[:candidates]]
        best = max(best, float(seeds[0].sum()))

    raw = best + m * spacing
    info(f"region maximum {best:.6g} (+{m * spacing:.2g} grid inflation)")
    inputs.update({"grid_max": best, "inflation": m * spacing})
    return JointRiskCertificate(bound=_capped(raw), raw=raw, confidence=cert.confidence,
                                method=BoundMethod.GENERAL_REGION_MAX, inputs=inputs)


# --- a-priori bounds ---

@lru_cache(maxsize=4096)
def _upper_end(n: int, k: int, beta: float, choice: Theorem1Choice, tolerance: float) -> float:
    return theorem1_interval(n, k, beta, choice, tolerance).eps_hi


@lru_cache(maxsize=1024)
def _upper_end_table(n: int, beta: float, k_max: int, choice: Theorem1Choice, tolerance: float) -> Tuple[float, ...]:
    return tuple(float(e) for e in theorem1_upper_ends(n, k_max, beta, choice, tolerance))


class _Leaf:
    """One criterion: best upper end using at most s support scenarios, s = 0..K*."""

    def __init__(self, table: np.ndarray, K_star: int) -> None:
        self.table = table
        padded = np.full(K_star + 1, table[-1])
        padded[:table.size] = table
        self.values = np.maximum.accumulate(padded)

    def spread(self, budget: int) -> List[int]:
        return [int(np.argmax(self.table[:min(budget, self.table.size - 1) + 1]))]


class _Join:
    """Max-plus convolution of two budget curves, remembering the best split of each budget."""

    def __init__(self, left, right, K_star: int) -> None:
        self.left, self.right = left, right
        s = np.arange(K_star + 1)
        x = s[None, :]
        scores = np.where(x <= s[:, None], left.values[x] + right.values[np.clip(s[:, None] - x, 0, None)], -np.inf)
        self.split = np.argmax(scores, axis=1)
        self.values = scores[s, self.split]

    def spread(self, budget: int) -> List[int]:
        x = int(self.split[budget])
        return self.left.spread(x) + self.right.spread(budget - x)


def _max_plus_power(leaf: _Leaf, count: int, K_star: int):
    """`count` identical criteria combined by repeated squaring."""
    result, base = None, leaf
    while True:
        if count & 1:
            result = base if result is None else _Join(result, base, K_star)
        count >>= 1
        if not count:
            return result
        base = _Join(base, base, K_star)


@lru_cache(maxsize=4096)
def apriori_tbar(N_lower: int, K_star: int, beta: float, tolerance: float = BISECTION_TOLERANCE) -> float:
    """Zero of the scalar psi_{K*, N, N} in (0, 1), or 0 when K* >= N."""
    if N_lower < 1 or K_star < 0:
        raise DomainError(f"need N >= 1 and K* >= 0, got N={N_lower}, K*={K_star}")
    if K_star >= N_lower:
        return 0.0
    spec = PsiSpec(MultiIndex((K_star,)), MultiIndex((N_lower,)), MultiIndex((N_lower,)), beta)
    return find_root_pair(spec, tolerance).t_bar


def apriori_bound_independent(N, beta: float | Sequence[float], K_star: int,
                              choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
                              tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    Worst sum of single-criterion upper ends over all k with |k| <= K*.

    Solved exactly by max-plus convolution of the per-criterion curves over
    the budget of support scenarios. Criteria sharing (N_i, beta_i) are
    combined by repeated squaring, so m identical criteria cost O(log m)
    convolutions. No criterion is ever given more than N_i support scenarios.

    Args:
        N (MultiIndex): Dataset sizes.
        beta (float | Sequence[float]): Total beta (split as beta / m) or the beta_i.
        K_star (int): Cap on |k|.
        choice (Theorem1Choice | str): Single-criterion weight choice.
        tolerance (float): Bisection bracket width.

    Returns:
        JointRiskCertificate: method AprioriIndependent, with the maximizing k in `inputs["worst_k"]`.
    """
    N = as_multi_index(N)
    K_star = int(K_star)
    if K_star < 0:
        raise DomainError(f"K* must be >= 0, got {K_star}")
    choice = Theorem1Choice(choice)
    items = _check_criteria(criteria(N, MultiIndex.full(len(N), 0), beta))

    groups = {}
    for position, (n, _, b) in enumerate(items):
        groups.setdefault((n, b), []).append(position)

    root = None
    for (n, b), positions in groups.items():
        leaf = _Leaf(np.asarray(_upper_end_table(n, b, K_star, choice, tolerance)), K_star)
        node = _max_plus_power(leaf, len(positions), K_star)
        root = node if root is None else _Join(root, node, K_star)

    worst = [0] * len(items)
    spread = iter(root.spread(K_star))
    for positions in groups.values():
        for position in positions:
            worst[position] = next(spread)
    worst_k = MultiIndex(tuple(worst))

    raw = float(root.values[K_star])
    return JointRiskCertificate(
        bound=_capped(raw), raw=raw,
        confidence=1.0 - math.fsum(b for *_, b in items),
        method=BoundMethod.APRIORI_INDEPENDENT,
        inputs={"N": N, "K_star": K_star, "beta_i": [b for *_, b in items], "choice": choice, "worst_k": worst_k},
    )


def apriori_bound_diagonal(N, beta: float, K_star: int, tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    min(m (1 - t^(1/m)), 1) with t the zero of psi_{K*, min(N), min(N)}.

    Args:
        N (MultiIndex): Dataset sizes; only min(N) matters.
        beta (float): Confidence parameter.
        K_star (int): Cap on |k|; K* >= min(N) gives the bound 1.
        tolerance (float): Bisection bracket width.

    Returns:
        JointRiskCertificate: method AprioriDiagonal.
    """
    N = as_multi_index(N)
    beta = check_beta(beta)
    t = apriori_tbar(N.min(), int(K_star), beta, tolerance)
    raw = _diagonal_closed_form(t, len(N))
    return JointRiskCertificate(
        bound=_capped(raw), raw=raw, confidence=1.0 - beta,
        method=BoundMethod.APRIORI_DIAGONAL,
        inputs={"N": N, "N_lower": N.min(), "K_star": int(K_star), "beta": beta, "t_bar": t},
    )


def _compositions(total: int, bounds: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """All k with |k| = total and 0 <= k_i <= bounds_i."""
    if len(bounds) == 1:
        if total <= bounds[0]:
            yield (total,)
        return
    rest = sum(bounds[1:])
    for first in range(max(0, total - rest), min(total, bounds[0]) + 1):
        for tail in _compositions(total - first, bounds[1:]):
            yield (first,) + tail


def apriori_bound_bestcase(N, beta: float, K_star: int, dims_limit: int = DIMS_LIMIT,
                           tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    Smallest closed-form joint bound over all k with |k| = K*.

    For homogeneous N the balanced k (entries floor/ceil of K*/m) is the
    minimizer; otherwise every k is enumerated, which is restricted to
    m <= dims_limit.

    Raises:
        DomainError: If K* > |N|.
        DimensionError: For non-homogeneous N with m > dims_limit.
    """
    N = as_multi_index(N)
    K_star = int(K_star)
    if not 0 <= K_star <= N.total():
        raise DomainError(f"K* must be in [0, |N|] = [0, {N.total()}], got {K_star}")

    if N.is_homogeneous():
        k = MultiIndex.balanced(K_star, len(N))
        best = joint_bound_diagonal(N, k, beta, tolerance)
    else:
        if len(N) > dims_limit:
            raise DimensionError(f"best-case search for non-homogeneous N supports m <= {dims_limit}, got m = {len(N)}")
        best = min(
            (joint_bound_diagonal(N, MultiIndex(k), beta, tolerance) for k in _compositions(K_star, N.entries)),
            key=lambda c: c.raw,
        )
        k = best.inputs["k"]
    return JointRiskCertificate(
        bound=best.bound, raw=best.raw, confidence=best.confidence,
        method=BoundMethod.APRIORI_BESTCASE,
        inputs={"N": N, "K_star": K_star, "beta": best.inputs["beta"], "best_k": k},
    )


def apriori_bound_collective_exact(N, beta: float, K_star: int, dims_limit: int = DIMS_LIMIT,
                                   tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    Largest closed-form joint bound over all k <= N with |k| <= K*, by enumeration.

    Measures how much `apriori_bound_diagonal` loses by replacing N with
    min(N) for non-homogeneous datasets; it never exceeds that bound.
    """
    N = as_multi_index(N)
    K_star = int(K_star)
    if K_star < 0:
        raise DomainError(f"K* must be >= 0, got {K_star}")
    if len(N) > dims_limit:
        raise DimensionError(f"exact a-priori search supports m <= {dims_limit}, got m = {len(N)}")
    worst = None
    for total in range(min(K_star, N.total()) + 1):
        for k in _compositions(total, N.entries):
            cert = joint_bound_diagonal(N, MultiIndex(k), beta, tolerance)
            if worst is None or cert.raw > worst.raw:
                worst = cert
    return JointRiskCertificate(
        bound=worst.bound, raw=worst.raw, confidence=worst.confidence,
        method=BoundMethod.APRIORI_COLLECTIVE_EXACT,
        inputs={"N": N, "K_star": K_star, "beta": worst.inputs["beta"], "worst_k": worst.inputs["k"]},
    )


def uniform_in_m_bound(N_lower: int, beta: float, K_star: int,
                       tolerance: float = BISECTION_TOLERANCE) -> JointRiskCertificate:
    """
    min(log(1/t), 1), valid for every number of criteria; 1 when t = 0.

    Args:
        N_lower (int): Smallest dataset size.
        beta (float): Confidence parameter.
        K_star (int): Cap on |k|.
        tolerance (float): Bisection bracket width.

    Returns:
        JointRiskCertificate: method UniformInM.
    """
    beta = check_beta(beta)
    t = apriori_tbar(int(N_lower), int(K_star), beta, tolerance)
    raw = -math.log(t) if t > 0.0 else math.inf
    return JointRiskCertificate(
        bound=_capped(raw), raw=raw, confidence=1.0 - beta,
        method=BoundMethod.UNIFORM_IN_M,
        inputs={"N_lower": int(N_lower), "K_star": int(K_star), "beta": beta, "t_bar": t},
    )


# --- sizing ---

@dataclass(frozen=True)
class SizingRequest:
    """Find the smallest common dataset size guaranteeing a joint-risk level."""
    m: int | None
    K_star: int
    beta: float
    eps_target: float
    mode: SizingMode = SizingMode.FINITE_M

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", SizingMode(self.mode))
        object.__setattr__(self, "beta", check_beta(self.beta))
        if not 0.0 < self.eps_target < 1.0:
            raise DomainError(f"eps must be in (0,1), got {self.eps_target}")
        if self.K_star < 0:
            raise DomainError(f"K* must be >= 0, got {self.K_star}")
        if self.mode is SizingMode.FINITE_M and (self.m is None or self.m < 1):
            raise DomainError(f"finite-m sizing needs m >= 1, got {self.m}")


def sizing_threshold(req: SizingRequest) -> float:
    """The level t must reach: (1 - eps/m)^m, or exp(-eps) uniformly in m."""
    if req.mode is SizingMode.UNIFORM_IN_M:
        return math.exp(-req.eps_target)
    return (1.0 - req.eps_target / req.m) ** req.m


def size_datasets(req: SizingRequest, tolerance: float = BISECTION_TOLERANCE) -> int:
    """
    Smallest N > K* whose a-priori zero reaches the sizing threshold.

    Doubles N until the threshold holds, then bisects on the integers.

    Args:
        req (SizingRequest): The target.
        tolerance (float): Bisection bracket width of the root searches.

    Returns:
        int: The minimal common dataset size.
    """
    threshold = sizing_threshold(req)
    passes = lambda n: apriori_tbar(n, req.K_star, req.beta, tolerance) >= threshold

    low = req.K_star
    high = req.K_star + 1
    while not passes(high):
        low, high = high, 2 * high
    # low fails (or is K*), high passes
    while high - low > 1:
        mid = (low + high) // 2
        if passes(mid):
            high = mid
        else:
            low = mid
    info(f"sized datasets: N = {high} (t = {apriori_tbar(high, req.K_star, req.beta, tolerance):.6g} >= {threshold:.6g})")
    return high


# --- reproduction tables ---

@dataclass(frozen=True)
class AprioriRow:
    m: int
    independent: JointRiskCertificate
    diagonal: JointRiskCertificate
    bestcase: JointRiskCertificate
    uniform: JointRiskCertificate

    def values(self) -> Tuple[float, ...]:
        return (self.independent.raw, self.independent.bound, self.diagonal.bound,
                self.bestcase.bound, self.uniform.bound)


APRIORI_COLUMNS = ("m", "independent_raw", "independent", "diagonal", "bestcase", "uniform")


def apriori_sweep(N_lower: int, beta: float, K_star: int, m_values: Iterable[int],
                  choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
                  tolerance: float = BISECTION_TOLERANCE) -> List[AprioriRow]:
    """
    The four a-priori bounds for homogeneous datasets N_lower * 1, one row per m.

    The independent bound splits beta as beta / m.
    """
    rows = []
    uniform = uniform_in_m_bound(N_lower, beta, K_star, tolerance)
    for m in m_values:
        m = int(m)
        if m < 1:
            raise DomainError(f"m must be >= 1, got {m}")
        N = MultiIndex.full(m, int(N_lower))
        rows.append(AprioriRow(
            m=m,
            independent=apriori_bound_independent(N, beta, K_star, choice, tolerance),
            diagonal=apriori_bound_diagonal(N, beta, K_star, tolerance),
            bestcase=apriori_bound_bestcase(N, beta, min(int(K_star), N.total()), tolerance=tolerance),
            uniform=uniform,
        ))
        info(f"a-priori bounds computed for m = {m}")
    return rows


TABLE1: Tuple[Tuple[int, int, int], ...] = (
    (10, 1500, 4),
    (40, 1500, 1),
    (25, 1500, 2),
    (25, 2000, 2),
    (60, 1500, 1),
    (100, 3000, 1),
)
"""(m, N, k) of the homogeneous comparison rows: N = N * 1 and k = k * 1."""

TABLE1_BETA = 1e-7
"""Confidence parameter of the independent column (split as beta / m)."""
TABLE1_DIAGONAL_BETA = 1e-5
"""Confidence parameter at which the diagonal column is evaluated."""


@dataclass(frozen=True)
class Table1Row:
    """
    One row of the homogeneous comparison, under the column names the `table1` command prints.

    `independent_raw` / `independent` hold the independent sum (uncapped / capped) and
    `diagonal` the diagonal closed form.
    """
    m: int
    N: int
    k: int
    independent_raw: float
    independent: float
    diagonal: float

    @property
    def k_total(self) -> int:
        return self.m * self.k


def table1_rows(beta: float = TABLE1_BETA, rows: Iterable[Tuple[int, int, int]] = TABLE1,
                tolerance: float = BISECTION_TOLERANCE,
                diagonal_beta: float = TABLE1_DIAGONAL_BETA) -> List[Table1Row]:
    """
    Independent sum against the diagonal closed form on homogeneous data.

    Args:
        beta (float): Confidence parameter of the independent sum, split as beta / m.
        rows (Iterable[Tuple[int, int, int]]): (m, N, k) triples meaning N * 1 and k * 1.
        tolerance (float): Bisection bracket width.
        diagonal_beta (float): Confidence parameter of the diagonal closed form.

    Returns:
        List[Table1Row]: One row per triple; the independent sum is kept uncapped in `independent_raw`.
    """
    out = []
    for m, n, k in rows:
        N = MultiIndex.full(m, n)
        kk = MultiIndex.full(m, k)
        independent = joint_bound_independent(criteria(N, kk, beta), Theorem1Choice.UPPER_ONLY, tolerance)
        diagonal = joint_bound_diagonal(N, kk, diagonal_beta, tolerance)
        out.append(Table1Row(m=m, N=n, k=k, independent_raw=independent.raw, independent=independent.bound,
                             diagonal=diagonal.bound))
    return out
