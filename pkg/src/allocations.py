"""
Dual-weight allocations and the sets they certify.

An allocation assigns a weight lambda_h to every multi-index 0 <= h <= H with
lambda_N <= 1, lambda_h <= 0 elsewhere and total 1 - beta. Each feasible
allocation turns into a region of individual-risk vectors through
`region_function`; the single-criterion intervals used by the box certificates
come from `theorem1_interval`.

The named schemes are never materialized: the uniform scheme alone would need
prod(H_i + 1) entries.
"""
from .constants import BISECTION_TOLERANCE, EVAL_CELLS, SUM_TOLERANCE
from .errors import DomainError, DimensionError
from .numerics import (
    MultiIndex, PsiSpec, as_multi_index, bisect_sign_change, bisect_sign_change_many, check_beta,
    find_root_pair, psi_eval_many, _minus_table, _plus_table,
)

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Mapping, Sequence, Tuple

import math

import numpy as np
from scipy.special import logsumexp

__all__ = [
    "Scheme", "Theorem1Choice", "AllocationSpec", "FeasibilityReport", "IntervalBound", "BandFunction",
    "lambda_at", "check_feasibility", "region_function", "region_grid",
    "scalar_band_function", "theorem1_interval", "theorem1_upper_ends",
]


class Scheme(str, Enum):
    """Sparsity pattern of an allocation."""
    UNIFORM = "uniform"
    AXIAL = "axial"
    DIAGONAL = "diagonal"
    CUSTOM = "custom"


class Theorem1Choice(str, Enum):
    """The two single-criterion weight choices."""
    UPPER_ONLY = "upper-only"
    """H = N and lambda_h = -beta/N below N: only the upper end of the interval is informative."""
    THREE_BAND = "three-band"
    """H = 4N, -beta/(2N) below N and -beta/(6N) above: a two-sided interval."""


@dataclass(frozen=True)
class AllocationSpec:
    """
    A feasible (or to-be-checked) allocation of the dual weights.

    Use the `uniform`, `axial`, `diagonal` and `custom` constructors.
    """
    scheme: Scheme
    N: MultiIndex
    H: MultiIndex
    beta: float
    custom_entries: Mapping[MultiIndex, float] | None = field(default=None, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if len(self.N) != len(self.H):
            raise DimensionError(f"N and H lengths differ: {len(self.N)} vs {len(self.H)}")
        if self.N.min() < 1:
            raise DomainError(f"N entries must be positive: {self.N}")
        if not self.N.leq(self.H):
            raise DomainError(f"N exceeds H: {self.N} vs {self.H}")
        object.__setattr__(self, "beta", check_beta(self.beta))

        if self.scheme is Scheme.CUSTOM:
            entries = {}
            for h, value in dict(self.custom_entries or {}).items():
                h = as_multi_index(h)
                if len(h) != len(self.N):
                    raise DimensionError(f"custom entry {h} has length {len(h)}, expected {len(self.N)}")
                if not h.leq(self.H):
                    raise DomainError(f"custom entry {h} exceeds H = {self.H}")
                entries[h] = float(value)
            object.__setattr__(self, "custom_entries", MappingProxyType(entries))
        elif self.custom_entries:
            raise DomainError(f"custom entries given for the {self.scheme.value} scheme")

    # --- constructors ---
    @classmethod
    def uniform(cls, N, H, beta: float) -> "AllocationSpec":
        N = as_multi_index(N)
        return cls(Scheme.UNIFORM, N, as_multi_index(H, len(N)), beta)

    @classmethod
    def axial(cls, N, H, beta: float) -> "AllocationSpec":
        N = as_multi_index(N)
        return cls(Scheme.AXIAL, N, as_multi_index(H, len(N)), beta)

    @classmethod
    def diagonal(cls, N, H, beta: float) -> "AllocationSpec":
        N = as_multi_index(N)
        return cls(Scheme.DIAGONAL, N, as_multi_index(H, len(N)), beta)

    @classmethod
    def custom(cls, N, H, beta: float, entries: Mapping) -> "AllocationSpec":
        N = as_multi_index(N)
        return cls(Scheme.CUSTOM, N, as_multi_index(H, len(N)), beta, entries)

    @classmethod
    def from_name(cls, scheme: str, N, H, beta: float) -> "AllocationSpec":
        """Build one of the named schemes from its string tag."""
        scheme = Scheme(scheme)
        if scheme is Scheme.CUSTOM:
            raise DomainError("custom allocations need explicit entries")
        N = as_multi_index(N)
        return cls(scheme, N, as_multi_index(H, len(N)), beta)

    @property
    def m(self) -> int:
        return len(self.N)

    # --- scheme constants ---
    @cached_property
    def support_size(self) -> int:
        """Number of multi-indices h != N carrying a non-zero weight under a named scheme."""
        if self.scheme is Scheme.UNIFORM:
            return math.prod(h + 1 for h in self.H) - 1
        if self.scheme is Scheme.AXIAL:
            return self.H.total()
        if self.scheme is Scheme.DIAGONAL:
            return self.N.min() + min(h - n for h, n in zip(self.H, self.N))
        return sum(1 for h, v in self.custom_entries.items() if h != self.N and v != 0.0)

    @cached_property
    def log_off_weight(self) -> float:
        """log(beta / support_size) for the named schemes (the count may exceed float range)."""
        return math.log(self.beta) - math.log(self.support_size)

    @cached_property
    def off_weight(self) -> float:
        """The common off-N weight lambda of a named scheme (<= 0)."""
        return -math.exp(self.log_off_weight)


def lambda_at(alloc: AllocationSpec, h) -> float:
    """
    The weight lambda_h of an allocation.

    Args:
        alloc (AllocationSpec): The allocation.
        h (MultiIndex): A multi-index with 0 <= h <= H.

    Returns:
        float: lambda_h.

    Raises:
        DimensionError: If h has the wrong length.
        DomainError: If h exceeds H.
    """
    h = as_multi_index(h, alloc.m)
    if len(h) != alloc.m:
        raise DimensionError(f"h has length {len(h)}, expected {alloc.m}")
    if not h.leq(alloc.H):
        raise DomainError(f"h exceeds H: {h} vs {alloc.H}")

    if alloc.scheme is Scheme.CUSTOM:
        return alloc.custom_entries.get(h, 0.0)
    if h == alloc.N:
        return 1.0
    if alloc.scheme is Scheme.UNIFORM:
        return alloc.off_weight
    if alloc.scheme is Scheme.AXIAL:
        differing = sum(1 for a, b in zip(h, alloc.N) if a != b)
        return alloc.off_weight if differing == 1 else 0.0
    # diagonal: h = N + j * 1 for some j != 0
    shifts = {a - b for a, b in zip(h, alloc.N)}
    return alloc.off_weight if len(shifts) == 1 else 0.0


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of `check_feasibility`."""
    total: float
    """Sum of all weights."""
    target: float
    """1 - beta."""
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def deviation(self) -> float:
        return self.total - self.target


def check_feasibility(alloc: AllocationSpec) -> FeasibilityReport:
    """
    Check the sign constraints and the total of an allocation.

    The named schemes split exactly -beta over their support, so their total
    is 1 - beta by construction. Custom allocations are summed entry by entry.
    Never raises: problems are listed in the report.
    """
    target = 1.0 - alloc.beta
    if alloc.scheme is not Scheme.CUSTOM:
        violations = []
        if alloc.support_size < 1:
            violations.append("scheme has no off-N support, the weights cannot sum to 1 - beta")
        return FeasibilityReport(total=target, target=target, violations=tuple(violations))

    violations = []
    lam_N = alloc.custom_entries.get(alloc.N, 0.0)
    if lam_N > 1.0:
        violations.append(f"lambda_N = {lam_N:.6g} exceeds 1 by {lam_N - 1.0:.3g}")
    for h, value in sorted(alloc.custom_entries.items(), key=lambda item: item[0].entries):
        if h != alloc.N and value > 0.0:
            violations.append(f"lambda_{{{h}}} = {value:.6g} is positive")
    total = math.fsum(alloc.custom_entries.values())
    if abs(total - target) > SUM_TOLERANCE * max(1.0, abs(target)):
        violations.append(f"weights sum to {total:.15g}, off 1 - beta by {total - target:.3g}")
    return FeasibilityReport(total=total, target=target, violations=tuple(violations))


# --- one-dimensional building blocks ---

@lru_cache(maxsize=1024)
def _axis_log_ratios(n: int, k: int, h_max: int) -> np.ndarray:
    """log C(h, k) / C(n, k) for h = k..h_max."""
    one_n, one_k = MultiIndex((n,)), MultiIndex((k,))
    below = _minus_table(one_n, one_k, n - k)[::-1]
    above = _plus_table(one_n, one_k, h_max - n)
    ratios = np.concatenate([below, [0.0], above])
    ratios.setflags(write=False)
    return ratios


def _axis_log_sum(n: int, k: int, h_max: int, t: np.ndarray) -> np.ndarray:
    """log of S(t) = sum_{h=k}^{h_max} C(h,k)/C(n,k) t^(h-n), for a 1-D array of t."""
    if k < n and np.any(t == 0):
        raise DomainError("v_i = 1 is a pole of the region function when k_i < N_i")
    ratios = _axis_log_ratios(n, k, h_max)
    powers = np.arange(k - n, h_max - n + 1, dtype=float)
    out = np.empty(t.shape, dtype=float)
    step = max(1, EVAL_CELLS // ratios.size)
    with np.errstate(divide="ignore"):
        for start in range(0, t.size, step):
            log_t = np.log(t[start:start + step])
            # 0 * log(0) is taken as 0
            shifted = np.where(powers[None, :] == 0, 0.0, powers[None, :] * log_t[:, None])
            out[start:start + step] = logsumexp(ratios[None, :] + shifted, axis=1)
    return out


def _check_k(alloc: AllocationSpec, k) -> MultiIndex:
    k = as_multi_index(k, alloc.m)
    if len(k) != alloc.m:
        raise DimensionError(f"k has length {len(k)}, expected {alloc.m}")
    if not k.leq(alloc.N):
        raise DomainError(f"k exceeds N: {k} vs {alloc.N}")
    return k


def _uniform_from_logs(alloc: AllocationSpec, log_product: np.ndarray) -> np.ndarray:
    # g = 1 - beta / count * (prod S_i - 1), with prod S_i >= 1
    with np.errstate(divide="ignore", over="ignore"):
        log_excess = log_product + np.log(-np.expm1(-log_product))
        return 1.0 - np.exp(alloc.log_off_weight + log_excess)


def _diagonal_spec(alloc: AllocationSpec, k: MultiIndex) -> PsiSpec:
    return PsiSpec(k=k, N=alloc.N, H=alloc.H, beta=alloc.beta)


def _custom_values(alloc: AllocationSpec, k: MultiIndex, t: np.ndarray) -> np.ndarray:
    total = np.zeros(t.shape[0], dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        log_t = np.log(t)
        for h, lam in alloc.custom_entries.items():
            if lam == 0.0 or not k.leq(h):
                continue
            log_term = np.zeros(t.shape[0], dtype=float)
            for i, (hi, ni, ki) in enumerate(zip(h, alloc.N, k)):
                if hi < ni and np.any(t[:, i] == 0):
                    raise DomainError(f"v_{i + 1} = 1 is a pole of the term h = {h}")
                ratio = _axis_log_ratios(ni, ki, max(hi, ni))[hi - ki]
                power = hi - ni
                log_term += ratio + (power * log_t[:, i] if power else 0.0)
            total += lam * np.exp(log_term)
    return total


def region_function(alloc: AllocationSpec, k, v) -> float | np.ndarray:
    """
    Evaluate g_k(v) = sum_{h=k}^{H} lambda_h C(h,k)/C(N,k) (1-v)^(h-N).

    The region R(k) is {v : g_k(v) >= 0}. Under the diagonal scheme
    g_k(v) = psi_{k,N,H}(prod_i (1 - v_i)).

    Args:
        alloc (AllocationSpec): The allocation.
        k (MultiIndex): Complexity, k <= N.
        v (array_like): One point of shape (m,) or a batch of shape (n, m), in [0,1]^m.

    Returns:
        float | np.ndarray: g_k(v), a float for a single point.

    Raises:
        DomainError: On k > N, v outside [0,1]^m, or a pole (v_i = 1 with negative powers).
        DimensionError: If the points do not have m coordinates.
    """
    k = _check_k(alloc, k)
    v = np.asarray(v, dtype=float)
    single = v.ndim == 1
    points = np.atleast_2d(v)
    if points.ndim != 2 or points.shape[1] != alloc.m:
        raise DimensionError(f"points must have {alloc.m} coordinates, got shape {v.shape}")
    if np.any(points < 0) or np.any(points > 1) or np.any(np.isnan(points)):
        raise DomainError("v must lie in [0,1]^m")
    t = 1.0 - points

    if alloc.scheme is Scheme.DIAGONAL:
        values = psi_eval_many(_diagonal_spec(alloc, k), np.prod(t, axis=1))
    elif alloc.scheme is Scheme.CUSTOM:
        values = _custom_values(alloc, k, t)
    else:
        logs = [_axis_log_sum(n, kk, h, t[:, i]) for i, (n, kk, h) in enumerate(zip(alloc.N, k, alloc.H))]
        if alloc.scheme is Scheme.UNIFORM:
            values = _uniform_from_logs(alloc, np.sum(logs, axis=0))
        else:
            with np.errstate(over="ignore"):
                values = 1.0 - math.exp(alloc.log_off_weight) * np.sum(np.expm1(logs), axis=0)
    return float(values[0]) if single else values


def region_grid(alloc: AllocationSpec, k, axes: Sequence[np.ndarray]) -> np.ndarray:
    """
    Evaluate the region function on the tensor grid spanned by `axes`.

    The uniform and axial schemes factor over the coordinates, so only one
    one-dimensional sum per axis point is computed.

    Args:
        alloc (AllocationSpec): The allocation.
        k (MultiIndex): Complexity, k <= N.
        axes (Sequence[np.ndarray]): m one-dimensional arrays of v-coordinates.

    Returns:
        np.ndarray: Array of shape (len(axes[0]), ..., len(axes[m-1])), "ij" indexing.
    """
    k = _check_k(alloc, k)
    if len(axes) != alloc.m:
        raise DimensionError(f"expected {alloc.m} axes, got {len(axes)}")
    axes = [np.asarray(a, dtype=float).reshape(-1) for a in axes]
    for a in axes:
        if np.any(a < 0) or np.any(a > 1) or np.any(np.isnan(a)):
            raise DomainError("v must lie in [0,1]^m")
    shape = tuple(a.size for a in axes)

    def along(i: int, values: np.ndarray) -> np.ndarray:
        view = [1] * alloc.m
        view[i] = values.size
        return values.reshape(view)

    if alloc.scheme is Scheme.DIAGONAL:
        product = np.ones(shape, dtype=float)
        for i, a in enumerate(axes):
            product = product * along(i, 1.0 - a)
        return psi_eval_many(_diagonal_spec(alloc, k), product)

    if alloc.scheme is Scheme.CUSTOM:
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, alloc.m)
        return np.asarray(region_function(alloc, k, mesh)).reshape(shape)

    logs = [_axis_log_sum(n, kk, h, 1.0 - axes[i]) for i, (n, kk, h) in enumerate(zip(alloc.N, k, alloc.H))]
    if alloc.scheme is Scheme.UNIFORM:
        total = np.zeros(shape, dtype=float)
        for i, log_s in enumerate(logs):
            total = total + along(i, log_s)
        return _uniform_from_logs(alloc, total)

    total = np.zeros(shape, dtype=float)
    with np.errstate(over="ignore"):
        for i, log_s in enumerate(logs):
            total = total + along(i, np.expm1(log_s))
    return 1.0 - math.exp(alloc.log_off_weight) * total


# --- single criterion ---

@dataclass(frozen=True)
class BandFunction:
    """
    f(t) = 1 + lam_below * sum_{j=1}^{N-k} C(N-j,k)/C(N,k) t^-j + lam_above * sum_{j=1}^{H-N} C(N+j,k)/C(N,k) t^j.

    The single-criterion left-hand side with one constant weight below N and
    another above N, written in t = 1 - v.
    """
    N: int
    k: int
    H: int
    lam_below: float
    lam_above: float

    @cached_property
    def _tables(self) -> Tuple[np.ndarray, np.ndarray]:
        one_n, one_k = MultiIndex((self.N,)), MultiIndex((self.k,))
        return _minus_table(one_n, one_k, self.N - self.k), _plus_table(one_n, one_k, self.H - self.N)

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0):
            raise DomainError("the band function is defined for t >= 0 only")
        if self.k < self.N and np.any(t_arr == 0):
            raise DomainError("the band function has a pole at t = 0 when k < N")
        log_minus, log_plus = self._tables
        flat = t_arr.reshape(-1)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_t = np.log(flat)
            value = np.ones(flat.shape, dtype=float)
            if log_minus.size:
                j = np.arange(1, log_minus.size + 1, dtype=float)
                value += self.lam_below * np.exp(log_minus[None, :] - log_t[:, None] * j[None, :]).sum(axis=1)
            if log_plus.size:
                j = np.arange(1, log_plus.size + 1, dtype=float)
                value += self.lam_above * np.exp(log_plus[None, :] + log_t[:, None] * j[None, :]).sum(axis=1)
        value = value.reshape(t_arr.shape)
        return float(value) if value.ndim == 0 else value


def scalar_band_function(N: int, k: int, H: int, lam_below: float, lam_above: float) -> BandFunction:
    """Build the m = 1 band function; see `BandFunction`."""
    if N < 1 or not 0 <= k <= N or H < N:
        raise DomainError(f"need 0 <= k <= N <= H and N >= 1, got k={k}, N={N}, H={H}")
    if lam_below > 0 or lam_above > 0:
        raise DomainError("off-N weights must be non-positive")
    return BandFunction(N=int(N), k=int(k), H=int(H), lam_below=float(lam_below), lam_above=float(lam_above))


@dataclass(frozen=True)
class IntervalBound:
    """A single-criterion interval [eps_lo, eps_hi] holding V_i with the stated confidence."""
    eps_lo: float
    eps_hi: float
    k: int
    N: int
    beta: float
    choice: Theorem1Choice = Theorem1Choice.UPPER_ONLY

    def __post_init__(self) -> None:
        if not 0.0 <= self.eps_lo <= self.eps_hi <= 1.0:
            raise DomainError(f"invalid interval [{self.eps_lo}, {self.eps_hi}]")

    def contains(self, v):
        return (self.eps_lo <= v) & (v <= self.eps_hi)

    def function(self) -> BandFunction:
        """The band function whose zeros are the interval ends."""
        return _band_for(self.N, self.k, self.beta, self.choice)


def _band_for(N: int, k: int, beta: float, choice: Theorem1Choice) -> BandFunction:
    if choice is Theorem1Choice.UPPER_ONLY:
        return scalar_band_function(N, k, N, -beta / N, 0.0)
    return scalar_band_function(N, k, 4 * N, -beta / (2 * N), -beta / (6 * N))


def theorem1_interval(N: int, k: int, beta: float, choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
                      tolerance: float = BISECTION_TOLERANCE) -> IntervalBound:
    """
    Single-criterion risk interval for k support scenarios out of N.

    Args:
        N (int): Dataset size, N >= 1.
        k (int): Number of support scenarios, 0 <= k <= N.
        beta (float): Confidence parameter in (0,1).
        choice (Theorem1Choice | str): Weight choice.
        tolerance (float): Bisection bracket width.

    Returns:
        IntervalBound: The interval, with eps_hi = 1 when k = N.
    """
    beta = check_beta(beta)
    choice = Theorem1Choice(choice)
    N, k = int(N), int(k)
    if N < 1 or not 0 <= k <= N:
        raise DomainError(f"need 0 <= k <= N and N >= 1, got k={k}, N={N}")

    if choice is Theorem1Choice.UPPER_ONLY:
        roots = find_root_pair(PsiSpec(MultiIndex((k,)), MultiIndex((N,)), MultiIndex((N,)), beta), tolerance)
        return IntervalBound(eps_lo=0.0, eps_hi=1.0 - roots.t_bar, k=k, N=N, beta=beta, choice=choice)

    f = _band_for(N, k, beta, choice)
    t_hat = 1.0 - k / N
    eps_hi = 1.0
    if k < N:
        t_low, _ = bisect_sign_change(f, 0.0, t_hat, tolerance, rising=True)
        eps_hi = 1.0 - t_low
    eps_lo = 0.0
    if f(1.0) < 0:
        _, t_high = bisect_sign_change(f, t_hat, 1.0, tolerance, rising=False)
        eps_lo = max(0.0, 1.0 - t_high)
    return IntervalBound(eps_lo=eps_lo, eps_hi=eps_hi, k=k, N=N, beta=beta, choice=choice)


@lru_cache(maxsize=64)
def _band_tables(N: int, k_max: int, extent: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-k log ratio tables of the band functions, rows k = 0..k_max.

    Below N: log C(N-j,k)/C(N,k) for j = 1..N, -inf where j > N - k.
    Above N: log C(N+j,k)/C(N,k) for j = 1..extent - N.
    """
    k = np.arange(k_max + 1, dtype=float)[:, None]
    ell = np.arange(N, dtype=float)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        below = np.cumsum(np.log1p(-k / (N - ell)), axis=1)
    below[ell.astype(int) + 1 > N - k.astype(int)] = -np.inf
    ell = np.arange(1, extent - N + 1, dtype=float)[None, :]
    above = np.cumsum(np.log1p(k / (N - k + ell)), axis=1)
    below.setflags(write=False)
    above.setflags(write=False)
    return below, above


def theorem1_upper_ends(N: int, k_max: int, beta: float,
                        choice: Theorem1Choice | str = Theorem1Choice.UPPER_ONLY,
                        tolerance: float = BISECTION_TOLERANCE) -> np.ndarray:
    """
    `theorem1_interval(N, k, ...).eps_hi` for every k = 0..min(k_max, N) in one search.

    All the lower zeros are bisected together, so the cost is one pass of
    array evaluations instead of one scalar search per k.

    Args:
        N (int): Dataset size, N >= 1.
        k_max (int): Largest complexity, >= 0.
        beta (float): Confidence parameter in (0,1).
        choice (Theorem1Choice | str): Weight choice.
        tolerance (float): Bisection bracket width.

    Returns:
        np.ndarray: Upper interval ends indexed by k.
    """
    beta = check_beta(beta)
    choice = Theorem1Choice(choice)
    N, k_max = int(N), min(int(k_max), int(N))
    if N < 1 or k_max < 0:
        raise DomainError(f"need N >= 1 and k_max >= 0, got N={N}, k_max={k_max}")

    if choice is Theorem1Choice.UPPER_ONLY:
        extent, lam_below, lam_above = N, -beta / N, 0.0
    else:
        extent, lam_below, lam_above = 4 * N, -beta / (2 * N), -beta / (6 * N)
    below, above = _band_tables(N, k_max, extent)
    j_below = np.arange(1, below.shape[1] + 1, dtype=float)
    j_above = np.arange(1, above.shape[1] + 1, dtype=float)
    step = max(1, EVAL_CELLS // max(1, below.shape[1] + above.shape[1]))

    def band(rows: np.ndarray, t: np.ndarray) -> np.ndarray:
        out = np.empty(t.shape, dtype=float)
        for start in range(0, t.size, step):
            r = rows[start:start + step]
            log_t = np.log(t[start:start + step])[:, None]
            with np.errstate(over="ignore", invalid="ignore"):
                value = 1.0 + lam_below * np.exp(below[r] - log_t * j_below).sum(axis=1)
                if above.shape[1]:
                    value += lam_above * np.exp(above[r] + log_t * j_above).sum(axis=1)
            out[start:start + step] = value
        return out

    ks = np.arange(k_max + 1)
    ends = np.ones(k_max + 1, dtype=float)
    searched = ks[ks < N]
    if searched.size:
        lo, _ = bisect_sign_change_many(
            lambda idx, t: band(searched[idx], t),
            np.zeros(searched.size), 1.0 - searched / N, tolerance, rising=True,
        )
        ends[searched] = 1.0 - lo
    return ends
