"""
Numerical bedrock of the certificates.

Multi-index arithmetic, log-domain ratios of binomial coefficients, the
psi family of scalar functions whose zeros delimit the diagonal regions, and
the bisection engine used by every root search in the package.

All binomial ratios are accumulated as sums of logarithms, never as products
of factorials, so N in the thousands and powers t^-j with j up to N stay finite.
"""
from .constants import BISECTION_TOLERANCE, EVAL_CELLS
from .errors import DomainError, DimensionError

from dataclasses import dataclass
from functools import cached_property, lru_cache
from operator import index
from typing import Callable, Iterable, Iterator, Tuple

import math

import numpy as np
from scipy.special import gammaln

__all__ = [
    "MultiIndex", "PsiSpec", "RootPair",
    "log_binom_ratio_minus", "log_binom_ratio_plus",
    "psi_eval", "psi_eval_many", "find_root_pair",
    "bisect_sign_change", "bisect_sign_change_many", "t_hat", "tbar_lower_bound", "check_beta",
]


def check_beta(beta: float, name: str = "beta") -> float:
    """
    Validate a confidence parameter.

    Args:
        beta (float): The value to check.
        name (str): Name used in the error message.

    Returns:
        float: `beta` as a float.

    Raises:
        DomainError: If `beta` is not strictly inside (0, 1).
    """
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"{name} must be in (0,1), got {beta}")
    return beta


@dataclass(frozen=True)
class MultiIndex:
    """
    A vector of non-negative integers, one entry per criterion.

    Comparisons follow the component-wise convention: `a.leq(b)` means
    a_i <= b_i for every i, `a.less(b)` means a_i < b_i for every i.
    Note that `not a.less(b)` (written k "not <" N) holds as soon as one
    component is equal.
    """
    entries: Tuple[int, ...]
    """The counts, in criterion order."""

    def __post_init__(self) -> None:
        try:
            entries = tuple(index(e) for e in self.entries)
        except TypeError as err:
            raise DomainError(f"multi-index entries must be integers: {self.entries!r}") from err
        if not entries:
            raise DimensionError("multi-index must have at least one entry")
        if any(e < 0 for e in entries):
            raise DomainError(f"multi-index entries must be non-negative: {entries}")
        object.__setattr__(self, "entries", entries)

    # --- constructors ---
    @classmethod
    def of(cls, *values: int) -> "MultiIndex":
        """Build a multi-index from positional values: `MultiIndex.of(800, 1200)`."""
        return cls(tuple(values))

    @classmethod
    def full(cls, m: int, value: int) -> "MultiIndex":
        """The multi-index `value * 1` of length `m`."""
        if m < 1:
            raise DimensionError(f"m must be >= 1, got {m}")
        return cls((value,) * m)

    @classmethod
    def ones(cls, m: int) -> "MultiIndex":
        return cls.full(m, 1)

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "MultiIndex":
        """
        Parse a comma-separated list of integers.

        A single value is broadcast to length `m` when `m` is given, so
        `parse("1500", m=10)` is `1500 * 1`.

        Args:
            text (str): e.g. "800,1200" or "1500".
            m (int | None): Target length for scalar broadcast.

        Returns:
            MultiIndex: The parsed multi-index.

        Raises:
            DomainError: On non-integer entries.
            DimensionError: If `m` is given and does not match the number of entries.
        """
        parts = [p.strip() for p in str(text).split(",") if p.strip()]
        try:
            values = [int(p) for p in parts]
        except ValueError as err:
            raise DomainError(f"not a list of integers: {text!r}") from err
        if m is not None:
            if len(values) == 1:
                values = values * m
            elif len(values) != m:
                raise DimensionError(f"expected {m} entries, got {len(values)} in {text!r}")
        return cls(tuple(values))

    @classmethod
    def balanced(cls, total: int, m: int) -> "MultiIndex":
        """Spread `total` over `m` entries as evenly as possible (entries floor/ceil of total/m)."""
        q, r = divmod(total, m)
        return cls(tuple(q + 1 if i < r else q for i in range(m)))

    @classmethod
    def concentrated(cls, total: int, m: int) -> "MultiIndex":
        """Put `total` in the first entry and zero elsewhere."""
        return cls((total,) + (0,) * (m - 1))

    # --- container protocol ---
    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    @property
    def m(self) -> int:
        """Number of criteria."""
        return len(self.entries)

    @property
    def array(self) -> np.ndarray:
        """The entries as an int64 numpy array."""
        return np.asarray(self.entries, dtype=np.int64)

    def total(self) -> int:
        """The 1-norm |k|."""
        return sum(self.entries)

    def min(self) -> int:
        return min(self.entries)

    def max(self) -> int:
        return max(self.entries)

    # --- component-wise order ---
    def _same_length(self, other: "MultiIndex") -> None:
        if len(other) != len(self):
            raise DimensionError(f"multi-index lengths differ: {len(self)} vs {len(other)}")

    def leq(self, other: "MultiIndex") -> bool:
        """Component-wise <=."""
        self._same_length(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def less(self, other: "MultiIndex") -> bool:
        """Component-wise strict <, i.e. every entry strictly smaller."""
        self._same_length(other)
        return all(a < b for a, b in zip(self.entries, other.entries))

    def is_homogeneous(self) -> bool:
        """True when all entries are equal."""
        return len(set(self.entries)) == 1

    def to_list(self) -> list[int]:
        return list(self.entries)


def _require_leq(k: MultiIndex, N: MultiIndex, what: str = "k exceeds N") -> None:
    if not k.leq(N):
        raise DomainError(f"{what}: {k} vs {N}")


def _pairs(N: MultiIndex, k: MultiIndex) -> Tuple[np.ndarray, np.ndarray]:
    """Unique (N_i, k_i) pairs with their multiplicities; entries with k_i = 0 contribute nothing."""
    stacked = np.stack([N.array, k.array], axis=1)
    stacked = stacked[stacked[:, 1] > 0]
    if stacked.size == 0:
        return np.empty((0, 2), dtype=np.int64), np.empty(0, dtype=np.int64)
    pairs, counts = np.unique(stacked, axis=0, return_counts=True)
    return pairs, counts


@lru_cache(maxsize=512)
def _minus_table(N: MultiIndex, k: MultiIndex, jmax: int) -> np.ndarray:
    """log of prod_i C(N_i - j, k_i) / C(N_i, k_i) for j = 1..jmax, as a cumulative log sum."""
    table = np.zeros(jmax, dtype=float)
    if jmax == 0:
        return table
    ell = np.arange(jmax, dtype=float)
    for (n, kk), count in zip(*_pairs(N, k)):
        # (N-k-l)/(N-l) = 1 - k/(N-l)
        table += count * np.cumsum(np.log1p(-kk / (n - ell)))
    table.setflags(write=False)
    return table


@lru_cache(maxsize=512)
def _plus_table(N: MultiIndex, k: MultiIndex, jmax: int) -> np.ndarray:
    """log of prod_i C(N_i + j, k_i) / C(N_i, k_i) for j = 1..jmax."""
    table = np.zeros(jmax, dtype=float)
    if jmax == 0:
        return table
    ell = np.arange(1, jmax + 1, dtype=float)
    for (n, kk), count in zip(*_pairs(N, k)):
        # (N+l)/(N-k+l) = 1 + k/(N-k+l)
        table += count * np.cumsum(np.log1p(kk / (n - kk + ell)))
    table.setflags(write=False)
    return table


def log_binom_ratio_minus(N: MultiIndex, k: MultiIndex, j: int) -> float:
    """
    Natural log of prod_i C(N_i - j, k_i) / C(N_i, k_i).

    Args:
        N (MultiIndex): Dataset sizes.
        k (MultiIndex): Complexities, k <= N.
        j (int): Shift, 1 <= j <= min(N - k).

    Returns:
        float: The log ratio (<= 0).

    Raises:
        DomainError: If k is not <= N, or j is out of range.
    """
    _require_leq(k, N)
    j = index(j)
    limit = min(n - kk for n, kk in zip(N, k))
    if j < 1 or j > limit:
        raise DomainError(f"j must be in [1, min(N-k)] = [1, {limit}], got {j}")
    return float(_minus_table(N, k, j)[j - 1])


def log_binom_ratio_plus(N: MultiIndex, k: MultiIndex, j: int) -> float:
    """
    Natural log of prod_i C(N_i + j, k_i) / C(N_i, k_i).

    Args:
        N (MultiIndex): Dataset sizes.
        k (MultiIndex): Complexities, k <= N.
        j (int): Shift, j >= 1.

    Returns:
        float: The log ratio (>= 0).

    Raises:
        DomainError: If k is not <= N, or j < 1.
    """
    _require_leq(k, N)
    j = index(j)
    if j < 1:
        raise DomainError(f"j must be >= 1, got {j}")
    return float(_plus_table(N, k, j)[j - 1])


def t_hat(k: MultiIndex, N: MultiIndex) -> float:
    """prod_i (1 - k_i / N_i), the point where psi is guaranteed positive."""
    _require_leq(k, N)
    return float(np.prod(1.0 - k.array / N.array))


@dataclass(frozen=True)
class RootPair:
    """The two zeros delimiting a diagonal band."""
    t_bar: float
    """Smaller zero (0 when k is not < N); controls the upper hyperbola."""
    t_underbar: float
    """Larger zero clipped to 1 (1 when H is not > N); controls the lower hyperbola."""

    def __post_init__(self) -> None:
        if not 0.0 <= self.t_bar <= self.t_underbar <= 1.0:
            raise DomainError(f"invalid root pair: {self.t_bar}, {self.t_underbar}")

    def contains(self, t):
        """True where t_bar <= t <= t_underbar (works on arrays)."""
        return (self.t_bar <= t) & (t <= self.t_underbar)


@dataclass(frozen=True)
class PsiSpec:
    """
    Parameters of one member of the psi family.

    psi(t) = 1 - beta / (|J_0| - 1) * sum_{j in J_k, j != 0} C(N + j1, k) / C(N, k) * t^j
    with J_k = {max(k - N), ..., min(H - N)} and |J_0| - 1 = min(N) + min(H - N).
    """
    k: MultiIndex
    N: MultiIndex
    H: MultiIndex
    beta: float

    def __post_init__(self) -> None:
        if not len(self.k) == len(self.N) == len(self.H):
            raise DimensionError(f"k, N, H lengths differ: {len(self.k)}, {len(self.N)}, {len(self.H)}")
        if self.N.min() < 1:
            raise DomainError(f"N entries must be positive: {self.N}")
        _require_leq(self.k, self.N)
        _require_leq(self.N, self.H, "N exceeds H")
        object.__setattr__(self, "beta", check_beta(self.beta))

    @property
    def m(self) -> int:
        return len(self.N)

    @cached_property
    def negative_span(self) -> int:
        """min(N - k): number of negative powers of t."""
        return min(n - kk for n, kk in zip(self.N, self.k))

    @cached_property
    def positive_span(self) -> int:
        """min(H - N): number of positive powers of t."""
        return min(h - n for h, n in zip(self.H, self.N))

    @cached_property
    def weight(self) -> float:
        """beta / (|J_0| - 1)."""
        return self.beta / (self.N.min() + self.positive_span)

    @cached_property
    def t_hat(self) -> float:
        return t_hat(self.k, self.N)

    @property
    def k_less_than_N(self) -> bool:
        return self.negative_span > 0

    @property
    def H_greater_than_N(self) -> bool:
        return self.positive_span > 0

    @cached_property
    def log_minus(self) -> np.ndarray:
        return _minus_table(self.N, self.k, self.negative_span)

    @cached_property
    def log_plus(self) -> np.ndarray:
        return _plus_table(self.N, self.k, self.positive_span)


def _power_sums(log_minus: np.ndarray, log_plus: np.ndarray, log_t: np.ndarray) -> np.ndarray:
    """sum_j exp(log_minus_j - j log t) + sum_j exp(log_plus_j + j log t), per entry of log_t."""
    total = np.zeros(log_t.shape, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        if log_minus.size:
            j = np.arange(1, log_minus.size + 1, dtype=float)
            total += np.exp(log_minus[None, :] - log_t[:, None] * j[None, :]).sum(axis=1)
        if log_plus.size:
            j = np.arange(1, log_plus.size + 1, dtype=float)
            total += np.exp(log_plus[None, :] + log_t[:, None] * j[None, :]).sum(axis=1)
    return total


def psi_eval_many(spec: PsiSpec, t) -> np.ndarray:
    """
    Vectorized psi over an array of t.

    Args:
        spec (PsiSpec): The psi parameters.
        t (array_like): Points, all >= 0 (> 0 when k < N).

    Returns:
        np.ndarray: psi(t), same shape as `t`. Values may be -inf where the
        negative powers overflow.

    Raises:
        DomainError: If some t < 0, or t == 0 while k < N.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise DomainError("psi is defined for t >= 0 only")
    if spec.k_less_than_N and np.any(t == 0):
        raise DomainError("psi has a pole at t = 0 when k < N")
    flat = t.reshape(-1)
    out = np.empty(flat.shape, dtype=float)
    with np.errstate(divide="ignore"):
        step = max(1, EVAL_CELLS // max(1, spec.negative_span + spec.positive_span))
        for start in range(0, flat.size, step):
            log_t = np.log(flat[start:start + step])
            out[start:start + step] = 1.0 - spec.weight * _power_sums(spec.log_minus, spec.log_plus, log_t)
    return out.reshape(t.shape)


def psi_eval(spec: PsiSpec, t: float) -> float:
    """
    Evaluate psi_{k,N,H}(t) in the log domain.

    Args:
        spec (PsiSpec): The psi parameters.
        t (float): Evaluation point, t > 0 (t = 0 allowed only when k is not < N).

    Returns:
        float: psi(t).

    Raises:
        DomainError: If t < 0, or t == 0 while k < N.
    """
    return float(psi_eval_many(spec, np.asarray([t], dtype=float))[0])


def bisect_sign_change(f: Callable[[float], float], lo: float, hi: float,
                       tolerance: float = BISECTION_TOLERANCE, rising: bool = True) -> Tuple[float, float]:
    """
    Shrink a bracket around the sign change of a function.

    Only midpoints are evaluated, so `f` may be undefined at the endpoints.
    With `rising=True` the invariant is f < 0 left of the zero and f >= 0
    right of it (a zero approached from below); with `rising=False` it is
    the mirror image.

    Args:
        f (Callable[[float], float]): The function.
        lo (float): Left end of the bracket.
        hi (float): Right end of the bracket.
        tolerance (float): Stop when hi - lo <= tolerance.
        rising (bool): Direction of the sign change.

    Returns:
        Tuple[float, float]: The final bracket (lo, hi).
    """
    if tolerance <= 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if (f(mid) >= 0) == rising:
            hi = mid
        else:
            lo = mid
    return lo, hi


def bisect_sign_change_many(f: Callable[[np.ndarray, np.ndarray], np.ndarray], lo, hi,
                            tolerance: float = BISECTION_TOLERANCE,
                            rising: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """
    `bisect_sign_change` run on many independent brackets at once.

    `f(idx, t)` evaluates the functions of the brackets `idx` at the points
    `t`. Each bracket follows the same midpoint sequence as the scalar
    version and stops once its own width is within `tolerance`.

    Args:
        f (Callable[[np.ndarray, np.ndarray], np.ndarray]): Batched function.
        lo (array_like): Left ends.
        hi (array_like): Right ends, same shape as `lo`.
        tolerance (float): Stop when hi - lo <= tolerance.
        rising (bool): Direction of the sign change, shared by all brackets.

    Returns:
        Tuple[np.ndarray, np.ndarray]: The final brackets (lo, hi).
    """
    if tolerance <= 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    if lo.shape != hi.shape:
        raise DimensionError(f"bracket ends differ in shape: {lo.shape} vs {hi.shape}")
    active = np.flatnonzero(hi - lo > tolerance)
    while active.size:
        mid = 0.5 * (lo[active] + hi[active])
        move_hi = (np.asarray(f(active, mid)) >= 0) == rising
        hi[active[move_hi]] = mid[move_hi]
        lo[active[~move_hi]] = mid[~move_hi]
        active = active[hi[active] - lo[active] > tolerance]
    return lo, hi


def find_root_pair(spec: PsiSpec, tolerance: float = BISECTION_TOLERANCE) -> RootPair:
    """
    Locate t_bar in (0, t_hat) and t_underbar in (t_hat, 1] by bisection.

    The conservative end of each final bracket is kept: the left end for
    t_bar and the right end for t_underbar, so the band never shrinks
    below the exact one.

    Args:
        spec (PsiSpec): The psi parameters.
        tolerance (float): Bracket width at termination.

    Returns:
        RootPair: The two zeros.
    """
    if tolerance <= 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    f = lambda t: psi_eval(spec, t)
    th = spec.t_hat

    t_bar = 0.0
    if spec.k_less_than_N:
        t_bar, _ = bisect_sign_change(f, 0.0, th, tolerance, rising=True)

    t_underbar = 1.0
    if spec.H_greater_than_N:
        _, t_underbar = bisect_sign_change(f, th, 1.0, tolerance, rising=False)

    return RootPair(t_bar=t_bar, t_underbar=t_underbar)


def tbar_lower_bound(N_lower: int, K_star: int, beta: float) -> float:
    """
    Closed-form lower bound (beta / (N * C(N, K*)))^(1 / (N - K*)) on the a-priori zero.

    Args:
        N_lower (int): Smallest dataset size.
        K_star (int): Complexity cap, K* < N_lower.
        beta (float): Confidence parameter.

    Returns:
        float: A value never above the zero of psi_{K*, N, N}.
    """
    beta = check_beta(beta)
    if not 0 <= K_star < N_lower:
        raise DomainError(f"need 0 <= K* < N, got K*={K_star}, N={N_lower}")
    log_binom = gammaln(N_lower + 1) - gammaln(K_star + 1) - gammaln(N_lower - K_star + 1)
    return math.exp((math.log(beta) - math.log(N_lower) - log_binom) / (N_lower - K_star))


def as_multi_index(value: "MultiIndex | Iterable[int] | int", m: int | None = None) -> MultiIndex:
    """@private Coerce ints, sequences and strings to a MultiIndex."""
    if isinstance(value, MultiIndex):
        return value
    if isinstance(value, str):
        return MultiIndex.parse(value, m)
    if isinstance(value, (int, np.integer)):
        return MultiIndex.full(m or 1, int(value))
    return MultiIndex(tuple(value))
