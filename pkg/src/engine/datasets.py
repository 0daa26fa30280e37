"""
Labeled scenarios and per-criterion datasets.

A dataset is a tuple of m lists, list i holding the scenarios collected for
criterion i. Lists keep their order and may contain repeated scenarios. Each
list is stored as a 2-D float array (one row per scenario) whose columns are
the payload the criterion observes, so different criteria may see payloads
of different widths.
"""
from ..errors import DimensionError, DomainError
from ..export import csv_text
from ..numerics import MultiIndex, as_multi_index

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, List, Sequence, Tuple

import csv
import io

import numpy as np

if TYPE_CHECKING:
    from .problem import DecisionProblem

__all__ = ["LabeledScenario", "ScenarioDatasets"]


@dataclass(frozen=True)
class LabeledScenario:
    """One observed realization of the uncertainty, labeled with the criterion it was collected for."""
    criterion_id: int
    """1-based criterion label."""
    payload: Tuple[float, ...]

    def __post_init__(self) -> None:
        if self.criterion_id < 1:
            raise DomainError(f"criterion ids start at 1, got {self.criterion_id}")
        object.__setattr__(self, "payload", tuple(float(p) for p in np.ravel(self.payload)))

    @property
    def index(self) -> int:
        """0-based position of the criterion."""
        return self.criterion_id - 1


def _as_list(rows, width: int | None = None) -> np.ndarray:
    array = np.asarray(rows, dtype=float)
    if array.size == 0:
        array = np.empty((0, width or (array.shape[1] if array.ndim == 2 else 1)), dtype=float)
    elif array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise DimensionError(f"a scenario list must be 2-D (scenarios x payload), got shape {array.shape}")
    array = array.copy()
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScenarioDatasets:
    """The lists D_1, ..., D_m."""
    lists: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        lists = tuple(_as_list(rows) for rows in self.lists)
        if not lists:
            raise DimensionError("datasets need at least one criterion")
        object.__setattr__(self, "lists", lists)

    # --- construction ---
    @classmethod
    def draw(cls, problem: "DecisionProblem", N, rng: np.random.Generator) -> "ScenarioDatasets":
        """Draw N_i independent scenarios for every criterion of `problem`."""
        N = as_multi_index(N, problem.m)
        if len(N) != problem.m:
            raise DimensionError(f"problem has {problem.m} criteria, N has {len(N)} entries")
        return cls(tuple(problem.sample(rng, i, n) for i, n in enumerate(N)))

    @classmethod
    def empty(cls, widths: Sequence[int]) -> "ScenarioDatasets":
        return cls(tuple(np.empty((0, w), dtype=float) for w in widths))

    @classmethod
    def from_scenarios(cls, m: int, scenarios: Iterable[LabeledScenario], widths: Sequence[int] | None = None) -> "ScenarioDatasets":
        rows: List[list] = [[] for _ in range(m)]
        for s in scenarios:
            if s.criterion_id > m:
                raise DomainError(f"criterion id {s.criterion_id} exceeds m = {m}")
            rows[s.index].append(s.payload)
        widths = widths or [len(r[0]) if r else 1 for r in rows]
        return cls(tuple(_as_list(r, w) for r, w in zip(rows, widths)))

    # --- inspection ---
    @property
    def m(self) -> int:
        return len(self.lists)

    @property
    def N(self) -> MultiIndex:
        return MultiIndex(tuple(len(rows) for rows in self.lists))

    def scenarios(self, i: int) -> List[LabeledScenario]:
        """The scenarios of criterion i (0-based)."""
        return [LabeledScenario(i + 1, tuple(row)) for row in self.lists[i]]

    def __iter__(self) -> Iterator[LabeledScenario]:
        for i in range(self.m):
            yield from self.scenarios(i)

    def __len__(self) -> int:
        return self.N.total()

    # --- derived datasets ---
    def without(self, i: int, j: int) -> "ScenarioDatasets":
        """Drop scenario j of criterion i."""
        lists = list(self.lists)
        lists[i] = np.delete(lists[i], j, axis=0)
        return ScenarioDatasets(tuple(lists))

    def with_extra(self, scenario: LabeledScenario) -> "ScenarioDatasets":
        """Append one scenario to the list of its criterion."""
        if scenario.criterion_id > self.m:
            raise DomainError(f"criterion id {scenario.criterion_id} exceeds m = {self.m}")
        lists = list(self.lists)
        lists[scenario.index] = np.vstack([lists[scenario.index], np.asarray(scenario.payload).reshape(1, -1)])
        return ScenarioDatasets(tuple(lists))

    def subset(self, indices: Sequence[Sequence[int]]) -> "ScenarioDatasets":
        """Keep only the listed scenarios of each criterion, in the given order."""
        if len(indices) != self.m:
            raise DimensionError(f"expected {self.m} index lists, got {len(indices)}")
        return ScenarioDatasets(tuple(
            rows[np.asarray(idx, dtype=int)] if len(idx) else rows[:0]
            for rows, idx in zip(self.lists, indices)
        ))

    def permuted(self, rng: np.random.Generator) -> "ScenarioDatasets":
        """Shuffle the order inside every list."""
        return ScenarioDatasets(tuple(rows[rng.permutation(len(rows))] for rows in self.lists))

    # --- csv ---
    def to_csv(self) -> str:
        """Rows `criterion_id,p1,...,pd` (shorter payloads are padded with empty cells)."""
        width = max(rows.shape[1] for rows in self.lists)
        header = ["criterion_id"] + [f"p{j + 1}" for j in range(width)]
        out = []
        for i, rows in enumerate(self.lists):
            for row in rows:
                out.append([i + 1] + [float(x) for x in row] + [""] * (width - row.size))
        return csv_text(header, out)

    @classmethod
    def from_csv(cls, text: str, m: int | None = None) -> "ScenarioDatasets":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if not header or header[0] != "criterion_id":
            raise DomainError("scenario CSV must start with a criterion_id column")
        scenarios = [
            LabeledScenario(int(row[0]), tuple(float(x) for x in row[1:] if x != ""))
            for row in reader if row
        ]
        m = m or max((s.criterion_id for s in scenarios), default=1)
        return cls.from_scenarios(m, scenarios)
