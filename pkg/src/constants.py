"""
Default values shared by the whole package.

Everything tunable lives here so the numerical modules, the scenario engine
and the CLI agree on the same numbers.
"""

BISECTION_TOLERANCE = 1e-10
"""Bracket width at which the bisection engine stops."""

SUM_TOLERANCE = 1e-12
"""Relative tolerance for the `sum(lambda) == 1 - beta` feasibility check."""

DECISION_TOLERANCE = 1e-9
"""Max-norm distance under which two continuous decisions are the same decision."""

GRID_RESOLUTION = 400
"""Points per axis of exported region grids."""

REGION_MAX_POINTS = 2**16
"""Coarse grid budget (total points) of the region maximum search."""

REGION_MAX_LEVELS = 3
"""Local refinement rounds of the region maximum search."""

REGION_MAX_REFINE = 8
"""Subdivisions per axis of a cell during refinement."""

REGION_MAX_CANDIDATES = 32
"""Grid points kept as refinement seeds at each level."""

DIMS_LIMIT = 3
"""Largest number of criteria accepted by grid-based searches and enumerations."""

QMC_POINTS = 2**20
"""Total quasi-Monte Carlo points used by the sampled risk oracles."""

QMC_REPLICATES = 8
"""Independent scrambles the QMC points are split into (gives the standard error)."""

EVAL_CELLS = 2**22
"""Matrix entries (points times terms) materialized at once by the log-domain sums."""

JSON_DIGITS = 15
"""Significant digits of reals written to JSON."""

ACCEPTANCE_SIGMAS = 3.0
"""Binomial standard deviations tolerated below the coverage target."""

OUTPUT_DIR_ENV = "SCENARIORISK_OUTPUT_DIR"
"""Environment variable holding the default directory of `--out` files."""

DEBUG_ENV = "SCENARIORISK_DEBUG"
"""Environment variable turning on debug output at import time."""
