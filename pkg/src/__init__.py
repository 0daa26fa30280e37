"""
Risk certificates for multi-criteria scenario-based decisions.

Given the number of support scenarios observed for each criterion, the
package certifies regions containing the vector of individual risks, upper
bounds on the joint risk, a-priori bounds usable before collecting data, and
the dataset sizes that guarantee a joint-risk level. A scenario engine with
two toy decision problems checks the certificates by Monte Carlo coverage.
"""
from importlib.metadata import PackageNotFoundError, version as _version
try:
    __version__ = _version("scenariorisk")
except PackageNotFoundError:
    __version__ = "0.0.0"

__project__ = "scenariorisk"

__docformat__ = "google"
__license__ = "MIT"

from os import environ as _environ
from sys import version_info as _python_version

import numpy
import scipy
import statsmodels

from .constants import DEBUG_ENV as _DEBUG_ENV

debug: bool = _environ.get(_DEBUG_ENV, "").strip().lower() in ("1", "true", "yes", "on")
"""
Flag var indicating whether debug mode is enabled.\n
Turns on progress messages and full tracebacks; set `SCENARIORISK_DEBUG=1` to enable it at import time.
"""

version: str = __version__
"""scenariorisk version"""
python_version: str = f"{_python_version[0]}.{_python_version[1]}.{_python_version[2]}"
"""@private Python version"""
numpy_version: str = numpy.__version__
"""numpy version"""
scipy_version: str = scipy.__version__
"""scipy version"""
statsmodels_version: str = statsmodels.__version__
"""statsmodels version"""

from .errors import (
    ScenarioRiskError, DomainError, DimensionError,
    InfeasibleProblemError, UnsupportedProblemError, ValidationError,
)
from .numerics import MultiIndex, PsiSpec, RootPair, psi_eval, psi_eval_many, find_root_pair
from .allocations import (
    AllocationSpec, Scheme, Theorem1Choice, IntervalBound,
    region_function, theorem1_interval, theorem1_upper_ends,
)
from .certificates import (
    RegionCertificate, JointRiskCertificate, SizingRequest, SizingMode,
    box_region, diagonal_region, allocation_region,
    joint_bound_independent, joint_bound_diagonal, joint_bound_region_max,
    apriori_bound_independent, apriori_bound_diagonal, apriori_bound_bestcase,
    uniform_in_m_bound, size_datasets,
)
from .engine import (
    ScenarioDatasets, DecisionOutcome, CoverageReport,
    MaxOfSamples, RobustLP2D, solve, extract_support, check_assumption1, coverage_experiment,
)
