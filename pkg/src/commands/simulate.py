from .options import emit_json, multi_index
from ..engine import PROBLEMS, CertificateKind, MaxOfSamples, RobustLP2D, coverage_experiment
from ..utils import exit_codes, info

from time import perf_counter as time

import numpy as np


def build_problem(name, m, qmc_points=None):
    """A built-in problem with `m` criteria."""
    problem = PROBLEMS[name]
    if problem is MaxOfSamples:
        return MaxOfSamples(scales=(1.0,) * m)
    centers = (np.pi / 4,) if m == 1 else tuple(np.linspace(0.0, np.pi / 2, m).tolist())
    options = {"qmc_points": qmc_points} if qmc_points else {}
    return RobustLP2D(centers=centers, **options)


@exit_codes
def simulate(args):
    """Monte Carlo coverage of a certificate; fails (exit 1) below 1 - beta minus the tolerated sigmas."""
    x1 = time()
    N = multi_index(args.n, args.m) if args.m else multi_index(args.n)
    problem = build_problem(args.problem, len(N), args.qmc_points)
    report = coverage_experiment(
        problem, N, args.beta, args.trials,
        certificate_kind=CertificateKind(args.certificate),
        rng_seed=args.seed, workers=args.workers, sigmas=args.sigmas,
    )
    emit_json(args, report)
    x2 = time()
    info(f"simulation time: {x2 - x1:.2f} seconds")
    return report.passed
