from .options import emit_table
from ..certificates import (
    SizingMode, SizingRequest, apriori_bound_diagonal, size_datasets, sizing_threshold, uniform_in_m_bound,
)
from ..numerics import MultiIndex
from ..utils import exit_codes, info

from time import perf_counter as time

SIZE_COLUMNS = ("N", "bound", "threshold", "mode")


@exit_codes
def size(args):
    """Smallest common dataset size whose a-priori joint bound reaches --eps."""
    x1 = time()
    mode = SizingMode.UNIFORM_IN_M if args.uniform else SizingMode.FINITE_M
    request = SizingRequest(m=args.m, K_star=args.kstar, beta=args.beta, eps_target=args.eps, mode=mode)
    n = size_datasets(request, args.tolerance)
    if mode is SizingMode.UNIFORM_IN_M:
        achieved = uniform_in_m_bound(n, args.beta, args.kstar, args.tolerance)
    else:
        achieved = apriori_bound_diagonal(MultiIndex.full(args.m, n), args.beta, args.kstar, args.tolerance)
    emit_table(args, SIZE_COLUMNS, [(n, achieved.bound, sizing_threshold(request), mode.value)])
    x2 = time()
    info(f"sizing time: {x2 - x1:.2f} seconds")
