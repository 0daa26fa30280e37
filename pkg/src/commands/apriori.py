from .options import emit_table, int_range
from ..certificates import APRIORI_COLUMNS, apriori_sweep
from ..utils import exit_codes, info

from time import perf_counter as time


@exit_codes
def apriori(args):
    """The a-priori joint-risk bounds as a function of the number of criteria."""
    x1 = time()
    rows = apriori_sweep(args.n_lower, args.beta, args.kstar, int_range(args.m_range),
                         args.choice, args.tolerance)
    emit_table(args, APRIORI_COLUMNS, ((row.m, *row.values()) for row in rows))
    x2 = time()
    info(f"sweep time: {x2 - x1:.2f} seconds")
