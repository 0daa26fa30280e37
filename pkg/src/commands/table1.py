from .options import emit_table
from ..certificates import TABLE1, table1_rows
from ..errors import ValidationError
from ..utils import exit_codes, info

from time import perf_counter as time

TABLE1_COLUMNS = ("m", "N", "k", "k_total", "independent_raw", "independent", "diagonal")


def _row(text):
    try:
        m, n, k = (int(p) for p in text.split(","))
    except ValueError as err:
        raise ValidationError(f"a row is M,N,K, got {text!r}") from err
    return m, n, k


@exit_codes
def table1(args):
    """Independent sum (raw and capped) against the diagonal closed form on homogeneous data."""
    x1 = time()
    rows = [_row(r) for r in args.row] if args.row else TABLE1
    table = table1_rows(args.beta, rows, args.tolerance, args.diagonal_beta)
    emit_table(args, TABLE1_COLUMNS,
               ((r.m, r.N, r.k, r.k_total, r.independent_raw, r.independent, r.diagonal) for r in table))
    x2 = time()
    info(f"table time: {x2 - x1:.2f} seconds")
