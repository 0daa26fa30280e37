from .options import multi_index
from ..allocations import AllocationSpec, Scheme, Theorem1Choice
from ..certificates import allocation_region, box_region, criteria, diagonal_region, region_grid_rows
from ..errors import DimensionError
from ..export import grid_csv, write_output
from ..utils import exit_codes, info

from time import perf_counter as time


@exit_codes
def region_grid(args):
    """Sample a two-criterion region and its independent box on a regular grid."""
    x1 = time()
    N = multi_index(args.n)
    if len(N) != 2:
        raise DimensionError(f"region grids are two-dimensional, got m = {len(N)}")
    k = multi_index(args.k, 2)
    H = multi_index(args.h, 2) if args.h else N

    scheme = Scheme(args.scheme)
    if scheme is Scheme.DIAGONAL:
        region = diagonal_region(N, H, k, args.beta, args.tolerance)
    else:
        region = allocation_region(AllocationSpec.from_name(scheme, N, H, args.beta), k)
    choice = Theorem1Choice.UPPER_ONLY if H == N else Theorem1Choice.THREE_BAND
    box = box_region(criteria(N, k, args.beta), choice, args.tolerance)

    points, member, g = region_grid_rows(region, args.resolution)
    _, member_box, _ = region_grid_rows(box, args.resolution)
    path = write_output(grid_csv(points, member, g, member_box=member_box), args.out)
    path and info(f"written: {path}")
    x2 = time()
    info(f"{points.shape[0]} grid points in {x2 - x1:.2f} seconds")
