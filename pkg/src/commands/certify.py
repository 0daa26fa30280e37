from .options import criteria_count, emit_json, multi_index
from ..allocations import AllocationSpec, Scheme
from ..certificates import (
    allocation_region, diagonal_region, joint_bound_diagonal, joint_bound_region_max,
)
from ..constants import DIMS_LIMIT
from ..errors import DomainError
from ..utils import exit_codes, info


@exit_codes
def certify(args):
    """Certify the individual and joint risks at an observed complexity."""
    m = criteria_count(args)
    N = multi_index(args.n, m)
    k = multi_index(args.k, m)
    H = multi_index(args.h, m) if args.h else N
    if not k.leq(N):
        raise DomainError(f"k exceeds N: {k} vs {N}")

    scheme = Scheme(args.scheme)
    if scheme is Scheme.DIAGONAL:
        region = diagonal_region(N, H, k, args.beta, args.tolerance)
        joint = joint_bound_diagonal(N, k, args.beta, args.tolerance)
    else:
        region = allocation_region(AllocationSpec.from_name(scheme, N, H, args.beta), k)
        joint = None
        if m <= DIMS_LIMIT:
            joint = joint_bound_region_max(region)
        else:
            info(f"joint bound skipped: region search supports m <= {DIMS_LIMIT}")

    payload = {"region": region.to_dict()}
    if joint is not None:
        payload["joint"] = joint.to_dict()
    emit_json(args, payload)
