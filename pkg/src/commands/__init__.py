from .certify import certify
from .region_grid import region_grid
from .apriori import apriori
from .table1 import table1
from .size import size
from .simulate import simulate
from .options import multi_index, int_range
