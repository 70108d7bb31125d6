"""Hypergeometric functions of a matrix argument and the matrix-variate
distributions built from them."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DimensionError,
    DivergenceError,
    DomainError,
    PoleError,
    ResourceError,
    UnsupportedCaseError,
)
from .families import FAMILIES, from_spec  # noqa: E402
from .hypergeom import HypergeomSpec, TruncationPolicy, hyperg_eigen, hyperg_matrix, hyperg_scalar  # noqa: E402
from .partitions import Partition, enumerate_partitions  # noqa: E402
from .samplers import RngStream  # noqa: E402
from .zonal import build_zonal_table, zonal_eval  # noqa: E402

__all__ = [
    "__version__",
    "DimensionError", "DivergenceError", "DomainError", "PoleError", "ResourceError", "UnsupportedCaseError",
    "FAMILIES", "from_spec",
    "HypergeomSpec", "TruncationPolicy", "hyperg_eigen", "hyperg_matrix", "hyperg_scalar",
    "Partition", "enumerate_partitions", "RngStream",
    "build_zonal_table", "zonal_eval",
]
