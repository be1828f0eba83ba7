"""Periodic Schur processes, cylindric partitions and their bulk limits."""

from . import bulk, cylindric, kernels, nekrasov_okounkov, partitions, process, qseries, symfunc
from .bulk import (
    BulkPoint,
    DomainError,
    GammaCurve,
    bulk_kernel_t31,
    cylindric_bulk_kernel,
    cylindric_slow_kernel,
    no_bulk_density,
    no_bulk_kernel,
    sine_extension_kernel,
    solve_phi,
)
from .cylindric import (
    CylindricPartition,
    Profile,
    count_cylindric,
    enumerate_cylindric,
    generating_function_formula,
    parse_profile,
    profile_from_shape,
    to_process_spec,
)
from .kernels import ContourSpec, PrecisionError, correlation_det, correlation_unmixed, kernel
from .nekrasov_okounkov import NOSpec, hook_identity_sides, no_weight
from .partitions import Partition
from .process import ProcessSpec, correlation_oracle, parse_process_spec, partition_function_formula
from .symfunc import parse_specialization, rho, single, tp, trivial

__version__ = "0.1.0"
