"""Burnside process samplers for integer partitions and contingency tables."""

from ._burnside import (
    InputError,
    Partition,
    ResourceLimitError,
    RngStream,
    arcsine_pmf,
    chi_square,
    children_income_table,
    conjugation_lumped_kernel,
    enumerate_partitions,
    exact_binary_kernel,
    fisher_yates_sample,
    hair_eye_table,
    limit_law_check,
    lumped_step,
    reflected_step,
    table_lumped_step,
    transpose,
    tv_mixing_profile,
    unlumped_step,
    volume_estimate,
)

__all__ = [
    "InputError",
    "Partition",
    "ResourceLimitError",
    "RngStream",
    "arcsine_pmf",
    "chi_square",
    "children_income_table",
    "conjugation_lumped_kernel",
    "enumerate_partitions",
    "exact_binary_kernel",
    "fisher_yates_sample",
    "hair_eye_table",
    "limit_law_check",
    "lumped_step",
    "reflected_step",
    "table_lumped_step",
    "transpose",
    "tv_mixing_profile",
    "unlumped_step",
    "volume_estimate",
]
