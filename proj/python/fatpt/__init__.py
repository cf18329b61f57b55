"""Dimensions of plane-curve linear systems with assigned multiple points."""

from ._core import (
    DEFAULT_PRIME,
    ConfigError,
    ConstructionError,
    DomainError,
    InapplicableError,
    certify,
    chi,
    chi_gap,
    conditions_count,
    corollary_nonspecial,
    cremona_standardize,
    expected_dim,
    mu_bound,
    rank,
    rational_rank,
    reduce,
    ruled_chi,
    upper_bound,
)

__all__ = [
    "DEFAULT_PRIME",
    "ConfigError",
    "ConstructionError",
    "DomainError",
    "InapplicableError",
    "certify",
    "chi",
    "chi_gap",
    "conditions_count",
    "corollary_nonspecial",
    "cremona_standardize",
    "expected_dim",
    "mu_bound",
    "rank",
    "rational_rank",
    "reduce",
    "ruled_chi",
    "upper_bound",
]
