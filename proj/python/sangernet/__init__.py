# Copyright 2026 The sangernet Authors
# SPDX-License-Identifier: Apache-2.0

"""Distributed Sanger's algorithm for PCA over networks."""

from ._sangernet import (
    SangernetError,
    avg_angle_error,
    center,
    consensus_deviation,
    covariance,
    dpgd_run,
    dsa_run,
    generate_gaussian,
    geometric_spectrum,
    gha_run,
    graph_edges,
    metropolis_weights,
    mixing_beta,
    orthogonal_iteration,
    read_matrix,
    run_config,
    sanger_direction,
    seqdistpm_run,
    step_size_bound,
    validate_config,
    write_binary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
