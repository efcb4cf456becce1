"""Difference sets, representation functions and clique counts over finite abelian groups."""

from ._core import (
    DiffrepError,
    Group,
    Set,
    StepFunction,
    autocorrelate,
    centered_interval,
    check_basic_chain,
    continuous_t,
    corollary_bound,
    corollary_check,
    dense_bound,
    dense_bound_check,
    diff_set,
    energy,
    exhaustive_intopt,
    higher_rep_mass,
    interval_set,
    is_symmetric_with_zero,
    majorization_check,
    measure0_witness,
    mu,
    mu_k,
    norms,
    omega,
    omega_k_report,
    random_set,
    rep_table,
    replay,
    sidon,
    support_size,
    symmetric_sets,
    t_count,
    t_interval_closed_form,
    theorem_arbG_check,
    theorem_extD_check,
    theorem_fan_check,
    theorem_modp_check,
    verify_id_ax,
    verify_intopt,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
