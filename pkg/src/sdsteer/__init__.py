"""Subchannel discrimination as a witness of EPR steering, simulated with numpy.

The modules mirror the workflow: :mod:`quantum` holds states and measures,
:mod:`channels` builds the subchannel families, :mod:`protocols` computes
success probabilities, :mod:`steering` classifies Werner states,
:mod:`experiment` emulates photon counts and :mod:`waveplates` checks the
optical gate recipes.
"""

from .channels import (
    SUPPORTED_SETTINGS,
    build_bell_diagonal_family,
    build_family,
    check_family,
    design_conditions_check,
    validate_channel,
)
from .experiment import estimate_eta_by_fidelity, simulate_run
from .protocols import (
    GuessStrategy,
    alice_directions,
    bell_diagonal_bound,
    bell_diagonal_success,
    single_qubit_bound,
    single_qubit_bound_grid_oracle,
    single_qubit_success,
    two_qubit_success,
)
from .quantum import (
    NotPhysicalError,
    bell_diagonal_state,
    chsh_parameter,
    concurrence,
    fidelity,
    werner_state,
)
from .steering import classify_werner, lhs_bound, sweep_werner
from .waveplates import compile_plates, distance_up_to_phase, verify_recipes

__all__ = [
    "SUPPORTED_SETTINGS",
    "GuessStrategy",
    "NotPhysicalError",
    "alice_directions",
    "bell_diagonal_bound",
    "bell_diagonal_state",
    "bell_diagonal_success",
    "build_bell_diagonal_family",
    "build_family",
    "check_family",
    "chsh_parameter",
    "classify_werner",
    "compile_plates",
    "concurrence",
    "design_conditions_check",
    "distance_up_to_phase",
    "estimate_eta_by_fidelity",
    "fidelity",
    "lhs_bound",
    "simulate_run",
    "single_qubit_bound",
    "single_qubit_bound_grid_oracle",
    "single_qubit_success",
    "sweep_werner",
    "two_qubit_success",
    "validate_channel",
    "verify_recipes",
    "werner_state",
]
