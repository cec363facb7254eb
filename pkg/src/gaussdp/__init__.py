"""Noise calibration for Gaussian differential-privacy mechanisms.

Optimal and closed-form (eps, delta)-DP / (eps, delta)-pDP calibrations,
exact privacy profiles, the failure frontier of the classical calibrations,
privacy-definition conversions, composition accounting, and seeded
mechanism/experiment runners.
"""

__version__ = "0.1.0"

from .calib import (
    BracketError,
    CalibrationResult,
    ConvergenceError,
    MECHANISM_ORDER,
    Mechanism,
    NoiseScale,
    PrivacyBudget,
    Sensitivity,
    achieves_dp,
    calibrate,
    dp_delta_profile,
    dp_opt_zero_eps,
    failure_threshold,
    pdp_delta_profile,
    sigma_dwork2006,
    sigma_dwork2014,
    sigma_mech1,
    sigma_mech2,
    sigma_mech3,
    sigma_mech4,
    solve_dp_opt,
    solve_pdp_opt,
)
from .compose import (
    CompositionTerm,
    composed_dp_delta,
    composed_pdp_delta,
    effective_unit_sigma,
)
from .mech import (
    ExperimentReport,
    NoisySample,
    QueryAnswer,
    histogram_experiment,
    mean_experiment,
    privacy_loss_sample,
    privacy_loss_tails,
    randomize,
    read_categorical_csv,
    sample_noise,
    synthetic_census_rows,
)
from .relations import (
    McdpParams,
    ZcdpParams,
    dp_to_pdp,
    mcdp_to_pdp_delta,
    pdp_to_dp,
    sigma_via_cdp_route,
    zcdp_of_sigma,
)
from . import specfun

__all__ = [
    "BracketError",
    "CalibrationResult",
    "CompositionTerm",
    "ConvergenceError",
    "ExperimentReport",
    "MECHANISM_ORDER",
    "McdpParams",
    "Mechanism",
    "NoiseScale",
    "NoisySample",
    "PrivacyBudget",
    "QueryAnswer",
    "Sensitivity",
    "ZcdpParams",
    "achieves_dp",
    "calibrate",
    "composed_dp_delta",
    "composed_pdp_delta",
    "dp_delta_profile",
    "dp_opt_zero_eps",
    "dp_to_pdp",
    "effective_unit_sigma",
    "failure_threshold",
    "histogram_experiment",
    "mcdp_to_pdp_delta",
    "mean_experiment",
    "pdp_delta_profile",
    "pdp_to_dp",
    "privacy_loss_sample",
    "privacy_loss_tails",
    "randomize",
    "read_categorical_csv",
    "sample_noise",
    "sigma_dwork2006",
    "sigma_dwork2014",
    "sigma_mech1",
    "sigma_mech2",
    "sigma_mech3",
    "sigma_mech4",
    "sigma_via_cdp_route",
    "solve_dp_opt",
    "solve_pdp_opt",
    "specfun",
    "synthetic_census_rows",
    "zcdp_of_sigma",
]
