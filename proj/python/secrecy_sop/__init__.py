"""Secrecy outage probability of backhaul-limited cognitive small cells."""

from ._core import (
    AsymptoticParams,
    DerivedParams,
    MeanPowersDb,
    NumericError,
    SystemConfig,
    ValidationError,
    cdf_gamma_sd_sts,
    cdf_gamma_se,
    cdf_gamma_tr,
    derive,
    derive_asymptotic,
    ei_neg,
    ei_neg_scaled,
    hyp2f1_n,
    load_config,
    pdf_gamma_se,
    simulate_sop,
    sop_ots,
    sop_ots_asymptotic,
    sop_sts,
    sop_sts_asymptotic,
    sweep_csv,
    xi_asymptotic,
)

__all__ = [name for name in dir() if not name.startswith("_")]
