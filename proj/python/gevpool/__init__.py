"""Pooling diagnostics for spatial block maxima under scale-GEV trend models."""

from ._core import (
    AdjustMethod,
    AdjustedPValues,
    BivariateFamily,
    BivariateFit,
    BivariateSpec,
    BlockMaximaPanel,
    BootstrapConfig,
    DependenceKind,
    GevParams,
    MaxStableFamily,
    MaxStableFit,
    MaxStableSpec,
    PairTestRecord,
    PartnerDecision,
    PoolingReport,
    RegionalEstimate,
    ScaleGevFit,
    ScaleGevParams,
    Scenario,
    TestStatistic,
    __version__,
    adjust_bh,
    adjust_holm,
    adjust_im,
    bootstrap_global,
    bootstrap_pairwise,
    default_scenarios,
    effective_params,
    extremal_coefficient,
    fit_biv_ev,
    fit_max_stable,
    fit_pooled_scale_gev,
    fit_scale_gev,
    from_frechet,
    generate_scenario_data,
    gev_cdf,
    gev_log_density,
    gev_quantile,
    load_panel,
    local_rl,
    recommend,
    regional_rl_rp,
    rejections,
    select_biv_ev,
    select_max_stable,
    simulate_biv_ev,
    simulate_max_stable,
    to_frechet,
    validate_panel,
)

__all__ = [
    "AdjustMethod",
    "AdjustedPValues",
    "BivariateFamily",
    "BivariateFit",
    "BivariateSpec",
    "BlockMaximaPanel",
    "BootstrapConfig",
    "DependenceKind",
    "GevParams",
    "MaxStableFamily",
    "MaxStableFit",
    "MaxStableSpec",
    "PairTestRecord",
    "PartnerDecision",
    "PoolingReport",
    "RegionalEstimate",
    "ScaleGevFit",
    "ScaleGevParams",
    "Scenario",
    "TestStatistic",
    "__version__",
    "adjust_bh",
    "adjust_holm",
    "adjust_im",
    "bootstrap_global",
    "bootstrap_pairwise",
    "default_scenarios",
    "effective_params",
    "extremal_coefficient",
    "fit_biv_ev",
    "fit_max_stable",
    "fit_pooled_scale_gev",
    "fit_scale_gev",
    "from_frechet",
    "generate_scenario_data",
    "gev_cdf",
    "gev_log_density",
    "gev_quantile",
    "load_panel",
    "local_rl",
    "recommend",
    "regional_rl_rp",
    "rejections",
    "select_biv_ev",
    "select_max_stable",
    "simulate_biv_ev",
    "simulate_max_stable",
    "to_frechet",
    "validate_panel",
]
