"""Downlink SINR outage: analytic models and hexagonal Monte Carlo."""

from ._cellout import (
    ChannelParams,
    ConfigError,
    CoverageStatus,
    DistanceProfile,
    DomainError,
    Error,
    FluidParams,
    ExperimentConfig,
    ModelViolationError,
    NetworkLayout,
    OutageCurve,
    OutageMode,
    Point,
    RangeError,
    YfMoments,
    build_hex_network,
    coverage_radius,
    db_to_linear,
    distance_profile,
    empirical_outage,
    g_factor_discrete,
    g_fluid,
    h_function,
    linear_to_db,
    mean_capacity,
    outage_curve,
    outage_probability,
    parse_config,
    q_function,
    ring_positions,
    run_experiment,
    simulate,
    sinr_at_outage,
    y_factor_discrete,
    y_fluid,
    yf_moments_discrete,
    yf_moments_fluid,
)

__all__ = [name for name in dir() if not name.startswith("_")]
