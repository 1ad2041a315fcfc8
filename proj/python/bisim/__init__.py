"""Discrete-event comparison of security architectures for cloud-hosted BI."""

from bisim._core import (
    CalibrationParams,
    MetricsReport,
    ScenarioConfig,
    SimError,
    Topology,
    build_model_a,
    build_model_b,
    build_model_c_hybrid,
    default_scenario,
    entry_point_count,
    hotspot_nodes,
    load_scenario,
    reference_chain,
    run_scenario,
    tier_hop_count,
)

__all__ = [
    "CalibrationParams",
    "MetricsReport",
    "ScenarioConfig",
    "SimError",
    "Topology",
    "build_model_a",
    "build_model_b",
    "build_model_c_hybrid",
    "default_scenario",
    "entry_point_count",
    "hotspot_nodes",
    "load_scenario",
    "reference_chain",
    "run_scenario",
    "tier_hop_count",
]

__version__ = "0.1.0"
