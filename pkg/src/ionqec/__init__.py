"""Trapped-ion erasure-conversion QEC simulator.

Atomic scattering physics -> two-qubit gate error budgets -> circuit-level
rotated-surface-code memory experiments with heralded-erasure-aware
minimum-weight matching.
"""

from .channel import (NoisyCnotChannel, cnot_channel,
                      depolarizing_cnot_channel, erasure_cnot_channel)
from .circuit import (CircuitSchedule, NoiseModel, build_memory_circuit)
from .decoder import (LogicalEstimate, decode_batch, decode_shot,
                      logical_error_rate, wilson_interval)
from .engine import BatchResult, ShotRecord, run_batch, sample_shot
from .experiments import (ExperimentConfig, build_noise, compare_scan,
                          detuning_for_p2q, idle_scan, power_table,
                          rates_table, run_memory_point, synthetic_channel,
                          threshold_scan)
from .graph import DetectorGraph, build_detector_graph
from .engine import dump_shots, load_shots
from .layout import CodeLayout, build_layout
from .rates import (ErrorBudget, GateConfig, QubitKind, case_alignment,
                    error_budget, idle_error, laser_power)
from .species import (SpeciesParams, available_species, dump_registry,
                      load_registry, species_params, use_registry)
from .stats import (SlopeFit, ThresholdEstimate, estimate_threshold,
                    fit_effective_distance)

__all__ = [
    "NoisyCnotChannel", "cnot_channel", "depolarizing_cnot_channel",
    "erasure_cnot_channel", "CircuitSchedule", "NoiseModel",
    "build_memory_circuit", "LogicalEstimate", "decode_batch",
    "decode_shot", "logical_error_rate", "wilson_interval", "BatchResult",
    "ShotRecord", "run_batch", "sample_shot", "ExperimentConfig",
    "build_noise", "compare_scan", "detuning_for_p2q", "idle_scan",
    "power_table", "rates_table", "run_memory_point", "synthetic_channel",
    "threshold_scan", "DetectorGraph", "build_detector_graph",
    "CodeLayout", "build_layout", "dump_shots", "load_shots", "ErrorBudget", "GateConfig",
    "QubitKind", "case_alignment", "error_budget", "idle_error",
    "laser_power", "SpeciesParams", "available_species", "dump_registry",
    "load_registry", "species_params", "use_registry", "SlopeFit",
    "ThresholdEstimate", "estimate_threshold", "fit_effective_distance",
]

__version__ = "0.1.0"
