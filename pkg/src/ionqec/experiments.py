"""Experiment orchestration: noise-model construction from atomic physics,
memory-experiment runs, and the scans behind the report tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .channel import (NoisyCnotChannel, cnot_channel,
                      depolarizing_cnot_channel, erasure_cnot_channel)
from .circuit import NoiseModel, build_memory_circuit
from .decoder import LogicalEstimate, logical_error_rate
from .engine import run_batch
from .graph import build_detector_graph
from .layout import build_layout
from .rates import (GateConfig, QubitKind, case_alignment, error_budget,
                    idle_error, laser_power)
from .species import species_params


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment parameters (JSON round-trippable)."""

    species: str = "Ba133"
    qubit: str = "metastable"          # "ground" | "metastable"
    case: str = "I"                    # alignment for compare scans
    distances: tuple = (5, 7)
    shots: int = 20000
    master_seed: int = 2024
    p_meas: float = 1e-4
    cycle_time: float = 3e-3           # seconds per QEC round
    include_idle: bool = False
    grid: tuple = ()                   # p2q grid; () = default
    out: str = "out"

    def __post_init__(self):
        try:
            species_params(self.species)
        except KeyError as err:
            raise ValueError(str(err)) from err
        if self.qubit not in ("ground", "metastable"):
            raise ValueError("qubit must be ground or metastable")
        if self.case not in ("I", "II", "III"):
            raise ValueError("case must be I, II, or III")
        if not self.distances:
            raise ValueError("need at least one code distance")
        for d in self.distances:
            if d % 2 == 0 or d < 3:
                raise ValueError("distances must be odd and >= 3")
        if self.shots < 1000:
            raise ValueError("threshold runs need >= 1000 shots")
        if self.p_meas < 0.0 or self.p_meas >= 1.0:
            raise ValueError("p_meas must lie in [0, 1)")
        if self.cycle_time <= 0.0:
            raise ValueError("cycle_time must be positive")

    def to_dict(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["distances"] = list(self.distances)
        d["grid"] = list(self.grid)
        return d

    @staticmethod
    def from_dict(d):
        d = dict(d)
        if "distances" in d:
            d["distances"] = tuple(d["distances"])
        if "grid" in d:
            d["grid"] = tuple(d["grid"])
        return ExperimentConfig(**d)

    @staticmethod
    def from_json(text):
        return ExperimentConfig.from_dict(json.loads(text))

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        if "distances" in kw:
            kw["distances"] = tuple(kw["distances"])
        if "grid" in kw:
            kw["grid"] = tuple(kw["grid"])
        return replace(self, **kw)


def _kind(qubit: str) -> QubitKind:
    return QubitKind.GROUND if qubit == "ground" else QubitKind.METASTABLE


def default_p2q_grid(qubit: str, n: int = 6) -> tuple:
    """Log-spaced two-qubit error grid bracketing the expected crossings."""
    if qubit == "ground":
        return tuple(np.logspace(np.log10(8e-3), np.log10(2.2e-2), n))
    return tuple(np.logspace(np.log10(1.8e-2), np.log10(4.6e-2), n))


def _p2q_at(sp, kind, delta, cfg) -> float:
    """Gate error at a detuning; inf where the budget leaves [0, 1]."""
    try:
        return error_budget(sp, kind, delta, cfg).p2q
    except ValueError:
        return np.inf


def _ground_min_detuning(sp, cfg) -> float:
    """Detuning minimizing the ground-qubit error (golden-section)."""
    lo = 1e-4 * sp.omega_F
    hi = 0.9999 * sp.omega_F
    f = lambda d: _p2q_at(sp, QubitKind.GROUND, d, cfg)
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - phi * (b - a)
    c2 = a + phi * (b - a)
    f1, f2 = f(c1), f(c2)
    for _ in range(200):
        if f1 < f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - phi * (b - a)
            f1 = f(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + phi * (b - a)
            f2 = f(c2)
    return 0.5 * (a + b)


def detuning_for_p2q(species: str, qubit: str, p2q: float,
                     cfg: GateConfig = GateConfig()) -> float:
    """Invert the error model: detuning whose budget has the given p2q.

    Ground qubits are solved on the small-detuning branch below the error
    minimum; metastable qubits on their monotone branch.
    """
    sp = species_params(species)
    kind = _kind(qubit)
    if qubit == "ground":
        lo = 1e-6 * sp.omega_F
        hi = _ground_min_detuning(sp, cfg)
        pmin = _p2q_at(sp, kind, hi, cfg)
        if p2q < pmin:
            raise ValueError(
                f"p2q={p2q:g} below the ground-qubit minimum {pmin:g}")
    else:
        lo = 1e-7 * sp.omega_F
        hi = 0.999 * min(sp.omega_eg, sp.omega_em, sp.omega_ed,
                         10.0 * sp.omega_F)
        if _p2q_at(sp, kind, hi, cfg) > p2q:
            raise ValueError(f"p2q={p2q:g} below metastable reach")
    f = lambda d: _p2q_at(sp, kind, d, cfg) - p2q
    flo = f(lo)
    fhi = f(hi)
    if flo * fhi > 0:
        raise ValueError("p2q target not bracketed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def build_noise(species: str, qubit: str, delta: float, p_meas: float,
                include_idle: bool, cycle_time: float,
                cfg: GateConfig = GateConfig()) -> NoiseModel:
    """Physical noise model: CNOT channel from the scattering budget, plus
    measurement flips and (metastable only) idle erasure per CNOT layer."""
    sp = species_params(species)
    bud = error_budget(sp, _kind(qubit), delta, cfg)
    ch = cnot_channel(bud, bud)
    p_idle_layer = 0.0
    if include_idle and qubit == "metastable":
        p_idle_layer = idle_error(cycle_time, sp.tau_m) / 4.0
    return NoiseModel(cnot_channel=ch, p_meas=p_meas,
                      p_idle_per_layer=p_idle_layer)


def run_memory_point(noise: NoiseModel, distance: int, rounds: int,
                     shots: int, seed: int) -> LogicalEstimate:
    """Build, sample, and decode one memory experiment."""
    layout = build_layout(distance)
    schedule = build_memory_circuit(layout, rounds, noise)
    graph = build_detector_graph(schedule)
    batch = run_batch(schedule, shots, seed)
    return logical_error_rate(graph, batch)


def _point_seed(master_seed: int, distance: int, idx: int) -> int:
    return (master_seed + 7919 * distance + 104729 * idx) & 0xFFFFFFFFFFFF


THRESHOLD_COLUMNS = ("d", "delta_g", "delta_m", "p2q_g", "p2q_m", "p_L",
                     "ci_low", "ci_high", "shots", "seed")


def threshold_scan(config: ExperimentConfig):
    """Threshold rows for one species/qubit kind over the p2q grid."""
    grid = config.grid or default_p2q_grid(config.qubit)
    rows = []
    curves = {d: [] for d in config.distances}
    for d in config.distances:
        for i, p2q in enumerate(grid):
            delta = detuning_for_p2q(config.species, config.qubit, p2q)
            noise = build_noise(config.species, config.qubit, delta,
                                config.p_meas, config.include_idle,
                                config.cycle_time)
            seed = _point_seed(config.master_seed, d, i)
            est = run_memory_point(noise, d, d, config.shots, seed)
            ground = config.qubit == "ground"
            rows.append({
                "d": d,
                "delta_g": delta if ground else "",
                "delta_m": "" if ground else delta,
                "p2q_g": p2q if ground else "",
                "p2q_m": "" if ground else p2q,
                "p_L": est.rate,
                "ci_low": est.ci95[0],
                "ci_high": est.ci95[1],
                "shots": config.shots,
                "seed": seed,
            })
            curves[d].append((p2q, est.rate))
    return rows, curves


COMPARE_COLUMNS = ("d", "delta_g", "delta_m", "p2q_g", "p2q_m",
                   "p_L_ground", "ci_low_g", "ci_high_g",
                   "p_L_meta", "ci_low_m", "ci_high_m", "shots", "seed")


def compare_scan(config: ExperimentConfig):
    """Ground-vs-metastable comparison under case II or III alignment.

    The grid is interpreted as ground-qubit p2q targets; the metastable
    detuning follows from the case alignment at matched laser parameters.
    """
    if config.case not in ("II", "III"):
        raise ValueError("compare requires case II or III")
    sp = species_params(config.species)
    grid = config.grid or default_p2q_grid("ground")
    rows = []
    curves = {"ground": {d: [] for d in config.distances},
              "metastable": {d: [] for d in config.distances}}
    for d in config.distances:
        for i, p2q_g in enumerate(grid):
            delta_g = detuning_for_p2q(config.species, "ground", p2q_g)
            align = case_alignment(config.case, sp, delta_g)
            delta_m = align.delta_m
            bud_m = error_budget(sp, QubitKind.METASTABLE, delta_m,
                                 GateConfig())
            p2q_m = bud_m.p2q
            seed = _point_seed(config.master_seed, d, i)
            ests = {}
            for qubit, delta in (("ground", delta_g),
                                 ("metastable", delta_m)):
                noise = build_noise(config.species, qubit, delta,
                                    config.p_meas, config.include_idle,
                                    config.cycle_time)
                ests[qubit] = run_memory_point(noise, d, d, config.shots,
                                               seed)
                curves[qubit][d].append(
                    (p2q_g, ests[qubit].rate))
            rows.append({
                "d": d, "delta_g": delta_g, "delta_m": delta_m,
                "p2q_g": p2q_g, "p2q_m": p2q_m,
                "p_L_ground": ests["ground"].rate,
                "ci_low_g": ests["ground"].ci95[0],
                "ci_high_g": ests["ground"].ci95[1],
                "p_L_meta": ests["metastable"].rate,
                "ci_low_m": ests["metastable"].ci95[0],
                "ci_high_m": ests["metastable"].ci95[1],
                "shots": config.shots, "seed": seed,
            })
    return rows, curves


IDLE_COLUMNS = ("d", "p_idle", "p2q", "p_L", "ci_low", "ci_high", "shots",
                "seed")

IDLE_P2Q = 1.14e-3


def idle_scan(config: ExperimentConfig, idle_grid=None):
    """Idle-erasure sweep at fixed two-qubit error (metastable qubits).

    p_idle is the idling error rate applied to every qubit before each of
    the 4 CNOT layers, i.e. the physical idle_error(T)/4.
    """
    sp = species_params(config.species)
    base = idle_error(config.cycle_time, sp.tau_m) / 4.0
    if idle_grid is None:
        idle_grid = tuple(np.logspace(np.log10(max(base, 1e-5)),
                                      np.log10(0.12), 8))
    delta = detuning_for_p2q(config.species, "metastable", IDLE_P2Q)
    bud = error_budget(sp, QubitKind.METASTABLE, delta, GateConfig())
    ch = cnot_channel(bud, bud)
    rows = []
    curves = {d: [] for d in config.distances}
    for d in config.distances:
        for i, p_idle in enumerate(idle_grid):
            noise = NoiseModel(cnot_channel=ch, p_meas=config.p_meas,
                               p_idle_per_layer=p_idle)
            seed = _point_seed(config.master_seed, d, i)
            est = run_memory_point(noise, d, d, config.shots, seed)
            rows.append({
                "d": d, "p_idle": p_idle, "p2q": bud.p2q,
                "p_L": est.rate, "ci_low": est.ci95[0],
                "ci_high": est.ci95[1], "shots": config.shots,
                "seed": seed,
            })
            curves[d].append((p_idle, est.rate))
    return rows, curves


def synthetic_channel(kind: str, p: float) -> NoisyCnotChannel:
    """Synthetic per-gate noise: 'pauli' (depolarizing) or 'erasure'."""
    if kind == "pauli":
        return depolarizing_cnot_channel(p)
    if kind == "erasure":
        return erasure_cnot_channel(p)
    raise ValueError("synthetic channel kind must be pauli or erasure")


RATES_COLUMNS = ("qubit", "delta_frac", "p_xy", "p_z", "p_leak",
                 "p_erasure", "p_total")


def rates_table(species: str, n: int = 60,
                cfg: GateConfig = GateConfig()):
    """Gate-error budget versus detuning for both qubit kinds."""
    sp = species_params(species)
    rows = []
    for qubit in ("ground", "metastable"):
        kind = _kind(qubit)
        if qubit == "ground":
            fracs = np.linspace(0.02, 0.98, n)
            deltas = fracs * sp.omega_F
        else:
            hi = 0.98 * min(sp.omega_eg, sp.omega_em, sp.omega_ed,
                            10.0 * sp.omega_F) / sp.omega_F
            fracs = np.logspace(np.log10(0.02), np.log10(hi), n)
            deltas = fracs * sp.omega_F
        for frac, delta in zip(fracs, deltas):
            bud = error_budget(sp, kind, delta, cfg)
            rows.append({
                "qubit": qubit, "delta_frac": frac,
                "p_xy": bud.p_xy, "p_z": bud.p_z,
                "p_leak": bud.p_leak_total, "p_erasure": bud.p_erasure,
                "p_total": bud.p_total,
            })
    return rows


POWER_COLUMNS = ("qubit", "delta_frac", "power_W")


def power_table(species: str, omega_rabi: float = 2.0 * np.pi * 0.25e6,
                waist: float = 20e-6, n: int = 50):
    """Laser power needed for a fixed two-photon Rabi rate vs detuning."""
    sp = species_params(species)
    rows = []
    for qubit in ("ground", "metastable"):
        kind = _kind(qubit)
        fracs = np.linspace(0.05, 0.95, n)
        for frac in fracs:
            watts = laser_power(sp, kind, frac * sp.omega_F, omega_rabi,
                                waist)
            rows.append({"qubit": qubit, "delta_frac": frac,
                         "power_W": watts})
    return rows
