"""Per-gate error budgets from atomic constants and laser detuning.

All rates are per qubit per two-qubit gate unless stated otherwise. The
electric-field amplitude cancels between the scattering rates and the gate
time, so budgets depend only on the detuning (plus eta and K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .scattering import Manifold, orbital_coefficients
from .species import HBAR, SpeciesParams

C_LIGHT = 299_792_458.0


class QubitKind(Enum):
    GROUND = "ground"
    METASTABLE = "metastable"


@dataclass(frozen=True)
class GateConfig:
    """Moelmer-Soerensen gate parameters."""

    eta: float = 0.05
    K: int = 1

    def __post_init__(self):
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.K < 1:
            raise ValueError("K must be a positive integer")

    @property
    def time_prefactor(self) -> float:
        """pi*sqrt(K)/(2*eta); gate time is this over the Rabi frequency."""
        return math.pi * math.sqrt(self.K) / (2.0 * self.eta)


@dataclass(frozen=True)
class ErrorBudget:
    """Scattering error rates of one qubit during one two-qubit gate."""

    qubit_kind: QubitKind
    detuning: float
    p_xy: float
    p_z: float
    p_leak_total: float
    p_erasure: float

    def __post_init__(self):
        for name in ("p_xy", "p_z", "p_leak_total", "p_erasure"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} out of [0, 1]")
        if self.p_erasure > self.p_leak_total + 1e-15:
            raise ValueError("p_erasure exceeds p_leak_total")
        if self.qubit_kind is QubitKind.GROUND and self.p_erasure != 0.0:
            raise ValueError("ground qubits have no erasure conversion")

    @property
    def p_leak_undetected(self) -> float:
        return self.p_leak_total - self.p_erasure

    @property
    def p_total(self) -> float:
        return self.p_z + self.p_xy + self.p_leak_total

    @property
    def p2q(self) -> float:
        """Combined error rate of a two-qubit gate: 2p - p^2."""
        p = self.p_total
        return 2.0 * p - p * p

    @staticmethod
    def zero(qubit_kind: QubitKind = QubitKind.GROUND) -> "ErrorBudget":
        return ErrorBudget(qubit_kind, math.inf, 0.0, 0.0, 0.0, 0.0)


def branching_primed(
    species: SpeciesParams, detuning: float
) -> tuple[float, float, float]:
    """Detuning-dependent branching fractions r_i' of the P3/2 decay.

    The scattered-photon frequency to final manifold f is omega_f - Delta,
    giving each partial rate a cubic suppression (1 - Delta/omega_f)^3.
    """
    if detuning < 0:
        raise ValueError("detuning must be non-negative")
    out = []
    for i in (1, 2, 3):
        omega = species.omega_final(i)
        if detuning >= omega:
            raise ValueError(
                f"detuning {detuning:.3e} >= transition frequency {omega:.3e}; "
                "scattering model invalid"
            )
        out.append((1.0 - detuning / omega) ** 3 * species.branching[i - 1])
    return tuple(out)


def rabi_frequency(
    qubit_kind: QubitKind, species: SpeciesParams, g: float, detuning: float
) -> float:
    """Two-photon Rabi frequency at one-photon coupling g."""
    if qubit_kind is QubitKind.GROUND:
        wf = species.omega_F
        if detuning == 0.0 or detuning == wf:
            raise ValueError("singular ground-qubit detuning")
        return (g * g / 3.0) * abs(wf / ((wf - detuning) * detuning))
    if detuning == 0.0:
        raise ValueError("singular metastable detuning")
    return species.c0 * g * g / abs(detuning)


def gate_time(config: GateConfig, rabi: float) -> float:
    if rabi <= 0:
        raise ValueError("rabi must be positive")
    return config.time_prefactor / rabi


def error_budget(
    species: SpeciesParams,
    qubit_kind: QubitKind,
    detuning: float,
    config: GateConfig = GateConfig(),
) -> ErrorBudget:
    """Closed-form scattering error budget of one qubit per two-qubit gate."""
    r1p, r2p, r3p = branching_primed(species, detuning)
    gamma = species.gamma
    pref = config.time_prefactor
    if qubit_kind is QubitKind.GROUND:
        wf = species.omega_F
        if detuning == 0.0 or detuning == wf:
            raise ValueError("singular ground-qubit detuning")
        d = detuning
        common = (2.0 / 3.0) * pref * gamma
        p_xy = common * r1p * abs(wf / ((wf - d) * d))
        p_leak = (
            common
            / abs(d)
            * (
                r1p * abs(wf / (wf - d))
                + 6.0 * r2p * abs((wf * wf - 2.0 * wf * d + 6.0 * d * d) / ((wf - d) * wf))
                + 6.0 * r3p * abs((wf - d) / wf)
            )
        )
        return ErrorBudget(qubit_kind, detuning, p_xy, 0.0, p_leak, 0.0)

    if detuning == 0.0:
        raise ValueError("singular metastable detuning")
    scale = pref * gamma / (species.c0 * abs(detuning))
    p_z = scale * species.cz * r3p
    p_xy = scale * species.cxy * r3p
    p_erasure = scale * (species.c1 * r1p + species.c2 * r2p)
    p_leak = p_erasure + scale * species.cl * r3p
    return ErrorBudget(qubit_kind, detuning, p_xy, p_z, p_leak, p_erasure)


def erasure_conversion_rate(
    species: SpeciesParams, budget: ErrorBudget
) -> tuple[float, float]:
    """(Re, Re0): erasure fraction of the budget, and its zero-detuning limit."""
    if budget.qubit_kind is not QubitKind.METASTABLE:
        raise ValueError("erasure conversion applies to metastable qubits only")
    re = budget.p_erasure / budget.p_total
    c3 = species.cz + species.cxy + species.cl
    num = species.c1 * species.r1 + species.c2 * species.r2
    re0 = num / (num + c3 * species.r3)
    return re, re0


def idle_error(t: float, tau_m: float) -> float:
    """Probability that a metastable qubit decays while idling for time t."""
    if t < 0 or tau_m <= 0:
        raise ValueError("require t >= 0 and tau_m > 0")
    return -math.expm1(-t / tau_m)


@dataclass(frozen=True)
class CaseAlignment:
    """Metastable operating point matched to a ground operating point."""

    case: str
    delta_g: float
    delta_m: float
    field_ratio: float  # E_m / E_g


def _case2_detuning_ratio(species: SpeciesParams, delta_g: float) -> float:
    return (
        2.0
        * species.c0
        * (species.r3 / species.r1)
        * abs(1.0 - delta_g / species.omega_F)
        * (species.omega_eg / species.omega_em) ** 3
    )


def case_alignment(
    case: str,
    species: SpeciesParams,
    delta_g: float,
    config: GateConfig = GateConfig(),
) -> CaseAlignment:
    """Align metastable detuning/field to a ground detuning for comparison.

    Case I: equal per-qubit error rates p_m(Delta_m) = p_g(Delta_g), solved
    by bisection (p_m is strictly decreasing). Case II: equal fields and
    Rabi frequencies, fixing the detuning ratio. Case III: equal detunings
    and Rabi frequencies, fixing the field ratio.
    """
    if not 0.0 < delta_g < species.omega_F:
        raise ValueError("require 0 < delta_g < omega_F")
    case = case.upper()
    if case == "II":
        return CaseAlignment(
            case, delta_g, delta_g * _case2_detuning_ratio(species, delta_g), 1.0
        )
    if case == "III":
        ratio = 1.0 / math.sqrt(_case2_detuning_ratio(species, delta_g))
        return CaseAlignment(case, delta_g, delta_g, ratio)
    if case != "I":
        raise ValueError(f"unknown case {case!r}")

    target = error_budget(species, QubitKind.GROUND, delta_g, config).p_total

    def f(delta_m: float) -> float:
        return (
            error_budget(species, QubitKind.METASTABLE, delta_m, config).p_total
            - target
        )

    omega_min = min(species.omega_final(i) for i in (1, 2, 3))
    lo = 1e-4 * species.omega_F
    hi = min(10.0 * species.omega_F, 0.999 * omega_min)
    flo, fhi = f(lo), f(hi)
    if flo < 0 or fhi > 0:
        raise ValueError("case I root not bracketed; ground error out of range")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if (hi - lo) <= 1e-13 * hi:
            break
    delta_m = 0.5 * (lo + hi)
    # field ratio that also matches the Rabi frequencies at this alignment
    ratio2 = (delta_m / delta_g) / _case2_detuning_ratio(species, delta_g)
    return CaseAlignment(case, delta_g, delta_m, math.sqrt(ratio2))


def laser_power(
    species: SpeciesParams,
    qubit_kind: QubitKind,
    detuning: float,
    rabi: float,
    waist: float,
) -> float:
    """Power per Raman beam (watts) needed for the given Rabi frequency."""
    if waist <= 0 or rabi <= 0:
        raise ValueError("waist and rabi must be positive")
    gamma = species.gamma
    if qubit_kind is QubitKind.GROUND:
        wf = species.omega_F
        if detuning == 0.0 or detuning == wf:
            raise ValueError("singular ground-qubit detuning")
        k, alpha = orbital_coefficients(Manifold.S12)
        alpha_over_k = float(alpha / k)
        return (
            alpha_over_k
            * HBAR
            * species.omega_eg**3
            * waist**2
            / (C_LIGHT**2 * species.r1 * gamma * wf)
            * abs(detuning * (wf - detuning))
            * rabi
        )
    if detuning == 0.0:
        raise ValueError("singular metastable detuning")
    k, alpha = orbital_coefficients(Manifold.D52)
    alpha_over_k = float(alpha / k)
    return (
        alpha_over_k
        * HBAR
        * species.omega_em**3
        * waist**2
        / (3.0 * species.c0 * C_LIGHT**2 * species.r3 * gamma)
        * abs(detuning)
        * rabi
    )


def rydberg_reference(gamma_r: float, omega_max: float) -> float:
    """Minimal two-qubit-gate error of the Rydberg benchmark: 2.947*gamma/Omega."""
    if gamma_r < 0 or omega_max <= 0:
        raise ValueError("require gamma_r >= 0 and omega_max > 0")
    return 2.947 * gamma_r / omega_max
