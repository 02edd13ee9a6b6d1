"""Ion species parameter registry.

Measured atomic constants (lifetimes, branching fractions, transition
wavelengths) together with the exact geometric coefficients computed by the
scattering machinery. The registry is cross-checked at load time: the stored
c-coefficients must agree with geometric_coefficients(I, F0).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .angular import HalfInteger
from .scattering import geometric_coefficients

C_LIGHT = 299_792_458.0  # m/s
HBAR = 1.054_571_817e-34  # J s


def _omega_from_nm(wavelength_nm: float) -> float:
    return 2.0 * math.pi * C_LIGHT / (wavelength_nm * 1e-9)


@dataclass(frozen=True)
class SpeciesParams:
    """Atomic constants of one ion isotope.

    Frequencies are angular (rad/s): omega_eg (S1/2-P3/2), omega_em
    (D5/2-P3/2), omega_ed (D3/2-P3/2), omega_F (P3/2-P1/2 fine splitting).
    F0 is the hyperfine number of the metastable |0>; the ground clock qubit
    uses F = I -+ 1/2.
    """

    name: str
    nuclear_spin_twice: int
    F0: int
    tau_m: float  # D5/2 lifetime, s
    gamma: float  # P3/2 total decay rate, 1/s
    r1: float
    r2: float
    r3: float
    c0: float
    cz: float
    cxy: float
    c1: float
    c2: float
    cl: float
    omega_eg: float
    omega_em: float
    omega_ed: float
    omega_F: float

    @property
    def nuclear_spin(self) -> HalfInteger:
        return HalfInteger(self.nuclear_spin_twice)

    @property
    def branching(self) -> tuple[float, float, float]:
        return (self.r1, self.r2, self.r3)

    def omega_final(self, index: int) -> float:
        """P3/2 transition frequency to final manifold 1=S1/2, 2=D3/2, 3=D5/2."""
        return {1: self.omega_eg, 2: self.omega_ed, 3: self.omega_em}[index]

    def validate(self) -> None:
        if abs(self.r1 + self.r2 + self.r3 - 1.0) > 1e-6:
            raise ValueError(f"{self.name}: branching fractions do not sum to 1")
        for field in ("tau_m", "gamma", "omega_eg", "omega_em", "omega_ed", "omega_F"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{self.name}: {field} must be positive")
        if self.cz < 0:
            raise ValueError(f"{self.name}: cz must be non-negative")
        geo = geometric_coefficients(
            Fraction(self.nuclear_spin_twice, 2), self.F0
        ).as_floats()
        for key in ("c0", "cz", "cxy", "c1", "c2", "cl"):
            stored = getattr(self, key)
            computed = geo[key]
            if abs(stored - computed) > 1e-9 * max(1.0, abs(computed)):
                raise ValueError(
                    f"{self.name}: stored {key}={stored} disagrees with "
                    f"computed {computed}"
                )

    def to_dict(self) -> dict:
        return asdict(self)


def _builtin() -> dict[str, SpeciesParams]:
    ba_geo = geometric_coefficients(Fraction(1, 2), 2).as_floats()
    ca_geo = geometric_coefficients(Fraction(7, 2), 5).as_floats()
    ba = SpeciesParams(
        name="Ba133",
        nuclear_spin_twice=1,
        F0=2,
        tau_m=30.14,
        gamma=1.0 / 6.2615e-9,
        r1=0.7417,
        r2=0.0280,
        r3=0.2303,
        omega_eg=_omega_from_nm(455.4),
        omega_em=_omega_from_nm(614.2),
        omega_ed=_omega_from_nm(585.4),
        omega_F=_omega_from_nm(455.4) - _omega_from_nm(493.4),
        **ba_geo,
    )
    ca = SpeciesParams(
        name="Ca43",
        nuclear_spin_twice=7,
        F0=5,
        tau_m=1.16,
        gamma=1.0 / 6.924e-9,
        r1=0.9347,
        r2=0.0066,
        r3=0.0587,
        omega_eg=_omega_from_nm(393.4),
        omega_em=_omega_from_nm(854.2),
        omega_ed=_omega_from_nm(850.0),
        omega_F=_omega_from_nm(393.4) - _omega_from_nm(396.8),
        **ca_geo,
    )
    return {ba.name: ba, ca.name: ca}


_REGISTRY: dict[str, SpeciesParams] | None = None


def _registry() -> dict[str, SpeciesParams]:
    global _REGISTRY
    if _REGISTRY is None:
        reg = _builtin()
        for sp in reg.values():
            sp.validate()
        _REGISTRY = reg
    return _REGISTRY


def species_params(name: str) -> SpeciesParams:
    reg = _registry()
    if name not in reg:
        raise KeyError(
            f"unknown species {name!r}; available: {sorted(reg)}"
        )
    return reg[name]


def available_species() -> list[str]:
    return sorted(_registry())


def dump_registry(path: str) -> None:
    """Write the registry as a JSON document (one object per species)."""
    data = {name: sp.to_dict() for name, sp in _registry().items()}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def load_registry(path: str) -> dict[str, SpeciesParams]:
    """Load a species database from JSON, validating every record."""
    with open(path) as fh:
        data = json.load(fh)
    out = {}
    for name, fields in data.items():
        sp = SpeciesParams(**fields)
        if sp.name != name:
            raise ValueError(f"registry key {name!r} != record name {sp.name!r}")
        sp.validate()
        out[name] = sp
    return out


def use_registry(reg: dict[str, SpeciesParams]) -> None:
    """Replace the active registry (used by the --species-db CLI flag)."""
    global _REGISTRY
    _REGISTRY = dict(reg)
