"""Rotated surface-code layout and CNOT schedule.

Coordinates: data qubits at odd (x, y) with x, y in 1..2d-1; ancillas on the
even checkerboard. Checkerboard parity t = ((x+y)/2) mod 2 assigns X type to
t=0 and Z type to t=1. Weight-2 Z plaquettes live on the left/right edges
and weight-2 X plaquettes on the top/bottom edges, so Z_L is a horizontal
data row and X_L a vertical data column.

CNOT order within a round (offsets from the ancilla):
  X ancilla (control): (1,1), (-1,1), (1,-1), (-1,-1)
  Z ancilla (target):  (1,1), (1,-1), (-1,1), (-1,-1)
The last two offsets of each type are collinear perpendicular to the logical
operator that type's hook errors could extend (horizontal pair for X hooks,
vertical pair for Z hooks), so mid-round ancilla faults cost two time steps
of the matching graph but only one unit of code distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

X_OFFSETS = ((1, 1), (-1, 1), (1, -1), (-1, -1))
Z_OFFSETS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

Coord = tuple[int, int]


@dataclass(frozen=True)
class Plaquette:
    ancilla: Coord
    basis: str  # "X" or "Z"
    # data coordinate per schedule step; None = idle step (boundary plaquette)
    steps: tuple[Coord | None, Coord | None, Coord | None, Coord | None]

    @property
    def data(self) -> tuple[Coord, ...]:
        return tuple(c for c in self.steps if c is not None)

    @property
    def weight(self) -> int:
        return len(self.data)


@dataclass(frozen=True)
class CodeLayout:
    distance: int
    data_qubits: tuple[Coord, ...]
    z_plaquettes: tuple[Plaquette, ...]
    x_plaquettes: tuple[Plaquette, ...]
    logical_z_support: tuple[Coord, ...]
    logical_x_support: tuple[Coord, ...]
    qubit_index: dict[Coord, int] = field(hash=False, compare=False, default_factory=dict)

    @property
    def n_qubits(self) -> int:
        return len(self.qubit_index)


def build_layout(d: int) -> CodeLayout:
    if d < 3 or d % 2 == 0:
        raise ValueError("distance must be an odd integer >= 3")
    data = tuple((x, y) for y in range(1, 2 * d, 2) for x in range(1, 2 * d, 2))
    data_set = set(data)

    zs, xs = [], []
    for y in range(0, 2 * d + 1, 2):
        for x in range(0, 2 * d + 1, 2):
            t = ((x + y) // 2) % 2
            basis = "Z" if t == 1 else "X"
            offsets = Z_OFFSETS if basis == "Z" else X_OFFSETS
            steps = tuple(
                (x + dx, y + dy) if (x + dx, y + dy) in data_set else None
                for dx, dy in offsets
            )
            weight = sum(c is not None for c in steps)
            if weight < 2:
                continue
            if basis == "Z" and y in (0, 2 * d):
                continue  # no Z checks on top/bottom: X chains terminate there
            if basis == "X" and x in (0, 2 * d):
                continue  # no X checks on left/right: Z chains terminate there
            (zs if basis == "Z" else xs).append(Plaquette((x, y), basis, steps))

    if len(zs) + len(xs) != d * d - 1:
        raise AssertionError("plaquette count mismatch")

    logical_z = tuple((x, 1) for x in range(1, 2 * d, 2))
    logical_x = tuple((1, y) for y in range(1, 2 * d, 2))

    index: dict[Coord, int] = {}
    for c in data:
        index[c] = len(index)
    for p in zs + xs:
        index[p.ancilla] = len(index)

    return CodeLayout(
        distance=d,
        data_qubits=data,
        z_plaquettes=tuple(zs),
        x_plaquettes=tuple(xs),
        logical_z_support=logical_z,
        logical_x_support=logical_x,
        qubit_index=index,
    )
