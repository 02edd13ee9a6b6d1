"""Noisy circuit schedules for surface-code memory experiments.

A CircuitSchedule is a time-ordered list of operations acting on qubit
indices, together with detector definitions (parity sets over measurement
indices), the logical observable, and the table of noisy-CNOT channels
referenced by the CNOT operations.

Operations (one per line in the text format, opcode qubits parameter):

    R  q            reset qubit q to |0>
    RM q            reset qubit q to the maximally mixed state
    H  q            Hadamard
    CX c t k        CNOT with control c, target t, noise channel index k
    IE q p          idle step: heralded erasure of q with probability p
    MZ q p          Z-basis measurement with classical flip probability p

followed by `DET <Z|X> m...` (detector = parity of measurement indices),
`OBS m...` (logical observable), and channel definitions.  Measurement
indices count MZ operations in schedule order from zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import NoisyCnotChannel
from .layout import CodeLayout

K_RESET = 0
K_RESET_MIXED = 1
K_H = 2
K_CNOT = 3
K_IDLE_ERASE = 4
K_MEAS_Z = 5

_OPCODES = {K_RESET: "R", K_RESET_MIXED: "RM", K_H: "H",
            K_CNOT: "CX", K_IDLE_ERASE: "IE", K_MEAS_Z: "MZ"}
_KINDS = {v: k for k, v in _OPCODES.items()}

_PAULI_NAMES = ("I", "X", "Y", "Z")
_PAULI_PAIRS = tuple(
    (c, t) for c in range(4) for t in range(4) if (c, t) != (0, 0)
)


@dataclass(frozen=True)
class NoiseModel:
    """Noise attached to a memory circuit."""

    cnot_channel: NoisyCnotChannel | None = None
    p_meas: float = 0.0
    p_idle_per_layer: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p_meas < 1.0:
            raise ValueError("p_meas out of range")
        if not 0.0 <= self.p_idle_per_layer < 1.0:
            raise ValueError("p_idle_per_layer out of range")


@dataclass(frozen=True)
class Detector:
    measurements: tuple
    basis: str  # "Z" or "X"


@dataclass(frozen=True)
class CircuitSchedule:
    """Immutable noisy operation list with detectors and observable."""

    n_qubits: int
    kinds: np.ndarray     # int8, one of K_*
    q0: np.ndarray        # int32 first qubit
    q1: np.ndarray        # int32 second qubit or -1
    chan: np.ndarray      # int32 channel index or -1
    prob: np.ndarray      # float64 idle/measurement probability
    channels: tuple       # NoisyCnotChannel, ...
    detectors: tuple      # Detector, ...
    observable: tuple     # measurement indices
    distance: int = 0
    rounds: int = 0

    def __post_init__(self):
        for arr in (self.kinds, self.q0, self.q1, self.chan, self.prob):
            arr.setflags(write=False)
        n_meas = int(np.count_nonzero(self.kinds == K_MEAS_Z))
        for det in self.detectors:
            for m in det.measurements:
                if not 0 <= m < n_meas:
                    raise ValueError("detector references missing measurement")
        for m in self.observable:
            if not 0 <= m < n_meas:
                raise ValueError("observable references missing measurement")

    @property
    def n_ops(self):
        return len(self.kinds)

    @property
    def n_measurements(self):
        return int(np.count_nonzero(self.kinds == K_MEAS_Z))

    @property
    def n_detectors(self):
        return len(self.detectors)

    def measurement_ops(self):
        """Op indices of MZ operations, in measurement-index order."""
        return np.flatnonzero(self.kinds == K_MEAS_Z)

    # ---- text round trip -------------------------------------------------

    def to_text(self):
        lines = ["ionqec-schedule 1",
                 f"qubits {self.n_qubits}",
                 f"distance {self.distance}",
                 f"rounds {self.rounds}"]
        for k, ch in enumerate(self.channels):
            vals = [repr(ch.pauli_table[c][t]) for c, t in _PAULI_PAIRS]
            lines.append(
                "channel %d %s %s %s %s %s" % (
                    k, " ".join(vals), repr(ch.heralded_erasure_prob),
                    repr(ch.undetected_leak_control),
                    repr(ch.undetected_leak_target),
                    repr(ch.leak_partner_flip_prob)))
        for i in range(self.n_ops):
            kind = int(self.kinds[i])
            code = _OPCODES[kind]
            if kind == K_CNOT:
                lines.append(f"CX {self.q0[i]} {self.q1[i]} {self.chan[i]}")
            elif kind in (K_IDLE_ERASE, K_MEAS_Z):
                lines.append(f"{code} {self.q0[i]} {float(self.prob[i])!r}")
            else:
                lines.append(f"{code} {self.q0[i]}")
        for det in self.detectors:
            lines.append("DET %s %s" % (
                det.basis, " ".join(str(m) for m in det.measurements)))
        lines.append("OBS %s" % " ".join(str(m) for m in self.observable))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "ionqec-schedule 1":
            raise ValueError("unrecognized schedule header")
        n_qubits = distance = rounds = 0
        channels = {}
        kinds, q0, q1, chan, prob = [], [], [], [], []
        detectors = []
        observable = ()
        for ln in lines[1:]:
            tok = ln.split()
            key = tok[0]
            if key == "qubits":
                n_qubits = int(tok[1])
            elif key == "distance":
                distance = int(tok[1])
            elif key == "rounds":
                rounds = int(tok[1])
            elif key == "channel":
                k = int(tok[1])
                vals = [float(x) for x in tok[2:]]
                if len(vals) != 19:
                    raise ValueError("channel line needs 19 probabilities")
                table = [[0.0] * 4 for _ in range(4)]
                for (c, t), p in zip(_PAULI_PAIRS, vals[:15]):
                    table[c][t] = p
                channels[k] = NoisyCnotChannel(
                    pauli_table=tuple(tuple(row) for row in table),
                    heralded_erasure_prob=vals[15],
                    undetected_leak_control=vals[16],
                    undetected_leak_target=vals[17],
                    leak_partner_flip_prob=vals[18])
            elif key in _KINDS:
                kind = _KINDS[key]
                kinds.append(kind)
                q0.append(int(tok[1]))
                if kind == K_CNOT:
                    q1.append(int(tok[2]))
                    chan.append(int(tok[3]))
                    prob.append(0.0)
                elif kind in (K_IDLE_ERASE, K_MEAS_Z):
                    q1.append(-1)
                    chan.append(-1)
                    prob.append(float(tok[2]))
                else:
                    q1.append(-1)
                    chan.append(-1)
                    prob.append(0.0)
            elif key == "DET":
                detectors.append(
                    Detector(tuple(int(m) for m in tok[2:]), tok[1]))
            elif key == "OBS":
                observable = tuple(int(m) for m in tok[1:])
            else:
                raise ValueError(f"unrecognized schedule line: {ln}")
        chan_list = tuple(channels[k] for k in sorted(channels))
        return CircuitSchedule(
            n_qubits=n_qubits,
            kinds=np.array(kinds, np.int8),
            q0=np.array(q0, np.int32),
            q1=np.array(q1, np.int32),
            chan=np.array(chan, np.int32),
            prob=np.array(prob, np.float64),
            channels=chan_list,
            detectors=tuple(detectors),
            observable=observable,
            distance=distance,
            rounds=rounds)


class _Builder:
    def __init__(self, n_qubits):
        self.n_qubits = n_qubits
        self.kinds, self.q0, self.q1 = [], [], []
        self.chan, self.prob = [], []
        self.n_meas = 0

    def add(self, kind, a, b=-1, chan=-1, prob=0.0):
        self.kinds.append(kind)
        self.q0.append(a)
        self.q1.append(b)
        self.chan.append(chan)
        self.prob.append(prob)
        if kind == K_MEAS_Z:
            self.n_meas += 1
            return self.n_meas - 1
        return len(self.kinds) - 1


def build_memory_circuit(layout: CodeLayout, rounds: int,
                         noise: NoiseModel | None = None) -> CircuitSchedule:
    """Z-basis memory experiment: |0..0> data, `rounds` rounds of syndrome
    extraction with the interleaved 4-layer CNOT schedule, final transversal
    Z measurement of the data qubits.

    Detectors: first-round Z syndromes absolutely, consecutive-round parity
    differences for both bases, and final detectors comparing the last Z
    syndrome to the measured data parity of each Z plaquette.  The logical
    observable is the measured parity of the logical-Z support.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    noise = noise or NoiseModel()
    channels = ()
    chan_idx = -1
    if noise.cnot_channel is not None:
        channels = (noise.cnot_channel,)
        chan_idx = 0
    qi = layout.qubit_index
    data = [qi[c] for c in layout.data_qubits]
    plaquettes = list(layout.z_plaquettes) + list(layout.x_plaquettes)
    b = _Builder(layout.n_qubits)

    for q in data:
        b.add(K_RESET, q)

    # anc_meas[a][r] = measurement index of plaquette a in round r
    anc_meas = [[-1] * rounds for _ in plaquettes]
    for r in range(rounds):
        for p in plaquettes:
            b.add(K_RESET, qi[p.ancilla])
        for p in layout.x_plaquettes:
            b.add(K_H, qi[p.ancilla])
        for layer in range(4):
            if noise.p_idle_per_layer > 0.0:
                for q in range(layout.n_qubits):
                    b.add(K_IDLE_ERASE, q, prob=noise.p_idle_per_layer)
            for p in plaquettes:
                step = p.steps[layer]
                if step is None:
                    continue
                dq = qi[step]
                aq = qi[p.ancilla]
                if p.basis == "Z":
                    b.add(K_CNOT, dq, aq, chan=chan_idx)
                else:
                    b.add(K_CNOT, aq, dq, chan=chan_idx)
        for p in layout.x_plaquettes:
            b.add(K_H, qi[p.ancilla])
        for a, p in enumerate(plaquettes):
            anc_meas[a][r] = b.add(K_MEAS_Z, qi[p.ancilla],
                                   prob=noise.p_meas)

    data_meas = {}
    for c in layout.data_qubits:
        data_meas[c] = b.add(K_MEAS_Z, qi[c], prob=noise.p_meas)

    detectors = []
    for a, p in enumerate(plaquettes):
        basis = p.basis
        if basis == "Z":
            detectors.append(Detector((anc_meas[a][0],), "Z"))
        for r in range(1, rounds):
            detectors.append(
                Detector((anc_meas[a][r - 1], anc_meas[a][r]), basis))
        if basis == "Z":
            final = (anc_meas[a][rounds - 1],) + tuple(
                data_meas[c] for c in p.data)
            detectors.append(Detector(final, "Z"))
    observable = tuple(data_meas[c] for c in layout.logical_z_support)

    return CircuitSchedule(
        n_qubits=layout.n_qubits,
        kinds=np.array(b.kinds, np.int8),
        q0=np.array(b.q0, np.int32),
        q1=np.array(b.q1, np.int32),
        chan=np.array(b.chan, np.int32),
        prob=np.array(b.prob, np.float64),
        channels=channels,
        detectors=tuple(detectors),
        observable=observable,
        distance=layout.distance,
        rounds=rounds)
