"""Erasure-aware matching decoder: exhaustive correctness at distance 3."""

import numpy as np
import pytest

from ionqec.channel import depolarizing_cnot_channel, erasure_cnot_channel
from ionqec.circuit import NoiseModel, build_memory_circuit
from ionqec.decoder import (decode_batch, decode_shot, logical_error_rate,
                            wilson_interval)
from ionqec.engine import ShotRecord, run_batch
from ionqec.graph import build_detector_graph, signature_table
from ionqec.layout import build_layout


def _setup(d=3, rounds=3, **noise_kw):
    c = build_memory_circuit(build_layout(d), rounds, NoiseModel(**noise_kw))
    return c, build_detector_graph(c)


def _inject(schedule, faults):
    """Detector bits and logical flip for a list of (op, qubit, pauli)."""
    sig_x, sig_z = signature_table(schedule)
    mask = 0
    for op, qubit, pauli in faults:
        if pauli in (1, 2):
            mask ^= sig_x[op][qubit]
        if pauli in (2, 3):
            mask ^= sig_z[op][qubit]
    n_det = schedule.n_detectors
    dets = np.array([(mask >> i) & 1 for i in range(n_det)], np.uint8)
    return dets, (mask >> n_det) & 1


def test_noiseless_shot_decodes_to_zero():
    c, g = _setup(cnot_channel=depolarizing_cnot_channel(0.0))
    rec = ShotRecord(np.zeros(c.n_detectors, np.uint8), (), 0)
    assert decode_shot(g, rec) == 0


def test_single_fault_exhaustive():
    """Every single Pauli fault anywhere in the d=3 circuit is corrected."""
    c, g = _setup(3, 3, cnot_channel=depolarizing_cnot_channel(1e-3),
                  p_meas=1e-3)
    failures = 0
    cases = 0
    for op in range(c.n_ops):
        qubits = [int(c.q0[op])]
        if c.q1[op] >= 0:
            qubits.append(int(c.q1[op]))
        for q in qubits:
            for pauli in (1, 2, 3):
                dets, flip = _inject(c, [(op, q, pauli)])
                rec = ShotRecord(dets, (), int(flip))
                cases += 1
                if decode_shot(g, rec) != flip:
                    failures += 1
    assert cases > 600
    assert failures == 0


def test_two_erased_qubits_exhaustive():
    """Any two single-qubit idle erasures (<= d-1 = 2 erased qubits) with
    arbitrary depolarizing outcomes are always corrected at d = 3."""
    c, g = _setup(3, 3, cnot_channel=depolarizing_cnot_channel(0.0),
                  p_idle_per_layer=1e-6)
    idle_ops = np.flatnonzero(c.kinds == 4)  # K_IDLE_ERASE
    rng = np.random.default_rng(0)
    pairs = rng.choice(len(idle_ops), size=(120, 2))
    failures = 0
    for i1, i2 in pairs:
        o1, o2 = int(idle_ops[i1]), int(idle_ops[i2])
        if o1 == o2:
            continue
        q1, q2 = int(c.q0[o1]), int(c.q0[o2])
        for pa in range(4):
            for pb in range(4):
                dets, flip = _inject(c, [(o1, q1, pa), (o2, q2, pb)])
                rec = ShotRecord(dets, ((o1, q1), (o2, q2)), int(flip))
                if decode_shot(g, rec) != flip:
                    failures += 1
    assert failures == 0


def test_heralds_never_hurt_on_single_erasure():
    """Revealing the herald never turns a success into a failure."""
    c, g = _setup(3, 3, cnot_channel=depolarizing_cnot_channel(0.0),
                  p_idle_per_layer=1e-6)
    idle_ops = np.flatnonzero(c.kinds == 4)[::7]
    for op in idle_ops:
        q = int(c.q0[op])
        for pauli in range(4):
            dets, flip = _inject(c, [(int(op), q, pauli)])
            with_h = decode_shot(
                g, ShotRecord(dets, ((int(op), q),), int(flip)))
            assert with_h == flip


def test_decode_batch_matches_per_shot():
    c, g = _setup(3, 2, cnot_channel=depolarizing_cnot_channel(0.02),
                  p_meas=0.01)
    batch = run_batch(c, 200, 5)
    preds = decode_batch(g, batch)
    for s in range(0, 200, 17):
        assert preds[s] == decode_shot(g, batch.record(s))


def test_logical_error_rate_and_wilson():
    c, g = _setup(3, 3, cnot_channel=depolarizing_cnot_channel(0.02))
    est = logical_error_rate(g, run_batch(c, 500, 11))
    assert est.shots == 500
    lo, hi = est.ci95
    assert 0.0 <= lo <= est.rate <= hi <= 1.0
    # Wilson anchors
    lo0, hi0 = wilson_interval(0, 100)
    assert lo0 == pytest.approx(0.0, abs=1e-12)
    assert hi0 == pytest.approx(0.0370, abs=2e-3)


def test_distance_five_beats_distance_three():
    rates = {}
    for d in (3, 5):
        c, g = _setup(d, d, cnot_channel=depolarizing_cnot_channel(0.004),
                      p_meas=1e-3)
        rates[d] = logical_error_rate(g, run_batch(c, 3000, 23)).rate
    assert rates[5] < rates[3]


def test_decoding_is_deterministic():
    c, g = _setup(3, 3, cnot_channel=depolarizing_cnot_channel(0.03))
    batch = run_batch(c, 100, 9)
    a = decode_batch(g, batch)
    b = decode_batch(g, batch)
    assert np.array_equal(a, b)
