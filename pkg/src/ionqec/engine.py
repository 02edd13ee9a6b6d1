"""Pauli-frame Monte Carlo sampler for CircuitSchedule.

All circuits are Clifford + Pauli/erasure channels, so propagating an
(X, Z) frame per qubit is exact.  Each noise site draws from a counter-
based generator keyed by (master_seed, shot index, operation index, draw
number), which makes results independent of how shots are partitioned
across workers.

Binary shot dump format (little-endian):
    header: magic b"IQSHOT1\\n", uint32 n_detectors, uint64 shots,
            uint64 master_seed
    per shot: uint8 logical_flip, ceil(n_detectors/8) bytes of detector
            bits packed LSB-first, uint32 herald count, then per herald
            uint32 operation index + uint32 qubit id.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .backend import jit
from .circuit import (CircuitSchedule, K_CNOT, K_H, K_IDLE_ERASE, K_MEAS_Z,
                      K_RESET, K_RESET_MIXED)
from .rng import uniform

# channel branch codes: 0..15 two-qubit Pauli (control*4+target),
# 16 heralded erasure, 17 undetected control leak, 18 undetected target leak
_ERASURE = 16
_LEAK_C = 17
_LEAK_T = 18


class CompiledSchedule:
    """Flat-array form of a CircuitSchedule for the sampling kernel."""

    def __init__(self, schedule: CircuitSchedule):
        self.schedule = schedule
        self.n_qubits = schedule.n_qubits
        self.kinds = schedule.kinds.astype(np.int8)
        self.q0 = schedule.q0.astype(np.int32)
        self.q1 = schedule.q1.astype(np.int32)
        self.chan = schedule.chan.astype(np.int32)
        self.prob = schedule.prob.astype(np.float64)

        offs = [0]
        cums, codes, flips = [], [], []
        for ch in schedule.channels:
            acc = 0.0
            for c in range(4):
                for t in range(4):
                    if c == 0 and t == 0:
                        continue
                    p = ch.pauli_table[c][t]
                    if p > 0.0:
                        acc += p
                        cums.append(acc)
                        codes.append(c * 4 + t)
            if ch.undetected_leak_control > 0.0:
                acc += ch.undetected_leak_control
                cums.append(acc)
                codes.append(_LEAK_C)
            if ch.undetected_leak_target > 0.0:
                acc += ch.undetected_leak_target
                cums.append(acc)
                codes.append(_LEAK_T)
            if ch.heralded_erasure_prob > 0.0:
                acc += ch.heralded_erasure_prob
                cums.append(acc)
                codes.append(_ERASURE)
            offs.append(len(cums))
            flips.append(ch.leak_partner_flip_prob)
        self.ch_off = np.array(offs, np.int64)
        self.ch_cum = np.array(cums, np.float64)
        self.ch_code = np.array(codes, np.int8)
        self.ch_flip = np.array(flips, np.float64)

        self.n_meas = schedule.n_measurements
        det_off = [0]
        det_meas = []
        for det in schedule.detectors:
            det_meas.extend(det.measurements)
            det_off.append(len(det_meas))
        self.det_off = np.array(det_off, np.int64)
        self.det_meas = np.array(det_meas, np.int32)
        self.det_basis = np.array(
            [0 if d.basis == "Z" else 1 for d in schedule.detectors], np.int8)
        self.obs = np.array(schedule.observable, np.int32)
        self.n_detectors = schedule.n_detectors
        self.herald_cap = int(
            2 * np.count_nonzero(self.kinds == K_CNOT)
            + np.count_nonzero(self.kinds == K_IDLE_ERASE)) + 1


_compile_cache: dict = {}


def compile_schedule(schedule: CircuitSchedule) -> CompiledSchedule:
    key = id(schedule)
    hit = _compile_cache.get(key)
    if hit is not None and hit.schedule is schedule:
        return hit
    compiled = CompiledSchedule(schedule)
    if len(_compile_cache) > 64:
        _compile_cache.clear()
    _compile_cache[key] = compiled
    return compiled


@jit
def _shot_kernel(kinds, q0, q1, chan, prob, ch_off, ch_cum, ch_code, ch_flip,
                 det_off, det_meas, obs, seed, shot,
                 fx, fz, meas, det_out, her_ops, her_qs):
    for q in range(fx.shape[0]):
        fx[q] = 0
        fz[q] = 0
    m = 0
    nher = 0
    for i in range(kinds.shape[0]):
        k = kinds[i]
        a = q0[i]
        if k == K_RESET:
            fx[a] = 0
            fz[a] = 0
        elif k == K_RESET_MIXED:
            fx[a] = 1 if uniform(seed, shot, i, 0) < 0.5 else 0
            fz[a] = 1 if uniform(seed, shot, i, 1) < 0.5 else 0
        elif k == K_H:
            tmp = fx[a]
            fx[a] = fz[a]
            fz[a] = tmp
        elif k == K_CNOT:
            b = q1[i]
            fx[b] ^= fx[a]
            fz[a] ^= fz[b]
            ci = chan[i]
            if ci >= 0:
                u = uniform(seed, shot, i, 0)
                lo = ch_off[ci]
                hi = ch_off[ci + 1]
                for j in range(lo, hi):
                    if u < ch_cum[j]:
                        code = ch_code[j]
                        if code < 16:
                            pc = code >> 2
                            pt = code & 3
                            if pc == 1 or pc == 2:
                                fx[a] ^= 1
                            if pc == 2 or pc == 3:
                                fz[a] ^= 1
                            if pt == 1 or pt == 2:
                                fx[b] ^= 1
                            if pt == 2 or pt == 3:
                                fz[b] ^= 1
                        elif code == _ERASURE:
                            fx[a] = 1 if uniform(seed, shot, i, 1) < 0.5 else 0
                            fz[a] = 1 if uniform(seed, shot, i, 2) < 0.5 else 0
                            fx[b] = 1 if uniform(seed, shot, i, 3) < 0.5 else 0
                            fz[b] = 1 if uniform(seed, shot, i, 4) < 0.5 else 0
                            her_ops[nher] = i
                            her_qs[nher] = a
                            nher += 1
                            her_ops[nher] = i
                            her_qs[nher] = b
                            nher += 1
                        elif code == _LEAK_C:
                            fx[a] ^= 1 if uniform(seed, shot, i, 1) < 0.5 else 0
                            fz[a] ^= 1 if uniform(seed, shot, i, 2) < 0.5 else 0
                            if uniform(seed, shot, i, 3) < ch_flip[ci]:
                                fx[b] ^= 1
                        else:  # _LEAK_T
                            fx[b] ^= 1 if uniform(seed, shot, i, 1) < 0.5 else 0
                            fz[b] ^= 1 if uniform(seed, shot, i, 2) < 0.5 else 0
                            if uniform(seed, shot, i, 3) < ch_flip[ci]:
                                fz[a] ^= 1
                        break
        elif k == K_IDLE_ERASE:
            p = prob[i]
            if p > 0.0 and uniform(seed, shot, i, 0) < p:
                fx[a] = 1 if uniform(seed, shot, i, 1) < 0.5 else 0
                fz[a] = 1 if uniform(seed, shot, i, 2) < 0.5 else 0
                her_ops[nher] = i
                her_qs[nher] = a
                nher += 1
        else:  # K_MEAS_Z
            bit = fx[a]
            p = prob[i]
            if p > 0.0 and uniform(seed, shot, i, 0) < p:
                bit ^= 1
            meas[m] = bit
            m += 1
    for d in range(det_out.shape[0]):
        acc = 0
        for j in range(det_off[d], det_off[d + 1]):
            acc ^= meas[det_meas[j]]
        det_out[d] = acc
    flip = 0
    for j in range(obs.shape[0]):
        flip ^= meas[obs[j]]
    return nher, flip


@dataclass(frozen=True)
class ShotRecord:
    detectors: np.ndarray          # uint8 per detector
    heralds: tuple                 # ((op index, qubit id), ...)
    logical_flip: int

    def __post_init__(self):
        self.detectors.setflags(write=False)


@dataclass(frozen=True)
class BatchResult:
    shots: int
    master_seed: int
    detectors: np.ndarray          # (shots, n_detectors) uint8
    logical_flips: np.ndarray      # (shots,) uint8
    heralds: tuple                 # per shot: (ops int32 array, qubits int32 array)

    def record(self, s: int) -> ShotRecord:
        ops, qs = self.heralds[s]
        return ShotRecord(
            detectors=self.detectors[s].copy(),
            heralds=tuple(zip(ops.tolist(), qs.tolist())),
            logical_flip=int(self.logical_flips[s]))


class _Scratch:
    def __init__(self, comp: CompiledSchedule):
        self.fx = np.zeros(comp.n_qubits, np.uint8)
        self.fz = np.zeros(comp.n_qubits, np.uint8)
        self.meas = np.zeros(comp.n_meas, np.uint8)
        self.det = np.zeros(comp.n_detectors, np.uint8)
        self.her_ops = np.zeros(comp.herald_cap, np.int32)
        self.her_qs = np.zeros(comp.herald_cap, np.int32)


def _run_one(comp: CompiledSchedule, sc: _Scratch, shot: int, seed: int):
    return _shot_kernel(
        comp.kinds, comp.q0, comp.q1, comp.chan, comp.prob,
        comp.ch_off, comp.ch_cum, comp.ch_code, comp.ch_flip,
        comp.det_off, comp.det_meas, comp.obs,
        np.uint64(seed), np.uint64(shot),
        sc.fx, sc.fz, sc.meas, sc.det, sc.her_ops, sc.her_qs)


def sample_shot(schedule: CircuitSchedule, shot_index: int,
                master_seed: int) -> ShotRecord:
    comp = compile_schedule(schedule)
    sc = _Scratch(comp)
    nher, flip = _run_one(comp, sc, shot_index, master_seed)
    heralds = tuple(
        (int(sc.her_ops[i]), int(sc.her_qs[i])) for i in range(nher))
    return ShotRecord(detectors=sc.det.copy(), heralds=heralds,
                      logical_flip=int(flip))


def run_batch(schedule: CircuitSchedule, shots: int, master_seed: int,
              worker_hint: int = 1) -> BatchResult:
    """Sample `shots` records.  Per-shot randomness is keyed by the shot
    index alone, so the result is identical for any worker_hint."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if worker_hint < 1:
        raise ValueError("worker_hint must be >= 1")
    comp = compile_schedule(schedule)
    detectors = np.zeros((shots, comp.n_detectors), np.uint8)
    flips = np.zeros(shots, np.uint8)
    heralds = [None] * shots
    bounds = np.linspace(0, shots, worker_hint + 1).astype(int)
    for w in range(worker_hint):
        sc = _Scratch(comp)
        for s in range(bounds[w], bounds[w + 1]):
            nher, flip = _run_one(comp, sc, s, master_seed)
            detectors[s] = sc.det
            flips[s] = flip
            heralds[s] = (sc.her_ops[:nher].copy(), sc.her_qs[:nher].copy())
    return BatchResult(shots=shots, master_seed=master_seed,
                       detectors=detectors, logical_flips=flips,
                       heralds=tuple(heralds))


_MAGIC = b"IQSHOT1\n"


def dump_shots(batch: BatchResult, path):
    """Write a BatchResult in the documented binary shot format."""
    n_det = batch.detectors.shape[1]
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<IQQ", n_det, batch.shots, batch.master_seed))
        for s in range(batch.shots):
            f.write(struct.pack("<B", int(batch.logical_flips[s])))
            f.write(np.packbits(batch.detectors[s], bitorder="little")
                    .tobytes())
            ops, qs = batch.heralds[s]
            f.write(struct.pack("<I", len(ops)))
            for o, q in zip(ops, qs):
                f.write(struct.pack("<II", int(o), int(q)))


def load_shots(path) -> BatchResult:
    with open(path, "rb") as f:
        if f.read(len(_MAGIC)) != _MAGIC:
            raise ValueError("not a shot dump file")
        n_det, shots, seed = struct.unpack("<IQQ", f.read(20))
        nbytes = (n_det + 7) // 8
        detectors = np.zeros((shots, n_det), np.uint8)
        flips = np.zeros(shots, np.uint8)
        heralds = []
        for s in range(shots):
            flips[s] = struct.unpack("<B", f.read(1))[0]
            raw = np.frombuffer(f.read(nbytes), np.uint8)
            detectors[s] = np.unpackbits(raw, count=n_det, bitorder="little")
            (cnt,) = struct.unpack("<I", f.read(4))
            ops = np.zeros(cnt, np.int32)
            qs = np.zeros(cnt, np.int32)
            for i in range(cnt):
                ops[i], qs[i] = struct.unpack("<II", f.read(8))
            heralds.append((ops, qs))
    return BatchResult(shots=int(shots), master_seed=int(seed),
                       detectors=detectors, logical_flips=flips,
                       heralds=tuple(heralds))
