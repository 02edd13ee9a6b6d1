"""Acceptance gate: nine end-to-end criteria, one printed PASS/FAIL line
each.  Criteria 5-8 are Monte-Carlo heavy (minutes each); everything is
seeded, so reruns are bit-identical.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from ionqec import experiments as ex
from ionqec import stats
from ionqec.angular import HalfInteger
from ionqec.channel import (PARTNER_FLIP, Z_MIX_R, cnot_channel,
                            depolarizing_cnot_channel, theta_profile)
from ionqec.circuit import NoiseModel, build_memory_circuit
from ionqec.decoder import ShotRecord, decode_shot, logical_error_rate
from ionqec.engine import run_batch
from ionqec.graph import build_detector_graph, signature_table
from ionqec.layout import build_layout
from ionqec.matching import min_weight_perfect_matching
from ionqec.rates import (GateConfig, QubitKind, erasure_conversion_rate,
                          error_budget, gate_time, idle_error,
                          rydberg_reference)
from ionqec.scattering import Manifold, geometric_coefficients, \
    orbital_coefficients
from ionqec.species import species_params

from test_engine import RefFrame
from test_matching import _brute_min_perfect


def _report(capsys, num, name, ok, detail=""):
    tail = f" -- {detail}" if detail else ""
    with capsys.disabled():
        print(f"\ncriterion {num} ({name}): {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


# ---------------------------------------------------------------------------
# 1. Coefficient exactness


def test_criterion_1_coefficients(capsys):
    ks, als = orbital_coefficients(Manifold.S12)
    kd, ald = orbital_coefficients(Manifold.D52)
    _, al3 = orbital_coefficients(Manifold.D32)
    ok = (ks == Fraction(1, 3) and kd == Fraction(1, 5)
          and als == Fraction(1, 3) and al3 == Fraction(1, 30)
          and ald == Fraction(3, 10))

    ba = geometric_coefficients(Fraction(1, 2), 2)
    ba_exact = {
        "c0": Fraction(1, 10), "cz": Fraction(0), "cxy": Fraction(1, 75),
        "c1": Fraction(2, 5), "c2": Fraction(2, 5), "cl": Fraction(1, 3),
    }
    for key, want in ba_exact.items():
        got = getattr(ba, key)
        ok = ok and abs(float(got) - float(want)) < 1e-12

    ca = geometric_coefficients(Fraction(7, 2), 5)
    ca_ref = {"c0": 0.1784, "cz": 0.0035, "cxy": 0.0424,
              "c1": 0.5273, "c2": 0.5273, "cl": 0.3904}
    for key, want in ca_ref.items():
        ok = ok and abs(float(getattr(ca, key)) - want) < 1e-4
    ok = ok and (abs(float(ba.c0) - 0.1) < 1e-10)
    ok = ok and abs(float(ca.c0) - math.sqrt(7.0 / 220.0)) < 1e-10
    _report(capsys, 1, "coefficient exactness", ok,
            f"Ba c0={float(ba.c0):.6f}, Ca c0={float(ca.c0):.6f}")


# ---------------------------------------------------------------------------
# 2. Erasure-conversion rates


def test_criterion_2_erasure_conversion(capsys):
    details = []
    ok = True
    for name, want in (("Ba133", 0.7941), ("Ca43", 0.9509)):
        sp = species_params(name)
        bud = error_budget(sp, QubitKind.METASTABLE, 0.05 * sp.omega_F,
                           GateConfig())
        _, re0 = erasure_conversion_rate(sp, bud)
        ok = ok and abs(re0 - want) < 1e-4 and re0 > sp.r1 + sp.r2
        details.append(f"{name} Re0={re0:.4f}")
    _report(capsys, 2, "erasure-conversion rates", ok, ", ".join(details))


# ---------------------------------------------------------------------------
# 3. CNOT-propagation constants


def test_criterion_3_propagation_constants(capsys):
    n = 4001
    h = 1.0 / (n - 1)
    acc = 0.0
    for i in range(n):
        w = 0.5 if i in (0, n - 1) else 1.0
        acc += w * math.sin(theta_profile(i * h)) ** 2
    flip = acc * h
    mixture = (0.5 - Z_MIX_R, Z_MIX_R, Z_MIX_R, 0.5 - Z_MIX_R)
    ok = (abs(flip - 0.2078) < 1e-4
          and abs(PARTNER_FLIP - 0.2078) < 1e-4
          and sum(mixture) == 1.0
          and abs(mixture[0] - 0.3651) < 1e-12)
    _report(capsys, 3, "propagation constants", ok,
            f"quadrature={flip:.5f}, mixture sum={sum(mixture)}")


# ---------------------------------------------------------------------------
# 4. Closed-form spot checks


def test_criterion_4_spot_checks(capsys):
    ba, ca = species_params("Ba133"), species_params("Ca43")
    idle_ba = idle_error(3e-3, ba.tau_m) / 4.0
    idle_ca = idle_error(3e-3, ca.tau_m) / 4.0
    ryd = rydberg_reference(1.0 / 540e-6, 2 * math.pi * 10e6)
    tg = gate_time(GateConfig(), 2 * math.pi * 0.25e6)
    deltas = np.linspace(1e-4, 0.9999, 4001) * ba.omega_F
    p2q_min = np.inf
    for delta in deltas:
        try:
            bud = error_budget(ba, QubitKind.GROUND, delta, GateConfig())
        except ValueError:
            continue
        p2q_min = min(p2q_min, bud.p2q)
    ok = (abs(idle_ba / 2.49e-5 - 1) < 0.01
          and abs(idle_ca / 6.46e-4 - 1) < 0.01
          and abs(ryd / 8.7e-5 - 1) < 0.02
          and abs(tg / 20e-6 - 1) < 1e-9
          and abs(p2q_min - 1.5e-4) < 0.2e-4)
    _report(capsys, 4, "closed-form spot checks", ok,
            f"idle=({idle_ba:.3g},{idle_ca:.3g}), rydberg={ryd:.3g}, "
            f"t_gate={tg * 1e6:.1f}us, min p2q={p2q_min:.3g}")


# ---------------------------------------------------------------------------
# 5. Thresholds at desk scale


_CASE_I = (("Ba133", "ground", 1.36, 1.36),
           ("Ba133", "metastable", 2.97, 2.84),
           ("Ca43", "ground", 1.22, 1.21),
           ("Ca43", "metastable", 3.42, 3.15))


def _crossing(species, qubit, include_idle):
    cfg = ex.ExperimentConfig(species=species, qubit=qubit,
                              distances=(5, 7), shots=20000,
                              master_seed=29, include_idle=include_idle)
    _, curves = ex.threshold_scan(cfg)
    est = stats.estimate_threshold(curves)
    return 100.0 * est.value if est.crossed else float("nan")


def test_criterion_5_case_i_thresholds(capsys):
    ok = True
    parts = []
    for species, qubit, want_bare, want_idle in _CASE_I:
        got = _crossing(species, qubit, include_idle=False)
        hit = abs(got - want_bare) <= 0.3
        ok = ok and hit
        parts.append(f"{species}/{qubit}: {got:.2f}% vs {want_bare}%"
                     f"{'' if hit else ' (MISS)'}")
    for species, qubit, want_bare, want_idle in _CASE_I:
        got = _crossing(species, qubit, include_idle=True)
        hit = abs(got - want_idle) <= 0.4
        ok = ok and hit
        parts.append(f"{species}/{qubit}+idle: {got:.2f}% vs {want_idle}%"
                     f"{'' if hit else ' (MISS)'}")
    _report(capsys, 5, "case I thresholds", ok, "; ".join(parts))


# ---------------------------------------------------------------------------
# 6. Effective error distance


def _slope_physical(species, qubit, grid, d=5, shots=60000, seed=71):
    pts = []
    for i, p2q in enumerate(grid):
        delta = ex.detuning_for_p2q(species, qubit, p2q)
        noise = ex.build_noise(species, qubit, delta, 0.0, False, 3e-3)
        est = ex.run_memory_point(noise, d, d, shots,
                                  ex._point_seed(seed, d, i))
        pts.append((p2q, est.rate))
    return stats.fit_effective_distance(pts).slope


def _slope_synthetic(kind, grid, d, shots=40000, seed=83):
    pts = []
    for i, p in enumerate(grid):
        noise = NoiseModel(cnot_channel=ex.synthetic_channel(kind, p))
        est = ex.run_memory_point(noise, d, d, shots,
                                  ex._point_seed(seed, d, i))
        pts.append((p, est.rate))
    return stats.fit_effective_distance(pts).slope


def test_criterion_6_effective_distance(capsys):
    parts = []
    xi_g = _slope_physical("Ba133", "ground",
                           np.logspace(np.log10(5e-3), np.log10(1.2e-2), 5))
    xi_ba = _slope_physical("Ba133", "metastable",
                            np.logspace(np.log10(1.4e-2), np.log10(2.2e-2), 4))
    xi_ca = _slope_physical("Ca43", "metastable",
                            np.logspace(np.log10(1.6e-2), np.log10(2.6e-2), 4))
    ok = abs(xi_g - 3.0) <= 0.5 and 3.0 < xi_ba < 5.0 and 3.5 < xi_ca < 5.0
    parts.append(f"ground={xi_g:.2f}, metaBa={xi_ba:.2f}, metaCa={xi_ca:.2f}")
    for d, lo, hi, shots in ((3, 1.2e-2, 2.4e-2, 40000),
                             (5, 1.0e-2, 2.0e-2, 200000)):
        xi = _slope_synthetic("erasure",
                              np.logspace(np.log10(lo), np.log10(hi), 4), d,
                              shots=shots)
        hit = abs(xi - d) <= 0.5
        ok = ok and hit
        parts.append(f"erasure d={d}: {xi:.2f}{'' if hit else ' (MISS)'}")
    for d, lo, hi in ((3, 2.5e-3, 5e-3), (5, 3e-3, 6e-3)):
        xi = _slope_synthetic("pauli",
                              np.logspace(np.log10(lo), np.log10(hi), 4), d)
        want = (d + 1) / 2.0
        hit = abs(xi - want) <= 0.5
        ok = ok and hit
        parts.append(f"pauli d={d}: {xi:.2f}{'' if hit else ' (MISS)'}")
    _report(capsys, 6, "effective error distance", ok, "; ".join(parts))


# ---------------------------------------------------------------------------
# 7. Idle-erasure threshold


def test_criterion_7_idle_threshold(capsys):
    cfg = ex.ExperimentConfig(species="Ca43", qubit="metastable",
                              distances=(5, 7), shots=20000, master_seed=29)
    _, curves = ex.idle_scan(cfg)
    est = stats.estimate_threshold(curves)
    got = 100.0 * est.value if est.crossed else float("nan")
    ok = est.crossed and abs(got - 5.14) <= 0.5

    floor_cfg = ex.ExperimentConfig(species="Ca43", qubit="metastable",
                                    distances=(3,), shots=300000,
                                    master_seed=59)
    rows, _ = ex.idle_scan(floor_cfg, idle_grid=(1e-5, 1e-4, 1e-3))
    rates = [r["p_L"] for r in rows]
    flat = all(r > 0.0 for r in rates) and max(rates) < 3.0 * min(rates)
    ok = ok and flat
    _report(capsys, 7, "idle threshold", ok,
            f"crossing={got:.2f}% vs 5.14%, d=3 floor rates="
            f"{['%.2e' % r for r in rates]}")


# ---------------------------------------------------------------------------
# 8. Qualitative ordering under matched laser settings


def _ordering(species, case, grid, shots, winner):
    cfg = ex.ExperimentConfig(species=species, case=case, distances=(5,),
                              shots=shots, master_seed=37, grid=grid)
    rows, _ = ex.compare_scan(cfg)
    parts, ok = [], True
    for r in rows:
        if winner == "ground":
            sep = r["ci_high_g"] < r["ci_low_m"]
        else:
            sep = r["ci_high_m"] < r["ci_low_g"]
        ok = ok and sep
        parts.append(f"p2q_g={r['p2q_g']:.3g}: g={r['p_L_ground']:.4f} "
                     f"m={r['p_L_meta']:.4f}{'' if sep else ' (OVERLAP)'}")
    return ok, parts


def test_criterion_8_qualitative_ordering(capsys):
    ok2, parts2 = _ordering("Ba133", "II", (4e-3, 8e-3, 1.2e-2), 20000,
                            winner="ground")
    ok3, parts3 = _ordering("Ca43", "III", (7e-3, 1e-2, 1.3e-2), 40000,
                            winner="metastable")
    ok = ok2 and ok3
    _report(capsys, 8, "case II/III ordering", ok,
            "case II " + "; ".join(parts2) + " | case III "
            + "; ".join(parts3))


# ---------------------------------------------------------------------------
# 9. Oracle equivalences


def _inject(schedule, faults):
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


def test_criterion_9_oracle_equivalences(capsys):
    noise = NoiseModel(cnot_channel=depolarizing_cnot_channel(1e-3),
                       p_meas=1e-3, p_idle_per_layer=1e-6)
    c = build_memory_circuit(build_layout(3), 3, noise)
    g = build_detector_graph(c)

    # (a) single-fault signatures agree with the reference interpreter
    ref = RefFrame(c)
    rng = np.random.default_rng(13)
    sig_ok = True
    for op in rng.choice(c.n_ops, 80, replace=False):
        q = int(c.q0[op])
        for pauli in (1, 2, 3):
            dets, flip = _inject(c, [(int(op), q, pauli)])
            rdets, rflip = ref.run(inject=(int(op), q, pauli))
            sig_ok = sig_ok and list(dets) == rdets and flip == rflip

    # (b) exhaustive single-Pauli-fault correction
    fails_1f = 0
    for op in range(c.n_ops):
        qs = [int(c.q0[op])] + ([int(c.q1[op])] if c.q1[op] >= 0 else [])
        for q in qs:
            for pauli in (1, 2, 3):
                dets, flip = _inject(c, [(op, q, pauli)])
                if decode_shot(g, ShotRecord(dets, (), int(flip))) != flip:
                    fails_1f += 1

    # (c) exhaustive 2-erasure correction (any two erased qubits)
    idle_ops = np.flatnonzero(c.kinds == 4)
    fails_2e = 0
    for a in range(len(idle_ops)):
        for b in range(a + 1, len(idle_ops)):
            o1, o2 = int(idle_ops[a]), int(idle_ops[b])
            q1, q2 = int(c.q0[o1]), int(c.q0[o2])
            for pa in range(4):
                for pb in range(4):
                    dets, flip = _inject(c, [(o1, q1, pa), (o2, q2, pb)])
                    rec = ShotRecord(dets, ((o1, q1), (o2, q2)), int(flip))
                    if decode_shot(g, rec) != flip:
                        fails_2e += 1

    # (d) matching optimality against brute force for <= 14 defects
    match_ok = True
    rng = np.random.default_rng(7)
    for _ in range(12):
        n = int(rng.integers(1, 8)) * 2
        dist = rng.uniform(0.1, 10.0, size=(n, n))
        dist = np.triu(dist, 1) + np.triu(dist, 1).T
        mate = min_weight_perfect_matching(dist)
        got = sum(dist[i, mate[i]] for i in range(n)) / 2
        match_ok = match_ok and got == pytest.approx(
            _brute_min_perfect(dist), rel=1e-6)

    # (e) worker-count independent bitwise reproducibility
    b1 = run_batch(c, 400, 99, worker_hint=1)
    b8 = run_batch(c, 400, 99, worker_hint=8)
    repro = (np.array_equal(b1.detectors, b8.detectors)
             and np.array_equal(b1.logical_flips, b8.logical_flips))

    ok = sig_ok and fails_1f == 0 and fails_2e == 0 and match_ok and repro
    _report(capsys, 9, "oracle equivalences", ok,
            f"single-fault fails={fails_1f}, 2-erasure fails={fails_2e}, "
            f"matching ok={match_ok}, workers ok={repro}")
