"""Detector matching graph construction.

Every independent fault mechanism in a schedule (CNOT channel branches,
heralded erasure outcomes, idle erasures, measurement flips) is mapped to
its detector signature by a single backward pass that propagates, per
qubit, the set of detectors and the observable that an X or Z fault at
that point in time would flip.  Signatures are split into the Z-type and
X-type detector subgraphs; within a subgraph every mechanism must flip at
most two detectors (this guards the hook-benign CNOT schedule), giving an
edge between them, or between one detector and the boundary node.

Parallel edges with equal endpoints and logical effect merge by
p = p1(1-p2) + p2(1-p1).  Edge weight is -log(p/(1-p)); mechanisms that
occur only inside heralded erasures carry zero baseline probability and a
capped weight, and every edge records the erasure-capable gate instances
(sites) it belongs to so the decoder can zero it on a herald.

Text dump format (one edge per line):
    ionqec-graph 1
    subgraph <Z|X> nodes <n>
    edge <u> <v|boundary> <p> <weight> <logical bit>
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import (CircuitSchedule, K_CNOT, K_H, K_IDLE_ERASE, K_MEAS_Z,
                      K_RESET, K_RESET_MIXED)

W_CAP = 50.0  # weight of edges with zero baseline probability


def _weight(p: float) -> float:
    if p <= 0.0:
        return W_CAP
    return min(-math.log(p / (1.0 - p)), W_CAP)


@dataclass(frozen=True)
class SubGraph:
    basis: str
    det_ids: np.ndarray      # global detector index of each node
    edge_u: np.ndarray       # int32; boundary node id == n_nodes
    edge_v: np.ndarray
    edge_p: np.ndarray       # float64 merged baseline probability
    edge_w: np.ndarray       # float64
    edge_logical: np.ndarray  # uint8
    adj_off: np.ndarray      # CSR over nodes incl boundary
    adj_nbr: np.ndarray
    adj_eid: np.ndarray
    site_off: np.ndarray     # CSR site index -> edge ids
    site_eid: np.ndarray

    def __post_init__(self):
        for a in (self.det_ids, self.edge_u, self.edge_v, self.edge_p,
                  self.edge_w, self.edge_logical, self.adj_off, self.adj_nbr,
                  self.adj_eid, self.site_off, self.site_eid):
            a.setflags(write=False)

    @property
    def n_nodes(self):
        return len(self.det_ids)

    @property
    def boundary(self):
        return len(self.det_ids)

    @property
    def n_edges(self):
        return len(self.edge_u)


@dataclass(frozen=True)
class DetectorGraph:
    z: SubGraph
    x: SubGraph
    site_of_op: np.ndarray   # op index -> dense site index or -1
    n_sites: int

    def __post_init__(self):
        self.site_of_op.setflags(write=False)

    def to_text(self) -> str:
        lines = ["ionqec-graph 1"]
        for sub in (self.z, self.x):
            lines.append(f"subgraph {sub.basis} nodes {sub.n_nodes}")
            for e in range(sub.n_edges):
                v = sub.edge_v[e]
                vs = "boundary" if v == sub.boundary else str(v)
                lines.append("edge %d %s %r %r %d" % (
                    sub.edge_u[e], vs, float(sub.edge_p[e]),
                    float(sub.edge_w[e]), sub.edge_logical[e]))
        return "\n".join(lines) + "\n"


def _pauli_components(p: int):
    """(has_x, has_z) for Pauli code 0=I 1=X 2=Y 3=Z."""
    return (p == 1 or p == 2), (p == 2 or p == 3)


def signature_table(schedule: CircuitSchedule):
    """Detector signatures of single-Pauli faults at every circuit point.

    Returns (sig_x, sig_z): lists indexed [op][qubit] giving the bitmask of
    detectors (bit d) and the observable (top bit, index n_detectors) that
    an X resp. Z fault on that qubit occurring just AFTER that operation
    would flip.  Used by oracle tests and fault-injection sweeps.
    """
    n_det = schedule.n_detectors
    obs_bit = 1 << n_det
    n_q = schedule.n_qubits
    n_ops = schedule.n_ops
    n_meas = schedule.n_measurements
    measmask = [0] * n_meas
    for d, det in enumerate(schedule.detectors):
        for m in det.measurements:
            measmask[m] ^= 1 << d
    for m in schedule.observable:
        measmask[m] ^= obs_bit
    meas_of_op = [-1] * n_ops
    m = n_meas
    for i in range(n_ops - 1, -1, -1):
        if schedule.kinds[i] == K_MEAS_Z:
            m -= 1
            meas_of_op[i] = m
    sig_x = [None] * n_ops
    sig_z = [None] * n_ops
    cx = [0] * n_q
    cz = [0] * n_q
    for i in range(n_ops - 1, -1, -1):
        sig_x[i] = list(cx)
        sig_z[i] = list(cz)
        k = schedule.kinds[i]
        a = schedule.q0[i]
        if k == K_MEAS_Z:
            cx[a] ^= measmask[meas_of_op[i]]
        elif k == K_CNOT:
            b = schedule.q1[i]
            cx[a] ^= cx[b]
            cz[b] ^= cz[a]
        elif k == K_H:
            cx[a], cz[a] = cz[a], cx[a]
        elif k in (K_RESET, K_RESET_MIXED):
            cx[a] = 0
            cz[a] = 0
    return sig_x, sig_z


def build_detector_graph(schedule: CircuitSchedule) -> DetectorGraph:
    n_det = schedule.n_detectors
    obs_bit = 1 << n_det
    n_q = schedule.n_qubits
    kinds = schedule.kinds
    q0 = schedule.q0
    q1 = schedule.q1
    chanidx = schedule.chan
    prob = schedule.prob
    n_ops = schedule.n_ops

    # measurement masks: which detectors/observable each measurement flips
    n_meas = schedule.n_measurements
    measmask = [0] * n_meas
    for d, det in enumerate(schedule.detectors):
        for m in det.measurements:
            measmask[m] ^= 1 << d
    for m in schedule.observable:
        measmask[m] ^= obs_bit

    zmask = 0
    xmask = 0
    for d, det in enumerate(schedule.detectors):
        if det.basis == "Z":
            zmask |= 1 << d
        else:
            xmask |= 1 << d
    zmask |= obs_bit

    # node numbering inside each subgraph
    z_ids = [d for d, det in enumerate(schedule.detectors)
             if det.basis == "Z"]
    x_ids = [d for d, det in enumerate(schedule.detectors)
             if det.basis == "X"]
    node_of = {}
    for i, d in enumerate(z_ids):
        node_of[d] = (0, i)
    for i, d in enumerate(x_ids):
        node_of[d] = (1, i)
    n_nodes = (len(z_ids), len(x_ids))

    # erasure-capable sites: CNOTs with heralding channels and idle steps
    site_of_op = np.full(n_ops, -1, np.int32)
    n_sites = 0
    for i in range(n_ops):
        k = kinds[i]
        if k == K_IDLE_ERASE and prob[i] > 0.0:
            site_of_op[i] = n_sites
            n_sites += 1
        elif k == K_CNOT and chanidx[i] >= 0:
            if schedule.channels[chanidx[i]].heralded_erasure_prob > 0.0:
                site_of_op[i] = n_sites
                n_sites += 1

    # measurement index of each MZ op (in op order)
    meas_of_op = np.full(n_ops, -1, np.int32)
    m = n_meas
    for i in range(n_ops - 1, -1, -1):
        if kinds[i] == K_MEAS_Z:
            m -= 1
            meas_of_op[i] = m

    # merged edges: key (sub, u, v, logical) -> [prob, site set]
    acc: dict = {}

    def record(sig: int, p: float, heralded: bool, site: int):
        if sig == 0:
            return
        for sub, mask in ((0, zmask), (1, xmask)):
            part = sig & mask
            if part == 0:
                continue
            logical = 1 if part & obs_bit else 0
            bits = part & ~obs_bit
            ds = []
            while bits:
                low = bits & -bits
                ds.append(low.bit_length() - 1)
                bits ^= low
            if len(ds) > 2:
                raise ValueError(
                    "fault mechanism flips %d detectors in one subgraph; "
                    "schedule is not matchable" % len(ds))
            if not ds:
                if logical:
                    raise ValueError(
                        "fault mechanism flips the observable without any "
                        "detector")
                continue
            u = node_of[ds[0]][1]
            if len(ds) == 2:
                v = node_of[ds[1]][1]
                if node_of[ds[0]][0] != sub or node_of[ds[1]][0] != sub:
                    raise AssertionError("subgraph split inconsistency")
                if u > v:
                    u, v = v, u
            else:
                v = n_nodes[sub]  # boundary
            key = (sub, u, v, logical)
            ent = acc.get(key)
            if ent is None:
                ent = [0.0, set()]
                acc[key] = ent
            if not heralded:
                p1 = ent[0]
                ent[0] = p1 * (1.0 - p) + p * (1.0 - p1)
            if site >= 0:
                ent[1].add(site)

    # backward signature propagation
    sig_x = [0] * n_q  # effect of an X fault on qubit q after current op
    sig_z = [0] * n_q
    for i in range(n_ops - 1, -1, -1):
        k = kinds[i]
        a = q0[i]
        if k == K_MEAS_Z:
            mm = measmask[meas_of_op[i]]
            if prob[i] > 0.0:
                record(mm, float(prob[i]), False, -1)
            sig_x[a] ^= mm
        elif k == K_CNOT:
            b = q1[i]
            ci = chanidx[i]
            if ci >= 0:
                ch = schedule.channels[ci]
                site = int(site_of_op[i])

                def cnot_sig(pc, pt):
                    s = 0
                    cx, cz = _pauli_components(pc)
                    tx, tz = _pauli_components(pt)
                    if cx:
                        s ^= sig_x[a]
                    if cz:
                        s ^= sig_z[a]
                    if tx:
                        s ^= sig_x[b]
                    if tz:
                        s ^= sig_z[b]
                    return s

                for pc, pt, p in ch.elementary_faults():
                    record(cnot_sig(pc, pt), p, False, site)
                for pc, pt, p in ch.erasure_outcomes():
                    record(cnot_sig(pc, pt), p, True, site)
            sig_x[a] ^= sig_x[b]
            sig_z[b] ^= sig_z[a]
        elif k == K_IDLE_ERASE:
            if prob[i] > 0.0:
                site = int(site_of_op[i])
                p4 = float(prob[i]) / 4.0
                record(sig_x[a], p4, True, site)               # X
                record(sig_x[a] ^ sig_z[a], p4, True, site)    # Y
                record(sig_z[a], p4, True, site)               # Z
        elif k == K_H:
            sig_x[a], sig_z[a] = sig_z[a], sig_x[a]
        elif k in (K_RESET, K_RESET_MIXED):
            sig_x[a] = 0
            sig_z[a] = 0

    # assemble per-subgraph arrays
    subs = []
    for sub, det_ids in ((0, z_ids), (1, x_ids)):
        keys = sorted(k for k in acc if k[0] == sub)
        ne = len(keys)
        eu = np.zeros(ne, np.int32)
        ev = np.zeros(ne, np.int32)
        ep = np.zeros(ne, np.float64)
        ew = np.zeros(ne, np.float64)
        el = np.zeros(ne, np.uint8)
        site_lists = [[] for _ in range(n_sites)]
        nn = n_nodes[sub]
        deg = np.zeros(nn + 2, np.int64)
        for e, key in enumerate(keys):
            _, u, v, logical = key
            p, sites = acc[key]
            eu[e] = u
            ev[e] = v
            ep[e] = p
            ew[e] = _weight(p)
            el[e] = logical
            for s in sites:
                site_lists[s].append(e)
            deg[u + 1] += 1
            deg[v + 1] += 1
        adj_off = np.cumsum(deg)[: nn + 2].astype(np.int64)
        total = int(adj_off[nn + 1])
        adj_nbr = np.zeros(total, np.int32)
        adj_eid = np.zeros(total, np.int32)
        cursor = adj_off[:-1].copy()
        for e in range(ne):
            u, v = int(eu[e]), int(ev[e])
            adj_nbr[cursor[u]] = v
            adj_eid[cursor[u]] = e
            cursor[u] += 1
            adj_nbr[cursor[v]] = u
            adj_eid[cursor[v]] = e
            cursor[v] += 1
        soff = np.zeros(n_sites + 1, np.int64)
        for s in range(n_sites):
            soff[s + 1] = soff[s] + len(site_lists[s])
        seid = np.zeros(int(soff[-1]), np.int32)
        for s in range(n_sites):
            seid[soff[s]:soff[s + 1]] = site_lists[s]
        subs.append(SubGraph(
            basis="Z" if sub == 0 else "X",
            det_ids=np.array(det_ids, np.int32),
            edge_u=eu, edge_v=ev, edge_p=ep, edge_w=ew, edge_logical=el,
            adj_off=adj_off, adj_nbr=adj_nbr, adj_eid=adj_eid,
            site_off=soff, site_eid=seid))

    return DetectorGraph(z=subs[0], x=subs[1], site_of_op=site_of_op,
                         n_sites=n_sites)
