"""Minimum-weight perfect-matching decoder over the detector graph.

Per shot: edges belonging to heralded gate instances get weight zero,
Dijkstra computes defect-to-defect and defect-to-boundary distances with
the logical parity of each shortest path, and an exact blossom matching
pairs all defects (each defect also gets a virtual boundary partner, and
virtual-virtual pairs are free).  The prediction is the XOR of the
matched paths' logical parities.  Only the Z-type subgraph carries the
measured logical observable; the memory experiment decodes it alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import jit
from .engine import BatchResult, ShotRecord
from .graph import DetectorGraph, SubGraph
from .matching import min_weight_perfect_matching

_INF = 1e18


@jit
def _dijkstra(src, n_total, adj_off, adj_nbr, adj_eid, w, el,
              dist, par, done, heap_d, heap_n):
    for v in range(n_total):
        dist[v] = _INF
        par[v] = 0
        done[v] = False
    dist[src] = 0.0
    hs = 0
    heap_d[0] = 0.0
    heap_n[0] = src
    hs = 1
    while hs > 0:
        # pop min
        du = heap_d[0]
        u = heap_n[0]
        hs -= 1
        heap_d[0] = heap_d[hs]
        heap_n[0] = heap_n[hs]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            small = i
            if l < hs and heap_d[l] < heap_d[small]:
                small = l
            if r < hs and heap_d[r] < heap_d[small]:
                small = r
            if small == i:
                break
            heap_d[i], heap_d[small] = heap_d[small], heap_d[i]
            heap_n[i], heap_n[small] = heap_n[small], heap_n[i]
            i = small
        if done[u] or du > dist[u]:
            continue
        done[u] = True
        for k in range(adj_off[u], adj_off[u + 1]):
            v = adj_nbr[k]
            e = adj_eid[k]
            nd = du + w[e]
            if nd < dist[v]:
                dist[v] = nd
                par[v] = par[u] ^ el[e]
                # push
                j = hs
                heap_d[j] = nd
                heap_n[j] = v
                hs += 1
                while j > 0:
                    p = (j - 1) // 2
                    if heap_d[p] <= heap_d[j]:
                        break
                    heap_d[p], heap_d[j] = heap_d[j], heap_d[p]
                    heap_n[p], heap_n[j] = heap_n[j], heap_n[p]
                    j = p
    return 0


@jit
def _decode_kernel(n_nodes, adj_off, adj_nbr, adj_eid, w, el, defects):
    m = defects.shape[0]
    if m == 0:
        return 0
    n_total = n_nodes + 1  # + boundary node
    boundary = n_nodes
    dall = np.empty((m, m), np.float64)
    ball = np.empty(m, np.float64)
    pall = np.empty((m, m + 1), np.uint8)
    dist = np.empty(n_total, np.float64)
    par = np.empty(n_total, np.uint8)
    done = np.empty(n_total, np.bool_)
    cap = adj_nbr.shape[0] + n_total + 4
    heap_d = np.empty(cap, np.float64)
    heap_n = np.empty(cap, np.int64)
    for i in range(m):
        _dijkstra(defects[i], n_total, adj_off, adj_nbr, adj_eid, w, el,
                  dist, par, done, heap_d, heap_n)
        for j in range(m):
            dall[i, j] = dist[defects[j]]
            pall[i, j] = par[defects[j]]
        ball[i] = dist[boundary]
        pall[i, m] = par[boundary]
    # matching over defects + one virtual boundary copy per defect
    nm = 2 * m
    dmat = np.zeros((nm, nm), np.float64)
    for i in range(m):
        for j in range(i + 1, m):
            dd = dall[i, j]
            if dall[j, i] < dd:
                dd = dall[j, i]
            dmat[i, j] = dd
            dmat[j, i] = dd
        for k in range(m):
            dmat[i, m + k] = ball[i]
            dmat[m + k, i] = ball[i]
    mate = min_weight_perfect_matching(dmat)
    bit = 0
    for i in range(m):
        j = mate[i]
        if j < m:
            if j > i:
                bit ^= pall[i, j]
        else:
            bit ^= pall[i, m]
    return bit


@jit
def _zero_herald_edges(w, sites, site_off, site_eid):
    for s in sites:
        for k in range(site_off[s], site_off[s + 1]):
            w[site_eid[k]] = 0.0


def _herald_sites(graph: DetectorGraph, herald_ops) -> np.ndarray:
    sites = graph.site_of_op[np.asarray(herald_ops, np.int64)]
    return np.unique(sites[sites >= 0]).astype(np.int64)


def _decode_sub(sub: SubGraph, detectors: np.ndarray,
                sites: np.ndarray) -> int:
    if len(sites):
        w = sub.edge_w.copy()
        _zero_herald_edges(w, sites, sub.site_off, sub.site_eid)
    else:
        w = sub.edge_w
    defects = np.flatnonzero(
        detectors[sub.det_ids].astype(np.uint8)).astype(np.int64)
    return int(_decode_kernel(sub.n_nodes, sub.adj_off, sub.adj_nbr,
                              sub.adj_eid, w, sub.edge_logical, defects))


def decode_shot(graph: DetectorGraph, record: ShotRecord) -> int:
    """Predicted logical flip for one shot (Z-type subgraph)."""
    ops = [op for op, _ in record.heralds]
    sites = _herald_sites(graph, ops) if ops else np.empty(0, np.int64)
    return _decode_sub(graph.z, record.detectors, sites)


@dataclass(frozen=True)
class LogicalEstimate:
    failures: int
    shots: int
    rate: float
    ci95: tuple

    def __str__(self):
        return (f"{self.failures}/{self.shots} = {self.rate:.3e} "
                f"[{self.ci95[0]:.3e}, {self.ci95[1]:.3e}]")


def wilson_interval(failures: int, shots: int, z: float = 1.959963984540054):
    """Wilson score 95% confidence interval for a binomial proportion."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    phat = failures / shots
    z2n = z * z / shots
    denom = 1.0 + z2n
    center = (phat + z2n / 2.0) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / shots + z2n / (4.0 * shots)) \
        / denom
    return max(0.0, center - half), min(1.0, center + half)


def decode_batch(graph: DetectorGraph, batch: BatchResult) -> np.ndarray:
    """Predicted logical flips for every shot of a batch."""
    out = np.zeros(batch.shots, np.uint8)
    for s in range(batch.shots):
        ops, _ = batch.heralds[s]
        sites = _herald_sites(graph, ops) if len(ops) else \
            np.empty(0, np.int64)
        out[s] = _decode_sub(graph.z, batch.detectors[s], sites)
    return out


def logical_error_rate(graph: DetectorGraph,
                       batch: BatchResult) -> LogicalEstimate:
    """Failure = decoder prediction differs from the true logical flip."""
    pred = decode_batch(graph, batch)
    failures = int(np.count_nonzero(pred != batch.logical_flips))
    lo, hi = wilson_interval(failures, batch.shots)
    return LogicalEstimate(failures=failures, shots=batch.shots,
                           rate=failures / batch.shots, ci95=(lo, hi))
