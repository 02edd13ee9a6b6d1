"""Exact maximum-weight matching (blossom algorithm) on dense graphs.

Array-based port of the Galil / van Rantwijk primal-dual blossom algorithm
(the algorithm behind networkx.max_weight_matching), specialized to a
complete graph given as an int64 weight matrix so it compiles under numba
and can run inside the per-shot decoding loop.  Integer weights keep the
dual updates exact; min_weight_perfect_matching quantizes float distances.

Blossom ids: vertices are 0..n-1 and double as their own trivial blossoms;
nontrivial blossoms occupy ids n..2n-1.  -1 encodes "none" throughout.
"""

from __future__ import annotations

import numpy as np

from .backend import jit

_NONE = -1


@jit
def _leaves(b, n, childs, childs_len, buf):
    """Write the leaf vertices of blossom b into buf; return the count."""
    if b < n:
        buf[0] = b
        return 1
    cnt = 0
    stack = np.empty(2 * n, np.int64)
    sp = 1
    stack[0] = b
    while sp > 0:
        sp -= 1
        t = stack[sp]
        if t < n:
            buf[cnt] = t
            cnt += 1
        else:
            for i in range(childs_len[t - n]):
                stack[sp] = childs[t - n, i]
                sp += 1
    return cnt


@jit
def _assign_label(w, t, v, n, mate, label, le_v, le_w, inblossom, blossombase,
                  bestedge_v, childs, childs_len, queue, qlen, leafbuf):
    """Label vertex w (and its top blossom) with t; follow the T->S chain."""
    while True:
        b = inblossom[w]
        label[w] = t
        label[b] = t
        if v != _NONE:
            le_v[w] = v
            le_w[w] = w
            le_v[b] = v
            le_w[b] = w
        else:
            le_v[w] = _NONE
            le_w[w] = _NONE
            le_v[b] = _NONE
            le_w[b] = _NONE
        bestedge_v[w] = _NONE
        bestedge_v[b] = _NONE
        if t == 1:
            cnt = _leaves(b, n, childs, childs_len, leafbuf)
            for i in range(cnt):
                queue[qlen] = leafbuf[i]
                qlen += 1
            return qlen
        base = blossombase[b]
        v = base
        w = mate[base]
        t = 1


@jit
def _scan_blossom(v, w, label, le_v, inblossom, blossombase, path):
    """Trace both alternating paths to a common ancestor blossom base."""
    plen = 0
    base = _NONE
    while v != _NONE:
        b = inblossom[v]
        if label[b] & 4:
            base = blossombase[b]
            break
        path[plen] = b
        plen += 1
        label[b] = 5
        if le_v[b] == _NONE:
            v = _NONE
        else:
            v = le_v[b]
            b = inblossom[v]
            v = le_v[b]
        if w != _NONE:
            tmp = v
            v = w
            w = tmp
    for i in range(plen):
        label[path[i]] = 1
    return base


@jit
def _augment_blossom(b, v, n, mate, blossomparent, blossombase,
                     childs, childs_len, edges_v, edges_w,
                     stk_b, stk_v, stk_i, stk_j, stk_step, stk_w, stk_x,
                     stk_pc, rot_buf):
    """Rotate blossom b so vertex v becomes its base (iterative recursion)."""
    sp = 0
    stk_b[0] = b
    stk_v[0] = v
    stk_pc[0] = 0
    while sp >= 0:
        fb = stk_b[sp]
        fbi = fb - n
        cl = childs_len[fbi]
        pc = stk_pc[sp]
        if pc == 0:
            t = stk_v[sp]
            while blossomparent[t] != fb:
                t = blossomparent[t]
            idx = 0
            for ci in range(cl):
                if childs[fbi, ci] == t:
                    idx = ci
                    break
            stk_i[sp] = idx
            if idx & 1:
                stk_j[sp] = idx - cl
                stk_step[sp] = 1
            else:
                stk_j[sp] = idx
                stk_step[sp] = -1
            stk_pc[sp] = 1
            if t >= n:
                sp += 1
                stk_b[sp] = t
                stk_v[sp] = stk_v[sp - 1]
                stk_pc[sp] = 0
            continue
        if pc == 1:
            if stk_j[sp] == 0:
                idx = stk_i[sp]
                if idx > 0:
                    for ci in range(cl):
                        rot_buf[ci] = childs[fbi, (ci + idx) % cl]
                    for ci in range(cl):
                        childs[fbi, ci] = rot_buf[ci]
                    for ci in range(cl):
                        rot_buf[ci] = edges_v[fbi, (ci + idx) % cl]
                    for ci in range(cl):
                        edges_v[fbi, ci] = rot_buf[ci]
                    for ci in range(cl):
                        rot_buf[ci] = edges_w[fbi, (ci + idx) % cl]
                    for ci in range(cl):
                        edges_w[fbi, ci] = rot_buf[ci]
                blossombase[fb] = blossombase[childs[fbi, 0]]
                sp -= 1
                continue
            stk_j[sp] += stk_step[sp]
            j = stk_j[sp]
            t = childs[fbi, j % cl]
            if stk_step[sp] == 1:
                ww = edges_v[fbi, j % cl]
                xx = edges_w[fbi, j % cl]
            else:
                xx = edges_v[fbi, (j - 1) % cl]
                ww = edges_w[fbi, (j - 1) % cl]
            stk_w[sp] = ww
            stk_x[sp] = xx
            stk_pc[sp] = 2
            if t >= n:
                sp += 1
                stk_b[sp] = t
                stk_v[sp] = ww
                stk_pc[sp] = 0
            continue
        if pc == 2:
            stk_j[sp] += stk_step[sp]
            j = stk_j[sp]
            t = childs[fbi, j % cl]
            stk_pc[sp] = 3
            if t >= n:
                sp += 1
                stk_b[sp] = t
                stk_v[sp] = stk_x[sp - 1]
                stk_pc[sp] = 0
            continue
        # pc == 3: match the edge between the two sub-blossoms just handled
        mate[stk_w[sp]] = stk_x[sp]
        mate[stk_x[sp]] = stk_w[sp]
        stk_pc[sp] = 1
    return 0


@jit
def _expand_blossom(b, endstage, n, mate, label, le_v, le_w, inblossom,
                    blossomparent, blossombase, bestedge_v, bestedge_w,
                    dualvar, blossom_inuse, mb_valid, childs, childs_len,
                    edges_v, edges_w, allowed, queue, qlen, unused, n_unused,
                    leafbuf, work):
    """Dissolve blossom b; relabel its interior when mid-stage (T label)."""
    work[0] = b
    wl = 1
    while wl > 0:
        wl -= 1
        cur = work[wl]
        ci0 = cur - n
        cl = childs_len[ci0]
        for ci in range(cl):
            s = childs[ci0, ci]
            blossomparent[s] = _NONE
            if s < n:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                work[wl] = s
                wl += 1
            else:
                cnt = _leaves(s, n, childs, childs_len, leafbuf)
                for i in range(cnt):
                    inblossom[leafbuf[i]] = s
        if (not endstage) and label[cur] == 2:
            # Relabel the even half of the blossom cycle between the entry
            # child and the base; clear labels on the odd half.
            entrychild = inblossom[le_w[cur]]
            j = 0
            for ci in range(cl):
                if childs[ci0, ci] == entrychild:
                    j = ci
                    break
            if j & 1:
                j -= cl
                jstep = 1
            else:
                jstep = -1
            v = le_v[cur]
            w = le_w[cur]
            while j != 0:
                if jstep == 1:
                    p = edges_v[ci0, j % cl]
                    q = edges_w[ci0, j % cl]
                else:
                    q = edges_v[ci0, (j - 1) % cl]
                    p = edges_w[ci0, (j - 1) % cl]
                label[w] = 0
                label[q] = 0
                qlen = _assign_label(w, 2, v, n, mate, label, le_v, le_w,
                                     inblossom, blossombase, bestedge_v,
                                     childs, childs_len, queue, qlen, leafbuf)
                allowed[p, q] = True
                allowed[q, p] = True
                j += jstep
                if jstep == 1:
                    v = edges_v[ci0, j % cl]
                    w = edges_w[ci0, j % cl]
                else:
                    w = edges_v[ci0, (j - 1) % cl]
                    v = edges_w[ci0, (j - 1) % cl]
                allowed[v, w] = True
                allowed[w, v] = True
                j += jstep
            bw = childs[ci0, j % cl]
            label[w] = 2
            label[bw] = 2
            le_v[w] = v
            le_w[w] = w
            le_v[bw] = v
            le_w[bw] = w
            bestedge_v[bw] = _NONE
            j += jstep
            while childs[ci0, j % cl] != entrychild:
                bv = childs[ci0, j % cl]
                if label[bv] == 1:
                    j += jstep
                    continue
                lv = _NONE
                if bv >= n:
                    cnt = _leaves(bv, n, childs, childs_len, leafbuf)
                    for i in range(cnt):
                        if label[leafbuf[i]] != 0:
                            lv = leafbuf[i]
                            break
                else:
                    lv = bv
                if lv != _NONE and label[lv] != 0:
                    label[lv] = 0
                    label[mate[blossombase[bv]]] = 0
                    qlen = _assign_label(lv, 2, le_v[lv], n, mate, label,
                                         le_v, le_w, inblossom, blossombase,
                                         bestedge_v, childs, childs_len,
                                         queue, qlen, leafbuf)
                j += jstep
        label[cur] = 0
        le_v[cur] = _NONE
        le_w[cur] = _NONE
        bestedge_v[cur] = _NONE
        bestedge_w[cur] = _NONE
        blossomparent[cur] = _NONE
        blossombase[cur] = _NONE
        dualvar[cur] = 0
        blossom_inuse[ci0] = False
        mb_valid[ci0] = False
        unused[n_unused] = cur
        n_unused += 1
    return qlen, n_unused


@jit
def _add_blossom(base, v, w, n, label, le_v, le_w, inblossom, blossomparent,
                 blossombase, bestedge_v, bestedge_w, dualvar, blossom_inuse,
                 childs, childs_len, edges_v, edges_w,
                 mb_v, mb_w, mb_len, mb_valid, wmat,
                 queue, qlen, unused, n_unused, leafbuf, leafbuf2,
                 trace_b, trace_ev, trace_ew, bet_v, bet_w):
    """Shrink the odd alternating cycle through v-w rooted at base."""
    bb = inblossom[base]
    bv = inblossom[v]
    bw = inblossom[w]
    n_unused -= 1
    b = unused[n_unused]
    bi = b - n
    blossom_inuse[bi] = True
    blossombase[b] = base
    blossomparent[b] = _NONE
    blossomparent[bb] = b
    # trace from v back to the base blossom
    tlen = 0
    t = v
    bt = bv
    while bt != bb:
        blossomparent[bt] = b
        trace_b[tlen] = bt
        trace_ev[tlen] = le_v[bt]
        trace_ew[tlen] = le_w[bt]
        tlen += 1
        t = le_v[bt]
        bt = inblossom[t]
    clen = 0
    elen = 0
    childs[bi, clen] = bb
    clen += 1
    for i in range(tlen - 1, -1, -1):
        childs[bi, clen] = trace_b[i]
        clen += 1
        edges_v[bi, elen] = trace_ev[i]
        edges_w[bi, elen] = trace_ew[i]
        elen += 1
    edges_v[bi, elen] = v
    edges_w[bi, elen] = w
    elen += 1
    # trace from w back to the base blossom
    t = w
    bt = bw
    while bt != bb:
        blossomparent[bt] = b
        childs[bi, clen] = bt
        clen += 1
        edges_v[bi, elen] = le_w[bt]
        edges_w[bi, elen] = le_v[bt]
        elen += 1
        t = le_v[bt]
        bt = inblossom[t]
    childs_len[bi] = clen
    label[b] = 1
    le_v[b] = le_v[bb]
    le_w[b] = le_w[bb]
    dualvar[b] = 0
    cnt = _leaves(b, n, childs, childs_len, leafbuf)
    for i in range(cnt):
        lv = leafbuf[i]
        if label[inblossom[lv]] == 2:
            queue[qlen] = lv
            qlen += 1
        inblossom[lv] = b
    # best-edge lists: cheapest edge to every neighbouring S-blossom
    n2 = 2 * n
    for j in range(n2):
        bet_v[j] = _NONE
        bet_w[j] = _NONE
    for ci in range(clen):
        cb = childs[bi, ci]
        if cb >= n and mb_valid[cb - n]:
            for ei in range(mb_len[cb - n]):
                iv = mb_v[cb - n, ei]
                iw = mb_w[cb - n, ei]
                if inblossom[iw] == b:
                    tmp = iv
                    iv = iw
                    iw = tmp
                bj = inblossom[iw]
                if bj != b and label[bj] == 1:
                    ks = dualvar[iv] + dualvar[iw] - 2 * wmat[iv, iw]
                    if bet_v[bj] == _NONE or ks < (
                        dualvar[bet_v[bj]] + dualvar[bet_w[bj]]
                        - 2 * wmat[bet_v[bj], bet_w[bj]]
                    ):
                        bet_v[bj] = iv
                        bet_w[bj] = iw
            mb_valid[cb - n] = False
        else:
            cnt2 = _leaves(cb, n, childs, childs_len, leafbuf2)
            for i in range(cnt2):
                iv = leafbuf2[i]
                for iw in range(n):
                    if iw == iv:
                        continue
                    bj = inblossom[iw]
                    if bj != b and label[bj] == 1:
                        ks = dualvar[iv] + dualvar[iw] - 2 * wmat[iv, iw]
                        if bet_v[bj] == _NONE or ks < (
                            dualvar[bet_v[bj]] + dualvar[bet_w[bj]]
                            - 2 * wmat[bet_v[bj], bet_w[bj]]
                        ):
                            bet_v[bj] = iv
                            bet_w[bj] = iw
        bestedge_v[cb] = _NONE
        bestedge_w[cb] = _NONE
    ml = 0
    for j in range(n2):
        if bet_v[j] != _NONE:
            mb_v[bi, ml] = bet_v[j]
            mb_w[bi, ml] = bet_w[j]
            ml += 1
    mb_len[bi] = ml
    mb_valid[bi] = True
    bestedge_v[b] = _NONE
    bestedge_w[b] = _NONE
    best = np.int64(0)
    for ei in range(ml):
        iv = mb_v[bi, ei]
        iw = mb_w[bi, ei]
        ks = dualvar[iv] + dualvar[iw] - 2 * wmat[iv, iw]
        if bestedge_v[b] == _NONE or ks < best:
            best = ks
            bestedge_v[b] = iv
            bestedge_w[b] = iw
    return qlen, n_unused


@jit
def max_weight_matching_dense(wmat, maxcardinality):
    """Maximum-weight matching of the complete graph on wmat's vertices.

    wmat: symmetric (n, n) int64 weight matrix, diagonal ignored.
    Returns mate: mate[v] is v's partner, or -1 if v is single.
    """
    n = wmat.shape[0]
    mate = np.full(n, _NONE, np.int64)
    if n < 2:
        return mate
    n2 = 2 * n

    maxweight = np.int64(0)
    for i in range(n):
        for j in range(n):
            if i != j and wmat[i, j] > maxweight:
                maxweight = wmat[i, j]

    label = np.zeros(n2, np.int64)
    le_v = np.full(n2, _NONE, np.int64)
    le_w = np.full(n2, _NONE, np.int64)
    inblossom = np.arange(n)
    blossomparent = np.full(n2, _NONE, np.int64)
    blossombase = np.full(n2, _NONE, np.int64)
    for i in range(n):
        blossombase[i] = i
    bestedge_v = np.full(n2, _NONE, np.int64)
    bestedge_w = np.full(n2, _NONE, np.int64)
    dualvar = np.zeros(n2, np.int64)
    for i in range(n):
        dualvar[i] = maxweight
    blossom_inuse = np.zeros(n, np.bool_)
    unused = np.empty(n, np.int64)
    for i in range(n):
        unused[i] = n + i
    n_unused = n

    childs = np.full((n, n + 2), _NONE, np.int64)
    childs_len = np.zeros(n, np.int64)
    edges_v = np.full((n, n + 2), _NONE, np.int64)
    edges_w = np.full((n, n + 2), _NONE, np.int64)
    mb_v = np.full((n, n + 1), _NONE, np.int64)
    mb_w = np.full((n, n + 1), _NONE, np.int64)
    mb_len = np.zeros(n, np.int64)
    mb_valid = np.zeros(n, np.bool_)

    allowed = np.zeros((n, n), np.bool_)
    queue = np.empty(4 * n * n + 8, np.int64)
    leafbuf = np.empty(n, np.int64)
    leafbuf2 = np.empty(n, np.int64)
    path = np.empty(n2, np.int64)
    trace_b = np.empty(n2, np.int64)
    trace_ev = np.empty(n2, np.int64)
    trace_ew = np.empty(n2, np.int64)
    bet_v = np.empty(n2, np.int64)
    bet_w = np.empty(n2, np.int64)
    work = np.empty(n + 2, np.int64)
    stk_b = np.empty(n + 2, np.int64)
    stk_v = np.empty(n + 2, np.int64)
    stk_i = np.empty(n + 2, np.int64)
    stk_j = np.empty(n + 2, np.int64)
    stk_step = np.empty(n + 2, np.int64)
    stk_w = np.empty(n + 2, np.int64)
    stk_x = np.empty(n + 2, np.int64)
    stk_pc = np.empty(n + 2, np.int64)

    while True:  # one stage per augmentation
        for i in range(n2):
            label[i] = 0
            le_v[i] = _NONE
            le_w[i] = _NONE
            bestedge_v[i] = _NONE
            bestedge_w[i] = _NONE
        for i in range(n):
            mb_valid[i] = False
        allowed[:, :] = False
        qlen = 0

        for v in range(n):
            if mate[v] == _NONE and label[inblossom[v]] == 0:
                qlen = _assign_label(v, 1, _NONE, n, mate, label, le_v, le_w,
                                     inblossom, blossombase, bestedge_v,
                                     childs, childs_len, queue, qlen, leafbuf)

        augmented = False
        while True:  # substages
            while qlen > 0 and not augmented:
                qlen -= 1
                v = queue[qlen]
                for w in range(n):
                    if w == v:
                        continue
                    bv = inblossom[v]
                    bw = inblossom[w]
                    if bv == bw:
                        continue
                    kslack = dualvar[v] + dualvar[w] - 2 * wmat[v, w]
                    if not allowed[v, w] and kslack <= 0:
                        allowed[v, w] = True
                        allowed[w, v] = True
                    if allowed[v, w]:
                        if label[bw] == 0:
                            qlen = _assign_label(
                                w, 2, v, n, mate, label, le_v, le_w,
                                inblossom, blossombase, bestedge_v,
                                childs, childs_len, queue, qlen, leafbuf)
                        elif label[bw] == 1:
                            base = _scan_blossom(v, w, label, le_v, inblossom,
                                                 blossombase, path)
                            if base != _NONE:
                                qlen, n_unused = _add_blossom(
                                    base, v, w, n, label, le_v, le_w,
                                    inblossom, blossomparent, blossombase,
                                    bestedge_v, bestedge_w, dualvar,
                                    blossom_inuse, childs, childs_len,
                                    edges_v, edges_w, mb_v, mb_w, mb_len,
                                    mb_valid, wmat, queue, qlen, unused,
                                    n_unused, leafbuf, leafbuf2,
                                    trace_b, trace_ev, trace_ew, bet_v, bet_w)
                            else:
                                # augment the matching along the v-w path
                                for side in range(2):
                                    if side == 0:
                                        s = v
                                        t = w
                                    else:
                                        s = w
                                        t = v
                                    while True:
                                        bs = inblossom[s]
                                        if bs >= n:
                                            _augment_blossom(
                                                bs, s, n, mate, blossomparent,
                                                blossombase, childs,
                                                childs_len, edges_v, edges_w,
                                                stk_b, stk_v, stk_i, stk_j,
                                                stk_step, stk_w, stk_x,
                                                stk_pc, path)
                                        mate[s] = t
                                        if le_v[bs] == _NONE:
                                            break
                                        tt = le_v[bs]
                                        bt = inblossom[tt]
                                        s2 = le_v[bt]
                                        t2 = le_w[bt]
                                        if bt >= n:
                                            _augment_blossom(
                                                bt, t2, n, mate, blossomparent,
                                                blossombase, childs,
                                                childs_len, edges_v, edges_w,
                                                stk_b, stk_v, stk_i, stk_j,
                                                stk_step, stk_w, stk_x,
                                                stk_pc, path)
                                        mate[t2] = s2
                                        s = s2
                                        t = t2
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            le_v[w] = v
                            le_w[w] = w
                    elif label[bw] == 1:
                        if bestedge_v[bv] == _NONE or kslack < (
                            dualvar[bestedge_v[bv]] + dualvar[bestedge_w[bv]]
                            - 2 * wmat[bestedge_v[bv], bestedge_w[bv]]
                        ):
                            bestedge_v[bv] = v
                            bestedge_w[bv] = w
                    elif label[w] == 0:
                        if bestedge_v[w] == _NONE or kslack < (
                            dualvar[bestedge_v[w]] + dualvar[bestedge_w[w]]
                            - 2 * wmat[bestedge_v[w], bestedge_w[w]]
                        ):
                            bestedge_v[w] = v
                            bestedge_w[w] = w

            if augmented:
                break

            # choose the smallest dual adjustment that creates progress
            deltatype = -1
            delta = np.int64(0)
            deltaedge_v = _NONE
            deltaedge_w = _NONE
            deltablossom = _NONE

            if not maxcardinality:
                deltatype = 1
                delta = dualvar[0]
                for i in range(n):
                    if dualvar[i] < delta:
                        delta = dualvar[i]

            for v in range(n):
                if label[inblossom[v]] == 0 and bestedge_v[v] != _NONE:
                    d = (dualvar[bestedge_v[v]] + dualvar[bestedge_w[v]]
                         - 2 * wmat[bestedge_v[v], bestedge_w[v]])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge_v = bestedge_v[v]
                        deltaedge_w = bestedge_w[v]

            for b in range(n2):
                if b >= n and not blossom_inuse[b - n]:
                    continue
                if (blossomparent[b] == _NONE and label[b] == 1
                        and bestedge_v[b] != _NONE):
                    ks = (dualvar[bestedge_v[b]] + dualvar[bestedge_w[b]]
                          - 2 * wmat[bestedge_v[b], bestedge_w[b]])
                    d = ks // 2
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge_v = bestedge_v[b]
                        deltaedge_w = bestedge_w[b]

            for b in range(n, n2):
                if (blossom_inuse[b - n] and blossomparent[b] == _NONE
                        and label[b] == 2
                        and (deltatype == -1 or dualvar[b] < delta)):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b

            if deltatype == -1:
                # no progress possible; maximum-cardinality final step
                deltatype = 1
                dmin = dualvar[0]
                for i in range(n):
                    if dualvar[i] < dmin:
                        dmin = dualvar[i]
                delta = dmin if dmin > 0 else np.int64(0)

            for v in range(n):
                lbl = label[inblossom[v]]
                if lbl == 1:
                    dualvar[v] -= delta
                elif lbl == 2:
                    dualvar[v] += delta
            for b in range(n, n2):
                if blossom_inuse[b - n] and blossomparent[b] == _NONE:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2 or deltatype == 3:
                allowed[deltaedge_v, deltaedge_w] = True
                allowed[deltaedge_w, deltaedge_v] = True
                queue[qlen] = deltaedge_v
                qlen += 1
            else:
                qlen, n_unused = _expand_blossom(
                    deltablossom, False, n, mate, label, le_v, le_w,
                    inblossom, blossomparent, blossombase, bestedge_v,
                    bestedge_w, dualvar, blossom_inuse, mb_valid, childs,
                    childs_len, edges_v, edges_w, allowed, queue, qlen,
                    unused, n_unused, leafbuf, work)

        if not augmented:
            break

        # dissolve S-blossoms whose dual dropped to zero
        for b in range(n, n2):
            if (blossom_inuse[b - n] and blossomparent[b] == _NONE
                    and blossombase[b] != _NONE and label[b] == 1
                    and dualvar[b] == 0):
                qlen, n_unused = _expand_blossom(
                    b, True, n, mate, label, le_v, le_w, inblossom,
                    blossomparent, blossombase, bestedge_v, bestedge_w,
                    dualvar, blossom_inuse, mb_valid, childs, childs_len,
                    edges_v, edges_w, allowed, queue, qlen, unused,
                    n_unused, leafbuf, work)

    return mate


@jit
def min_weight_perfect_matching(dist):
    """Minimum-weight perfect matching of an even complete graph.

    dist: symmetric (n, n) float64 distance matrix, n even.  Distances are
    quantized at 32-bit relative resolution so the blossom arithmetic is
    exact; ties below that resolution break deterministically.
    """
    n = dist.shape[0]
    if n == 0:
        return np.empty(0, np.int64)
    dmax = 0.0
    for i in range(n):
        for j in range(n):
            if i != j and dist[i, j] > dmax:
                dmax = dist[i, j]
    if dmax <= 0.0:
        dmax = 1.0
    scale = float(np.int64(1) << 32) / dmax
    wmat = np.empty((n, n), np.int64)
    top = np.int64(0)
    for i in range(n):
        for j in range(n):
            if i == j:
                wmat[i, j] = 0
            else:
                q = np.int64(np.rint(dist[i, j] * scale))
                wmat[i, j] = q
                if q > top:
                    top = q
    top += 1
    for i in range(n):
        for j in range(n):
            if i != j:
                wmat[i, j] = top - wmat[i, j]
    return max_weight_matching_dense(wmat, True)
