"""Array kernels for the edge-rooted shortest-path search.

Each root edge gets one level-synchronous BFS; nodes within a level are
handled in ascending index order. Path counts are int64 and saturate: a root
whose counts would exceed ``COUNT_LIMIT`` is flagged so the caller can redo it
with exact integers.

Family records are rows ``(j, p, q, length, a, b)`` where the family count is
``a * b`` and ``q == -1`` marks an odd family. The prototype of family ``i``
occupies ``edges[ptr[i]:ptr[i + 1]]`` as edge ids.
"""

import numpy as np

from ._accel import njit

COUNT_LIMIT = 1 << 62

U_ONLY = 1
V_ONLY = 2
BOTH = 3


@njit
def _grow(a, need):
    if need <= a.shape[0]:
        return a
    out = np.empty(max(need, 2 * a.shape[0]), dtype=a.dtype)
    out[: a.shape[0]] = a
    return out


@njit
def _grow2(a, need):
    if need <= a.shape[0]:
        return a
    out = np.empty((max(need, 2 * a.shape[0]), a.shape[1]), dtype=a.dtype)
    out[: a.shape[0]] = a
    return out


@njit
def _first_parent(x, target, j, indptr, nbr, eid, rank, dist, anc, npth):
    """Lowest-index DAG parent of ``x`` carrying paths (optionally of one ancestry)."""
    best = -1
    best_e = -1
    for k in range(indptr[x], indptr[x + 1]):
        y = nbr[k]
        if dist[y] != dist[x] - 1 or npth[y] <= 0:
            continue
        if rank[eid[k]] > j:
            continue
        if target != 0 and anc[y] != target:
            continue
        if best < 0 or y < best:
            best = y
            best_e = eid[k]
    return best, best_e


@njit
def _walk(x, j, indptr, nbr, eid, rank, dist, anc, npth, out, pos):
    while dist[x] > 0:
        y, e = _first_parent(x, 0, j, indptr, nbr, eid, rank, dist, anc, npth)
        out[pos] = e
        pos += 1
        x = y
    return pos


@njit
def families_for_roots(roots, us, vs, root_eids, n, indptr, nbr, eid, rank):
    """Run the search for every root in ``roots``.

    Returns ``(records, ptr, edges, overflow)`` where ``overflow[i]`` is 1 when
    root ``roots[i]`` must be recomputed exactly; such roots emit no records.
    """
    dist = np.full(n, -1, dtype=np.int64)
    anc = np.zeros(n, dtype=np.int64)
    npth = np.zeros(n, dtype=np.int64)
    valid = np.ones(n, dtype=np.bool_)
    level = np.empty(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    seen = np.empty(n, dtype=np.int64)

    records = np.empty((16, 6), dtype=np.int64)
    ptr = np.zeros(17, dtype=np.int64)
    edges = np.empty(64, dtype=np.int64)
    overflow = np.zeros(roots.shape[0], dtype=np.int64)
    nrec = 0

    for r in range(roots.shape[0]):
        j = roots[r]
        u = us[r]
        v = vs[r]
        start_rec = nrec
        nseen = 0
        bad = False

        dist[u] = 0
        anc[u] = U_ONLY
        npth[u] = 1
        dist[v] = 0
        anc[v] = V_ONLY
        npth[v] = 1
        seen[0] = u
        seen[1] = v
        nseen = 2
        level[0] = min(u, v)
        level[1] = max(u, v)
        nlevel = 2

        while nlevel > 0 and not bad:
            nnext = 0
            for li in range(nlevel):
                p = level[li]
                d = dist[p]
                if anc[p] == BOTH and valid[p]:
                    n1 = 0
                    n2 = 0
                    for k in range(indptr[p], indptr[p + 1]):
                        x = nbr[k]
                        if dist[x] != d - 1 or npth[x] <= 0 or rank[eid[k]] > j:
                            continue
                        if anc[x] == U_ONLY:
                            n1 += npth[x]
                        elif anc[x] == V_ONLY:
                            n2 += npth[x]
                    if n1 >= COUNT_LIMIT or n2 >= COUNT_LIMIT:
                        bad = True
                        break
                    if n1 > 0 and n2 > 0:
                        length = 2 * d + 1
                        records = _grow2(records, nrec + 1)
                        records[nrec, 0] = j
                        records[nrec, 1] = p
                        records[nrec, 2] = -1
                        records[nrec, 3] = length
                        records[nrec, 4] = n1
                        records[nrec, 5] = n2
                        ptr = _grow(ptr, nrec + 2)
                        base = ptr[nrec]
                        edges = _grow(edges, base + length)
                        pos = base
                        edges[pos] = root_eids[r]
                        pos += 1
                        a, ea = _first_parent(p, U_ONLY, j, indptr, nbr, eid, rank, dist, anc, npth)
                        edges[pos] = ea
                        pos += 1
                        pos = _walk(a, j, indptr, nbr, eid, rank, dist, anc, npth, edges, pos)
                        b, eb = _first_parent(p, V_ONLY, j, indptr, nbr, eid, rank, dist, anc, npth)
                        edges[pos] = eb
                        pos += 1
                        pos = _walk(b, j, indptr, nbr, eid, rank, dist, anc, npth, edges, pos)
                        ptr[nrec + 1] = pos
                        nrec += 1

                for k in range(indptr[p], indptr[p + 1]):
                    q = nbr[k]
                    excluded = rank[eid[k]] > j
                    if dist[q] < 0:
                        dist[q] = d + 1
                        anc[q] = anc[p]
                        valid[q] = anc[p] != BOTH
                        npth[q] = 0 if excluded else npth[p]
                        seen[nseen] = q
                        nseen += 1
                        nxt[nnext] = q
                        nnext += 1
                    elif dist[q] == d + 1:
                        anc[q] |= anc[p]
                        if anc[p] == BOTH:
                            valid[q] = False
                        if npth[p] > 0 and not excluded:
                            npth[q] += npth[p]
                            if npth[q] >= COUNT_LIMIT:
                                bad = True
                    elif anc[p] == U_ONLY and anc[q] == V_ONLY:
                        if excluded or d == 0:
                            continue
                        if npth[p] > 0 and npth[q] > 0:
                            length = 2 * d + 2
                            records = _grow2(records, nrec + 1)
                            records[nrec, 0] = j
                            records[nrec, 1] = p
                            records[nrec, 2] = q
                            records[nrec, 3] = length
                            records[nrec, 4] = npth[p]
                            records[nrec, 5] = npth[q]
                            ptr = _grow(ptr, nrec + 2)
                            base = ptr[nrec]
                            edges = _grow(edges, base + length)
                            pos = base
                            edges[pos] = root_eids[r]
                            edges[pos + 1] = eid[k]
                            pos += 2
                            pos = _walk(p, j, indptr, nbr, eid, rank, dist, anc, npth, edges, pos)
                            pos = _walk(q, j, indptr, nbr, eid, rank, dist, anc, npth, edges, pos)
                            ptr[nrec + 1] = pos
                            nrec += 1
                if bad:
                    break
            nxt[:nnext].sort()
            for i in range(nnext):
                level[i] = nxt[i]
            nlevel = nnext

        for i in range(nseen):
            x = seen[i]
            dist[x] = -1
            anc[x] = 0
            npth[x] = 0
            valid[x] = True
        if bad:
            overflow[r] = 1
            nrec = start_rec

    return records[:nrec].copy(), ptr[: nrec + 1].copy(), edges[: ptr[nrec]].copy(), overflow
