"""Pure numpy/python fallback implementations of the hot kernels.

Same signatures as ``_kernels_nb``; sequential parts run as plain Python
loops over numpy arrays.
"""

from __future__ import annotations

import numpy as np

U64 = np.uint64


# ---------------------------------------------------------------------------
# union-find


def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def mst_select(edge_u, edge_v, order, n_nodes):
    """Greedy spanning-forest selection over edges processed in ``order``.

    Returns a boolean mask (aligned to the edge arrays) of selected edges.
    """
    parent = np.arange(n_nodes, dtype=np.int64)
    mask = np.zeros(edge_u.shape[0], dtype=bool)
    for e in order:
        ru = _uf_find(parent, edge_u[e])
        rv = _uf_find(parent, edge_v[e])
        if ru != rv:
            parent[ru] = rv
            mask[e] = True
    return mask


def union_pairs(n_elems, pair_a, pair_b):
    """Union the given element pairs; returns the final root of every element."""
    parent = np.arange(n_elems, dtype=np.int64)
    for i in range(pair_a.shape[0]):
        ra = _uf_find(parent, pair_a[i])
        rb = _uf_find(parent, pair_b[i])
        if ra != rb:
            parent[ra] = rb
    roots = np.empty(n_elems, dtype=np.int64)
    for x in range(n_elems):
        roots[x] = _uf_find(parent, x)
    return roots


# ---------------------------------------------------------------------------
# surface orientation / cutting


def propagate_orientation(neighbor, flip_rel):
    """BFS the triangle dual graph assigning orientation flips.

    ``neighbor[t, k]`` is the triangle across the k-th edge of t (-1 on
    boundary), ``flip_rel[t, k]`` is 1 when that neighbor must be flipped
    relative to t.  Returns (flips, t1, t2); t1 == t2 == -1 when consistent,
    else the offending pair.
    """
    n = neighbor.shape[0]
    flips = np.full(n, -1, dtype=np.int8)
    stack = np.empty(n, dtype=np.int64)
    for seed in range(n):
        if flips[seed] != -1:
            continue
        flips[seed] = 0
        stack[0] = seed
        top = 1
        while top:
            top -= 1
            t = stack[top]
            for k in range(neighbor.shape[1]):
                nb = neighbor[t, k]
                if nb < 0:
                    continue
                want = flips[t] ^ flip_rel[t, k]
                if flips[nb] == -1:
                    flips[nb] = want
                    stack[top] = nb
                    top += 1
                elif flips[nb] != want:
                    return flips, t, nb
    return flips, -1, -1


def trace_cut_walk(start_he, rot_next, in_cut, n_walk):
    """Trace the single boundary walk of the complement of the cut graph.

    Half-edge h encodes edge h >> 1 with direction bit h & 1; h ^ 1 is its
    reversal.  Returns (walk_he, corner_of_he, ok); ok is 0 if the walk closes
    early or late (cut complement is not a single disk).
    """
    n_he = rot_next.shape[0]
    walk = np.empty(n_walk, dtype=np.int64)
    corner = np.full(n_he, -1, dtype=np.int64)
    seen = np.zeros(n_he, dtype=bool)
    cur = start_he
    for i in range(n_walk):
        if seen[cur]:
            return walk, corner, 0
        seen[cur] = True
        walk[i] = cur
        h = rot_next[cur ^ 1]
        while not in_cut[h >> 1]:
            corner[h] = (i + 1) % n_walk
            h = rot_next[h]
        cur = h
    ok = 1 if cur == start_he else 0
    return walk, corner, ok


def sweep_values(init, s, f, cover0):
    """Circular-accumulator sweep: value[i] = init[i] XOR coverage[i]."""
    n = init.shape[0]
    delta = np.zeros(n, dtype=np.int64)
    if n > 1:
        delta[1:] = s[1:] + f[:-1]
    coverage = (cover0 + np.cumsum(delta)) & 1
    return (init.astype(np.int64) ^ coverage).astype(np.uint8)


# ---------------------------------------------------------------------------
# packed GF(2) columns


def _col_low(row, hint_word):
    w = min(hint_word, row.shape[0] - 1)
    while w >= 0:
        v = int(row[w])
        if v:
            return (w << 6) + v.bit_length() - 1
        w -= 1
    return -1


def reduce_columns(R, V):
    """Standard left-to-right persistence column reduction, in place.

    Columns are packed uint64 rows of R (and the transformation V).  Returns
    the array of final low indices (-1 for zeroed columns).
    """
    n, n_words = R.shape
    lows = np.full(n, -1, dtype=np.int64)
    owner = np.full(n, -1, dtype=np.int64)
    for j in range(n):
        low = _col_low(R[j], n_words - 1)
        while low >= 0 and owner[low] >= 0:
            k = owner[low]
            R[j] ^= R[k]
            V[j] ^= V[k]
            low = _col_low(R[j], low >> 6)
        if low >= 0:
            owner[low] = j
        lows[j] = low
    return lows


def rank_gf2(rows):
    """GF(2) rank of packed uint64 bit rows by Gaussian elimination."""
    work = rows.copy()
    n, n_words = work.shape
    if n == 0:
        return 0
    alive = np.ones(n, dtype=bool)
    rank = 0
    for w in range(n_words):
        for b in range(64):
            bit = U64(1) << U64(b)
            has = alive & ((work[:, w] & bit) != 0)
            idx = np.flatnonzero(has)
            if idx.size == 0:
                continue
            p = idx[0]
            rest = idx[1:]
            if rest.size:
                work[rest] ^= work[p]
            alive[p] = False
            rank += 1
            if rank == n:
                return rank
    return rank


# ---------------------------------------------------------------------------
# Gray-code coset enumeration (oracle scans, <= 64 bit supports)

_CHUNK = 1 << 20


def _tz_counts(lo, hi):
    x = np.arange(lo, hi, dtype=np.uint64)
    low = x & (~x + U64(1))
    return np.bitwise_count(low - U64(1)).astype(np.int64)


def gray_lex_min(gens, start):
    """Minimum value of start XOR span-subset, full 2^m Gray-code scan."""
    m = gens.shape[0]
    best = U64(start)
    total = 1 << m
    cur = U64(start)
    for lo in range(1, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        flips = gens[_tz_counts(lo, hi)]
        flips[0] ^= cur
        vals = np.bitwise_xor.accumulate(flips)
        cur = vals[-1]
        cmin = vals.min()
        if cmin < best:
            best = cmin
    return best


def _high_bits(vals):
    v = vals.copy()
    for sh in (1, 2, 4, 8, 16, 32):
        v |= v >> U64(sh)
    return np.bitwise_count(v).astype(np.int64) - 1


def gray_bottleneck_min(gens, start):
    """Minimum (high bit, value) over the coset; high bit -1 for the zero chain."""
    m = gens.shape[0]
    best_hb = np.int64(63) if start else np.int64(-1)
    best_val = U64(start)
    if start:
        best_hb = _high_bits(np.array([start], dtype=np.uint64))[0]
    total = 1 << m
    cur = U64(start)
    for lo in range(1, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        flips = gens[_tz_counts(lo, hi)]
        flips[0] ^= cur
        vals = np.bitwise_xor.accumulate(flips)
        cur = vals[-1]
        hbs = _high_bits(vals)
        i = np.lexsort((vals, hbs))[0]
        if (hbs[i], vals[i]) < (best_hb, best_val):
            best_hb, best_val = hbs[i], vals[i]
    return int(best_hb), int(best_val)
