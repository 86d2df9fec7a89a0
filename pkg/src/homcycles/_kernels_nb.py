"""Numba @njit builds of the hot kernels (see ``_kernels_np`` for contracts)."""

from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
_ONE = U64(1)


@njit(cache=True)
def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def mst_select(edge_u, edge_v, order, n_nodes):
    parent = np.arange(n_nodes, dtype=np.int64)
    mask = np.zeros(edge_u.shape[0], dtype=np.bool_)
    for i in range(order.shape[0]):
        e = order[i]
        ru = _uf_find(parent, edge_u[e])
        rv = _uf_find(parent, edge_v[e])
        if ru != rv:
            parent[ru] = rv
            mask[e] = True
    return mask


@njit(cache=True)
def union_pairs(n_elems, pair_a, pair_b):
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


@njit(cache=True)
def propagate_orientation(neighbor, flip_rel):
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


@njit(cache=True)
def trace_cut_walk(start_he, rot_next, in_cut, n_walk):
    n_he = rot_next.shape[0]
    walk = np.empty(n_walk, dtype=np.int64)
    corner = np.full(n_he, -1, dtype=np.int64)
    seen = np.zeros(n_he, dtype=np.bool_)
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


@njit(cache=True)
def sweep_values(init, s, f, cover0):
    n = init.shape[0]
    value = np.empty(n, dtype=np.uint8)
    cov = np.int64(cover0) & 1
    value[0] = np.uint8(init[0] ^ cov)
    for i in range(1, n):
        cov = cov ^ (s[i] & 1) ^ (f[i - 1] & 1)
        value[i] = np.uint8(init[i] ^ cov)
    return value


@njit(cache=True)
def _col_low(row, hint_word):
    w = hint_word
    if w > row.shape[0] - 1:
        w = row.shape[0] - 1
    while w >= 0:
        v = row[w]
        if v != U64(0):
            b = 63
            while (v >> U64(b)) & _ONE == U64(0):
                b -= 1
            return (w << 6) + b
        w -= 1
    return -1


@njit(cache=True)
def reduce_columns(R, V):
    n, n_words = R.shape
    lows = np.full(n, -1, dtype=np.int64)
    owner = np.full(n, -1, dtype=np.int64)
    for j in range(n):
        low = _col_low(R[j], n_words - 1)
        while low >= 0 and owner[low] >= 0:
            k = owner[low]
            for w in range(n_words):
                R[j, w] ^= R[k, w]
                V[j, w] ^= V[k, w]
            low = _col_low(R[j], low >> 6)
        if low >= 0:
            owner[low] = j
        lows[j] = low
    return lows


@njit(cache=True)
def rank_gf2(rows):
    work = rows.copy()
    n, n_words = work.shape
    if n == 0:
        return 0
    alive = np.ones(n, dtype=np.bool_)
    rank = 0
    for w in range(n_words):
        for b in range(64):
            bit = _ONE << U64(b)
            p = -1
            for r in range(n):
                if alive[r] and (work[r, w] & bit) != U64(0):
                    p = r
                    break
            if p < 0:
                continue
            for r in range(n):
                if r != p and (work[r, w] & bit) != U64(0):
                    for ww in range(n_words):
                        work[r, ww] ^= work[p, ww]
            alive[p] = False
            rank += 1
            if rank == n:
                return rank
    return rank


@njit(cache=True)
def gray_lex_min(gens, start):
    m = gens.shape[0]
    cur = start
    best = start
    total = np.int64(1) << m
    for i in range(1, total):
        t = i
        tz = 0
        while t & 1 == 0:
            t >>= 1
            tz += 1
        cur ^= gens[tz]
        if cur < best:
            best = cur
    return best


@njit(cache=True)
def _high_bit(v, bound):
    for b in range(bound, -1, -1):
        if (v >> U64(b)) & _ONE:
            return b
    return -1


@njit(cache=True)
def gray_bottleneck_min(gens, start):
    m = gens.shape[0]
    acc = start
    for i in range(m):
        acc |= gens[i]
    bound = 63
    while bound > 0 and (acc >> U64(bound)) & _ONE == U64(0):
        bound -= 1
    cur = start
    best_val = start
    best_hb = _high_bit(start, bound)
    total = np.int64(1) << m
    for i in range(1, total):
        t = i
        tz = 0
        while t & 1 == 0:
            t >>= 1
            tz += 1
        cur ^= gens[tz]
        hb = _high_bit(cur, bound)
        if hb < best_hb or (hb == best_hb and cur < best_val):
            best_hb = hb
            best_val = cur
    return int(best_hb), int(best_val)
