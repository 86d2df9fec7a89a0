"""Brute-force ground truth for optimization and homology claims, desk scale only.

Nothing here shares reduction logic with the main modules: optimal cycles come
from full coset enumeration (Gray-code scans of every (d+1)-chain), Betti
numbers from plain GF(2) rank elimination, bases from the literal greedy
definition over an exhaustive cycle enumeration.  Hard size guards raise
:class:`GuardLimitError` instead of running forever.
"""

from __future__ import annotations

import numpy as np

from .backend import kernels
from .chains import Chain, bottleneck_norm, is_cycle
from .errors import ChainError, GuardLimitError

MAX_COBOUNDARY = 25          # 2^m coset scan limit
MAX_SIMPLICES = 2000         # rank-elimination limit
MAX_CYCLE_SPACE = 20         # 2^dim cycle enumeration limit


def _coset_generators(K, d):
    """Boundary of every (d+1)-simplex as a python-int bit row over d-ids."""
    m = K.n_simplices(d + 1) if d + 1 <= K.max_dim else 0
    if m > MAX_COBOUNDARY:
        raise GuardLimitError(
            f"{m} simplices of dimension {d + 1} exceed the brute-force limit {MAX_COBOUNDARY}"
        )
    gens = []
    if m:
        faces = K.face_ids(d + 1)
        for r in range(m):
            v = 0
            for fid in faces[r]:
                v ^= 1 << int(fid)
            gens.append(v)
    return gens


def _chain_to_int(z: Chain) -> int:
    v = 0
    for i in z.ids:
        v ^= 1 << int(i)
    return v


def _int_to_chain(K, d, value: int) -> Chain:
    ids = []
    i = 0
    while value:
        if value & 1:
            ids.append(i)
        value >>= 1
        i += 1
    return Chain(K, d, np.array(ids, dtype=np.int64))


def _require_cycle(z):
    if not is_cycle(z):
        raise ChainError("input chain is not a cycle")


def brute_lex_opt(K, z: Chain) -> Chain:
    """Lex-minimum of z + boundary(c) over all 2^m chains c one dimension up."""
    _require_cycle(z)
    d = z.dim
    gens = _coset_generators(K, d)
    start = _chain_to_int(z)
    if not gens:
        return z
    if K.n_simplices(d) <= 64:
        g = np.array(gens, dtype=np.uint64)
        best = kernels().gray_lex_min(g, np.uint64(start))
        return _int_to_chain(K, d, int(best))
    best = start
    cur = start
    for i in range(1, 1 << len(gens)):
        cur ^= gens[(i & -i).bit_length() - 1]
        if cur < best:
            best = cur
    return _int_to_chain(K, d, best)


def brute_bottleneck_opt(K, z: Chain):
    """(cycle, norm) minimizing (bottleneck norm, lex order) over the full coset."""
    _require_cycle(z)
    d = z.dim
    gens = _coset_generators(K, d)
    start = _chain_to_int(z)
    weights = K.weights
    if not gens:
        return z, bottleneck_norm(z)
    if K.n_simplices(d) <= 64:
        g = np.array(gens, dtype=np.uint64)
        hb, val = kernels().gray_bottleneck_min(g, np.uint64(start))
        chain = _int_to_chain(K, d, val)
        return chain, (0.0 if hb < 0 else float(weights[hb]))
    best = (start.bit_length() - 1, start)
    cur = start
    for i in range(1, 1 << len(gens)):
        cur ^= gens[(i & -i).bit_length() - 1]
        key = (cur.bit_length() - 1, cur)
        if key < best:
            best = key
    chain = _int_to_chain(K, d, best[1])
    return chain, (0.0 if best[0] < 0 else float(weights[best[0]]))


def _boundary_rows_packed(K, d):
    """Columns of the d-boundary operator packed as uint64 bit rows."""
    n_rows = K.n_simplices(d - 1)
    n_cols = K.n_simplices(d)
    words = (n_rows + 63) >> 6
    out = np.zeros((n_cols, max(words, 1)), dtype=np.uint64)
    if n_cols and d >= 1:
        faces = K.face_ids(d)
        for j in range(n_cols):
            for fid in faces[j]:
                out[j, fid >> 6] ^= np.uint64(1) << np.uint64(int(fid) & 63)
    return out


def brute_betti(K):
    """Betti numbers from GF(2) ranks of the boundary operators."""
    if K.total_simplices() > MAX_SIMPLICES:
        raise GuardLimitError(
            f"{K.total_simplices()} simplices exceed the rank-oracle limit {MAX_SIMPLICES}"
        )
    top = K.max_dim
    ranks = {}
    for d in range(1, top + 1):
        ranks[d] = kernels().rank_gf2(_boundary_rows_packed(K, d))
    ranks[0] = 0
    ranks[top + 1] = 0
    return [K.n_simplices(d) - ranks[d] - ranks[d + 1] for d in range(top + 1)]


def _echelon_insert(table, v):
    """Insert into a high-bit echelon table of python ints; returns reduced v."""
    while v:
        h = v.bit_length() - 1
        if h in table:
            v ^= table[h]
        else:
            table[h] = v
            return v
    return 0


def brute_greedy_basis(K, d, max_cycle_dim=MAX_CYCLE_SPACE):
    """Literal greedy optimal basis: repeatedly the lex-smallest cycle whose
    class lies outside the span of the classes already chosen."""
    n_d = K.n_simplices(d)
    kernel_basis = []
    pivot = {}
    for j in range(n_d):
        row = K.face_ids(d)[j] if d >= 1 else []
        v = 0
        for fid in row:
            v ^= 1 << int(fid)
        combo = 1 << j
        while v:
            h = v.bit_length() - 1
            if h not in pivot:
                pivot[h] = (v, combo)
                combo = 0
                break
            pv, pc = pivot[h]
            v ^= pv
            combo ^= pc
        if combo:
            kernel_basis.append(combo)

    dim_z = len(kernel_basis)
    if dim_z > max_cycle_dim:
        raise GuardLimitError(
            f"cycle space of dimension {dim_z} exceeds the enumeration limit {max_cycle_dim}"
        )

    span = {}
    n_bound = 0
    for g in _coset_generators_unguarded(K, d):
        if _echelon_insert(span, g):
            n_bound += 1
    beta = dim_z - n_bound
    if beta == 0:
        return []

    if n_d <= 64:
        vals = _enumerate_span_u64(np.array(kernel_basis, dtype=np.uint64))
        vals.sort()
        candidates = (int(v) for v in vals)
    else:
        acc = [0]
        for i in range(1, 1 << dim_z):
            acc.append(acc[-1] ^ kernel_basis[(i & -i).bit_length() - 1])
        # gray order is not sorted; sort explicitly
        acc.sort()
        candidates = iter(acc)

    chosen = []
    for val in candidates:
        if val == 0:
            continue
        v = val
        while v:
            h = v.bit_length() - 1
            if h not in span:
                break
            v ^= span[h]
        if v:
            _echelon_insert(span, val)
            chosen.append(_int_to_chain(K, d, val))
            if len(chosen) == beta:
                break
    return chosen


def _coset_generators_unguarded(K, d):
    if d + 1 > K.max_dim:
        return []
    faces = K.face_ids(d + 1)
    gens = []
    for r in range(faces.shape[0]):
        v = 0
        for fid in faces[r]:
            v ^= 1 << int(fid)
        gens.append(v)
    return gens


def _enumerate_span_u64(gens):
    """All 2^m span values by chunked Gray XOR accumulation."""
    m = gens.shape[0]
    total = 1 << m
    out = np.empty(total, dtype=np.uint64)
    out[0] = 0
    chunk = 1 << 20
    cur = np.uint64(0)
    for lo in range(1, total, chunk):
        hi = min(lo + chunk, total)
        x = np.arange(lo, hi, dtype=np.uint64)
        tz = np.bitwise_count((x & (~x + np.uint64(1))) - np.uint64(1)).astype(np.int64)
        flips = gens[tz]
        flips[0] ^= cur
        np.bitwise_xor.accumulate(flips, out=out[lo:hi])
        cur = out[hi - 1]
    return out
