"""Filtrations, boundary-matrix reduction, diagrams, and coset lex-minimization.

The reduction is the standard left-to-right column algorithm on bit-packed
GF(2) columns (dense words internally, sparse chains at the API).  Coset
minimization fully inter-reduces the boundary columns of the weighted
dimension into a pivot basis and then eliminates every pivot present in the
input cycle; the result is the unique representative of its homology class
containing no pivot, which is the lex-minimum of the class.

Public filtration positions are numbered from 1.
"""

from __future__ import annotations

import math

import numpy as np

from .backend import kernels
from .chains import Chain, bottleneck_norm, is_cycle
from .complexes import WeightedComplex
from .errors import ChainError

_U1 = np.uint64(1)


class Filtration:
    """All simplices of a complex in faces-before-cofaces order.

    Sort key: (extended weight, dimension, vertex tuple), where the extended
    weight of a simplex above the weighted dimension is the maximum weight of
    its weighted-dimension faces, and 0 below it.  Restricted to the weighted
    dimension, the order equals canonical order.
    """

    def __init__(self, K: WeightedComplex):
        self.complex = K
        q = K.query_dim
        dims_list, sids_list, extw_list, rows_list = [], [], [], []
        width = max(d + 1 for d in K.dims())
        for d in K.dims():
            n_d = K.n_simplices(d)
            if n_d == 0:
                continue
            if d == q:
                extw = K.weights
            elif d < q:
                extw = np.zeros(n_d)
            else:
                extw = K.weights[K.subface_ids(d, q)].max(axis=1)
            rows = np.full((n_d, width), -1, dtype=np.int64)
            rows[:, : d + 1] = K.simplex_rows(d)
            dims_list.append(np.full(n_d, d, dtype=np.int64))
            sids_list.append(np.arange(n_d, dtype=np.int64))
            extw_list.append(extw)
            rows_list.append(rows)
        dims = np.concatenate(dims_list)
        sids = np.concatenate(sids_list)
        extw = np.concatenate(extw_list)
        rows = np.vstack(rows_list)
        order = np.lexsort(
            tuple(rows[:, c] for c in reversed(range(width))) + (dims, extw)
        )
        self.dims = dims[order]
        self.sids = sids[order]
        self.key_weights = extw[order]
        self.position = {}
        for d in K.dims():
            sel = self.dims == d
            pos_d = np.empty(K.n_simplices(d), dtype=np.int64)
            pos_d[self.sids[sel]] = np.flatnonzero(sel)
            self.position[d] = pos_d

    def __len__(self):
        return self.dims.shape[0]

    def simplex_at(self, position):
        """(dimension, identifier) of the simplex at a 0-based position."""
        return int(self.dims[position]), int(self.sids[position])


def build_filtration(K: WeightedComplex) -> Filtration:
    return Filtration(K)


class ReducedFiltration:
    """Reduced boundary matrix R = boundary * V with pairing information.

    ``pairs`` holds 0-based (birth, death) positions; ``essential`` the
    0-based birth positions of classes that never die.
    """

    def __init__(self, f: Filtration):
        self.filtration = f
        K = f.complex
        n = len(f)
        n_words = max((n + 63) >> 6, 1)
        R = np.zeros((n, n_words), dtype=np.uint64)
        V = np.zeros((n, n_words), dtype=np.uint64)
        cols = np.arange(n, dtype=np.int64)
        V[cols, cols >> 6] = _U1 << (cols.astype(np.uint64) & np.uint64(63))
        for d in K.dims():
            if d == 0 or K.n_simplices(d) == 0:
                continue
            fpos = f.position[d - 1][K.face_ids(d)]           # (n_d, d+1)
            jpos = f.position[d]                              # (n_d,)
            rows_idx = np.repeat(jpos, d + 1)
            bits = fpos.ravel()
            np.bitwise_or.at(
                R,
                (rows_idx, bits >> 6),
                _U1 << (bits.astype(np.uint64) & np.uint64(63)),
            )
        self.R = R
        self.V = V
        self.lows = kernels().reduce_columns(R, V)
        paired = self.lows >= 0
        births = self.lows[paired]
        deaths = np.flatnonzero(paired)
        self.pairs = list(zip(births.tolist(), deaths.tolist()))
        is_birth = np.zeros(n, dtype=bool)
        is_birth[births] = True
        self.essential = [
            int(p) for p in np.flatnonzero(~paired & ~is_birth)
        ]
        self._pivot_basis = {}

    # -- chain views ---------------------------------------------------------

    def _bits_to_chain(self, words, dim):
        f = self.filtration
        out = []
        for w in range(words.shape[0]):
            word = int(words[w])
            while word:
                low = word & -word
                p = (w << 6) + low.bit_length() - 1
                word ^= low
                out.append(f.sids[p])
        return Chain(f.complex, dim, np.array(out, dtype=np.int64))

    def reduced_column(self, j) -> Chain:
        """R_j as a chain (one dimension below the simplex at j)."""
        d = int(self.filtration.dims[j])
        return self._bits_to_chain(self.R[j], d - 1)

    def transformation_column(self, j) -> Chain:
        """V_j as a chain of the dimension of the simplex at j."""
        d = int(self.filtration.dims[j])
        return self._bits_to_chain(self.V[j], d)

    def essential_positions(self, d):
        return [p for p in self.essential if self.filtration.dims[p] == d]

    # -- fully inter-reduced boundary pivot basis -----------------------------

    def pivot_basis(self, d):
        """(pivot positions desc, rows) spanning the d-boundaries, one pivot each."""
        cached = self._pivot_basis.get(d)
        if cached is not None:
            return cached
        f = self.filtration
        cols = [
            j
            for j in range(len(f))
            if f.dims[j] == d + 1 and self.lows[j] >= 0
        ]
        rows = self.R[cols].copy() if cols else np.zeros((0, self.R.shape[1]), np.uint64)
        pivots = np.array([self.lows[j] for j in cols], dtype=np.int64)
        order = np.argsort(-pivots)
        rows = rows[order]
        pivots = pivots[order]
        for i in range(pivots.shape[0]):
            p = pivots[i]
            w, b = p >> 6, np.uint64(p & 63)
            has = (rows[:, w] >> b) & _U1 != 0
            has[i] = False
            if has.any():
                rows[has] ^= rows[i]
        out = (pivots, rows)
        self._pivot_basis[d] = out
        return out

    def eliminate_pivots(self, words, d):
        """XOR away every d-pivot present in the packed row (in place)."""
        pivots, rows = self.pivot_basis(d)
        for i in range(pivots.shape[0]):
            p = pivots[i]
            if (words[p >> 6] >> np.uint64(p & 63)) & _U1:
                words ^= rows[i]
        return words


def reduce(f: Filtration) -> ReducedFiltration:
    return ReducedFiltration(f)


def reduced_filtration(K: WeightedComplex) -> ReducedFiltration:
    """Reduce once per complex; the result is immutable and cached."""
    rf = K._cache.get("reduced")
    if rf is None:
        rf = ReducedFiltration(build_filtration(K))
        K._cache["reduced"] = rf
    return rf


def persistence_diagram(rf: ReducedFiltration):
    """(birth, death, dim) triples, 1-based positions, death = inf for essential."""
    f = rf.filtration
    out = [(b + 1, d + 1, int(f.dims[b])) for b, d in rf.pairs]
    out += [(p + 1, math.inf, int(f.dims[p])) for p in rf.essential]
    out.sort(key=lambda t: (t[2], t[0], t[1]))
    return out


def betti_numbers(K: WeightedComplex):
    rf = reduced_filtration(K)
    top = K.max_dim
    counts = [0] * (top + 1)
    for p in rf.essential:
        counts[int(rf.filtration.dims[p])] += 1
    return counts


def _cycle_row(rf: ReducedFiltration, z: Chain):
    f = rf.filtration
    words = np.zeros(rf.R.shape[1], dtype=np.uint64)
    pos = f.position[z.dim][z.ids]
    if pos.size:
        np.bitwise_or.at(
            words, pos >> 6, _U1 << (pos.astype(np.uint64) & np.uint64(63))
        )
    return words


def lex_optimal_cycle(K: WeightedComplex, z: Chain) -> Chain:
    """The unique lex-minimum of the homology class of ``z``."""
    if z.complex is not K:
        raise ChainError("cycle belongs to a different complex")
    if z.dim != K.query_dim:
        raise ChainError("optimal cycles live in the weighted dimension")
    if not is_cycle(z):
        raise ChainError("input chain is not a cycle")
    rf = reduced_filtration(K)
    words = rf.eliminate_pivots(_cycle_row(rf, z), z.dim)
    return rf._bits_to_chain(words, z.dim)


def bottleneck_optimal_cycle(K: WeightedComplex, z: Chain):
    """(cycle, norm): a bottleneck-minimal representative and its norm.

    The lex-optimal cycle is returned, which attains the minimal bottleneck
    norm of the class.
    """
    c = lex_optimal_cycle(K, z)
    return c, bottleneck_norm(c)


def lex_optimal_basis(K: WeightedComplex, d=None):
    """Greedy-optimal homology basis under lex order, ascending."""
    if d is None:
        d = K.query_dim
    if d != K.query_dim:
        raise ChainError("optimal bases live in the weighted dimension")
    rf = reduced_filtration(K)
    ess = sorted(rf.essential_positions(d))
    if not ess:
        return []
    reps = np.vstack([rf.V[p] for p in ess])
    for i in range(reps.shape[0]):
        reps[i] = rf.eliminate_pivots(reps[i], d)
    # inter-reduce the representatives themselves (descending low order)
    for i in range(len(ess) - 1, -1, -1):
        p = ess[i]
        w, b = p >> 6, np.uint64(p & 63)
        has = (reps[:, w] >> b) & _U1 != 0
        has[i] = False
        if has.any():
            reps[has] ^= reps[i]
    return [rf._bits_to_chain(reps[i], d) for i in range(len(ess))]
