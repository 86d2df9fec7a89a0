"""Weighted abstract simplicial complexes, surface classification, sub-level functions.

A :class:`WeightedComplex` stores the simplices of each dimension as sorted
integer rows.  One designated dimension (``query_dim``) carries positive real
weights; the simplices of that dimension are kept in *canonical order*:
ascending weight, ties broken by lexicographic vertex-tuple comparison.  Their
row index is the simplex identifier used everywhere else (chains, filtrations,
tree-cotree structures), so identifier order == canonical order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import ComplexError, OrientationError, SurfaceError

_MAX_VERTS_PER_SIMPLEX = 4


def _as_int_array(rows, width):
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, width)
    return arr.reshape(-1, width)


class WeightedComplex:
    """Abstract simplicial complex with a weighted query dimension.

    Immutable after construction; derived structures (face tables, surface
    metadata, reduced filtrations) are cached lazily and shared read-only.
    """

    def __init__(self, vertex_labels, simplices, query_dim, weights):
        # internal: use build_complex / from_arrays instead
        self.vertex_labels = vertex_labels            # (n0,) sorted original ids
        self._simplices = simplices                   # dim -> (n_d, d+1) dense rows
        self.query_dim = int(query_dim)
        self.weights = weights                        # aligned to query_dim rows
        self._lookup = {}
        self._cache = {}

    # -- basic accessors ----------------------------------------------------

    @property
    def max_dim(self):
        return max(self._simplices)

    def dims(self):
        return sorted(self._simplices)

    def n_simplices(self, d):
        if d not in self._simplices:
            return 0
        return self._simplices[d].shape[0]

    def total_simplices(self):
        return sum(s.shape[0] for s in self._simplices.values())

    def simplex_rows(self, d):
        """Dense-index rows of the d-simplices, in identifier order."""
        return self._simplices[d]

    def simplex_vertices(self, d, i):
        """Original vertex labels of simplex ``i`` of dimension ``d``."""
        return tuple(int(v) for v in self.vertex_labels[self._simplices[d][i]])

    def euler_characteristic(self):
        return sum((-1) ** d * s.shape[0] for d, s in self._simplices.items())

    # -- row encoding and lookup --------------------------------------------

    def _encode_rows(self, rows):
        nv = max(len(self.vertex_labels), 1)
        key = rows[:, 0].astype(np.int64)
        for c in range(1, rows.shape[1]):
            key = key * nv + rows[:, c]
        return key

    def _lookup_table(self, d):
        tab = self._lookup.get(d)
        if tab is None:
            rows = self._simplices[d]
            nv = max(len(self.vertex_labels), 1)
            if rows.shape[0] and nv ** rows.shape[1] >= 2 ** 62:
                table = {tuple(r): i for i, r in enumerate(rows)}
                tab = ("dict", table)
            else:
                keys = self._encode_rows(rows)
                perm = np.argsort(keys, kind="stable")
                tab = ("enc", keys[perm], perm)
            self._lookup[d] = tab
        return tab

    def ids_of_rows(self, d, rows, missing_error=True):
        """Identifiers of dense-index rows in dimension ``d`` (vectorized)."""
        rows = _as_int_array(rows, d + 1)
        if rows.shape[0] == 0:
            return np.empty(0, dtype=np.int64)
        tab = self._lookup_table(d)
        if tab[0] == "dict":
            out = np.empty(rows.shape[0], dtype=np.int64)
            for i, r in enumerate(rows):
                out[i] = tab[1].get(tuple(r), -1)
        else:
            _, skeys, perm = tab
            if len(skeys) == 0:
                out = np.full(rows.shape[0], -1, dtype=np.int64)
            else:
                keys = self._encode_rows(rows)
                pos = np.clip(np.searchsorted(skeys, keys), 0, len(skeys) - 1)
                out = np.where(skeys[pos] == keys, perm[pos], -1)
        if missing_error and np.any(out < 0):
            bad = rows[np.argmax(out < 0)]
            raise ComplexError(
                f"simplex {tuple(self.vertex_labels[bad])} not present in dimension {d}"
            )
        return out

    def simplex_id(self, d, vertices):
        """Identifier of a simplex given by original vertex labels."""
        verts = np.asarray(sorted(vertices), dtype=np.int64)
        if len(set(vertices)) != len(verts):
            raise ComplexError(f"duplicate vertex in simplex {tuple(vertices)}")
        dense = np.searchsorted(self.vertex_labels, verts)
        dense = np.clip(dense, 0, max(len(self.vertex_labels) - 1, 0))
        if len(self.vertex_labels) == 0 or np.any(self.vertex_labels[dense] != verts):
            raise ComplexError(f"simplex {tuple(vertices)} uses unknown vertices")
        return int(self.ids_of_rows(d, dense.reshape(1, -1))[0])

    def subface_ids(self, d, q):
        """(n_d, C(d+1, q+1)) identifiers of the q-faces of every d-simplex."""
        key = ("subfaces", d, q)
        out = self._cache.get(key)
        if out is None:
            rows = self._simplices[d]
            combos = list(itertools.combinations(range(d + 1), q + 1))
            cols = []
            for combo in combos:
                cols.append(self.ids_of_rows(q, rows[:, combo]))
            out = np.stack(cols, axis=1) if cols else np.empty((rows.shape[0], 0), np.int64)
            self._cache[key] = out
        return out

    def face_ids(self, d):
        """Codimension-1 face identifiers, column k = drop vertex k."""
        key = ("faces", d)
        out = self._cache.get(key)
        if out is None:
            rows = self._simplices[d]
            cols = []
            for k in range(d + 1):
                sub = np.delete(rows, k, axis=1)
                cols.append(self.ids_of_rows(d - 1, sub))
            out = np.stack(cols, axis=1)
            self._cache[key] = out
        return out


# ---------------------------------------------------------------------------
# construction


def _validate_simplex(verts):
    t = tuple(int(v) for v in verts)
    if not 1 <= len(t) <= _MAX_VERTS_PER_SIMPLEX:
        raise ComplexError(f"simplex {t} must have 1..4 vertices")
    if any(v < 0 for v in t):
        raise ComplexError(f"simplex {t} has a negative vertex id")
    if len(set(t)) != len(t):
        raise ComplexError(f"duplicate vertex within simplex {t}")
    return tuple(sorted(t))


def _check_weight(w, t):
    w = float(w)
    if not np.isfinite(w) or w <= 0:
        raise ComplexError(f"weight {w!r} on simplex {t} must be a positive finite real")
    return w


def build_complex(simplex_list, query_dim):
    """Build a face-closed weighted complex from vertex tuples.

    Each item is a vertex sequence or a ``(vertex_sequence, weight)`` pair;
    weights may only be given on simplices of ``query_dim``.  Unweighted
    query-dim simplices receive weight ``1 + i`` where ``i`` is their index in
    the first-appearance enumeration over the input (faces of an input simplex
    enumerate in lexicographic order).
    """
    query_dim = int(query_dim)
    if query_dim < 0 or query_dim >= _MAX_VERTS_PER_SIMPLEX:
        raise ComplexError(f"query_dim {query_dim} out of range")
    parsed = []
    for item in simplex_list:
        if (
            isinstance(item, tuple)
            and len(item) == 2
            and isinstance(item[0], (list, tuple, np.ndarray))
            and isinstance(item[1], (int, float, np.integer, np.floating))
        ):
            verts, w = item
        else:
            verts, w = item, None
        t = _validate_simplex(verts)
        if w is not None:
            if len(t) != query_dim + 1:
                raise ComplexError(
                    f"weight given on simplex {t} of dimension {len(t) - 1}, "
                    f"but the weighted dimension is {query_dim}"
                )
            w = _check_weight(w, t)
        parsed.append((t, w))

    faces = {}                     # dim -> set of tuples
    q_order = {}                   # query-dim tuple -> first-appearance index
    weight_map = {}
    for t, w in parsed:
        for size in range(1, len(t) + 1):
            for sub in itertools.combinations(t, size):
                faces.setdefault(size - 1, set()).add(sub)
                if size - 1 == query_dim and sub not in q_order:
                    q_order[sub] = len(q_order)
        if w is not None:
            if t in weight_map and weight_map[t] != w:
                raise ComplexError(f"conflicting weights for simplex {t}")
            weight_map[t] = w

    if not faces:
        raise ComplexError("empty simplex list")
    labels = np.array(sorted({v for (v,) in faces.get(0, set())}), dtype=np.int64)
    simplices = {}
    for d, tuples in faces.items():
        rows = np.array(sorted(tuples), dtype=np.int64).reshape(-1, d + 1)
        simplices[d] = np.searchsorted(labels, rows)
    q_tuples = sorted(q_order, key=q_order.get)
    weights = np.array(
        [weight_map.get(t, 1.0 + q_order[t]) for t in q_tuples], dtype=np.float64
    )
    q_rows = np.searchsorted(labels, np.array(q_tuples, dtype=np.int64).reshape(-1, query_dim + 1)) if q_tuples else np.empty((0, query_dim + 1), np.int64)
    return _finalize(labels, simplices, query_dim, q_rows, weights)


def from_arrays(simplices_by_dim, query_dim, weights=None):
    """Vectorized constructor from per-dimension vertex-label arrays.

    ``weights`` aligns with the given ``query_dim`` rows; closure-added
    query-dim simplices (if any) get default weights after all given ones.
    """
    query_dim = int(query_dim)
    given = {}
    for d, rows in simplices_by_dim.items():
        arr = _as_int_array(rows, d + 1)
        arr = np.sort(arr, axis=1)
        if arr.shape[1] > 1 and np.any(arr[:, :-1] == arr[:, 1:]):
            bad = arr[np.any(arr[:, :-1] == arr[:, 1:], axis=1)][0]
            raise ComplexError(f"duplicate vertex within simplex {tuple(bad)}")
        if arr.size and arr.min() < 0:
            raise ComplexError("negative vertex id")
        given[d] = arr
    if not given:
        raise ComplexError("empty simplex list")

    pool = {d: [rows] for d, rows in given.items()}
    for d in range(max(pool), 0, -1):
        rows = np.vstack(pool.get(d, [np.empty((0, d + 1), np.int64)]))
        pool[d] = [rows]
        faces = [np.delete(rows, k, axis=1) for k in range(d + 1)]
        pool.setdefault(d - 1, []).append(np.vstack(faces))
    merged = {d: np.unique(np.vstack(chunks), axis=0) for d, chunks in pool.items()}

    labels = np.unique(merged[0].ravel())
    simplices = {d: np.searchsorted(labels, rows) for d, rows in merged.items()}

    q_given = np.searchsorted(labels, given.get(query_dim, np.empty((0, query_dim + 1), np.int64)))
    q_given = q_given.reshape(-1, query_dim + 1)
    if weights is not None:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape[0] != q_given.shape[0]:
            raise ComplexError("weights length does not match query-dim simplices")
        if weights.size and (not np.all(np.isfinite(weights)) or weights.min() <= 0):
            raise ComplexError("weights must be positive finite reals")
    all_q = simplices.get(query_dim, np.empty((0, query_dim + 1), np.int64))
    q_rows, w_full = _align_weights(labels, all_q, q_given, weights, query_dim)
    return _finalize(labels, simplices, query_dim, q_rows, w_full)


def _align_weights(labels, all_q, q_given, weights, query_dim):
    nv = max(len(labels), 1)

    def enc(rows):
        key = rows[:, 0].astype(np.int64)
        for c in range(1, rows.shape[1]):
            key = key * nv + rows[:, c]
        return key

    if all_q.shape[0] == 0:
        return all_q, np.empty(0, dtype=np.float64)
    keys_all = enc(all_q)
    order = np.argsort(keys_all, kind="stable")
    w_full = np.full(all_q.shape[0], -1.0)
    if q_given.shape[0]:
        keys_given, first_idx = np.unique(enc(q_given), return_index=True)
        pos = order[np.searchsorted(keys_all[order], keys_given)]
        if weights is None:
            w_full[pos] = 1.0 + first_idx
        else:
            uniq_w = weights[first_idx]
            dup_check = np.argsort(enc(q_given), kind="stable")
            srt = enc(q_given)[dup_check]
            same = srt[:-1] == srt[1:]
            if np.any(same) and np.any(
                weights[dup_check][:-1][same] != weights[dup_check][1:][same]
            ):
                raise ComplexError("conflicting weights for a repeated simplex")
            w_full[pos] = uniq_w
    missing = np.flatnonzero(w_full < 0)
    if missing.size:
        # closure-added query-dim simplices default after all given ones
        if weights is not None and weights.size:
            base = float(weights.max()) + 1.0
        else:
            base = 1.0 + q_given.shape[0]
        w_full[missing] = base + np.arange(missing.size)
    return all_q, w_full


def _finalize(labels, simplices, query_dim, q_rows_unordered, weights_unordered):
    if query_dim in simplices:
        all_q = simplices[query_dim]
        # map the (row, weight) pairs onto the merged unique rows
        nv = max(len(labels), 1)

        def enc(rows):
            key = rows[:, 0].astype(np.int64)
            for c in range(1, rows.shape[1]):
                key = key * nv + rows[:, c]
            return key

        keys_all = enc(all_q)
        perm_all = np.argsort(keys_all, kind="stable")
        w = np.empty(all_q.shape[0], dtype=np.float64)
        if q_rows_unordered.shape[0] != all_q.shape[0]:
            raise ComplexError("internal: weight table does not cover query dimension")
        pos = perm_all[np.searchsorted(keys_all[perm_all], enc(q_rows_unordered))]
        w[pos] = weights_unordered
        # canonical order: ascending weight, ties by lexicographic vertex tuple
        sort_keys = tuple(all_q[:, c] for c in reversed(range(all_q.shape[1]))) + (w,)
        canon = np.lexsort(sort_keys)
        simplices[query_dim] = all_q[canon]
        weights = w[canon]
    else:
        weights = np.empty(0, dtype=np.float64)

    for d in sorted(simplices):
        if d == query_dim:
            continue
        rows = simplices[d]
        perm = np.lexsort(tuple(rows[:, c] for c in reversed(range(rows.shape[1]))))
        simplices[d] = rows[perm]
    return WeightedComplex(labels, simplices, query_dim, weights)


# ---------------------------------------------------------------------------
# surface classification


@dataclass(frozen=True)
class SurfaceTopology:
    orientable: bool
    closed: bool
    genus: int
    euler_characteristic: int


def classify_surface(K: WeightedComplex) -> SurfaceTopology:
    """Validate a combinatorial 2-manifold and report its topology.

    Raises :class:`SurfaceError` naming an offending vertex or edge when a
    link condition fails, and :class:`OrientationError` naming a triangle
    pair when orientation propagation over the dual graph conflicts.
    """
    if K.max_dim != 2 or K.n_simplices(2) == 0:
        raise SurfaceError("complex is not 2-dimensional")
    tris = K.simplex_rows(2)
    edges = K.simplex_rows(1)
    V, E, F = K.n_simplices(0), K.n_simplices(1), K.n_simplices(2)

    vert_cover = np.zeros(V, dtype=bool)
    vert_cover[tris.ravel()] = True
    if not vert_cover.all():
        v = int(np.flatnonzero(~vert_cover)[0])
        label = int(K.vertex_labels[v])
        raise SurfaceError(f"vertex {label} lies in no triangle", offender=label)

    tri_edges = K.face_ids(2)                      # columns: (bc, ac, ab)
    counts = np.bincount(tri_edges.ravel(), minlength=E)
    bad = np.flatnonzero((counts == 0) | (counts > 2))
    if bad.size:
        e = tuple(K.vertex_labels[edges[bad[0]]])
        raise SurfaceError(
            f"edge {e} lies in {int(counts[bad[0]])} triangles", offender=e
        )
    closed = bool((counts == 2).all())

    # vertex links: half-edge incidences unioned through triangle corners
    e_bc, e_ac, e_ab = tri_edges[:, 0], tri_edges[:, 1], tri_edges[:, 2]
    pa = np.concatenate([2 * e_ab, 2 * e_ab + 1, 2 * e_ac + 1])
    pb = np.concatenate([2 * e_ac, 2 * e_bc, 2 * e_bc + 1])
    roots = kernels().union_pairs(2 * E, pa, pb)
    src = np.empty(2 * E, dtype=np.int64)
    src[0::2] = edges[:, 0]
    src[1::2] = edges[:, 1]
    pair_keys = np.unique(src * (2 * E) + roots)
    comp_per_vertex = np.bincount(pair_keys // (2 * E), minlength=V)
    split = np.flatnonzero(comp_per_vertex > 1)
    if split.size:
        label = int(K.vertex_labels[split[0]])
        raise SurfaceError(f"vertex {label} has a disconnected link", offender=label)

    interior = np.flatnonzero(counts == 2)
    order = np.argsort(tri_edges.ravel(), kind="stable")
    flat_tri = order // 3
    flat_slot = order % 3
    sorted_eids = tri_edges.ravel()[order]
    # positions of the (up to two) incidences of each edge
    starts = np.searchsorted(sorted_eids, np.arange(E))
    t1 = flat_tri[starts[interior]]
    k1 = flat_slot[starts[interior]]
    t2 = flat_tri[starts[interior] + 1]
    k2 = flat_slot[starts[interior] + 1]

    troots = kernels().union_pairs(F, t1, t2)
    if np.unique(troots).size != 1:
        raise SurfaceError("surface is not connected")

    dirbit = np.array([0, 1, 0], dtype=np.uint8)   # traversal of (bc, ac, ab) in (a,b,c)
    neighbor = np.full((F, 3), -1, dtype=np.int64)
    flip_rel = np.zeros((F, 3), dtype=np.uint8)
    neighbor[t1, k1] = t2
    neighbor[t2, k2] = t1
    same = (dirbit[k1] == dirbit[k2]).astype(np.uint8)
    flip_rel[t1, k1] = same
    flip_rel[t2, k2] = same
    flips, c1, c2 = kernels().propagate_orientation(neighbor, flip_rel)
    if c1 >= 0:
        pair = (K.simplex_vertices(2, int(c1)), K.simplex_vertices(2, int(c2)))
        raise OrientationError(f"orientation conflict between {pair[0]} and {pair[1]}", pair=pair)
    K._cache["orientation_flips"] = flips.astype(np.uint8)

    chi = V - E + F
    if closed:
        genus = (2 - chi) // 2
    else:
        bverts = np.unique(edges[counts == 1])
        broots = kernels().union_pairs(V, edges[counts == 1][:, 0], edges[counts == 1][:, 1])
        n_boundary = np.unique(broots[bverts]).size
        genus = (2 - chi - n_boundary) // 2
    topo = SurfaceTopology(True, closed, int(genus), int(chi))
    K._cache["surface_topology"] = topo
    return topo


def oriented_triangles(K: WeightedComplex):
    """Triangle rows with a globally consistent orientation (as vertex triples)."""
    if "orientation_flips" not in K._cache:
        classify_surface(K)
    flips = K._cache["orientation_flips"]
    tris = K.simplex_rows(2).copy()
    fl = flips.astype(bool)
    tris[fl, 1], tris[fl, 2] = tris[fl, 2].copy(), tris[fl, 1].copy()
    return tris


# ---------------------------------------------------------------------------
# sub-level function on the barycentric subdivision


@dataclass
class SublevelFunction:
    """Distinct positive integer values on the vertices of the subdivision.

    Vertex ``offset[d] + i`` of the subdivision is the barycenter of simplex
    ``i`` of dimension ``d``; every non-query-dim barycenter ranks strictly
    below every query-dim barycenter, and query-dim barycenters rank in
    canonical order.
    """

    values: np.ndarray
    offsets: dict
    query_dim: int

    def barycenter(self, d, i):
        return int(self.offsets[d] + i)

    def value_of(self, d, i):
        return int(self.values[self.barycenter(d, i)])


def sublevel_function(K: WeightedComplex, d=None):
    """Build the subdivision of ``K`` and the sweep function mirroring its weights.

    Returns ``(SublevelFunction, Kprime)``; ``Kprime`` is the barycentric
    subdivision as a :class:`WeightedComplex` (simplices are the strict flags
    of the face poset of ``K``).
    """
    if d is None:
        d = K.query_dim
    if d != K.query_dim:
        raise ComplexError("sub-level function requires the weighted dimension")

    dims = K.dims()
    offsets = {}
    total = 0
    for dd in dims:
        offsets[dd] = total
        total += K.n_simplices(dd)

    values = np.zeros(total, dtype=np.int64)
    rank = 1
    for dd in dims:
        if dd == d:
            continue
        for i in range(K.n_simplices(dd)):
            values[offsets[dd] + i] = rank
            rank += 1
    for i in range(K.n_simplices(d)):
        values[offsets[d] + i] = rank
        rank += 1

    # proper faces of each simplex, as subdivision vertex labels
    proper = {}
    for dd in dims:
        rows = K.simplex_rows(dd)
        for i in range(rows.shape[0]):
            me = offsets[dd] + i
            fs = []
            for size in range(1, dd + 1):
                for combo in itertools.combinations(range(dd + 1), size):
                    fid = K.ids_of_rows(size - 1, rows[i, list(combo)].reshape(1, -1))[0]
                    fs.append(offsets[size - 1] + int(fid))
            proper[me] = fs

    flags = []

    def descend(chain, last):
        flags.append(tuple(sorted(chain)))
        for f in proper[last]:
            descend(chain + [f], f)

    for me in range(total):
        descend([me], me)

    kp = build_complex(flags, query_dim=d)
    return SublevelFunction(values, offsets, d), kp
