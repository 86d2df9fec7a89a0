"""Fast lex-optimal 1-cycles on closed orientable surfaces.

Pipeline: partition the edges into a minimum spanning tree T, the primal
edges Q* of a maximum spanning cotree of the dual graph, and 2g leftover
edges L; cut the surface along T + L into a single disk whose boundary walk
visits each cut edge twice; then minimize a cycle inside its homology class
with one circular sweep that XORs, for every cycle edge in Q*, the slot
interval between its two endpoint corners.  The output is the unique cycle
supported on T + L in the class, which is its lex-minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .chains import Chain, is_cycle
from .complexes import WeightedComplex, classify_surface, oriented_triangles
from .errors import ChainError, SurfaceError


@dataclass
class TreeCotree:
    complex: WeightedComplex
    in_tree: np.ndarray        # (E,) bool
    in_qstar: np.ndarray       # (E,) bool
    leftover: np.ndarray       # (2g,) edge ids ascending

    @property
    def tree_edges(self):
        return np.flatnonzero(self.in_tree)

    @property
    def qstar_edges(self):
        return np.flatnonzero(self.in_qstar)


@dataclass
class CircularAccumulator:
    """Per-slot state of the interval sweep (kept for inspection and tests)."""

    init: np.ndarray           # (N,) uint8
    s: np.ndarray              # (N,) interval starts at slot
    f: np.ndarray              # (N,) interval ends at slot
    value: np.ndarray          # (N,) uint8 after the sweep


@dataclass
class PolygonalSchema:
    """Boundary walk of the disk obtained by cutting along T + L.

    Slot i holds the i-th directed cut half-edge of the walk; corner i sits
    between slot i-1 and slot i.  ``corner_of_he[h]`` resolves the non-cut
    half-edge h to the corner of the sector containing it.
    """

    complex: WeightedComplex
    tc: TreeCotree
    walk_he: np.ndarray        # (N,) directed half-edges (2*edge + dirbit)
    first_slot: np.ndarray     # (E,) slot of first copy (-1 off the cut)
    second_slot: np.ndarray    # (E,) slot of second copy
    corner_of_he: np.ndarray   # (2E,) corner index (-1 for cut half-edges)

    @property
    def n_slots(self):
        return self.walk_he.shape[0]

    def boundary_labels(self):
        """Walk as (u, v) vertex-label pairs, for debugging dumps."""
        K = self.complex
        edges = K.simplex_rows(1)
        out = []
        for h in self.walk_he:
            e, bit = int(h) >> 1, int(h) & 1
            a, b = edges[e]
            u, v = (a, b) if bit == 0 else (b, a)
            out.append((int(K.vertex_labels[u]), int(K.vertex_labels[v])))
        return out


def _require_closed_orientable(K):
    topo = K._cache.get("surface_topology") or classify_surface(K)
    if not topo.closed:
        raise SurfaceError("surface has boundary; a closed surface is required")
    return topo


def _edge_triangle_incidence(K):
    cached = K._cache.get("edge_tris")
    if cached is None:
        tri_edges = K.face_ids(2)
        E = K.n_simplices(1)
        order = np.argsort(tri_edges.ravel(), kind="stable")
        starts = np.searchsorted(tri_edges.ravel()[order], np.arange(E))
        t1 = order[starts] // 3
        t2 = order[starts + 1] // 3
        cached = (t1.astype(np.int64), t2.astype(np.int64))
        K._cache["edge_tris"] = cached
    return cached


def tree_cotree(K: WeightedComplex) -> TreeCotree:
    """Minimum spanning tree, maximum dual cotree, and the 2g leftover edges."""
    if K.query_dim != 1:
        raise SurfaceError("tree-cotree needs edge weights (query dimension 1)")
    topo = _require_closed_orientable(K)
    edges = K.simplex_rows(1)
    E, V, F = K.n_simplices(1), K.n_simplices(0), K.n_simplices(2)
    ker = kernels()

    asc = np.arange(E, dtype=np.int64)
    in_tree = ker.mst_select(edges[:, 0], edges[:, 1], asc, V)

    t1, t2 = _edge_triangle_incidence(K)
    dual_order = np.flatnonzero(~in_tree)[::-1].astype(np.int64)  # descending weight
    in_qstar = ker.mst_select(t1, t2, dual_order, F)

    leftover = np.flatnonzero(~in_tree & ~in_qstar)
    if leftover.size != 2 * topo.genus:
        raise SurfaceError(
            f"tree-cotree leftover count {leftover.size} != 2g = {2 * topo.genus}"
        )
    return TreeCotree(K, in_tree, in_qstar, leftover)


def _rotation_system(K):
    """Next-around-source permutation of directed half-edges, from the orientation."""
    cached = K._cache.get("rotation")
    if cached is None:
        tris = oriented_triangles(K)
        E = K.n_simplices(1)
        rot = np.full(2 * E, -1, dtype=np.int64)
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        for (u, v, w) in ((a, b, c), (b, c, a), (c, a, b)):
            pair_uv = np.sort(np.stack([u, v], axis=1), axis=1)
            pair_uw = np.sort(np.stack([u, w], axis=1), axis=1)
            e_uv = K.ids_of_rows(1, pair_uv)
            e_uw = K.ids_of_rows(1, pair_uw)
            he_from = 2 * e_uv + (u > v)
            he_to = 2 * e_uw + (u > w)
            rot[he_from] = he_to
        cached = rot
        K._cache["rotation"] = cached
    return cached


def cut_to_disk(K: WeightedComplex, tc: TreeCotree) -> PolygonalSchema:
    """Trace the boundary walk of the cut disk and resolve all Q* corners."""
    if tc.complex is not K:
        raise SurfaceError("tree-cotree belongs to a different complex")
    rot = _rotation_system(K)
    E = K.n_simplices(1)
    in_cut = (~tc.in_qstar).astype(np.uint8)      # cut = T + L
    cut_ids = np.flatnonzero(in_cut)
    n_walk = 2 * int(cut_ids.size)
    start = int(2 * cut_ids[0])                    # smallest cut edge, min->max copy
    walk, corner, ok = kernels().trace_cut_walk(start, rot, in_cut, n_walk)
    if not ok:
        raise SurfaceError("cut complement is not a single disk (invalid tree-cotree)")

    walk_edges = walk >> 1
    first = np.full(E, -1, dtype=np.int64)
    second = np.full(E, -1, dtype=np.int64)
    order = np.argsort(walk_edges, kind="stable")
    lo, hi = order[0::2], order[1::2]
    if not np.array_equal(walk_edges[lo], walk_edges[hi]):
        raise SurfaceError("a cut edge does not appear exactly twice on the disk boundary")
    first[walk_edges[lo]] = lo
    second[walk_edges[hi]] = hi
    return PolygonalSchema(K, tc, walk, first, second, corner)


def _slot_intervals(schema, q_ids, swap_arc=False):
    """Covered slot interval [a', b'] for each Q* edge of the cycle."""
    ca = schema.corner_of_he[2 * q_ids]
    cb = schema.corner_of_he[2 * q_ids + 1]
    if swap_arc:
        ca, cb = cb, ca
    n = schema.n_slots
    a_slot = ca
    b_slot = (cb - 1) % n
    return a_slot, b_slot


def accumulate(schema: PolygonalSchema, z: Chain, *, use_second_copy=False,
               use_complement_arc=False) -> CircularAccumulator:
    """Fill and sweep the circular accumulator for the cycle ``z``."""
    K = schema.complex
    tc = schema.tc
    n = schema.n_slots
    in_cut = ~tc.in_qstar
    zt = z.ids[in_cut[z.ids]]
    zq = z.ids[~in_cut[z.ids]]

    init = np.zeros(n, dtype=np.uint8)
    copy_slot = schema.second_slot if use_second_copy else schema.first_slot
    init[copy_slot[zt]] = 1

    s = np.zeros(n, dtype=np.int64)
    f = np.zeros(n, dtype=np.int64)
    a_slot, b_slot = _slot_intervals(schema, zq, swap_arc=use_complement_arc)
    np.add.at(s, a_slot, 1)
    np.add.at(f, b_slot, 1)
    cover0 = int(np.count_nonzero((a_slot > b_slot) | (a_slot == 0))) & 1
    value = kernels().sweep_values(init, s, f, cover0)
    return CircularAccumulator(init, s, f, value)


def lex_opt_cycle_surface(K: WeightedComplex, schema: PolygonalSchema, z: Chain,
                          *, use_second_copy=False, use_complement_arc=False) -> Chain:
    """Lex-minimum of the class of ``z``; output supported on T + L."""
    if z.complex is not K or schema.complex is not K:
        raise ChainError("cycle and schema must belong to the same complex")
    if z.dim != 1:
        raise ChainError("surface optimization takes 1-cycles")
    if not is_cycle(z):
        raise ChainError("input chain is not a cycle")
    acc = accumulate(schema, z, use_second_copy=use_second_copy,
                     use_complement_arc=use_complement_arc)
    cut_ids = np.flatnonzero(~schema.tc.in_qstar)
    hot = acc.value[schema.first_slot[cut_ids]] ^ acc.value[schema.second_slot[cut_ids]]
    return Chain(K, 1, cut_ids[hot == 1])


def _tree_paths(K, tc):
    """Parent arrays of the spanning tree rooted at vertex 0."""
    cached = K._cache.get("tree_parents")
    if cached is None:
        V = K.n_simplices(0)
        edges = K.simplex_rows(1)
        tree = np.flatnonzero(tc.in_tree)
        adj = {}
        for e in tree:
            u, v = int(edges[e, 0]), int(edges[e, 1])
            adj.setdefault(u, []).append((v, int(e)))
            adj.setdefault(v, []).append((u, int(e)))
        parent = np.full(V, -1, dtype=np.int64)
        parent_edge = np.full(V, -1, dtype=np.int64)
        depth = np.zeros(V, dtype=np.int64)
        parent[0] = 0
        stack = [0]
        while stack:
            u = stack.pop()
            for v, e in adj.get(u, ()):
                if parent[v] < 0:
                    parent[v] = u
                    parent_edge[v] = e
                    depth[v] = depth[u] + 1
                    stack.append(v)
        cached = (parent, parent_edge, depth)
        K._cache["tree_parents"] = cached
    return cached


def fundamental_cycle(K, tc, edge_id) -> Chain:
    """The unique cycle in T + the given non-tree edge."""
    parent, parent_edge, depth = _tree_paths(K, tc)
    edges = K.simplex_rows(1)
    u, v = int(edges[edge_id, 0]), int(edges[edge_id, 1])
    path = [int(edge_id)]
    while depth[u] > depth[v]:
        path.append(int(parent_edge[u]))
        u = int(parent[u])
    while depth[v] > depth[u]:
        path.append(int(parent_edge[v]))
        v = int(parent[v])
    while u != v:
        path.append(int(parent_edge[u]))
        path.append(int(parent_edge[v]))
        u, v = int(parent[u]), int(parent[v])
    return Chain(K, 1, np.array(path, dtype=np.int64))


def lex_opt_basis_surface(K: WeightedComplex, tc: TreeCotree,
                          schema: PolygonalSchema | None = None):
    """The 2g fundamental cycles of the leftover edges, ascending; lex-optimal basis."""
    return [fundamental_cycle(K, tc, e) for e in tc.leftover]
