"""Seeded random closed-surface corpus shared by the test modules.

Surfaces are grown from canonical seeds (tetrahedron, 7-vertex torus, glued
genus-2) by random vertex splits and edge flips, each rebuild re-validated by
classify_surface; weights are random injective positive reals.
"""

from __future__ import annotations

import numpy as np

from homcycles.chains import Chain, add, boundary
from homcycles.complexes import classify_surface, from_arrays
from homcycles.errors import SurfaceError

TETRA_FACES = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def csaszar_faces():
    out = []
    for i in range(7):
        out.append(tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))))
        out.append(tuple(sorted(((i) % 7, (i + 2) % 7, (i + 3) % 7))))
    return out


def build_surface(faces, rng=None, weights=None):
    tris = np.array(sorted(faces), dtype=np.int64)
    edges = np.unique(
        np.sort(np.vstack([tris[:, [0, 1]], tris[:, [0, 2]], tris[:, [1, 2]]]), axis=1),
        axis=0,
    )
    if weights is None:
        rng = rng or np.random.default_rng(0)
        weights = rng.permutation(edges.shape[0]).astype(np.float64) + rng.random(edges.shape[0])
    K = from_arrays({2: tris, 1: edges}, query_dim=1, weights=weights)
    classify_surface(K)
    return K


def _edge_faces(faces):
    inc = {}
    for f in faces:
        a, b, c = f
        for e in ((a, b), (a, c), (b, c)):
            inc.setdefault(e, []).append(f)
    return inc


def split_random_triangle(faces, rng):
    """1 -> 3 vertex split of a random triangle; adds one vertex, two faces."""
    faces = list(faces)
    t = faces[rng.integers(len(faces))]
    v = 1 + max(max(f) for f in faces)
    a, b, c = t
    faces.remove(t)
    faces += [tuple(sorted(x)) for x in ((a, b, v), (a, v, c), (v, b, c))]
    return faces


def flip_random_edge(faces, rng, tries=12):
    """2 -> 2 edge flip where valid; returns faces unchanged if none found."""
    inc = _edge_faces(faces)
    edges = sorted(inc)
    existing = set(edges)
    for _ in range(tries):
        e = edges[rng.integers(len(edges))]
        pair = inc[e]
        if len(pair) != 2:
            continue
        u, v = e
        c = next(x for x in pair[0] if x not in e)
        d = next(x for x in pair[1] if x not in e)
        if c == d or tuple(sorted((c, d))) in existing:
            continue
        new = [f for f in faces if f not in pair]
        new += [tuple(sorted(x)) for x in ((u, c, d), (v, c, d))]
        # reject flips that break a link condition
        try:
            build_surface(new, weights=np.arange(1.0, 1.0 + 3 * len(new) / 2))
        except (SurfaceError, StopIteration, ValueError):
            continue
        return new
    return faces


def contract_valid_edge(faces, rng):
    """Contract an edge satisfying the link condition; V-1, E-3, F-2."""
    inc = _edge_faces(faces)
    adj = {}
    for (a, b) in inc:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    edges = sorted(inc)
    order = rng.permutation(len(edges))
    for k in order:
        u, v = edges[k]
        opposite = {x for f in inc[(u, v)] for x in f if x not in (u, v)}
        if adj[u] & adj[v] != opposite:
            continue
        new = []
        for f in faces:
            if u in f and v in f:
                continue
            g = tuple(sorted(u if x == v else x for x in f))
            new.append(g)
        if len(set(new)) != len(new):
            continue
        try:
            build_surface(new, weights=np.arange(1.0, 1.0 + 3 * len(new) / 2))
        except (SurfaceError, ValueError):
            continue
        return new
    raise RuntimeError("no contractible edge found")


def glued_genus2_faces():
    """Two 7-vertex tori glued along a removed triangle, orientation-reversing."""
    a = csaszar_faces()
    b = [tuple(sorted((x + 7, y + 7, z + 7))) for (x, y, z) in csaszar_faces()]
    ta, tb = a[0], b[0]
    remap = {tb[0]: ta[0], tb[1]: ta[2], tb[2]: ta[1]}
    out = [f for f in a if f != ta]
    for f in b:
        if f == tb:
            continue
        out.append(tuple(sorted(remap.get(x, x) for x in f)))
    return out


def random_sphere_faces(rng, max_faces=24):
    faces = list(TETRA_FACES)
    n_splits = int(rng.integers(0, (max_faces - 4) // 2 + 1))
    for _ in range(n_splits):
        faces = split_random_triangle(faces, rng)
    for _ in range(int(rng.integers(0, 7))):
        faces = flip_random_edge(faces, rng)
    return faces


def random_torus_faces(rng, max_faces=24):
    faces = csaszar_faces()
    n_splits = int(rng.integers(0, (max_faces - 14) // 2 + 1))
    for _ in range(n_splits):
        faces = split_random_triangle(faces, rng)
    for _ in range(int(rng.integers(0, 7))):
        faces = flip_random_edge(faces, rng)
    return faces


def random_genus2_faces(rng):
    """24-triangle genus-2 surfaces: glued tori, flips until contractible, contract."""
    faces = glued_genus2_faces()
    for _ in range(200):
        try:
            faces = contract_valid_edge(faces, rng)
            break
        except RuntimeError:
            faces = flip_random_edge(faces, rng)
    else:
        raise RuntimeError("genus-2 generation failed to find a contraction")
    for _ in range(int(rng.integers(0, 7))):
        faces = flip_random_edge(faces, rng)
    return faces


def random_surface(rng, genus=None, max_faces=24):
    g = int(rng.integers(0, 3)) if genus is None else genus
    if g == 0:
        faces = random_sphere_faces(rng, max_faces)
    elif g == 1:
        faces = random_torus_faces(rng, max_faces)
    else:
        faces = random_genus2_faces(rng)
    return build_surface(faces, rng)


def random_complex(rng, n_verts=10, n_top=8, top_dim=2, query_dim=1):
    """Random face-closed complex: random top simplices plus stray edges."""
    from homcycles.complexes import build_complex

    items = []
    for _ in range(n_top):
        verts = rng.choice(n_verts, size=top_dim + 1, replace=False)
        items.append(tuple(int(v) for v in verts))
    for _ in range(int(rng.integers(0, 4))):
        verts = rng.choice(n_verts, size=2, replace=False)
        items.append(tuple(int(v) for v in verts))
    items.append(tuple(range(min(3, n_verts))))  # keep at least one 2-face
    return build_complex(items, query_dim=query_dim)


def random_kernel_cycle(K, d, rng):
    """Random element of the d-cycle space via test-local GF(2) elimination."""
    import numpy as np

    n_d = K.n_simplices(d)
    pivot = {}
    kernel = []
    for j in range(n_d):
        v = 0
        if d >= 1:
            for fid in K.face_ids(d)[j]:
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
            kernel.append(combo)
    z = 0
    for k in kernel:
        if rng.random() < 0.5:
            z ^= k
    ids = [i for i in range(n_d) if (z >> i) & 1]
    return Chain(K, d, np.array(ids, dtype=np.int64))


def _local_spanning_tree(K, rng):
    """Test-local random spanning tree (independent of the main tree-cotree path)."""
    E = K.n_simplices(1)
    V = K.n_simplices(0)
    edges = K.simplex_rows(1)
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree_adj = {}
    for e in rng.permutation(E):
        u, v = int(edges[e, 0]), int(edges[e, 1])
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree_adj.setdefault(u, []).append((v, int(e)))
            tree_adj.setdefault(v, []).append((u, int(e)))
    return tree_adj


def random_cycle(K, rng):
    """Random Z2 1-cycle: triangle boundaries XOR fundamental cycles."""
    z = Chain(K, 1, [])
    tri_mask = rng.random(K.n_simplices(2)) < 0.25
    for t in np.flatnonzero(tri_mask):
        z = add(z, boundary(Chain(K, 2, [int(t)])))
    tree_adj = _local_spanning_tree(K, rng)
    parent_edge = {0: None}
    parent = {0: 0}
    stack = [0]
    order = {0: 0}
    while stack:
        u = stack.pop()
        for v, e in tree_adj.get(u, ()):
            if v not in parent:
                parent[v] = u
                parent_edge[v] = e
                order[v] = order[u] + 1
                stack.append(v)
    tree_edges = {e for u in tree_adj for (_, e) in tree_adj[u]}
    non_tree = [e for e in range(K.n_simplices(1)) if e not in tree_edges]
    edges = K.simplex_rows(1)
    for e in non_tree:
        if rng.random() < 0.15:
            path = [e]
            u, v = int(edges[e, 0]), int(edges[e, 1])
            while order[u] > order[v]:
                path.append(parent_edge[u]); u = parent[u]
            while order[v] > order[u]:
                path.append(parent_edge[v]); v = parent[v]
            while u != v:
                path.append(parent_edge[u]); u = parent[u]
                path.append(parent_edge[v]); v = parent[v]
            zc = Chain(K, 1, np.array(path, dtype=np.int64))
            z = add(z, zc)
    return z
