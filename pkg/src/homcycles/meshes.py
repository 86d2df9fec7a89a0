"""Canonical surface builders: small closed surfaces and the grid-torus benchmark family."""

from __future__ import annotations

import numpy as np

from .complexes import WeightedComplex, from_arrays
from .errors import ComplexError


def tetrahedron(weights=None) -> WeightedComplex:
    """Boundary of the tetrahedron: closed orientable genus-0 surface."""
    tris = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return _edge_weighted(tris, weights)


def octahedron(weights=None) -> WeightedComplex:
    tris = [
        (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
        (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
    ]
    return _edge_weighted(tris, weights)


def csaszar_torus(weights=None) -> WeightedComplex:
    """The 7-vertex torus: every pair of vertices spans an edge, 14 triangles."""
    tris = []
    for i in range(7):
        tris.append(((i) % 7, (i + 1) % 7, (i + 3) % 7))
        tris.append(((i) % 7, (i + 2) % 7, (i + 3) % 7))
    return _edge_weighted(tris, weights)


def _edge_weighted(tris, weights):
    tris = np.asarray(tris, dtype=np.int64)
    edges = np.unique(
        np.sort(np.vstack([tris[:, [0, 1]], tris[:, [0, 2]], tris[:, [1, 2]]]), axis=1),
        axis=0,
    )
    if weights is not None:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape[0] != edges.shape[0]:
            raise ComplexError(
                f"expected {edges.shape[0]} edge weights, got {weights.shape[0]}"
            )
    return from_arrays({2: tris, 1: edges}, query_dim=1, weights=weights)


def grid_torus(n: int, weights=None, seed=None) -> WeightedComplex:
    """n x n vertex grid torus with diagonal splits and wraparound.

    V = n^2, E = 3 n^2, F = 2 n^2 (6 n^2 simplices total).  Edge weights
    default to a seeded random permutation of 1..E (injective).
    """
    if n < 3:
        raise ComplexError("grid torus needs n >= 3")
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    v = (ii * n + jj).ravel()
    right = ((ii * n + (jj + 1) % n)).ravel()
    down = (((ii + 1) % n * n + jj)).ravel()
    diag = (((ii + 1) % n * n + (jj + 1) % n)).ravel()

    edges = np.sort(
        np.concatenate(
            [
                np.stack([v, right], axis=1),
                np.stack([v, down], axis=1),
                np.stack([v, diag], axis=1),
            ]
        ),
        axis=1,
    )
    tris = np.sort(
        np.concatenate(
            [
                np.stack([v, right, diag], axis=1),
                np.stack([v, down, diag], axis=1),
            ]
        ),
        axis=1,
    )
    if weights is None:
        rng = np.random.default_rng(0 if seed is None else seed)
        weights = rng.permutation(edges.shape[0]).astype(np.float64) + 1.0
    return from_arrays({2: tris, 1: edges}, query_dim=1, weights=np.asarray(weights, dtype=np.float64))


def connected_sum(A: WeightedComplex, B: WeightedComplex, seed=None) -> WeightedComplex:
    """Glue two closed surfaces along a removed triangle each (genus adds).

    Vertex labels of B are shifted past A's; the removed B-triangle's vertices
    are identified with the removed A-triangle's in orientation-reversing
    order.  Edge weights are reassigned as a fresh seeded permutation.
    """
    tris_a = A.vertex_labels[A.simplex_rows(2)]
    tris_b = B.vertex_labels[B.simplex_rows(2)]
    shift = int(A.vertex_labels.max()) + 1
    tris_b = tris_b + shift

    ta = tris_a[0]
    tb = tris_b[0]
    # orientation-reversing identification: reversed vertex order
    remap = {int(tb[0]): int(ta[0]), int(tb[1]): int(ta[2]), int(tb[2]): int(ta[1])}
    tb_rows = np.vstack([tris_b[1:]])
    flat = tb_rows.ravel()
    for old, new in remap.items():
        flat[flat == old] = new
    tb_rows = np.sort(flat.reshape(-1, 3), axis=1)
    all_tris = np.vstack([tris_a[1:], tb_rows])

    edges = np.unique(
        np.sort(
            np.vstack([all_tris[:, [0, 1]], all_tris[:, [0, 2]], all_tris[:, [1, 2]]]),
            axis=1,
        ),
        axis=0,
    )
    rng = np.random.default_rng(0 if seed is None else seed)
    w = rng.permutation(edges.shape[0]).astype(np.float64) + 1.0
    return from_arrays({2: all_tris, 1: edges}, query_dim=1, weights=w)


def genus_g_surface(g: int, n: int = 3, seed=None) -> WeightedComplex:
    """Closed orientable genus-g surface assembled from g grid tori (g >= 1)."""
    if g < 1:
        raise ComplexError("genus must be >= 1; use tetrahedron() for genus 0")
    surf = grid_torus(n, seed=seed)
    for k in range(1, g):
        surf = connected_sum(surf, grid_torus(n, seed=seed), seed=(seed or 0) + k)
    return surf
