"""Readers and writers for the on-disk formats.

Formats:
  .scx        complex: '# comment', 'dim d' header, 's v0 v1 ... [weight]'
              per simplex; a trailing token containing '.' / 'e' / 'E' is a
              weight (weights must be written with a decimal point).
  OFF         triangle meshes; edge weights default to Euclidean length.
  .cyc        one edge per line 'u v'; must form a Z2 1-cycle.
  .link.json  link diagram with components and labeled crossings.
  matrix/rhs  'n' then n rows of 0/1; rhs: n 0/1 values.
  CSV         persistence diagram export, 'inf' for essential classes.

All writers emit byte-deterministic output for equal inputs.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .chains import Chain
from .complexes import WeightedComplex, build_complex, from_arrays
from .errors import ChainError, ParseError
from .linkgen import Component, Crossing, LinkDiagram
from .persistence import ReducedFiltration, persistence_diagram


def _is_weight_token(tok):
    return any(c in tok for c in ".eE") and not tok.lstrip("+-").isdigit()


def read_scx(path, dim_override=None) -> WeightedComplex:
    items = []
    dim = None
    with open(path, "r", encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if toks[0] == "dim":
                if dim is not None:
                    raise ParseError("duplicate dim header", path, ln)
                if len(toks) != 2 or not toks[1].isdigit():
                    raise ParseError("malformed dim header", path, ln)
                dim = int(toks[1])
                continue
            if toks[0] != "s":
                raise ParseError(f"unknown directive {toks[0]!r}", path, ln)
            toks = toks[1:]
            weight = None
            if toks and _is_weight_token(toks[-1]):
                try:
                    weight = float(toks[-1])
                except ValueError:
                    raise ParseError(f"bad weight {toks[-1]!r}", path, ln) from None
                toks = toks[:-1]
            try:
                verts = tuple(int(t) for t in toks)
            except ValueError:
                raise ParseError(f"bad vertex id in {toks}", path, ln) from None
            if not verts:
                raise ParseError("simplex line with no vertices", path, ln)
            items.append((verts, weight) if weight is not None else verts)
    if dim is None:
        dim = 1
    if dim_override is not None:
        dim = int(dim_override)
        items = [it[0] if isinstance(it, tuple) and len(it) == 2
                 and isinstance(it[0], tuple) else it for it in items]
    if not items:
        raise ParseError("no simplices in file", path)
    return build_complex(items, query_dim=dim)


def write_scx(K: WeightedComplex, path):
    """Maximal simplices plus all weighted-dim simplices with their weights."""
    q = K.query_dim
    lines = [f"dim {q}"]
    for d in sorted(K.dims(), reverse=True):
        if d <= q:
            continue
        rows = K.simplex_rows(d)
        for i in range(rows.shape[0]):
            if not _has_coface(K, d, i):
                verts = K.simplex_vertices(d, i)
                lines.append("s " + " ".join(map(str, verts)))
    for i in range(K.n_simplices(q)):
        verts = K.simplex_vertices(q, i)
        lines.append("s " + " ".join(map(str, verts)) + " " + repr(float(K.weights[i])))
    # isolated low-dimensional maximal simplices
    for d in sorted(K.dims()):
        if d >= q:
            continue
        rows = K.simplex_rows(d)
        for i in range(rows.shape[0]):
            if not _has_coface(K, d, i):
                lines.append("s " + " ".join(map(str, K.simplex_vertices(d, i))))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _has_coface(K, d, i):
    key = ("coface_mask", d)
    mask = K._cache.get(key)
    if mask is None:
        mask = np.zeros(K.n_simplices(d), dtype=bool)
        if d + 1 in K.dims():
            mask[K.face_ids(d + 1).ravel()] = True
        K._cache[key] = mask
    return bool(mask[i])


def read_off(path) -> WeightedComplex:
    with open(path, "r", encoding="utf-8") as fh:
        lines = []
        for raw in fh:
            s = raw.split("#")[0].strip()
            if s:
                lines.append(s)
    if not lines or lines[0] != "OFF":
        raise ParseError("not an OFF file (missing header)", path, 1)
    try:
        nv, nf, _ = (int(t) for t in lines[1].split())
    except (ValueError, IndexError):
        raise ParseError("malformed OFF counts line", path, 2) from None
    if len(lines) < 2 + nv + nf:
        raise ParseError("truncated OFF file", path)
    coords = np.array(
        [[float(t) for t in lines[2 + i].split()[:3]] for i in range(nv)]
    )
    tris = []
    for i in range(nf):
        toks = lines[2 + nv + i].split()
        if int(toks[0]) != 3:
            raise ParseError("only triangle faces are supported", path)
        tris.append([int(t) for t in toks[1:4]])
    tris = np.array(tris, dtype=np.int64)
    edges = np.unique(
        np.sort(np.vstack([tris[:, [0, 1]], tris[:, [0, 2]], tris[:, [1, 2]]]), axis=1),
        axis=0,
    )
    lengths = np.linalg.norm(coords[edges[:, 0]] - coords[edges[:, 1]], axis=1)
    if np.any(lengths <= 0):
        raise ParseError("zero-length edge in OFF mesh", path)
    return from_arrays({2: tris, 1: edges}, query_dim=1, weights=lengths)


def read_complex(path, dim_override=None) -> WeightedComplex:
    if str(path).lower().endswith(".off"):
        return read_off(path)
    return read_scx(path, dim_override)


# ---------------------------------------------------------------------------
# cycles


def read_cycle(path, K: WeightedComplex) -> Chain:
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise ParseError("cycle lines are 'u v'", path, ln)
            try:
                edges.append((int(toks[0]), int(toks[1])))
            except ValueError:
                raise ParseError(f"bad vertex id in {line!r}", path, ln) from None
    z = Chain.from_simplices(K, 1, edges)
    incid = np.zeros(K.n_simplices(0), dtype=np.int64)
    rows = K.simplex_rows(1)[z.ids]
    np.add.at(incid, rows.ravel(), 1)
    if np.any(incid % 2):
        bad = int(K.vertex_labels[np.flatnonzero(incid % 2)[0]])
        raise ChainError(f"edge set is not a Z2 cycle: odd degree at vertex {bad}")
    return z


def write_cycle(z: Chain, path):
    lines = [f"{u} {v}" for (u, v) in sorted(z.simplices())]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))


# ---------------------------------------------------------------------------
# persistence CSV


def write_persistence_csv(rf: ReducedFiltration, path):
    f = rf.filtration
    rows = ["dim,birth_index,birth_weight,death_index,death_weight"]
    for birth, death, dim in persistence_diagram(rf):
        bw = repr(float(f.key_weights[birth - 1]))
        if math.isinf(death):
            rows.append(f"{dim},{birth},{bw},inf,inf")
        else:
            dw = repr(float(f.key_weights[death - 1]))
            rows.append(f"{dim},{birth},{bw},{death},{dw}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")


# ---------------------------------------------------------------------------
# link diagrams and systems


def write_link(dg: LinkDiagram, path):
    doc = {
        "components": [
            {
                "name": c.name,
                "role": c.role,
                "index": c.index,
                "points": c.points.tolist(),
            }
            for c in dg.components
        ],
        "crossings": [
            {
                "comp_a": c.comp_a,
                "seg_a": c.seg_a,
                "comp_b": c.comp_b,
                "seg_b": c.seg_b,
                "point": list(c.point),
                "over": c.over,
            }
            for c in dg.crossings
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def read_link(path) -> LinkDiagram:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", path) from None
    try:
        comps = [
            Component(
                c["name"], c["role"], int(c["index"]),
                np.array(c["points"], dtype=np.int64),
            )
            for c in doc["components"]
        ]
        crossings = [
            Crossing(
                int(c["comp_a"]), int(c["seg_a"]), int(c["comp_b"]), int(c["seg_b"]),
                tuple(c["point"]), c["over"],
            )
            for c in doc["crossings"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed link diagram: {exc}", path) from None
    return LinkDiagram(comps, crossings)


def read_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        toks = fh.read().split()
    if not toks:
        raise ParseError("empty matrix file", path)
    try:
        n = int(toks[0])
        vals = [int(t) for t in toks[1:]]
    except ValueError:
        raise ParseError("matrix entries must be integers", path) from None
    if len(vals) != n * n:
        raise ParseError(f"expected {n * n} entries for n={n}, got {len(vals)}", path)
    return np.array(vals, dtype=np.int64).reshape(n, n)


def read_rhs(path, n):
    with open(path, "r", encoding="utf-8") as fh:
        toks = fh.read().split()
    try:
        vals = [int(t) for t in toks]
    except ValueError:
        raise ParseError("rhs entries must be integers", path) from None
    if len(vals) != n:
        raise ParseError(f"expected {n} rhs values, got {len(vals)}", path)
    return np.array(vals, dtype=np.int64)


def write_matrix(A, path):
    A = np.asarray(A, dtype=np.int64)
    lines = [str(A.shape[0])] + [" ".join(map(str, row)) for row in A]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_rhs(b, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(str(int(x)) for x in b) + "\n")
