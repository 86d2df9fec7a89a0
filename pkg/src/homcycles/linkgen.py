"""Planar link diagrams realizing sparse Z2 systems through pairwise linking parities.

``matrix_to_diagram`` draws, on one integer grid: a row of rectangular circles
(one per unknown), one component per matrix row clasping the circles of its
nonzero entries, and one right-hand-side component clasping the circles of the
nonzero entries of b.  A clasp is a two-crossing finger (one over, one under),
so each contributes linking parity 1; every other crossing pair is labeled
uniformly and cancels.  Verification recomputes every intersection from the
coordinates and only trusts the stored over-labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ComplexError, VerificationError

ROLE_CIRCLE = "lambda"
ROLE_ROW = "L"
ROLE_RHS = "zeta"


@dataclass
class Component:
    name: str
    role: str                  # lambda | L | zeta
    index: int                 # 1-based for lambda/L; 0 for zeta
    points: np.ndarray         # (m, 2) integer vertices, closed implicitly

    def segments(self):
        p = self.points
        return np.stack([p, np.roll(p, -1, axis=0)], axis=1)  # (m, 2, 2)


@dataclass
class Crossing:
    comp_a: int
    seg_a: int
    comp_b: int
    seg_b: int
    point: tuple
    over: str                  # "a" | "b"


@dataclass
class LinkDiagram:
    components: list
    crossings: list

    def component_index(self, name):
        for i, c in enumerate(self.components):
            if c.name == name:
                return i
        raise ComplexError(f"unknown component {name!r}")

    def by_role(self, role):
        return sorted(
            (c for c in self.components if c.role == role), key=lambda c: c.index
        )


# ---------------------------------------------------------------------------
# exact segment intersections


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def segment_intersections(pa, pb):
    """Strictly interior transverse intersections between two closed polylines.

    Integer-exact; raises on collinear overlaps or endpoint touches.  Returns
    (seg_a, seg_b, t_num, denom) arrays; the point is P + (t_num/denom) * dP.
    """
    sa = np.stack([pa, np.roll(pa, -1, axis=0)], axis=1).astype(np.int64)
    sb = np.stack([pb, np.roll(pb, -1, axis=0)], axis=1).astype(np.int64)
    P = sa[:, 0][:, None, :]
    d1 = (sa[:, 1] - sa[:, 0])[:, None, :]
    Q = sb[:, 0][None, :, :]
    d2 = (sb[:, 1] - sb[:, 0])[None, :, :]
    pq = Q - P
    denom = _cross(d1[..., 0], d1[..., 1], d2[..., 0], d2[..., 1])
    num_t = _cross(pq[..., 0], pq[..., 1], d2[..., 0], d2[..., 1])
    num_u = _cross(pq[..., 0], pq[..., 1], d1[..., 0], d1[..., 1])

    parallel = denom == 0
    if np.any(parallel & (num_u == 0) & (num_t == 0)):
        i, j = np.argwhere(parallel & (num_u == 0) & (num_t == 0))[0]
        a0, a1 = sa[i, 0], sa[i, 1]
        b0, b1 = sb[j, 0], sb[j, 1]
        lo = np.maximum(np.minimum(a0, a1), np.minimum(b0, b1))
        hi = np.minimum(np.maximum(a0, a1), np.maximum(b0, b1))
        if np.all(lo <= hi) and not np.all(lo == hi):
            raise VerificationError("degenerate crossing: collinear overlap")

    sgn = np.sign(denom)
    t = num_t * sgn
    u = num_u * sgn
    dd = np.abs(denom)
    inside = (~parallel) & (t > 0) & (t < dd) & (u > 0) & (u < dd)
    touching = (~parallel) & (
        ((t == 0) | (t == dd)) & (u >= 0) & (u <= dd)
        | ((u == 0) | (u == dd)) & (t >= 0) & (t <= dd)
    )
    if np.any(touching):
        raise VerificationError("degenerate crossing: intersection at a vertex")
    ia, ib = np.nonzero(inside)
    return ia, ib, num_t[ia, ib], denom[ia, ib]


def compute_crossings(components, over_fn):
    """All pairwise crossings, over-labels assigned by ``over_fn(ca, cb, da, db)``.

    ``da``/``db`` are the unit-free direction vectors of the crossing segments.
    """
    out = []
    for a in range(len(components)):
        for b in range(a + 1, len(components)):
            ca, cb = components[a], components[b]
            ia, ib, tn, dn = segment_intersections(ca.points, cb.points)
            sa = ca.segments()
            for k in range(ia.shape[0]):
                p0 = sa[ia[k], 0].astype(float)
                d1 = (sa[ia[k], 1] - sa[ia[k], 0]).astype(float)
                pt = p0 + (tn[k] / dn[k]) * d1
                da = ca.points[(ia[k] + 1) % len(ca.points)] - ca.points[ia[k]]
                db = cb.points[(ib[k] + 1) % len(cb.points)] - cb.points[ib[k]]
                over = over_fn(ca, cb, da, db)
                out.append(
                    Crossing(a, int(ia[k]), b, int(ib[k]), (float(pt[0]), float(pt[1])), over)
                )
    out.sort(key=lambda c: (c.comp_a, c.comp_b, c.seg_a, c.seg_b))
    return out


# ---------------------------------------------------------------------------
# generation


def _check_system(A, b):
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ComplexError(f"matrix must be square, got shape {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise ComplexError("matrix entries must be 0/1")
    b = np.asarray(b, dtype=np.int64).ravel()
    if b.shape[0] != A.shape[0]:
        raise ComplexError(f"rhs length {b.shape[0]} != n = {A.shape[0]}")
    if not np.isin(b, (0, 1)).all():
        raise ComplexError("rhs entries must be 0/1")
    return A, b


def _loop_points(cols, row, n, half_w, width):
    """Band loop with a two-strand finger dipping into each listed circle."""
    y_b = 12 + 8 * row
    y_t = y_b + 4
    if not cols:
        lx = -half_w - 16
        return np.array([(lx, y_b), (lx + 4, y_b), (lx + 4, y_t), (lx, y_t)], np.int64)
    # fingers use even x lanes; loop closures sit at odd x so verticals never align
    fx = {j: j * width - half_w + 2 + 4 * row for j in cols}
    pts = [(fx[cols[0]] - 3, y_b)]
    for j in cols:
        x = fx[j]
        pts += [(x, y_b), (x, 4), (x + 2, 4), (x + 2, y_b)]
    pts += [
        (fx[cols[-1]] + 5, y_b),
        (fx[cols[-1]] + 5, y_t),
        (fx[cols[0]] - 3, y_t),
    ]
    return np.array(pts, dtype=np.int64)


def _generated_over_rule(ca, cb, da, db):
    roles = {ca.role, cb.role}
    if roles == {ROLE_CIRCLE, ROLE_ROW} or roles == {ROLE_CIRCLE, ROLE_RHS}:
        strand, strand_dir = (ca, da) if ca.role != ROLE_CIRCLE else (cb, db)
        down = strand_dir[1] < 0
        strand_is_a = strand is ca
        return ("a" if strand_is_a else "b") if down else ("b" if strand_is_a else "a")
    if roles == {ROLE_ROW}:
        return "a" if (ca.index, ca.role) < (cb.index, cb.role) else "b"
    if ROLE_RHS in roles:
        return "a" if ca.role == ROLE_RHS else "b"
    raise VerificationError(
        f"unexpected crossing between {ca.name} and {cb.name}"
    )


def matrix_to_diagram(A, b) -> LinkDiagram:
    """Deterministic integer-grid diagram whose linking parities encode (A, b)."""
    A, b = _check_system(A, b)
    n = A.shape[0]
    half_w = 2 * (n + 1) + 2
    width = 2 * half_w + 8

    components = []
    for j in range(n):
        cx = j * width
        pts = np.array(
            [(cx - half_w, 0), (cx + half_w, 0), (cx + half_w, 8), (cx - half_w, 8)],
            dtype=np.int64,
        )
        components.append(Component(f"lambda_{j + 1}", ROLE_CIRCLE, j + 1, pts))
    for i in range(n):
        cols = np.flatnonzero(A[i]).tolist()
        components.append(
            Component(f"L_{i + 1}", ROLE_ROW, i + 1, _loop_points(cols, i, n, half_w, width))
        )
    zcols = np.flatnonzero(b).tolist()
    components.append(
        Component("zeta", ROLE_RHS, 0, _loop_points(zcols, n, n, half_w, width))
    )
    crossings = compute_crossings(components, _generated_over_rule)
    return LinkDiagram(components, crossings)


# ---------------------------------------------------------------------------
# linking numbers and verification


def linking_number(dg: LinkDiagram, name_a, name_b):
    """(integer lk, Z2 lk) between two components, signs from segment geometry."""
    ia = dg.component_index(name_a)
    ib = dg.component_index(name_b)
    if ia == ib:
        raise ComplexError("linking number needs two distinct components")
    a, b = min(ia, ib), max(ia, ib)
    ca, cb = dg.components[a], dg.components[b]
    sa, sb, tn, dn = segment_intersections(ca.points, cb.points)
    stored = {
        (c.seg_a, c.seg_b): c.over
        for c in dg.crossings
        if c.comp_a == a and c.comp_b == b
    }
    found = set(zip(sa.tolist(), sb.tolist()))
    if found != set(stored):
        raise VerificationError(
            f"crossing records for {ca.name}/{cb.name} do not match the geometry"
        )
    total = 0
    for k in range(sa.shape[0]):
        da = (ca.points[(sa[k] + 1) % len(ca.points)] - ca.points[sa[k]]).astype(np.int64)
        db = (cb.points[(sb[k] + 1) % len(cb.points)] - cb.points[sb[k]]).astype(np.int64)
        over = stored[(int(sa[k]), int(sb[k]))]
        o, u = (da, db) if over == "a" else (db, da)
        total += 1 if _cross(o[0], o[1], u[0], u[1]) > 0 else -1
    if total % 2 != 0:
        raise VerificationError(
            f"odd crossing sign sum between {ca.name} and {cb.name}"
        )
    lk = total // 2
    return lk, abs(lk) % 2


@dataclass
class VerificationReport:
    lk_matrix: np.ndarray      # (n, n) recomputed parities lk2(L_i, lambda_j)
    lk_rhs: np.ndarray         # (n,) recomputed parities lk2(zeta, lambda_j)
    cross_pairs_ok: bool       # every other pair has parity 0
    crossing_count: int
    mismatches: list = field(default_factory=list)   # (kind, i, j) vs the system

    @property
    def ok(self):
        return self.cross_pairs_ok and not self.mismatches


def verify_instance(dg: LinkDiagram, A, b) -> VerificationReport:
    """Recompute every pairwise parity from the drawing and compare with (A, b)."""
    A, b = _check_system(A, b)
    n = A.shape[0]
    lams = dg.by_role(ROLE_CIRCLE)
    rows = dg.by_role(ROLE_ROW)
    zs = dg.by_role(ROLE_RHS)
    if len(lams) != n or len(rows) != n or len(zs) != 1:
        raise VerificationError(
            f"diagram roles do not match an n={n} system: "
            f"{len(lams)} circles, {len(rows)} row components, {len(zs)} rhs"
        )
    lk_matrix = np.zeros((n, n), dtype=np.uint8)
    lk_rhs = np.zeros(n, dtype=np.uint8)
    mismatches = []
    for i, Li in enumerate(rows):
        for j, lam in enumerate(lams):
            _, lk2 = linking_number(dg, Li.name, lam.name)
            lk_matrix[i, j] = lk2
            if lk2 != A[i, j]:
                mismatches.append(("matrix", i + 1, j + 1))
    for j, lam in enumerate(lams):
        _, lk2 = linking_number(dg, zs[0].name, lam.name)
        lk_rhs[j] = lk2
        if lk2 != b[j]:
            mismatches.append(("rhs", 0, j + 1))

    cross_ok = True
    others = (
        [(a.name, b_.name) for k, a in enumerate(lams) for b_ in lams[k + 1:]]
        + [(a.name, b_.name) for k, a in enumerate(rows) for b_ in rows[k + 1:]]
        + [(zs[0].name, a.name) for a in rows]
    )
    for na, nb in others:
        _, lk2 = linking_number(dg, na, nb)
        if lk2 != 0:
            cross_ok = False
            mismatches.append(("pair", na, nb))
    return VerificationReport(
        lk_matrix, lk_rhs, cross_ok, len(dg.crossings), mismatches
    )


def solution_readback(support, A, b):
    """Interpret a set of 1-based circle indices as x; check Ax = b over Z2."""
    A, b = _check_system(A, b)
    n = A.shape[0]
    x = np.zeros(n, dtype=np.int64)
    for i in support:
        if not 1 <= int(i) <= n:
            raise ComplexError(f"circle index {i} out of range 1..{n}")
        x[int(i) - 1] = 1
    consistent = bool(np.array_equal((A @ x) % 2, b % 2))
    return x, consistent
