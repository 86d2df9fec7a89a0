import numpy as np
import pytest

from homcycles import linkgen as L
from homcycles.errors import ComplexError, VerificationError


def sparse_system(rng, n, max_row=4):
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        k = int(rng.integers(0, min(max_row, n) + 1))
        if k:
            A[i, rng.choice(n, size=k, replace=False)] = 1
    x = rng.integers(0, 2, n)
    return A, x, (A @ x) % 2


def test_identity_system_contract():
    A = np.eye(2, dtype=int)
    b = np.array([1, 0])
    dg = L.matrix_to_diagram(A, b)
    assert len(dg.components) == 5
    rep = L.verify_instance(dg, A, b)
    assert rep.ok
    assert np.array_equal(rep.lk_matrix, A)
    assert np.array_equal(rep.lk_rhs, b)


def test_zero_system_all_unlinked():
    n = 3
    dg = L.matrix_to_diagram(np.zeros((n, n), int), np.zeros(n, int))
    rep = L.verify_instance(dg, np.zeros((n, n), int), np.zeros(n, int))
    assert rep.ok and rep.crossing_count == 0
    for a in range(len(dg.components)):
        for b in range(a + 1, len(dg.components)):
            _, lk2 = L.linking_number(
                dg, dg.components[a].name, dg.components[b].name
            )
            assert lk2 == 0


def test_input_validation():
    with pytest.raises(ComplexError):
        L.matrix_to_diagram(np.zeros((2, 3), int), np.zeros(2, int))
    with pytest.raises(ComplexError):
        L.matrix_to_diagram(np.zeros((2, 2), int), np.zeros(3, int))
    with pytest.raises(ComplexError):
        L.matrix_to_diagram(2 * np.eye(2, dtype=int), np.zeros(2, int))


def test_hopf_clasp_parity():
    A = np.array([[1]])
    dg = L.matrix_to_diagram(A, np.array([0]))
    lk, lk2 = L.linking_number(dg, "L_1", "lambda_1")
    assert lk2 == 1 and abs(lk) == 1


def test_nested_circles_unlinked():
    a = L.Component("lambda_1", "lambda", 1, np.array([(-10, -10), (10, -10), (10, 10), (-10, 10)], np.int64))
    b = L.Component("lambda_2", "lambda", 2, np.array([(-5, -5), (5, -5), (5, 5), (-5, 5)], np.int64))
    dg = L.LinkDiagram([a, b], [])
    lk, lk2 = L.linking_number(dg, "lambda_1", "lambda_2")
    assert (lk, lk2) == (0, 0)


def test_doubled_clasp_parity_zero():
    lam = L.Component("lambda_1", "lambda", 1, np.array([(-6, 0), (6, 0), (6, 8), (-6, 8)], np.int64))
    pts = [(-5, 12)]
    for x in (-4, 0):
        pts += [(x, 12), (x, 4), (x + 2, 4), (x + 2, 12)]
    pts += [(3, 12), (3, 16), (-5, 16)]
    strand = L.Component("L_1", "L", 1, np.array(pts, np.int64))
    comps = [lam, strand]
    dg = L.LinkDiagram(comps, L.compute_crossings(comps, L._generated_over_rule))
    lk, lk2 = L.linking_number(dg, "L_1", "lambda_1")
    assert lk2 == 0 and abs(lk) in (0, 2)


def test_sign_sum_even_everywhere():
    rng = np.random.default_rng(0)
    A, x, b = sparse_system(rng, 6)
    dg = L.matrix_to_diagram(A, b)
    for i in range(len(dg.components)):
        for j in range(i + 1, len(dg.components)):
            lk, lk2 = L.linking_number(dg, dg.components[i].name, dg.components[j].name)
            assert lk2 == abs(lk) % 2  # integer lk implies even sign sum


def test_verify_reports_flipped_label():
    A = np.eye(2, dtype=int)
    b = np.array([1, 0])
    dg = L.matrix_to_diagram(A, b)
    for c in dg.crossings:
        ca, cb = dg.components[c.comp_a], dg.components[c.comp_b]
        if {ca.role, cb.role} == {"lambda", "L"}:
            c.over = "a" if c.over == "b" else "b"
            break
    rep = L.verify_instance(dg, A, b)
    assert not rep.ok
    assert rep.mismatches[0] == ("matrix", 1, 1)


def test_verify_missing_roles():
    dg = L.matrix_to_diagram(np.eye(2, dtype=int), np.array([0, 0]))
    dg.components[0].role = "L"
    with pytest.raises(VerificationError):
        L.verify_instance(dg, np.eye(2, dtype=int), np.array([0, 0]))


def test_random_sparse_systems_verify():
    rng = np.random.default_rng(1)
    for n in (4, 8, 12):
        for _ in range(3):
            A, x, b = sparse_system(rng, n)
            dg = L.matrix_to_diagram(A, b)
            rep = L.verify_instance(dg, A, b)
            assert rep.ok, rep.mismatches


def test_generation_deterministic():
    rng = np.random.default_rng(2)
    A, x, b = sparse_system(rng, 5)
    d1 = L.matrix_to_diagram(A, b)
    d2 = L.matrix_to_diagram(A, b)
    assert len(d1.crossings) == len(d2.crossings)
    for c1, c2 in zip(d1.crossings, d2.crossings):
        assert (c1.comp_a, c1.seg_a, c1.comp_b, c1.seg_b, c1.over) == (
            c2.comp_a, c2.seg_a, c2.comp_b, c2.seg_b, c2.over
        )
    for a, b_ in zip(d1.components, d2.components):
        assert a.name == b_.name and np.array_equal(a.points, b_.points)


def test_solution_readback():
    A = np.eye(2, dtype=int)
    b = np.array([1, 0])
    x, ok = L.solution_readback({1}, A, b)
    assert x.tolist() == [1, 0] and ok
    x, ok = L.solution_readback(set(), np.eye(2, dtype=int), np.array([1, 0]))
    assert not ok
    with pytest.raises(ComplexError):
        L.solution_readback({3}, A, b)


def test_readback_random_solvable():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A, x, b = sparse_system(rng, int(rng.integers(2, 10)))
        support = {int(i) + 1 for i in np.flatnonzero(x)}
        xx, ok = L.solution_readback(support, A, b)
        assert ok and np.array_equal(xx, x)


def test_crossing_count_quadratic_growth():
    # dense-ish rows: crossings grow ~ c n^2 along the generated family
    rng = np.random.default_rng(4)
    counts = {}
    for n in (8, 16, 32):
        A = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            A[i, rng.choice(n, size=4, replace=False)] = 1
        dg = L.matrix_to_diagram(A, A.sum(axis=1) % 2)
        counts[n] = len(dg.crossings)
    r1 = counts[16] / counts[8]
    r2 = counts[32] / counts[16]
    assert 2.0 <= r1 <= 8.0 and 2.0 <= r2 <= 8.0  # near x4 per doubling


# ---------------------------------------------------------------------------
# independent geometric oracle: lift the diagram to 3D and integrate


def _lift_component(comp, under_points):
    """3D polyline; dips to z=-1 around each under-crossing point."""
    pts3 = []
    m = len(comp.points)
    for s in range(m):
        p0 = comp.points[s].astype(float)
        p1 = comp.points[(s + 1) % m].astype(float)
        d = p1 - p0
        seg_len = np.hypot(*d)
        u = d / seg_len
        pts3.append((p0[0], p0[1], 0.0))
        events = sorted(
            (np.dot(np.asarray(q) - p0, u), q) for q in under_points.get(s, [])
        )
        for t, q in events:
            q = np.asarray(q, dtype=float)
            eps = 0.3
            pts3.append((*(q - eps * u), 0.0))
            pts3.append((*(q - 0.5 * eps * u), -1.0))
            pts3.append((*(q + 0.5 * eps * u), -1.0))
            pts3.append((*(q + eps * u), 0.0))
    return np.array(pts3)


def _gauss_linking(c1, c2):
    """Gauss integral of two closed 3D polylines (sum of signed solid angles)."""
    x1 = np.vstack([c1, c1[:1]])
    x2 = np.vstack([c2, c2[:1]])
    total = 0.0
    for i in range(len(x2) - 1):
        for j in range(len(x1) - 1):
            a = x1[j] - x2[i]
            b = x1[j] - x2[i + 1]
            c = x1[j + 1] - x2[i + 1]
            d = x1[j + 1] - x2[i]
            p = np.dot(a, np.cross(b, c))
            an, bn, cn, dn = (np.linalg.norm(v) for v in (a, b, c, d))
            d1 = an * bn * cn + np.dot(a, b) * cn + np.dot(b, c) * an + np.dot(c, a) * bn
            d2 = an * dn * cn + np.dot(a, d) * cn + np.dot(d, c) * an + np.dot(c, a) * dn
            total += np.arctan2(p, d1) + np.arctan2(p, d2)
    return total / (2 * np.pi)


def _lift_diagram(dg):
    lifted = []
    for idx, comp in enumerate(dg.components):
        under = {}
        for c in dg.crossings:
            if c.comp_a == idx and c.over == "b":
                under.setdefault(c.seg_a, []).append(c.point)
            elif c.comp_b == idx and c.over == "a":
                under.setdefault(c.seg_b, []).append(c.point)
        lifted.append(_lift_component(comp, under))
    return lifted


def test_linking_parity_matches_3d_gauss_integral():
    rng = np.random.default_rng(5)
    A, x, b = sparse_system(rng, 4, max_row=3)
    dg = L.matrix_to_diagram(A, b)
    lifted = _lift_diagram(dg)
    for i in range(len(dg.components)):
        for j in range(i + 1, len(dg.components)):
            lk, lk2 = L.linking_number(dg, dg.components[i].name, dg.components[j].name)
            gauss = _gauss_linking(lifted[i], lifted[j])
            assert abs(gauss - round(gauss)) < 1e-6
            assert abs(round(gauss)) % 2 == lk2
            assert abs(round(gauss)) == abs(lk)
