import numpy as np
import pytest

import corpus
from homcycles import fileio, linkgen, meshes, persistence, surface
from homcycles.chains import Chain
from homcycles.cli import main
from homcycles.errors import ChainError, ComplexError, ParseError


def test_scx_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    K = corpus.random_surface(rng)
    p = tmp_path / "s.scx"
    fileio.write_scx(K, p)
    K2 = fileio.read_scx(p)
    assert K2.query_dim == K.query_dim
    assert K2.dims() == K.dims()
    for d in K.dims():
        assert np.array_equal(K2.simplex_rows(d), K.simplex_rows(d))
    assert np.array_equal(K2.weights, K.weights)


def test_scx_comments_and_header(tmp_path):
    p = tmp_path / "c.scx"
    p.write_text("# comment\ndim 1\ns 0 1 2\ns 0 1 7.5\n")
    K = fileio.read_scx(p)
    assert K.n_simplices(2) == 1
    assert K.weights[K.simplex_id(1, (0, 1))] == 7.5


def test_scx_malformed_line_number(tmp_path):
    p = tmp_path / "bad.scx"
    p.write_text("dim 1\ns 0 1\ns 0 x\n")
    with pytest.raises(ParseError) as exc:
        fileio.read_scx(p)
    assert exc.value.line == 3


def test_scx_duplicate_header(tmp_path):
    p = tmp_path / "bad.scx"
    p.write_text("dim 1\ndim 2\n")
    with pytest.raises(ParseError) as exc:
        fileio.read_scx(p)
    assert exc.value.line == 2


def test_off_reader(tmp_path):
    p = tmp_path / "tetra.off"
    p.write_text(
        "OFF\n4 4 6\n"
        "0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
        "3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n"
    )
    K = fileio.read_off(p)
    assert K.n_simplices(2) == 4 and K.n_simplices(1) == 6
    # edge weights are Euclidean lengths
    w = K.weights[K.simplex_id(1, (0, 1))]
    assert w == pytest.approx(1.0)
    w2 = K.weights[K.simplex_id(1, (1, 2))]
    assert w2 == pytest.approx(np.sqrt(2))


def _torus_off_text(n=6, R=2.0, r=1.0):
    """Donut-embedded grid torus as OFF text."""
    lines = ["OFF", f"{n * n} {2 * n * n} 0"]
    for i in range(n):
        for j in range(n):
            u = 2 * np.pi * i / n
            v = 2 * np.pi * j / n
            x = (R + r * np.cos(v)) * np.cos(u)
            y = (R + r * np.cos(v)) * np.sin(u)
            z = r * np.sin(v)
            lines.append(f"{x:.6f} {y:.6f} {z:.6f}")
    for i in range(n):
        for j in range(n):
            a = i * n + j
            b = i * n + (j + 1) % n
            c = ((i + 1) % n) * n + j
            d = ((i + 1) % n) * n + (j + 1) % n
            lines.append(f"3 {a} {b} {d}")
            lines.append(f"3 {a} {d} {c}")
    return "\n".join(lines) + "\n"


def test_off_torus_validates_genus_1(tmp_path, capsys):
    p = tmp_path / "donut.off"
    p.write_text(_torus_off_text())
    assert main(["validate", str(p)]) == 0
    assert "closed orientable genus 1" in capsys.readouterr().out


def test_off_rejects_quads(tmp_path):
    p = tmp_path / "quad.off"
    p.write_text("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n")
    with pytest.raises(ParseError):
        fileio.read_off(p)


def test_cycle_roundtrip_and_validation(tmp_path):
    G = meshes.grid_torus(3)
    tc = surface.tree_cotree(G)
    lam = surface.fundamental_cycle(G, tc, int(tc.leftover[0]))
    p = tmp_path / "z.cyc"
    fileio.write_cycle(lam, p)
    z = fileio.read_cycle(p, G)
    assert z == lam

    bad = tmp_path / "bad.cyc"
    bad.write_text("0 1\n")
    with pytest.raises(ChainError):
        fileio.read_cycle(bad, G)

    missing = tmp_path / "missing.cyc"
    missing.write_text("0 999\n")
    with pytest.raises(ComplexError):
        fileio.read_cycle(missing, G)


def test_persistence_csv_filled_triangle(tmp_path):
    from homcycles.complexes import build_complex

    K = build_complex(
        [((0, 1), 1.0), ((1, 2), 2.0), ((0, 2), 3.0), (0, 1, 2)], 1
    )
    p = tmp_path / "pers.csv"
    fileio.write_persistence_csv(persistence.reduced_filtration(K), p)
    lines = p.read_text().strip().split("\n")
    assert lines[0] == "dim,birth_index,birth_weight,death_index,death_weight"
    h1 = [ln for ln in lines if ln.startswith("1,")]
    assert len(h1) == 1 and h1[0].startswith("1,6,") and ",7," in h1[0]
    assert any(",inf" in ln for ln in lines)  # essential H0 class


def test_link_roundtrip_byte_identical(tmp_path):
    A = np.eye(3, dtype=int)
    b = np.array([1, 0, 1])
    dg = linkgen.matrix_to_diagram(A, b)
    p1, p2 = tmp_path / "a.link.json", tmp_path / "b.link.json"
    fileio.write_link(dg, p1)
    fileio.write_link(fileio.read_link(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_matrix_rhs_roundtrip(tmp_path):
    A = np.array([[1, 0], [1, 1]])
    b = np.array([0, 1])
    fileio.write_matrix(A, tmp_path / "m")
    fileio.write_rhs(b, tmp_path / "r")
    assert np.array_equal(fileio.read_matrix(tmp_path / "m"), A)
    assert np.array_equal(fileio.read_rhs(tmp_path / "r", 2), b)


# ---------------------------------------------------------------------------
# CLI


@pytest.fixture
def torus_files(tmp_path):
    G = meshes.grid_torus(3)
    cpath = tmp_path / "torus.scx"
    fileio.write_scx(G, cpath)
    tc = surface.tree_cotree(G)
    lam = surface.fundamental_cycle(G, tc, int(tc.leftover[0]))
    zpath = tmp_path / "lam.cyc"
    fileio.write_cycle(lam, zpath)
    return G, str(cpath), str(zpath)


def test_cli_validate(capsys, torus_files):
    _, cpath, _ = torus_files
    assert main(["validate", cpath]) == 0
    out = capsys.readouterr().out
    assert "closed orientable genus 1" in out and "beta=(1, 2, 1)" in out


def test_cli_validate_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.scx"
    p.write_text("s 0 zz\n")
    assert main(["validate", str(p)]) == 2
    assert "bad.scx:1" in capsys.readouterr().err


def test_cli_validate_non_surface(tmp_path, capsys):
    p = tmp_path / "c.scx"
    p.write_text("dim 1\ns 0 1 2\ns 0 1 3\ns 0 1 4\n")
    assert main(["validate", str(p)]) == 3


def test_cli_lexopt_algos_agree(tmp_path, capsys, torus_files):
    _, cpath, zpath = torus_files
    out_s = tmp_path / "s.cyc"
    out_r = tmp_path / "r.cyc"
    out_b = tmp_path / "b.cyc"
    assert main(["lexopt", cpath, zpath, "--algo", "surface", "--out", str(out_s)]) == 0
    assert main(["lexopt", cpath, zpath, "--algo", "reduction", "--out", str(out_r)]) == 0
    assert main(["lexopt", cpath, zpath, "--algo", "brute", "--out", str(out_b)]) == 0
    assert out_s.read_bytes() == out_r.read_bytes() == out_b.read_bytes()


def test_cli_lexopt_null_class_empty_file(tmp_path, capsys):
    T = meshes.tetrahedron()
    cpath = tmp_path / "t.scx"
    fileio.write_scx(T, cpath)
    from homcycles.chains import boundary

    z = boundary(Chain(T, 2, [0]))
    zpath = tmp_path / "z.cyc"
    fileio.write_cycle(z, zpath)
    out = tmp_path / "o.cyc"
    assert main(["lexopt", str(cpath), str(zpath), "--out", str(out)]) == 0
    assert out.read_text() == ""


def test_cli_brute_guard(tmp_path, capsys):
    K = meshes.grid_torus(4)  # 32 triangles: brute refuses
    cpath = tmp_path / "g.scx"
    fileio.write_scx(K, cpath)
    zpath = tmp_path / "z.cyc"
    zpath.write_text("")
    assert main(["lexopt", str(cpath), str(zpath), "--algo", "brute"]) == 4


def test_cli_surface_algo_on_non_surface(tmp_path):
    p = tmp_path / "disk.scx"
    p.write_text("dim 1\ns 0 1 2\ns 1 2 3\n")
    z = tmp_path / "z.cyc"
    z.write_text("")
    assert main(["lexopt", str(p), str(z), "--algo", "surface"]) == 3


def test_cli_basis_and_persistence(tmp_path, capsys, torus_files):
    _, cpath, _ = torus_files
    prefix = str(tmp_path / "basis")
    assert main(["basis", cpath, "--algo", "surface", "--out", prefix]) == 0
    out = capsys.readouterr().out
    assert "basis size 2" in out
    csv = tmp_path / "p.csv"
    assert main(["persistence", cpath, "--out", str(csv)]) == 0
    assert csv.read_text().startswith("dim,birth_index")


def test_cli_genlink_verifylink_and_tamper(tmp_path, capsys):
    mpath, rpath = tmp_path / "m", tmp_path / "r"
    fileio.write_matrix(np.eye(2, dtype=int), mpath)
    fileio.write_rhs([1, 0], rpath)
    dpath = tmp_path / "d.link.json"
    assert main(["genlink", str(mpath), str(rpath), "--out", str(dpath)]) == 0
    assert main(["verifylink", str(dpath), str(mpath), str(rpath)]) == 0

    dg = fileio.read_link(dpath)
    for c in dg.crossings:
        ca, cb = dg.components[c.comp_a], dg.components[c.comp_b]
        if {ca.role, cb.role} == {"lambda", "L"}:
            c.over = "a" if c.over == "b" else "b"
            break
    fileio.write_link(dg, dpath)
    assert main(["verifylink", str(dpath), str(mpath), str(rpath)]) == 5
    assert "FAILED" in capsys.readouterr().err


def test_cli_outputs_deterministic(tmp_path, torus_files):
    _, cpath, zpath = torus_files
    a, b = tmp_path / "a.cyc", tmp_path / "b.cyc"
    assert main(["lexopt", cpath, zpath, "--out", str(a)]) == 0
    assert main(["lexopt", cpath, zpath, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()

    m, r = tmp_path / "m", tmp_path / "r"
    fileio.write_matrix(np.eye(4, dtype=int), m)
    fileio.write_rhs([1, 1, 0, 0], r)
    d1, d2 = tmp_path / "d1.json", tmp_path / "d2.json"
    assert main(["genlink", str(m), str(r), "--out", str(d1)]) == 0
    assert main(["genlink", str(m), str(r), "--out", str(d2)]) == 0
    assert d1.read_bytes() == d2.read_bytes()


def test_cli_bench_smoke(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main([
        "bench", "--sizes", "4", "--repeats", "1", "--seed", "1",
        "--backend", "numpy", "--out", str(out),
    ]) == 0
    text = out.read_text()
    assert "t_surface_s" in text and "96" in text  # m = 6*16
