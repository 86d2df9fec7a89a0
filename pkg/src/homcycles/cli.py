"""Command-line interface.

Exit codes: 0 success, 2 parse/usage, 3 validation, 4 size guard,
5 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from . import backend, fileio, linkgen, meshes, oracle, persistence, surface
from .chains import Chain, add, bottleneck_norm
from .complexes import classify_surface
from .errors import (
    ChainError,
    ComplexError,
    GuardLimitError,
    HomcyclesError,
    OrientationError,
    ParseError,
    SurfaceError,
    VerificationError,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_GUARD = 4
EXIT_VERIFY = 5

DEFAULT_REDUCTION_CAP = 6000


def _fail(code, msg):
    print(f"error: {msg}", file=sys.stderr)
    return code


def _load_complex(args):
    return fileio.read_complex(args.complex, getattr(args, "dim", None))


def _check_cap(K, cap):
    n = K.total_simplices()
    if n > cap:
        raise GuardLimitError(
            f"{n} simplices exceed the reduction size cap {cap} "
            f"(raise with --reduction-cap)"
        )


def cmd_validate(args):
    K = _load_complex(args)
    topo = classify_surface(K)
    kind = "closed" if topo.closed else "bounded"
    if topo.closed:
        beta = (1, 2 * topo.genus, 1)
    else:
        _check_cap(K, args.reduction_cap)
        beta = tuple(persistence.betti_numbers(K))
    print(
        f"{kind} orientable genus {topo.genus}, chi={topo.euler_characteristic}, "
        f"beta={beta}"
    )
    return EXIT_OK


def cmd_betti(args):
    K = _load_complex(args)
    _check_cap(K, args.reduction_cap)
    beta = persistence.betti_numbers(K)
    print("beta=(" + ", ".join(map(str, beta)) + ")")
    return EXIT_OK


def _optimal_cycle(K, z, algo, reduction_cap):
    if algo == "surface":
        tc = surface.tree_cotree(K)
        schema = surface.cut_to_disk(K, tc)
        return surface.lex_opt_cycle_surface(K, schema, z)
    if algo == "reduction":
        _check_cap(K, reduction_cap)
        return persistence.lex_optimal_cycle(K, z)
    if algo == "brute":
        return oracle.brute_lex_opt(K, z)
    raise ComplexError(f"unknown algorithm {algo!r}")


def cmd_lexopt(args, report_bottleneck=False):
    K = _load_complex(args)
    z = fileio.read_cycle(args.cycle, K)
    out = _optimal_cycle(K, z, args.algo, args.reduction_cap)
    if args.out:
        fileio.write_cycle(out, args.out)
    if getattr(args, "dump_schema", None):
        schema = surface.cut_to_disk(K, surface.tree_cotree(K))
        with open(args.dump_schema, "w", encoding="utf-8") as fh:
            for slot, (u, v) in enumerate(schema.boundary_labels()):
                fh.write(f"slot {slot}: {u} {v}\n")
        print(f"schema dump: {args.dump_schema} ({schema.n_slots} slots)")
    norm = bottleneck_norm(out)
    label = "bottleneck norm" if report_bottleneck else "b_w"
    print(f"{label}={norm!r} support={len(out)}")
    return EXIT_OK


def cmd_bottleneckopt(args):
    return cmd_lexopt(args, report_bottleneck=True)


def cmd_basis(args):
    K = _load_complex(args)
    if args.algo == "surface":
        tc = surface.tree_cotree(K)
        basis = surface.lex_opt_basis_surface(K, tc)
    elif args.algo == "reduction":
        _check_cap(K, args.reduction_cap)
        basis = persistence.lex_optimal_basis(K)
    elif args.algo == "brute":
        basis = oracle.brute_greedy_basis(K, K.query_dim)
    else:
        raise ComplexError(f"unknown algorithm {args.algo!r}")
    for i, c in enumerate(basis, start=1):
        path = f"{args.out or 'basis'}_{i}.cyc"
        fileio.write_cycle(c, path)
        print(f"{path} support={len(c)} b_w={bottleneck_norm(c)!r}")
    print(f"basis size {len(basis)}")
    return EXIT_OK


def cmd_persistence(args):
    K = _load_complex(args)
    _check_cap(K, args.reduction_cap)
    rf = persistence.reduced_filtration(K)
    out = args.out or "persistence.csv"
    fileio.write_persistence_csv(rf, out)
    diag = persistence.persistence_diagram(rf)
    ess = sum(1 for (_, d, _) in diag if d == float("inf"))
    print(f"{out}: {len(diag)} classes, {ess} essential")
    return EXIT_OK


def cmd_genlink(args):
    A = fileio.read_matrix(args.matrix)
    b = fileio.read_rhs(args.rhs, A.shape[0])
    dg = linkgen.matrix_to_diagram(A, b)
    out = args.out or "diagram.link.json"
    fileio.write_link(dg, out)
    print(f"{out}: {len(dg.components)} components, {len(dg.crossings)} crossings")
    return EXIT_OK


def cmd_verifylink(args):
    A = fileio.read_matrix(args.matrix)
    b = fileio.read_rhs(args.rhs, A.shape[0])
    dg = fileio.read_link(args.diagram)
    report = linkgen.verify_instance(dg, A, b)
    print(f"crossings={report.crossing_count}")
    if report.ok:
        print("verification passed")
        return EXIT_OK
    kind, i, j = report.mismatches[0]
    print(f"verification FAILED at {kind} ({i}, {j})", file=sys.stderr)
    return EXIT_VERIFY


def _bench_cycle(K, rng):
    """Deterministic representative cycle: a fundamental cycle XOR a boundary blob."""
    tc = surface.tree_cotree(K)
    non_tree = np.flatnonzero(~tc.in_tree)
    z = surface.fundamental_cycle(K, tc, int(non_tree[rng.integers(non_tree.size)]))
    tri_sel = rng.random(K.n_simplices(2)) < 0.05
    if tri_sel.any():
        counts = np.bincount(
            K.face_ids(2)[tri_sel].ravel(), minlength=K.n_simplices(1)
        )
        z = add(z, Chain(K, 1, np.flatnonzero(counts % 2)))
    return z


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = (
        backend.available_backends() if args.backend == "both" else [args.backend]
    )
    previous_backend = backend.active_backend()
    try:
        return _run_bench(args, sizes, backends)
    finally:
        backend.set_backend(previous_backend)


def _run_bench(args, sizes, backends):
    rows = []
    for n in sizes:
        rng = np.random.default_rng(args.seed)
        K0 = (
            meshes.grid_torus(n, seed=args.seed)
            if args.genus == 1
            else meshes.genus_g_surface(args.genus, n, seed=args.seed)
        )
        m = K0.total_simplices()
        z0 = _bench_cycle(K0, rng)
        edge_list = K0.vertex_labels[K0.simplex_rows(1)]
        tri_list = K0.vertex_labels[K0.simplex_rows(2)]
        weights = K0.weights
        cycle_edges = K0.vertex_labels[K0.simplex_rows(1)[z0.ids]]
        for bk in backends:
            backend.set_backend(bk)
            # warm any jit compilation outside the timed region
            warm = meshes.grid_torus(3, seed=0)
            wtc = surface.tree_cotree(warm)
            surface.lex_opt_cycle_surface(
                warm, surface.cut_to_disk(warm, wtc), _bench_cycle(warm, np.random.default_rng(0))
            )
            for rep in range(args.repeats):
                from .complexes import from_arrays

                K = from_arrays({2: tri_list, 1: edge_list}, 1, weights)
                z = Chain.from_simplices(K, 1, [tuple(e) for e in cycle_edges])
                t0 = time.perf_counter()
                tc = surface.tree_cotree(K)
                schema = surface.cut_to_disk(K, tc)
                zs = surface.lex_opt_cycle_surface(K, schema, z)
                t_surface = time.perf_counter() - t0
                if m <= args.reduction_cap:
                    K2 = from_arrays({2: tri_list, 1: edge_list}, 1, weights)
                    z2 = Chain.from_simplices(K2, 1, [tuple(e) for e in cycle_edges])
                    t0 = time.perf_counter()
                    zr = persistence.lex_optimal_cycle(K2, z2)
                    t_reduction = time.perf_counter() - t0
                    if not zr == Chain(K2, 1, zs.ids):
                        raise VerificationError("surface and reduction outputs differ")
                else:
                    t_reduction = None
                    if rep == 0:
                        print(
                            f"n={n}: reduction skipped ({m} simplices > cap "
                            f"{args.reduction_cap})"
                        )
                rows.append(
                    {
                        "m": m,
                        "n": n,
                        "genus": args.genus,
                        "backend": bk,
                        "repeat": rep,
                        "support": len(zs),
                        "t_surface_s": f"{t_surface:.6f}",
                        "t_reduction_s": "" if t_reduction is None else f"{t_reduction:.6f}",
                    }
                )
                print(
                    f"m={m} backend={bk} rep={rep} t_surface={t_surface:.4f}s"
                    + (f" t_reduction={t_reduction:.4f}s" if t_reduction is not None else "")
                )
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.out}")
    return EXIT_OK


def _parser():
    p = argparse.ArgumentParser(
        prog="homcycles",
        description="Optimal homologous cycles on weighted complexes, and "
        "link-diagram instances of sparse Z2 systems.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_complex_cmd(name, fn, cycle=False, algo=False):
        sp = sub.add_parser(name)
        sp.add_argument("complex")
        if cycle:
            sp.add_argument("cycle")
        if algo:
            sp.add_argument(
                "--algo", choices=("surface", "reduction", "brute"), default="surface"
            )
        if cycle:
            sp.add_argument("--dump-schema", default=None)
        sp.add_argument("--dim", type=int, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument(
            "--reduction-cap", type=int, default=DEFAULT_REDUCTION_CAP
        )
        sp.set_defaults(fn=fn)
        return sp

    add_complex_cmd("validate", cmd_validate)
    add_complex_cmd("betti", cmd_betti)
    add_complex_cmd("lexopt", cmd_lexopt, cycle=True, algo=True)
    add_complex_cmd("bottleneckopt", cmd_bottleneckopt, cycle=True, algo=True)
    add_complex_cmd("basis", cmd_basis, algo=True)
    add_complex_cmd("persistence", cmd_persistence)

    sp = sub.add_parser("genlink")
    sp.add_argument("matrix")
    sp.add_argument("rhs")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_genlink)

    sp = sub.add_parser("verifylink")
    sp.add_argument("diagram")
    sp.add_argument("matrix")
    sp.add_argument("rhs")
    sp.set_defaults(fn=cmd_verifylink)

    sp = sub.add_parser("bench")
    sp.add_argument("--genus", type=int, default=1)
    sp.add_argument("--sizes", default="20,40")
    sp.add_argument("--repeats", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--backend", choices=("both", "numba", "numpy"), default="both")
    sp.add_argument("--out", default=None)
    sp.add_argument("--reduction-cap", type=int, default=DEFAULT_REDUCTION_CAP)
    sp.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc)
    except GuardLimitError as exc:
        return _fail(EXIT_GUARD, exc)
    except VerificationError as exc:
        return _fail(EXIT_VERIFY, exc)
    except (SurfaceError, OrientationError, ChainError, ComplexError) as exc:
        return _fail(EXIT_VALIDATION, exc)
    except HomcyclesError as exc:
        return _fail(EXIT_VALIDATION, exc)
    except OSError as exc:
        return _fail(EXIT_PARSE, exc)


if __name__ == "__main__":
    sys.exit(main())
