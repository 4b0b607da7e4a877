"""Command-line interface.

Subcommands: complex, dirac, persist, molecule, check. Results are written
as JSON/CSV/SVG files under --out; a one-line summary goes to stdout and
timing to stderr (kept out of the files so outputs stay byte-identical).

Exit codes: 0 ok, 1 usage, 2 parse error, 3 resource cap, 4 identity violation.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .chain import build_digraph_complex, build_hypergraph_complex
from .checks import filtration_check_suite, graph_check_suite
from .errors import ParseError, PathDiracError
from .fileio import (
    grid_csv,
    grid_payload,
    load_graph,
    load_manifest,
    result_document,
    write_csv,
    write_json,
)
from .graphs import DEFAULT_PATH_CAP, Digraph
from .heatmap import grid_heatmap_svg
from .molecules import bond_digraph, distance_filtration, load_molecule
from .operators import (
    DEFAULT_DENSE_LIMIT,
    DEFAULT_ZERO_TOL,
    dirac,
    down_laplacian,
    eigen_spectrum,
    features,
    laplacian,
)
from .persistence import DEFAULT_FEATURES, StageComplexes, feature_grid
from .fileio import atomic_write_text


class CliParser(argparse.ArgumentParser):
    """argparse parser that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> CliParser:
    parser = CliParser(prog="pathdirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--cap", type=int, default=DEFAULT_PATH_CAP,
                       help="max anchor paths per degree")
        p.add_argument("--max-dense", type=int, default=DEFAULT_DENSE_LIMIT,
                       help="max dense operator size")
        p.add_argument("--tol", type=float, default=DEFAULT_ZERO_TOL,
                       help="zero-eigenvalue tolerance (within [1e-12, 1e-6])")

    p_complex = sub.add_parser("complex", help="invariant subspace dims, ranks, Betti numbers")
    p_complex.add_argument("input")
    p_complex.add_argument("--kind", choices=("digraph", "hypergraph"), default="digraph")
    p_complex.add_argument("--p", type=int, default=1, help="top homology degree to report")
    p_complex.add_argument("--dump-matrices", action="store_true",
                           help="include exact boundary matrices in the JSON")
    common(p_complex)

    p_dirac = sub.add_parser("dirac", help="Laplacian/Dirac spectra and features")
    p_dirac.add_argument("input")
    p_dirac.add_argument("--kind", choices=("digraph", "hypergraph"), default="digraph")
    p_dirac.add_argument("--p", type=int, default=1, help="Dirac operator degree")
    p_dirac.add_argument("--dump-matrices", action="store_true",
                         help="also write operator matrices as CSV")
    common(p_dirac)

    p_persist = sub.add_parser("persist", help="persistent Dirac feature grid of a filtration")
    p_persist.add_argument("manifest")
    p_persist.add_argument("--p", type=int, default=1)
    p_persist.add_argument("--features", nargs="+", default=list(DEFAULT_FEATURES))
    p_persist.add_argument("--jobs", type=int, default=1)
    p_persist.add_argument("--annotate", action="store_true", help="write values into heatmap cells")
    common(p_persist)

    p_mol = sub.add_parser("molecule", help="bond digraph filtration pipeline from an XYZ file")
    p_mol.add_argument("input")
    p_mol.add_argument("--thresholds", type=float, nargs="+", required=True)
    p_mol.add_argument("--p", type=int, default=1)
    p_mol.add_argument("--features", nargs="+", default=list(DEFAULT_FEATURES))
    p_mol.add_argument("--jobs", type=int, default=1)
    p_mol.add_argument("--annotate", action="store_true")
    common(p_mol)

    p_check = sub.add_parser("check", help="run the identity verification suite")
    p_check.add_argument("input")
    p_check.add_argument("--kind", choices=("digraph", "hypergraph", "filtration"),
                         default="digraph")
    p_check.add_argument("--p", type=int, default=1)
    p_check.add_argument("--debug-corrupt", action="store_true", help=argparse.SUPPRESS)
    common(p_check)
    return parser


def _tol(args) -> float:
    if not 1e-12 <= args.tol <= 1e-6:
        raise ParseError(f"--tol must lie in [1e-12, 1e-6], got {args.tol}")
    return args.tol


def _spectrum_payload(degree: int, spec, feats) -> dict:
    return {
        "degree": degree,
        "spectrum": [float(v) for v in spec.values],
        "exact_nullity": spec.exact_nullity,
        "features": feats.as_dict(),
    }


def _build(args, graph):
    if isinstance(graph, Digraph):
        return build_digraph_complex(graph, args.p + 1, args.cap)
    return build_hypergraph_complex(graph, args.p + 1, args.cap)


def cmd_complex(args) -> int:
    graph = load_graph(args.input, args.kind)
    c = _build(args, graph)
    payload = {
        "kind": args.kind,
        "p_max": args.p,
        "dims": [c.dim(k) for k in range(c.p_top + 1)],
        "boundary_ranks": [c.boundary_rank(k) for k in range(1, c.p_top + 1)],
        "betti": c.betti_vector(),
    }
    if args.dump_matrices:
        payload["boundaries"] = [
            [[str(x) for x in row] for row in c.degrees[k].boundary.data]
            for k in range(1, c.p_top + 1)
        ]
        payload["omega_bases"] = [
            [[str(x) for x in row] for row in c.degrees[k].omega.data]
            for k in range(c.p_top + 1)
        ]
    doc = result_document("complex", args.input, payload)
    out = Path(args.out) / f"{Path(args.input).stem}.complex.json"
    write_json(out, doc)
    print(f"betti={payload['betti']} dims={payload['dims']} -> {out}")
    return 0


def cmd_dirac(args) -> int:
    tol = _tol(args)
    graph = load_graph(args.input, args.kind)
    c = _build(args, graph)
    operators = {}
    for n in range(args.p + 1):
        lap = laplacian(c, n, args.max_dense)
        spec = eigen_spectrum(lap.matrix, lap.exact_nullity, tol)
        operators[f"laplacian_{n}"] = _spectrum_payload(n, spec, features(spec))
    down = down_laplacian(c, args.p + 1, args.max_dense)
    spec_down = eigen_spectrum(down.matrix, down.exact_nullity, tol)
    operators[f"down_laplacian_{args.p + 1}"] = _spectrum_payload(
        args.p + 1, spec_down, features(spec_down)
    )
    d = dirac(c, args.p, args.max_dense)
    spec_d = eigen_spectrum(d.matrix, d.exact_nullity, tol)
    operators[f"dirac_{args.p}"] = _spectrum_payload(args.p, spec_d, features(spec_d))
    payload = {"kind": args.kind, "p": args.p, "operators": operators}
    doc = result_document("dirac", args.input, payload)
    stem = Path(args.input).stem
    out = Path(args.out) / f"{stem}.dirac.json"
    write_json(out, doc)
    if args.dump_matrices:
        dumps = {f"laplacian_{n}": laplacian(c, n, args.max_dense).matrix for n in range(args.p + 1)}
        dumps[f"down_laplacian_{args.p + 1}"] = down.matrix
        dumps[f"dirac_{args.p}"] = d.matrix
        for name, matrix in dumps.items():
            rows = [[f"{v:.12g}" for v in row] for row in matrix]
            write_csv(Path(args.out) / f"{stem}.{name}.csv",
                      [f"c{j}" for j in range(matrix.shape[1])], rows)
    print(
        f"dirac p={args.p}: size={d.matrix.shape[0]} nullity={d.exact_nullity} -> {out}"
    )
    return 0


def _emit_grid(args, grid, source, command) -> int:
    stem = Path(source).stem
    out_dir = Path(args.out)
    doc = result_document(command, source, grid_payload(grid))
    json_path = out_dir / f"{stem}.grid.json"
    csv_path = out_dir / f"{stem}.grid.csv"
    write_json(json_path, doc)
    grid_csv(csv_path, grid)
    for name in grid.feature_names:
        svg = grid_heatmap_svg(grid, name, annotate=args.annotate)
        atomic_write_text(out_dir / f"{stem}.{name}.svg", svg)
    print(f"grid {grid.size}x{grid.size} features={','.join(grid.feature_names)} -> {csv_path}")
    return 0


def cmd_persist(args) -> int:
    tol = _tol(args)
    filtration = load_manifest(args.manifest)
    stages = StageComplexes(filtration, args.p + 1, args.cap)
    grid = feature_grid(stages, args.p, tuple(args.features), jobs=args.jobs, zero_tol=tol,
                        dense_limit=args.max_dense)
    return _emit_grid(args, grid, args.manifest, "persist")


def cmd_molecule(args) -> int:
    tol = _tol(args)
    mol = load_molecule(args.input)
    weighted = bond_digraph(mol)
    filtration = distance_filtration(weighted, args.thresholds)
    stages = StageComplexes(filtration, args.p + 1, args.cap)
    grid = feature_grid(stages, args.p, tuple(args.features), jobs=args.jobs, zero_tol=tol,
                        dense_limit=args.max_dense)
    return _emit_grid(args, grid, args.input, "molecule")


def cmd_check(args) -> int:
    if args.kind == "filtration":
        filtration = load_manifest(args.input)
        stages = StageComplexes(filtration, args.p + 1, args.cap)
        results = filtration_check_suite(stages, args.p)
    else:
        graph = load_graph(args.input, args.kind)
        c = _build(args, graph)
        results = graph_check_suite(graph, c, corrupt=args.debug_corrupt)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 4


COMMANDS = {
    "complex": cmd_complex,
    "dirac": cmd_dirac,
    "persist": cmd_persist,
    "molecule": cmd_molecule,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        code = COMMANDS[args.command](args)
    except PathDiracError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        elapsed = time.monotonic() - started
        print(f"[{args.command}] {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
