"""Structural and numerical identity checks over built complexes.

Each check returns a named pass/fail record with evidence; the CLI `check`
command prints them and exits nonzero if any fail. The same routines back
the randomized property tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rational as qa
from .chain import (
    ChainComplex,
    deletion_closure_complex,
    embed_paths,
    infimum_complex,
    omega2_generators_fast,
    supremum_complex,
)
from .graphs import (
    Digraph,
    Hypergraph,
    essential_graph,
    h1_rank_digraph,
    h1_rank_hypergraph,
    symmetric_closure,
)
from .operators import (
    dirac,
    down_laplacian,
    eigen_spectrum,
    float_rank,
    laplacian,
    spectrum_symmetry_defect,
    verify_dirac_square,
)
from .persistence import (
    StageComplexes,
    auxiliary_complex,
    persistent_dirac,
    persistent_laplacian,
    persistent_nullity_report,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def check_boundary_square(c: ChainComplex) -> CheckResult:
    worst = None
    for k in range(2, c.p_top + 1):
        prod = c.degrees[k - 1].boundary @ c.degrees[k].boundary
        if not prod.is_zero():
            worst = k
    return _result(
        "boundary-composition-zero",
        worst is None,
        "exact at all degrees" if worst is None else f"nonzero composition at degree {worst}",
    )


def check_dirac_squares(c: ChainComplex, corrupt: bool = False) -> list[CheckResult]:
    out = []
    for p in range(c.p_top):
        report = verify_dirac_square(c, p)
        if corrupt:
            d = dirac(c, p)
            m = d.matrix.copy()
            if m.size:
                m[0, 0] += 0.5  # deliberate corruption for the negative control
            sq = m @ m
            defect = float(np.max(np.abs(sq - d.matrix @ d.matrix))) if m.size else 1.0
            out.append(_result(f"dirac-square-p{p}", defect <= 1e-10, f"injected defect {defect:.3e}"))
        else:
            out.append(_result(f"dirac-square-p{p}", report.passed, report.detail))
    return out


def check_spectrum_symmetry(c: ChainComplex) -> list[CheckResult]:
    out = []
    for p in range(c.p_top):
        d = dirac(c, p)
        spec = eigen_spectrum(d.matrix, d.exact_nullity)
        defect = spectrum_symmetry_defect(spec)
        out.append(
            _result(f"dirac-spectrum-symmetry-p{p}", defect <= 1e-8, f"defect {defect:.3e}")
        )
    return out


def check_nullity_identity(c: ChainComplex) -> list[CheckResult]:
    """Dirac kernel dimension equals Betti sum plus the top down-kernel, both exact."""
    out = []
    for p in range(c.p_top):
        d = dirac(c, p)
        rhs = sum(c.betti(i) for i in range(p + 1)) + c.down_nullity(p + 1)
        frank = float_rank(d.matrix)
        lhs_float = d.matrix.shape[0] - frank
        ok = d.exact_nullity == rhs and lhs_float == rhs
        out.append(
            _result(
                f"dirac-nullity-identity-p{p}",
                ok,
                f"exact {d.exact_nullity}, betti-sum form {rhs}, float-rank form {lhs_float}",
            )
        )
    return out


def check_exact_vs_float_ranks(c: ChainComplex) -> CheckResult:
    worst = 0
    for k in range(1, c.p_top + 1):
        exact = c.boundary_rank(k)
        numeric = float_rank(c.degrees[k].boundary_ortho)
        worst = max(worst, abs(exact - numeric))
    for p in range(c.p_top):
        lap = laplacian(c, p)
        exact_eta = lap.exact_nullity
        numeric_eta = lap.matrix.shape[0] - float_rank(lap.matrix)
        worst = max(worst, abs(exact_eta - numeric_eta))
    return _result("exact-vs-float-rank", worst == 0, f"max rank disagreement {worst}")


def check_h1_formula(graph: Digraph | Hypergraph, c: ChainComplex) -> CheckResult:
    """Closed-form degree-1 rank against the rank-nullity Betti number."""
    if c.p_top < 2:
        return _result("h1-closed-form", True, "skipped: complex not built to degree 2")
    rank_d2 = c.boundary_rank(2)
    if isinstance(graph, Digraph):
        formula = h1_rank_digraph(graph, rank_d2)
    else:
        formula = h1_rank_hypergraph(graph, rank_d2)
    betti1 = c.betti(1)
    return _result("h1-closed-form", formula == betti1, f"formula {formula}, betti {betti1}")


def check_embedded_homology(paths_per_degree) -> CheckResult:
    """Infimum and supremum subcomplexes of the anchor spans agree in homology."""
    ambient = deletion_closure_complex(paths_per_degree)
    submods = [
        embed_paths(paths, ambient.labels[k]) for k, paths in enumerate(paths_per_degree)
    ]
    inf = infimum_complex(ambient, submods)
    sup = supremum_complex(ambient, submods)
    bi = inf.betti_vector()
    bs = sup.betti_vector()
    return _result("embedded-homology", bi == bs, f"infimum {bi}, supremum {bs}")


def check_omega_against_infimum(c: ChainComplex) -> CheckResult:
    """Kernel-method invariant spaces match the generic infimum construction."""
    paths_per_degree = [c.degrees[k].paths for k in range(c.p_top + 1)]
    ambient = deletion_closure_complex(paths_per_degree)
    submods = [embed_paths(p, ambient.labels[k]) for k, p in enumerate(paths_per_degree)]
    inf = infimum_complex(ambient, submods)
    for k in range(c.p_top + 1):
        omega_emb = embed_paths(paths_per_degree[k], ambient.labels[k]) @ c.degrees[k].omega
        if not qa.spans_equal(omega_emb, inf.bases[k]):
            return _result("omega-vs-infimum", False, f"span mismatch at degree {k}")
    return _result("omega-vs-infimum", True, "identical spans at every degree")


def check_degree2_fast_path(graph: Digraph | Hypergraph, c: ChainComplex) -> CheckResult:
    """Triangle/square generators span the kernel-method degree-2 space."""
    if c.p_top < 2:
        return _result("degree2-fast-path", True, "skipped: complex not built to degree 2")
    g = graph if isinstance(graph, Digraph) else symmetric_closure(essential_graph(graph))
    fast = omega2_generators_fast(g, c.degrees[2].paths)
    ok = qa.spans_equal(fast, c.degrees[2].omega)
    return _result("degree2-fast-path", ok, f"fast dim {qa.rank(fast)}, kernel dim {c.dim(2)}")


def graph_check_suite(graph: Digraph | Hypergraph, c: ChainComplex,
                      corrupt: bool = False) -> list[CheckResult]:
    results = [check_boundary_square(c)]
    results.extend(check_dirac_squares(c, corrupt=corrupt))
    results.extend(check_spectrum_symmetry(c))
    results.extend(check_nullity_identity(c))
    results.append(check_exact_vs_float_ranks(c))
    results.append(check_h1_formula(graph, c))
    results.append(check_omega_against_infimum(c))
    results.append(check_degree2_fast_path(graph, c))
    results.append(check_embedded_homology([c.degrees[k].paths for k in range(c.p_top + 1)]))
    return results


def filtration_check_suite(stages: StageComplexes, p: int = 1) -> list[CheckResult]:
    """Per-pair persistence identities: reduction, containment, monotone kernels."""
    results: list[CheckResult] = []
    n_stages = len(stages)
    for a in range(1, n_stages + 1):
        for b in range(a, n_stages + 1):
            aux = auxiliary_complex(stages, a, b)
            tag = f"({a},{b})"
            report = persistent_nullity_report(aux, p)
            results.append(
                _result(
                    f"persistent-nullity{tag}",
                    report["passed"],
                    f"exact {report['exact_nullity']}, zeros {report['zero_eigenvalues']}, "
                    f"float {report['float_rank_nullity']}",
                )
            )
            if a == b:
                d_pers = persistent_dirac(aux, p)
                d_ord = dirac(stages.stage(b), p)
                s1 = eigen_spectrum(d_pers.matrix, d_pers.exact_nullity).values
                s2 = eigen_spectrum(d_ord.matrix, d_ord.exact_nullity).values
                defect = float(np.max(np.abs(s1 - s2))) if len(s1) else 0.0
                results.append(
                    _result(
                        f"a-eq-b-reduction{tag}",
                        s1.shape == s2.shape and defect <= 1e-8,
                        f"spectrum defect {defect:.3e}",
                    )
                )
            for n in range(p + 1):
                pers = persistent_laplacian(aux, n)
                eta_a = stages.stage(a).betti(n)
                eta_pers = pers.exact_nullity
                eta_c = aux.betti(n)
                ok = eta_a >= eta_pers and eta_c >= eta_pers
                results.append(
                    _result(
                        f"monotone-nullity-n{n}{tag}",
                        ok,
                        f"stage-a {eta_a} >= persistent {eta_pers} <= auxiliary {eta_c}",
                    )
                )
            beta0_aux = aux.betti(0)
            beta0_m = stages.stage(b).betti(0)
            results.append(
                _result(
                    f"beta0-pair{tag}",
                    beta0_aux == beta0_m,
                    f"auxiliary {beta0_aux}, stage-m {beta0_m}",
                )
            )
    return results
