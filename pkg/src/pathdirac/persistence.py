"""Filtrations, auxiliary complexes, and persistent Laplacian/Dirac operators.

For a nested pair of stages (a, b) the auxiliary complex collects, per
degree, the vectors of the larger stage whose boundary already lies in the
smaller stage's invariant space. Persistent operators live on that complex;
their kernels are pinned by exact rational ranks exactly as in the ordinary
case.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rational as qa
from .chain import (
    ChainComplex,
    build_digraph_complex,
    build_hypergraph_complex,
    embed_paths,
    orthonormal_basis,
)
from .errors import StructuralError
from .graphs import DEFAULT_PATH_CAP, Digraph, Hypergraph
from .operators import (
    DEFAULT_DENSE_LIMIT,
    Dirac,
    FeatureSet,
    Laplacian,
    dirac_from_blocks,
    eigen_spectrum,
    features,
)
from .rational import QMatrix

Stage = Digraph | Hypergraph


@dataclass(frozen=True)
class Filtration:
    """Monotone sequence of digraphs or hypergraphs, stages indexed from 1."""

    stages: tuple[Stage, ...]
    thresholds: tuple[float, ...] | None = None

    @classmethod
    def of(cls, stages, thresholds=None) -> "Filtration":
        stages = tuple(stages)
        if not stages:
            raise StructuralError("a filtration needs at least one stage")
        kinds = {type(s) for s in stages}
        if len(kinds) != 1:
            raise StructuralError("filtration stages must all be digraphs or all hypergraphs")
        for i in range(len(stages) - 1):
            ok = (
                stages[i].is_subgraph_of(stages[i + 1])
                if isinstance(stages[i], Digraph)
                else stages[i].is_subhypergraph_of(stages[i + 1])
            )
            if not ok:
                raise StructuralError(
                    f"filtration nesting violated between stages {i + 1} and {i + 2}"
                )
        if thresholds is not None:
            thresholds = tuple(float(t) for t in thresholds)
            if len(thresholds) != len(stages):
                raise StructuralError("threshold count must match stage count")
            if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
                raise StructuralError("thresholds must be strictly increasing")
        return cls(stages, thresholds)

    def __len__(self) -> int:
        return len(self.stages)


class StageComplexes:
    """Per-stage chain complexes of a filtration, built once and shared."""

    def __init__(self, filtration: Filtration, p_top: int, cap: int = DEFAULT_PATH_CAP):
        self.filtration = filtration
        self.p_top = p_top
        build = (
            build_digraph_complex
            if isinstance(filtration.stages[0], Digraph)
            else build_hypergraph_complex
        )
        self.complexes: list[ChainComplex] = [build(s, p_top, cap) for s in filtration.stages]

    def __len__(self) -> int:
        return len(self.complexes)

    def stage(self, i: int) -> ChainComplex:
        """1-based stage access."""
        if not 1 <= i <= len(self.complexes):
            raise ValueError(f"stage index {i} out of range 1..{len(self.complexes)}")
        return self.complexes[i - 1]


@dataclass
class AuxiliaryComplex:
    """Preimage complex of a stage pair (a <= b), in stage-b coordinates."""

    a: int
    b: int
    stage_a: ChainComplex
    stage_b: ChainComplex
    a_in_b: list[QMatrix]  # stage-a basis expressed in the stage-b basis, per degree
    c_bases: list[QMatrix]  # auxiliary space bases in the stage-b basis
    d_c: list[QMatrix]  # exact boundary C_k -> C_{k-1}
    d_ba: list[QMatrix]  # exact boundary C_k -> stage-a degree k-1
    ortho_c: list[np.ndarray]  # orthonormal bases in stage-b path coordinates

    @property
    def p_top(self) -> int:
        return len(self.c_bases) - 1

    def dim(self, k: int) -> int:
        return self.c_bases[k].cols

    def rank_dc(self, k: int) -> int:
        if 1 <= k <= self.p_top:
            return qa.rank(self.d_c[k])
        return 0

    def betti(self, k: int) -> int:
        """Exact Betti number of the auxiliary complex."""
        if k + 1 > self.p_top:
            raise ValueError(f"auxiliary betti({k}) needs degree {k + 1}")
        return self.dim(k) - self.rank_dc(k) - self.rank_dc(k + 1)

    def down_nullity(self, k: int) -> int:
        return self.dim(k) - self.rank_dc(k)


def _solve_or_empty(basis: QMatrix, image: QMatrix) -> QMatrix:
    if basis.cols == 0:
        if not image.is_zero():
            raise StructuralError("boundary image escapes a zero-dimensional space")
        return QMatrix(0, image.cols)
    return qa.solve(basis, image)


def auxiliary_complex(stages: StageComplexes, a: int, b: int) -> AuxiliaryComplex:
    """Build the auxiliary complex for the stage pair a <= b to the built degree."""
    if not 1 <= a <= b <= len(stages):
        raise ValueError(f"invalid stage pair ({a}, {b})")
    ca = stages.stage(a)
    cb = stages.stage(b)
    p_top = stages.p_top
    a_in_b: list[QMatrix] = []
    for k in range(p_top + 1):
        embed = embed_paths(ca.degrees[k].paths, cb.degrees[k].paths)
        embedded = embed @ ca.degrees[k].omega
        if cb.dim(k) == 0:
            if not embedded.is_zero():
                raise StructuralError("stage inclusion failed: smaller stage escapes larger")
            a_in_b.append(QMatrix(0, ca.dim(k)))
        else:
            a_in_b.append(qa.solve(cb.degrees[k].omega, embedded))

    c_bases: list[QMatrix] = [QMatrix.identity(cb.dim(0))]
    for k in range(1, p_top + 1):
        c_bases.append(qa.preimage_basis(cb.degrees[k].boundary, a_in_b[k - 1]))

    d_c: list[QMatrix] = [QMatrix(0, c_bases[0].cols)]
    d_ba: list[QMatrix] = [QMatrix(0, c_bases[0].cols)]
    for k in range(1, p_top + 1):
        image = cb.degrees[k].boundary @ c_bases[k]
        d_c.append(_solve_or_empty(c_bases[k - 1], image))
        d_ba.append(_solve_or_empty(a_in_b[k - 1], image))

    ortho_c: list[np.ndarray] = []
    for k in range(p_top + 1):
        ortho_c.append(orthonormal_basis(cb.degrees[k].omega @ c_bases[k]))

    aux = AuxiliaryComplex(a, b, ca, cb, a_in_b, c_bases, d_c, d_ba, ortho_c)
    _verify_sandwich(aux)
    return aux


def _verify_sandwich(aux: AuxiliaryComplex) -> None:
    """Stage-a space inside the auxiliary space per degree; boundary squares to zero."""
    for k in range(aux.p_top + 1):
        if not qa.is_subspace(aux.a_in_b[k], aux.c_bases[k]):
            raise StructuralError(
                f"containment of stage {aux.a} in the auxiliary space fails at degree {k}"
            )
    for k in range(2, aux.p_top + 1):
        if not (aux.d_c[k - 1] @ aux.d_c[k]).is_zero():
            raise StructuralError(f"auxiliary boundary composition at degree {k} is nonzero")


def persistent_dirac(aux: AuxiliaryComplex, p: int,
                     dense_limit: int = DEFAULT_DENSE_LIMIT) -> Dirac:
    """Dirac operator of the auxiliary complex over degree blocks 0..p+1."""
    if not 0 <= p <= aux.p_top - 1:
        raise ValueError(f"persistent dirac degree {p} needs stages built to degree {p + 1}")
    cb = aux.stage_b
    blocks = []
    for k in range(1, p + 2):
        allowed = cb.degrees[k].allowed_block.to_float()
        blocks.append(aux.ortho_c[k - 1].T @ (allowed @ aux.ortho_c[k]))
    nullity = sum(aux.betti(i) for i in range(p + 1)) + aux.down_nullity(p + 1)
    return dirac_from_blocks(blocks, nullity, p, dense_limit)


def persistent_laplacian(aux: AuxiliaryComplex, n: int,
                         dense_limit: int = DEFAULT_DENSE_LIMIT) -> Laplacian:
    """Persistent Laplacian on the stage-a degree-n space.

    Down part from the stage-a boundary; up part from the boundary of the
    auxiliary degree-(n+1) space mapped into stage a.
    """
    if not 0 <= n <= aux.p_top - 1:
        raise ValueError(f"persistent laplacian degree {n} needs stages built to degree {n + 1}")
    ca, cb = aux.stage_a, aux.stage_b
    b_down = ca.degrees[n].boundary_ortho
    down = b_down.T @ b_down
    embed = embed_paths(ca.degrees[n].paths, cb.degrees[n].paths).to_float()
    q_a = embed @ ca.degrees[n].ortho
    allowed = cb.degrees[n + 1].allowed_block.to_float()
    m = q_a.T @ (allowed @ aux.ortho_c[n + 1])
    up = m @ m.T
    nullity = ca.dim(n) - ca.boundary_rank(n) - qa.rank(aux.d_ba[n + 1])
    return Laplacian(n, up + down, up, down, nullity)


def persistent_nullity_report(aux: AuxiliaryComplex, p: int) -> dict:
    """Nullity identity for the persistent Dirac computed along two routes.

    The exact route sums auxiliary Betti numbers and the top kernel
    dimension; the numeric route counts reconciled zero eigenvalues and a
    float rank of the assembled matrix.
    """
    d = persistent_dirac(aux, p)
    exact = sum(aux.betti(i) for i in range(p + 1)) + aux.down_nullity(p + 1)
    spec = eigen_spectrum(d.matrix, exact)
    zero_count = int(np.sum(np.abs(spec.values) <= spec.zero_threshold))
    from .operators import float_rank

    dim_total = d.matrix.shape[0]
    frank = float_rank(d.matrix)
    ok = zero_count == exact and dim_total - frank == exact
    return {
        "pair": (aux.a, aux.b),
        "degree": p,
        "exact_nullity": exact,
        "zero_eigenvalues": zero_count,
        "float_rank_nullity": dim_total - frank,
        "betti": [aux.betti(i) for i in range(p + 1)],
        "top_kernel": aux.down_nullity(p + 1),
        "passed": ok,
    }


def persistent_betti(stages: StageComplexes, a: int, b: int, n: int) -> int:
    """Rank of the degree-n homology image from stage a into stage b."""
    if not 1 <= a <= b <= len(stages):
        raise ValueError(f"invalid stage pair ({a}, {b})")
    ca = stages.stage(a)
    cb = stages.stage(b)
    if n + 1 > stages.p_top:
        raise ValueError(f"persistent betti({n}) needs stages built to degree {n + 1}")
    cycles_a = qa.kernel_basis(ca.degrees[n].boundary)
    embed = embed_paths(ca.degrees[n].paths, cb.degrees[n].paths)
    emb_omega = embed @ ca.degrees[n].omega
    if cb.dim(n) == 0:
        return 0
    z_in_b = qa.solve(cb.degrees[n].omega, emb_omega) @ cycles_a
    boundaries_b = cb.degrees[n + 1].boundary
    rank_b = qa.rank(boundaries_b)
    return qa.rank(qa.hstack(z_in_b, boundaries_b)) - rank_b


@dataclass
class FeatureGrid:
    """Upper-triangular (n, m) map of spectral features of persistent operators."""

    degree: int
    size: int
    feature_names: tuple[str, ...]
    cells: dict[tuple[int, int], FeatureSet] = field(default_factory=dict)

    def value(self, n: int, m: int, name: str) -> float:
        return getattr(self.cells[(n, m)], name)

    def rows(self) -> list[list]:
        out = []
        for n in range(1, self.size + 1):
            for m in range(n, self.size + 1):
                fs = self.cells[(n, m)]
                out.append([n, m] + [getattr(fs, name) for name in self.feature_names])
        return out


DEFAULT_FEATURES = ("nullity", "mean_pos", "gen_mean")


def feature_grid(
    stages: StageComplexes | Filtration,
    p: int,
    feature_names: tuple[str, ...] = DEFAULT_FEATURES,
    jobs: int = 1,
    zero_tol: float | None = None,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> FeatureGrid:
    """Persistent Dirac features over every stage pair n <= m."""
    if isinstance(stages, Filtration):
        stages = StageComplexes(stages, p + 1)
    for name in feature_names:
        if name not in FeatureSet.FIELDS:
            raise ValueError(f"unknown feature {name!r}; choose from {FeatureSet.FIELDS}")
    size = len(stages)
    grid = FeatureGrid(p, size, tuple(feature_names))
    pairs = [(n, m) for n in range(1, size + 1) for m in range(n, size + 1)]

    def cell(pair):
        n, m = pair
        aux = auxiliary_complex(stages, n, m)
        d = persistent_dirac(aux, p, dense_limit)
        kwargs = {} if zero_tol is None else {"zero_tol": zero_tol}
        return pair, features(eigen_spectrum(d.matrix, d.exact_nullity, **kwargs))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(cell, pairs))
    else:
        results = [cell(pair) for pair in pairs]
    for pair, fs in sorted(results, key=lambda item: item[0]):
        grid.cells[pair] = fs
    return grid
