"""Chain-complex machinery for path and hypergraph complexes.

Builds, per degree, the boundary-invariant subspace of the span of anchor
sequences, the exact boundary matrices between those subspaces, and float
orthonormal bases for the operator layer. Also provides the generic
infimum/supremum subcomplex constructions used both as an independent
cross-check and for embedded homology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rational as qa
from .errors import StructuralError
from .graphs import (
    DEFAULT_PATH_CAP,
    Digraph,
    Hypergraph,
    anchor_path_table,
    essential_graph,
    symmetric_closure,
)
from .rational import QMatrix

Path = tuple[int, ...]


def boundary_terms(path: Path) -> list[tuple[int, Path]]:
    """Alternating single-vertex deletions: sign (-1)^i for dropping entry i."""
    p = len(path) - 1
    if p == 0:
        return []
    return [((-1) ** i, path[:i] + path[i + 1 :]) for i in range(p + 1)]


def boundary_of_path(path: Path) -> dict[Path, int]:
    """Boundary as a coefficient map, with cancellation of repeated subsequences."""
    acc: dict[Path, int] = {}
    for sign, sub in boundary_terms(path):
        acc[sub] = acc.get(sub, 0) + sign
        if acc[sub] == 0:
            del acc[sub]
    return acc


def split_boundary(
    paths_k: list[Path], paths_km1: list[Path]
) -> tuple[QMatrix, QMatrix, list[Path]]:
    """Boundary of the degree-k span, split by row membership in the allowed list.

    Returns (allowed_block, disallowed_block, disallowed_labels): stacking the
    blocks reproduces the boundary restricted to the allowed degree-k paths;
    disallowed rows are indexed by elementary sequences outside paths_km1.
    """
    index = {p: i for i, p in enumerate(paths_km1)}
    cols = [boundary_of_path(p) for p in paths_k]
    extra = sorted({sub for col in cols for sub in col if sub not in index})
    extra_index = {p: i for i, p in enumerate(extra)}
    allowed = QMatrix(len(paths_km1), len(paths_k))
    disallowed = QMatrix(len(extra), len(paths_k))
    for j, col in enumerate(cols):
        for sub, coeff in col.items():
            if sub in index:
                allowed.data[index[sub]][j] = qa.Fraction(coeff)
            else:
                disallowed.data[extra_index[sub]][j] = qa.Fraction(coeff)
    return allowed, disallowed, extra


@dataclass
class DegreeData:
    """Everything the operator layer needs about one degree."""

    paths: list[Path]
    omega: QMatrix  # columns: basis of the invariant subspace, path coordinates
    boundary: QMatrix  # exact map to the previous degree's omega basis (k >= 1)
    allowed_block: QMatrix  # boundary into path coordinates of degree k-1
    ortho: np.ndarray  # orthonormal basis, path coordinates
    boundary_ortho: np.ndarray  # boundary in orthonormal bases

    @property
    def dim(self) -> int:
        return self.omega.cols


class ChainComplex:
    """Per-degree invariant subspaces with exact and orthonormal boundary data."""

    def __init__(self, degrees: list[DegreeData]):
        self.degrees = degrees
        self.p_top = len(degrees) - 1

    def dim(self, k: int) -> int:
        if 0 <= k <= self.p_top:
            return self.degrees[k].dim
        return 0

    def boundary_rank(self, k: int) -> int:
        """Exact rank of the boundary map out of degree k (0 beyond the built range)."""
        if 1 <= k <= self.p_top:
            return qa.rank(self.degrees[k].boundary)
        return 0

    def betti(self, k: int) -> int:
        """Exact Betti number; requires degree k+1 to be built."""
        if k < 0 or k + 1 > self.p_top:
            raise ValueError(f"betti({k}) needs the complex built to degree {k + 1}")
        return self.dim(k) - self.boundary_rank(k) - self.boundary_rank(k + 1)

    def betti_vector(self) -> list[int]:
        return [self.betti(k) for k in range(self.p_top)]

    def down_nullity(self, k: int) -> int:
        """Exact kernel dimension of the boundary map out of degree k."""
        return self.dim(k) - self.boundary_rank(k)


def orthonormal_basis(basis: QMatrix) -> np.ndarray:
    """Float orthonormal basis with the same span as the exact one.

    A basis that is already exactly orthonormal is returned unchanged so
    integer boundary matrices stay integer; otherwise QR with the diagonal
    of R normalized positive, which makes the output deterministic.
    """
    if basis.cols == 0:
        return np.zeros((basis.rows, 0))
    gram = basis.transpose() @ basis
    if gram == QMatrix.identity(basis.cols):
        return basis.to_float()
    w = basis.to_float()
    q, r = np.linalg.qr(w)
    diag = np.diag(r)
    if np.any(np.abs(diag) < 1e-12):
        raise StructuralError("rank-deficient basis passed to orthonormalization")
    q = q * np.sign(diag)
    return q


def build_complex(
    paths_per_degree: list[list[Path]],
    omega_override: dict[int, QMatrix] | None = None,
) -> ChainComplex:
    """Invariant subspaces and boundaries from per-degree anchor path lists.

    Degree k basis: exact kernel of the disallowed block of the boundary
    (vectors whose boundary stays inside the allowed degree-(k-1) span);
    degree 0 is the full vertex span. The exact boundary is re-expressed in
    the previous degree's basis, which is always solvable because a boundary
    of an invariant vector is itself invariant.

    omega_override supplies a precomputed basis for a degree (the degree-2
    accelerated constructor); it is verified to be an independent spanning
    set of the same kernel before use.
    """
    for k in range(1, len(paths_per_degree)):
        prev = set(paths_per_degree[k - 1])
        for path in paths_per_degree[k]:
            if path[1:] not in prev or path[:-1] not in prev:
                raise StructuralError(
                    f"allowed path lists are not prefix/suffix closed at degree {k}: {path}"
                )
    degrees: list[DegreeData] = []
    n0 = len(paths_per_degree[0])
    omega0 = QMatrix.identity(n0)
    degrees.append(
        DegreeData(
            paths=paths_per_degree[0],
            omega=omega0,
            boundary=QMatrix(0, n0),
            allowed_block=QMatrix(0, n0),
            ortho=np.eye(n0),
            boundary_ortho=np.zeros((0, n0)),
        )
    )
    for k in range(1, len(paths_per_degree)):
        paths_k = paths_per_degree[k]
        paths_km1 = paths_per_degree[k - 1]
        allowed, disallowed, _ = split_boundary(paths_k, paths_km1)
        if omega_override and k in omega_override:
            omega = omega_override[k]
            if not (omega.rows == len(paths_k) and (disallowed @ omega).is_zero()
                    and qa.rank(omega) == omega.cols == len(paths_k) - qa.rank(disallowed)):
                raise StructuralError(f"override basis at degree {k} is not a kernel basis")
        else:
            omega = qa.kernel_basis(disallowed)
        prev = degrees[k - 1]
        image = allowed @ omega  # path coordinates of the boundary of each basis vector
        if prev.omega.cols == 0:
            if not image.is_zero():
                raise StructuralError("boundary image escapes a zero-dimensional degree")
            boundary = QMatrix(0, omega.cols)
        else:
            boundary = qa.solve(prev.omega, image)
        ortho = orthonormal_basis(omega)
        boundary_ortho = prev.ortho.T @ (allowed.to_float() @ ortho)
        degrees.append(
            DegreeData(
                paths=paths_k,
                omega=omega,
                boundary=boundary,
                allowed_block=allowed,
                ortho=ortho,
                boundary_ortho=boundary_ortho,
            )
        )
    cplx = ChainComplex(degrees)
    _verify_boundary_square(cplx)
    return cplx


def _verify_boundary_square(c: ChainComplex) -> None:
    for k in range(2, c.p_top + 1):
        prod = c.degrees[k - 1].boundary @ c.degrees[k].boundary
        if not prod.is_zero():
            raise StructuralError(f"boundary composition at degree {k} is nonzero")


def build_digraph_complex(g: Digraph, p_top: int, cap: int = DEFAULT_PATH_CAP,
                          fast_degree2: bool = False) -> ChainComplex:
    table = anchor_path_table(g, p_top, cap)
    override = None
    if fast_degree2 and p_top >= 2:
        override = {2: omega2_generators_fast(g, table[2])}
    return build_complex(table, override)


def build_hypergraph_complex(h: Hypergraph, p_top: int, cap: int = DEFAULT_PATH_CAP,
                             fast_degree2: bool = False) -> ChainComplex:
    g = symmetric_closure(essential_graph(h))
    table = anchor_path_table(g, p_top, cap)
    override = None
    if fast_degree2 and p_top >= 2:
        override = {2: omega2_generators_fast(g, table[2])}
    return build_complex(table, override)


def omega2_generators_fast(g: Digraph, paths2: list[Path]) -> QMatrix:
    """Degree-2 invariant space via the triangle/square characterization.

    Triangles (v0, v1, v2) with v0 -> v2 an edge enter singly; the remaining
    sequences contribute consecutive differences within each (v0, v2) group.
    Cross-checked against the kernel construction in the tests; the kernel
    method stays authoritative.
    """
    eset = set(g.edges)
    groups: dict[tuple[int, int], list[int]] = {}
    for j, (a, b, c) in enumerate(paths2):
        groups.setdefault((a, c), []).append(j)
    cols: list[dict[int, int]] = []
    for (a, c), members in sorted(groups.items()):
        if a != c and (a, c) in eset:
            for j in members:
                cols.append({j: 1})
        else:
            for j_prev, j_next in zip(members, members[1:]):
                cols.append({j_prev: 1, j_next: -1})
    out = QMatrix(len(paths2), len(cols))
    for k, col in enumerate(cols):
        for j, coeff in col.items():
            out.data[j][k] = qa.Fraction(coeff)
    return out


def omega2_generators_fast_hypergraph(h: Hypergraph, paths2: list[Path]) -> QMatrix:
    """Hypergraph variant: adjacency is co-containment in some hyperedge."""
    return omega2_generators_fast(symmetric_closure(essential_graph(h)), paths2)


# ---------------------------------------------------------------------------
# Generic ambient complexes and infimum/supremum subcomplexes


@dataclass
class AmbientComplex:
    """Explicit basis labels and exact boundary matrices for degrees 0..top."""

    labels: list[list[Path]]
    boundaries: list[QMatrix]  # boundaries[k]: degree k -> degree k-1; boundaries[0] has 0 rows

    @property
    def top(self) -> int:
        return len(self.labels) - 1

    def dim(self, k: int) -> int:
        return len(self.labels[k])


def deletion_closure_complex(paths_per_degree: list[list[Path]]) -> AmbientComplex:
    """Smallest elementary-path complex containing the given spans.

    Working inside this closure instead of the full sequence space keeps the
    ambient dimensions proportional to the input, with identical subcomplexes.
    """
    top = len(paths_per_degree) - 1
    labels: list[set[Path]] = [set(ps) for ps in paths_per_degree]
    for k in range(top, 0, -1):
        for path in labels[k]:
            for _, sub in boundary_terms(path):
                labels[k - 1].add(sub)
    sorted_labels = [sorted(ls) for ls in labels]
    boundaries = [QMatrix(0, len(sorted_labels[0]))]
    for k in range(1, top + 1):
        rows = {p: i for i, p in enumerate(sorted_labels[k - 1])}
        b = QMatrix(len(sorted_labels[k - 1]), len(sorted_labels[k]))
        for j, path in enumerate(sorted_labels[k]):
            for sub, coeff in boundary_of_path(path).items():
                b.data[rows[sub]][j] = qa.Fraction(coeff)
        boundaries.append(b)
    return AmbientComplex(sorted_labels, boundaries)


def embed_paths(sub: list[Path], ambient: list[Path]) -> QMatrix:
    """0/1 embedding matrix sending the sub path list into the ambient one."""
    index = {p: i for i, p in enumerate(ambient)}
    out = QMatrix(len(ambient), len(sub))
    for j, p in enumerate(sub):
        out.data[index[p]][j] = qa.ONE
    return out


@dataclass
class SubcomplexRep:
    """Per-degree bases (ambient coordinates) plus restricted boundary maps."""

    bases: list[QMatrix]
    boundaries: list[QMatrix]

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def dim(self, k: int) -> int:
        return self.bases[k].cols

    def betti(self, k: int) -> int:
        if k + 1 > self.top:
            raise ValueError(f"betti({k}) needs degree {k + 1}")
        r_k = qa.rank(self.boundaries[k]) if k >= 1 else 0
        r_k1 = qa.rank(self.boundaries[k + 1])
        return self.dim(k) - r_k - r_k1

    def betti_vector(self) -> list[int]:
        return [self.betti(k) for k in range(self.top)]


def _restricted_boundaries(ambient: AmbientComplex, bases: list[QMatrix]) -> list[QMatrix]:
    boundaries = [QMatrix(0, bases[0].cols)]
    for k in range(1, len(bases)):
        image = ambient.boundaries[k] @ bases[k]
        if bases[k - 1].cols == 0:
            if not image.is_zero():
                raise StructuralError("subcomplex is not closed under the boundary")
            boundaries.append(QMatrix(0, bases[k].cols))
        else:
            boundaries.append(qa.solve(bases[k - 1], image))
    return boundaries


def infimum_complex(ambient: AmbientComplex, submodules: list[QMatrix]) -> SubcomplexRep:
    """Largest subcomplex inside the graded family: A_k ∩ boundary-preimage(A_{k-1})."""
    bases = [qa.column_space_basis(submodules[0])]
    for k in range(1, len(submodules)):
        pre = qa.preimage_basis(ambient.boundaries[k], bases[k - 1])
        bases.append(qa.intersection_basis(submodules[k], pre))
    return SubcomplexRep(bases, _restricted_boundaries(ambient, bases))


def supremum_complex(ambient: AmbientComplex, submodules: list[QMatrix]) -> SubcomplexRep:
    """Smallest subcomplex containing the graded family: A_k + boundary(A_{k+1})."""
    top = len(submodules) - 1
    bases = []
    for k in range(top + 1):
        if k < top:
            bases.append(qa.sum_space_basis(submodules[k], ambient.boundaries[k + 1] @ submodules[k + 1]))
        else:
            bases.append(qa.column_space_basis(submodules[k]))
    return SubcomplexRep(bases, _restricted_boundaries(ambient, bases))
