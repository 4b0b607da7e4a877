"""Combinatorial graph structures and anchor-path enumeration.

Digraphs, hypergraphs, and their essential/underlying graphs, plus the
walk (anchor sequence) enumeration that seeds every chain complex here.
All containers are immutable and deterministically ordered so that the
matrices built on top of them are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ResourceLimitError, StructuralError

DEFAULT_PATH_CAP = 200_000


@dataclass(frozen=True)
class Digraph:
    """Directed graph without loops; vertices and edges sorted ascending."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, vertices, edges) -> "Digraph":
        vset = {int(v) for v in vertices}
        eset = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParseError(f"loop edge {u}->{v} is not permitted")
            vset.add(u)
            vset.add(v)
            eset.add((u, v))
        if any(v < 0 for v in vset):
            raise ParseError("vertex ids must be non-negative integers")
        return cls(tuple(sorted(vset)), tuple(sorted(eset)))

    def successors(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
        return {u: tuple(sorted(vs)) for u, vs in adj.items()}

    def is_subgraph_of(self, other: "Digraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and set(self.edges) <= set(other.edges)


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges stored as sorted (u, v) with u < v."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, vertices, edges) -> "UndirectedGraph":
        vset = {int(v) for v in vertices}
        eset = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParseError(f"loop edge on vertex {u} is not permitted")
            vset.add(u)
            vset.add(v)
            eset.add((min(u, v), max(u, v)))
        return cls(tuple(sorted(vset)), tuple(sorted(eset)))

    def component_count(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(v) for v in self.vertices})


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph with nonempty hyperedges over declared vertices."""

    vertices: tuple[int, ...]
    hyperedges: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, vertices, hyperedges) -> "Hypergraph":
        vset = {int(v) for v in vertices}
        eset = set()
        for e in hyperedges:
            e = tuple(sorted({int(v) for v in e}))
            if not e:
                raise ParseError("empty hyperedge is not permitted")
            vset.update(e)
            eset.add(e)
        return cls(tuple(sorted(vset)), tuple(sorted(eset)))

    def is_subhypergraph_of(self, other: "Hypergraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and set(self.hyperedges) <= set(
            other.hyperedges
        )


def essential_graph(h: Hypergraph) -> UndirectedGraph:
    """Undirected graph joining every vertex pair co-contained in a hyperedge."""
    edges = set()
    for e in h.hyperedges:
        for i in range(len(e)):
            for j in range(i + 1, len(e)):
                edges.add((e[i], e[j]))
    return UndirectedGraph(h.vertices, tuple(sorted(edges)))


def maximal_hyperedges(h: Hypergraph) -> Hypergraph:
    """Drop every hyperedge strictly contained in another one."""
    sets = [frozenset(e) for e in h.hyperedges]
    keep = []
    for i, e in enumerate(sets):
        if not any(i != j and e < f for j, f in enumerate(sets)):
            keep.append(h.hyperedges[i])
    return Hypergraph(h.vertices, tuple(sorted(keep)))


def symmetric_closure(g: UndirectedGraph) -> Digraph:
    """Two directed edges per undirected edge; walk sets are preserved."""
    edges = []
    for u, v in g.edges:
        edges.append((u, v))
        edges.append((v, u))
    return Digraph(g.vertices, tuple(sorted(edges)))


def underlying_graph(g: Digraph) -> UndirectedGraph:
    return UndirectedGraph.of(g.vertices, g.edges)


def anchor_paths(g: Digraph, p: int, cap: int = DEFAULT_PATH_CAP) -> list[tuple[int, ...]]:
    """All anchor sequences of length p, lexicographically sorted.

    A degree-p anchor sequence is (v0, ..., vp) with every (v_{i-1}, v_i) a
    directed edge; p = 0 yields the vertices, isolated ones included.
    """
    return anchor_path_table(g, p, cap)[p]


def anchor_path_table(g: Digraph, p_top: int, cap: int = DEFAULT_PATH_CAP) -> list[list[tuple[int, ...]]]:
    """Anchor sequences for every degree 0..p_top (each list sorted)."""
    if p_top < 0:
        raise ValueError("degree must be non-negative")
    succ = g.successors()
    table: list[list[tuple[int, ...]]] = [[(v,) for v in g.vertices]]
    _check_cap(len(table[0]), 0, cap)
    for k in range(1, p_top + 1):
        nxt: list[tuple[int, ...]] = []
        for path in table[k - 1]:
            tail = path[-1]
            for w in succ.get(tail, ()):
                nxt.append(path + (w,))
                if len(nxt) > cap:
                    _check_cap(len(nxt), k, cap)
        table.append(nxt)
    return table


def anchor_paths_hypergraph(h: Hypergraph, p: int, cap: int = DEFAULT_PATH_CAP) -> list[tuple[int, ...]]:
    """Anchor sequences of a hypergraph: consecutive vertices co-contained in a hyperedge."""
    return anchor_paths(symmetric_closure(essential_graph(h)), p, cap)


def _check_cap(count: int, degree: int, cap: int) -> None:
    if count > cap:
        raise ResourceLimitError(
            f"anchor path count at degree {degree} exceeds the cap of {cap}; "
            "raise the cap explicitly if this size is intended"
        )


def reciprocal_pair_count(g: Digraph) -> int:
    """Number of unordered pairs {u, v} with both u->v and v->u present."""
    eset = set(g.edges)
    return sum(1 for (u, v) in g.edges if u < v and (v, u) in eset)


def h1_upper_bound_digraph(g: Digraph) -> int:
    """|E'| - |V'| + |C'| + |S| over the underlying graph, S the reciprocal pairs."""
    ug = underlying_graph(g)
    return len(ug.edges) - len(ug.vertices) + ug.component_count() + reciprocal_pair_count(g)


def h1_rank_digraph(g: Digraph, rank_d2: int) -> int:
    """Rank of degree-1 homology from the closed-form count minus rank of the degree-2 boundary."""
    value = h1_upper_bound_digraph(g) - rank_d2
    if value < 0:
        raise StructuralError(
            f"digraph degree-1 rank formula produced {value} < 0 (rank_d2={rank_d2})"
        )
    return value


def h1_upper_bound_hypergraph(h: Hypergraph) -> int:
    """2|E| - |V| + |C| over the essential graph."""
    eg = essential_graph(h)
    return 2 * len(eg.edges) - len(h.vertices) + eg.component_count()


def h1_rank_hypergraph(h: Hypergraph, rank_d2: int) -> int:
    value = h1_upper_bound_hypergraph(h) - rank_d2
    if value < 0:
        raise StructuralError(
            f"hypergraph degree-1 rank formula produced {value} < 0 (rank_d2={rank_d2})"
        )
    return value
