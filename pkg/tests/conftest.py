"""Shared randomized corpora; seeded so every run sees the same instances."""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pathdirac import Digraph, Filtration, Hypergraph, StageComplexes, build_digraph_complex
from pathdirac.chain import build_hypergraph_complex

CORPUS_SIZE = 200


def random_digraph(rng: random.Random, max_vertices: int = 6, p_edge: float = 0.3) -> Digraph:
    n = rng.randint(1, max_vertices)
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p_edge]
    return Digraph.of(range(n), edges)


def random_hypergraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 4) -> Hypergraph:
    n = rng.randint(1, max_vertices)
    hyperedges = []
    for _ in range(rng.randint(1, max_edges)):
        size = rng.randint(1, min(4, n))
        hyperedges.append(rng.sample(range(n), size))
    return Hypergraph.of(range(n), hyperedges)


def random_filtration(rng: random.Random, max_vertices: int = 5, max_stages: int = 3) -> Filtration:
    n = rng.randint(2, max_vertices)
    all_edges = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(all_edges)
    total = rng.randint(1, len(all_edges))
    chosen = all_edges[:total]
    n_stages = rng.randint(2, max_stages)
    cuts = sorted(rng.randint(0, total) for _ in range(n_stages - 1)) + [total]
    stages = [Digraph.of(range(n), chosen[:c]) for c in cuts]
    return Filtration.of(stages)


@pytest.fixture(scope="session")
def digraph_corpus():
    rng = random.Random(1001)
    return [random_digraph(rng) for _ in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def digraph_complexes(digraph_corpus):
    return [(g, build_digraph_complex(g, 2)) for g in digraph_corpus]


@pytest.fixture(scope="session")
def hypergraph_corpus():
    rng = random.Random(2002)
    return [random_hypergraph(rng) for _ in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def hypergraph_complexes(hypergraph_corpus):
    return [(h, build_hypergraph_complex(h, 2)) for h in hypergraph_corpus]


@pytest.fixture(scope="session")
def filtration_corpus():
    rng = random.Random(3003)
    return [random_filtration(rng) for _ in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def filtration_stage_complexes(filtration_corpus):
    return [StageComplexes(f, 2) for f in filtration_corpus]
