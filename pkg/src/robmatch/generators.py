"""Named instances and seeded random corpora."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import InputError
from .exact import SQRT2, QSqrt2
from .systems import (
    BMatchingSystem,
    ExplicitSystem,
    MatchingSystem,
    MatroidIntersection,
    PartitionMatroid,
    UniformMatroid,
    WeightedGraph,
)

# edge ids of the 4-vertex path
LEFT, MIDDLE, RIGHT = 0, 1, 2

LEMMA28_NAMES = ("a1", "a2", "b1", "b2", "b3", "b4")
LEMMA28_WITNESS_WEIGHTS = (2, 2, 2, 1, 1, 1)
LEMMA28_WITNESS_EXPONENTS = (1, 1, 1, 0, 0, 0)


def gen_fig1() -> WeightedGraph:
    """Path a-b-c-d with weights 1, sqrt2, 1 (sqrt2 kept exact)."""
    return WeightedGraph(4, [(0, 1), (1, 2), (2, 3)], [1, SQRT2, 1])


def _pow2_fraction(num: int, den: int):
    """``2 ** (num/den)`` exactly when it lies in Q(sqrt2), else as a float."""
    q = Fraction(num, den)
    if q.denominator == 1:
        return Fraction(2) ** int(q) if q < 0 else 2 ** int(q)
    if q.denominator == 2:
        j = (q.numerator - 1) // 2
        return QSqrt2(0, Fraction(2) ** j)
    return 2.0 ** float(q)


def gen_remark23(n: int) -> WeightedGraph:
    """``2**n`` vertices; for each type ``k < n`` the ``2**k`` edges
    ``{v_i, v_{i + 2**k}}`` (``i < 2**k``) of weight ``2**((n - k)/n)``."""
    if not isinstance(n, int) or not 1 <= n <= 12:
        raise InputError("n must be an integer in 1..12")
    edges, weights = [], []
    for k in range(n):
        wk = _pow2_fraction(n - k, n)
        for i in range(2 ** k):
            edges.append((i, i + 2 ** k))
            weights.append(wk)
    return WeightedGraph(2 ** n, edges, weights)


def remark23_ratio(n: int) -> float:
    """Closed-form expected top-1 ratio of the rounding algorithm on this family."""
    return sum(2.0 ** (-j / n) for j in range(n)) / n


def gen_copies(K: int) -> WeightedGraph:
    """``K`` disjoint copies of the 4-vertex path."""
    if K < 1:
        raise InputError("K must be at least 1")
    edges, weights = [], []
    for c in range(K):
        b = 4 * c
        edges += [(b, b + 1), (b + 1, b + 2), (b + 2, b + 3)]
        weights += [1, SQRT2, 1]
    return WeightedGraph(4 * K, edges, weights)


def gen_lemma28() -> ExplicitSystem:
    """Six elements a1,a2,b1..b4 (ids 0..5) with four bases."""
    A = {0, 1}
    B = {2, 3, 4, 5}
    C = {0, 4, 5}
    D = {1, 4, 5}
    return ExplicitSystem(6, [A, B, C, D])


def _weight(rng: random.Random, dist: str, W):
    if dist == "uniform-int":
        return rng.randint(1, int(W))
    if dist == "log-uniform":
        return 2.0 ** (rng.random() * math.log2(W))
    raise InputError(f"unknown weight distribution {dist!r}")


def gen_random(n_vertices: int, edge_prob: float, weight_dist: str = "uniform-int",
               W=20, seed: int = 0) -> WeightedGraph:
    """Erdos-Renyi graph with i.i.d. weights; reproducible for a fixed seed."""
    if n_vertices < 0 or not 0 <= edge_prob <= 1:
        raise InputError("need n_vertices >= 0 and edge_prob in [0, 1]")
    if W < 1:
        raise InputError("W must be at least 1")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n_vertices) for v in range(u + 1, n_vertices)
             if rng.random() < edge_prob]
    weights = [_weight(rng, weight_dist, W) for _ in edges]
    return WeightedGraph(n_vertices, edges, weights)


def gen_random_bipartite(n_left: int, n_right: int, edge_prob: float,
                         weight_dist: str = "uniform-int", W=20, seed: int = 0) -> WeightedGraph:
    """Left vertices ``0..n_left-1``, right vertices after them."""
    rng = random.Random(seed)
    edges = [(u, n_left + v) for u in range(n_left) for v in range(n_right)
             if rng.random() < edge_prob]
    weights = [_weight(rng, weight_dist, W) for _ in edges]
    return WeightedGraph(n_left + n_right, edges, weights)


# -- corpora ----------------------------------------------------------------

def _small_graph(rng, max_edges, dist, W):
    while True:
        n = rng.randint(2, 7)
        p = rng.uniform(0.3, 0.9)
        g = gen_random(n, p, dist, W, seed=rng.getrandbits(32))
        if 1 <= g.n_edges <= max_edges:
            return g


def random_matching_instance(rng, max_edges=10, dist="log-uniform", W=64):
    g = _small_graph(rng, max_edges, dist, W)
    return MatchingSystem(g), g.weights


def random_b_matching_instance(rng, max_edges=10, dist="log-uniform", W=64):
    g = _small_graph(rng, max_edges, dist, W)
    b = [rng.randint(1, 2) for _ in range(g.n_vertices)]
    return BMatchingSystem(g, b), g.weights


def random_intersection_instance(rng, max_elements=10, dist="log-uniform", W=64):
    n = rng.randint(2, max_elements)
    rank = rng.randint(1, n)
    n_blocks = rng.randint(1, n)
    block_of = [rng.randrange(n_blocks) for _ in range(n)]
    blocks = [[e for e in range(n) if block_of[e] == i] for i in range(n_blocks)]
    blocks = [b for b in blocks if b]
    caps = [rng.randint(1, len(b)) for b in blocks]
    sys = MatroidIntersection(UniformMatroid(n, rank), PartitionMatroid(n, blocks, caps))
    weights = tuple(_weight(rng, dist, W) for _ in range(n))
    return sys, weights


def good_corpus(count: int, seed: int = 0, max_elements=10, dist="log-uniform", W=64):
    """Round-robin over matching, b-matching and uniform x partition instances."""
    rng = random.Random(seed)
    makers = (random_matching_instance, random_b_matching_instance, random_intersection_instance)
    return [makers[i % 3](rng, max_elements, dist, W) for i in range(count)]
