"""Ground sets, weighted graphs and independence systems.

Every system works over dense element ids ``0..ground_size-1`` and is
immutable once built.  A weighting is any sequence of non-negative numbers
indexed by element id.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, ResourceError

DEFAULT_CAP = 20


def check_weights(w: Sequence, n: int) -> tuple:
    w = tuple(w)
    if len(w) != n:
        raise InputError(f"weighting has {len(w)} entries, expected {n}")
    for x in w:
        if isinstance(x, float) and not math.isfinite(x):
            raise InputError("weights must be finite")
        if x < 0:
            raise InputError("weights must be non-negative")
    return w


def total(S: Iterable[int], w: Sequence):
    return sum((w[e] for e in S), 0)


def top_k(S: Iterable[int], w: Sequence, k: int) -> frozenset:
    """The ``k`` heaviest elements of ``S`` (ties go to the smaller id)."""
    if k < 0:
        raise InputError("k must be non-negative")
    return frozenset(sorted(S, key=lambda e: (-w[e], e))[:k])


def sorted_by_weight(S: Iterable[int], w: Sequence) -> list:
    return sorted(S, key=lambda e: (-w[e], e))


@dataclass(frozen=True)
class WeightedGraph:
    n_vertices: int
    edges: tuple
    weights: tuple

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InputError(f"edge ({u},{v}) has a vertex outside 0..{self.n_vertices - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "weights", check_weights(self.weights, len(edges)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def incident(self) -> list:
        inc = [[] for _ in range(self.n_vertices)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return inc

    def bipartition(self):
        """0/1 side per vertex, or ``None`` if the graph has an odd cycle."""
        side = [-1] * self.n_vertices
        inc = self.incident()
        for s in range(self.n_vertices):
            if side[s] >= 0:
                continue
            side[s] = 0
            stack = [s]
            while stack:
                x = stack.pop()
                for i in inc[x]:
                    u, v = self.edges[i]
                    y = v if u == x else u
                    if side[y] < 0:
                        side[y] = 1 - side[x]
                        stack.append(y)
                    elif side[y] == side[x]:
                        return None
        return side

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def with_weights(self, w) -> "WeightedGraph":
        return WeightedGraph(self.n_vertices, self.edges, tuple(w))

    def subgraph(self, keep: Sequence[int]) -> "WeightedGraph":
        return WeightedGraph(self.n_vertices, [self.edges[i] for i in keep],
                             [self.weights[i] for i in keep])


class IndependenceSystem:
    """Oracle interface: subclasses implement ``_independent``."""

    ground_size: int = 0

    def is_independent(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        for e in S:
            if not (0 <= e < self.ground_size):
                raise InputError(f"element id {e} out of range 0..{self.ground_size - 1}")
        return self._independent(S)

    def _independent(self, S: frozenset) -> bool:
        raise NotImplementedError

    def extends(self, S, e: int) -> bool:
        """Is ``S + {e}`` independent, given that ``S`` is?"""
        return self._independent(frozenset(S) | {e})

    def __repr__(self):
        return f"{type(self).__name__}(ground_size={self.ground_size})"


class MatchingSystem(IndependenceSystem):
    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.ground_size = graph.n_edges

    def _independent(self, S):
        used = set()
        for e in S:
            u, v = self.graph.edges[e]
            if u in used or v in used:
                return False
            used.add(u)
            used.add(v)
        return True

    def extends(self, S, e):
        u, v = self.graph.edges[e]
        for f in S:
            if u in self.graph.edges[f] or v in self.graph.edges[f]:
                return False
        return True


class BMatchingSystem(IndependenceSystem):
    """Edge sets with ``deg_F(v) <= b[v]`` at every vertex."""

    def __init__(self, graph: WeightedGraph, b: Sequence[int]):
        b = tuple(int(x) for x in b)
        if len(b) != graph.n_vertices:
            raise InputError("b needs one bound per vertex")
        if any(x < 0 for x in b):
            raise InputError("degree bounds must be non-negative")
        self.graph = graph
        self.b = b
        self.ground_size = graph.n_edges

    def _independent(self, S):
        deg = [0] * self.graph.n_vertices
        for e in S:
            for x in self.graph.edges[e]:
                deg[x] += 1
                if deg[x] > self.b[x]:
                    return False
        return True


class Matroid(IndependenceSystem):
    pass


class UniformMatroid(Matroid):
    def __init__(self, ground_size: int, rank: int):
        if rank < 0:
            raise InputError("rank must be non-negative")
        self.ground_size = ground_size
        self.rank = rank

    def _independent(self, S):
        return len(S) <= self.rank


class PartitionMatroid(Matroid):
    def __init__(self, ground_size: int, blocks: Sequence[Sequence[int]], capacities: Sequence[int]):
        if len(blocks) != len(capacities):
            raise InputError("one capacity per block")
        block_of = [-1] * ground_size
        for i, blk in enumerate(blocks):
            for e in blk:
                if not 0 <= e < ground_size or block_of[e] >= 0:
                    raise InputError("blocks must partition the ground set")
                block_of[e] = i
        if any(b < 0 for b in block_of):
            raise InputError("blocks must cover the ground set")
        self.ground_size = ground_size
        self.blocks = tuple(tuple(b) for b in blocks)
        self.capacities = tuple(int(c) for c in capacities)
        self.block_of = tuple(block_of)

    def _independent(self, S):
        count = [0] * len(self.blocks)
        for e in S:
            i = self.block_of[e]
            count[i] += 1
            if count[i] > self.capacities[i]:
                return False
        return True


class MatroidIntersection(IndependenceSystem):
    def __init__(self, first: Matroid, second: Matroid):
        if first.ground_size != second.ground_size:
            raise InputError("matroids must share the ground set")
        self.first = first
        self.second = second
        self.ground_size = first.ground_size

    def _independent(self, S):
        return self.first._independent(S) and self.second._independent(S)


class ExplicitSystem(IndependenceSystem):
    """System given by its bases; independent = subset of some base."""

    def __init__(self, ground_size: int, bases: Iterable[Iterable[int]]):
        bases = [frozenset(b) for b in bases]
        for b in bases:
            if any(not 0 <= e < ground_size for e in b):
                raise InputError("base element out of range")
        for a, b in itertools.permutations(bases, 2):
            if a <= b:
                raise InputError(f"base {sorted(a)} is contained in {sorted(b)}")
        self.ground_size = ground_size
        self.bases = tuple(sorted(bases, key=lambda s: (len(s), sorted(s))))

    def _independent(self, S):
        return any(S <= b for b in self.bases)


# -- minors -----------------------------------------------------------------

class _Relabeled(IndependenceSystem):
    """Base class for minors: element ``i`` here is ``keep[i]`` in ``base``."""

    def __init__(self, base: IndependenceSystem, keep: Sequence[int]):
        self.base = base
        self.keep = tuple(keep)
        self.ground_size = len(self.keep)

    def lift(self, S) -> frozenset:
        return frozenset(self.keep[e] for e in S)


class Deletion(_Relabeled):
    def __init__(self, base, X):
        X = frozenset(X)
        super().__init__(base, [e for e in range(base.ground_size) if e not in X])

    def _independent(self, S):
        return self.base._independent(self.lift(S))


class Contraction(_Relabeled):
    def __init__(self, base, X):
        X = frozenset(X)
        if not base.is_independent(X):
            raise InputError(f"cannot contract dependent set {sorted(X)}")
        super().__init__(base, [e for e in range(base.ground_size) if e not in X])
        self.contracted = X

    def _independent(self, S):
        return self.base._independent(self.lift(S) | self.contracted)


class Truncation(_Relabeled):
    def __init__(self, base, k: int):
        if k < 0:
            raise InputError("truncation bound must be non-negative")
        super().__init__(base, range(base.ground_size))
        self.k = k

    def _independent(self, S):
        return len(S) <= self.k and self.base._independent(S)


def make_system(kind: str, **params) -> IndependenceSystem:
    """Build a system of the given kind.

    ``matching``/``b_matching`` take ``graph`` (and ``b``);
    ``matroid_intersection`` takes ``first``/``second``;
    ``explicit`` takes ``ground_size`` and ``bases``.
    """
    if kind == "matching":
        return MatchingSystem(params["graph"])
    if kind == "b_matching":
        return BMatchingSystem(params["graph"], params["b"])
    if kind == "matroid_intersection":
        return MatroidIntersection(params["first"], params["second"])
    if kind == "explicit":
        return ExplicitSystem(params["ground_size"], params["bases"])
    raise InputError(f"unknown system kind {kind!r}")


# -- enumeration ------------------------------------------------------------

_ENUM_CACHE_ATTR = "_independent_sets_cache"


def enumerate_independent(sys: IndependenceSystem, maximal_only: bool = False,
                          cap: int = DEFAULT_CAP) -> list:
    """All independent sets (or only the inclusion-maximal ones).

    Depth-first over increasing ids; downward closure means every
    independent set is reached through independent prefixes.
    """
    if sys.ground_size > cap:
        raise ResourceError(f"ground set of size {sys.ground_size} exceeds enumeration cap {cap}")
    cached = sys.__dict__.get(_ENUM_CACHE_ATTR)
    if cached is None:
        n = sys.ground_size
        out = []
        current = []

        def dfs(start):
            out.append(frozenset(current))
            for e in range(start, n):
                if sys.extends(current, e):
                    current.append(e)
                    dfs(e + 1)
                    current.pop()

        dfs(0)
        independent = out
        maximal = [S for S in independent
                   if not any(e not in S and sys.extends(S, e) for e in range(n))]
        cached = (tuple(independent), tuple(maximal))
        sys.__dict__[_ENUM_CACHE_ATTR] = cached
    return list(cached[1] if maximal_only else cached[0])


def max_independent_size(sys: IndependenceSystem, cap: int = DEFAULT_CAP) -> int:
    return max(len(S) for S in enumerate_independent(sys, cap=cap))


def is_bipartite_matching(sys) -> bool:
    return isinstance(sys, MatchingSystem) and sys.graph.is_bipartite()
