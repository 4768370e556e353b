"""Exact solvers: cardinality-bounded optimum, OPT profiles, lexicographic maxima.

Small systems are handled by enumeration (or branch-and-bound); bipartite
matching systems also have a polynomial path based on successive
maximum-gain augmenting paths.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, InternalError, ResourceError
from .exact import simplify
from .systems import (
    DEFAULT_CAP,
    IndependenceSystem,
    MatchingSystem,
    WeightedGraph,
    check_weights,
    enumerate_independent,
    sorted_by_weight,
    total,
)


@dataclass(frozen=True)
class OptProfile:
    """``values[k] = OPT_k`` for ``k = 0..r`` plus one optimal set per ``k``."""

    values: tuple
    witnesses: tuple

    @property
    def r(self) -> int:
        return len(self.values) - 1

    def opt(self, k: int):
        """OPT_k for any ``k >= 0`` (constant beyond ``r``)."""
        return self.values[min(k, self.r)]


def lex_key(S, w) -> tuple:
    """Weights of ``S`` in decreasing order."""
    return tuple(sorted((w[e] for e in S), reverse=True))


def lex_greater(a: tuple, b: tuple) -> bool:
    """Strict lexicographic order; on a shared prefix the longer key wins."""
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return len(a) > len(b)


def _float_tol(w) -> float:
    if any(isinstance(x, float) for x in w):
        return 1e-12 * (1.0 + max((float(x) for x in w), default=0.0))
    return 0


# -- bipartite path ---------------------------------------------------------

def augmenting_matchings(graph: WeightedGraph, w=None, max_card=None, positive_only=False):
    """Matchings ``M_0, M_1, ...`` where ``M_j`` has maximum weight among
    matchings with exactly ``j`` edges.

    Each step augments along a maximum-gain alternating path found with a
    queue-based Bellman-Ford over the residual graph.  Returns a list of
    ``(matching, weight)`` pairs.  With ``positive_only`` the sequence stops
    at the first step whose gain is not positive.
    """
    w = graph.weights if w is None else check_weights(w, graph.n_edges)
    side = graph.bipartition()
    if side is None:
        raise InputError("graph is not bipartite")
    n = graph.n_vertices
    tol = _float_tol(w)
    mate_edge = [None] * n
    out = [(frozenset(), 0)]
    # residual arcs: left -> right over unmatched edges (cost -w), right -> left over matched (+w)
    arcs = [[] for _ in range(n)]
    for i, (u, v) in enumerate(graph.edges):
        if side[u] == 1:
            u, v = v, u
        arcs[u].append((v, i))
        arcs[v].append((u, i))
    while max_card is None or len(out) - 1 < max_card:
        dist = [None] * n
        pred = [None] * n
        count = [0] * n
        queue = deque()
        in_queue = [False] * n
        for x in range(n):
            if side[x] == 0 and mate_edge[x] is None and arcs[x]:
                dist[x] = 0
                queue.append(x)
                in_queue[x] = True
        while queue:
            x = queue.popleft()
            in_queue[x] = False
            for y, i in arcs[x]:
                matched = mate_edge[x] == i
                if side[x] == 0:
                    if matched:
                        continue
                    nd = dist[x] - w[i]
                else:
                    if not matched:
                        continue
                    nd = dist[x] + w[i]
                if dist[y] is None or nd < dist[y] - tol:
                    dist[y] = nd
                    pred[y] = (x, i)
                    if not in_queue[y]:
                        count[y] += 1
                        if count[y] > n + 1:
                            raise InternalError("negative cycle in residual graph")
                        queue.append(y)
                        in_queue[y] = True
        best = None
        for y in range(n):
            if side[y] == 1 and mate_edge[y] is None and dist[y] is not None:
                if best is None or dist[y] < dist[best] - tol:
                    best = y
        if best is None:
            break
        gain = -dist[best]
        if positive_only and not gain > tol:
            break
        # flip along the path back to a free left vertex
        path = []
        y = best
        while pred[y] is not None:
            x, i = pred[y]
            path.append(i)
            y = x
        matching = set(out[-1][0])
        for i in path:
            if i in matching:
                matching.discard(i)
            else:
                matching.add(i)
        mate_edge = [None] * n
        for i in matching:
            a, b = graph.edges[i]
            mate_edge[a] = i
            mate_edge[b] = i
        out.append((frozenset(matching), simplify(total(matching, w))))
    return out


def bipartite_profile(graph: WeightedGraph, w=None) -> OptProfile:
    """OPT profile of the matching system of a bipartite graph."""
    seq = augmenting_matchings(graph, w)
    values, witnesses = [], []
    best_val, best_set = 0, frozenset()
    for M, val in seq:
        if val > best_val:
            best_val, best_set = val, M
        values.append(best_val)
        witnesses.append(best_set)
    return OptProfile(tuple(values), tuple(witnesses))


# -- enumeration / branch-and-bound ----------------------------------------

def _branch_and_bound(sys: IndependenceSystem, w, k: int):
    n = sys.ground_size
    order = sorted_by_weight(range(n), w)
    prefix = [0]
    for e in order:
        prefix.append(prefix[-1] + w[e])
    best = [0, frozenset()]
    current = []

    def dfs(i, value):
        if value > best[0]:
            best[0], best[1] = value, frozenset(current)
        slots = k - len(current)
        if slots == 0 or i == n:
            return
        if value + prefix[min(i + slots, n)] - prefix[i] <= best[0]:
            return
        e = order[i]
        if sys.extends(current, e):
            current.append(e)
            dfs(i + 1, value + w[e])
            current.pop()
        dfs(i + 1, value)

    dfs(0, 0)
    return best[1], simplify(best[0])


def _use_bipartite_path(sys, cap) -> bool:
    return sys.ground_size > cap and isinstance(sys, MatchingSystem) and sys.graph.is_bipartite()


def max_weight_at_most_k(sys: IndependenceSystem, w: Sequence, k: int, cap: int = DEFAULT_CAP):
    """A maximum-weight independent set with at most ``k`` elements and its weight."""
    w = check_weights(w, sys.ground_size)
    if k < 0:
        raise InputError("k must be non-negative")
    if k == 0:
        return frozenset(), 0
    if sys.ground_size <= cap:
        return _branch_and_bound(sys, w, k)
    if _use_bipartite_path(sys, cap):
        prof = bipartite_profile(sys.graph, w)
        return prof.witnesses[min(k, prof.r)], prof.opt(k)
    raise ResourceError(f"ground set of size {sys.ground_size} exceeds cap {cap} "
                        "and no polynomial path applies")


def max_weight(sys, w, cap: int = DEFAULT_CAP):
    return max_weight_at_most_k(sys, w, sys.ground_size, cap=cap)


def opt_profile(sys: IndependenceSystem, w: Sequence, cap: int = DEFAULT_CAP) -> OptProfile:
    """``OPT_0..OPT_r`` with witnesses.

    Uses one enumeration pass within the cap and the bipartite path beyond.
    """
    w = check_weights(w, sys.ground_size)
    if sys.ground_size > cap:
        if _use_bipartite_path(sys, cap):
            return bipartite_profile(sys.graph, w)
        raise ResourceError(f"ground set of size {sys.ground_size} exceeds cap {cap}")
    best = {}
    for S in enumerate_independent(sys, cap=cap):
        val = total(S, w)
        j = len(S)
        if j not in best or val > best[j][0]:
            best[j] = (val, S)
    r = max(best)
    values, witnesses = [], []
    cur_val, cur_set = 0, frozenset()
    for j in range(r + 1):
        if j in best and best[j][0] > cur_val:
            cur_val, cur_set = best[j]
        values.append(simplify(cur_val))
        witnesses.append(cur_set)
    return OptProfile(tuple(values), tuple(witnesses))


# -- lexicographic maximum -------------------------------------------------

def surrogate_weights(w: Sequence) -> tuple:
    """Integer weights whose sums order sets exactly like their LexKeys.

    Distinct weights get ranks ``1..d`` (heaviest = ``d``) and element ``e``
    gets ``B**rank``.  ``B`` exceeds the number of elements, so a sum reads as
    the digit vector of per-rank counts.
    """
    distinct = sorted(set(w))
    rank = {x: i + 1 for i, x in enumerate(distinct)}
    d = len(distinct)
    base = max((d + 1) ** 2, len(w) + 1)
    return tuple(base ** rank[x] for x in w)


def lex_max(sys: IndependenceSystem, w: Sequence, cap: int = DEFAULT_CAP, verify: bool = True):
    """An independent set whose LexKey is maximum."""
    w = check_weights(w, sys.ground_size)
    sw = surrogate_weights(w)
    if sys.ground_size <= cap:
        S, _ = _branch_and_bound(sys, sw, sys.ground_size)
        if verify:
            key = lex_key(S, w)
            for T in enumerate_independent(sys, cap=cap):
                if lex_greater(lex_key(T, w), key):
                    raise InternalError("surrogate optimum is not lexicographically maximal")
        return S
    if _use_bipartite_path(sys, cap):
        seq = augmenting_matchings(sys.graph, sw, positive_only=True)
        return seq[-1][0]
    raise ResourceError(f"ground set of size {sys.ground_size} exceeds cap {cap}")


def greedy(sys: IndependenceSystem, w: Sequence) -> frozenset:
    w = check_weights(w, sys.ground_size)
    S = []
    for e in sorted_by_weight(range(sys.ground_size), w):
        if sys.extends(S, e):
            S.append(e)
    return frozenset(S)
