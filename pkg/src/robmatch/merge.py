"""Merging two matchings component by component.

``simplify_pair`` runs the three clean-up transformations (light-neighbour
removal, cutting long components, swapping heavy components) and then
checks the three resulting guarantees.  ``random_merge`` picks, for every
component of the symmetric difference, one side at random.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InternalError
from .exact import is_exact
from .systems import WeightedGraph, check_weights, sorted_by_weight, top_k, total

D2_BIT_BUDGET = 1 << 16
TOL = 1e-9


@dataclass(frozen=True)
class MergeParams:
    """Constants derived from ``delta``; ``K`` is the cardinality threshold."""

    delta: Fraction
    K: int
    D1: object = field(init=False)
    D2: object = field(init=False)
    D3: object = field(init=False)
    delta_p: object = field(init=False)
    beta: object = field(init=False)
    gamma: object = field(init=False)

    def __post_init__(self):
        d = self.delta if isinstance(self.delta, Fraction) else Fraction(str(self.delta))
        if not 0 < d < 1:
            raise InputError("delta must lie in (0, 1)")
        if self.K < 1:
            raise InputError("K must be at least 1")
        object.__setattr__(self, "delta", d)
        D1 = 18 / d + 3
        D3 = 6 / d + 2
        dp = d / 3
        ratio = dp / (1 + dp)
        if D1.denominator == 1:
            beta = ratio ** int(D1)
            bits = (int(D1) + 4) * int(D1).bit_length()
            D2 = int(D1) ** (int(D1) + 4) if bits <= D2_BIT_BUDGET else math.inf
        else:
            beta = float(ratio) ** float(D1)
            try:
                D2 = float(D1) ** float(D1 + 4)
            except OverflowError:
                D2 = math.inf
        object.__setattr__(self, "D1", D1)
        object.__setattr__(self, "D2", D2)
        object.__setattr__(self, "D3", D3)
        object.__setattr__(self, "delta_p", dp)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", beta / (D1 * D3))

    @property
    def chunk(self) -> int:
        """Subpath length ``ceil(2 / delta')`` used when cutting components."""
        return math.ceil(2 / self.delta_p)

    def to_dict(self):
        def f(x):
            return float(x) if not isinstance(x, int) or x.bit_length() < 1000 else "huge"
        return {"delta": float(self.delta), "K": self.K, "D1": float(self.D1), "D2": f(self.D2),
                "D3": float(self.D3), "delta_prime": float(self.delta_p),
                "beta": float(self.beta), "gamma": float(self.gamma)}


@dataclass(frozen=True)
class Component:
    edges: tuple  # in path / cycle order
    cycle: bool


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple
    common: frozenset


def _check_matching(graph, M, name="set"):
    used = set()
    for e in M:
        if not 0 <= e < graph.n_edges:
            raise InputError(f"edge id {e} out of range")
        for x in graph.edges[e]:
            if x in used:
                raise InputError(f"{name} is not a matching (vertex {x} covered twice)")
            used.add(x)


def _is_matching(graph, M) -> bool:
    used = set()
    for e in M:
        for x in graph.edges[e]:
            if x in used:
                return False
            used.add(x)
    return True


def decompose(M, Mp, graph: WeightedGraph) -> ComponentDecomposition:
    """Paths and cycles of ``M ^ M'`` ordered by smallest edge id."""
    M, Mp = frozenset(M), frozenset(Mp)
    _check_matching(graph, M, "M")
    _check_matching(graph, Mp, "M'")
    diff = M ^ Mp
    at = {}
    for e in diff:
        for x in graph.edges[e]:
            at.setdefault(x, []).append(e)

    def nbrs(e):
        return sorted(f for x in graph.edges[e] for f in at[x] if f != e)

    seen = set()
    comps = []
    for start in sorted(diff):
        if start in seen:
            continue
        # collect the component
        stack, members = [start], set()
        while stack:
            e = stack.pop()
            if e in members:
                continue
            members.add(e)
            stack.extend(nbrs(e))
        seen |= members
        ends = [e for e in members if len(nbrs(e)) < 2]
        cycle = not ends
        if cycle:
            first = min(members)
        else:
            first = min(ends)
        order = [first]
        prev = None
        cur = first
        while True:
            nxt = [f for f in nbrs(cur) if f != prev and f not in order]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        comps.append(Component(tuple(order), cycle))
    comps.sort(key=lambda c: min(c.edges))
    return ComponentDecomposition(tuple(comps), M & Mp)


def _le(a, b) -> bool:
    """``a <= b`` with a relative tolerance for floats."""
    if is_exact(a) and is_exact(b):
        return a <= b
    a, b = float(a), float(b)
    return a <= b + TOL * max(1.0, abs(a), abs(b))


def _weight_bound_ok(wc, m, K, D2) -> bool:
    """``K * w(C) <= D2 * m`` where ``D2`` may be a huge int or infinity."""
    if wc == 0:
        return True
    if not m > 0:
        return False
    if D2 == math.inf:
        return True
    if isinstance(D2, int):
        if is_exact(wc) and is_exact(m):
            return K * wc <= D2 * m
        if D2.bit_length() > 1000:
            return True
    return _le(K * float(wc), float(D2) * float(m))


def bullet_violations(graph, M, Mp, Mb, Mbp, w, params: MergeParams) -> list:
    """Check the three guarantees of the transformed pair; returns messages."""
    out = []
    K = params.K
    top = max(len(M), len(Mp), len(Mb), len(Mbp)) + 1
    one_minus = 1 - params.delta
    for k in range(K, top + 1):
        for name, old, new in (("M", M, Mb), ("M'", Mp, Mbp)):
            wo = total(top_k(old, w, k), w)
            wn = total(top_k(new, w, k), w)
            lhs = one_minus * wo if is_exact(wo) else float(one_minus) * float(wo)
            if not _le(lhs, wn):
                out.append(f"(a) k={k}: w({name}bar_k)={float(wn):.6g} < (1-delta) w({name}_k)={float(lhs):.6g}")
    dec = decompose(Mb, Mbp, graph)
    wK = total(top_k(Mb, w, K), w)
    wKp = total(top_k(Mbp, w, K), w)
    m = min(wK, wKp)
    for C in dec.components:
        if len(C.edges) > params.D1:
            out.append(f"(b) component of {len(C.edges)} edges exceeds D1={float(params.D1):.4g}")
        wc = total(C.edges, w)
        if not _weight_bound_ok(wc, m, K, params.D2):
            out.append(f"(b) component weight {float(wc):.6g} exceeds D2/K * {float(m):.6g}")
    D3 = params.D3
    for k in range(K, top + 1):
        a = total(top_k(Mb, w, k), w)
        b = total(top_k(Mbp, w, k), w)
        c_a = D3 * a if is_exact(a) else float(D3) * float(a)
        c_b = D3 * b if is_exact(b) else float(D3) * float(b)
        if not (_le(b, c_a) and _le(a, c_b)):
            out.append(f"(c) k={k}: weights {float(a):.6g} and {float(b):.6g} differ by more than D3")
    return out


def _sym_neighbours(graph, e, diff):
    out = []
    for x in graph.edges[e]:
        for f in diff:
            if f != e and x in graph.edges[f]:
                out.append(f)
    return out


def _transform_light_neighbours(graph, M, Mp, w, params):
    dp = params.delta_p
    thresh = dp / (1 + dp)
    order = sorted_by_weight(M ^ Mp, w)
    for e in order:
        diff = M ^ Mp
        if e not in diff:
            continue
        own, other = (M, Mp) if e in M else (Mp, M)
        nb = sorted(_sym_neighbours(graph, e, diff), key=lambda f: (w[f], f))
        # missing neighbours are artificial zero-weight edges (None)
        nb = [None] * (2 - len(nb)) + nb
        e1, e2 = nb
        w1 = 0 if e1 is None else w[e1]
        w2 = 0 if e2 is None else w[e2]
        if w[e] >= w1 + w2:
            for f in (e1, e2):
                if f is not None:
                    other.discard(f)
            other.add(e)
        else:
            lim = thresh * w[e] if is_exact(w[e]) else float(thresh) * float(w[e])
            if w1 <= lim and e1 is not None:
                other.discard(e1)


def _transform_cut_long(graph, M, Mp, w, params):
    L = params.chunk
    for C in decompose(M, Mp, graph).components:
        n = len(C.edges)
        if n <= params.D1:
            continue
        head = n % L
        for start in range(head, n, L):
            chunk = C.edges[start:start + L]
            f = min(chunk, key=lambda e: (w[e], e))
            (M if f in M else Mp).discard(f)


def _transform_heavy(graph, M, Mp, w, params):
    K, gamma = params.K, params.gamma
    while True:
        MK, MKp = top_k(M, w, K), top_k(Mp, w, K)
        wK, wKp = total(MK, w), total(MKp, w)
        target = None
        for C in decompose(M, Mp, graph).components:
            a = total(set(C.edges) & MK, w)
            b = total(set(C.edges) & MKp, w)
            # w(C & M_K) > w(M_K) / (gamma K)   <=>   gamma K w(C & M_K) > w(M_K)
            if _gt_scaled(gamma * K, a, wK) or _gt_scaled(gamma * K, b, wKp):
                target = C
                break
        if target is None:
            return
        Cset = set(target.edges)
        if total(Cset & M, w) >= total(Cset & Mp, w):
            Mp ^= Cset
        else:
            M ^= Cset


def _gt_scaled(coef, a, b) -> bool:
    if is_exact(coef) and is_exact(a) and is_exact(b):
        return coef * a > b
    return float(coef) * float(a) > float(b) * (1 + TOL)


def simplify_pair(graph: WeightedGraph, M, Mp, params: MergeParams, w=None, check: bool = True):
    """Transformed matchings ``(Mbar, Mbar')`` inside ``M | M'``.

    Raises :class:`InternalError` if any guarantee fails afterwards.
    """
    w = graph.weights if w is None else check_weights(w, graph.n_edges)
    M, Mp = frozenset(M), frozenset(Mp)
    _check_matching(graph, M, "M")
    _check_matching(graph, Mp, "M'")
    A, B = set(M), set(Mp)
    _transform_light_neighbours(graph, A, B, w, params)
    _transform_cut_long(graph, A, B, w, params)
    _transform_heavy(graph, A, B, w, params)
    Mb, Mbp = frozenset(A), frozenset(B)
    if not (_is_matching(graph, Mb) and _is_matching(graph, Mbp)):
        raise InternalError("transformation produced a non-matching")
    if not (Mb | Mbp) <= (M | Mp):
        raise InternalError("transformation introduced new edges")
    if check:
        bad = bullet_violations(graph, M, Mp, Mb, Mbp, w, params)
        if bad:
            raise InternalError("guarantee violated after transformations: " + "; ".join(bad))
    return Mb, Mbp


@dataclass
class MergeStats:
    best_ratio: float
    samples: int
    ks: tuple
    mean_W: tuple       # empirical mean of w(M* & (Mbar_k | Mbar'_k))
    std_W: tuple        # empirical standard deviation of the same
    expected_W: tuple   # exact expectation of that quantity
    convex_W: tuple     # mu w(Mbar_k) + (1 - mu) w(Mbar'_k)
    n_components: int

    def to_dict(self):
        return {"best_ratio": self.best_ratio, "samples": self.samples,
                "components": self.n_components, "per_k": [
                    {"k": k, "mean": m, "std": s, "expected": e, "convex": c}
                    for k, m, s, e, c in zip(self.ks, self.mean_W, self.std_W,
                                             self.expected_W, self.convex_W)]}


def random_merge(graph: WeightedGraph, Mb, Mbp, mu: float, samples: int = 1000, seed=0,
                 K: int = 1, w=None):
    """Sample merges; returns the best sample and statistics.

    Each sample keeps the common edges and takes, per component, the
    ``Mbar`` side with probability ``mu`` and the ``Mbar'`` side otherwise.
    The best sample maximises ``min_{k >= K} w(M*_k) / (mu w(Mbar_k) + (1-mu) w(Mbar'_k))``.
    """
    w = graph.weights if w is None else check_weights(w, graph.n_edges)
    if not 0 <= mu <= 1:
        raise InputError("mu must lie in [0, 1]")
    if samples < 1:
        raise InputError("need at least one sample")
    Mb, Mbp = frozenset(Mb), frozenset(Mbp)
    dec = decompose(Mb, Mbp, graph)
    comps = dec.components
    top = max(len(Mb), len(Mbp), K)
    ks = tuple(range(K, top + 1))
    wf = [float(x) for x in w]
    convex, expected, parts = [], [], []
    for k in ks:
        A, B = top_k(Mb, w, k), top_k(Mbp, w, k)
        U = A | B
        convex.append(mu * sum(wf[e] for e in A) + (1 - mu) * sum(wf[e] for e in B))
        common = sum(wf[e] for e in dec.common & U)
        side = [(sum(wf[e] for e in C.edges if e in Mb and e in U),
                 sum(wf[e] for e in C.edges if e in Mbp and e in U)) for C in comps]
        expected.append(common + sum(mu * a + (1 - mu) * b for a, b in side))
        parts.append((common, side))
    rng = random.Random(seed)
    sums = [0.0] * len(ks)
    sq = [0.0] * len(ks)
    cache = {}
    best, best_ratio = None, -math.inf
    for _ in range(samples):
        pick = tuple(rng.random() < mu for _ in comps)
        if pick not in cache:
            Ms = set(dec.common)
            for C, p in zip(comps, pick):
                Ms.update(e for e in C.edges if (e in Mb if p else e in Mbp))
            if not _is_matching(graph, Ms):
                raise InternalError("merged set is not a matching")
            vals = sorted((wf[e] for e in Ms), reverse=True)
            prefix = [0.0]
            for v in vals:
                prefix.append(prefix[-1] + v)
            ratio = math.inf
            for k, c in zip(ks, convex):
                if c > 0:
                    ratio = min(ratio, prefix[min(k, len(vals))] / c)
            Wk = [common + sum(a if p else b for (a, b), p in zip(side, pick))
                  for common, side in parts]
            cache[pick] = (frozenset(Ms), ratio, Wk)
        Ms, ratio, Wk = cache[pick]
        for i, v in enumerate(Wk):
            sums[i] += v
            sq[i] += v * v
        if ratio > best_ratio:
            best, best_ratio = Ms, ratio
    mean = [s / samples for s in sums]
    std = [math.sqrt(max(q / samples - m * m, 0.0)) for q, m in zip(sq, mean)]
    stats = MergeStats(best_ratio if best_ratio != math.inf else 1.0, samples, ks,
                       tuple(mean), tuple(std), tuple(expected), tuple(convex), len(comps))
    return best, stats
