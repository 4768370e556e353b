"""LP-duality certificates for the squared-weight matching on bipartite graphs.

From an optimal vertex dual ``y_v^2`` of the squared-weight matching LP we
build a feasible dual ``(z*, y*)`` of the cardinality-``k`` matching LP whose
value is ``sqrt2 * w(M_k)``.  Feasibility of that dual bounds ``OPT_k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, InternalError
from .exact import exact_sqrt, simplify
from .simplex import maximize
from .systems import WeightedGraph, check_weights, top_k

TOL = 1e-9
_R2 = math.sqrt(2.0)


@dataclass(frozen=True)
class MatchingDual:
    y2: tuple  # y_v^2 per vertex (the LP dual variable)
    y: tuple   # y_v

    def value(self):
        return simplify(sum(self.y2, 0))


@dataclass(frozen=True)
class DualCertificate:
    k: int
    z_star: float
    y_star: tuple
    scale: object
    mk: frozenset

    def to_dict(self) -> dict:
        return {"k": self.k, "z_star": self.z_star, "scale": float(self.scale),
                "y_star": list(self.y_star), "Mk": sorted(self.mk)}


def squared_matching_dual(graph: WeightedGraph, w=None):
    """Maximum squared-weight matching ``M`` with an optimal vertex dual.

    Solves the bipartite matching LP with weights ``w_e^2`` (exactly when
    the weights are exact) and reads ``y_v^2`` from the row prices.
    """
    w = graph.weights if w is None else check_weights(w, graph.n_edges)
    if not graph.is_bipartite():
        raise InputError("graph is not bipartite")
    n, m = graph.n_vertices, graph.n_edges
    sq = [simplify(x * x) for x in w]
    A = [[0] * m for _ in range(n)]
    for i, (u, v) in enumerate(graph.edges):
        A[u][i] = 1
        A[v][i] = 1
    res = maximize(sq, A, [1] * n)
    M = set()
    for i, x in enumerate(res.x):
        if abs(float(x) - 1) <= TOL:
            M.add(i)
        elif abs(float(x)) > TOL:
            raise InternalError("fractional vertex in a bipartite matching LP")
    y2 = tuple(max(v, 0) if not isinstance(v, float) else max(v, 0.0) for v in res.y)
    y = tuple(exact_sqrt(v) for v in y2)
    dual = MatchingDual(y2, y)
    # complementary slackness on M, feasibility everywhere
    for i, (u, v) in enumerate(graph.edges):
        slack = float(y2[u] + y2[v] - sq[i])
        if slack < -TOL * (1 + float(sq[i])):
            raise InternalError(f"dual infeasible at edge {i}")
        if i in M and abs(slack) > TOL * (1 + float(sq[i])):
            raise InternalError(f"complementary slackness fails at edge {i}")
    return frozenset(M), dual


def build_certificate(graph: WeightedGraph, w, M, dual: MatchingDual, k: int) -> DualCertificate:
    """Dual ``(z*, y*)`` for cardinality ``k`` in units where the cheapest
    edge of ``M_k`` has weight 1."""
    w = graph.weights if w is None else check_weights(w, graph.n_edges)
    M = frozenset(M)
    if not 1 <= k <= len(M):
        raise InputError(f"k must lie in 1..{len(M)}")
    Mk = top_k(M, w, k)
    scale = min(w[e] for e in Mk)
    if not scale > 0:
        raise InputError("M_k contains a zero-weight edge; cannot normalise")
    s = float(scale)
    y = [float(v) / s for v in dual.y]
    ystar = [0.0] * graph.n_vertices
    for e in Mk:
        a, b = graph.edges[e]
        u, v = (a, b) if y[a] >= y[b] else (b, a)
        we = float(w[e]) / s
        if y[v] < 1 / _R2:
            ystar[v] = 0.0
            ystar[u] = _R2 * (we - 1)
        else:
            ystar[u] = _R2 * (we * y[u] / (y[u] + y[v]) - 0.5)
            ystar[v] = _R2 * (we * y[v] / (y[u] + y[v]) - 0.5)
    for i, v in enumerate(ystar):
        if v < -1e-12:
            raise InternalError(f"negative dual value {v} at vertex {i}")
        ystar[i] = max(v, 0.0)
    return DualCertificate(k, _R2, tuple(ystar), scale, Mk)


def verify_certificate(graph: WeightedGraph, w, M, cert: DualCertificate, tol: float = TOL):
    """Returns ``(feasible, value, bound_holds)`` with ``value`` in original units.

    ``bound_holds`` means the dual is feasible and its value equals
    ``sqrt2 * w(M_k)``, which certifies ``OPT_k <= sqrt2 * w(M_k)``.
    """
    w = graph.weights if w is None else check_weights(w, graph.n_edges)
    s = float(cert.scale)
    feasible = all(y >= -tol for y in cert.y_star)
    for i, (u, v) in enumerate(graph.edges):
        if cert.z_star + cert.y_star[u] + cert.y_star[v] < float(w[i]) / s - tol:
            feasible = False
            break
    Mk = top_k(M, w, cert.k)
    scaled_value = cert.k * cert.z_star + sum(cert.y_star)
    target = _R2 * sum(float(w[e]) for e in Mk) / s
    value_ok = abs(scaled_value - target) <= tol * max(1.0, target)
    return feasible, scaled_value * s, feasible and value_ok
