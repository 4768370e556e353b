"""JSON instance documents and generator specs.

Supported document types::

    {"type": "graph", "n": 4, "edges": [{"u": 0, "v": 1, "w": 1}, ...], "b": [...]?}
    {"type": "explicit", "ground": 6, "bases": [[0, 1], ...], "weights": [...]?}
    {"type": "matroid_intersection", "ground": 5, "weights": [...],
     "first": {"kind": "uniform", "rank": 2},
     "second": {"kind": "partition", "blocks": [[0, 1], [2, 3, 4]], "capacities": [1, 2]}}

Weights are JSON numbers or exact ``{"num", "den", "sqrt2_coeff"}`` objects.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from . import generators as gens
from .errors import InputError
from .exact import decode_number, encode_number
from .systems import (
    BMatchingSystem,
    ExplicitSystem,
    IndependenceSystem,
    MatchingSystem,
    MatroidIntersection,
    PartitionMatroid,
    UniformMatroid,
    WeightedGraph,
)


@dataclass(frozen=True)
class Instance:
    system: IndependenceSystem
    weights: tuple
    graph: WeightedGraph = None
    doc: dict = None

    @property
    def is_bipartite_matching(self) -> bool:
        return isinstance(self.system, MatchingSystem) and self.graph.is_bipartite()


def _matroid_from(doc, n):
    kind = doc.get("kind")
    if kind == "uniform":
        return UniformMatroid(n, int(doc["rank"]))
    if kind == "partition":
        return PartitionMatroid(n, doc["blocks"], doc["capacities"])
    raise InputError(f"unknown matroid kind {kind!r}")


def _matroid_doc(m):
    if isinstance(m, UniformMatroid):
        return {"kind": "uniform", "rank": m.rank}
    if isinstance(m, PartitionMatroid):
        return {"kind": "partition", "blocks": [list(b) for b in m.blocks],
                "capacities": list(m.capacities)}
    raise InputError(f"cannot serialise matroid {m!r}")


def _weights(doc, n):
    ws = doc.get("weights")
    if ws is None:
        return tuple([1] * n)
    if len(ws) != n:
        raise InputError(f"expected {n} weights, got {len(ws)}")
    return tuple(decode_number(x) for x in ws)


def instance_from_dict(doc: dict) -> Instance:
    try:
        kind = doc["type"]
        if kind == "graph":
            edges = [(int(e["u"]), int(e["v"])) for e in doc["edges"]]
            weights = [decode_number(e.get("w", 1)) for e in doc["edges"]]
            g = WeightedGraph(int(doc["n"]), edges, weights)
            if doc.get("b") is not None:
                return Instance(BMatchingSystem(g, doc["b"]), g.weights, g, doc)
            return Instance(MatchingSystem(g), g.weights, g, doc)
        if kind == "explicit":
            n = int(doc["ground"])
            sys = ExplicitSystem(n, doc["bases"])
            return Instance(sys, _weights(doc, n), None, doc)
        if kind == "matroid_intersection":
            n = int(doc["ground"])
            sys = MatroidIntersection(_matroid_from(doc["first"], n), _matroid_from(doc["second"], n))
            return Instance(sys, _weights(doc, n), None, doc)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed instance document: {exc}") from exc
    raise InputError(f"unknown instance type {doc.get('type')!r}")


def graph_to_dict(g: WeightedGraph, b=None) -> dict:
    doc = {"type": "graph", "n": g.n_vertices,
           "edges": [{"u": u, "v": v, "w": encode_number(w)} for (u, v), w in zip(g.edges, g.weights)]}
    if b is not None:
        doc["b"] = list(b)
    return doc


def instance_to_dict(inst: Instance) -> dict:
    sys = inst.system
    ws = [encode_number(x) for x in inst.weights]
    if isinstance(sys, BMatchingSystem):
        return graph_to_dict(sys.graph.with_weights(inst.weights), sys.b)
    if isinstance(sys, MatchingSystem):
        return graph_to_dict(sys.graph.with_weights(inst.weights))
    if isinstance(sys, ExplicitSystem):
        return {"type": "explicit", "ground": sys.ground_size,
                "bases": [sorted(b) for b in sys.bases], "weights": ws}
    if isinstance(sys, MatroidIntersection):
        return {"type": "matroid_intersection", "ground": sys.ground_size,
                "first": _matroid_doc(sys.first), "second": _matroid_doc(sys.second), "weights": ws}
    raise InputError(f"cannot serialise system {sys!r}")


def load_instance(path) -> Instance:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return instance_from_dict(doc)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True)


# -- generator specs -------------------------------------------------------

def _parse_params(text: str) -> tuple:
    pos, kw = [], {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" in part:
            k, v = part.split("=", 1)
            kw[k.strip()] = v.strip()
        else:
            pos.append(part)
    return pos, kw


def _num(v):
    try:
        return int(v)
    except ValueError:
        return float(v)


def instance_from_gen(spec: str, seed: int = 0) -> Instance:
    """Resolve ``name[:params]``, e.g. ``remark23:4`` or ``random:n=6,p=0.5``."""
    name, _, rest = spec.partition(":")
    pos, kw = _parse_params(rest)
    try:
        if name == "fig1":
            g = gens.gen_fig1()
        elif name == "remark23":
            g = gens.gen_remark23(int(kw.get("n", pos[0] if pos else 2)))
        elif name == "copies":
            g = gens.gen_copies(int(kw.get("K", kw.get("k", pos[0] if pos else 1))))
        elif name == "lemma28":
            return Instance(gens.gen_lemma28(), gens.LEMMA28_WITNESS_WEIGHTS)
        elif name == "random":
            g = gens.gen_random(int(kw.get("n", pos[0] if pos else 6)), float(kw.get("p", 0.5)),
                                kw.get("dist", "uniform-int"), _num(kw.get("W", 20)),
                                int(kw.get("seed", seed)))
        elif name == "random_bipartite":
            g = gens.gen_random_bipartite(int(kw.get("l", 3)), int(kw.get("r", 3)),
                                          float(kw.get("p", 0.6)), kw.get("dist", "uniform-int"),
                                          _num(kw.get("W", 20)), int(kw.get("seed", seed)))
        else:
            raise InputError(f"unknown generator {name!r}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad generator parameters in {spec!r}: {exc}") from exc
    return Instance(MatchingSystem(g), g.weights, g)
