"""Command-line interface.

Every command prints one JSON document to stdout.  Exit status is 0 on
success, 1 when a checked guarantee is violated and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .certify import build_certificate, squared_matching_dual, verify_certificate
from .errors import InputError, InternalError, ResourceError
from .exact import encode_number, is_exact
from .game import build_matrix, deterministic_best, induced_priority, solve_game, verify_solution
from .instances import Instance, dumps, instance_from_gen, instance_to_dict, load_instance
from .merge import MergeParams, random_merge, simplify_pair
from .robust import (
    PriorityDistribution,
    brute_force_priority_optimum,
    priority_best_in_support,
    priority_value,
    randomized_robust,
    randomized_robustness,
    robustness,
    squared_weight_solution,
)
from .solvers import bipartite_profile, max_weight_at_most_k, opt_profile
from .systems import MatchingSystem, top_k, total
from .theory import check_2_extendible, check_bit_concave, check_good, check_good_sampled, check_theorem32

LN4_BOUND = 1 / math.log(4)
COMMANDS = ("solve", "profile", "robust", "randomized", "game", "certify", "check",
            "priority", "merge", "gen")


class Violation(Exception):
    """A checked guarantee failed; the report is still printed."""

    def __init__(self, report):
        super().__init__("guarantee violated")
        self.report = report


def _num(x):
    return {"float": float(x), "exact": encode_number(x)} if is_exact(x) else {"float": float(x), "exact": None}


def _instance(args) -> Instance:
    if args.instance and args.gen:
        raise InputError("give either --instance or --gen, not both")
    if args.instance:
        return load_instance(args.instance)
    if args.gen:
        return instance_from_gen(args.gen, seed=args.seed)
    raise InputError("an instance is required (--instance PATH or --gen NAME[:PARAMS])")


def _profile(inst):
    return opt_profile(inst.system, inst.weights)


def _parse_set(text):
    try:
        return frozenset(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise InputError(f"bad --set value {text!r}") from exc


def _parse_mu_distribution(text) -> PriorityDistribution:
    if text is None:
        raise InputError("--mu is required for this command")
    if os.path.exists(text):
        with open(text) as fh:
            raw = json.load(fh)
    else:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            raw = dict(part.split(":") for part in text.split(","))
    if isinstance(raw, list):
        raw = {i + 1: p for i, p in enumerate(raw)}
    try:
        return PriorityDistribution({int(k): float(v) for k, v in raw.items()})
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad --mu value: {exc}") from exc


# -- commands ---------------------------------------------------------------

def cmd_solve(args, inst):
    if args.k is None:
        raise InputError("solve needs --k")
    S, val = max_weight_at_most_k(inst.system, inst.weights, args.k)
    return {"k": args.k, "set": sorted(S), "value": _num(val)}


def cmd_profile(args, inst):
    prof = _profile(inst)
    return {"r": prof.r, "opt": [float(v) for v in prof.values],
            "opt_exact": [encode_number(v) if is_exact(v) else None for v in prof.values],
            "witnesses": [sorted(S) for S in prof.witnesses]}


def cmd_robust(args, inst):
    S = _parse_set(args.set) if args.set else squared_weight_solution(inst.system, inst.weights)
    rep = robustness(inst.system, inst.weights, S)
    out = rep.to_dict()
    out["set"] = sorted(S)
    return out


def cmd_randomized(args, inst):
    lam = randomized_robust(inst.system, inst.weights)
    rep = randomized_robustness(inst.system, inst.weights, lam)
    out = rep.to_dict()
    out["distribution"] = lam.to_dict()
    out["meets_ln4_bound"] = float(rep.alpha) >= LN4_BOUND - args.tol
    return out


def cmd_game(args, inst):
    M = build_matrix(inst.system, inst.weights)
    sol = solve_game(M, exact=True if args.exact else None)
    ok, violations = verify_solution(M, sol, tol=args.tol)
    best, best_set = deterministic_best(M)
    out = sol.to_dict()
    out["deterministic_best"] = float(best)
    out["deterministic_best_set"] = sorted(best_set)
    out["verified"] = ok
    out["violations"] = violations
    out["mu"] = [{"k": k, "p": float(p)} for k, p in induced_priority(M, sol).items()]
    if not ok:
        raise Violation(out)
    return out


def cmd_certify(args, inst):
    if inst.graph is None or not inst.is_bipartite_matching:
        raise InputError("certify needs a bipartite graph instance")
    g, w = inst.graph, inst.weights
    M, dual = squared_matching_dual(g, w)
    prof = bipartite_profile(g, w)
    ks = [args.k] if args.k is not None else range(1, len(M) + 1)
    records, all_ok = [], True
    for k in ks:
        cert = build_certificate(g, w, M, dual, k)
        feasible, value, holds = verify_certificate(g, w, M, cert, tol=args.tol)
        wmk = float(total(top_k(M, w, k), w))
        optk = float(prof.opt(k))
        records.append({"k": k, "feasible": feasible, "value": value, "wMk": wmk, "optk": optk,
                        "ratio_bound": math.sqrt(2) * wmk / optk if optk > 0 else None,
                        "bound_holds": holds})
        all_ok &= holds and optk <= math.sqrt(2) * wmk + args.tol
    out = {"matching": sorted(M), "records": records, "all_hold": all_ok}
    if not all_ok:
        raise Violation(out)
    return out


def _is_bit_function(w):
    return all(is_exact(x) and x > 0 and math.log2(float(x)).is_integer() for x in w)


def cmd_check(args, inst):
    sys_, w = inst.system, inst.weights
    samples = args.samples or 1000
    witnesses = {}
    good, wg = True, None
    if _is_bit_function(w):
        good, wg = check_good(sys_, w)
    if good:
        good, wg = check_good_sampled(sys_, samples, seed=args.seed)
    bc, wb = check_bit_concave(sys_, samples, seed=args.seed)
    ext, we = check_2_extendible(sys_)
    thm = check_theorem32(sys_, samples=min(samples, 200), seed=args.seed)
    for name, wit in (("good", wg), ("bit_concave", wb), ("two_extendible", we)):
        if wit is not None:
            witnesses[name] = wit
    out = {"bit_concave": bc, "good": good, "two_extendible": ext, "witnesses": witnesses,
           "equivalence": thm.to_dict()}
    # good implies 2-extendible, and the four equivalent conditions must agree
    if (good and not ext) or not thm.agree or good != bc:
        raise Violation(out)
    return out


def cmd_priority(args, inst):
    mu = _parse_mu_distribution(args.mu)
    lam = randomized_robust(inst.system, inst.weights)
    S = priority_best_in_support(lam, inst.weights, mu)
    val = priority_value(S, inst.weights, mu)
    _, opt = brute_force_priority_optimum(inst.system, inst.weights, mu)
    ratio = float(val) / float(opt) if opt > 0 else 1.0
    return {"set": sorted(S), "value": float(val), "optimum": float(opt), "ratio": ratio,
            "meets_ln4_bound": ratio >= LN4_BOUND - args.tol}


def cmd_merge(args, inst):
    if inst.graph is None or not isinstance(inst.system, MatchingSystem):
        raise InputError("merge needs a graph instance")
    g, w = inst.graph, inst.weights
    lam = randomized_robust(inst.system, w)
    sup = sorted(lam.support, key=lambda t: (-t[1], sorted(t[0])))
    M = sup[0][0]
    Mp = sup[1][0] if len(sup) > 1 else M
    if args.mu is not None:
        mu = float(args.mu)
    else:
        p0, p1 = sup[0][1], (sup[1][1] if len(sup) > 1 else 0)
        mu = float(p0 / (p0 + p1))
    params = MergeParams(args.delta if args.delta is not None else 0.5, args.K or 1)
    out = {"delta": float(params.delta), "K": params.K, "mu": mu}
    try:
        Mb, Mbp = simplify_pair(g, M, Mp, params, w)
        out["bullets_hold"] = True
    except InternalError as exc:
        out.update({"bullets_hold": False, "error": str(exc), "best_ratio": None,
                    "samples": args.samples or 1000})
        raise Violation(out)
    best, stats = random_merge(g, Mb, Mbp, mu, args.samples or 1000, seed=args.seed, K=params.K)
    out.update({"best_ratio": stats.best_ratio, "samples": stats.samples, "M": sorted(M),
                "M_prime": sorted(Mp), "M_bar": sorted(Mb), "M_bar_prime": sorted(Mbp),
                "merged": sorted(best), "stats": stats.to_dict()})
    return out


def cmd_gen(args, inst):
    return instance_to_dict(inst)


HANDLERS = {
    "solve": cmd_solve, "profile": cmd_profile, "robust": cmd_robust,
    "randomized": cmd_randomized, "game": cmd_game, "certify": cmd_certify,
    "check": cmd_check, "priority": cmd_priority, "merge": cmd_merge, "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", help="path to a JSON instance document")
    common.add_argument("--gen", help="generator spec, e.g. fig1, remark23:4, copies:2, lemma28, random:n=6,p=0.5")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--k", type=int)
    common.add_argument("--delta", type=float)
    common.add_argument("--K", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--mu", help="float in [0,1] (merge) or distribution file / JSON (priority)")
    common.add_argument("--exact", action="store_true", help="force the rational LP path")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--set", help="element ids, comma or space separated (robust)")
    parser = argparse.ArgumentParser(prog="robmatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        inst = _instance(args)
        report = HANDLERS[args.command](args, inst)
        code = 0
    except Violation as v:
        report, code = v.report, 1
    except (InputError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stdout.write(dumps(report) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
