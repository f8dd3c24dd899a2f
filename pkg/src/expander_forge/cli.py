"""Command-line front end.

Every subcommand prints (or writes with ``-o``) one JSON report with sorted
keys.  Exit codes: 0 success, 1 usage or input error, 2 an honest negative
outcome (refuted, not closed, failed verification), 3 an internal invariant
broke.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from . import graph as gmod
from .config import RunConfig, default_seed
from .cover import cover_strong, cover_weak, refining_schedule
from .errors import ClosureFailed, ForgeError, GraphError, InternalInvariantViolation
from .expansion import (
    LambdaParams,
    RobustParams,
    Status,
    check_lambda_expander,
    check_robust_expander,
    lambda_violates,
    robust_violates,
)
from .extraction import bound_check, extract_expander
from .graph import Graph, degree_stats, induced_subgraph
from .hamilton import nearly_hamilton_cycle, nearly_hamilton_path, paper_parameters
from .rational import as_fraction, to_json
from .subdivision import (
    Subdivision,
    chord_rich_cycle,
    cycle_partition,
    pack_f_subdivisions,
    verify_subdivision,
)
from .verify import verify_cycle, verify_path

MAX_DEN = 10**6


class UsageError(Exception):
    pass


class VerifyFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def rational(text: str) -> Fraction:
    """Parse a user number; decimals are snapped to the nearest fraction with denominator <= 10^6."""
    try:
        return Fraction(text).limit_denominator(MAX_DEN)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# Arguments


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=("paper", "desk"), default="desk")
    p.add_argument("--lambda", dest="lam", type=rational)
    p.add_argument("--eps", type=rational)
    p.add_argument("--c", dest="c_exp", type=rational, help="polylog exponent for robust checks")
    p.add_argument("--C", dest="C", type=rational)
    p.add_argument("--alpha", type=rational)
    p.add_argument("--q1", type=rational)
    p.add_argument("--t", type=int)
    p.add_argument("--rounds", type=int)
    p.add_argument("--max-path-len", type=int)
    p.add_argument("--exact-limit", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output")
    p.add_argument("--no-meta", action="store_true", help="omit wall times so reports are byte-stable")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="expander-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a graph as an edge list")
    g.add_argument("--kind", default="regular", choices=("regular", "gnp", "gnm", "complete", "cycle", "path", "petersen"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, help="degree (regular) or average degree (gnp)")
    g.add_argument("--p", type=float)
    g.add_argument("--m", type=int)

    e = sub.add_parser("extract", parents=[common], help="extract a lambda-expander")
    e.add_argument("graph")
    e.add_argument("--check", choices=("auto", "exact", "sampled"), default="auto")
    e.add_argument("--trace", help="write the extraction steps as JSON lines")

    c = sub.add_parser("cover", parents=[common], help="cover by expanders")
    c.add_argument("graph")
    c.add_argument("--d", type=int)
    c.add_argument("--weak", action="store_true", help="single-schedule cover instead of the refining one")

    h = sub.add_parser("hamilton", parents=[common], help="nearly-spanning cycle (or path)")
    h.add_argument("graph")
    h.add_argument("--path", action="store_true")

    s = sub.add_parser("pack-subdiv", parents=[common], help="pack subdivisions of a pattern")
    s.add_argument("graph")
    s.add_argument("--pattern", default="K3", help="Kp, Cp, Pp or an edge-list file")

    cp = sub.add_parser("cycle-partition", parents=[common], help="few disjoint cycles covering most vertices")
    cp.add_argument("graph")

    ch = sub.add_parser("chords", parents=[common], help="a cycle with at least as many chords as vertices")
    ch.add_argument("graph")

    x = sub.add_parser("check-expansion", parents=[common], help="edge or robust vertex expansion check")
    x.add_argument("graph")
    x.add_argument("--check", choices=("auto", "exact", "sampled"), default="auto")
    x.add_argument("--robust", action="store_true", help="check (eps, c, s) robust expansion")
    x.add_argument("--s", type=rational)

    v = sub.add_parser("verify", parents=[common], help="re-verify an artifact")
    v.add_argument("artifact", nargs="?")
    v.add_argument("--graph", required=True)
    for flag in ("--packing", "--cycle", "--cover", "--report"):
        v.add_argument(flag, dest="artifact_flag")

    sc = sub.add_parser("schedule", parents=[common], help="print the refining and layer schedules")
    sc.add_argument("--paper", action="store_true", help="same as --mode paper")
    sc.add_argument("--logn", type=rational, help="log2 n (default from --n)")
    sc.add_argument("--n", type=int)
    return parser


def make_config(args) -> RunConfig:
    mode = "paper" if getattr(args, "paper", False) else args.mode
    if mode == "paper" and (args.q1 is not None or args.t is not None):
        raise UsageError("paper mode derives q1 and t; do not override them")
    changes = {"mode": mode, "seed": default_seed(args.seed), "threads": args.threads}
    for name, attr in (
        ("lam", "lam"),
        ("eps", "eps"),
        ("C", "C"),
        ("alpha", "alpha"),
        ("q1", "q1"),
        ("t", "t"),
        ("rounds", "rounds"),
        ("max_path_len", "max_path_len"),
        ("exact_limit", "exact_limit"),
        ("trials", "trials"),
    ):
        val = getattr(args, attr, None)
        if val is not None:
            changes[name] = val
    try:
        return RunConfig(**changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_graph(path: str) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    n = None
    for line in text.splitlines():
        if line.startswith("# n "):
            n = int(line.split()[2])
            break
    try:
        return gmod.from_edge_list(text, n)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _pattern(spec: str) -> Graph:
    kind, rest = spec[:1].upper(), spec[1:]
    if rest.isdigit():
        k = int(rest)
        if kind == "K":
            return gmod.complete(k)
        if kind == "C":
            return gmod.cycle(k)
        if kind == "P":
            return gmod.path(k)
    return _read_graph(spec)


# --------------------------------------------------------------------------
# Commands


def cmd_gen(args, cfg: RunConfig):
    n, seed = args.n, cfg.seed
    if args.kind == "regular":
        if args.d is None:
            raise UsageError("--d is required for regular graphs")
        G = gmod.random_regular(n, args.d, seed)
    elif args.kind == "gnp":
        p = args.p if args.p is not None else (args.d / (n - 1) if args.d is not None else None)
        if p is None:
            raise UsageError("--p or --d is required for gnp")
        G = gmod.random_gnp(n, p, seed)
    elif args.kind == "gnm":
        if args.m is None:
            raise UsageError("--m is required for gnm")
        G = gmod.random_gnm(n, args.m, seed)
    elif args.kind == "petersen":
        G = gmod.petersen()
    else:
        G = getattr(gmod, args.kind)(n)
    return f"# n {G.n}\n" + gmod.to_edge_list(G), 0


def cmd_extract(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    res = extract_expander(
        G, LambdaParams(cfg.lam), mode=args.check, trials=cfg.trials, seed=cfg.seed, exact_limit=cfg.exact_limit
    )
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for step in res.trace.steps:
                fh.write(json.dumps(step.to_dict(), sort_keys=True) + "\n")
    return res.to_dict(), 0


def cmd_cover(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    if args.weak:
        d = args.d if args.d is not None else degree_stats(G).max
        eps = cfg.eps if cfg.eps is not None else max(Fraction(0), 1 - G.avg_degree() / d)
        cover = cover_weak(G, d, eps, LambdaParams(cfg.lam), cfg.alpha, cfg)
    else:
        cover = cover_strong(G, args.d, cfg.C, cfg.alpha, cfg)
    return cover.to_dict(), 0


def cmd_hamilton(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    if args.path:
        system, report = nearly_hamilton_path(G, cfg, cfg.seed)
        out = {"path": list(system.paths[0]) if len(system.paths) == 1 else None, "paths": [list(p) for p in system.paths]}
        out["report"] = report.to_dict()
        return out, 0 if len(system.paths) == 1 else 2
    try:
        cyc, report = nearly_hamilton_cycle(G, cfg, cfg.seed)
    except ClosureFailed as exc:
        return {"cycle": None, "path": exc.path, "report": exc.report.to_dict() if exc.report else None}, 2
    return {"cycle": cyc, "report": report.to_dict()}, 0


def cmd_pack(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    F = _pattern(args.pattern)
    packing = pack_f_subdivisions(G, F, cfg)
    return packing.to_dict(), 0


def cmd_cycle_partition(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    return cycle_partition(G, cfg).to_dict(), 0


def cmd_chords(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    res = chord_rich_cycle(G, cfg)
    return res.to_dict(), 0 if res.success else 2


def cmd_check(args, cfg: RunConfig):
    G = _read_graph(args.graph)
    if args.robust:
        if cfg.eps is None or args.s is None:
            raise UsageError("--robust needs --eps and --s (and optionally --c)")
        p = RobustParams(cfg.eps, args.c_exp or 0, args.s)
        verdict = check_robust_expander(G, p, cfg.trials, args.check, cfg.seed, cfg.exact_limit)
        params = {"eps": to_json(p.eps), "c": to_json(p.c), "s": to_json(p.s)}
    else:
        verdict = check_lambda_expander(G, LambdaParams(cfg.lam), args.check, cfg.trials, cfg.seed, cfg.exact_limit)
        params = {"lambda": to_json(cfg.lam)}
    out = {"verdict": verdict.to_dict(), "params": params, "robust": args.robust}
    return out, 2 if verdict.status is Status.REFUTED else 0


def cmd_schedule(args, cfg: RunConfig):
    if args.logn is None and args.n is None:
        raise UsageError("give --logn or --n")
    sched = refining_schedule(args.n, cfg.C, cfg.alpha, log_n=args.logn)
    out = {
        "schedule": sched.to_dict(),
        "gamma": float(sched.gamma),
        "c": float(sched.c),
        "beta": float(sched.beta),
        "t": sched.t,
        "mode": cfg.mode,
    }
    if cfg.mode == "paper" and args.n is not None:
        q1, q2, t, ell = paper_parameters(args.n)
        out["partition"] = {"q1": to_json(q1), "q2": to_json(q2), "t": t, "ell": ell, "identity": q1 + (t + 1) * q2 == 1}
    return out, 0


# --------------------------------------------------------------------------
# verify


def _check(cond: bool, message: str):
    if not cond:
        raise VerifyFailed(message)


def _verify_cycle_list(G: Graph, cyc, covered=None):
    verdict = verify_cycle(G, cyc)
    _check(verdict.ok, f"cycle invalid: {verdict.reason}")
    if covered is not None:
        _check(covered == verdict.length, "reported coverage does not match the cycle")
    return verdict


def _verify_partition(G: Graph, n: int, parts, uncovered):
    seen: set[int] = set()
    for vs in parts:
        vs = set(vs)
        _check(not (vs & seen), "parts overlap")
        seen |= vs
    _check(n == G.n, "artifact was made for a different graph")
    _check(seen | set(uncovered) == set(range(G.n)) and not (seen & set(uncovered)), "uncovered set is wrong")


def verify_artifact(G: Graph, art: dict) -> dict:
    """Re-check an artifact produced by this tool against ``G``; raises VerifyFailed."""
    command = art.get("command")
    res = art.get("result")
    _check(isinstance(res, dict), "artifact has no result")
    cfg = art.get("config", {})
    if command == "extract":
        lam = as_fraction(cfg["lam"])
        vs = res["vertices"]
        _check(len(set(vs)) == len(vs) and all(0 <= v < G.n for v in vs), "vertex list invalid")
        H = induced_subgraph(G, vs)
        b = bound_check(G, H, lam)
        _check(b.ok, "degree bound fails")
        _check(b.to_dict() == res["bound_check"], "reported bound check differs from the recount")
        cert = res["certificate"]
        if cert["status"] == Status.CERTIFIED_EXACT.value and H.n >= 2:
            _check(check_lambda_expander(H, LambdaParams(lam), "exact", exact_limit=max(H.n, 2)).certified, "not an expander")
    elif command == "cover":
        members = res["members"]
        _verify_partition(G, res["n"], [m["vertices"] for m in members], res["uncovered"])
        d = res["d"]
        for m in members:
            H = induced_subgraph(G, m["vertices"])
            st = degree_stats(H)
            eps_H = as_fraction(m["eps_H"])
            _check(st.avg >= d * (1 - eps_H) and 2 * st.min >= st.avg, "member degree condition fails")
    elif command == "hamilton":
        if res.get("cycle") is not None:
            _verify_cycle_list(G, res["cycle"], res["report"]["covered"])
        else:
            for p in res.get("paths") or ([res["path"]] if res.get("path") else []):
                _check(verify_path(G, p).ok, "path invalid")
    elif command == "pack-subdiv":
        pat = res["pattern"]
        F = Graph.from_edges(pat["n"], [tuple(e) for e in pat["edges"]])
        elements = [Subdivision.from_dict(F, e) for e in res["elements"]]
        for s in elements:
            verdict = verify_subdivision(G, F, s)
            _check(verdict.ok, f"subdivision invalid: {verdict.reason}")
        _verify_partition(G, res["n"], [s.vertices() for s in elements], res["uncovered"])
        _check(res["coverage"] == G.n - len(res["uncovered"]), "coverage count is wrong")
        _check(sum(res["uncovered_breakdown"].values()) == len(res["uncovered"]), "breakdown does not add up")
    elif command == "cycle-partition":
        cycles = res["cycles"]
        _check(len(cycles) <= G.n // (res["d"] + 1), "too many cycles")
        _check(res["d"] == degree_stats(G).max, "d is not the maximum degree")
        seen: set[int] = set()
        for c in cycles:
            v = _verify_cycle_list(G, c)
            body = set(c)
            _check(not (body & seen), "cycles overlap")
            seen |= body
            del v
        _check(res["covered"] == len(seen), "coverage count is wrong")
    elif command == "chords":
        if res["cycle"]:
            verdict = _verify_cycle_list(G, res["cycle"], res["length"])
            _check(verdict.chords == res["chords"], "chord count differs from the recount")
            _check(res["success"] == (verdict.chords >= verdict.length), "success flag is wrong")
    elif command == "check-expansion":
        verdict = res["verdict"]
        if verdict["status"] == Status.REFUTED.value:
            U = verdict["witness_U"]
            if res["robust"]:
                pr = res["params"]
                p = RobustParams(as_fraction(pr["eps"]), as_fraction(pr["c"]), as_fraction(pr["s"]))
                F = [tuple(e) for e in verdict["witness_F"] or []]
                _check(robust_violates(G, U, F, p), "robust witness does not violate")
            else:
                lam = as_fraction(res["params"]["lambda"])
                connected = G.is_connected()
                _check(lambda_violates(G, U, lam) or not connected, "cut witness does not violate")
    else:
        raise VerifyFailed(f"cannot verify artifacts of command {command!r}")
    return {"verified": True, "command": command}


def cmd_verify(args, cfg: RunConfig):
    path = args.artifact or args.artifact_flag
    if not path:
        raise UsageError("give an artifact file")
    G = _read_graph(args.graph)
    try:
        with open(path, encoding="utf-8") as fh:
            art = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        return {"verified": False, "reason": f"unreadable artifact: {exc}"}, 2
    try:
        return verify_artifact(G, art), 0
    except (VerifyFailed, KeyError, TypeError, ValueError, ForgeError) as exc:
        return {"verified": False, "reason": str(exc) or type(exc).__name__}, 2


COMMANDS = {
    "gen": cmd_gen,
    "extract": cmd_extract,
    "cover": cmd_cover,
    "hamilton": cmd_hamilton,
    "pack-subdiv": cmd_pack,
    "cycle-partition": cmd_cycle_partition,
    "chords": cmd_chords,
    "check-expansion": cmd_check,
    "verify": cmd_verify,
    "schedule": cmd_schedule,
}


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        cfg = make_config(args)
        result, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"expander-forge: error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantViolation as exc:
        print(f"expander-forge: internal invariant broken: {exc}", file=sys.stderr)
        return 3
    except ForgeError as exc:
        print(f"expander-forge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        _emit(result, args.output)
        return code
    report = {"command": args.command, "config": cfg.to_dict(), "seed": cfg.seed, "result": result}
    if not args.no_meta:
        report["meta"] = {"version": __version__, "wall_time": round(time.perf_counter() - start, 6)}
    _emit(dumps(report), args.output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
