"""Command-line driver: ``prunebench {prune,run,enumerate,verify,graph,minf}``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or domain
errors.  Durations are printed on a separate trailing ``duration_ms`` line
(text) or field (json) so that the remaining output is byte-stable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from . import bitcase, efficiency, prunegraph
from .bitcase import DomainError
from .efficiency import SolutionSet

ENUMERATE_HEADER = ["set", "R", "C", "ratio"]


@dataclass
class CommandReport:
    command: str
    parameters: dict[str, Any]
    results: list[dict[str, Any]] = field(default_factory=list)
    passed: bool | None = None
    duration_ms: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CommandReport:
        return cls(**json.loads(text))


def _ratio(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def _int(text: str) -> int:
    return int(text, 0) if text.lower().startswith(("0b", "0x")) else int(text)


def _members(text: str) -> list[int]:
    return [_int(t) for t in text.replace(" ", "").split(",") if t]


def _default_jobs() -> int:
    return int(os.environ.get("PRUNE_BENCH_JOBS", "1"))


# --- commands ------------------------------------------------------------

def cmd_prune(args) -> CommandReport:
    m, ell = args.m, args.ell
    p = bitcase.prune(m, ell)
    width = max(m.bit_length(), 1)
    rep = CommandReport("prune", {"m": m, "ell": ell})
    rep.results.append({"before": bitcase.binary(m, width),
                        "after": bitcase.binary(p, width),
                        "value": p})
    return rep


def cmd_run(args) -> CommandReport:
    n, ell = args.n, args.ell
    s = SolutionSet.of(n, _members(args.set))
    out = efficiency.run_efficiency(n, ell, s)
    fs = sorted({2, n + 1})
    rep = CommandReport("run", {"n": n, "ell": ell, "set": list(s.members)})
    rep.results.append({
        "trace": list(out.trace), "found": list(out.found),
        "R": out.R, "C": out.C, "valid": out.valid,
        "par": {str(f): efficiency.par_number(out, f).p for f in fs},
    })
    return rep


def cmd_enumerate(args) -> CommandReport:
    rep = CommandReport("enumerate", {"n": args.n, "ell": args.ell})
    for s, out in efficiency.enumerate_valid_sets(args.n, args.ell, args.jobs):
        rep.results.append({"set": list(s.members), "R": out.R, "C": out.C,
                            "ratio": _ratio(out.ratio)})
    return rep


def _levels(args) -> list[int]:
    return [args.ell] if args.ell else [1, 2]


def _verify_lemmas(args, rep):
    for chk in bitcase.verify_prefix_lemmas(args.k_max or 16):
        rep.results.append({"check": f"lemma {chk.name}", "params": f"k<={args.k_max or 16}",
                            "passed": chk.passed,
                            "detail": f"{chk.cases_checked} cases"
                            if chk.passed else f"counterexample k,m={chk.counterexample}"})


def _verify_structure(args, rep):
    k_max = args.k_max or 12
    for ell in _levels(args):
        for name in prunegraph.propositions(ell):
            k_min, _ = prunegraph.PROPOSITIONS[(ell, name)]
            fails = []
            for k in range(k_min, k_max + 1):
                chk = prunegraph.verify_structure(k, ell, name)
                if args.verbose:
                    print(f"# structure ell={ell} {name} k={k}: "
                          f"{'pass' if chk.passed else 'FAIL'}", file=sys.stderr)
                if not chk.passed:
                    fails.append(k)
            rep.results.append({"check": f"structure {name}", "params": f"ell={ell} k={k_min}..{k_max}",
                                "passed": not fails,
                                "detail": "exact" if not fails else f"failed at k={fails}"})
        bad = [k for k in range(2, k_max + 1) if not prunegraph.verify_in_degrees(k, ell)]
        rep.results.append({"check": "structure in-degrees", "params": f"ell={ell} k=2..{k_max}",
                            "passed": not bad, "detail": "exact" if not bad else f"k={bad}"})


def _verify_theorems(args, rep):
    n_max = args.n_max or 16
    for ell in _levels(args):
        bad = []
        for n in range(2, n_max + 1):
            at, below = (-n, -(n + 1)) if ell == 1 else (-1, -2)
            top = (1 << n) - 1
            g = prunegraph.build_joined(n, ell, at)
            w = prunegraph.max_weight_path(g, 0, top).weight
            w2 = prunegraph.max_weight_path(g.with_blue_weight(below), 0, top).weight
            gk = prunegraph.build_gk(n, ell, at)
            wk = prunegraph.max_weight_path(gk, 0, top).weight
            ok = w == 0 and wk == 0 and w2 < 0
            if args.verbose:
                print(f"# theorem ell={ell} n={n}: joined={w} G_n={wk} tighter={w2}",
                      file=sys.stderr)
            if not ok:
                bad.append(n)
        rep.results.append({"check": "max weight path is 0", "params": f"ell={ell} n=2..{n_max}",
                            "passed": not bad, "detail": "exact" if not bad else f"n={bad}"})


def _verify_bounds(args, rep):
    n_max = args.n_max or 4
    if n_max > efficiency.ENUMERATION_MAX_N:
        raise efficiency.BudgetError(
            f"bounds sweep capped at n <= {efficiency.ENUMERATION_MAX_N}")
    for ell in _levels(args):
        for n in range(2, n_max + 1):
            expect = Fraction(n + 1) if ell == 1 else Fraction(2)
            extra = n if ell == 1 else 1
            ratio, witness = efficiency.max_ratio_bruteforce(n, ell, args.jobs)
            slack_ok = all(out.C - out.R <= extra * len(s)
                           for s, out in efficiency.enumerate_valid_sets(n, ell, args.jobs))
            rep.results.append({"check": "max C/R", "params": f"ell={ell} n={n}",
                                "passed": ratio == expect and slack_ok,
                                "detail": f"{_ratio(ratio)} witness {witness}"})


def _verify_bijection(args, rep):
    n_max = min(args.n_max or 4, efficiency.ENUMERATION_MAX_N)
    for ell in _levels(args):
        for n in range(2, n_max + 1):
            top = (1 << n) - 1
            g = prunegraph.build_joined(n, ell, -1, origin_blue=True)
            paths = prunegraph.count_paths(g, 0, top)
            count, ok = 0, True
            for s, out in efficiency.enumerate_valid_sets(n, ell, args.jobs):
                count += 1
                path = prunegraph.run_to_path(out, ell)
                ok &= prunegraph.path_to_solution_set(path, n, ell) == s
                for f in {2, n + 1}:
                    ok &= path.weight(-(f - 1)) == efficiency.par_number(out, f).p
            rep.results.append({"check": "run<->path bijection", "params": f"ell={ell} n={n}",
                                "passed": ok and paths == count,
                                "detail": f"{paths} paths, {count} valid sets"})


SCOPES = {
    "lemmas": [_verify_lemmas],
    "structure": [_verify_structure],
    "theorems": [_verify_theorems],
    "bounds": [_verify_bounds],
    "bijection": [_verify_bijection],
}
SCOPES["all"] = [fn for fns in SCOPES.values() for fn in fns]


def cmd_verify(args) -> CommandReport:
    rep = CommandReport("verify", {"scope": args.scope, "ell": args.ell,
                                   "k_max": args.k_max, "n_max": args.n_max})
    for fn in SCOPES[args.scope]:
        fn(args, rep)
    rep.passed = all(r["passed"] for r in rep.results)
    return rep


def _graph_of(args) -> prunegraph.WeightedDag:
    if args.gk is not None:
        return prunegraph.build_gk(args.gk, args.ell, args.blue)
    if args.joined is not None:
        return prunegraph.build_joined(args.joined, args.ell, args.blue,
                                       origin_blue=args.origin_blue)
    g = prunegraph.build_gk(args.box, args.ell, args.blue)
    return prunegraph.induced_box(g, prunegraph.box_bounds(args.box, args.ell), args.which)


def cmd_graph(args) -> CommandReport:
    g = _graph_of(args)
    rep = CommandReport("graph", {"gk": args.gk, "joined": args.joined, "box": args.box,
                                  "which": args.which, "ell": args.ell, "blue": args.blue})
    rep.results.append({"nodes": list(g.nodes),
                        "edges": [[e.src, e.dst, e.color.value, e.weight]
                                  for e in g.sorted_edges()],
                        "dot": prunegraph.to_dot(g)})
    return rep


def cmd_minf(args) -> CommandReport:
    f = prunegraph.minimal_f(args.n, args.ell, args.f_max)
    rep = CommandReport("minf", {"n": args.n, "ell": args.ell, "f_max": args.f_max})
    rep.results.append({"minimal_f": f, "proven": args.ell in (1, 2)})
    return rep


# --- rendering -----------------------------------------------------------

def render(rep: CommandReport, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json() + "\n"
    if fmt == "dot":
        if rep.command != "graph":
            raise DomainError("dot output is only available for the graph command")
        return rep.results[0]["dot"]
    if fmt == "csv":
        return _render_csv(rep)
    return _render_text(rep)


def _render_csv(rep: CommandReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rep.command == "enumerate":
        w.writerow(ENUMERATE_HEADER)
        for r in rep.results:
            w.writerow([" ".join(map(str, r["set"])), r["R"], r["C"], r["ratio"]])
    elif rep.command == "verify":
        w.writerow(["check", "params", "passed", "detail"])
        for r in rep.results:
            w.writerow([r["check"], r["params"], str(r["passed"]).lower(), r["detail"]])
    elif rep.command == "graph":
        w.writerow(["src", "dst", "color", "weight"])
        w.writerows(rep.results[0]["edges"])
    else:
        keys = [k for k in rep.results[0] if not isinstance(rep.results[0][k], (list, dict))]
        w.writerow(keys)
        for r in rep.results:
            w.writerow([r[k] for k in keys])
    return buf.getvalue()


def _render_text(rep: CommandReport) -> str:
    lines = []
    if rep.command == "prune":
        r = rep.results[0]
        lines.append(f"{r['before']} -> {r['after']} = {r['value']}")
    elif rep.command == "run":
        r = rep.results[0]
        lines.append("trace: " + " ".join(map(str, r["trace"])))
        par = " ".join(f"p(f={f})={p}" for f, p in r["par"].items())
        lines.append(f"R={r['R']} C={r['C']} valid={str(r['valid']).lower()} {par}")
    elif rep.command == "enumerate":
        lines.append(f"{'set':<40} {'R':>3} {'C':>3} ratio")
        for r in rep.results:
            members = "{" + ",".join(map(str, r["set"])) + "}"
            lines.append(f"{members:<40} {r['R']:>3} {r['C']:>3} {r['ratio']}")
        lines.append(f"{len(rep.results)} valid sets")
    elif rep.command == "verify":
        for r in rep.results:
            mark = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{mark}  {r['check']:<24} {r['params']:<22} {r['detail']}")
        n_ok = sum(r["passed"] for r in rep.results)
        lines.append(f"{n_ok}/{len(rep.results)} checks passed")
    elif rep.command == "graph":
        r = rep.results[0]
        lines.append(f"nodes: {' '.join(map(str, r['nodes']))}")
        lines += [f"{s} -> {d} {c} {w}" for s, d, c, w in r["edges"]]
    elif rep.command == "minf":
        r = rep.results[0]
        p = rep.parameters
        note = "" if r["proven"] else " (no proven bound for this prune level)"
        lines.append(f"n={p['n']} ell={p['ell']} minimal_f={r['minimal_f']}{note}")
    return "\n".join(lines) + "\n"


# --- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json", "dot"], default=None)
    common.add_argument("--jobs", type=int, default=_default_jobs())
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--timing", action="store_true",
                        help="append a duration_ms line")

    parser = argparse.ArgumentParser(prog="prunebench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prune", parents=[common], help="evaluate P_ell(m)")
    p.add_argument("m", type=_int)
    p.add_argument("--ell", type=int, default=1)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("run", parents=[common], help="run the counting sweep on a set")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("-s", "--set", required=True, help="comma-separated cases, 0b literals ok")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("enumerate", parents=[common], help="list all valid sets")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    p.add_argument("scope", choices=list(SCOPES))
    p.add_argument("--ell", type=int, choices=[1, 2], default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", parents=[common], help="emit a graph")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--gk", type=int)
    which.add_argument("--joined", type=int)
    which.add_argument("--box", type=int, help="digit count k of the G_k to split")
    p.add_argument("--which", type=int, default=1, help="box number for --box")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--blue", type=int, default=-1)
    p.add_argument("--origin-blue", action="store_true")
    p.set_defaults(func=cmd_graph, default_format="dot")

    p = sub.add_parser("minf", parents=[common], help="smallest f with max weight <= 0")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--f-max", type=int, default=64)
    p.set_defaults(func=cmd_minf)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or getattr(args, "default_format", "text")
    start = time.perf_counter()
    try:
        rep = args.func(args)
        rep.duration_ms = round((time.perf_counter() - start) * 1000, 3)
        out = render(rep, fmt)
    except DomainError as exc:
        print(f"prunebench {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    if args.timing:
        sys.stdout.write(f"duration_ms: {rep.duration_ms}\n")
    return 1 if rep.passed is False else 0


if __name__ == "__main__":
    sys.exit(main())
