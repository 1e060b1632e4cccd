"""Command-line front end.

Every command prints ``key: value`` lines. Exit codes: 0 feasible / success,
1 infeasible, 2 usage or input error, 3 a search budget was exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path

import numpy as np

from . import generators as gen
from ._config import BudgetExceeded
from .decomposition import (DecompositionError, caterpillar_from_order, interval_decomposition,
                            mimw_of_dec, parse_decomposition, parse_intervals, validate,
                            write_decomposition, write_intervals)
from .graph import GraphFormatError, graph_power, parse_graph, write_graph
from .oracle import OracleTooLarge, brute_lcvp, brute_sigma_rho
from .problems import (CATALOG_NAMES, DEFAULT_PARAM, PARAMETERIZED, OBJECTIVES, Problem,
                       SetSpecError, catalog_lookup, catalog_row, d_value, parse_matrix,
                       parse_set_spec)
from .solver import LCVP_OBJECTIVES, build_plan, solve_lcvp, solve_sigma_rho

EXIT_OK, EXIT_INFEASIBLE, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Report:
    def __init__(self):
        self.lines: list[str] = []

    def add(self, key: str, value) -> None:
        self.lines.append(f"{key}: {value}")

    def emit(self, out) -> None:
        out.write("\n".join(self.lines) + "\n")


def _read(path: str) -> tuple[str, str]:
    data = Path(path).read_bytes()
    return data.decode(), hashlib.sha256(data).hexdigest()


def _fmt_set(vs) -> str:
    return " ".join(str(v + 1) for v in sorted(vs)) or "-"


def _parse_order(text: str, n: int) -> list[int]:
    order = []
    for tok in text.split(","):
        tok = tok.strip()
        if ".." in tok:
            lo, hi = tok.split("..", 1)
            order.extend(range(int(lo), int(hi) + 1))
        elif tok:
            order.append(int(tok))
    if sorted(order) != list(range(1, n + 1)):
        raise UsageError(f"--dec-order must list each vertex 1..{n} exactly once")
    return [v - 1 for v in order]


def _load_graph(args, rep: Report):
    text, digest = _read(args.graph)
    rep.add("graph", args.graph)
    rep.add("graph-sha256", digest)
    return parse_graph(text)


def _load_dec(args, g, rep: Report, required: bool = True):
    given = [x for x in (args.dec, args.dec_order, args.dec_interval) if x is not None]
    if len(given) > 1:
        raise UsageError("give only one of --dec, --dec-order, --dec-interval")
    if not given:
        if required:
            raise UsageError("a decomposition is required: --dec, --dec-order or --dec-interval")
        return None
    if args.dec is not None:
        text, digest = _read(args.dec)
        rep.add("dec", args.dec)
        rep.add("dec-sha256", digest)
        dec = parse_decomposition(text)
    elif args.dec_order is not None:
        rep.add("dec-order", args.dec_order)
        dec = caterpillar_from_order(_parse_order(args.dec_order, g.n))
    else:
        text, digest = _read(args.dec_interval)
        rep.add("dec-interval", args.dec_interval)
        rep.add("dec-interval-sha256", digest)
        dec = interval_decomposition(g, parse_intervals(text))
    validate(dec, g)
    return dec


def _load_problem(args, rep: Report):
    """("sr", Problem, objective) or ("lcvp", ConstraintMatrix, objective)."""
    if args.distance is not None and args.distance < 1:
        raise UsageError("--distance must be >= 1")
    chosen = sum(x is not None for x in (args.problem, args.sigma, args.matrix))
    if args.sigma is not None and args.rho is None or args.rho is not None and args.sigma is None:
        raise UsageError("--sigma and --rho go together")
    if chosen != 1:
        raise UsageError("give exactly one of --problem, --sigma/--rho, --matrix")
    if args.matrix is not None:
        if args.distance is not None:
            raise UsageError("--distance conflicts with --matrix (the matrix header carries r)")
        text, digest = _read(args.matrix)
        mat = parse_matrix(text)
        objective = args.objective or "exists"
        if objective not in LCVP_OBJECTIVES:
            raise UsageError(f"LCVP objective must be one of {', '.join(LCVP_OBJECTIVES)}")
        rep.add("matrix", args.matrix)
        rep.add("matrix-sha256", digest)
        rep.add("q", mat.q)
        rep.add("distance", mat.r)
        rep.add("objective", objective)
        rep.add("d", mat.d)
        return "lcvp", mat, objective
    objective = args.objective
    if objective is not None and objective not in OBJECTIVES:
        raise UsageError(f"objective must be one of {', '.join(OBJECTIVES)}")
    if args.problem is not None:
        param = args.param if args.param is not None else DEFAULT_PARAM
        prob = catalog_lookup(args.problem, param, objective)
    else:
        prob = Problem(parse_set_spec(args.sigma), parse_set_spec(args.rho), objective or "min", "custom")
    rep.add("problem", prob.name)
    rep.add("sigma", prob.sigma)
    rep.add("rho", prob.rho)
    rep.add("objective", prob.objective)
    rep.add("distance", args.distance or 1)
    rep.add("d", prob.d)
    return "sr", prob, prob.objective


def _problem_args(p):
    p.add_argument("--graph", required=True, help="graph file (p edge / e u v lines)")
    p.add_argument("--problem", choices=CATALOG_NAMES)
    p.add_argument("--param", type=int, help=f"parameter for {', '.join(PARAMETERIZED)}")
    p.add_argument("--sigma")
    p.add_argument("--rho")
    p.add_argument("--matrix", help="LCVP matrix file (lcvp q r, then q rows)")
    p.add_argument("--objective")
    p.add_argument("--distance", type=int)


def _dec_args(p):
    p.add_argument("--dec", help="decomposition tree file")
    p.add_argument("--dec-order", help="caterpillar from a vertex order, e.g. 1,2,3 or 1..5")
    p.add_argument("--dec-interval", help="interval file (iv v l r); builds the left-endpoint caterpillar")


def _report_solution(rep: Report, kind, sol) -> int:
    rep.add("feasible", "yes" if sol.feasible else "no")
    if not sol.feasible:
        return EXIT_INFEASIBLE
    rep.add("value", sol.value)
    if kind == "sr":
        rep.add("witness", _fmt_set(sol.witness))
    else:
        for i, part in enumerate(sol.witness):
            rep.add(f"class-{i + 1}", _fmt_set(part))
    return EXIT_OK


def cmd_solve(args, rep: Report) -> int:
    started = time.perf_counter()
    g = _load_graph(args, rep)
    kind, spec, objective = _load_problem(args, rep)
    dec = _load_dec(args, g, rep)
    h = graph_power(g, spec.r if kind == "lcvp" else args.distance or 1)
    plan = build_plan(h, dec, spec.d, threads=args.threads) if h.n >= 2 else None
    if kind == "sr":
        sol = solve_sigma_rho(h, dec, spec, plan)
    else:
        sol = solve_lcvp(g, dec, spec, objective, plan)
    code = _report_solution(rep, kind, sol)
    if args.stats and plan is not None:
        counts = plan.class_counts()
        rep.add("max-classes", max(max(a, b) for _, a, b in counts))
        for side, inner, outer in counts:
            rep.add("cut", f"{_fmt_set(side)} | inner {inner} outer {outer}")
    if args.timings:
        rep.add("elapsed-seconds", f"{time.perf_counter() - started:.6f}")
    return code


def cmd_oracle(args, rep: Report) -> int:
    started = time.perf_counter()
    g = _load_graph(args, rep)
    kind, spec, objective = _load_problem(args, rep)
    _load_dec(args, g, rep, required=False)  # accepted for flag parity, unused
    if kind == "sr":
        res = brute_sigma_rho(g, spec, args.distance or 1)
        # exists reports the smallest witness, as the solver does
        wit = res.max_witness if objective == "max" else res.min_witness
        value = len(wit) if res.feasible else None
    else:
        res = brute_lcvp(g, spec)
        labels = res.max_witness if objective == "max-class-1" else res.min_witness
        if res.feasible:
            wit = tuple(frozenset(v for v, x in enumerate(labels) if x == i) for i in range(spec.q))
            value = len(wit[0])
    rep.add("feasible", "yes" if res.feasible else "no")
    code = EXIT_INFEASIBLE
    if res.feasible:
        code = EXIT_OK
        rep.add("value", value)
        if kind == "sr":
            rep.add("witness", _fmt_set(wit))
        else:
            for i, part in enumerate(wit):
                rep.add(f"class-{i + 1}", _fmt_set(part))
    if args.timings:
        rep.add("elapsed-seconds", f"{time.perf_counter() - started:.6f}")
    return code


def cmd_mimw(args, rep: Report) -> int:
    started = time.perf_counter()
    g = _load_graph(args, rep)
    dec = _load_dec(args, g, rep)
    report = mimw_of_dec(g, dec, threads=args.threads)
    for (a, b), A, value in report.cuts:
        rep.add("edge", f"{a + 1} {b + 1} side {_fmt_set(A)} cutmim {value}")
    rep.add("mimw", report.mimw)
    if args.timings:
        rep.add("elapsed-seconds", f"{time.perf_counter() - started:.6f}")
    return EXIT_OK


def cmd_power(args, rep: Report) -> int:
    g = _load_graph(args, rep)
    if args.k < 1:
        raise UsageError("-k must be >= 1")
    text = write_graph(graph_power(g, args.k))
    if args.out:
        Path(args.out).write_text(text)
        rep.add("k", args.k)
        rep.add("written", args.out)
        rep.add("edges", text.splitlines()[0].split()[3])
    else:
        rep.lines.append(text.rstrip("\n"))
    return EXIT_OK


def cmd_gen(args, rep: Report) -> int:
    rep.add("construction", args.construction)
    rep.add("seed", args.seed)
    if args.construction == "interval":
        g, intervals = gen.gen_random_interval(args.n, args.seed)
        files = {"graph": write_graph(g), "intervals": write_intervals(intervals),
                 "dec": write_decomposition(interval_decomposition(g, intervals))}
    else:
        rng = np.random.default_rng(args.seed)
        sizes = None
        if args.sizes:
            sizes = [int(x) for x in args.sizes.split(",")]
            if len(sizes) != args.k or max(sizes) > args.p or min(sizes) < 1:
                raise UsageError("--sizes needs k entries between 1 and p")
        pg = gen.random_source(args.k, args.p, args.density, rng, sizes)
        inst = gen.generate(args.construction, pg, args.d, certify=not args.no_certify)
        rep.add("n", inst.graph.n)
        rep.add("target", inst.target)
        rep.add("expected", "unknown" if inst.expected is None else ("yes" if inst.expected else "no"))
        files = {"source": write_graph(pg.graph), "graph": write_graph(inst.graph),
                 "meta": gen.write_metadata(inst)}
    if args.out:
        for ext, text in files.items():
            path = f"{args.out}.{ext}"
            Path(path).write_text(text)
            rep.add(ext, path)
    else:
        for ext, text in files.items():
            rep.lines.append(f"# --- {ext}")
            rep.lines.append(text.rstrip("\n"))
    return EXIT_OK


def cmd_catalog(args, rep: Report) -> int:
    param = args.param if args.param is not None else DEFAULT_PARAM
    for name in CATALOG_NAMES:
        sigma, rho, objective, d_col = catalog_row(name, param)
        d = max(d_value(sigma), d_value(rho))
        label = f"{name}[{param}]" if name in PARAMETERIZED else name
        rep.add(label, f"sigma {sigma} rho {rho} d {d} listed-d {d_col} default {objective}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mimsolve", description="(sigma, rho) / LCVP solver over decomposition trees")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="dynamic program over a decomposition")
    _problem_args(p)
    _dec_args(p)
    p.add_argument("--stats", action="store_true", help="print class counts per cut")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force answer (small graphs)")
    _problem_args(p)
    _dec_args(p)
    p.add_argument("--stats", action="store_true", help="accepted for parity with solve")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("mimw", help="cutmim of every tree edge")
    p.add_argument("--graph", required=True)
    _dec_args(p)
    p.add_argument("--timings", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_mimw)

    p = sub.add_parser("power", help="k-th graph power")
    p.add_argument("--graph", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("construction", choices=gen.CONSTRUCTIONS + ("interval",))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--n", type=int, default=10, help="vertex count for interval graphs")
    p.add_argument("--sizes", help="class sizes before padding, e.g. 2,1,2")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-certify", action="store_true", help="skip the brute-force source answer")
    p.add_argument("--out", help="file prefix; writes <prefix>.graph and friends")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("catalog", help="list the named (sigma, rho) problems")
    p.add_argument("--param", type=int)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report()
    rep.add("command", args.command)
    try:
        code = args.func(args, rep)
    except BudgetExceeded as exc:
        rep.add("error", f"budget exceeded: {exc}")
        code = EXIT_BUDGET
    except (UsageError, GraphFormatError, DecompositionError, SetSpecError, OracleTooLarge,
            KeyError, ValueError, OSError) as exc:
        rep.emit(sys.stdout)
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"mimsolve: error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    rep.emit(sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
