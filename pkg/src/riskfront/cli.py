"""Command line front end.

Every command writes its artifacts into ``--out`` (atomically) together with a
``manifest.json`` recording the command, configuration echo, seed, version,
output files and wall-clock duration.

Exit codes: 0 success, 2 validation error, 3 capacity error, 4 infeasible.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .core import (
    ObjectiveTables,
    Scenario,
    fitness,
    has_feasible,
    is_feasible,
    marginal_failure_probabilities,
    objective_point,
    structural_values,
)
from .envelope import build_envelope, containment_report, envelope_csv, load_series
from .errors import InfeasibleError, InputError, RiskfrontError
from .ga import STATS_HEADER, GaConfig, run_ga
from .io import atomic_write, csv_text, json_text
from .oracle import count_feasible, enumerate_distributions, exact_pareto_front
from .pareto import pareto_optimize, sweep

BUILTINS = {"fig2": Scenario.fig2}
COMPARE_METHODS = ("oracle", "ga", "ga-pareto")
OBJECTIVE_CHOICES = ("cost", "risk", "weighted")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weights(text: str) -> tuple[float, float]:
    try:
        parts = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected W1,W2, got {text!r}") from None
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected W1,W2, got {text!r}")
    return parts


def _methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    unknown = [m for m in methods if m not in COMPARE_METHODS]
    if unknown or not methods:
        raise argparse.ArgumentTypeError(f"methods must be drawn from {COMPARE_METHODS}")
    return methods


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riskfront", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--scenario", metavar="PATH", help="scenario JSON file")
    src.add_argument("--builtin", choices=sorted(BUILTINS), help="built-in scenario (default fig2)")
    common.add_argument("--demand", type=int, help="override the scenario demand")
    common.add_argument("--weights", type=_weights, metavar="W1,W2", help="scalarization weights")
    common.add_argument("--relax", action="store_true", help="drop the retailer cost ceiling")
    common.add_argument("--out", default="riskfront-out", metavar="DIR", help="output directory")

    gaflags = argparse.ArgumentParser(add_help=False)
    gaflags.add_argument("--seed", type=int, default=0)
    gaflags.add_argument("--population", type=int, default=200)
    gaflags.add_argument("--generations", type=int, default=100)
    gaflags.add_argument("--crossover-ratio", type=float, default=0.8)

    p = sub.add_parser("evaluate", parents=[common], help="score listed distributions")
    p.add_argument("distributions", help="file of integer rows, one distribution per line")

    for name in ("enumerate", "oracle"):
        p = sub.add_parser(name, parents=[common], help="exhaustive enumeration")
        p.add_argument("--front", action="store_true", help="also write the exact Pareto front")

    p = sub.add_parser("ga", parents=[common, gaflags], help="single-objective genetic run")
    p.add_argument("--objective", choices=OBJECTIVE_CHOICES, default="weighted")

    p = sub.add_parser("pareto", parents=[common, gaflags], help="two-objective GA per demand")
    p.add_argument("--demands", type=_int_list, metavar="LIST", help="comma-separated demands")
    p.add_argument("--indicators", action="store_true", help="write per-generation front distances")

    p = sub.add_parser("compare", parents=[common, gaflags], help="solution counts per method")
    p.add_argument("--demands", type=_int_list, metavar="LIST", required=True)
    p.add_argument("--methods", type=_methods, default=list(COMPARE_METHODS), metavar="LIST")

    p = sub.add_parser("envelope", parents=[common, gaflags], help="cost envelope over a demand series")
    p.add_argument("--demands", type=_int_list, metavar="LIST", required=True, help="sweep grid")
    p.add_argument("--demand-series", required=True, metavar="CSV")
    p.add_argument("--demand-columns", default="t,demand", metavar="T,V")
    p.add_argument("--forecast", required=True, metavar="CSV")
    p.add_argument("--forecast-columns", default="t,value", metavar="T,V")
    return parser


def load_scenario(args: argparse.Namespace) -> Scenario:
    scen = Scenario.load(args.scenario) if args.scenario else BUILTINS[args.builtin or "fig2"]()
    if args.demand is not None:
        scen = scen.with_demand(args.demand)
    if args.weights is not None:
        scen = scen.with_weights(*args.weights)
    return scen


def require_feasible(scen: Scenario, relax: bool) -> None:
    """Solver commands refuse scenarios whose cost ceiling admits no distribution."""
    if not has_feasible(scen, relax):
        cheapest = min(s.unit_cost for s in scen.suppliers)
        raise InfeasibleError(
            f"no distribution meets the cost ceiling: cheapest unit cost {cheapest:g} "
            f"exceeds retailer coefficient {scen.retailer_coefficient:g} (use --relax to drop it)"
        )


def ga_config(args: argparse.Namespace) -> GaConfig:
    return GaConfig(
        initial_population=args.population,
        crossover_ratio=args.crossover_ratio,
        max_generations=args.generations,
        seed=args.seed,
        relax=args.relax,
    )


def read_distributions(path: str | Path, scen: Scenario) -> list[tuple[int, ...]]:
    """Integer rows separated by commas or whitespace; a non-numeric first line is a header."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.replace(",", " ").split()
        try:
            dist = tuple(int(v) for v in fields)
        except ValueError:
            if not rows and lineno == 1:
                continue
            raise InputError(f"{path}: row {lineno} is not a list of integers") from None
        if len(dist) != scen.n:
            raise InputError(f"{path}: row {lineno} has {len(dist)} entries, scenario has {scen.n} suppliers")
        if any(x < 0 for x in dist):
            raise InputError(f"{path}: row {lineno} has negative entries")
        if sum(dist) != scen.demand:
            raise InputError(f"{path}: row {lineno} sums to {sum(dist)}, demand is {scen.demand}")
        rows.append(dist)
    if not rows:
        raise InputError(f"{path}: no distributions")
    return rows


def _xcols(n: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


class Run:
    """Collects outputs for one command and writes the manifest last."""

    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.args = args
        self.argv = list(argv)
        self.out = Path(args.out)
        self.outputs: list[str] = []
        self.started = time.perf_counter()

    def write(self, name: str, text: str) -> Path:
        path = atomic_write(self.out / name, text)
        self.outputs.append(name)
        return path

    def finish(self, scen: Scenario) -> None:
        config = {
            k: v for k, v in sorted(vars(self.args).items()) if k not in ("command", "out") and v is not None
        }
        manifest = {
            "command": self.args.command,
            "argv": self.argv,
            "scenario": self.args.scenario or f"builtin:{self.args.builtin or 'fig2'}",
            "scenario_echo": scen.to_dict(),
            "config": config,
            "seed": getattr(self.args, "seed", None),
            "version": __version__,
            "outputs": self.outputs,
            "duration_s": round(time.perf_counter() - self.started, 6),
        }
        atomic_write(self.out / "manifest.json", json_text(manifest))


def cmd_evaluate(args, run: Run) -> Scenario:
    scen = load_scenario(args)
    rows = read_distributions(args.distributions, scen)
    n = scen.n
    header = (
        _xcols(n) + _xcols(n, "p") + _xcols(n, "alpha") + _xcols(n, "beta")
        + ["total_cost", "risk_index", "fitness", "feasible"]
    )
    table = []
    for dist in rows:
        probs = marginal_failure_probabilities(dist, scen)
        ab = [structural_values(s.profile, p) for s, p in zip(scen.suppliers, probs)]
        point = objective_point(dist, scen)
        table.append(
            list(dist) + list(probs) + [a for a, _ in ab] + [b for _, b in ab]
            + [point.total_cost, point.risk_index, fitness(dist, scen), is_feasible(dist, scen)]
        )
    text = csv_text(header, table)
    run.write("evaluate.csv", text)
    sys.stdout.write(text)
    return scen


def cmd_enumerate(args, run: Run) -> Scenario:
    scen = load_scenario(args)
    enum = enumerate_distributions(scen, args.relax)
    tables = ObjectiveTables.build(scen)
    header = _xcols(scen.n) + ["total_cost", "risk_index", "feasible"]
    rows = []
    for X in enum.blocks():
        columns = (tables.costs(X).tolist(), tables.risks(X).tolist(), tables.feasible(X).tolist())
        rows.extend([*x, c, r, f] for x, c, r, f in zip(X.tolist(), *columns))
    run.write("enumerate.csv", csv_text(header, rows))
    report = enum.report
    run.write(
        "report.json",
        json_text({"demand": report.demand, "feasible_count": report.feasible_count, "relaxed_count": report.relaxed_count}),
    )
    if args.front:
        front = exact_pareto_front(scen, args.relax)
        run.write(
            "front.csv",
            csv_text(
                header,
                (list(fp.distribution) + [fp.total_cost, fp.risk_index, is_feasible(fp.distribution, scen)] for fp in front),
            ),
        )
    print(f"demand {report.demand}: {report.feasible_count} of {report.relaxed_count} compositions pass")
    return scen


def cmd_ga(args, run: Run) -> Scenario:
    scen = load_scenario(args)
    require_feasible(scen, args.relax)
    result = run_ga(scen, ga_config(args), args.objective)
    point = objective_point(result.best, scen)
    best = {
        "objective": result.objective,
        "demand": scen.demand,
        "distribution": list(result.best),
        "fitness": result.best_fitness,
        "total_cost": point.total_cost,
        "risk_index": point.risk_index,
        "generations": len(result.history),
        "evaluations": result.evaluations,
    }
    run.write("best.json", json_text(best))
    run.write("stats.csv", csv_text(STATS_HEADER, (h.row() for h in result.history)))
    print(f"best {result.best} fitness {result.best_fitness:.6f}")
    return scen


def _demands(args, scen: Scenario) -> list[int]:
    return args.demands if args.demands else [scen.demand]


def cmd_pareto(args, run: Run) -> Scenario:
    scen = load_scenario(args)
    require_feasible(scen, args.relax)
    result = sweep(scen, _demands(args, scen), ga_config(args), indicators=args.indicators)
    run.write(
        "triple.csv",
        csv_text(("demand", "min_fc", "max_fc", "min_ri"), ([d, *r.triple] for d, r in result.entries)),
    )
    header = ["demand"] + _xcols(scen.n) + ["total_cost", "risk_index", "source"]
    rows = []
    for d, r in result.entries:
        for fp, source in zip(r.front, r.front_sources):
            rows.append([d, *fp.distribution, fp.total_cost, fp.risk_index, source])
    run.write("front.csv", csv_text(header, rows))
    if args.indicators:
        for d, r in result.entries:
            run.write(
                f"indicators_d{d}.csv",
                csv_text(("generation", "pareto_distance"), enumerate(r.indicators, start=1)),
            )
    for d, r in result.entries:
        print(f"demand {d}: min_fc {r.min_cost:g} max_fc {r.max_cost:g} min_ri {r.min_risk:.6g}")
    return scen


def cmd_compare(args, run: Run) -> Scenario:
    scen = load_scenario(args)
    cfg = ga_config(args)
    rows = []
    for d in args.demands:
        inst = scen.with_demand(d)
        require_feasible(inst, args.relax)
        for method in args.methods:
            start = time.perf_counter()
            if method == "oracle":
                solutions = count_feasible(inst, args.relax).feasible_count
            elif method == "ga":
                solutions = run_ga(inst, cfg, "weighted").evaluations
            else:
                solutions = pareto_optimize(inst, cfg).evaluations
            rows.append([d, method, solutions, int(round((time.perf_counter() - start) * 1000))])
    run.write("compare.csv", csv_text(("demand", "method", "solutions", "runtime_ms"), rows))
    for row in rows:
        print(f"demand {row[0]} {row[1]}: {row[2]} solutions")
    return scen


def _columns(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise InputError(f"column map must be 'T,V', got {text!r}")
    return parts[0], parts[1]


def cmd_envelope(args, run: Run) -> Scenario:
    scen = load_scenario(args)
    require_feasible(scen, args.relax)
    demand_series = load_series(args.demand_series, _columns(args.demand_columns))
    forecast = load_series(args.forecast, _columns(args.forecast_columns))
    result = sweep(scen, args.demands, ga_config(args))
    env = build_envelope(demand_series, result)
    report = containment_report(forecast, env)
    run.write(
        "triple.csv",
        csv_text(("demand", "min_fc", "max_fc", "min_ri"), ([d, *r.triple] for d, r in result.entries)),
    )
    run.write("envelope.csv", envelope_csv(env))
    run.write("containment.json", json_text(report))
    print(f"{report['inside']} of {report['points']} points inside ({report['ratio']:.3f})")
    return scen


COMMANDS = {
    "evaluate": cmd_evaluate,
    "enumerate": cmd_enumerate,
    "oracle": cmd_enumerate,
    "ga": cmd_ga,
    "pareto": cmd_pareto,
    "compare": cmd_compare,
    "envelope": cmd_envelope,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    run = Run(args, argv)
    try:
        scen = COMMANDS[args.command](args, run)
        run.finish(scen)
    except RiskfrontError as exc:
        print(f"riskfront: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"riskfront: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
