"""Experiment runner: flat-file configs, presets for the benchmark tables,
deterministic seeding, and CSV reporting."""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from . import game, netgraph
from .dynamics import stabilize
from .equilibria import empirical_cost_stats, exact_efficiency
from .game import SGG, SGG_AC, GameConfig
from .netgraph import ConfigError, FamilySpec, Graph
from .optimum import export_ilp, min_dominating_exact

CSV_COLUMNS = [
    "dataset", "n", "edges", "variant", "k", "b", "p", "a", "xi", "runs",
    "seed", "opt_cost", "opt_proven", "mean_cost", "std_cost", "min_cost",
    "max_cost", "mean_passes", "poa_exact", "pos_exact",
]

KNOWN_ANALYSES = ("optimum", "dynamics", "exact_efficiency", "stabilize",
                  "export_lp")

WORKERS_ENV = "SHAREGOODS_WORKERS"


@dataclass
class ExperimentConfig:
    dataset: str
    graph: Graph
    variant: str
    k: int
    b: float = 2.0
    p: float = 1.0
    a: float | None = None
    xi_values: tuple[int, ...] | None = None
    runs: int = 1000
    master_seed: int = 0
    analyses: tuple[str, ...] = ("optimum", "dynamics")
    out: str | None = None

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.variant == SGG_AC and (self.a is None) == (not self.xi_values):
            raise ConfigError("SGG-AC needs exactly one of a / xi")
        if self.variant == SGG and (self.a is not None or self.xi_values):
            raise ConfigError("a / xi apply only to SGG-AC")
        unknown = set(self.analyses) - set(KNOWN_ANALYSES)
        if unknown:
            raise ConfigError(f"unknown analyses: {sorted(unknown)}")


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _game_configs(config: ExperimentConfig):
    """(xi, GameConfig) pairs for the rows of this experiment."""
    if config.variant == SGG:
        return [(None, GameConfig(SGG, config.k, b=config.b, p=config.p))]
    if config.a is not None:
        cfg = GameConfig(SGG_AC, config.k, b=config.b, p=config.p, a=config.a)
        return [(cfg.xi, cfg)]
    return [(xi, GameConfig(SGG_AC, config.k, b=config.b, p=config.p, xi=xi))
            for xi in config.xi_values]


def _side_path(config: ExperimentConfig, xi, suffix: str) -> Path:
    base = Path(config.out) if config.out else Path(f"{config.dataset}")
    tag = config.variant.lower().replace("-", "")
    if xi is not None:
        tag += f"_xi{xi}"
    safe = "".join(ch if ch.isalnum() or ch in "._-" else "_"
                   for ch in base.stem + f"_{config.dataset}_{tag}_k{config.k}")
    return base.parent / (safe + suffix)


def compute_row(config: ExperimentConfig, xi, cfg: GameConfig) -> dict:
    g = config.graph
    row = {c: "" for c in CSV_COLUMNS}
    row.update(dataset=config.dataset, n=g.n, edges=g.edge_count,
               variant=cfg.variant, k=cfg.k, b=cfg.b, p=cfg.p,
               runs=config.runs, seed=config.master_seed)
    if cfg.variant == SGG_AC:
        row["a"] = cfg.a
        row["xi"] = cfg.xi
    opt = None
    if "optimum" in config.analyses or "stabilize" in config.analyses:
        opt = min_dominating_exact(g, cfg.k, p=cfg.p)
    if "optimum" in config.analyses:
        row["opt_cost"] = opt.cost
        row["opt_proven"] = opt.proven_optimal
    if "dynamics" in config.analyses:
        stats = empirical_cost_stats(g, cfg, config.runs, config.master_seed)
        row["mean_cost"] = stats.mean_cost
        row["std_cost"] = stats.std_cost
        row["min_cost"] = stats.min_cost
        row["max_cost"] = stats.max_cost
        row["mean_passes"] = stats.mean_passes
    if "exact_efficiency" in config.analyses:
        report = exact_efficiency(g, cfg)
        row["opt_cost"] = report.opt_cost
        row["poa_exact"] = report.poa
        row["pos_exact"] = report.pos
    if "stabilize" in config.analyses and cfg.variant == SGG_AC:
        profile = stabilize(g, cfg, opt.owners)
        cost = game.social_cost(g, cfg, profile)
        path = _side_path(config, xi, ".stabilized.profile")
        path.write_text(game.serialize_profile(profile))
        print(f"stabilize {config.dataset} xi={cfg.xi}: cost={_fmt(cost)} "
              f"-> {path}")
    if "export_lp" in config.analyses:
        path = _side_path(config, xi, ".lp")
        path.write_text(export_ilp(g, cfg.k, cfg.p))
        print(f"export_lp {config.dataset} k={cfg.k} -> {path}")
    return row


def _row_task(args):
    return compute_row(*args)


def run_experiment(config: ExperimentConfig) -> list[dict]:
    """One CSV row per (graph, variant, xi); deterministic row order."""
    tasks = [(config, xi, cfg) for xi, cfg in _game_configs(config)]
    workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_row_task, tasks))
    return [compute_row(*t) for t in tasks]


def write_csv(rows: list[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])


TABLE3_XI_GRID = (1, 2, 5, 10, 20)


def _dataset_label(spec: FamilySpec) -> str:
    if spec.family == "karate":
        return "karate"
    if spec.family == "er_random":
        return f"er_random({spec.n},{spec.prob:g})"
    if spec.family in ("two_center_tree", "center_arms_tree"):
        return f"{spec.family}({spec.k},{spec.m})"
    return f"{spec.family}({spec.n})"


def presets(name: str, runs: int = 1000, master_seed: int = 0,
            out: str | None = None) -> list[ExperimentConfig]:
    """Fully populated experiment configurations for the benchmark tables
    (p=1, b=2, 1000 runs; xi grid 1/2/5/10/20 at k=1; xi=6 for k in 2..4)."""
    def rows(specs, k, xi_grid):
        configs = []
        for spec in specs:
            g = netgraph.generate(spec)
            label = _dataset_label(spec)
            configs.append(ExperimentConfig(label, g, SGG, k, runs=runs,
                                            master_seed=master_seed, out=out))
            configs.append(ExperimentConfig(label, g, SGG_AC, k,
                                            xi_values=tuple(xi_grid),
                                            runs=runs,
                                            master_seed=master_seed, out=out))
        return configs

    if name == "table3_synthetic":
        specs = [FamilySpec("star", n=100), FamilySpec("chain", n=100),
                 FamilySpec("er_random", n=50, prob=0.1, seed=master_seed)]
        return rows(specs, 1, TABLE3_XI_GRID)
    if name == "table3_karate":
        return rows([FamilySpec("karate")], 1, TABLE3_XI_GRID)
    if name == "table4_karate":
        configs = []
        for k in (2, 3, 4):
            configs.extend(rows([FamilySpec("karate")], k, (6,)))
        return configs
    raise ConfigError(f"unknown preset {name!r}")


def parse_config_file(path) -> dict:
    """Flat "key = value" document; '#' comments; later keys win."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def _build_graph_from_keys(values: dict) -> tuple[str, Graph]:
    if "edge_list" in values:
        path = values["edge_list"]
        g = netgraph.load_edge_list(Path(path).read_text())
        return Path(path).name, g
    if "family" not in values:
        raise ConfigError("config needs either 'family' or 'edge_list'")
    spec = FamilySpec(
        family=values["family"],
        n=int(values["n"]) if "n" in values else None,
        k=int(values["arm_len"]) if "arm_len" in values else None,
        m=int(values["m"]) if "m" in values else None,
        prob=float(values["prob"]) if "prob" in values else None,
        seed=int(values["graph_seed"]) if "graph_seed" in values else None,
    )
    return _dataset_label(spec), netgraph.generate(spec)


def config_from_values(values: dict) -> ExperimentConfig:
    dataset, g = _build_graph_from_keys(values)
    variant = values.get("variant", SGG)
    xi_values = None
    if "xi" in values and values["xi"]:
        xi_values = tuple(int(x) for x in values["xi"].split(","))
    analyses = tuple(a.strip() for a in
                     values.get("analyses", "optimum,dynamics").split(",")
                     if a.strip())
    return ExperimentConfig(
        dataset=dataset,
        graph=g,
        variant=variant,
        k=int(values.get("k", "1")),
        b=float(values.get("b", "2")),
        p=float(values.get("p", "1")),
        a=float(values["a"]) if values.get("a") else None,
        xi_values=xi_values,
        runs=int(values.get("runs", "1000")),
        master_seed=int(values.get("seed", "0")),
        analyses=analyses,
        out=values.get("out"),
    )


def _family_graph_from_args(args) -> tuple[str, Graph]:
    if args.graph:
        g = netgraph.load_edge_list(Path(args.graph).read_text())
        return Path(args.graph).name, g
    if not args.family:
        raise ConfigError("give --family or --graph")
    spec = FamilySpec(family=args.family, n=args.n, k=args.arm_len, m=args.m,
                      prob=args.prob, seed=args.graph_seed)
    return _dataset_label(spec), netgraph.generate(spec)


def _add_family_flags(parser) -> None:
    parser.add_argument("--graph", help="edge-list file")
    parser.add_argument("--family", help="built-in graph family")
    parser.add_argument("--n", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--arm-len", dest="arm_len", type=int,
                        help="arm length for the tree families")
    parser.add_argument("--prob", type=float)
    parser.add_argument("--graph-seed", dest="graph_seed", type=int)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sharegoods",
        description="Shareable-goods games on networks: equilibria, "
                    "dynamics, and social inefficiency.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run experiments from a config file")
    p_run.add_argument("config")
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--runs", type=int)
    p_run.add_argument("--xi")
    p_run.add_argument("--a", type=float)
    p_run.add_argument("--variant", choices=(SGG, SGG_AC))
    p_run.add_argument("--out")

    p_preset = sub.add_parser("preset", help="run a built-in table preset")
    p_preset.add_argument("name")
    p_preset.add_argument("--out", required=True)
    p_preset.add_argument("--runs", type=int, default=1000)
    p_preset.add_argument("--seed", type=int, default=0)

    p_opt = sub.add_parser("optimum", help="exact minimum dominating set")
    _add_family_flags(p_opt)
    p_opt.add_argument("--k", type=int, default=1)
    p_opt.add_argument("--p", type=float, default=1.0)

    p_lp = sub.add_parser("export-lp", help="write the covering IP as an LP file")
    _add_family_flags(p_lp)
    p_lp.add_argument("--k", type=int, default=1)
    p_lp.add_argument("--p", type=float, default=1.0)
    p_lp.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            values = parse_config_file(args.config)
            for key in ("seed", "runs", "xi", "a", "variant", "out"):
                override = getattr(args, key)
                if override is not None:
                    values[key] = str(override)
            config = config_from_values(values)
            rows = run_experiment(config)
            if config.out:
                write_csv(rows, config.out)
                print(f"wrote {len(rows)} rows to {config.out}")
            else:
                writer = csv.writer(sys.stdout, lineterminator="\n")
                writer.writerow(CSV_COLUMNS)
                for row in rows:
                    writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
        elif args.command == "preset":
            configs = presets(args.name, runs=args.runs,
                              master_seed=args.seed, out=args.out)
            rows = []
            for config in configs:
                rows.extend(run_experiment(config))
            write_csv(rows, args.out)
            print(f"wrote {len(rows)} rows to {args.out}")
        elif args.command == "optimum":
            label, g = _family_graph_from_args(args)
            result = min_dominating_exact(g, args.k, p=args.p)
            status = "optimal" if result.proven_optimal else "incumbent"
            print(f"{label}: k={args.k} cost={_fmt(result.cost)} ({status}) "
                  f"owners={sorted(result.owners)}")
        elif args.command == "export-lp":
            label, g = _family_graph_from_args(args)
            Path(args.out).write_text(export_ilp(g, args.k, args.p))
            print(f"wrote LP for {label} (k={args.k}) to {args.out}")
    except (ConfigError, netgraph.ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
