"""Experiment runner: entropy curves, family comparisons, random-graph ensembles,
mean-field overlays, and invariant audits, emitted as CSV (and optional SVG)."""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import closed_forms, entropy, graphs
from .diffusion import (
    Distribution,
    NumericFailure,
    default_time_grid,
    expm_oracle,
    heat_kernel,
    kernel_at,
    log_time_grid,
    mixing_estimate,
)
from .graphs import Graph
from .spectral import LaplacianKind, check_weyl_monotonicity, laplacian, spectral_gap

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_AUDIT = 4


class ConfigError(ValueError):
    """Invalid command-line configuration."""


# ----------------------------------------------------------------------------
# spec parsing


def parse_graph_spec(spec: str, seed: int) -> tuple[Graph, str]:
    """Build a graph from a `family:params` spec string; returns (graph, label)."""
    parts = spec.split(":")
    family = parts[0]
    try:
        if family == "complete":
            (n,) = map(int, parts[1:])
            return graphs.make_complete(n), f"complete_{n}"
        if family == "path":
            (n,) = map(int, parts[1:])
            return graphs.make_path(n), f"path_{n}"
        if family == "circulant":
            n = int(parts[1])
            steps = tuple(int(s) for s in parts[2].split(","))
            label = "circulant_%d_%s" % (n, "-".join(map(str, steps)))
            return graphs.make_circulant(n, graphs.StepSet.of(*steps)), label
        if family == "er":
            n = int(parts[1])
            p = float(parts[2])
            return graphs.make_erdos_renyi(n, p, seed), f"er_{n}_{p:g}"
        if family == "ws":
            n = int(parts[1])
            k = int(parts[2])
            p = float(parts[3])
            return graphs.make_watts_strogatz(n, k, p, seed), f"ws_{n}_{k}_{p:g}"
        if family == "edgelist":
            path = ":".join(parts[1:])
            return graphs.read_edge_list(path), "edgelist"
    except (ValueError, IndexError, OSError) as exc:
        raise ConfigError(f"bad graph spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown graph family {family!r}")


def parse_init(init: str, n: int) -> tuple[Distribution, str]:
    if init == "uniform":
        return Distribution.uniform(n), "uniform"
    if init.startswith("delta:"):
        i = int(init.split(":", 1)[1])
        try:
            return Distribution.delta(n, i), f"delta_{i}"
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if init.startswith("file:"):
        path = init.split(":", 1)[1]
        try:
            vals = np.loadtxt(path).ravel()
            return Distribution(vals), "file"
        except (OSError, ValueError) as exc:
            raise ConfigError(f"bad initial-distribution file {path!r}: {exc}") from exc
    raise ConfigError(f"unknown init spec {init!r}")


def parse_grid(grid: str, g: Graph, dynamic: LaplacianKind) -> np.ndarray:
    if grid == "auto":
        return default_time_grid(_relaxation_gap(g, dynamic))
    parts = grid.split(":")
    try:
        kind = parts[0]
        t_min, t_max = float(parts[1]), float(parts[2])
        points = int(parts[3])
        if kind == "log":
            return log_time_grid(t_min, t_max, points)
        if kind == "lin":
            if not (0 <= t_min < t_max) or points < 2:
                raise ValueError("need 0 <= t_min < t_max and points >= 2")
            return np.linspace(t_min, t_max, points)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad grid spec {grid!r}: {exc}") from exc
    raise ConfigError(f"unknown grid kind {grid!r}")


def _relaxation_gap(g: Graph, dynamic: LaplacianKind) -> float | None:
    """Slowest relaxation rate used for the auto grid, or None if unavailable."""
    if g.n < 2:
        return None
    if dynamic is LaplacianKind.COMBINATORIAL:
        gap = float(np.linalg.eigvalsh(laplacian(g, dynamic))[1])
    else:
        # L_RW shares its (real) spectrum with the symmetrized D^-1/2 L D^-1/2
        deg = np.array(g.degrees, dtype=float)
        lap = laplacian(g, LaplacianKind.COMBINATORIAL)
        inv_sqrt = 1.0 / np.sqrt(deg)
        gap = float(np.linalg.eigvalsh(lap * np.outer(inv_sqrt, inv_sqrt))[1])
    return gap if gap > 1e-10 else None


# ----------------------------------------------------------------------------
# output helpers


def write_csv(path: str, header: list[str], columns: list[np.ndarray], meta: list[str] | None = None) -> None:
    """CSV with 17-significant-digit values; metadata as leading # comments."""
    with open(path, "w") as fh:
        for line in meta or []:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join("%.17g" % x for x in row) + "\n")


def write_svg(path: str, times: np.ndarray, series: dict[str, np.ndarray], title: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for label, vals in series.items():
        axes[0].plot(times, vals, label=label)
        axes[1].plot(times, vals, label=label)
    axes[1].set_xscale("log")
    for ax, sub in zip(axes, ("linear time", "log time")):
        ax.set_xlabel(f"t ({sub})")
        ax.set_ylabel("conditional entropy (nats)")
    axes[0].legend(fontsize="small")
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def _dynamic_kind(name: str) -> LaplacianKind:
    return LaplacianKind.COMBINATORIAL if name == "heat" else LaplacianKind.RANDOM_WALK


def _sample_seeds(master: int, samples: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(master).generate_state(samples)]


# ----------------------------------------------------------------------------
# commands


def run_curve(args: argparse.Namespace) -> int:
    g, label = parse_graph_spec(args.graph, args.seed)
    kind = _dynamic_kind(args.dynamic)
    p0, init_label = parse_init(args.init, g.n)
    if g.n == 1:
        grid = np.linspace(0.0, 1.0, 10) if args.grid == "auto" else parse_grid(args.grid, g, kind)
        values = np.zeros_like(grid)
    else:
        grid = parse_grid(args.grid, g, kind)
        k = heat_kernel(g, kind)
        curve = entropy.entropy_curve(k, p0, grid, initial_label=init_label)
        values = curve.values
    if args.out_csv:
        write_csv(
            args.out_csv,
            ["t", "entropy"],
            [grid, values],
            meta=[f"graph={label}", f"dynamic={args.dynamic}", f"init={init_label}"],
        )
    if args.out_svg:
        write_svg(args.out_svg, grid, {label: values}, f"{label} ({args.dynamic})")
    return EXIT_OK


def run_compare(args: argparse.Namespace) -> int:
    built = [parse_graph_spec(spec, args.seed) for spec in args.graph]
    sizes = {g.n for g, _ in built}
    if len(sizes) != 1:
        raise ConfigError(f"compare needs graphs of one size, got sizes {sorted(sizes)}")
    n = sizes.pop()
    kind = _dynamic_kind(args.dynamic)
    # reference curves always appended
    built.append((graphs.make_complete(n), f"complete_{n}_ref"))
    built.append((graphs.make_path(n), f"path_{n}_ref"))
    grid = parse_grid(args.grid, built[0][0], kind)
    p0, init_label = parse_init(args.init, n)
    series: dict[str, np.ndarray] = {}
    for g, label in built:
        k = heat_kernel(g, kind)
        series[label] = entropy.entropy_curve(k, p0, grid, initial_label=init_label).values
    if args.out_csv:
        write_csv(
            args.out_csv,
            ["t"] + list(series),
            [grid] + list(series.values()),
            meta=[f"dynamic={args.dynamic}", f"init={init_label}"],
        )
    if args.out_svg:
        write_svg(args.out_svg, grid, series, f"comparison, n={n}")
    return EXIT_OK


def _ensemble_curves(args: argparse.Namespace) -> tuple[np.ndarray, np.ndarray, list[str], int]:
    """Sample curves for a stochastic family; returns (grid, curves, labels, n_disconnected)."""
    family = args.graph.split(":", 1)[0]
    if family not in ("er", "ws"):
        raise ConfigError(f"ensemble needs a stochastic family (er/ws), got {family!r}")
    if args.samples < 1:
        raise ConfigError("samples must be >= 1")
    seeds = _sample_seeds(args.seed, args.samples)
    kind = _dynamic_kind(args.dynamic)
    sampled = [parse_graph_spec(args.graph, s) for s in seeds]
    grid = parse_grid(args.grid, sampled[0][0], kind)
    curves = []
    disconnected = 0
    for g, _ in sampled:
        if not graphs.is_connected(g):
            disconnected += 1
        p0, init_label = parse_init(args.init, g.n)
        k = heat_kernel(g, kind)
        curves.append(entropy.entropy_curve(k, p0, grid, initial_label=init_label).values)
    return grid, np.array(curves), [lab for _, lab in sampled], disconnected


def run_ensemble(args: argparse.Namespace) -> int:
    grid, curves, _, disconnected = _ensemble_curves(args)
    mean = curves.mean(axis=0)
    std = curves.std(axis=0) if curves.shape[0] > 1 else np.zeros_like(mean)
    meta = [
        f"graph={args.graph}",
        f"samples={args.samples}",
        f"seed={args.seed}",
        f"disconnected_samples={disconnected}",
    ]
    header = ["t", "mean", "std"]
    columns = [grid, mean, std]
    if args.per_sample:
        for i, c in enumerate(curves):
            header.append(f"sample_{i}")
            columns.append(c)
    if args.out_csv:
        write_csv(args.out_csv, header, columns, meta=meta)
    if args.out_svg:
        write_svg(args.out_svg, grid, {"mean": mean}, f"ensemble {args.graph}")
    return EXIT_OK


def run_meanfield(args: argparse.Namespace) -> int:
    parts = args.graph.split(":")
    if parts[0] != "er":
        raise ConfigError("meanfield needs an er:<n>:<p> graph spec")
    n, p = int(parts[1]), float(parts[2])
    grid, curves, _, disconnected = _ensemble_curves(args)
    empirical = curves.mean(axis=0)
    mf = np.array([closed_forms.meanfield_er_entropy(n, p, t) for t in grid])
    gap = mf - empirical
    if args.out_csv:
        write_csv(
            args.out_csv,
            ["t", "empirical_mean", "mean_field", "gap"],
            [grid, empirical, mf, gap],
            meta=[
                f"graph={args.graph}",
                f"samples={args.samples}",
                f"seed={args.seed}",
                f"disconnected_samples={disconnected}",
            ],
        )
    if args.out_svg:
        write_svg(
            args.out_svg,
            grid,
            {"empirical_mean": empirical, "mean_field": mf},
            f"mean-field overlay {args.graph}",
        )
    return EXIT_OK


# ----------------------------------------------------------------------------
# audit


def _audit_counterexample(n: int) -> list[tuple[str, float, float, bool]]:
    ts = np.geomspace(1e-2, 20.0, 80)
    closed = np.array([entropy.counterexample_entropy(t, n) for t in ts])
    matrix = np.array([entropy.counterexample_entropy_matrix(t, n) for t in ts])
    agreement = float(np.abs(closed - matrix).max())
    drop = float((closed[:-1] - closed[1:]).max())
    return [
        ("counterexample_closed_vs_matrix", agreement, 1e-10, agreement <= 1e-10),
        # this chain is supposed to violate monotonicity; detecting the drop is the pass
        ("counterexample_strict_decrease", drop, 1e-6, drop > 1e-6),
    ]


def _audit_graph(g: Graph, seed: int) -> list[tuple[str, float, float, bool]]:
    rng = np.random.default_rng(seed)
    k = heat_kernel(g, LaplacianKind.COMBINATORIAL)
    gap = spectral_gap(k.decomposition)
    grid = default_time_grid(gap if gap > 1e-10 else None)
    p0 = Distribution.random_simplex(g.n, rng)
    checks: list[tuple[str, float, float, bool]] = []

    lap = laplacian(g, LaplacianKind.COMBINATORIAL)
    worst_row = 0.0
    worst_mass = 0.0
    worst_oracle = 0.0
    worst_pinsker = 0.0
    for t in grid[:: max(1, len(grid) // 12)]:
        T = kernel_at(k, t)
        worst_row = max(worst_row, float(np.abs(T.sum(axis=1) - 1.0).max()))
        worst_mass = max(worst_mass, abs(float((p0.probs @ T).sum()) - 1.0))
        if t * np.abs(lap).max() < 200.0:  # oracle comparison in a sane norm range
            worst_oracle = max(worst_oracle, float(np.abs(T - expm_oracle(-t * lap)).max()))
        worst_pinsker = max(worst_pinsker, -entropy.pinsker_report(k, p0, t).slack)
    checks.append(("row_stochasticity", worst_row, 1e-10, worst_row <= 1e-10))
    checks.append(("mass_conservation", worst_mass, 1e-12, worst_mass <= 1e-12))
    checks.append(("oracle_agreement", worst_oracle, 1e-9, worst_oracle <= 1e-9))
    checks.append(("pinsker_slack", worst_pinsker, 1e-10, worst_pinsker <= 1e-10))

    curve = entropy.entropy_curve(k, p0, grid)
    worst_decrease = float(max(0.0, -np.diff(curve.values).min())) if len(grid) > 1 else 0.0
    checks.append(("entropy_monotonicity", worst_decrease, 1e-9, worst_decrease <= 1e-9))

    non_edges = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if not g.has_edge(i, j)
    ]
    if non_edges:
        extra = non_edges[rng.integers(len(non_edges))]
        report = check_weyl_monotonicity(g, extra)
        worst = float((report.eigenvalues_before - report.eigenvalues_after).max())
        checks.append(("weyl_monotonicity", worst, 1e-9, report.all_hold))
    return checks


def run_audit(args: argparse.Namespace) -> int:
    if args.graph.startswith("counterexample:"):
        n = int(args.graph.split(":", 1)[1])
        if n < 2:
            raise ConfigError("counterexample chain needs n >= 2")
        checks = _audit_counterexample(n)
    else:
        g, label = parse_graph_spec(args.graph, args.seed)
        if g.n < 2:
            raise ConfigError("audit needs at least 2 nodes")
        checks = _audit_graph(g, args.seed)
        k = heat_kernel(g, LaplacianKind.COMBINATORIAL)
        gap = spectral_gap(k.decomposition)
        if gap > 1e-10:
            # a uniform start is orthogonal to the slow mode and reports t_eps = 0
            p0 = Distribution.random_simplex(g.n, np.random.default_rng(args.seed))
            est = mixing_estimate(k, p0, 1e-6)
            print(f"graph={label} lambda_2={gap:.6g} t_eps={est.t_eps:.6g}")
    all_pass = True
    for name, worst, tol, ok in checks:
        all_pass &= ok
        print(f"{'PASS' if ok else 'FAIL'} {name} worst={worst:.3e} tol={tol:g}")
    if args.out_csv:
        with open(args.out_csv, "w") as fh:
            fh.write("check,worst,tolerance,pass\n")
            for name, worst, tol, ok in checks:
                fh.write("%s,%.17g,%.17g,%d\n" % (name, worst, tol, int(ok)))
    return EXIT_OK if all_pass else EXIT_AUDIT


# ----------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphheat",
        description="Conditional entropy of diffusion dynamics on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, multi_graph: bool = False) -> None:
        p.add_argument(
            "--graph",
            required=True,
            action="append" if multi_graph else "store",
            help="family spec: complete:N | path:N | circulant:N:s1,s2 | er:N:p | ws:N:k:p | edgelist:PATH",
        )
        p.add_argument("--dynamic", choices=("heat", "rw"), default="heat")
        p.add_argument("--init", default="uniform", help="uniform | delta:<i> | file:<path>")
        p.add_argument("--grid", default="auto", help="auto | log:tmin:tmax:points | lin:tmin:tmax:points")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out-csv", default=None)
        p.add_argument("--out-svg", default=None)

    p_curve = sub.add_parser("curve", help="entropy curve for one graph")
    common(p_curve)
    p_curve.set_defaults(func=run_curve)

    p_cmp = sub.add_parser("compare", help="multi-graph comparison with K_n/P_n references")
    common(p_cmp, multi_graph=True)
    p_cmp.set_defaults(func=run_compare)

    p_ens = sub.add_parser("ensemble", help="mean +- std over random-graph samples")
    common(p_ens)
    p_ens.add_argument("--samples", type=int, default=10)
    p_ens.add_argument("--per-sample", action="store_true")
    p_ens.set_defaults(func=run_ensemble)

    p_mf = sub.add_parser("meanfield", help="ER ensemble with mean-field overlay")
    common(p_mf)
    p_mf.add_argument("--samples", type=int, default=5)
    p_mf.set_defaults(func=run_meanfield)

    p_audit = sub.add_parser("audit", help="run invariant checks on a graph")
    common(p_audit)
    p_audit.set_defaults(func=run_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericFailure, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
