"""Command-line interface.

Subcommands::

    esopq run --graphs <file.g6|random:n=..,p=..,count=..> --encoding esop,standard \
        --layers 1,2,3 --penalty auto --J 2 --seed 0 --out results.csv
    esopq summarize results.csv [--out summary.csv] [--plot summary.png]
    esopq histogram --graph <g6> --shots 1024 [--out hist.csv]
    esopq dump-esop --graph <g6>
    esopq dump-hamiltonian --graph <g6> [--encoding esop|standard]

``run`` writes the record table (CSV by default, JSON mirror via
--format) with a metadata header; ``histogram`` and ``summarize`` render
a matplotlib figure next to their delimited output unless --no-plot.
"""

from __future__ import annotations

from pathlib import Path

import click

from .esop import or_chain_to_esop, violation_sop
from .graphs import parse_graph6
from .hamiltonians import (
    MODES,
    SIGN_NORMALIZED,
    cost_from_esop,
    format_zpoly,
    standard_cost_hamiltonian,
)
from .esop import format_cubes
from .harness import (
    ENCODINGS,
    ConfigError,
    ExperimentConfig,
    RandomSource,
    format_summary_table,
    histogram_report,
    read_records_csv,
    run_experiment,
    run_metadata,
    state_report,
    summarize as summarize_records,
    write_histogram_csv,
    write_records_csv,
    write_records_json,
    write_state_csv,
    write_summary_csv,
)
from .optimizer import OptimizeConfig


def _parse_source(text: str):
    if not text.startswith("random:"):
        return text
    fields = {}
    for part in text[len("random:"):].split(","):
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    try:
        return RandomSource(
            n=int(fields["n"]),
            edge_prob=float(fields.get("p", 0.5)),
            count=int(fields.get("count", 1)),
        )
    except (KeyError, ValueError) as exc:
        raise click.BadParameter(
            "random source must look like random:n=8,p=0.5,count=100"
        ) from exc


def _parse_penalty(text: str) -> float | None:
    if text.lower() == "auto":
        return None
    return float(text)


def _optimizer_options(fn):
    fn = click.option("--grid", "grid_points", type=int, default=32,
                      show_default=True, help="Grid points per axis at p=1.")(fn)
    fn = click.option("--restarts", type=int, default=20, show_default=True,
                      help="Local restarts at p>=2.")(fn)
    fn = click.option("--max-evals", type=int, default=500, show_default=True,
                      help="Objective evaluations per local polish.")(fn)
    fn = click.option("--tol", type=float, default=1e-6, show_default=True,
                      help="Function tolerance of the local polish.")(fn)
    return fn


def _build_optimizer(grid_points, restarts, max_evals, tol) -> OptimizeConfig:
    return OptimizeConfig(
        grid_points=grid_points, restarts=restarts, max_evals=max_evals, tol=tol
    )


@click.group()
@click.version_option()
def main() -> None:
    """Benchmark XOR-of-cubes constraint encodings for QAOA on independent set."""


@main.command()
@click.option("--graphs", "source", required=True,
              help="Path to a .g6 file, or random:n=..,p=..,count=..")
@click.option("--encoding", default="esop,standard", show_default=True,
              help="Comma-separated subset of esop,standard.")
@click.option("--layers", default="1", show_default=True,
              help="Comma-separated QAOA layer counts.")
@click.option("--penalty", default="auto", show_default=True,
              help="Violation penalty for the esop encoding; auto = 2n.")
@click.option("--J", "edge_penalty", type=float, default=2.0, show_default=True,
              help="Per-edge penalty of the standard encoding (must exceed 1).")
@click.option("--mode", type=click.Choice(MODES), default=SIGN_NORMALIZED,
              show_default=True, help="Cube sign convention for the esop encoding.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              default="results.csv", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@_optimizer_options
def run(source, encoding, layers, penalty, edge_penalty, mode, seed, out, fmt,
        grid_points, restarts, max_evals, tol) -> None:
    """Optimize angles per (graph, encoding, layers) and write one record each."""
    try:
        cfg = ExperimentConfig(
            source=_parse_source(source),
            encodings=tuple(e.strip() for e in encoding.split(",") if e.strip()),
            layers=tuple(int(p) for p in layers.split(",") if p.strip()),
            penalty=_parse_penalty(penalty),
            edge_penalty=edge_penalty,
            mode=mode,
            seed=seed,
            optimizer=_build_optimizer(grid_points, restarts, max_evals, tol),
        )
    except (ConfigError, ValueError) as exc:
        raise click.UsageError(str(exc))
    records = run_experiment(cfg)
    metadata = run_metadata(cfg)
    if fmt == "json":
        write_records_json(out, records, metadata)
    else:
        write_records_csv(out, records, metadata)
    failed = sum(1 for r in records if r.failed)
    click.echo(f"wrote {len(records)} records to {out}"
               + (f" ({failed} failed rows)" if failed else ""))


@main.command()
@click.argument("results", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Also write the summary table as CSV.")
@click.option("--plot/--no-plot", default=None,
              help="Render a mean-AR figure (default: only when --out is given).")
def summarize(results, out, plot) -> None:
    """Aggregate a results CSV into per-(n, p) mean approximation ratios."""
    _, records = read_records_csv(results)
    rows = summarize_records(records)
    click.echo(format_summary_table(rows))
    if out:
        write_summary_csv(out, rows)
        click.echo(f"wrote summary to {out}")
    if plot or (plot is None and out):
        from .plotting import save_summary_figure

        target = Path(out).with_suffix(".png") if out else Path(results).with_suffix(".png")
        save_summary_figure(rows, target, title="mean approximation ratio by encoding")
        click.echo(f"wrote figure to {target}")


@main.command()
@click.option("--graph", "g6", required=True, help="graph6 token of the instance.")
@click.option("--encoding", type=click.Choice(ENCODINGS), default="esop",
              show_default=True)
@click.option("--layers", "p", type=int, default=1, show_default=True)
@click.option("--shots", type=int, default=1024, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--penalty", default="auto", show_default=True)
@click.option("--J", "edge_penalty", type=float, default=2.0, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default=SIGN_NORMALIZED,
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              default="histogram.csv", show_default=True)
@click.option("--plot/--no-plot", default=True, show_default=True,
              help="Render a bar chart next to the CSV.")
@_optimizer_options
def histogram(g6, encoding, p, shots, seed, penalty, edge_penalty, mode, out, plot,
              grid_points, restarts, max_evals, tol) -> None:
    """Optimize, sample the final state, and write bitstring counts."""
    g = parse_graph6(g6)
    rows = histogram_report(
        g,
        encoding=encoding,
        p=p,
        shots=shots,
        seed=seed,
        penalty=_parse_penalty(penalty),
        edge_penalty=edge_penalty,
        mode=mode,
        optimizer=_build_optimizer(grid_points, restarts, max_evals, tol),
    )
    write_histogram_csv(out, rows)
    click.echo(f"wrote {len(rows)} outcomes to {out}")
    if plot:
        from .plotting import save_histogram_figure

        target = Path(out).with_suffix(".png")
        save_histogram_figure(
            rows, target,
            title=f"{encoding} encoding, p={p}, {shots} shots",
        )
        click.echo(f"wrote figure to {target}")


@main.command(name="dump-state")
@click.option("--graph", "g6", required=True, help="graph6 token of the instance.")
@click.option("--encoding", type=click.Choice(ENCODINGS), default="esop",
              show_default=True)
@click.option("--layers", "p", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--penalty", default="auto", show_default=True)
@click.option("--J", "edge_penalty", type=float, default=2.0, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default=SIGN_NORMALIZED,
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              default="state.csv", show_default=True)
@_optimizer_options
def dump_state(g6, encoding, p, seed, penalty, edge_penalty, mode, out,
               grid_points, restarts, max_evals, tol) -> None:
    """Write the optimized state's exact probabilities, largest first."""
    g = parse_graph6(g6)
    rows = state_report(
        g,
        encoding=encoding,
        p=p,
        seed=seed,
        penalty=_parse_penalty(penalty),
        edge_penalty=edge_penalty,
        mode=mode,
        optimizer=_build_optimizer(grid_points, restarts, max_evals, tol),
    )
    write_state_csv(out, rows)
    click.echo(f"wrote {len(rows)} probabilities to {out}")


@main.command(name="dump-esop")
@click.option("--graph", "g6", required=True, help="graph6 token of the instance.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def dump_esop(g6, out) -> None:
    """Print the XOR-of-cubes expansion of the violation constraints."""
    g = parse_graph6(g6)
    text = format_cubes(or_chain_to_esop(violation_sop(g)))
    if out:
        Path(out).write_text(text + "\n", encoding="ascii")
    else:
        click.echo(text)


@main.command(name="dump-hamiltonian")
@click.option("--graph", "g6", required=True, help="graph6 token of the instance.")
@click.option("--encoding", type=click.Choice(ENCODINGS), default="esop",
              show_default=True)
@click.option("--penalty", default="auto", show_default=True)
@click.option("--J", "edge_penalty", type=float, default=2.0, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default=SIGN_NORMALIZED,
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def dump_hamiltonian(g6, encoding, penalty, edge_penalty, mode, out) -> None:
    """Print the cost Hamiltonian, one Pauli-Z term per line."""
    g = parse_graph6(g6)
    if encoding == "esop":
        esop = or_chain_to_esop(violation_sop(g))
        h = cost_from_esop(esop, g.n, penalty=_parse_penalty(penalty), mode=mode)
    else:
        h = standard_cost_hamiltonian(g, edge_penalty=edge_penalty)
    text = format_zpoly(h)
    if out:
        Path(out).write_text(text + "\n", encoding="ascii")
    else:
        click.echo(text)


if __name__ == "__main__":
    main(prog_name="esopq")
