"""Experiment runner: per-graph approximation ratios for both encodings.

The run loop optimizes QAOA angles against the exact expectation for
every (graph, encoding, layer-count) combination and emits one record
per combination.  CSV is the canonical output (JSON mirrors it); the
file starts with ``# key=value`` metadata lines that make every default
explicit, and only the ``created`` line varies between identical runs.
Reported ratios come from exact expectations, not shot estimates, which
keeps records reproducible; per-instance seeds derive from the master
seed and the graph's canonical graph6 string, so parallel or reordered
execution cannot change any row.

Record fields, in CSV column order:

graph_id, n, edge_count, encoding, p, ar, best_exp, c_min, c_max,
alpha, cube_count, evals, seed, wall_ms

``cube_count`` is empty for the standard encoding.  A graph whose cube
expansion exceeds the budget is recorded as a failed row (the numeric
fields stay empty) rather than silently dropped, so summary averages
can report how many instances they include.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import sys
import time
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from . import __version__ as _version  # noqa: F401  (re-exported into metadata)
from .esop import DEFAULT_CUBE_BUDGET, CubeBudgetError, or_chain_to_esop, violation_sop
from .graphs import Graph, brute_force_mis, encode_graph6, random_connected_graph, read_graph6_file
from .hamiltonians import (
    MODES,
    SIGN_NORMALIZED,
    cost_from_esop,
    standard_cost_hamiltonian,
    zpoly_to_diagonal,
)
from .optimizer import GRID_REFINE, MULTISTART, OptimizeConfig, optimize_angles
from .simulator import approximation_ratio, format_bitstring, run_qaoa, sample_counts

ENCODINGS = ("esop", "standard")

CSV_COLUMNS = (
    "graph_id", "n", "edge_count", "encoding", "p", "ar", "best_exp",
    "c_min", "c_max", "alpha", "cube_count", "evals", "seed", "wall_ms",
)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class RandomSource:
    """Seeded G(n, p) source: ``count`` connected graphs on ``n`` vertices."""

    n: int
    edge_prob: float = 0.5
    count: int = 1


@dataclass(frozen=True)
class ExperimentConfig:
    source: str | RandomSource
    encodings: tuple[str, ...] = ENCODINGS
    layers: tuple[int, ...] = (1,)
    penalty: float | None = None  # None = 2 * n per graph
    edge_penalty: float = 2.0
    mode: str = SIGN_NORMALIZED
    seed: int = 0
    optimizer: OptimizeConfig = OptimizeConfig()
    cube_budget: int = DEFAULT_CUBE_BUDGET

    def __post_init__(self) -> None:
        if not self.encodings:
            raise ConfigError("need at least one encoding")
        for enc in self.encodings:
            if enc not in ENCODINGS:
                raise ConfigError(f"unknown encoding {enc!r}")
        if not self.layers or any(p < 1 for p in self.layers):
            raise ConfigError("need at least one layer count, all >= 1")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.penalty is not None and self.penalty <= 0:
            raise ConfigError("penalty must be positive")
        if self.edge_penalty <= 1:
            raise ConfigError("edge_penalty must exceed 1")


@dataclass(frozen=True)
class ResultRecord:
    graph_id: str
    n: int
    edge_count: int
    encoding: str
    p: int
    ar: float | None
    best_exp: float | None
    c_min: float | None
    c_max: float | None
    alpha: int
    cube_count: int | None
    evals: int | None
    seed: int
    wall_ms: float | None

    @property
    def failed(self) -> bool:
        return self.ar is None


def instance_seed(master_seed: int, graph_id: str) -> int:
    """Stable per-graph seed: first 8 bytes of sha256("master:graph6")."""
    digest = hashlib.sha256(f"{master_seed}:{graph_id}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def load_graphs(source: str | RandomSource, seed: int = 0) -> list[tuple[str, Graph]]:
    """Materialize (graph_id, Graph) pairs from a g6 file or a random source."""
    if isinstance(source, RandomSource):
        out = []
        for k in range(source.count):
            g = random_connected_graph(
                source.n, source.edge_prob, seed=instance_seed(seed, f"random:{k}")
            )
            out.append((encode_graph6(g), g))
        return out
    graphs = read_graph6_file(source)
    return [(encode_graph6(g), g) for g in graphs]


def run_experiment(cfg: ExperimentConfig) -> list[ResultRecord]:
    """One record per (graph, encoding, p); cube-budget failures are kept as rows."""
    records: list[ResultRecord] = []
    for graph_id, g in load_graphs(cfg.source, cfg.seed):
        seed = instance_seed(cfg.seed, graph_id)
        alpha, _ = brute_force_mis(g)
        for encoding in cfg.encodings:
            cube_count: int | None = None
            try:
                if encoding == "esop":
                    esop = or_chain_to_esop(violation_sop(g), cube_budget=cfg.cube_budget)
                    cube_count = esop.cube_count
                    h = cost_from_esop(esop, g.n, penalty=cfg.penalty, mode=cfg.mode)
                else:
                    h = standard_cost_hamiltonian(g, edge_penalty=cfg.edge_penalty)
            except CubeBudgetError as exc:
                print(f"warning: {graph_id} {encoding}: {exc}", file=sys.stderr)
                for p in cfg.layers:
                    records.append(ResultRecord(
                        graph_id, g.n, g.edge_count, encoding, p,
                        None, None, None, None, alpha, None, None, seed, None,
                    ))
                continue
            d = zpoly_to_diagonal(h, g.n)
            if abs(d.c_min - (-alpha)) > 1e-9:
                print(
                    f"warning: {graph_id} {encoding}: c_min {d.c_min} != -alpha "
                    f"{-alpha} (mode={cfg.mode})", file=sys.stderr,
                )
            for p in cfg.layers:
                t0 = time.perf_counter()
                opt_cfg = replace(cfg.optimizer, p=p, seed=seed)
                res = optimize_angles(d, opt_cfg)
                wall_ms = round((time.perf_counter() - t0) * 1e3, 3)
                ar = approximation_ratio(res.best_exp, d.c_min, d.c_max)
                if not -1e-9 <= ar <= 1 + 1e-9:
                    raise AssertionError(f"approximation ratio {ar} outside [0, 1]")
                ar = min(max(ar, 0.0), 1.0)
                records.append(ResultRecord(
                    graph_id, g.n, g.edge_count, encoding, p,
                    ar, res.best_exp, d.c_min, d.c_max, alpha,
                    cube_count, res.evals, seed, wall_ms,
                ))
    return records


def run_metadata(cfg: ExperimentConfig) -> dict[str, str]:
    """All-defaults-explicit run description for the output header."""
    source = cfg.source
    if isinstance(source, RandomSource):
        source_str = f"random:n={source.n},p={source.edge_prob},count={source.count}"
    else:
        source_str = str(source)
    return {
        "tool": "esopq",
        "version": _version,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "source": source_str,
        "encodings": ",".join(cfg.encodings),
        "layers": ",".join(str(p) for p in cfg.layers),
        "penalty": "auto(2n)" if cfg.penalty is None else repr(cfg.penalty),
        "edge_penalty_J": repr(cfg.edge_penalty),
        "mode": cfg.mode,
        "seed": str(cfg.seed),
        "strategy": cfg.optimizer.strategy,
        "grid_points": str(cfg.optimizer.grid_points),
        "restarts": str(cfg.optimizer.restarts),
        "max_evals": str(cfg.optimizer.max_evals),
        "tol": repr(cfg.optimizer.tol),
        "cube_budget": str(cfg.cube_budget),
        "edge_order": "graph6 column-major for parsed graphs, lexicographic for generated",
        "ar_basis": "exact statevector expectation (not shot estimates)",
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_records_csv(path, records, metadata: dict[str, str]) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        for key, val in metadata.items():
            fh.write(f"# {key}={val}\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow([_fmt(getattr(r, col)) for col in CSV_COLUMNS])


def write_records_json(path, records, metadata: dict[str, str]) -> None:
    payload = {
        "metadata": metadata,
        "records": [
            {col: getattr(r, col) for col in CSV_COLUMNS} for r in records
        ],
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


_INT_COLS = {"n", "edge_count", "p", "alpha", "cube_count", "evals", "seed"}
_FLOAT_COLS = {"ar", "best_exp", "c_min", "c_max", "wall_ms"}


def read_records_csv(path) -> tuple[dict[str, str], list[ResultRecord]]:
    metadata: dict[str, str] = {}
    records: list[ResultRecord] = []
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in fh]
    body = []
    for ln in lines:
        if ln.startswith("#"):
            key, _, val = ln[1:].strip().partition("=")
            metadata[key.strip()] = val
        else:
            body.append(ln)
    reader = csv.DictReader(io.StringIO("".join(body)))
    for row in reader:
        kwargs = {}
        for col in CSV_COLUMNS:
            raw = row[col]
            if raw == "":
                kwargs[col] = None
            elif col in _INT_COLS:
                kwargs[col] = int(raw)
            elif col in _FLOAT_COLS:
                kwargs[col] = float(raw)
            else:
                kwargs[col] = raw
        records.append(ResultRecord(**kwargs))
    return metadata, records


@dataclass(frozen=True)
class SummaryRow:
    n: int
    p: int
    mean_standard: float | None
    mean_esop: float | None
    pct_change: float | None
    n_standard: int
    n_esop: int


def summarize(records) -> list[SummaryRow]:
    """Mean AR per (n, p) and encoding, with the ESOP-vs-standard percent change.

    ``pct_change = 100 * (mean_esop - mean_standard) / mean_standard``;
    undefined (None) when either mean is missing or the standard mean is
    zero.  Failed records are excluded and the per-encoding counts say
    how many instances each mean includes.
    """
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple[int, int], dict[str, list[float]]] = {}
    for r in records:
        if r.failed:
            continue
        cell = groups.setdefault((r.n, r.p), {"esop": [], "standard": []})
        if r.encoding in cell:
            cell[r.encoding].append(r.ar)
    rows = []
    for (n, p), cell in sorted(groups.items()):
        es, st = cell["esop"], cell["standard"]
        mean_e = sum(es) / len(es) if es else None
        mean_s = sum(st) / len(st) if st else None
        pct = None
        if mean_e is not None and mean_s is not None and mean_s != 0.0:
            pct = 100.0 * (mean_e - mean_s) / mean_s
        rows.append(SummaryRow(n, p, mean_s, mean_e, pct, len(st), len(es)))
    return rows


SUMMARY_COLUMNS = (
    "n", "p", "mean_standard", "mean_esop", "pct_change", "n_standard", "n_esop",
)


def write_summary_csv(path, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for r in rows:
            writer.writerow([_fmt(getattr(r, col)) for col in SUMMARY_COLUMNS])


def format_summary_table(rows) -> str:
    """Human-readable table; percent change shown to one decimal."""
    out = [f"{'n':>3} {'p':>2} {'standard':>10} {'esop':>10} {'pct':>7} {'#std':>5} {'#esop':>6}"]
    for r in rows:
        std = f"{r.mean_standard:.4f}" if r.mean_standard is not None else "n/a"
        eso = f"{r.mean_esop:.4f}" if r.mean_esop is not None else "n/a"
        pct = f"{r.pct_change:+.1f}" if r.pct_change is not None else "n/a"
        out.append(f"{r.n:>3} {r.p:>2} {std:>10} {eso:>10} {pct:>7} {r.n_standard:>5} {r.n_esop:>6}")
    return "\n".join(out)


def histogram_report(
    g: Graph,
    encoding: str = "esop",
    p: int = 1,
    shots: int = 1024,
    seed: int = 0,
    penalty: float | None = None,
    edge_penalty: float = 2.0,
    mode: str = SIGN_NORMALIZED,
    optimizer: OptimizeConfig | None = None,
) -> list[tuple[str, int]]:
    """Optimize angles, sample the final state, and return (bitstring, count) rows.

    Rows are sorted by descending count (ties by bitstring) and print
    qubit n-1 leftmost.
    """
    if encoding not in ENCODINGS:
        raise ConfigError(f"unknown encoding {encoding!r}")
    if encoding == "esop":
        esop = or_chain_to_esop(violation_sop(g))
        h = cost_from_esop(esop, g.n, penalty=penalty, mode=mode)
    else:
        h = standard_cost_hamiltonian(g, edge_penalty=edge_penalty)
    d = zpoly_to_diagonal(h, g.n)
    base = optimizer or OptimizeConfig()
    strategy = GRID_REFINE if p == 1 else MULTISTART
    res = optimize_angles(d, replace(base, p=p, seed=seed, strategy=strategy))
    state = run_qaoa(d, res.params)
    counts = sample_counts(state, shots, seed=seed)
    rows = [(format_bitstring(z, g.n), c) for z, c in counts.items()]
    rows.sort(key=lambda item: (-item[1], item[0]))
    return rows


def write_histogram_csv(path, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("bitstring", "count"))
        writer.writerows(rows)


def state_report(
    g: Graph,
    encoding: str = "esop",
    p: int = 1,
    seed: int = 0,
    penalty: float | None = None,
    edge_penalty: float = 2.0,
    mode: str = SIGN_NORMALIZED,
    optimizer: OptimizeConfig | None = None,
) -> list[tuple[int, float]]:
    """Exact measurement probabilities of the optimized state.

    Returns (assignment index, probability) pairs sorted by descending
    probability, ties by index.
    """
    if encoding not in ENCODINGS:
        raise ConfigError(f"unknown encoding {encoding!r}")
    if encoding == "esop":
        esop = or_chain_to_esop(violation_sop(g))
        h = cost_from_esop(esop, g.n, penalty=penalty, mode=mode)
    else:
        h = standard_cost_hamiltonian(g, edge_penalty=edge_penalty)
    d = zpoly_to_diagonal(h, g.n)
    base = optimizer or OptimizeConfig()
    strategy = GRID_REFINE if p == 1 else MULTISTART
    res = optimize_angles(d, replace(base, p=p, seed=seed, strategy=strategy))
    state = run_qaoa(d, res.params)
    probs = abs(state) ** 2
    rows = [(z, float(pr)) for z, pr in enumerate(probs)]
    rows.sort(key=lambda item: (-item[1], item[0]))
    return rows


def write_state_csv(path, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("index", "probability"))
        for z, pr in rows:
            writer.writerow((z, repr(pr)))
