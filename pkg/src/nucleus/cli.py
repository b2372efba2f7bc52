"""``nucleus`` command line: decompose, forest, metrics, validate."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import metrics
from .cliques import DEFAULT_MEMORY_BUDGET, enumerate_r_cliques
from .errors import CapacityError, GraphParseError, NucleusError, OracleGuardError
from .forest import (
    build_forest,
    check_invariants,
    contract_chains,
    filter_by_size,
    forest_to_dot,
    forest_to_json,
)
from .graph import Graph, load_graph, random_graph
from .oracle import MAX_ORACLE_VERTICES, oracle
from .peel import cost_predictor, set_k

log = logging.getLogger("nucleus")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CAPACITY, EXIT_FAILED = 0, 1, 2, 3, 4
FORMATS = {"decompose": ("csv",), "forest": ("json", "dot", "csv"), "metrics": ("csv",), "validate": ()}
ALL_PAIRS = [(r, s) for s in range(2, 5) for r in range(1, s)]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input_path: str | None
    r: int
    s: int
    min_size: int = 10
    output_format: str | None = None
    output_path: str | None = None
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET
    seed: int = 0
    vertices: bool = False
    contract: bool = True
    bin_width: float = 0.05
    min_overlap: int = 1
    random: tuple | None = None

    def validate(self):
        if not 1 <= self.r < self.s <= 4:
            raise UsageError(f"need 1 <= r < s <= 4, got r={self.r} s={self.s}")
        if self.min_size < 1:
            raise UsageError("--min-size must be >= 1")
        if self.min_overlap < 1:
            raise UsageError("--min-overlap must be >= 1")
        allowed = FORMATS[self.command]
        if self.output_format is None and allowed:
            self.output_format = allowed[0]
        if allowed and self.output_format not in allowed:
            raise UsageError(f"{self.command} supports --format {'|'.join(allowed)}")
        if self.command != "validate" and not self.input_path:
            raise UsageError("--input is required")
        if self.command == "validate" and not (self.input_path or self.random):
            raise UsageError("validate needs --input or --random N P TRIALS")


def parse_bytes(text: str) -> int:
    units = {"k": 2**10, "m": 2**20, "g": 2**30, "t": 2**40}
    t = text.strip().lower().rstrip("b")
    mult = units.get(t[-1:], 1)
    if mult > 1:
        t = t[:-1]
    try:
        value = int(float(t) * mult)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a byte count: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("memory budget must be positive")
    return value


def thread_cap() -> int:
    """Validated ``NUCLEUS_THREADS``; enumeration currently runs on one thread regardless."""
    raw = os.environ.get("NUCLEUS_THREADS")
    if raw is None:
        return 1
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"NUCLEUS_THREADS must be a positive integer, got {raw!r}") from None
    if val < 1:
        raise UsageError(f"NUCLEUS_THREADS must be a positive integer, got {raw!r}")
    return val


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nucleus", description="(r,s)-nucleus decomposition of undirected graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_min=10):
        sp.add_argument("--input", help="edge list (whitespace separated, .gz ok)")
        sp.add_argument("--r", type=int, default=3)
        sp.add_argument("--s", type=int, default=4)
        sp.add_argument("--min-size", type=int, default=default_min)
        sp.add_argument("--format", dest="output_format")
        sp.add_argument("--output")
        sp.add_argument("--memory-budget", type=parse_bytes, default=DEFAULT_MEMORY_BUDGET)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--vertices", action="store_true", help="include vertex lists in forest JSON")

    sp = sub.add_parser("decompose", help="κ for every K_r, plus a run summary")
    common(sp)
    sp = sub.add_parser("forest", help="size-filtered, chain-contracted forest of nuclei")
    common(sp)
    sp.add_argument("--no-contract", dest="contract", action="store_false")
    sp = sub.add_parser("metrics", help="density histogram, size/density scatter and overlaps as CSV")
    common(sp)
    sp.add_argument("--bin-width", type=float, default=0.05)
    sp.add_argument("--min-overlap", type=int, default=1)
    sp = sub.add_parser("validate", help="compare against the brute-force oracle")
    common(sp)
    sp.add_argument("--random", nargs=3, metavar=("N", "P", "TRIALS"))
    return p


def config_from_args(args) -> RunConfig:
    rnd = None
    if getattr(args, "random", None):
        try:
            rnd = (int(args.random[0]), float(args.random[1]), int(args.random[2]))
        except ValueError:
            raise UsageError("--random expects N P TRIALS (int float int)") from None
    return RunConfig(
        command=args.command,
        input_path=args.input,
        r=args.r,
        s=args.s,
        min_size=args.min_size,
        output_format=args.output_format,
        output_path=args.output,
        memory_budget_bytes=args.memory_budget,
        seed=args.seed,
        vertices=args.vertices,
        contract=getattr(args, "contract", True),
        bin_width=getattr(args, "bin_width", 0.05),
        min_overlap=getattr(args, "min_overlap", 1),
        random=rnd,
    )


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _decompose(cfg: RunConfig, g: Graph):
    idx = enumerate_r_cliques(g, cfg.r, cfg.memory_budget_bytes)
    ka = set_k(g, cfg.r, cfg.s, memory_budget=cfg.memory_budget_bytes, index=idx)
    return ka


def cmd_decompose(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    g = load_graph(cfg.input_path)
    ka = _decompose(cfg, g)
    seconds = time.perf_counter() - t0
    labels = g.labels
    header = ",".join(f"v{i + 1}" for i in range(cfg.r)) + ",kappa\n"
    rows = labels[ka.index.cliques]
    body = "".join(",".join(map(str, row)) + f",{k}\n" for row, k in zip(rows.tolist(), ka.kappa.tolist()))
    _emit(header + body, cfg.output_path)
    cost = cost_predictor(g, ka.index, cfg.r, cfg.s)
    summary = {
        "n": g.n,
        "m": g.m,
        "ct_r": len(ka.index),
        "max_kappa": ka.max_kappa,
        "predictor": cost.value,
        "seconds": round(seconds, 3),
    }
    if cost.saturated:
        summary["predictor_saturated"] = True
    out = sys.stdout if cfg.output_path else sys.stderr
    print(json.dumps(summary), file=out)
    return EXIT_OK


def _view(cfg, g, ka):
    f = build_forest(g, ka, memory_budget=cfg.memory_budget_bytes)
    view = filter_by_size(f, cfg.min_size)
    return f, view


def forest_csv(view) -> str:
    lines = ["id,k,size,density,parent,chain\n"]
    for v in view:
        p = view.parent[v]
        lines.append(
            f"{v},{int(view.forest.node_k[v])},{view.size(v)},{view.density(v):.6f},"
            f"{'' if p < 0 else p},{view.chain[v]}\n"
        )
    return "".join(lines)


def cmd_forest(cfg: RunConfig) -> int:
    g = load_graph(cfg.input_path)
    ka = _decompose(cfg, g)
    _, view = _view(cfg, g, ka)
    if cfg.contract:
        view = contract_chains(view)
    if cfg.output_format == "dot":
        text = forest_to_dot(view)
    elif cfg.output_format == "csv":
        text = forest_csv(view)
    else:
        text = forest_to_json(view, vertices=cfg.vertices) + "\n"
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_metrics(cfg: RunConfig) -> int:
    g = load_graph(cfg.input_path)
    ka = _decompose(cfg, g)
    _, view = _view(cfg, g, ka)
    outdir = Path(cfg.output_path or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    hist = metrics.density_histogram(view, cfg.bin_width, cfg.min_size)
    (outdir / "density_histogram.csv").write_text(metrics.histogram_csv(hist))
    (outdir / "size_density.csv").write_text(metrics.scatter_csv(metrics.size_density_scatter(view)))
    (outdir / "overlaps.csv").write_text(metrics.overlaps_csv(metrics.overlap_analysis(view, cfg.min_overlap)))
    return EXIT_OK


def _forest_levels(f, ka):
    out = set()
    for v in range(len(f)):
        p = f.node_parent[v]
        lo = int(f.node_k[p]) if p >= 0 else 0
        members = frozenset(ka.index.clique(i) for i in f.member_rcliques(v).tolist())
        out.update((k, members) for k in range(lo + 1, int(f.node_k[v]) + 1))
    return out


def validate_graph(g: Graph, seed: int, label: str, tie_runs: int = 3) -> list:
    """(name, ok, detail) for each check on one graph."""
    results = []
    rng = np.random.default_rng(seed)
    for r, s in ALL_PAIRS:
        tag = f"{label} ({r},{s})"
        ka = set_k(g, r, s)
        ref = oracle(g, r, s)
        mine = {ka.index.clique(i): int(k) for i, k in enumerate(ka.kappa.tolist())}
        results.append((f"{tag} kappa", mine == ref.kappa, ""))
        f = build_forest(g, ka)
        try:
            check_invariants(f, ka)
            results.append((f"{tag} invariants", True, ""))
        except AssertionError as exc:
            results.append((f"{tag} invariants", False, str(exc)))
        ok = _forest_levels(f, ka) == set(ref.nuclei)
        counts = {}
        for k, _ in ref.nuclei:
            counts[k] = counts.get(k, 0) + 1
        detail = " ".join(f"k={k}:{c}" for k, c in sorted(counts.items()))
        results.append((f"{tag} nuclei", ok, detail))
        same = all(
            np.array_equal(set_k(g, r, s, tie_break=int(rng.integers(2**31)), index=ka.index).kappa, ka.kappa)
            for _ in range(tie_runs)
        )
        results.append((f"{tag} tie-break", same, ""))
    return results


def cmd_validate(cfg: RunConfig) -> int:
    graphs = []
    if cfg.input_path:
        g = load_graph(cfg.input_path)
        if g.n > MAX_ORACLE_VERTICES:
            raise OracleGuardError(f"validate needs n <= {MAX_ORACLE_VERTICES}, input has {g.n} vertices")
        graphs.append((Path(cfg.input_path).name, g))
    if cfg.random:
        n, p, trials = cfg.random
        if n > MAX_ORACLE_VERTICES:
            raise OracleGuardError(f"validate needs n <= {MAX_ORACLE_VERTICES}, got {n}")
        if not 0 <= p <= 1 or trials < 1:
            raise UsageError("--random needs 0 <= P <= 1 and TRIALS >= 1")
        rng = np.random.default_rng(cfg.seed)
        for t in range(trials):
            graphs.append((f"random#{t}", random_graph(n, p, seed=int(rng.integers(2**31)))))
    failed = 0
    total = 0
    for i, (label, g) in enumerate(graphs):
        for name, ok, detail in validate_graph(g, cfg.seed + i, label):
            total += 1
            failed += not ok
            if not ok or cfg.input_path:
                print(f"{'PASS' if ok else 'FAIL'} {name}{' ' + detail if detail else ''}")
    print(f"{total - failed}/{total} checks passed on {len(graphs)} graph(s)")
    return EXIT_OK if failed == 0 else EXIT_FAILED


COMMANDS = {"decompose": cmd_decompose, "forest": cmd_forest, "metrics": cmd_metrics, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        thread_cap()
        cfg = config_from_args(args)
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except (UsageError, OracleGuardError) as exc:
        print(f"nucleus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, MemoryError) as exc:
        print(f"nucleus: out of capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (OSError, GraphParseError) as exc:
        print(f"nucleus: input/output error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NucleusError as exc:
        print(f"nucleus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
