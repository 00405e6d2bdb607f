"""Benchmark harness comparing the three solvers on maze families."""
from __future__ import annotations

import csv
import io
import json
import multiprocessing
import time
from dataclasses import dataclass, field

from .graph import SYS
from .maze import MazeParams, maze_generate
from .pipeline import ALGORITHMS, solve_instance
from .verifier import build_closed_loop, detect_falsifying


@dataclass
class BenchRow:
    instance: str
    algorithm: str
    status: str  # ok | timeout | error
    realizable: bool | None = None
    states: int | None = None
    falsifying: bool | None = None
    ms: float | None = None
    iterations: int | None = None


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(
            ["instance", "algorithm", "realizable", "states", "falsifying", "ms", "iterations"]
        )
        for r in self.rows:
            writer.writerow(
                [
                    r.instance,
                    r.algorithm,
                    _cell(r.realizable),
                    _cell(r.states),
                    _cell(r.falsifying),
                    _cell(None if r.ms is None else round(r.ms, 1)),
                    _cell(r.iterations),
                ]
            )
        return out.getvalue()

    def to_text(self) -> str:
        header = ["instance", "algorithm", "realizable", "states", "falsifying", "ms", "iterations"]
        table = [header]
        for r in self.rows:
            table.append(
                [
                    r.instance,
                    r.algorithm,
                    _cell(r.realizable) if r.status == "ok" else r.status,
                    _cell(r.states),
                    _cell(r.falsifying),
                    _cell(None if r.ms is None else round(r.ms, 1)),
                    _cell(r.iterations),
                ]
            )
        widths = [max(len(str(row[i])) for row in table) for i in range(len(header))]
        lines = []
        for row in table:
            lines.append("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip())
        # A starred strategy wins only by blocking the environment's goals.
        lines.append("")
        lines.append("falsifying=True marks strategies that win by making the")
        lines.append("assumptions unsatisfiable in the closed loop.")
        return "\n".join(lines) + "\n"


def _cell(v):
    return "" if v is None else v


def instance_label(p: MazeParams) -> str:
    return f"{p.cols}x{p.lines}-g{p.goals_per_player}-{p.variant}"


def _run_cell(p: MazeParams, algo: str) -> BenchRow:
    label = instance_label(p)
    start = time.perf_counter()
    try:
        g, s = maze_generate(p)
        outcome = solve_instance(g, s, algo)
        if outcome.realizable:
            cl = build_closed_loop(g, outcome.spec_used, outcome.machine)
            falsifying = detect_falsifying(cl, outcome.spec_used.assumptions)
            # "states" counts the controller's decision states: the
            # system-owned nodes of the reachable closed loop.
            states = sum(1 for n in cl.nodes if g.owners[n[0]] == SYS)
        else:
            falsifying = None
            states = None
        ms = (time.perf_counter() - start) * 1000.0
        return BenchRow(
            instance=label,
            algorithm=algo,
            status="ok",
            realizable=outcome.realizable,
            states=states,
            falsifying=falsifying,
            ms=ms,
            iterations=outcome.pre_invocations,
        )
    except Exception:
        ms = (time.perf_counter() - start) * 1000.0
        return BenchRow(instance=label, algorithm=algo, status="error", ms=ms)


def run_benchmark(
    instances: list[MazeParams],
    algorithms: tuple[str, ...] = ALGORITHMS,
    timeout_s: float | None = None,
) -> BenchReport:
    report = BenchReport()
    for p in instances:
        for algo in algorithms:
            if timeout_s is None:
                report.rows.append(_run_cell(p, algo))
                continue
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(1) as pool:
                task = pool.apply_async(_run_cell, (p, algo))
                try:
                    report.rows.append(task.get(timeout=timeout_s))
                except multiprocessing.TimeoutError:
                    report.rows.append(
                        BenchRow(
                            instance=instance_label(p),
                            algorithm=algo,
                            status="timeout",
                        )
                    )
    return report


def parse_bench_spec(text: str) -> tuple[list[MazeParams], tuple[str, ...], float | None]:
    doc = json.loads(text)
    instances = [
        MazeParams(
            cols=int(e.get("cols", 3)),
            lines=int(e.get("lines", 2)),
            goals_per_player=int(e.get("goals", 2)),
            variant=e.get("variant", "falsifiable"),
        )
        for e in doc.get("instances", [])
    ]
    algorithms = tuple(doc.get("algorithms", list(ALGORITHMS)))
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    timeout = doc.get("timeout_s")
    return instances, algorithms, None if timeout is None else float(timeout)
