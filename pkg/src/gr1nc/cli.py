"""Command-line interface: solve, verify, maze, bench, simulate, serve."""
from __future__ import annotations

import json
import sys

import click

from .bench import parse_bench_spec, run_benchmark
from .graph import ENV, GameFormatError, parse_game, serialize_game, validate
from .maze import MazeParams, maze_generate
from .pipeline import ALGORITHMS, solve_instance
from .strategy import parse_strategy, serialize_strategy
from .verifier import (
    build_closed_loop,
    check_gr1_holds,
    check_nonconflicting,
    detect_falsifying,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise click.UsageError(str(e))


def _write(path: str | None, text: str) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise click.UsageError(str(e))


@click.group()
def main() -> None:
    """Explicit-state GR(1) synthesis with non-conflicting strategies."""


@main.command()
@click.option("--algo", type=click.Choice(ALGORITHMS), default="4fp")
@click.option("--in", "in_path", required=True, metavar="FILE")
@click.option("--out", "out_path", default=None, metavar="FILE")
@click.option("--precheck", type=click.Choice(["auto", "off"]), default="auto")
def solve(algo: str, in_path: str, out_path: str | None, precheck: str) -> None:
    """Solve a game file and write the strategy."""
    try:
        g, s = parse_game(_read(in_path))
        outcome = solve_instance(g, s, algo, precheck=precheck)
    except (GameFormatError, ValueError) as e:
        raise click.UsageError(str(e))
    if not outcome.realizable:
        suffix = (
            " after guarantee augmentation" if outcome.failed_precheck else ""
        )
        click.echo(f"unrealizable from initial state{suffix}")
        sys.exit(EXIT_FAILED)
    click.echo(
        f"realizable: winning region {len(outcome.winning)}/{g.n_states} states"
    )
    if out_path is not None:
        _write(out_path, serialize_strategy(g, outcome.machine))
        click.echo(f"strategy written to {out_path}")


@main.command()
@click.option("--game", "game_path", required=True, metavar="FILE")
@click.option("--strategy", "strategy_path", required=True, metavar="FILE")
def verify(game_path: str, strategy_path: str) -> None:
    """Run all closed-loop checks on a strategy file."""
    try:
        g, s = parse_game(_read(game_path))
        machine = parse_strategy(_read(strategy_path), g)
        cl = build_closed_loop(g, s, machine)
    except (GameFormatError, ValueError) as e:
        raise click.UsageError(str(e))
    gr1_ok, lasso = check_gr1_holds(cl, s)
    nc_ok, stuck = check_nonconflicting(cl, s.assumptions)
    falsifying = detect_falsifying(cl, s.assumptions)
    click.echo(f"GR(1) condition: {'PASSED' if gr1_ok else 'FAILED'}")
    if lasso is not None:
        click.echo("  counterexample: " + json.dumps(lasso))
    if nc_ok:
        click.echo("non-conflictingness: PASSED")
    else:
        click.echo(
            "non-conflictingness: FAILED (stuck node "
            + json.dumps(cl.node_doc(stuck))
            + ")"
        )
    click.echo(f"assumption-falsifying: {'yes' if falsifying else 'no'}")
    if not (gr1_ok and nc_ok):
        sys.exit(EXIT_FAILED)


@main.command()
@click.option("--cols", default=3, type=int)
@click.option("--lines", default=2, type=int)
@click.option("--goals", default=2, type=int)
@click.option(
    "--variant",
    type=click.Choice(["falsifiable", "nonfalsifiable"]),
    default="falsifiable",
)
@click.option("--out", "out_path", default=None, metavar="FILE")
def maze(cols: int, lines: int, goals: int, variant: str, out_path: str | None):
    """Generate a maze benchmark game file."""
    try:
        g, s = maze_generate(MazeParams(cols, lines, goals, variant))
    except ValueError as e:
        raise click.UsageError(str(e))
    _write(out_path, serialize_game(g, s))


@main.command()
@click.option("--spec", "spec_path", required=True, metavar="FILE")
@click.option("--csv", "csv_path", default=None, metavar="FILE")
def bench(spec_path: str, csv_path: str | None) -> None:
    """Run the benchmark harness from a JSON spec file."""
    try:
        instances, algorithms, timeout = parse_bench_spec(_read(spec_path))
    except (ValueError, KeyError) as e:
        raise click.UsageError(f"bad bench spec: {e}")
    report = run_benchmark(instances, algorithms, timeout_s=timeout)
    if csv_path is not None:
        _write(csv_path, report.to_csv())
    click.echo(report.to_text(), nl=False)


@main.command()
@click.option("--game", "game_path", required=True, metavar="FILE")
@click.option("--strategy", "strategy_path", required=True, metavar="FILE")
def simulate(game_path: str, strategy_path: str) -> None:
    """Play the environment interactively against a strategy."""
    try:
        g, s = parse_game(_read(game_path))
        machine = parse_strategy(_read(strategy_path), g)
    except (GameFormatError, ValueError) as e:
        raise click.UsageError(str(e))
    node = machine.init
    click.echo("type a successor state name to move the environment; q to quit")
    while True:
        q, a, b = node
        rank = machine.ranks.get(node)
        legal = [g.names[t] for t in g.succ[q]]
        click.echo(
            f"state {g.names[q]}  mode (a={a}, b={b})  rank {rank}  "
            f"moves: {', '.join(legal)}"
        )
        line = click.prompt("env move", default="q", show_default=False)
        if line.strip() in ("q", "quit", ""):
            return
        target = g.index_of.get(line.strip())
        if target is None or target not in g.succ[q]:
            click.echo(f"illegal move; legal: {', '.join(legal)}")
            continue
        a2, b2 = machine.env_updates[(q, a, b, target)]
        sys_node = (target, a2, b2)
        if sys_node not in machine.sys_moves:
            click.echo("strategy undefined here (left the winning region)")
            return
        q2, a3, b3 = machine.sys_moves[sys_node]
        node = (q2, a3, b3)
        click.echo(
            f"sys answers {g.names[q2]}  mode (a={a3}, b={b3})  "
            f"rank {machine.ranks.get(node)}"
        )


@main.command()
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
def serve(port: int, host: str) -> None:
    """Start the HTTP JSON service for the playground."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
