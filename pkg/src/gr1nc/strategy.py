"""Finite-memory strategies as explicit Mealy machines.

A machine node is a (state, a, b) triple: the arena state plus the mode
memory (pursued guarantee a, avoided assumption b).  System nodes carry
exactly one move; environment nodes carry one mode update per arena
successor.  Memoryless strategies embed with the constant mode (1, 1).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .graph import ENV, GameFormatError, GameGraph

Node = tuple[int, int, int]
Rank = tuple[int, int]


@dataclass
class MealyStrategy:
    n: int
    m: int
    init: Node
    sys_moves: dict[Node, Node]
    env_updates: dict[tuple[int, int, int, int], tuple[int, int]]
    ranks: dict[Node, Rank | None] = field(default_factory=dict)

    def nodes(self) -> list[Node]:
        seen = set(self.sys_moves)
        for (q, a, b, _t), _ in self.env_updates.items():
            seen.add((q, a, b))
        seen.add(self.init)
        for target in self.sys_moves.values():
            seen.add(target)
        for (_q, _a, _b, t), (a2, b2) in self.env_updates.items():
            seen.add((t, a2, b2))
        return sorted(seen)


def build_machine(
    g: GameGraph,
    n: int,
    m: int,
    init: Node,
    sys_choice: Callable[[int, int, int], Node],
    env_update: Callable[[int, int, int, int], tuple[int, int]],
    rank_of: Callable[[int, int, int], Rank | None] = lambda q, a, b: None,
) -> MealyStrategy:
    """Breadth-first closure of the strategy over reachable mode triples."""
    sys_moves: dict[Node, Node] = {}
    env_updates: dict[tuple[int, int, int, int], tuple[int, int]] = {}
    ranks: dict[Node, Rank | None] = {}
    seen = {init}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        q, a, b = node
        ranks[node] = rank_of(q, a, b)
        if g.owners[q] == ENV:
            for t in g.succ[q]:
                a2, b2 = env_update(q, a, b, t)
                env_updates[(q, a, b, t)] = (a2, b2)
                nxt = (t, a2, b2)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        else:
            nxt = sys_choice(q, a, b)
            sys_moves[node] = nxt
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return MealyStrategy(n, m, init, sys_moves, env_updates, ranks)


def from_memoryless(
    g: GameGraph,
    moves: dict[int, int],
    start: int | None = None,
    rank_of: Callable[[int, int, int], Rank | None] | None = None,
) -> MealyStrategy:
    """Embed a per-state system strategy with constant mode (1, 1)."""
    start = g.init if start is None else start

    def sys_choice(q: int, a: int, b: int) -> Node:
        if q not in moves:
            raise KeyError(f"reachable sys state {g.names[q]} outside strategy domain")
        return (moves[q], 1, 1)

    return build_machine(
        g,
        1,
        1,
        (start, 1, 1),
        sys_choice,
        lambda q, a, b, t: (1, 1),
        rank_of or (lambda q, a, b: None),
    )


def serialize_strategy(g: GameGraph, st: MealyStrategy) -> str:
    moves = []
    for (q, a, b), (t, a2, b2) in st.sys_moves.items():
        moves.append((g.names[q], a, b, g.names[t], a2, b2))
    for (q, a, b, t), (a2, b2) in st.env_updates.items():
        moves.append((g.names[q], a, b, g.names[t], a2, b2))
    moves.sort()
    doc = {
        "kind": "moded",
        "n": st.n,
        "m": st.m,
        "init": {"state": g.names[st.init[0]], "a": st.init[1], "b": st.init[2]},
        "moves": [
            {"state": s, "a": a, "b": b, "to": t, "a2": a2, "b2": b2}
            for s, a, b, t, a2, b2 in moves
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_strategy(text: str, g: GameGraph) -> MealyStrategy:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(f"syntax error: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(doc, dict) or doc.get("kind") != "moded":
        raise GameFormatError("strategy document must have kind 'moded'")
    index = g.index_of
    init_doc = doc["init"]
    if init_doc["state"] not in index:
        raise GameFormatError(f"unknown initial state {init_doc['state']}")
    init = (index[init_doc["state"]], int(init_doc["a"]), int(init_doc["b"]))
    sys_moves: dict[Node, Node] = {}
    env_updates: dict[tuple[int, int, int, int], tuple[int, int]] = {}
    for entry in doc["moves"]:
        for key in ("state", "to"):
            if entry[key] not in index:
                raise GameFormatError(f"move references unknown state {entry[key]}")
        q = index[entry["state"]]
        t = index[entry["to"]]
        a, b = int(entry["a"]), int(entry["b"])
        a2, b2 = int(entry["a2"]), int(entry["b2"])
        if t not in g.succ[q]:
            raise GameFormatError(
                f"move {entry['state']} -> {entry['to']} is not an arena edge"
            )
        if g.owners[q] == ENV:
            env_updates[(q, a, b, t)] = (a2, b2)
        else:
            sys_moves[(q, a, b)] = (t, a2, b2)
    return MealyStrategy(int(doc["n"]), int(doc["m"]), init, sys_moves, env_updates)
