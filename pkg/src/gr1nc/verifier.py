"""Closed-loop construction and semantic checks on synthesized strategies.

Three questions are answered about the finite product of arena and
strategy: does every compliant play satisfy the GR(1) condition; can the
environment always still satisfy all its liveness assumptions (the
branching-time non-conflictingness property); and, as the negation of
the latter, does the strategy win by assumption falsification.

``oracle_verify`` re-decides both questions by explicit lasso search and
must always agree with the SCC-based checks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .graph import ENV, GameGraph, GR1Spec, StateSet
from .singleton import MemorylessStrategy
from .strategy import MealyStrategy, Node, from_memoryless


@dataclass
class ClosedLoopGraph:
    g: GameGraph
    init: Node
    nodes: list[Node]
    edges: dict[Node, tuple[Node, ...]]
    ranks: dict[Node, tuple[int, int] | None]

    def state_of(self, node: Node) -> int:
        return node[0]

    def node_doc(self, node: Node) -> dict:
        return {"state": self.g.names[node[0]], "a": node[1], "b": node[2]}


def build_closed_loop(
    g: GameGraph, s: GR1Spec, strat: MealyStrategy | MemorylessStrategy
) -> ClosedLoopGraph:
    """Reachable product of the arena with a strategy machine."""
    if isinstance(strat, MemorylessStrategy):
        strat = from_memoryless(g, strat.moves)
    edges: dict[Node, list[Node]] = {}
    seen = {strat.init}
    queue = deque([strat.init])
    while queue:
        node = queue.popleft()
        q, a, b = node
        targets: list[Node] = []
        if g.owners[q] == ENV:
            for t in g.succ[q]:
                key = (q, a, b, t)
                if key not in strat.env_updates:
                    raise ValueError(
                        f"no mode update for env move {g.names[q]} -> {g.names[t]}"
                    )
                a2, b2 = strat.env_updates[key]
                targets.append((t, a2, b2))
        else:
            if node not in strat.sys_moves:
                raise ValueError(
                    f"reachable sys state {g.names[q]} outside strategy domain"
                )
            targets.append(strat.sys_moves[node])
        edges[node] = targets
        for nxt in targets:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    nodes = sorted(seen)
    return ClosedLoopGraph(
        g=g,
        init=strat.init,
        nodes=nodes,
        edges={v: tuple(ts) for v, ts in edges.items()},
        ranks={v: strat.ranks.get(v) for v in nodes},
    )


def _digraph(cl: ClosedLoopGraph) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(cl.nodes)
    for v, targets in cl.edges.items():
        for t in targets:
            G.add_edge(v, t)
    return G


def _touches(nodes: Iterable[Node], member: StateSet) -> bool:
    return any(v[0] in member for v in nodes)


def _cycle_through(G: nx.DiGraph, component: set[Node], targets: list[Node]) -> list[Node]:
    """A cycle inside one SCC that passes through every target node."""
    sub = G.subgraph(component)
    start = targets[0] if targets else next(iter(component))
    waypoints = [t for t in targets if t != start]
    if not waypoints:
        # Any proper cycle through start.
        succ = next(iter(sub.successors(start)))
        path = nx.shortest_path(sub, succ, start)
        return [start] + path[:-1]
    cycle = [start]
    at = start
    for t in waypoints:
        path = nx.shortest_path(sub, at, t)
        cycle.extend(path[1:])
        at = t
    back = nx.shortest_path(sub, at, start)
    cycle.extend(back[1:-1])
    return cycle


def check_gr1_holds(
    cl: ClosedLoopGraph, s: GR1Spec
) -> tuple[bool, dict | None]:
    """Every play visiting all assumption sets infinitely often must visit
    every guarantee set infinitely often.  Violation witness: a reachable
    cycle avoiding some guarantee set while touching every assumption set.
    """
    G = _digraph(cl)
    for a, fg in enumerate(s.guarantees, start=1):
        keep = [v for v in cl.nodes if v[0] not in fg]
        H = G.subgraph(keep)
        for component in nx.strongly_connected_components(H):
            if len(component) < 2:
                continue  # self-loops are impossible under alternation
            if all(_touches(component, fa) for fa in s.assumptions):
                reps = []
                for fa in s.assumptions:
                    reps.append(next(v for v in component if v[0] in fa))
                cycle = _cycle_through(G.subgraph(keep), component, reps)
                stem = nx.shortest_path(G, cl.init, cycle[0])
                return False, {
                    "stem": [cl.node_doc(v) for v in stem[:-1]],
                    "cycle": [cl.node_doc(v) for v in cycle],
                }
    return True, None


def check_nonconflicting(
    cl: ClosedLoopGraph, assumptions: Iterable[StateSet]
) -> tuple[bool, Node | None]:
    """From every reachable node some continuation satisfies all assumptions."""
    assumptions = list(assumptions)
    G = _digraph(cl)
    good: set[Node] = set()
    for component in nx.strongly_connected_components(G):
        if len(component) < 2:
            continue
        if all(_touches(component, fa) for fa in assumptions):
            good |= component
    can_reach = set(good)
    rev = G.reverse(copy=False)
    frontier = deque(good)
    while frontier:
        v = frontier.popleft()
        for p in rev.successors(v):
            if p not in can_reach:
                can_reach.add(p)
                frontier.append(p)
    for v in _bfs_order(cl):
        if v not in can_reach:
            return False, v
    return True, None


def _bfs_order(cl: ClosedLoopGraph) -> list[Node]:
    order = [cl.init]
    seen = {cl.init}
    queue = deque([cl.init])
    while queue:
        v = queue.popleft()
        for t in cl.edges[v]:
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def detect_falsifying(cl: ClosedLoopGraph, assumptions: Iterable[StateSet]) -> bool:
    holds, _ = check_nonconflicting(cl, assumptions)
    return not holds


def _collecting_cycle_exists(
    nodes: list[Node],
    edges: dict[Node, tuple[Node, ...]],
    sets: list[StateSet],
    allowed: set[Node],
) -> set[Node]:
    """Nodes from which a cycle back to themselves collects every set.

    Search over (node, collected-sets bitmask) pairs; a repeat visit of the
    same pair cannot add anything, which bounds the walk enumeration.
    """
    full = (1 << len(sets)) - 1

    def setmask(v: Node) -> int:
        m = 0
        for k, member in enumerate(sets):
            if v[0] in member:
                m |= 1 << k
        return m

    winners: set[Node] = set()
    for v0 in nodes:
        if v0 not in allowed:
            continue
        start = (v0, setmask(v0))
        seen = {start}
        stack = [start]
        found = False
        while stack and not found:
            v, collected = stack.pop()
            for t in edges[v]:
                if t not in allowed:
                    continue
                nxt = (t, collected | setmask(t))
                if t == v0 and nxt[1] == full:
                    found = True
                    break
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if found:
            winners.add(v0)
    return winners


def oracle_verify(cl: ClosedLoopGraph, s: GR1Spec, bound: int = 64) -> dict:
    """Decide both properties by explicit lasso search; independent oracle."""
    if len(cl.nodes) > bound:
        raise ValueError(f"closed loop has {len(cl.nodes)} nodes, bound is {bound}")
    all_nodes = set(cl.nodes)
    assumptions = list(s.assumptions)

    gr1 = True
    for fg in s.guarantees:
        allowed = {v for v in cl.nodes if v[0] not in fg}
        if _collecting_cycle_exists(cl.nodes, cl.edges, assumptions, allowed):
            gr1 = False
            break

    alive = _collecting_cycle_exists(cl.nodes, cl.edges, assumptions, all_nodes)
    nonconflicting = True
    for v in cl.nodes:
        reach = {v}
        queue = deque([v])
        ok = v in alive
        while queue and not ok:
            u = queue.popleft()
            for t in cl.edges[u]:
                if t in alive:
                    ok = True
                    break
                if t not in reach:
                    reach.add(t)
                    queue.append(t)
        if not ok:
            nonconflicting = False
            break

    guarantee_live = bool(
        _collecting_cycle_exists(cl.nodes, cl.edges, list(s.guarantees), all_nodes)
    )
    return {
        "gr1_holds": gr1,
        "nonconflicting": nonconflicting,
        "falsifying": not nonconflicting,
        "guarantee_live": guarantee_live,
    }


def has_guarantee_scc(cl: ClosedLoopGraph, s: GR1Spec) -> bool:
    """Some reachable nontrivial SCC touches every guarantee set."""
    G = _digraph(cl)
    for component in nx.strongly_connected_components(G):
        if len(component) < 2:
            continue
        if all(_touches(component, fg) for fg in s.guarantees):
            return True
    return False
