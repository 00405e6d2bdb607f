"""Sufficient-condition precheck and guarantee augmentation.

The 4-nested fixed point solves the non-conflicting synthesis problem
outright only when every play satisfying the guarantees also satisfies
the assumptions.  ``check_inclusion`` decides this per assumption set by
deleting the set from the arena and testing generalized-Buchi emptiness
of the guarantees on the remainder; failing sets are added as extra
guarantees by ``augment_guarantees``.
"""
from __future__ import annotations

from collections import deque

import networkx as nx

from .graph import GameGraph, GR1Spec


def _alive_after_removal(g: GameGraph, removed: set[int]) -> set[int]:
    """States with an infinite play after deleting `removed`: prune dead ends."""
    alive = set(range(g.n_states)) - removed
    changed = True
    while changed:
        changed = False
        for q in list(alive):
            if not any(t in alive for t in g.succ[q]):
                alive.discard(q)
                changed = True
    return alive


def check_inclusion(g: GameGraph, s: GR1Spec) -> set[int]:
    """1-based indices b whose deletion still leaves a guarantee-satisfying play.

    The witness of a failure is a lasso whose cycle avoids F_A^b while
    visiting every guarantee set; the stem runs through the full arena
    (a play may visit F_A^b finitely often), so reachability is computed
    on the arena and only the cycle is confined to the deleted graph.
    """
    reach_full = {g.init}
    queue = deque([g.init])
    while queue:
        q = queue.popleft()
        for t in g.succ[q]:
            if t not in reach_full:
                reach_full.add(t)
                queue.append(t)

    failed: set[int] = set()
    for b, fa in enumerate(s.assumptions, start=1):
        alive = _alive_after_removal(g, set(fa)) & reach_full
        if not alive:
            continue
        G = nx.DiGraph()
        G.add_nodes_from(alive)
        G.add_edges_from(
            (q, t) for q in alive for t in g.succ[q] if t in alive
        )
        for component in nx.strongly_connected_components(G):
            if len(component) < 2:
                continue  # no self-loops under alternation
            if all(any(q in fg for q in component) for fg in s.guarantees):
                failed.add(b)
                break
    return failed


def augment_guarantees(s: GR1Spec, failed: set[int]) -> GR1Spec:
    """Add each failed assumption set as an additional guarantee."""
    extra = tuple(
        s.assumptions[b - 1]
        for b in sorted(failed)
        if s.assumptions[b - 1] not in s.guarantees
    )
    if not extra:
        return s
    return GR1Spec(s.assumptions, s.guarantees + extra)
