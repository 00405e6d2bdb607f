"""Shared helpers: random-instance corpora and independent reference oracles.

The oracles here are written from the definitions, on purpose sharing no
code with the implementation they check.
"""
from __future__ import annotations

import random
from itertools import product

import pytest

from gr1nc import GameGraph, GR1Spec, StateSet
from gr1nc.fixtures import ex0, ex1, h1_analog, h2_analog, random_game

__all__ = [
    "ex0",
    "ex1",
    "h1_analog",
    "h2_analog",
    "random_game",
    "games",
    "names_of",
    "set_by_names",
    "buchi_lasso_nonempty",
    "random_memoryless",
]


def games(seed: int, count: int, **kw):
    """Deterministic stream of random valid instances."""
    rng = random.Random(seed)
    for _ in range(count):
        yield random_game(rng, **kw)


def names_of(g: GameGraph, p: StateSet) -> set[str]:
    return {g.names[q] for q in p}


def set_by_names(g: GameGraph, names: list[str]) -> StateSet:
    return g.set_of(g.index_of[n] for n in names)


def buchi_lasso_nonempty(
    g: GameGraph, removed: set[int], sets: list[StateSet]
) -> bool:
    """Brute-force generalized-Buchi emptiness on the arena minus `removed`.

    Reports whether some lasso reachable from the initial state has a
    cycle that avoids `removed` and visits every member of `sets`; the
    stem may pass through `removed` (finitely many visits are allowed).
    Enumerates walks over (state, collected-sets bitmask) pairs per
    candidate cycle anchor; exponential bookkeeping, only for tiny graphs.
    """
    full = (1 << len(sets)) - 1

    def mask(q: int) -> int:
        return sum(1 << k for k, member in enumerate(sets) if q in member)

    # Stem reachability in the full arena.
    reach = {g.init}
    stack = [g.init]
    while stack:
        q = stack.pop()
        for t in g.succ[q]:
            if t not in reach:
                reach.add(t)
                stack.append(t)

    for anchor in reach - removed:
        seen = {(anchor, mask(anchor))}
        stack = [(anchor, mask(anchor))]
        while stack:
            q, collected = stack.pop()
            for t in g.succ[q]:
                if t in removed:
                    continue
                nxt = (t, collected | mask(t))
                if t == anchor and nxt[1] == full:
                    return True
                if t in reach and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return False


def random_memoryless(rng: random.Random, g: GameGraph) -> dict[int, int]:
    """An arbitrary total system strategy (not necessarily winning)."""
    from gr1nc.graph import SYS

    return {
        q: rng.choice(g.succ[q])
        for q in range(g.n_states)
        if g.owners[q] == SYS
    }
