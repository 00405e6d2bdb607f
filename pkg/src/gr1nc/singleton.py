"""4-nested fixed point for a single assumption and guarantee set.

Solves for the largest set of states from which the system can satisfy
the one-pair GR(1) condition without ever cutting off the environment's
ability to satisfy its liveness assumption.  The nesting is

    nu Z . mu Y . nu X . mu W .
        (FG & Pre1(Z)) | Pre1(Y) | ((Q\\FA) & Apre(W, X\\FA))

The per-state (i, j) rank records the mu-iterations (Y index i, W index
j) at which a state first enters the converged fixed point; decreasing
the rank is what drives the extracted strategy toward the guarantee.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import GameGraph, StateSet, SYS
from .transformers import PreTally, _check_width

UNRANKED = ("unranked", None, None)


@dataclass
class RankTable:
    """Converged iterates and per-state ranks of the 4-nested fixed point."""

    z_inf: StateSet
    ranks: dict[int, tuple[int, int]]
    y_snapshots: list[StateSet]
    w_snapshots: list[list[StateSet]]
    fa: StateSet
    fg: StateSet
    pre_invocations: int = 0
    z_iterations: int = 0

    def rank(self, q: int) -> tuple[int, int] | None:
        return self.ranks.get(q)


def _mu_w(pre: PreTally, base: int, notfa: int, x: int) -> list[int]:
    """Inner mu-W chain for fixed base terms and X value; returns snapshots."""
    xn = x & notfa
    w = 0
    chain = [0]
    while True:
        w2 = base | (notfa & pre.apre(w, xn))
        if w2 == w:
            return chain
        w = w2
        chain.append(w)


def _nu_x(pre: PreTally, base: int, notfa: int, full: int) -> tuple[int, list[int]]:
    x = full
    while True:
        chain = _mu_w(pre, base, notfa, x)
        x2 = chain[-1]
        if x2 == x:
            return x, chain
        x = x2


def _mu_y(
    pre: PreTally, fa: int, fg: int, z: int, full: int
) -> tuple[list[int], list[list[int]]]:
    notfa = full & ~fa
    goal = fg & pre.pre_ctrl(1, z)
    y = 0
    y_snaps = [0]
    w_chains: list[list[int]] = []
    while True:
        base = goal | pre.pre_ctrl(1, y)
        x, chain = _nu_x(pre, base, notfa, full)
        if x == y:
            return y_snaps, w_chains
        y = x
        y_snaps.append(y)
        w_chains.append(chain)


def solve_4fp_singleton(
    g: GameGraph, fa: StateSet, fg: StateSet
) -> tuple[StateSet, RankTable]:
    """Winning region and rank table of the non-conflicting single-pair solve."""
    _check_width(g, fa, fg)
    pre = PreTally(g)
    full = g.full_mask
    z = full
    z_iterations = 0
    while True:
        y_snaps, w_chains = _mu_y(pre, fa.mask, fg.mask, z, full)
        z_iterations += 1
        z2 = y_snaps[-1]
        if z2 == z:
            break
        z = z2

    width = g.n_states
    ranks: dict[int, tuple[int, int]] = {}
    for i in range(1, len(y_snaps)):
        ydiff = y_snaps[i] & ~y_snaps[i - 1]
        chain = w_chains[i - 1]
        for j in range(1, len(chain)):
            for q in StateSet(width, ydiff & (chain[j] & ~chain[j - 1])):
                ranks[q] = (i, j)

    table = RankTable(
        z_inf=StateSet(width, z),
        ranks=ranks,
        y_snapshots=[StateSet(width, y) for y in y_snaps],
        w_snapshots=[[StateSet(width, w) for w in c] for c in w_chains],
        fa=fa,
        fg=fg,
        pre_invocations=pre.count,
        z_iterations=z_iterations,
    )
    return table.z_inf, table


def classify_rank(rt: RankTable, q: int) -> tuple[str, int | None, int | None]:
    """Classify q as ("D", 1, 1), ("E", i, 1), ("R", i, j), or unranked."""
    r = rt.rank(q)
    if r is None:
        return UNRANKED
    i, j = r
    if (i, j) == (1, 1):
        return ("D", 1, 1)
    if j == 1:
        return ("E", i, 1)
    return ("R", i, j)


@dataclass
class MemorylessStrategy:
    """System strategy on the winning region: one successor per sys state."""

    moves: dict[int, int]
    z_inf: StateSet


def extract_strategy_singleton(g: GameGraph, rt: RankTable) -> MemorylessStrategy:
    """Rank-decreasing successor choice; minimal rank then minimal state id."""
    if not rt.z_inf:
        raise ValueError("winning region is empty")
    moves: dict[int, int] = {}
    for q in rt.z_inf:
        if g.owners[q] != SYS:
            continue
        ranked = [(rt.ranks[t], t) for t in g.succ[q] if t in rt.ranks]
        if not ranked:
            raise AssertionError(f"sys state {g.names[q]} has no ranked successor")
        best_rank, best = min(ranked)
        if rt.ranks[q] > (1, 1) and not best_rank < rt.ranks[q]:
            raise AssertionError(
                f"no rank-decreasing successor at {g.names[q]} (rank {rt.ranks[q]})"
            )
        moves[q] = best
    return MemorylessStrategy(moves=moves, z_inf=rt.z_inf)


def solve_4fp_negated(g: GameGraph, fa: StateSet, fg: StateSet) -> StateSet:
    """Complement fixed point, used as a determinacy oracle.

    mu Z . nu Y . mu X . nu W .
        Pre0(Z) | (~FG & FA & Pre0(Y)) | (~FG & ApreDual(W, X | FA))
    """
    _check_width(g, fa, fg)
    pre = PreTally(g)
    full = g.full_mask
    nfg = full & ~fg.mask
    z = 0
    while True:
        y = full
        while True:
            x = 0
            while True:
                w = full
                while True:
                    w2 = (
                        pre.pre_ctrl(0, z)
                        | (nfg & fa.mask & pre.pre_ctrl(0, y))
                        | (nfg & pre.apre_dual(w, x | fa.mask))
                    )
                    if w2 == w:
                        break
                    w = w2
                if w == x:
                    break
                x = w
            if x == y:
                break
            y = x
        if y == z:
            break
        z = y
    return StateSet(g.n_states, z)
