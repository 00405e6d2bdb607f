"""One-step predecessor operators over game arenas.

All fixed points in this package are built from five operators:

* ``pre_exists``  -- some successor lies in the target set
* ``pre_forall``  -- every successor lies in the target set
* ``pre_ctrl(l)`` -- player l can force the next state into the target
* ``apre``        -- the target is reachable in one step while the system
                     confines all one-step behavior to target u fallback
* ``apre_dual``   -- complement-dual of ``apre``

The public functions take and return StateSets.  The mask-level variants
(same names with a leading underscore) operate on raw int masks and are
what the solvers call; ``PreTally`` wraps them with invocation counting.
"""
from __future__ import annotations

from .graph import ENV, GameGraph, StateSet, WidthMismatchError


def _check_width(g: GameGraph, *sets: StateSet) -> None:
    for p in sets:
        if p.width != g.n_states:
            raise WidthMismatchError(
                f"set width {p.width} does not match graph size {g.n_states}"
            )


def _pre_exists(g: GameGraph, p: int) -> int:
    out = 0
    bit = 1
    for sm in g.succ_masks:
        if sm & p:
            out |= bit
        bit <<= 1
    return out


def _pre_forall(g: GameGraph, p: int) -> int:
    out = 0
    bit = 1
    for sm in g.succ_masks:
        if not sm & ~p:
            out |= bit
        bit <<= 1
    return out


def _pre_ctrl(g: GameGraph, player: int, p: int) -> int:
    # States where `player` can force the successor into p: own states need
    # one successor in p, opponent states need all successors in p.
    out = 0
    bit = 1
    for owner, sm in zip(g.owners, g.succ_masks):
        if owner == player:
            if sm & p:
                out |= bit
        else:
            if not sm & ~p:
                out |= bit
        bit <<= 1
    return out


def _apre(g: GameGraph, p: int, p2: int) -> int:
    # Single pass over Pre-exists(p) & Pre-ctrl(1, p|p2).
    both = p | p2
    out = 0
    bit = 1
    for owner, sm in zip(g.owners, g.succ_masks):
        if owner == ENV:
            if sm & p and not sm & ~both:
                out |= bit
        else:
            if sm & p:
                out |= bit
        bit <<= 1
    return out


def _apre_dual(g: GameGraph, p: int, p2: int) -> int:
    # Single pass over Pre-forall(p) | Pre-ctrl(0, p&p2).
    meet = p & p2
    out = 0
    bit = 1
    for owner, sm in zip(g.owners, g.succ_masks):
        if not sm & ~p:
            out |= bit
        elif owner == ENV:
            if sm & meet:
                out |= bit
        else:
            if not sm & ~meet:
                out |= bit
        bit <<= 1
    return out


def pre_exists(g: GameGraph, p: StateSet) -> StateSet:
    """States with at least one successor in p."""
    _check_width(g, p)
    return StateSet(p.width, _pre_exists(g, p.mask))


def pre_forall(g: GameGraph, p: StateSet) -> StateSet:
    """States all of whose successors are in p."""
    _check_width(g, p)
    return StateSet(p.width, _pre_forall(g, p.mask))


def pre_ctrl(g: GameGraph, player: int, p: StateSet) -> StateSet:
    """States from which `player` can force the next state into p."""
    if player not in (0, 1):
        raise ValueError(f"player must be 0 or 1, got {player!r}")
    _check_width(g, p)
    return StateSet(p.width, _pre_ctrl(g, player, p.mask))


def apre(g: GameGraph, p: StateSet, p2: StateSet) -> StateSet:
    """Conditional predecessor: pre_exists(p) & pre_ctrl(1, p | p2)."""
    _check_width(g, p, p2)
    return StateSet(p.width, _apre(g, p.mask, p2.mask))


def apre_dual(g: GameGraph, p: StateSet, p2: StateSet) -> StateSet:
    """Dual conditional predecessor: pre_forall(p) | pre_ctrl(0, p & p2)."""
    _check_width(g, p, p2)
    return StateSet(p.width, _apre_dual(g, p.mask, p2.mask))


class PreTally:
    """Mask-level operator access with an invocation counter."""

    def __init__(self, g: GameGraph):
        self.g = g
        self.count = 0

    def pre_exists(self, p: int) -> int:
        self.count += 1
        return _pre_exists(self.g, p)

    def pre_forall(self, p: int) -> int:
        self.count += 1
        return _pre_forall(self.g, p)

    def pre_ctrl(self, player: int, p: int) -> int:
        self.count += 1
        return _pre_ctrl(self.g, player, p)

    def apre(self, p: int, p2: int) -> int:
        self.count += 1
        return _apre(self.g, p, p2)

    def apre_dual(self, p: int, p2: int) -> int:
        self.count += 1
        return _apre_dual(self.g, p, p2)
