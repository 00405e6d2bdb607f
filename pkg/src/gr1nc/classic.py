"""Classical 3-nested fixed-point GR(1) solver, used as the baseline.

    nu Z . mu Y . nu X . (FG_a & Pre1(next Z)) | Pre1(Y)
                       | OR_b ((Q\\FA_b) & Pre1(X))

The extracted strategy may win by falsifying the environment's liveness
assumptions; the verifier module detects exactly that.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import ENV, GameGraph, GR1Spec, StateSet, SYS
from .strategy import MealyStrategy, Node, build_machine
from .transformers import PreTally
from .vector import normalize_spec


@dataclass
class ClassicResult:
    winning: StateSet
    strategy: dict[tuple[int, int], tuple[int, int]]  # (sys q, a) -> (q', a')
    y_ranks: list[dict[int, int]]  # [a-1][q] = mu-Y entry index of q
    n: int
    m: int
    spec: GR1Spec
    outer_iterations: int = 0
    pre_invocations: int = 0
    avoid_sets: list[dict[int, int]] = field(default_factory=list)


def _line_mu_y_3fp(
    pre: PreTally, fa_masks: list[int], fg_a: int, z_next: int, full: int
) -> tuple[list[int], list[dict[int, int]], list[int]]:
    """mu-Y of one line.

    Returns Y snapshots, per-iteration X fixpoints, and per-iteration
    "progress" masks (the goal | Pre1(Y) disjunct alone, i.e. states that
    enter Y without relying on the assumption-avoidance disjunct).
    """
    goal = fg_a & pre.pre_ctrl(1, z_next)
    y = 0
    y_snaps = [0]
    x_fixes: list[dict[int, int]] = []
    bases: list[int] = []
    while True:
        base = goal | pre.pre_ctrl(1, y)
        y2 = 0
        step_fixes: dict[int, int] = {}
        for bi, fa_b in enumerate(fa_masks, start=1):
            notfa = full & ~fa_b
            x = full
            while True:
                x2 = base | (notfa & pre.pre_ctrl(1, x))
                if x2 == x:
                    break
                x = x2
            step_fixes[bi] = x
            y2 |= x
        if y2 == y:
            return y_snaps, x_fixes, bases
        y = y2
        y_snaps.append(y)
        x_fixes.append(step_fixes)
        bases.append(base)


def solve_3fp(g: GameGraph, s: GR1Spec) -> ClassicResult:
    s = normalize_spec(g, s)
    n, m = s.n, s.m
    full = g.full_mask
    fa_masks = [p.mask for p in s.assumptions]
    fg_masks = [p.mask for p in s.guarantees]
    pre = PreTally(g)

    z = [full] * n
    outer = 0
    changed = True
    while changed:
        changed = False
        outer += 1
        for a in range(1, n + 1):
            y_snaps, _, _ = _line_mu_y_3fp(pre, fa_masks, fg_masks[a - 1], z[a % n], full)
            z2 = y_snaps[-1]
            if z2 != z[a - 1]:
                z[a - 1] = z2
                changed = True
    if any(zi != z[0] for zi in z):
        raise AssertionError("line fixed points disagree after convergence")
    winning = StateSet(g.n_states, z[0])

    y_ranks: list[dict[int, int]] = []
    avoid_sets: list[dict[int, int]] = []
    # kinds[a-1][q]: how q entered mu-Y for line a — 0 via the goal, 1 via
    # Pre1(Y) progress, 2 only via the assumption-avoidance disjunct.  Used
    # as a tie-break so the strategy stalls the environment only when no
    # progress-entered successor of equal rank exists.
    kinds: list[dict[int, int]] = []
    for a in range(1, n + 1):
        y_snaps, x_fixes, bases = _line_mu_y_3fp(
            pre, fa_masks, fg_masks[a - 1], z[a % n], full
        )
        goal = fg_masks[a - 1]
        rank: dict[int, int] = {}
        avoid: dict[int, int] = {}
        kind: dict[int, int] = {}
        for i in range(1, len(y_snaps)):
            ydiff = y_snaps[i] & ~y_snaps[i - 1]
            for q in StateSet(g.n_states, ydiff):
                rank[q] = i
                bit = 1 << q
                if bit & goal:
                    kind[q] = 0
                elif bit & bases[i - 1]:
                    kind[q] = 1
                else:
                    kind[q] = 2
                if not bit & goal:
                    # Remember the avoid region (lowest b first) for states
                    # that enter neither via the goal nor with a decreasing
                    # successor available; the strategy stays inside it.
                    for bi in sorted(x_fixes[i - 1]):
                        if bit & x_fixes[i - 1][bi]:
                            avoid[q] = x_fixes[i - 1][bi]
                            break
        y_ranks.append(rank)
        avoid_sets.append(avoid)
        kinds.append(kind)

    strategy: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(1, n + 1):
        rank = y_ranks[a - 1]
        kind = kinds[a - 1]
        for q in winning:
            if g.owners[q] != SYS:
                continue
            if (1 << q) & fg_masks[a - 1]:
                a2 = a % n + 1
                rank2 = y_ranks[a2 - 1]
                kind2 = kinds[a2 - 1]
                cands = [
                    (kind2.get(t, 2), rank2.get(t, len(rank2) + 2), t)
                    for t in g.succ[q]
                    if t in winning
                ]
                strategy[(q, a)] = (min(cands)[2], a2)
                continue
            goal_succ = [
                t for t in g.succ[q] if t in rank and kind[t] == 0
            ]
            if goal_succ:
                strategy[(q, a)] = (min(goal_succ), a)
                continue
            decreasing = [
                (kind[t], rank[t], t)
                for t in g.succ[q]
                if t in rank and rank[t] < rank[q]
            ]
            if decreasing:
                strategy[(q, a)] = (min(decreasing)[2], a)
                continue
            region = avoid_sets[a - 1][q]
            inside = [
                (rank[t], kind[t], t) for t in g.succ[q] if (1 << t) & region
            ]
            strategy[(q, a)] = (min(inside)[2], a)

    return ClassicResult(
        winning=winning,
        strategy=strategy,
        y_ranks=y_ranks,
        n=n,
        m=m,
        spec=s,
        outer_iterations=outer,
        pre_invocations=pre.count,
    )


def classic_machine(g: GameGraph, res: ClassicResult, start: int | None = None) -> MealyStrategy:
    """Mealy machine of the classical strategy; the b mode is constant 1."""
    start = g.init if start is None else start
    if start not in res.winning:
        raise ValueError("start state is not classically winning")
    fg_masks = [p.mask for p in res.spec.guarantees]

    def sys_choice(q: int, a: int, b: int) -> Node:
        t, a2 = res.strategy[(q, a)]
        return (t, a2, 1)

    def env_update(q: int, a: int, b: int, t: int) -> tuple[int, int]:
        if (1 << q) & fg_masks[a - 1]:
            return (a % res.n + 1, 1)
        return (a, 1)

    def rank_of(q: int, a: int, b: int):
        i = res.y_ranks[a - 1].get(q)
        return None if i is None else (i, 1)

    return build_machine(g, res.n, 1, (start, 1, 1), sys_choice, env_update, rank_of)
