"""Vectorized 4-nested fixed point for general assumption/guarantee counts.

One fixed-point line per guarantee set a; each line takes a disjunction
over the assumption sets b it may help the environment falsify finitely
often.  Ranks are indexed by the mode pair (a, b) and the extracted
strategy is a Mealy machine over (state, a, b) triples.

The ``heuristic`` flag restricts every line a to the single conjunct
b = a.  This is sound (the result is contained in the full fixed point)
but incomplete.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import GameGraph, GR1Spec, StateSet, SYS
from .singleton import _nu_x
from .strategy import MealyStrategy, Node, Rank, build_machine
from .transformers import PreTally

INF = float("inf")


def normalize_spec(g: GameGraph, s: GR1Spec) -> GR1Spec:
    """Replace an empty condition family by the trivially-true family {Q}."""
    assumptions = s.assumptions or (g.full(),)
    guarantees = s.guarantees or (g.full(),)
    if assumptions is s.assumptions and guarantees is s.guarantees:
        return s
    return GR1Spec(tuple(assumptions), tuple(guarantees))


@dataclass
class ModedRankTable:
    """Per-line iterates and (a, b)-indexed ranks of the vectorized solve."""

    n: int
    m: int
    heuristic: bool
    z_inf: StateSet
    y_snapshots: list[list[StateSet]]  # [a-1][i] = Y^i of line a
    w_snapshots: dict[tuple[int, int], list[list[StateSet]]]  # [(a,b)][i-1][j]
    ranks: dict[tuple[int, int], dict[int, Rank]]
    spec: GR1Spec
    outer_iterations: int = 0
    pre_invocations: int = 0
    pre_per_line: dict[int, int] = field(default_factory=dict)

    def bs(self, a: int) -> range | list[int]:
        return [a] if self.heuristic else range(1, self.m + 1)

    def rank(self, q: int, a: int, b: int) -> Rank | None:
        return self.ranks.get((a, b), {}).get(q)

    def best_b(self, q: int, a: int) -> tuple[Rank, int] | None:
        """Smallest defined rank over b for state q in line a; ties to low b."""
        best = None
        for b in self.bs(a):
            r = self.rank(q, a, b)
            if r is not None and (best is None or (r, b) < best):
                best = (r, b)
        return best


def _line_mu_y(
    pre: PreTally,
    fa_masks: list[int],
    fg_a: int,
    z_next: int,
    full: int,
    bs: list[int],
) -> tuple[list[int], dict[int, list[list[int]]]]:
    """mu-Y evaluation of one line; returns Y snapshots and per-b W chains."""
    goal = fg_a & pre.pre_ctrl(1, z_next)
    y = 0
    y_snaps = [0]
    chains: dict[int, list[list[int]]] = {b: [] for b in bs}
    while True:
        base = goal | pre.pre_ctrl(1, y)
        x_union = 0
        step_chains: dict[int, list[int]] = {}
        for b in bs:
            notfa = full & ~fa_masks[b - 1]
            x, chain = _nu_x(pre, base, notfa, full)
            x_union |= x
            step_chains[b] = chain
        if x_union == y:
            return y_snaps, chains
        y = x_union
        y_snaps.append(y)
        for b in bs:
            chains[b].append(step_chains[b])


def solve_4fp_vector(
    g: GameGraph, s: GR1Spec, heuristic: bool = False
) -> tuple[StateSet, ModedRankTable]:
    """Common line fixed point and the moded rank table."""
    s = normalize_spec(g, s)
    n, m = s.n, s.m
    if heuristic and n != m:
        raise ValueError(f"heuristic needs equally many sets, got n={n}, m={m}")
    full = g.full_mask
    width = g.n_states
    fa_masks = [p.mask for p in s.assumptions]
    fg_masks = [p.mask for p in s.guarantees]
    tallies = {a: PreTally(g) for a in range(1, n + 1)}
    bs_of = {a: ([a] if heuristic else list(range(1, m + 1))) for a in range(1, n + 1)}

    z = [full] * n
    outer = 0
    changed = True
    while changed:
        changed = False
        outer += 1
        for a in range(1, n + 1):
            z_next = z[a % n]
            y_snaps, _ = _line_mu_y(
                tallies[a], fa_masks, fg_masks[a - 1], z_next, full, bs_of[a]
            )
            z2 = y_snaps[-1]
            if z2 != z[a - 1]:
                z[a - 1] = z2
                changed = True

    # With the full disjunction over b all line fixed points coincide;
    # under the heuristic restriction b = a they may genuinely differ,
    # and the reported winning region is line 1's (the starting mode).
    if not heuristic and any(zi != z[0] for zi in z):
        raise AssertionError("line fixed points disagree after convergence")

    y_snapshots: list[list[StateSet]] = []
    w_snapshots: dict[tuple[int, int], list[list[StateSet]]] = {}
    ranks: dict[tuple[int, int], dict[int, Rank]] = {}
    for a in range(1, n + 1):
        y_snaps, chains = _line_mu_y(
            tallies[a], fa_masks, fg_masks[a - 1], z[a % n], full, bs_of[a]
        )
        y_snapshots.append([StateSet(width, yv) for yv in y_snaps])
        for b in bs_of[a]:
            w_snapshots[(a, b)] = [
                [StateSet(width, w) for w in chain] for chain in chains[b]
            ]
            table: dict[int, Rank] = {}
            for i in range(1, len(y_snaps)):
                ydiff = y_snaps[i] & ~y_snaps[i - 1]
                chain = chains[b][i - 1]
                for j in range(1, len(chain)):
                    for q in StateSet(width, ydiff & chain[j] & ~chain[j - 1]):
                        table[q] = (i, j)
            ranks[(a, b)] = table

    mrt = ModedRankTable(
        n=n,
        m=m,
        heuristic=heuristic,
        z_inf=StateSet(width, z[0]),
        y_snapshots=y_snapshots,
        w_snapshots=w_snapshots,
        ranks=ranks,
        spec=s,
        outer_iterations=outer,
        pre_invocations=sum(t.count for t in tallies.values()),
        pre_per_line={a: tallies[a].count for a in tallies},
    )
    return mrt.z_inf, mrt


def initial_mode(mrt: ModedRankTable, q0: int) -> tuple[int, int]:
    """Start in line 1 with the assumption mode of smallest rank at q0."""
    if q0 not in mrt.z_inf:
        raise ValueError("initial state is not in the winning region")
    best = mrt.best_b(q0, 1)
    assert best is not None
    return (1, best[1])


def comply_mode(
    mrt: ModedRankTable, current: tuple[int, int, int], env_succ: int
) -> tuple[int, int]:
    """Mode update for an environment move out of `current` = (q, a, b).

    At rank (1, 1) the pursued guarantee advances; at (i, 1) it is kept;
    at (i, j) with j > 1 both modes are kept.  Whenever the kept b has no
    rank at the successor (possible after a move into an earlier Y layer
    that only other assumption modes cover), b is re-selected greedily.
    """
    q, a, b = current
    r = mrt.rank(q, a, b)
    if r is None:
        best = mrt.best_b(q, a)
        if best is None:
            raise ValueError(f"state {q} is not winning in line {a}")
        r, b = best
    i, j = r
    if (i, j) == (1, 1):
        a2 = a % mrt.n + 1
    else:
        a2 = a
    if j > 1 and mrt.rank(env_succ, a2, b) is not None:
        return (a2, b)
    best = mrt.best_b(env_succ, a2)
    assert best is not None, "environment successor left the winning region"
    return (a2, best[1])


def _sys_choice(g: GameGraph, mrt: ModedRankTable):
    def choose(q: int, a: int, b: int) -> Node:
        r = mrt.rank(q, a, b)
        if r is None:
            best = mrt.best_b(q, a)
            assert best is not None, f"sys state {g.names[q]} unranked in line {a}"
            r, b = best
        i, j = r
        if (i, j) == (1, 1):
            a2 = a % mrt.n + 1
            cands = []
            for t in g.succ[q]:
                best = mrt.best_b(t, a2)
                if best is not None:
                    cands.append((best[0], best[1], t))
            assert cands, f"no winning successor at {g.names[q]}"
            r2, b2, t = min(cands)
            return (t, a2, b2)
        if j == 1:
            cands = []
            for t in g.succ[q]:
                for b2 in mrt.bs(a):
                    r2 = mrt.rank(t, a, b2)
                    if r2 is not None and r2[0] <= i - 1:
                        cands.append((r2, b2, t))
            assert cands, f"no progress successor at {g.names[q]} (rank {r})"
            r2, b2, t = min(cands)
            return (t, a, b2)
        cands = []
        for t in g.succ[q]:
            r2 = mrt.rank(t, a, b)
            if r2 is not None and r2 <= (i, j - 1):
                cands.append((r2, t))
        assert cands, f"no rank-decreasing successor at {g.names[q]} (rank {r})"
        r2, t = min(cands)
        return (t, a, b)

    return choose


def extract_strategy_vector(
    g: GameGraph, mrt: ModedRankTable, start: int | None = None
) -> MealyStrategy:
    """Mealy machine over reachable (state, a, b) triples per the mode rules."""
    if not mrt.z_inf:
        raise ValueError("winning region is empty")
    start = g.init if start is None else start
    a0, b0 = initial_mode(mrt, start)
    return build_machine(
        g,
        mrt.n,
        mrt.m,
        (start, a0, b0),
        _sys_choice(g, mrt),
        lambda q, a, b, t: comply_mode(mrt, (q, a, b), t),
        lambda q, a, b: mrt.rank(q, a, b),
    )


def solve_negated_vector(g: GameGraph, s: GR1Spec) -> StateSet:
    """Vectorized complement fixed point (over-approximation form).

    mu over the line vector; line a:
        nu Ybar . AND_b mu Xbar . nu Wbar .
            Pre0(next Zbar) | (~FG_a & FA_b & Pre0(Ybar))
                            | (~FG_a & ApreDual(Wbar, Xbar | FA_b))
    Used only as a determinacy oracle against solve_4fp_vector.
    """
    s = normalize_spec(g, s)
    n, m = s.n, s.m
    pre = PreTally(g)
    full = g.full_mask
    fa = [p.mask for p in s.assumptions]
    nfg = [full & ~p.mask for p in s.guarantees]
    z = [0] * n
    changed = True
    while changed:
        changed = False
        for a in range(n):
            z_next = z[(a + 1) % n]
            pre0_z = pre.pre_ctrl(0, z_next)
            y = full
            while True:
                meet = full
                for b in range(m):
                    x = 0
                    while True:
                        w = full
                        while True:
                            w2 = (
                                pre0_z
                                | (nfg[a] & fa[b] & pre.pre_ctrl(0, y))
                                | (nfg[a] & pre.apre_dual(w, x | fa[b]))
                            )
                            if w2 == w:
                                break
                            w = w2
                        if w == x:
                            break
                        x = w
                    meet &= x
                if meet == y:
                    break
                y = meet
            if y != z[a]:
                z[a] = y
                changed = True
    result = 0
    for zv in z:
        result |= zv
    return StateSet(g.n_states, result)
