"""Structural invariants of rank tables, used by tests and diagnostics.

The checks restate, per ranked state, what membership at rank (i, j)
implies about the state's condition-set membership and its successors.
They intentionally recompute everything from the stored iterates and the
arena rather than trusting the solver's bookkeeping.
"""
from __future__ import annotations

from .graph import ENV, GameGraph
from .singleton import RankTable
from .vector import ModedRankTable


def check_singleton_table(g: GameGraph, rt: RankTable) -> list[str]:
    out: list[str] = []
    fa, fg, z = rt.fa, rt.fg, rt.z_inf

    ranked = set(rt.ranks)
    if ranked != set(z):
        out.append("ranked states differ from the winning region")

    # Rank definition against the retained snapshots.
    for q, (i, j) in rt.ranks.items():
        if i >= len(rt.y_snapshots) or not (
            q in rt.y_snapshots[i] and q not in rt.y_snapshots[i - 1]
        ):
            out.append(f"state {g.names[q]}: Y layer does not match rank {(i, j)}")
            continue
        chain = rt.w_snapshots[i - 1]
        if j >= len(chain) or not (q in chain[j] and q not in chain[j - 1]):
            out.append(f"state {g.names[q]}: W layer does not match rank {(i, j)}")

    # Membership biconditionals.
    for q in z:
        i, j = rt.ranks[q]
        name = g.names[q]
        if ((i, j) == (1, 1)) != (q in fg):
            out.append(f"state {name}: rank (1,1) must coincide with guarantee set")
        if (j == 1 and i > 1) != (q in fa and q not in fg):
            out.append(f"state {name}: rank (i,1), i>1 must coincide with FA\\FG")
        if (j > 1) != (q not in fa and q not in fg):
            out.append(f"state {name}: rank j>1 must coincide with Q\\(FA|FG)")

    # Successor case analysis.
    for q in z:
        i, j = rt.ranks[q]
        name = g.names[q]
        succ_ranks = [rt.ranks.get(t) for t in g.succ[q]]
        if g.owners[q] == ENV:
            if (i, j) == (1, 1) or j == 1:
                bound = len(rt.y_snapshots) if (i, j) == (1, 1) else i - 1
                if (i, j) == (1, 1):
                    if any(r is None for r in succ_ranks):
                        out.append(f"env state {name}: successor left winning region")
                elif not all(r is not None and r[0] <= bound for r in succ_ranks):
                    out.append(f"env state {name}: rank {(i,j)} needs all successors below Y^{bound}")
            else:
                if not any(r is not None and r <= (i, j - 1) for r in succ_ranks):
                    out.append(f"env state {name}: no successor at rank <= {(i, j-1)}")
                for t, r in zip(g.succ[q], succ_ranks):
                    ok = r is not None and (
                        r <= (i, j - 1) or (r[0] <= i and t not in fa)
                    )
                    if not ok:
                        out.append(
                            f"env state {name}: successor {g.names[t]} escapes the W chain"
                        )
        else:
            if (i, j) == (1, 1):
                if not any(r is not None for r in succ_ranks):
                    out.append(f"sys state {name}: no winning successor")
            elif j == 1:
                if not any(r is not None and r[0] <= i - 1 for r in succ_ranks):
                    out.append(f"sys state {name}: no successor below Y^{i-1}")
            else:
                if not any(r is not None and r <= (i, j - 1) for r in succ_ranks):
                    out.append(f"sys state {name}: no rank-decreasing successor")
    return out


def check_moded_table(g: GameGraph, mrt: ModedRankTable) -> list[str]:
    out: list[str] = []
    for a in range(1, mrt.n + 1):
        fg = mrt.spec.guarantees[a - 1]
        # Under the heuristic the line fixed points may differ; each
        # line's ranks must cover exactly its own final Y iterate.
        z = mrt.y_snapshots[a - 1][-1]
        covered = set()
        for b in mrt.bs(a):
            covered |= set(mrt.ranks[(a, b)])
        if covered != set(z):
            out.append(f"line {a}: ranked states differ from the winning region")
        for q in z:
            ranks = [mrt.rank(q, a, b) for b in mrt.bs(a)]
            if all(r == (1, 1) for r in ranks) and q not in fg:
                out.append(
                    f"state {g.names[q]}: rank (1,1) in every mode of line {a} "
                    "but not a guarantee state"
                )
        for b in mrt.bs(a):
            fa = mrt.spec.assumptions[b - 1]
            for q, (i, j) in mrt.ranks[(a, b)].items():
                if j > 1 and q in fa:
                    out.append(
                        f"state {g.names[q]}: rank ({i},{j}) in mode ({a},{b}) "
                        "inside the avoided assumption set"
                    )
    return out
