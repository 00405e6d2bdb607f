"""Canonical example instances and a random-instance generator for tests."""
from __future__ import annotations

import random

from .graph import ENV, SYS, GameGraph, GR1Spec, StateSet, parse_game

EX0_TEXT = """\
{
 "states": [{"id": "a", "owner": 0}, {"id": "b", "owner": 1}],
 "init": "a",
 "edges": [["a", "b"], ["b", "a"]],
 "assumptions": [["a"]],
 "guarantees": [["b"]]
}
"""

EX1_TEXT = """\
{
 "states": [
  {"id": "a0", "owner": 0},
  {"id": "a1", "owner": 0},
  {"id": "b0", "owner": 1},
  {"id": "b1", "owner": 1}
 ],
 "init": "a0",
 "edges": [
  ["a0", "b0"], ["a0", "b1"],
  ["a1", "b1"],
  ["b0", "a0"],
  ["b1", "a0"], ["b1", "a1"]
 ],
 "assumptions": [["a1"]],
 "guarantees": [["b0"]]
}
"""

# Ten-state arena with a two-state trap (q8, q9) that avoids the assumption
# forever but can never reach the guarantee.  The classical solver wins the
# trap by falsification; the non-conflicting solver must exclude it.
H1_TEXT = """\
{
 "states": [
  {"id": "q0", "owner": 0}, {"id": "q1", "owner": 1},
  {"id": "q2", "owner": 0}, {"id": "q3", "owner": 1},
  {"id": "q4", "owner": 0}, {"id": "q5", "owner": 1},
  {"id": "q6", "owner": 0}, {"id": "q7", "owner": 1},
  {"id": "q8", "owner": 0}, {"id": "q9", "owner": 1}
 ],
 "init": "q0",
 "edges": [
  ["q0", "q1"],
  ["q1", "q2"], ["q1", "q8"],
  ["q2", "q1"], ["q2", "q3"],
  ["q3", "q4"],
  ["q4", "q5"],
  ["q5", "q6"],
  ["q6", "q7"],
  ["q7", "q0"], ["q7", "q8"],
  ["q8", "q9"],
  ["q9", "q8"]
 ],
 "assumptions": [["q0"]],
 "guarantees": [["q4"]]
}
"""

# Eleven-state arena with two guarantee sets and two assumption sets where
# the mode-switching behavior of the vectorized solver is observable: the
# system's best move from q1 depends on the pursued guarantee, and the
# environment's move q2 -> q6 forces the avoided-assumption mode to change.
H2_TEXT = """\
{
 "states": [
  {"id": "q0", "owner": 0}, {"id": "q1", "owner": 1},
  {"id": "q2", "owner": 0}, {"id": "q3", "owner": 1},
  {"id": "q4", "owner": 0}, {"id": "q5", "owner": 1},
  {"id": "q6", "owner": 1}, {"id": "q7", "owner": 0},
  {"id": "q8", "owner": 1}, {"id": "q9", "owner": 0},
  {"id": "q10", "owner": 1}
 ],
 "init": "q0",
 "edges": [
  ["q0", "q1"],
  ["q1", "q2"], ["q1", "q9"],
  ["q2", "q3"], ["q2", "q6"],
  ["q3", "q4"],
  ["q4", "q5"],
  ["q5", "q0"],
  ["q6", "q7"],
  ["q7", "q8"],
  ["q8", "q0"],
  ["q9", "q10"],
  ["q10", "q0"]
 ],
 "assumptions": [["q4"], ["q7", "q9"]],
 "guarantees": [["q3"], ["q8", "q10"]]
}
"""


def ex0() -> tuple[GameGraph, GR1Spec]:
    return parse_game(EX0_TEXT)


def ex1() -> tuple[GameGraph, GR1Spec]:
    return parse_game(EX1_TEXT)


def h1_analog() -> tuple[GameGraph, GR1Spec]:
    return parse_game(H1_TEXT)


def h2_analog() -> tuple[GameGraph, GR1Spec]:
    return parse_game(H2_TEXT)


def random_game(
    rng: random.Random,
    max_states: int = 16,
    m: int = 1,
    n: int = 1,
    max_degree: int = 3,
) -> tuple[GameGraph, GR1Spec]:
    """Generate a random valid bipartite total game with m+n condition sets."""
    n_env = rng.randint(1, max(1, max_states // 2))
    n_sys = rng.randint(1, max(1, max_states // 2))
    owners = [ENV] * n_env + [SYS] * n_sys
    env_ids = list(range(n_env))
    sys_ids = list(range(n_env, n_env + n_sys))
    succ = []
    for q in range(n_env + n_sys):
        pool = sys_ids if owners[q] == ENV else env_ids
        k = rng.randint(1, min(max_degree, len(pool)))
        succ.append(rng.sample(pool, k))
    g = GameGraph.make(owners, succ, rng.choice(env_ids))
    width = g.n_states
    all_states = list(range(width))

    def random_set() -> StateSet:
        k = rng.randint(1, width)
        return g.set_of(rng.sample(all_states, k))

    spec = GR1Spec(
        tuple(random_set() for _ in range(m)),
        tuple(random_set() for _ in range(n)),
    )
    return g, spec
