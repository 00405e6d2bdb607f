"""Closed-loop construction, semantic checks, and the lasso oracle."""
from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gr1nc import (
    build_closed_loop,
    check_gr1_holds,
    check_nonconflicting,
    detect_falsifying,
    has_guarantee_scc,
    oracle_verify,
)
from gr1nc.fixtures import ex0, ex1, random_game
from gr1nc.singleton import MemorylessStrategy
from gr1nc.strategy import from_memoryless

from conftest import random_memoryless


def _moves(g, mapping: dict[str, str]) -> dict[int, int]:
    return {g.index_of[a]: g.index_of[b] for a, b in mapping.items()}


class TestPinnedLoops:
    def test_ex0_two_node_cycle(self):
        g, s = ex0()
        cl = build_closed_loop(g, s, from_memoryless(g, _moves(g, {"b": "a"})))
        assert len(cl.nodes) == 2
        assert check_gr1_holds(cl, s) == (True, None)
        assert check_nonconflicting(cl, s.assumptions) == (True, None)
        assert not detect_falsifying(cl, s.assumptions)
        assert has_guarantee_scc(cl, s)
        report = oracle_verify(cl, s)
        assert report == {
            "gr1_holds": True,
            "nonconflicting": True,
            "falsifying": False,
            "guarantee_live": True,
        }

    def test_ex1_falsifying_strategy(self):
        g, s = ex1()
        cl = build_closed_loop(
            g, s, from_memoryless(g, _moves(g, {"b0": "a0", "b1": "a0"}))
        )
        assert len(cl.nodes) == 3  # a1 never reached
        # Vacuously GR(1)-winning: the assumption state is starved.
        assert check_gr1_holds(cl, s)[0]
        ok, stuck = check_nonconflicting(cl, s.assumptions)
        assert not ok
        assert stuck == cl.init
        assert detect_falsifying(cl, s.assumptions)
        report = oracle_verify(cl, s)
        assert report["gr1_holds"] and report["falsifying"]

    def test_ex1_violating_strategy_with_counterexample(self):
        g, s = ex1()
        cl = build_closed_loop(
            g, s, from_memoryless(g, _moves(g, {"b0": "a0", "b1": "a1"}))
        )
        ok, lasso = check_gr1_holds(cl, s)
        assert not ok
        cycle_states = {entry["state"] for entry in lasso["cycle"]}
        assert "a1" in cycle_states and "b0" not in cycle_states
        # The counterexample is a real lasso of the loop.
        edges = {(v, t) for v, ts in cl.edges.items() for t in ts}
        path = lasso["stem"] + lasso["cycle"]
        nodes = [(g.index_of[e["state"]], e["a"], e["b"]) for e in path]
        for v, t in zip(nodes, nodes[1:] + [nodes[len(lasso["stem"])]]):
            assert (v, t) in edges
        report = oracle_verify(cl, s)
        assert not report["gr1_holds"]
        assert report["nonconflicting"] == check_nonconflicting(cl, s.assumptions)[0]

    def test_memoryless_wrapper_accepted(self):
        g, s = ex0()
        strat = MemorylessStrategy(moves=_moves(g, {"b": "a"}), z_inf=g.full())
        cl = build_closed_loop(g, s, strat)
        assert len(cl.nodes) == 2

    def test_partial_strategy_rejected(self):
        g, s = ex1()
        with pytest.raises(KeyError, match="outside strategy domain"):
            from_memoryless(g, _moves(g, {"b1": "a0"}))
        # A machine missing a reachable sys node is rejected when closing
        # the loop.
        from gr1nc.strategy import MealyStrategy

        b1, a0, a1 = (g.index_of[n] for n in ("b1", "a0", "a1"))
        machine = MealyStrategy(
            n=1,
            m=1,
            init=(g.init, 1, 1),
            sys_moves={(b1, 1, 1): (a1, 1, 1)},
            env_updates={
                (a0, 1, 1, g.index_of["b0"]): (1, 1),
                (a0, 1, 1, b1): (1, 1),
                (a1, 1, 1, b1): (1, 1),
            },
        )
        with pytest.raises(ValueError, match="outside strategy domain"):
            build_closed_loop(g, s, machine)

    def test_oracle_bound(self):
        g, s = ex0()
        cl = build_closed_loop(g, s, from_memoryless(g, _moves(g, {"b": "a"})))
        with pytest.raises(ValueError, match="bound"):
            oracle_verify(cl, s, bound=1)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_scc_checks_agree_with_lasso_oracle(seed):
    rng = random.Random(seed)
    g, s = random_game(rng, max_states=14, m=2, n=2)
    cl = build_closed_loop(g, s, from_memoryless(g, random_memoryless(rng, g)))
    assert len(cl.nodes) <= 16
    report = oracle_verify(cl, s)
    assert report["gr1_holds"] == check_gr1_holds(cl, s)[0]
    assert report["nonconflicting"] == check_nonconflicting(cl, s.assumptions)[0]
    assert report["falsifying"] == detect_falsifying(cl, s.assumptions)
