"""End-to-end solve pipeline shared by the CLI, server, and benchmarks."""
from __future__ import annotations

from dataclasses import dataclass, field

from .classic import ClassicResult, classic_machine, solve_3fp
from .graph import GameGraph, GR1Spec, StateSet, validate
from .precheck import augment_guarantees, check_inclusion
from .strategy import MealyStrategy
from .vector import ModedRankTable, extract_strategy_vector, solve_4fp_vector

ALGORITHMS = ("3fp", "4fp", "4fp-heuristic")


@dataclass
class SolveOutcome:
    algo: str
    realizable: bool
    winning: StateSet
    machine: MealyStrategy | None
    spec_used: GR1Spec
    failed_precheck: set[int] = field(default_factory=set)
    pre_invocations: int = 0
    pre_per_line: dict[int, int] | None = None
    outer_iterations: int = 0
    classic: ClassicResult | None = None
    moded: ModedRankTable | None = None


def solve_instance(
    g: GameGraph, s: GR1Spec, algo: str, precheck: str = "off"
) -> SolveOutcome:
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    problems = validate(g, s)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))

    if algo == "3fp":
        res = solve_3fp(g, s)
        realizable = g.init in res.winning
        machine = classic_machine(g, res) if realizable else None
        return SolveOutcome(
            algo=algo,
            realizable=realizable,
            winning=res.winning,
            machine=machine,
            spec_used=res.spec,
            pre_invocations=res.pre_invocations,
            outer_iterations=res.outer_iterations,
            classic=res,
        )

    failed: set[int] = set()
    spec_used = s
    if precheck == "auto":
        failed = check_inclusion(g, s)
        spec_used = augment_guarantees(s, failed)
    z, mrt = solve_4fp_vector(g, spec_used, heuristic=(algo == "4fp-heuristic"))
    realizable = g.init in z
    machine = extract_strategy_vector(g, mrt) if realizable else None
    return SolveOutcome(
        algo=algo,
        realizable=realizable,
        winning=z,
        machine=machine,
        spec_used=mrt.spec,
        failed_precheck=failed,
        pre_invocations=mrt.pre_invocations,
        pre_per_line=dict(mrt.pre_per_line),
        outer_iterations=mrt.outer_iterations,
        moded=mrt,
    )
