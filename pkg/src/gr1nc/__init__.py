"""Explicit-state GR(1) synthesis with non-conflicting strategies."""

from .classic import ClassicResult, classic_machine, solve_3fp
from .graph import (
    ENV,
    SYS,
    GameFormatError,
    GameGraph,
    GR1Spec,
    StateSet,
    WidthMismatchError,
    canonicalize,
    parse_game,
    serialize_game,
    validate,
)
from .maze import MazeParams, maze_generate
from .pipeline import SolveOutcome, solve_instance
from .precheck import augment_guarantees, check_inclusion
from .singleton import (
    MemorylessStrategy,
    RankTable,
    classify_rank,
    extract_strategy_singleton,
    solve_4fp_negated,
    solve_4fp_singleton,
)
from .strategy import MealyStrategy, parse_strategy, serialize_strategy
from .transformers import apre, apre_dual, pre_ctrl, pre_exists, pre_forall
from .vector import (
    ModedRankTable,
    comply_mode,
    extract_strategy_vector,
    initial_mode,
    normalize_spec,
    solve_4fp_vector,
    solve_negated_vector,
)
from .verifier import (
    ClosedLoopGraph,
    build_closed_loop,
    check_gr1_holds,
    check_nonconflicting,
    detect_falsifying,
    has_guarantee_scc,
    oracle_verify,
)

__version__ = "0.1.0"

__all__ = [
    "ENV",
    "SYS",
    "ClassicResult",
    "ClosedLoopGraph",
    "GameFormatError",
    "GameGraph",
    "GR1Spec",
    "MazeParams",
    "MealyStrategy",
    "MemorylessStrategy",
    "ModedRankTable",
    "RankTable",
    "SolveOutcome",
    "StateSet",
    "WidthMismatchError",
    "apre",
    "apre_dual",
    "augment_guarantees",
    "build_closed_loop",
    "canonicalize",
    "check_gr1_holds",
    "check_inclusion",
    "check_nonconflicting",
    "classic_machine",
    "classify_rank",
    "comply_mode",
    "detect_falsifying",
    "extract_strategy_singleton",
    "extract_strategy_vector",
    "has_guarantee_scc",
    "initial_mode",
    "maze_generate",
    "normalize_spec",
    "oracle_verify",
    "parse_game",
    "parse_strategy",
    "pre_ctrl",
    "pre_exists",
    "pre_forall",
    "serialize_game",
    "serialize_strategy",
    "solve_3fp",
    "solve_4fp_negated",
    "solve_4fp_singleton",
    "solve_4fp_vector",
    "solve_instance",
    "solve_negated_vector",
    "validate",
]
