"""Grid-maze benchmark instances: a robot pursued by a moving obstacle.

Layout (fixed for reproducibility):

* cells are (x, y), x in [0, cols), y in [0, lines), y = 0 the bottom row;
* horizontal movement is free; vertical movement is only possible in the
  single passage column x = cols // 2 (walls everywhere else);
* robot goals alternate down the first and last column: (last, 0),
  (0, 1), (last, 2), ...; obstacle goals mirror them: (0, 0), (last, 1),
  (0, 2), ...; the first ``goals_per_player`` rows carry goals;
* robot starts at (cols-1, 0), obstacle at (0, 0), obstacle moves first.

In the ``falsifiable`` variant both players move at most one cell per
turn and never onto the occupied cell; the obstacle can then be locked
out of its goals by a blocking robot (including a robot camping on an
obstacle goal cell).  In the ``nonfalsifiable`` variant the obstacle
may take up to two steps and jump over the robot: its movement ignores
the robot entirely, including sharing the robot's cell, so no robot
behavior can keep it away from its goals — the liveness assumptions
are unfalsifiable by construction.  Shared-cell states exist only in
this variant and only the environment can enter them.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import ENV, GameGraph, GR1Spec

FALSIFIABLE = "falsifiable"
NONFALSIFIABLE = "nonfalsifiable"


@dataclass(frozen=True)
class MazeParams:
    cols: int = 3
    lines: int = 2
    goals_per_player: int = 2
    variant: str = FALSIFIABLE

    def check(self) -> None:
        if self.cols < 2 or self.lines < 2:
            raise ValueError("maze needs at least 2 columns and 2 lines")
        if not 1 <= self.goals_per_player <= self.lines:
            raise ValueError("goals_per_player must be in [1, lines]")
        if self.variant not in (FALSIFIABLE, NONFALSIFIABLE):
            raise ValueError(f"unknown variant {self.variant!r}")


def _neighbors(p: MazeParams, cell: tuple[int, int]) -> list[tuple[int, int]]:
    x, y = cell
    out = []
    if x > 0:
        out.append((x - 1, y))
    if x < p.cols - 1:
        out.append((x + 1, y))
    if x == p.cols // 2:
        if y > 0:
            out.append((x, y - 1))
        if y < p.lines - 1:
            out.append((x, y + 1))
    return out


def robot_goals(p: MazeParams) -> list[tuple[int, int]]:
    last = p.cols - 1
    return [(last, y) if y % 2 == 0 else (0, y) for y in range(p.goals_per_player)]


def obstacle_goals(p: MazeParams) -> list[tuple[int, int]]:
    """Obstacle goal cells, one per goal row, paired with the robot's.

    The obstacle's b-th goal shares row b-1 with the robot's b-th goal
    and sits on the corridor cell right next to it, so the robot's
    journey to goal b runs past the assumption cell it avoids while in
    mode (b, b).  When no such corridor cell exists (3 columns wide:
    the adjacent cell is the passage itself), the goal falls back to
    the opposite end of the row, which reproduces the classic 3-wide
    layout with obstacle goals in the corners.
    """
    last = p.cols - 1
    mid = p.cols // 2
    out = []
    for y in range(p.goals_per_player):
        if y % 2 == 0:
            # Robot goal (last, y); corridor runs from the passage to it.
            out.append((last - 1, y) if last - 1 > mid else (0, y))
        else:
            # Robot goal (0, y); corridor runs from the passage to it.
            out.append((1, y) if 1 < mid else (last, y))
    return out


def _obstacle_moves(
    p: MazeParams, obstacle: tuple[int, int], robot: tuple[int, int]
) -> list[tuple[int, int]]:
    one_step = [obstacle] + _neighbors(p, obstacle)
    if p.variant == FALSIFIABLE:
        return [c for c in one_step if c != robot]
    reachable = set(one_step)
    for mid in one_step:
        reachable.update(_neighbors(p, mid))
    # The robot does not restrict the obstacle at all in this variant:
    # it may be jumped over or shared with.
    return sorted(reachable)


def _robot_moves(
    p: MazeParams, robot: tuple[int, int], obstacle: tuple[int, int]
) -> list[tuple[int, int]]:
    return [c for c in [robot] + _neighbors(p, robot) if c != obstacle]


def maze_generate(p: MazeParams) -> tuple[GameGraph, GR1Spec]:
    p.check()
    goals_r = robot_goals(p)
    goals_o = obstacle_goals(p)
    cells = [(x, y) for x in range(p.cols) for y in range(p.lines)]

    # The robot must be able to tour its goals: check cell connectivity.
    reach = {goals_r[0]}
    queue = deque(reach)
    while queue:
        c = queue.popleft()
        for t in _neighbors(p, c):
            if t not in reach:
                reach.add(t)
                queue.append(t)
    missing = [c for c in goals_r if c not in reach]
    if missing:
        raise ValueError(f"robot goal cells disconnected: {missing}")

    def name(robot, obstacle, turn):
        return (
            f"r{robot[0]}-{robot[1]}_o{obstacle[0]}-{obstacle[1]}"
            f"_{'e' if turn == 0 else 's'}"
        )

    states = []
    index = {}
    for robot in cells:
        for obstacle in cells:
            if robot == obstacle and p.variant == FALSIFIABLE:
                continue
            for turn in (0, 1):
                index[(robot, obstacle, turn)] = len(states)
                states.append((robot, obstacle, turn))

    owners = [turn for (_r, _o, turn) in states]
    succ: list[list[int]] = []
    for robot, obstacle, turn in states:
        if turn == 0:
            targets = [
                index[(robot, o2, 1)] for o2 in _obstacle_moves(p, obstacle, robot)
            ]
        else:
            targets = [
                index[(r2, obstacle, 0)] for r2 in _robot_moves(p, robot, obstacle)
            ]
        succ.append(targets)

    init = index[((p.cols - 1, 0), (0, 0), 0)]
    names = [name(*st) for st in states]
    g = GameGraph.make(owners, succ, init, names)

    assumptions = tuple(
        g.set_of(i for i, (_r, o, _t) in enumerate(states) if o == goal)
        for goal in goals_o
    )
    guarantees = tuple(
        g.set_of(i for i, (r, _o, _t) in enumerate(states) if r == goal)
        for goal in goals_r
    )
    return g, GR1Spec(assumptions, guarantees)
