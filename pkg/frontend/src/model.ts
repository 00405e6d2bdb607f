/**
 * Client-side view model: decoding maze state names and tracking history.
 *
 * Maze games encode their states as `r<x>-<y>_o<x>-<y>_<e|s>` (robot
 * cell, obstacle cell, whose turn). The decoder is only used to *place*
 * pieces on the board; legality of moves always comes from the backend.
 */

import type { GameDoc, MazeGeometry, SessionView } from "./api.js";

export type Cell = { x: number; y: number };

export interface MazeState {
  robot: Cell;
  obstacle: Cell;
  turn: "env" | "sys";
}

const STATE_NAME = /^r(\d+)-(\d+)_o(\d+)-(\d+)_([es])$/;

export function decodeMazeState(name: string): MazeState | null {
  const match = STATE_NAME.exec(name);
  if (match === null) return null;
  return {
    robot: { x: Number(match[1]), y: Number(match[2]) },
    obstacle: { x: Number(match[3]), y: Number(match[4]) },
    turn: match[5] === "e" ? "env" : "sys",
  };
}

/** A game renders as a maze board iff every state name decodes. */
export function isMazeGame(game: GameDoc): boolean {
  return game.states.every((s) => decodeMazeState(s.id) !== null);
}

/**
 * Goal cells of both players, recovered from the condition sets: every
 * state of guarantee set k has the robot on the same cell (and likewise
 * the obstacle for assumption sets).
 */
export function goalCells(game: GameDoc): {
  robotGoals: Cell[];
  obstacleGoals: Cell[];
} {
  const robotGoals = game.guarantees.map(
    (set) => decodeMazeState(set[0])!.robot,
  );
  const obstacleGoals = game.assumptions.map(
    (set) => decodeMazeState(set[0])!.obstacle,
  );
  return { robotGoals, obstacleGoals };
}

/**
 * Obstacle destination cells of the current legal env moves, paired
 * with the backend state name that realizes each of them.
 */
export function legalObstacleCells(
  view: SessionView,
): { cell: Cell; to: string }[] {
  const out: { cell: Cell; to: string }[] = [];
  for (const name of view.legalEnvMoves) {
    const decoded = decodeMazeState(name);
    if (decoded !== null) out.push({ cell: decoded.obstacle, to: name });
  }
  return out;
}

/**
 * Corridor neighbors of a cell: horizontal moves are free, vertical
 * moves only in the single passage column. Used for move hints and the
 * scripted tours in the tests — never for legality decisions.
 */
export function corridorNeighbors(geom: MazeGeometry, cell: Cell): Cell[] {
  const out: Cell[] = [];
  if (cell.x > 0) out.push({ x: cell.x - 1, y: cell.y });
  if (cell.x < geom.cols - 1) out.push({ x: cell.x + 1, y: cell.y });
  if (cell.x === Math.floor(geom.cols / 2)) {
    if (cell.y > 0) out.push({ x: cell.x, y: cell.y - 1 });
    if (cell.y < geom.lines - 1) out.push({ x: cell.x, y: cell.y + 1 });
  }
  return out;
}

/** BFS distance between two cells through the corridors. */
export function corridorDistance(
  geom: MazeGeometry,
  from: Cell,
  to: Cell,
): number {
  const key = (c: Cell) => `${c.x},${c.y}`;
  const seen = new Set([key(from)]);
  let frontier = [from];
  let distance = 0;
  while (frontier.length > 0) {
    if (frontier.some((c) => c.x === to.x && c.y === to.y)) return distance;
    const next: Cell[] = [];
    for (const cell of frontier) {
      for (const neighbor of corridorNeighbors(geom, cell)) {
        if (!seen.has(key(neighbor))) {
          seen.add(key(neighbor));
          next.push(neighbor);
        }
      }
    }
    frontier = next;
    distance += 1;
  }
  return Number.POSITIVE_INFINITY;
}

export interface SessionModel {
  view: SessionView;
  history: string[];
}

export function startModel(view: SessionView): SessionModel {
  return { view, history: [view.state] };
}

export function advanceModel(
  model: SessionModel,
  envTo: string,
  view: SessionView,
): SessionModel {
  return { view, history: [...model.history, envTo, view.state] };
}
