/**
 * Pure HTML renderers for the playground.
 *
 * Everything here is a function from backend payloads to markup, so the
 * rendering rules (which cells are highlighted, what the panel shows)
 * are directly unit-testable without a browser. The app layer only
 * assigns the returned strings to `innerHTML` and wires click events.
 */

import type { GameDoc, MazeGeometry, SessionView } from "./api.js";
import {
  decodeMazeState,
  goalCells,
  legalObstacleCells,
} from "./model.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * The maze board: one div per cell, bottom row rendered last so y grows
 * upward. Cells carry data attributes for the click handler and CSS
 * classes for the pieces, goals, walls, and legal-move highlights.
 */
export function renderBoard(
  geom: MazeGeometry,
  game: GameDoc,
  view: SessionView,
): string {
  const placed = decodeMazeState(view.state);
  if (placed === null) {
    throw new Error(`state ${view.state} is not a maze state`);
  }
  const goals = goalCells(game);
  const legal = new Map(
    legalObstacleCells(view).map(({ cell, to }) => [`${cell.x},${cell.y}`, to]),
  );
  const passage = Math.floor(geom.cols / 2);
  const rows: string[] = [];
  for (let y = geom.lines - 1; y >= 0; y--) {
    const cells: string[] = [];
    for (let x = 0; x < geom.cols; x++) {
      const classes = ["cell"];
      if (x === passage) classes.push("passage");
      if (placed.robot.x === x && placed.robot.y === y) classes.push("robot");
      if (placed.obstacle.x === x && placed.obstacle.y === y) {
        classes.push("obstacle");
      }
      goals.robotGoals.forEach((g, k) => {
        if (g.x === x && g.y === y) classes.push(`robot-goal-${k + 1}`);
      });
      goals.obstacleGoals.forEach((g, k) => {
        if (g.x === x && g.y === y) classes.push(`obstacle-goal-${k + 1}`);
      });
      const moveTo = legal.get(`${x},${y}`);
      if (moveTo !== undefined && view.turn === "env") classes.push("legal");
      const moveAttr =
        moveTo !== undefined && view.turn === "env"
          ? ` data-move-to="${escapeHtml(moveTo)}"`
          : "";
      cells.push(
        `<div class="${classes.join(" ")}" data-x="${x}" data-y="${y}"${moveAttr}></div>`,
      );
    }
    rows.push(`<div class="row">${cells.join("")}</div>`);
  }
  return `<div class="board">${rows.join("")}</div>`;
}

/** Mode, rank, and liveness counters — the backend view verbatim. */
export function renderPanel(view: SessionView): string {
  const rank =
    view.rank === null ? "—" : `(${view.rank[0]}, ${view.rank[1]})`;
  const counters = (label: string, values: number[]) =>
    values
      .map(
        (count, k) =>
          `<li class="counter">${label} ${k + 1}: <span class="count">${count}</span></li>`,
      )
      .join("");
  return [
    `<dl class="status">`,
    `<dt>state</dt><dd class="state">${escapeHtml(view.state)}</dd>`,
    `<dt>turn</dt><dd class="turn">${view.turn}</dd>`,
    `<dt>mode</dt><dd class="mode">a=${view.mode.a}, b=${view.mode.b}</dd>`,
    `<dt>rank</dt><dd class="rank">${rank}</dd>`,
    `</dl>`,
    `<ul class="assumptions">${counters("assumption", view.satisfiedAssumptions)}</ul>`,
    `<ul class="guarantees">${counters("guarantee", view.satisfiedGuarantees)}</ul>`,
  ].join("");
}

/**
 * Fallback for uploaded non-maze games: the current state and one
 * button per legal environment move.
 */
export function renderGraphFallback(view: SessionView): string {
  const moves = view.legalEnvMoves
    .map(
      (name) =>
        `<button class="move" data-move-to="${escapeHtml(name)}">${escapeHtml(name)}</button>`,
    )
    .join("");
  return [
    `<div class="graph-view">`,
    `<p>current state: <strong class="state">${escapeHtml(view.state)}</strong></p>`,
    `<div class="moves">${moves}</div>`,
    `</div>`,
  ].join("");
}

/** Inline rejection note for a move the backend refused. */
export function renderRejection(message: string, legal: string[]): string {
  return (
    `<p class="rejection">${escapeHtml(message)} — legal: ` +
    legal.map(escapeHtml).join(", ") +
    `</p>`
  );
}
