import { describe, expect, it } from "vitest";

import type { GameDoc, SessionView } from "../src/api.js";
import {
  renderBoard,
  renderGraphFallback,
  renderPanel,
  renderRejection,
} from "../src/board.js";

const GEOM = { cols: 3, lines: 2, goals: 2, variant: "falsifiable" as const };

const GAME: GameDoc = {
  states: [
    { id: "r2-0_o0-0_e", owner: 0 },
    { id: "r2-0_o0-0_s", owner: 1 },
    { id: "r0-1_o2-1_e", owner: 0 },
  ],
  init: "r2-0_o0-0_e",
  edges: [],
  assumptions: [["r2-0_o0-0_e"], ["r0-1_o2-1_e"]],
  guarantees: [["r2-0_o0-0_e"], ["r0-1_o2-1_e"]],
};

function view(partial: Partial<SessionView>): SessionView {
  return {
    state: "r2-0_o0-0_e",
    turn: "env",
    mode: { a: 1, b: 2 },
    rank: [3, 1],
    satisfiedAssumptions: [1, 0],
    satisfiedGuarantees: [2, 0],
    legalEnvMoves: ["r2-0_o0-0_s", "r2-0_o1-0_s"],
    ...partial,
  };
}

function cellsWith(html: string, marker: string): string[] {
  return [...html.matchAll(/<div class="([^"]*)" data-x="(\d+)" data-y="(\d+)"/g)]
    .filter(([, classes]) => classes.split(" ").includes(marker))
    .map(([, , x, y]) => `${x},${y}`);
}

describe("renderBoard", () => {
  it("places the pieces from the backend state name", () => {
    const html = renderBoard(GEOM, GAME, view({}));
    expect(cellsWith(html, "robot")).toEqual(["2,0"]);
    expect(cellsWith(html, "obstacle")).toEqual(["0,0"]);
  });

  it("highlights exactly the backend's legal obstacle moves", () => {
    const html = renderBoard(GEOM, GAME, view({}));
    expect(cellsWith(html, "legal").sort()).toEqual(["0,0", "1,0"]);
    expect(html).toContain('data-move-to="r2-0_o1-0_s"');
    expect(html).toContain('data-move-to="r2-0_o0-0_s"');
  });

  it("marks the passage column and the goal cells", () => {
    const html = renderBoard(GEOM, GAME, view({}));
    expect(cellsWith(html, "passage").sort()).toEqual(["1,0", "1,1"]);
    expect(cellsWith(html, "robot-goal-1")).toEqual(["2,0"]);
    expect(cellsWith(html, "robot-goal-2")).toEqual(["0,1"]);
    expect(cellsWith(html, "obstacle-goal-2")).toEqual(["2,1"]);
  });

  it("offers no moves while it is the system's turn", () => {
    const html = renderBoard(GEOM, GAME, view({ turn: "sys" }));
    expect(cellsWith(html, "legal")).toEqual([]);
    expect(html).not.toContain("data-move-to");
  });

  it("rejects non-maze states", () => {
    expect(() => renderBoard(GEOM, GAME, view({ state: "q0" }))).toThrow(
      /not a maze state/,
    );
  });
});

describe("renderPanel", () => {
  it("shows mode, rank, and counters verbatim", () => {
    const html = renderPanel(view({}));
    expect(html).toContain('<dd class="mode">a=1, b=2</dd>');
    expect(html).toContain('<dd class="rank">(3, 1)</dd>');
    expect(html).toContain('assumption 1: <span class="count">1</span>');
    expect(html).toContain('guarantee 1: <span class="count">2</span>');
  });

  it("renders missing ranks as a dash", () => {
    expect(renderPanel(view({ rank: null }))).toContain(
      '<dd class="rank">—</dd>',
    );
  });
});

describe("fallback and rejection views", () => {
  it("renders a button per legal move for non-maze games", () => {
    const html = renderGraphFallback(view({ state: "q0", legalEnvMoves: ["q1", "q2"] }));
    expect(html).toContain('<strong class="state">q0</strong>');
    expect(html).toContain('data-move-to="q1"');
    expect(html).toContain('data-move-to="q2"');
  });

  it("escapes backend text in rejections", () => {
    const html = renderRejection('illegal move to "<x>"', ["a", "b"]);
    expect(html).toContain("&lt;x&gt;");
    expect(html).toContain("legal: a, b");
  });
});
