/**
 * Browser glue: wires the API client, view model, and renderers to the
 * DOM. All game semantics live in the backend; this file only forwards
 * clicks and displays payloads.
 */

import { ApiError, Gr1ncClient } from "./api.js";
import type { GameDoc, MazeGeometry, StrategyDoc, SessionView } from "./api.js";
import { renderBoard, renderGraphFallback, renderPanel, renderRejection } from "./board.js";
import { advanceModel, isMazeGame, startModel } from "./model.js";
import type { SessionModel } from "./model.js";

interface Elements {
  board: HTMLElement;
  panel: HTMLElement;
  notice: HTMLElement;
  form: HTMLFormElement;
}

class Playground {
  private sessionId: string | null = null;
  private model: SessionModel | null = null;
  private game: GameDoc | null = null;
  private geometry: MazeGeometry | null = null;

  constructor(
    private readonly client: Gr1ncClient,
    private readonly el: Elements,
  ) {
    el.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.startMaze();
    });
    el.board.addEventListener("click", (event) => {
      const target = (event.target as HTMLElement).closest("[data-move-to]");
      const to = target?.getAttribute("data-move-to");
      if (to) void this.playMove(to);
    });
  }

  async startMaze(): Promise<void> {
    const data = new FormData(this.el.form);
    try {
      const payload = await this.client.maze({
        cols: Number(data.get("cols") ?? 3),
        lines: Number(data.get("lines") ?? 2),
        goals: Number(data.get("goals") ?? 2),
        variant:
          (data.get("variant") as MazeGeometry["variant"]) ?? "falsifiable",
      });
      this.geometry = payload.geometry;
      await this.open(payload.game, payload.strategy);
    } catch (error) {
      this.showError(error);
    }
  }

  async open(game: GameDoc, strategy?: StrategyDoc): Promise<void> {
    try {
      const opened = await this.client.openSession(game, strategy);
      this.sessionId = opened.sessionId;
      this.game = game;
      this.model = startModel(opened.view);
      this.el.notice.innerHTML = "";
      this.draw(opened.view);
    } catch (error) {
      this.showError(error);
    }
  }

  async playMove(to: string): Promise<void> {
    if (this.sessionId === null || this.model === null) return;
    try {
      const result = await this.client.envMove(this.sessionId, to);
      this.model = advanceModel(this.model, to, result.view);
      this.el.notice.innerHTML = "";
      this.draw(result.view);
    } catch (error) {
      if (error instanceof ApiError && error.legalEnvMoves !== undefined) {
        this.el.notice.innerHTML = renderRejection(
          error.message,
          error.legalEnvMoves,
        );
        return;
      }
      this.showError(error);
    }
  }

  private draw(view: SessionView): void {
    if (this.game !== null && this.geometry !== null && isMazeGame(this.game)) {
      this.el.board.innerHTML = renderBoard(this.geometry, this.game, view);
    } else {
      this.el.board.innerHTML = renderGraphFallback(view);
    }
    this.el.panel.innerHTML = renderPanel(view);
  }

  private showError(error: unknown): void {
    const message =
      error instanceof Error ? error.message : "backend unreachable";
    this.el.notice.textContent = `error: ${message}`;
  }
}

export function mount(baseUrl: string): Playground {
  const byId = (id: string) => {
    const node = document.getElementById(id);
    if (node === null) throw new Error(`missing element #${id}`);
    return node;
  };
  return new Playground(new Gr1ncClient(baseUrl), {
    board: byId("board"),
    panel: byId("panel"),
    notice: byId("notice"),
    form: byId("setup") as HTMLFormElement,
  });
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  mount(
    (document.body.dataset["backend"] ?? "http://127.0.0.1:8000").replace(
      /\/$/,
      "",
    ),
  );
}
