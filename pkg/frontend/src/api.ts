/**
 * Typed client of the gr1nc HTTP service.
 *
 * The playground holds no game logic of its own: every legal-move list,
 * mode, rank, and counter shown in the UI comes verbatim from these
 * payloads.
 */

export interface GameDoc {
  states: { id: string; owner: 0 | 1 }[];
  init: string;
  edges: [string, string][];
  assumptions: string[][];
  guarantees: string[][];
}

export interface StrategyMove {
  state: string;
  a: number;
  b: number;
  to: string;
  a2: number;
  b2: number;
}

export interface StrategyDoc {
  kind: "moded";
  n: number;
  m: number;
  init: { state: string; a: number; b: number };
  moves: StrategyMove[];
}

export interface MazeGeometry {
  cols: number;
  lines: number;
  goals: number;
  variant: "falsifiable" | "nonfalsifiable";
}

export interface SessionView {
  state: string;
  turn: "env" | "sys";
  mode: { a: number; b: number };
  rank: [number, number] | null;
  satisfiedAssumptions: number[];
  satisfiedGuarantees: number[];
  legalEnvMoves: string[];
}

export interface MazePayload {
  game: GameDoc;
  strategy: StrategyDoc;
  geometry: MazeGeometry;
}

export interface SolveResult {
  realizable: boolean;
  strategy: StrategyDoc | null;
}

export interface SessionOpened {
  sessionId: string;
  view: SessionView;
}

export interface EnvMoveResult {
  sysMove: { state: string; a: number; b: number };
  view: SessionView;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly payload: Record<string, unknown>,
  ) {
    super(message);
    this.name = "ApiError";
  }

  /** Legal alternatives the backend attached to an illegal-move rejection. */
  get legalEnvMoves(): string[] | undefined {
    const legal = this.payload["legalEnvMoves"];
    return Array.isArray(legal) ? (legal as string[]) : undefined;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Gr1ncClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      const message =
        typeof payload["error"] === "string"
          ? (payload["error"] as string)
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, message, payload);
    }
    return payload as T;
  }

  maze(params?: Partial<MazeGeometry>): Promise<MazePayload> {
    const query = new URLSearchParams();
    for (const [key, value] of Object.entries(params ?? {})) {
      query.set(key, String(value));
    }
    const suffix = query.size > 0 ? `?${query.toString()}` : "";
    return this.request<MazePayload>("GET", `/maze${suffix}`);
  }

  solve(game: GameDoc, algo?: string, precheck?: string): Promise<SolveResult> {
    return this.request<SolveResult>("POST", "/solve", {
      game,
      ...(algo === undefined ? {} : { algo }),
      ...(precheck === undefined ? {} : { precheck }),
    });
  }

  openSession(game: GameDoc, strategy?: StrategyDoc): Promise<SessionOpened> {
    return this.request<SessionOpened>("POST", "/session", {
      game,
      ...(strategy === undefined ? {} : { strategy }),
    });
  }

  envMove(sessionId: string, to: string): Promise<EnvMoveResult> {
    return this.request<EnvMoveResult>(
      "POST",
      `/session/${sessionId}/env-move`,
      { to },
    );
  }
}
