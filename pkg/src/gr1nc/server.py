"""HTTP JSON service backing the interactive playground.

Endpoints:
  POST /solve                    {game, algo?, precheck?} -> {realizable, strategy}
  POST /session                  {game, strategy?} -> {sessionId, view}
  POST /session/{id}/env-move    {to} -> {sysMove, view}
  GET  /maze?cols&lines&goals&variant -> {game, strategy}

The human plays the environment: a session always rests at an
environment node, an env-move advances the obstacle and immediately
answers with the strategy's system move.
"""
from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .graph import ENV, GameFormatError, GameGraph, GR1Spec, parse_game, serialize_game
from .maze import MazeParams, maze_generate
from .pipeline import solve_instance
from .strategy import MealyStrategy, parse_strategy, serialize_strategy


class ApiError(Exception):
    def __init__(self, status: int, message: str, **extra):
        super().__init__(message)
        self.status = status
        self.payload = {"error": message, **extra}


@dataclass
class Session:
    g: GameGraph
    spec: GR1Spec
    machine: MealyStrategy
    node: tuple[int, int, int]
    assumption_visits: list[int]
    guarantee_visits: list[int]
    lock: threading.Lock = field(default_factory=threading.Lock)

    def count_visit(self, q: int) -> None:
        for k, fa in enumerate(self.spec.assumptions):
            if q in fa:
                self.assumption_visits[k] += 1
        for k, fg in enumerate(self.spec.guarantees):
            if q in fg:
                self.guarantee_visits[k] += 1

    def view(self) -> dict:
        q, a, b = self.node
        rank = self.machine.ranks.get(self.node)
        return {
            "state": self.g.names[q],
            "turn": "env" if self.g.owners[q] == ENV else "sys",
            "mode": {"a": a, "b": b},
            "rank": None if rank is None else list(rank),
            "satisfiedAssumptions": list(self.assumption_visits),
            "satisfiedGuarantees": list(self.guarantee_visits),
            "legalEnvMoves": [self.g.names[t] for t in self.g.succ[q]],
        }


def _strategy_doc(g: GameGraph, machine: MealyStrategy) -> dict:
    return json.loads(serialize_strategy(g, machine))


def _solve_for_session(g: GameGraph, s: GR1Spec) -> MealyStrategy:
    outcome = solve_instance(g, s, "4fp", precheck="off")
    if not outcome.realizable:
        outcome = solve_instance(g, s, "4fp", precheck="auto")
    if not outcome.realizable:
        raise ApiError(409, "instance is unrealizable from the initial state")
    return outcome.machine


def create_app() -> FastAPI:
    app = FastAPI(title="gr1nc")
    sessions: dict[str, Session] = {}

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.payload)

    @app.exception_handler(GameFormatError)
    async def _format_error(_req: Request, exc: GameFormatError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def read_game(body: dict) -> tuple[GameGraph, GR1Spec]:
        if "game" not in body:
            raise ApiError(400, "missing 'game' field")
        return parse_game(json.dumps(body["game"]))

    @app.post("/solve")
    async def solve(body: dict):
        g, s = read_game(body)
        algo = body.get("algo", "4fp")
        precheck = body.get("precheck", "auto")
        try:
            outcome = solve_instance(g, s, algo, precheck=precheck)
        except ValueError as e:
            raise ApiError(400, str(e))
        return {
            "realizable": outcome.realizable,
            "strategy": None
            if outcome.machine is None
            else _strategy_doc(g, outcome.machine),
        }

    @app.post("/session")
    async def open_session(body: dict):
        g, s = read_game(body)
        if body.get("strategy") is not None:
            machine = parse_strategy(json.dumps(body["strategy"]), g)
        else:
            machine = _solve_for_session(g, s)
        session = Session(
            g=g,
            spec=s,
            machine=machine,
            node=machine.init,
            assumption_visits=[0] * s.m,
            guarantee_visits=[0] * s.n,
        )
        session.count_visit(machine.init[0])
        sid = uuid.uuid4().hex
        sessions[sid] = session
        return {"sessionId": sid, "view": session.view()}

    @app.post("/session/{sid}/env-move")
    async def env_move(sid: str, body: dict):
        session = sessions.get(sid)
        if session is None:
            raise ApiError(404, "unknown session")
        with session.lock:
            q, a, b = session.node
            if session.g.owners[q] != ENV:
                raise ApiError(409, "not the environment's turn")
            target_name = body.get("to")
            index = session.g.index_of.get(target_name)
            legal = [session.g.names[t] for t in session.g.succ[q]]
            if index is None or index not in session.g.succ[q]:
                raise ApiError(
                    400, f"illegal move to {target_name!r}", legalEnvMoves=legal
                )
            a2, b2 = session.machine.env_updates[(q, a, b, index)]
            session.count_visit(index)
            sys_node = (index, a2, b2)
            q2, a3, b3 = session.machine.sys_moves[sys_node]
            session.count_visit(q2)
            session.node = (q2, a3, b3)
            return {
                "sysMove": {"state": session.g.names[q2], "a": a3, "b": b3},
                "view": session.view(),
            }

    @app.get("/maze")
    async def maze(
        cols: int = 3,
        lines: int = 2,
        goals: int = 2,
        variant: str = "falsifiable",
    ):
        try:
            params = MazeParams(cols, lines, goals, variant)
            g, s = maze_generate(params)
        except ValueError as e:
            raise ApiError(400, str(e))
        machine = _solve_for_session(g, s)
        return {
            "game": json.loads(serialize_game(g, s)),
            "strategy": _strategy_doc(g, machine),
            "geometry": {
                "cols": cols,
                "lines": lines,
                "goals": goals,
                "variant": variant,
            },
        }

    return app
