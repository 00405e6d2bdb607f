"""HTTP JSON service: solve, sessions, maze endpoint."""
from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from gr1nc.fixtures import EX0_TEXT, EX1_TEXT
from gr1nc.server import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _game(text: str) -> dict:
    return json.loads(text)


class TestSolve:
    def test_realizable(self, client):
        r = client.post("/solve", json={"game": _game(EX0_TEXT)})
        assert r.status_code == 200
        body = r.json()
        assert body["realizable"] is True
        assert body["strategy"]["kind"] == "moded"

    def test_unrealizable(self, client):
        doc = _game(EX0_TEXT)
        doc["guarantees"] = [[]]
        r = client.post("/solve", json={"game": doc})
        assert r.status_code == 200
        assert r.json() == {"realizable": False, "strategy": None}

    def test_algo_selection(self, client):
        r = client.post(
            "/solve", json={"game": _game(EX1_TEXT), "algo": "3fp"}
        )
        assert r.status_code == 200
        assert r.json()["realizable"] is True

    def test_bad_algo(self, client):
        r = client.post(
            "/solve", json={"game": _game(EX0_TEXT), "algo": "zfp"}
        )
        assert r.status_code == 400
        assert "unknown algorithm" in r.json()["error"]

    def test_missing_game(self, client):
        r = client.post("/solve", json={})
        assert r.status_code == 400
        assert "missing 'game'" in r.json()["error"]

    def test_malformed_game(self, client):
        r = client.post("/solve", json={"game": {"states": []}})
        assert r.status_code == 400
        assert "missing key" in r.json()["error"]


class TestSession:
    def test_open_and_play(self, client):
        r = client.post("/session", json={"game": _game(EX0_TEXT)})
        assert r.status_code == 200
        body = r.json()
        sid = body["sessionId"]
        view = body["view"]
        assert view["state"] == "a"
        assert view["turn"] == "env"
        assert view["legalEnvMoves"] == ["b"]
        assert view["mode"] == {"a": 1, "b": 1}
        assert view["satisfiedAssumptions"] == [1]  # initial state a visited

        r = client.post(f"/session/{sid}/env-move", json={"to": "b"})
        assert r.status_code == 200
        body = r.json()
        assert body["sysMove"]["state"] == "a"
        view = body["view"]
        assert view["state"] == "a" and view["turn"] == "env"
        assert view["satisfiedAssumptions"] == [2]
        assert view["satisfiedGuarantees"] == [1]

    def test_illegal_move_rejected(self, client):
        sid = client.post("/session", json={"game": _game(EX0_TEXT)}).json()[
            "sessionId"
        ]
        r = client.post(f"/session/{sid}/env-move", json={"to": "zz"})
        assert r.status_code == 400
        body = r.json()
        assert "illegal move" in body["error"]
        assert body["legalEnvMoves"] == ["b"]

    def test_unknown_session(self, client):
        r = client.post("/session/does-not-exist/env-move", json={"to": "b"})
        assert r.status_code == 404

    def test_unrealizable_session_conflict(self, client):
        doc = _game(EX0_TEXT)
        doc["guarantees"] = [[]]
        r = client.post("/session", json={"game": doc})
        assert r.status_code == 409
        assert "unrealizable" in r.json()["error"]

    def test_session_with_supplied_strategy(self, client):
        solved = client.post("/solve", json={"game": _game(EX0_TEXT)}).json()
        r = client.post(
            "/session",
            json={"game": _game(EX0_TEXT), "strategy": solved["strategy"]},
        )
        assert r.status_code == 200
        assert r.json()["view"]["state"] == "a"


class TestMaze:
    def test_default_maze_payload(self, client):
        r = client.get("/maze")
        assert r.status_code == 200
        body = r.json()
        assert body["geometry"] == {
            "cols": 3, "lines": 2, "goals": 2, "variant": "falsifiable",
        }
        assert len(body["game"]["states"]) == 60
        assert body["strategy"]["kind"] == "moded"
        # The returned pair is directly playable.
        r2 = client.post(
            "/session",
            json={"game": body["game"], "strategy": body["strategy"]},
        )
        assert r2.status_code == 200
        assert r2.json()["view"]["turn"] == "env"

    def test_bad_params(self, client):
        r = client.get("/maze", params={"cols": 1})
        assert r.status_code == 400
        assert "at least 2 columns" in r.json()["error"]
