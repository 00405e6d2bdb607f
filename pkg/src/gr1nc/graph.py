"""Game arenas, winning-condition specs, and the on-disk game format.

A game graph is an explicit bipartite arena: environment states (owner 0)
and system states (owner 1) strictly alternate along every edge, every
state has at least one successor, and the initial state belongs to the
environment.  Winning conditions are generalized Buchi families given as
plain state sets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

ENV = 0
SYS = 1


class GameFormatError(ValueError):
    """Raised for malformed game or strategy documents."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class WidthMismatchError(ValueError):
    """Raised when a StateSet is used with a graph of a different size."""


@dataclass(frozen=True)
class StateSet:
    """Immutable set of state indices backed by an int bit mask."""

    width: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.width:
            raise ValueError("mask has bits outside [0, width)")

    @classmethod
    def empty(cls, width: int) -> "StateSet":
        return cls(width, 0)

    @classmethod
    def full(cls, width: int) -> "StateSet":
        return cls(width, (1 << width) - 1)

    @classmethod
    def of(cls, width: int, indices: Iterable[int]) -> "StateSet":
        mask = 0
        for i in indices:
            if not 0 <= i < width:
                raise ValueError(f"state index {i} outside [0, {width})")
            mask |= 1 << i
        return cls(width, mask)

    def _check(self, other: "StateSet") -> None:
        if self.width != other.width:
            raise WidthMismatchError(
                f"state sets have widths {self.width} and {other.width}"
            )

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.width and bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.width, self.mask | other.mask)

    def __and__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.width, self.mask & other.mask)

    def __sub__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.width, self.mask & ~other.mask)

    def __invert__(self) -> "StateSet":
        return StateSet(self.width, self.mask ^ ((1 << self.width) - 1))

    def issubset(self, other: "StateSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __le__(self, other: "StateSet") -> bool:
        return self.issubset(other)


@dataclass(frozen=True)
class GameGraph:
    """Bipartite two-player arena with dense integer states."""

    owners: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...]
    init: int
    names: tuple[str, ...]

    @classmethod
    def make(
        cls,
        owners: Iterable[int],
        succ: Iterable[Iterable[int]],
        init: int,
        names: Iterable[str] | None = None,
    ) -> "GameGraph":
        owners = tuple(owners)
        canon = tuple(tuple(sorted(set(s))) for s in succ)
        if names is None:
            names = tuple(f"q{i}" for i in range(len(owners)))
        else:
            names = tuple(names)
        if len(names) != len(owners) or len(canon) != len(owners):
            raise ValueError("owners, succ, and names must have equal length")
        return cls(owners, canon, init, names)

    @property
    def n_states(self) -> int:
        return len(self.owners)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n_states) - 1

    @cached_property
    def env_mask(self) -> int:
        m = 0
        for q, o in enumerate(self.owners):
            if o == ENV:
                m |= 1 << q
        return m

    @cached_property
    def sys_mask(self) -> int:
        return self.full_mask ^ self.env_mask

    @cached_property
    def succ_masks(self) -> tuple[int, ...]:
        out = []
        for targets in self.succ:
            m = 0
            for t in targets:
                m |= 1 << t
            out.append(m)
        return tuple(out)

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {name: q for q, name in enumerate(self.names)}

    def env_states(self) -> StateSet:
        return StateSet(self.n_states, self.env_mask)

    def sys_states(self) -> StateSet:
        return StateSet(self.n_states, self.sys_mask)

    def full(self) -> StateSet:
        return StateSet.full(self.n_states)

    def empty(self) -> StateSet:
        return StateSet.empty(self.n_states)

    def set_of(self, indices: Iterable[int]) -> StateSet:
        return StateSet.of(self.n_states, indices)


@dataclass(frozen=True)
class GR1Spec:
    """Assumption sets F_A^1..m and guarantee sets F_G^1..n."""

    assumptions: tuple[StateSet, ...] = ()
    guarantees: tuple[StateSet, ...] = ()

    @property
    def m(self) -> int:
        return len(self.assumptions)

    @property
    def n(self) -> int:
        return len(self.guarantees)


def validate(g: GameGraph, s: GR1Spec) -> list[str]:
    """Return human-readable descriptions of every violated invariant."""
    out = []
    n = g.n_states
    for q, o in enumerate(g.owners):
        if o not in (ENV, SYS):
            out.append(f"state {g.names[q]} has invalid owner {o}")
    if not 0 <= g.init < n:
        out.append(f"initial state index {g.init} out of range")
    elif g.owners[g.init] != ENV:
        out.append(f"initial state {g.names[g.init]} is not environment-owned")
    for q, targets in enumerate(g.succ):
        if not targets:
            out.append(f"state {g.names[q]} has no successor")
        for t in targets:
            if not 0 <= t < n:
                out.append(f"state {g.names[q]} has successor index {t} out of range")
            elif g.owners[t] == g.owners[q]:
                out.append(
                    f"alternation violated on edge {g.names[q]} -> {g.names[t]}"
                )
    for kind, sets in (("assumption", s.assumptions), ("guarantee", s.guarantees)):
        for k, member in enumerate(sets, start=1):
            for i in member:
                if i >= n:
                    out.append(f"{kind} set {k} references unknown state {i}")
    return out


def _parse_set(g_names: dict[str, int], raw, kind: str, k: int) -> list[int]:
    if not isinstance(raw, list):
        raise GameFormatError(f"{kind} set {k} is not a list")
    out = []
    for name in raw:
        if name not in g_names:
            raise GameFormatError(f"{kind} set {k} references unknown state {name}")
        out.append(g_names[name])
    return out


def parse_game(text: str) -> tuple[GameGraph, GR1Spec]:
    """Parse a .gr1game.json document into canonical form."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(f"syntax error: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(doc, dict):
        raise GameFormatError("top-level value must be an object")
    for key in ("states", "init", "edges", "assumptions", "guarantees"):
        if key not in doc:
            raise GameFormatError(f"missing key {key!r}")

    names: list[str] = []
    owners: list[int] = []
    index: dict[str, int] = {}
    for entry in doc["states"]:
        if not isinstance(entry, dict) or "id" not in entry:
            raise GameFormatError("state entry missing id")
        if "owner" not in entry:
            raise GameFormatError(f"state {entry['id']} missing owner")
        name = str(entry["id"])
        owner = entry["owner"]
        if name in index:
            raise GameFormatError(f"duplicate state id {name}")
        if owner not in (ENV, SYS):
            raise GameFormatError(f"state {name} has invalid owner {owner!r}")
        index[name] = len(names)
        names.append(name)
        owners.append(owner)

    succ: list[list[int]] = [[] for _ in names]
    for edge in doc["edges"]:
        if not isinstance(edge, list) or len(edge) != 2:
            raise GameFormatError(f"edge {edge!r} is not a [src, dst] pair")
        src, dst = edge
        for endpoint in (src, dst):
            if endpoint not in index:
                raise GameFormatError(f"edge references unknown state {endpoint}")
        if owners[index[src]] == owners[index[dst]]:
            raise GameFormatError(f"alternation violated on edge {src} -> {dst}")
        succ[index[src]].append(index[dst])

    if doc["init"] not in index:
        raise GameFormatError(f"initial state {doc['init']} is not declared")

    g = GameGraph.make(owners, succ, index[doc["init"]], names)
    width = g.n_states
    assumptions = tuple(
        g.set_of(_parse_set(index, raw, "assumption", k))
        for k, raw in enumerate(doc["assumptions"], start=1)
    )
    guarantees = tuple(
        g.set_of(_parse_set(index, raw, "guarantee", k))
        for k, raw in enumerate(doc["guarantees"], start=1)
    )
    return g, GR1Spec(assumptions, guarantees)


def serialize_game(g: GameGraph, s: GR1Spec) -> str:
    """Emit the canonical .gr1game.json text for a graph and spec."""
    edges = sorted(
        [g.names[q], g.names[t]] for q in range(g.n_states) for t in g.succ[q]
    )
    doc = {
        "states": [
            {"id": name, "owner": owner} for name, owner in zip(g.names, g.owners)
        ],
        "init": g.names[g.init],
        "edges": edges,
        "assumptions": [sorted(g.names[i] for i in m) for m in s.assumptions],
        "guarantees": [sorted(g.names[i] for i in m) for m in s.guarantees],
    }
    return json.dumps(doc, indent=1) + "\n"


def canonicalize(text: str) -> str:
    return serialize_game(*parse_game(text))
