"""Acceptance suite: one test (and one printed PASS/FAIL line) per criterion.

Each test gathers its evidence first, prints a single summary line of the
form ``ACCEPTANCE CRITERION <k>: PASS|FAIL — detail`` and only then
asserts, so the verdict line is emitted even for failing criteria.
"""
from __future__ import annotations

import math
import random
import statistics
import time
from collections import deque

import pytest

from gr1nc import (
    apre,
    apre_dual,
    augment_guarantees,
    build_closed_loop,
    check_gr1_holds,
    check_inclusion,
    check_nonconflicting,
    extract_strategy_vector,
    has_guarantee_scc,
    maze_generate,
    oracle_verify,
    pre_ctrl,
    pre_exists,
    pre_forall,
    solve_3fp,
    solve_4fp_negated,
    solve_4fp_singleton,
    solve_4fp_vector,
    solve_negated_vector,
    MazeParams,
    StateSet,
)
from gr1nc.bench import run_benchmark
from gr1nc.fixtures import ex0, ex1, h1_analog, h2_analog, random_game
from gr1nc.rankcheck import check_moded_table, check_singleton_table


def _verdict(k: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE CRITERION {k}: {'PASS' if ok else 'FAIL'} — {detail}")


def test_criterion_1_operator_dualities():
    rng = random.Random(101)
    start = time.perf_counter()
    failures = 0
    for _ in range(500):
        g, _ = random_game(rng, max_states=64)
        w = g.n_states
        for _ in range(50):
            p = StateSet(w, rng.getrandbits(w))
            p2 = StateSet(w, rng.getrandbits(w))
            ok = (
                ~pre_exists(g, p) == pre_forall(g, ~p)
                and ~pre_ctrl(g, 1, p) == pre_ctrl(g, 0, ~p)
                and ~apre(g, p, p2) == apre_dual(g, ~p, ~p2)
            )
            failures += not ok
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 10.0
    _verdict(1, ok, f"500 graphs x 50 set pairs, {failures} failures, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 10.0


def test_criterion_2_determinacy_oracle():
    rng = random.Random(202)
    singleton_bad = 0
    for _ in range(300):
        g, s = random_game(rng, max_states=48)
        fa, fg = s.assumptions[0], s.guarantees[0]
        z, _ = solve_4fp_singleton(g, fa, fg)
        singleton_bad += solve_4fp_negated(g, fa, fg) != ~z
    vector_bad = 0
    for _ in range(100):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        g, s = random_game(rng, max_states=14, m=m, n=n)
        z, _ = solve_4fp_vector(g, s)
        vector_bad += solve_negated_vector(g, s) != ~z
    ok = singleton_bad == 0 and vector_bad == 0
    _verdict(
        2,
        ok,
        f"300 singleton + 100 vector instances, "
        f"{singleton_bad + vector_bad} disagreements",
    )
    assert ok


def test_criterion_3_rank_properties():
    rng = random.Random(303)
    violations: list[str] = []
    for _ in range(200):
        g, s = random_game(rng, max_states=20)
        _, rt = solve_4fp_singleton(g, s.assumptions[0], s.guarantees[0])
        violations += check_singleton_table(g, rt)
    for _ in range(100):
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        g, s = random_game(rng, max_states=12, m=m, n=n)
        _, mrt = solve_4fp_vector(g, s)
        violations += check_moded_table(g, mrt)
        if n == m:
            _, mrt_h = solve_4fp_vector(g, s, heuristic=True)
            violations += check_moded_table(g, mrt_h)
    for fix in (ex0, ex1, h1_analog):
        g, s = fix()
        _, rt = solve_4fp_singleton(g, s.assumptions[0], s.guarantees[0])
        violations += check_singleton_table(g, rt)
    g, s = h2_analog()
    _, mrt = solve_4fp_vector(g, s)
    violations += check_moded_table(g, mrt)
    ok = not violations
    _verdict(3, ok, f"{len(violations)} structural violations across the corpus")
    assert violations == []


def test_criterion_4_soundness_bundle():
    rng = random.Random(404)
    problems: list[str] = []
    exercised = 0
    for i in range(150):
        n = rng.randint(1, 2)
        m = rng.randint(1, 2)
        g, s = random_game(rng, max_states=12, m=m, n=n)
        spec = augment_guarantees(s, check_inclusion(g, s))
        z, mrt = solve_4fp_vector(g, spec)
        if g.init not in z:
            continue
        exercised += 1
        machine = extract_strategy_vector(g, mrt)
        cl = build_closed_loop(g, spec, machine)
        gr1_ok = check_gr1_holds(cl, spec)[0]
        nc_ok = check_nonconflicting(cl, spec.assumptions)[0]
        scc_ok = has_guarantee_scc(cl, spec)
        if not (gr1_ok and nc_ok and scc_ok):
            problems.append(
                f"instance {i}: gr1={gr1_ok} nonconf={nc_ok} scc={scc_ok}"
            )
            continue
        if len(cl.nodes) <= 64:
            report = oracle_verify(cl, spec)
            if report["gr1_holds"] != gr1_ok or report["nonconflicting"] != nc_ok:
                problems.append(f"instance {i}: oracle disagreement {report}")
    ok = not problems and exercised >= 30
    _verdict(
        4,
        ok,
        f"{exercised} realizable prechecked instances, {len(problems)} violations",
    )
    assert problems == []
    assert exercised >= 30


def test_criterion_5_inclusion_and_strictness():
    rng = random.Random(505)
    inclusion_bad = 0
    for _ in range(100):
        n = rng.randint(1, 2)
        m = rng.randint(1, 2)
        g, s = random_game(rng, max_states=12, m=m, n=n)
        z4, _ = solve_4fp_vector(g, s)
        if not z4 <= solve_3fp(g, s).winning:
            inclusion_bad += 1
    for fix in (ex0, ex1, h1_analog, h2_analog):
        g, s = fix()
        z4, _ = solve_4fp_vector(g, s)
        if not z4 <= solve_3fp(g, s).winning:
            inclusion_bad += 1

    # Strictness witness 1: the H1 analog's trap is classically winning only.
    g, s = h1_analog()
    z4, _ = solve_4fp_vector(g, s)
    z3 = solve_3fp(g, s).winning
    q8, q9 = g.index_of["q8"], g.index_of["q9"]
    h1_strict = q8 in z3 and q9 in z3 and q8 not in z4 and q9 not in z4

    # Strictness witness 2 (as specified): EX1 after augmentation should be
    # classically realizable but 4FP-unrealizable from the initial state.
    # Our solver finds it 4FP-realizable with a 2-mode strategy whose
    # closed loop passes every verifier check and the lasso oracle, so this
    # sub-assertion fails; see the decisions ledger.
    g, s = ex1()
    spec = augment_guarantees(s, check_inclusion(g, s))
    z4a, _ = solve_4fp_vector(g, spec)
    ex1_strict = g.init in solve_3fp(g, spec).winning and g.init not in z4a

    ok = inclusion_bad == 0 and h1_strict and ex1_strict
    _verdict(
        5,
        ok,
        f"{inclusion_bad} inclusion violations; trap-analog strict: {h1_strict}; "
        f"EX1-after-augmentation strict: {ex1_strict}",
    )
    assert inclusion_bad == 0
    assert h1_strict
    assert ex1_strict


def test_criterion_6_maze_flags():
    start = time.perf_counter()
    report = run_benchmark(
        [MazeParams(variant="falsifiable"), MazeParams(variant="nonfalsifiable")]
    )
    elapsed = time.perf_counter() - start
    rows = {(r.instance.rsplit("-", 1)[1], r.algorithm): r for r in report.rows}
    reference = {
        ("falsifiable", "3fp"): (True, 10),
        ("falsifiable", "4fp"): (False, 46),
        ("falsifiable", "4fp-heuristic"): (False, 12),
        ("nonfalsifiable", "3fp"): (False, 35),
        ("nonfalsifiable", "4fp"): (False, 50),
        ("nonfalsifiable", "4fp-heuristic"): (False, 40),
    }
    problems = []
    for key, (want_star, ref_states) in reference.items():
        row = rows[key]
        if row.status != "ok" or not row.realizable:
            problems.append(f"{key}: not solved ({row.status})")
            continue
        if row.falsifying != want_star:
            problems.append(f"{key}: falsifying={row.falsifying}, want {want_star}")
        if not ref_states / 3 <= row.states <= ref_states * 3:
            problems.append(f"{key}: {row.states} states, reference {ref_states}")
    ok = not problems and elapsed < 60.0
    counts = {k: rows[k].states for k in reference}
    _verdict(6, ok, f"{problems or counts}, {elapsed:.1f}s")
    assert problems == []
    assert elapsed < 60.0


def test_criterion_7_heuristic_incompleteness():
    g, s = maze_generate(MazeParams(cols=3, lines=6, goals_per_player=2))
    z_tall, _ = solve_4fp_vector(g, s, heuristic=True)
    tall_ok = g.init in z_tall

    p = MazeParams(cols=4, lines=2, variant="nonfalsifiable")
    g, s = maze_generate(p)
    z_heur, _ = solve_4fp_vector(g, s, heuristic=True)
    z_full, _ = solve_4fp_vector(g, s)
    wide_ok = g.init not in z_heur and g.init in z_full

    ok = tall_ok and wide_ok
    _verdict(
        7,
        ok,
        f"3x6 heuristic realizable: {tall_ok}; 4x2 heuristic unrealizable "
        f"while full 4FP realizable: {wide_ok}",
    )
    assert tall_ok
    assert wide_ok


def test_criterion_8_complexity_trend():
    points = []
    for lines in range(2, 7):
        g, s = maze_generate(MazeParams(cols=3, lines=lines, goals_per_player=2))
        _, mrt = solve_4fp_vector(g, s)
        per_line = max(mrt.pre_per_line.values())
        points.append((math.log(g.n_states), math.log(per_line)))
    slope = statistics.linear_regression(
        [x for x, _ in points], [y for _, y in points]
    ).slope
    ok = slope <= 2.3
    _verdict(8, ok, f"log-log slope of per-line Pre invocations: {slope:.3f}")
    assert slope <= 2.3


def test_criterion_9_playground_end_to_end():
    """Scripted session against the serve API on the default 3x2 maze.

    The browser client's own test suite (frontend/) re-runs this flow over
    HTTP against a spawned server; here the same script exercises the API
    surface the playground consumes.
    """
    from fastapi.testclient import TestClient

    from gr1nc.maze import _neighbors
    from gr1nc.server import create_app

    client = TestClient(create_app())
    payload = client.get("/maze").json()
    opened = client.post(
        "/session",
        json={"game": payload["game"], "strategy": payload["strategy"]},
    ).json()
    sid, view = opened["sessionId"], opened["view"]

    # Illegal move rejected with the legal alternatives.
    r = client.post(f"/session/{sid}/env-move", json={"to": "nowhere"})
    illegal_ok = r.status_code == 400 and set(r.json()["legalEnvMoves"]) == set(
        view["legalEnvMoves"]
    )

    p = MazeParams()

    def dist(src, dst):
        seen = {src}
        queue = deque([(src, 0)])
        while queue:
            cell, d = queue.popleft()
            if cell == dst:
                return d
            for t in _neighbors(p, cell):
                if t not in seen:
                    seen.add(t)
                    queue.append((t, d + 1))
        return 10**6

    def decode(name):
        rpart, opart, _turn = name.split("_")
        rx, ry = rpart[1:].split("-")
        ox, oy = opart[1:].split("-")
        return (int(rx), int(ry)), (int(ox), int(oy))

    # Obstacle tour: alternate between the two obstacle goal corners.
    targets = [(0, 0), (2, 1)]
    target_idx = 0
    mirrored = True
    for _ in range(120):
        options = view["legalEnvMoves"]
        best = min(options, key=lambda nm: dist(decode(nm)[1], targets[target_idx]))
        r = client.post(f"/session/{sid}/env-move", json={"to": best})
        body = r.json()
        view = body["view"]
        # The view mirrors the strategy's answer.
        mirrored = mirrored and view["state"] == body["sysMove"]["state"]
        if decode(best)[1] == targets[target_idx]:
            target_idx = 1 - target_idx
        if (
            all(c >= 1 for c in view["satisfiedGuarantees"])
            and all(c >= 1 for c in view["satisfiedAssumptions"])
        ):
            break
    guarantees_ok = all(c >= 1 for c in view["satisfiedGuarantees"])
    assumptions_ok = all(c >= 1 for c in view["satisfiedAssumptions"])
    ok = illegal_ok and mirrored and guarantees_ok and assumptions_ok
    _verdict(
        9,
        ok,
        f"illegal-move rejection: {illegal_ok}; view mirroring: {mirrored}; "
        f"robot visited both goals: {guarantees_ok}; obstacle toured its "
        f"goals: {assumptions_ok} (browser client suite in frontend/)",
    )
    assert ok
