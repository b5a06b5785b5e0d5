"""Exact small-board solving.

Pinned verdicts are hand-proved:

* R(1,1) on 1x1: Alice's first cell is a copy, ply 1.
* R(1,2) on 2x2: one Bob domino cannot cover both of Alice's completion
  cells after her corner opening, ply 3.
* EL on 2x2: whatever cell Alice takes, the other three form an El copy
  Bob fills at once, so Bob wins on ply 2.
* R(2,2) on 2x2: Bob can never place, so he passes while Alice fills all
  four cells: ply 7.
"""

from __future__ import annotations

import pytest

from cannibal_game.engine import ALICE_WON, BOB, PASS, Rect, new_game
from cannibal_game.harness import run_match
from cannibal_game.solver import (
    MemoOverflow,
    Outcome,
    SolveConfig,
    Solver,
    SolverBob,
    best_move,
    solve,
)


def _solve(animal: str, rect: Rect, **kw) -> Outcome:
    return solve(SolveConfig(animal=animal, bounds=rect, **kw))


def test_monomino_instant_win():
    out = _solve("R 1 1", Rect(0, 0, 0, 0))
    assert (out.winner, out.ply_to_win, out.alice_moves) == ("alice", 1, 1)
    assert out.reason == "completes_copy"


def test_domino_on_2x2():
    out = _solve("R 1 2", Rect(0, 1, 0, 1))
    assert (out.winner, out.ply_to_win, out.alice_moves) == ("alice", 3, 2)


def test_el_on_2x2_is_a_bob_win():
    out = _solve("EL", Rect(0, 1, 0, 1))
    assert out.winner == "bob"
    assert out.ply_to_win is None
    assert out.pv == []


def test_el_on_3x3():
    out = _solve("EL", Rect(0, 2, 0, 2))
    assert (out.winner, out.ply_to_win, out.alice_moves) == ("alice", 5, 3)


def test_square_on_its_own_board():
    # Bob is stuck from move one and passes; Alice fills the board
    out = _solve("R 2 2", Rect(0, 1, 0, 1))
    assert (out.winner, out.ply_to_win, out.alice_moves) == ("alice", 7, 4)
    assert sum(1 for kind, _ in out.pv if kind == PASS) == 3


def test_alice_moves_accounting():
    for animal, rect in [("R 1 2", Rect(0, 1, 0, 1)), ("EL", Rect(0, 2, 0, 2))]:
        out = _solve(animal, rect)
        assert out.alice_moves == (out.ply_to_win + 1) // 2


def test_pv_replays_to_the_claimed_win():
    out = _solve("EL", Rect(0, 2, 0, 2))
    game = new_game("EL", Rect(0, 2, 0, 2))
    for move in out.pv:
        game.apply_move(move)
    assert game.status == ALICE_WON
    assert game.ply == out.ply_to_win


def test_solve_is_deterministic():
    a = _solve("EL", Rect(0, 2, 0, 2))
    b = _solve("EL", Rect(0, 2, 0, 2))
    assert (a.winner, a.ply_to_win, a.pv) == (b.winner, b.ply_to_win, b.pv)


def test_budget_verdicts_are_conservative():
    out = _solve("EL", Rect(0, 2, 0, 2), move_budget=4)
    assert out.winner == "bob"
    assert out.reason == "no_alice_win_within_budget"


def test_symmetric_positions_agree():
    solver = Solver("EL", Rect(0, 2, 0, 2))
    budget = 2 * solver.n_cells
    left = solver.solve_position(1 << solver.index[(0, 0)], 0, BOB, budget)
    right = solver.solve_position(1 << solver.index[(2, 2)], 0, BOB, budget)
    assert left[:2] == right[:2]


def test_memo_overflow_aborts():
    with pytest.raises(MemoOverflow):
        _solve("EL", Rect(0, 2, 0, 2), memo_limit=5)


def test_solver_rejects_hopeless_bounds():
    with pytest.raises(ValueError):
        Solver("R 3 3", Rect(0, 1, 0, 1))


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(animal="EL", bounds=Rect(0, 2, 0, 2), move_budget=0)


def test_best_move_plays_out_the_win():
    rect = Rect(0, 2, 0, 2)
    config = SolveConfig(animal="EL", bounds=rect)
    solver = Solver("EL", rect)
    game = new_game("EL", rect)
    while game.status == "ongoing":
        game.apply_move(best_move(game, config, solver=solver))
    assert game.status == ALICE_WON
    assert game.ply == 5  # optimal play reproduces the solved distance


def test_best_move_rejects_finished_games():
    game = new_game("R 1 1", Rect(0, 2, 0, 2))
    game.apply_alice((0, 0))
    config = SolveConfig(animal="R 1 1", bounds=game.bounds)
    with pytest.raises(ValueError):
        best_move(game, config)


def test_solver_bob_delays_the_domino():
    # optimal Bob cannot save the 2x2 board, but he must not blunder either
    report = run_match("alice:bounded-helly", "bob:solver", "R 1 2", Rect(0, 1, 0, 1), seed=0)
    assert report.winner == "alice"


def test_solver_bob_pass_handling():
    game = new_game("R 2 2", Rect(0, 1, 0, 1))
    adapter = SolverBob("R 2 2", Rect(0, 1, 0, 1))
    game.apply_alice((0, 0))
    assert adapter.move(game) is None  # nothing fits: pass
