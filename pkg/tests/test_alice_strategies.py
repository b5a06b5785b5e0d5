"""Alice's constructive strategies.

Covers the stab-set/Helly machinery on bounded boards, square-size selection
and the surround-then-stab plan for the infinite board, and the case machine
behind the fast square strategy with its per-branch move bounds.
"""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cannibal_game.alice_strategies import (
    BoundedHellyAlice,
    BoundingAlice,
    BoundingPlan,
    CaseNotCovered,
    EmptyIntersection,
    FastSquareAlice,
    Frame,
    NoTarget,
    bounded_rectangle_move,
    bounding_move,
    boundary_cells,
    choose_N,
    helly_cell,
    placement_rect,
    stab_sets,
)
from cannibal_game.engine import ALICE_WON, Placement, Rect, new_game
from cannibal_game.geometry import apply_d4
from cannibal_game.harness import run_match

# --- stab sets and the Helly cell ---------------------------------------------


def test_stab_sets_on_empty_3x3():
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    stab = stab_sets(game)
    assert len(stab.S) == 4
    assert set(stab.S_prime) == set(stab.S)  # all four copies share (1,1)


def test_bob_cells_shrink_s():
    game = new_game("R 2 2", Rect(0, 3, 0, 1))
    game.apply_alice((0, 0))
    game.apply_bob(Placement(0, 2, 0))
    stab = stab_sets(game)
    # Bob's copy kills two of the three anchors; Alice's own cell kills none
    assert stab.S == (Placement(0, 0, 0),)


def test_alice_cells_do_not_shrink_s():
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    game.apply_alice((1, 1))
    assert len(stab_sets(game).S) == 4


def test_single_copy_stabs_itself():
    game = new_game("R 2 2", Rect(0, 1, 0, 1))
    stab = stab_sets(game)
    assert len(stab.S) == 1
    assert stab.S_prime == stab.S


def test_helly_cell_pinned():
    assert helly_cell([Rect(0, 2, 0, 2)]) == (0, 0)
    assert helly_cell([Rect(0, 2, 0, 2), Rect(2, 4, 2, 4)]) == (2, 2)
    assert helly_cell([Rect(0, 3, 0, 1), Rect(1, 4, 0, 1), Rect(2, 5, 0, 1)]) == (2, 0)


def test_helly_cell_rejects_disjoint():
    with pytest.raises(EmptyIntersection):
        helly_cell([Rect(0, 1, 0, 1), Rect(5, 6, 0, 1)])
    with pytest.raises(EmptyIntersection):
        helly_cell([])


@given(
    st.lists(
        st.tuples(st.integers(-8, 8), st.integers(0, 5), st.integers(-8, 8), st.integers(0, 5)),
        min_size=1,
        max_size=6,
    )
)
def test_helly_cell_lies_in_every_rect(raw):
    rects = [Rect(x, x + w, y, y + h) for x, w, y, h in raw]
    try:
        cell = helly_cell(rects)
    except EmptyIntersection:
        # legitimate only when some pair is disjoint on an axis
        assert any(
            a.x_min > b.x_max or b.x_min > a.x_max or a.y_min > b.y_max or b.y_min > a.y_max
            for a in rects
            for b in rects
        )
        return
    assert all(r.contains(cell) for r in rects)


def test_first_move_is_the_center():
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    cell, _ = bounded_rectangle_move(game)
    assert cell == (1, 1)


def test_fallback_when_helly_cell_is_alices():
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    game.apply_alice((1, 1))  # every copy passes through (1,1), so Bob is stuck
    game.apply_bob_pass()
    cell, stab = bounded_rectangle_move(game)
    assert cell == (0, 0)  # first free cell of the first surviving copy
    assert any(cell in game.placement_cells(pl) for pl in stab.S)


def test_no_target_when_s_empty():
    game = new_game("R 2 2", Rect(0, 1, 0, 1))
    game.apply_alice((0, 0))
    game.apply_bob_pass()
    game.occupied[(1, 1)] = ("B", 99)  # simulate a Bob cell poisoning S
    with pytest.raises(NoTarget):
        bounded_rectangle_move(game)


def test_helly_strategy_beats_random_bob():
    for animal, rect in [
        ("R 2 2", Rect(0, 4, 0, 4)),
        ("R 1 3", Rect(0, 4, 0, 3)),
        ("R 3 3", Rect(0, 5, 0, 5)),
    ]:
        for seed in range(10):
            report = run_match("alice:bounded-helly", "bob:random", animal, rect, seed=seed)
            assert report.winner == "alice", (animal, seed)
            assert min(report.alice_strategy.stab_sizes) >= 1


def test_helly_strategy_rejects_non_rectangles():
    game = new_game("EL", Rect(0, 4, 0, 4))
    with pytest.raises(ValueError):
        BoundedHellyAlice().move(game)


# --- square size selection and the surround plan --------------------------------


def test_choose_n_smallest_square():
    assert choose_N(1, 1) == 33


def test_choose_n_symmetric():
    for n in range(1, 5):
        for m in range(1, 5):
            assert choose_N(n, m) == choose_N(m, n)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (1, 3), (3, 2)])
def test_choose_n_minimality(n, m):
    N = choose_N(n, m)
    weight = n * n + m * m + 6 * n * m
    assert (N - n + 1) * (N - m + 1) > 4 * N * weight
    assert (N - n) * (N - m) <= 4 * (N - 1) * weight


def test_choose_n_budget_grows_square():
    assert choose_N(2, 2, extra_bob_moves=100) > choose_N(2, 2)


def test_choose_n_rejects_degenerate():
    with pytest.raises(ValueError):
        choose_N(0, 3)


def test_boundary_cells_shape():
    N = 7
    cells = boundary_cells((10, -5), N)
    assert len(cells) == len(set(cells)) == 4 * (N - 2)
    xs = {x for x, _ in cells}
    ys = {y for _, y in cells}
    assert min(xs) == 10 and max(xs) == 10 + N - 1
    assert min(ys) == -5 and max(ys) == -5 + N - 1
    corners = {(10, -5), (10, -5 + N - 1), (10 + N - 1, -5), (10 + N - 1, -5 + N - 1)}
    assert corners.isdisjoint(cells)
    # every cell sits on the square's rim
    for x, y in cells:
        assert x in (10, 10 + N - 1) or y in (-5, -5 + N - 1)


def test_bounding_plan_interior():
    plan = BoundingPlan(N=6, origin=(0, 0))
    assert plan.interior == Rect(1, 4, 1, 4)
    assert plan.phase == "surrounding"


def test_bounding_move_claims_boundary_in_order():
    game = new_game("R 2 2", None)
    plan = BoundingPlan(N=6, origin=(0, 0))
    assert bounding_move(game, plan) == (0, 1)
    game.apply_alice((0, 1))
    game.apply_bob(Placement(0, 50, 50))
    assert bounding_move(game, plan) == (0, 2)


def test_bounding_move_raises_on_lost_boundary():
    from cannibal_game.alice_strategies import BoundaryCellLost

    game = new_game("R 2 2", None)
    plan = BoundingPlan(N=6, origin=(0, 0))
    game.apply_alice(bounding_move(game, plan))
    game.apply_bob(Placement(0, 0, 2))  # covers pending boundary cells
    with pytest.raises(BoundaryCellLost):
        bounding_move(game, plan)


def _far_bob_script(count: int, start_y: int = 1000, step: int = 3) -> str:
    return ";".join(f"0,0,{start_y + step * i}" for i in range(count))


def test_bounding_strategy_full_win():
    # Bob stays far away; Alice surrounds her square and wins inside it
    script = _far_bob_script(600)
    report = run_match(
        "alice:bounding",
        f"bob:scripted({script})",
        "R 2 2",
        None,
        seed=5,
        move_budget=1300,
    )
    assert report.winner == "alice"
    assert report.alice_strategy.resites == 0


def test_bounding_strategy_resites_after_interference():
    # Bob's first copy lands on the square's pending boundary; Alice re-sites
    script = "0,0,2;" + _far_bob_script(800, start_y=3000)
    report = run_match(
        "alice:bounding",
        f"bob:scripted({script})",
        "R 2 2",
        None,
        seed=6,
        move_budget=1800,
    )
    assert report.winner == "alice"
    assert report.alice_strategy.resites == 1


def test_bounding_strategy_rejects_bounded_boards():
    game = new_game("R 2 2", Rect(0, 5, 0, 5))
    with pytest.raises(ValueError):
        BoundingAlice().move(game)


# --- the view frame -------------------------------------------------------------


frames_st = st.builds(
    Frame,
    st.sampled_from(range(8)),
    st.integers(-30, 30),
    st.integers(-30, 30),
)
cells_st = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


@given(frames_st, cells_st)
def test_frame_round_trip(frame, cell):
    assert frame.from_norm(frame.to_norm(cell)) == cell
    assert frame.to_norm(frame.from_norm(cell)) == cell


@given(frames_st, st.sampled_from(range(8)), st.integers(-10, 10), st.integers(-10, 10), cells_st)
def test_frame_composition(frame, k, sx, sy, cell):
    composed = frame.compose_after(k, sx, sy)
    x, y = apply_d4(k, frame.to_norm(cell))
    assert composed.to_norm(cell) == (x + sx, y + sy)


# --- the fast square strategy ----------------------------------------------------


def test_fast_square_opens_at_origin():
    game = new_game("R 3 3", None)
    assert FastSquareAlice().move(game) == (0, 0)


def test_fast_square_rejects_non_squares():
    game = new_game("R 2 3", None)
    with pytest.raises(ValueError):
        FastSquareAlice().move(game)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fast_square_beats_random(n):
    cap = n * n + 3
    for seed in range(12):
        report = run_match(
            "alice:fast-square", "bob:random", f"R {n} {n}", None, seed=seed
        )
        assert report.winner == "alice"
        assert report.alice_move_count <= cap, (n, seed, report.record)


def test_fast_square_beats_adjacent_blocker():
    for n in (2, 3, 4):
        report = run_match(
            "alice:fast-square", "bob:adjacent-blocker", f"R {n} {n}", None, seed=0
        )
        assert report.winner == "alice"
        assert report.alice_move_count <= n * n + 3


# Scripted openings drive each branch of the case analysis. The leading copy
# at dx=-10 sits strictly left of Alice's first cell, so the normalization
# frame stays the identity and scripted coordinates mean what they say.
N_CASE = 3


def _case_report(script: str, seed: int = 0):
    return run_match(
        "alice:fast-square",
        f"bob:scripted({script})",
        f"R {N_CASE} {N_CASE}",
        None,
        seed=seed,
    )


def test_two_occupied_ground_row_bound():
    # Bob's second copy blocks (2n,0) anchored on the ground row
    report = _case_report("0,-10,0;0,6,0")
    assert report.winner == "alice"
    assert report.alice_move_count <= N_CASE * N_CASE + 1


def test_two_occupied_fork_bound():
    # Bob's second copy blocks (2n,0) from below
    report = _case_report("0,-10,0;0,6,-2")
    assert report.winner == "alice"
    assert report.alice_move_count <= N_CASE * N_CASE + 2


def test_three_occupied_bound():
    # Bob's third copy blocks (3n,0)
    report = _case_report("0,-10,0;0,-20,0;0,9,0")
    assert report.winner == "alice"
    assert report.alice_move_count <= N_CASE * N_CASE + 2


def test_four_occupied_empty_band():
    # nothing in the strips beside the anchors
    report = _case_report("0,-10,0;0,-20,0;0,-30,0;0,-40,0")
    assert report.winner == "alice"
    assert report.alice_move_count <= N_CASE * N_CASE + 3


def test_four_occupied_lone_upper_copy():
    # one Bob copy in the upper band after the anchors are claimed
    report = _case_report("0,-10,0;0,-20,0;0,-30,0;0,4,1")
    assert report.winner == "alice"
    assert report.alice_move_count <= N_CASE * N_CASE + 3


def test_case_not_covered_on_foreign_history():
    # a fresh plan bootstrapped five moves into someone else's game sees a
    # position its analysis never produced and must refuse it with the record
    from cannibal_game.alice_strategies import FastSquarePlan, fast_square_move

    game = new_game("R 3 3", None)
    for i, cell in enumerate([(0, 0), (9, 9), (20, 0), (30, 0), (40, 0)]):
        game.apply_alice(cell)
        game.apply_bob(Placement(0, -10 * (i + 1), 0))
    with pytest.raises(CaseNotCovered) as err:
        fast_square_move(game, FastSquarePlan(n=3))
    assert "animal R 3 3" in err.value.record
