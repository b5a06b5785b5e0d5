"""Game rules, win detection, the pass rule, and the record codec.

The incremental win check is validated against the naive full-board scan on
randomly played games, and the codec by replay round-trips.
"""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cannibal_game.engine import (
    ALICE,
    ALICE_WON,
    BOB,
    BOB_WON,
    ONGOING,
    PASS,
    AnimalDoesNotFit,
    CellOccupied,
    GameFinished,
    GameState,
    IllegalPass,
    NotYourTurn,
    OutOfBounds,
    OverlapsOccupied,
    ParseError,
    Placement,
    Rect,
    RuleViolation,
    bob_has_placement,
    bob_placements_in_region,
    decode_record,
    encode_record,
    format_bounds,
    naive_alice_win_scan,
    new_game,
    parse_bounds,
    render_board,
)

FAR = Placement(0, 100, 100)  # Bob filler move far from the action


# --- game setup --------------------------------------------------------------


def test_new_game_fits():
    game = new_game("R 1 1", Rect(0, 0, 0, 0))
    assert game.status == ONGOING
    assert game.to_move == ALICE


def test_new_game_rejects_too_small_board():
    with pytest.raises(AnimalDoesNotFit):
        new_game("R 2 2", Rect(0, 0, 0, 4))


def test_new_game_infinite():
    game = new_game("O 4 6 1", None)
    assert game.bounds is None
    assert game.status == ONGOING


# --- moves -------------------------------------------------------------------


def test_alice_move_basics():
    game = new_game("R 2 2", None)
    game.apply_alice((0, 0))
    assert game.occupied[(0, 0)] == (ALICE, 0)
    assert game.to_move == BOB
    with pytest.raises(NotYourTurn):
        game.apply_alice((1, 1))


def test_cell_occupied():
    game = new_game("R 2 2", None)
    game.apply_alice((0, 0))
    game.apply_bob(FAR)
    with pytest.raises(CellOccupied):
        game.apply_alice((0, 0))


def test_alice_out_of_bounds():
    game = new_game("R 1 1", Rect(0, 2, 0, 2))
    with pytest.raises(OutOfBounds):
        game.apply_alice((3, 0))


def test_alice_completes_el():
    game = new_game("EL", None)
    game.apply_alice((0, 0))
    game.apply_bob(FAR)
    game.apply_alice((1, 0))
    game.apply_bob(Placement(0, 200, 200))
    game.apply_alice((0, 1))
    assert game.status == ALICE_WON
    assert game.win_reason == "animal_completed"
    with pytest.raises(GameFinished):
        game.apply_bob(Placement(0, 300, 300))


def test_bob_overlap_rejected():
    game = new_game("R 2 2", None)
    game.apply_alice((0, 0))
    with pytest.raises(OverlapsOccupied):
        game.apply_bob(Placement(0, 0, 0))
    with pytest.raises(OverlapsOccupied):
        game.apply_bob(Placement(0, -1, -1))


def test_bob_out_of_bounds():
    game = new_game("R 2 2", Rect(0, 3, 0, 3))
    game.apply_alice((0, 0))
    with pytest.raises(OutOfBounds):
        game.apply_bob(Placement(0, 3, 3))


def test_orientation_range_checked():
    game = new_game("R 2 2", None)
    game.apply_alice((0, 0))
    with pytest.raises(RuleViolation):
        game.apply_bob(Placement(8, 5, 5))


def test_pass_illegal_on_infinite_board():
    game = new_game("R 2 2", None)
    game.apply_alice((0, 0))
    with pytest.raises(IllegalPass):
        game.apply_bob_pass()


def test_pass_illegal_while_copy_fits():
    game = new_game("R 2 2", Rect(0, 3, 0, 3))
    game.apply_alice((0, 0))
    with pytest.raises(IllegalPass):
        game.apply_bob_pass()


def test_pass_then_board_full():
    # 3x3 board, 2x2 animal: one Bob copy plus a blocking Alice cell kill
    # every remaining placement; Alice then fills up and loses board_full.
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    game.apply_alice((0, 2))
    game.apply_bob(Placement(0, 0, 0))  # covers [0,1]x[0,1]
    game.apply_alice((2, 1))
    assert not bob_has_placement(game)
    game.apply_bob_pass()
    game.apply_alice((1, 2))
    game.apply_bob_pass()
    game.apply_alice((2, 2))
    game.apply_bob_pass()
    game.apply_alice((2, 0))
    assert game.status == BOB_WON
    assert game.win_reason == "board_full"


def test_apply_move_dispatch():
    game = new_game("R 1 2", None)
    game.apply_move((ALICE, (0, 0)))
    game.apply_move((BOB, (0, 50, 50)))
    game.apply_move((ALICE, (0, 1)))
    assert game.status == ALICE_WON
    assert game.ply == 3
    assert game.alice_move_count == 2


def test_subset_win():
    # Alice's cells may strictly contain the copy
    game = new_game("R 2 2", None)
    far = iter([(90, 0), (90, 5), (90, 10), (90, 15), (90, 20)])
    for cell in [(0, 0), (1, 1), (2, 2)]:
        game.apply_alice(cell)
        game.apply_bob(Placement(0, *next(far)))
    assert game.status == ONGOING  # diagonal is not a square
    for cell in [(1, 0), (0, 1)]:
        game.apply_alice(cell)
        if game.status == ONGOING:
            game.apply_bob(Placement(0, *next(far)))
    assert game.status == ALICE_WON


def test_clone_is_independent():
    game = new_game("EL", None)
    game.apply_alice((0, 0))
    twin = game.clone()
    twin.apply_bob(FAR)
    assert game.to_move == BOB
    assert twin.to_move == ALICE
    assert len(game.occupied) == 1


# --- placement enumeration ---------------------------------------------------


def test_placements_single_cell_region():
    game = new_game("R 1 1", None)
    assert len(bob_placements_in_region(game, Rect(5, 5, 5, 5))) == 1


def test_placements_square_on_3x3():
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    pls = bob_placements_in_region(game, Rect(0, 2, 0, 2))
    assert len(pls) == 4
    assert pls == sorted(pls)


def test_placements_respect_occupancy():
    game = new_game("R 2 2", Rect(0, 2, 0, 2))
    game.apply_alice((1, 1))
    assert bob_placements_in_region(game, Rect(0, 2, 0, 2)) == []


# --- record codec ------------------------------------------------------------


def _play_random_game(animal: str, rect: Rect, seed: int, scan_oracle=None):
    rng = random.Random(seed)
    game = new_game(animal, rect, seed=seed)
    while game.status == ONGOING:
        if game.to_move == ALICE:
            free = [c for c in rect.cells() if c not in game.occupied]
            game.apply_alice(rng.choice(free))
        else:
            pls = bob_placements_in_region(game, rect)
            if pls:
                game.apply_bob(rng.choice(pls))
            else:
                game.apply_bob_pass()
        if scan_oracle is not None:
            scan_oracle(game)
    return game


def test_round_trip_played_game():
    game = _play_random_game("EL", Rect(0, 4, 0, 4), seed=11)
    back = decode_record(encode_record(game))
    assert back.occupied == game.occupied
    assert back.status == game.status
    assert back.to_move == game.to_move
    assert back.history == game.history
    assert back.seed == 11


def test_empty_record_is_header_only():
    game = new_game("O 4 6 1", None)
    text = encode_record(game)
    assert text == "animal O 4 6 1\nbounds infinite\n"
    back = decode_record(text)
    assert back.occupied == {}
    assert back.to_move == ALICE


def test_record_tolerates_comments():
    state = decode_record("# fixture\nanimal EL\n\nbounds infinite\nA 0 0\n")
    assert state.occupied == {(0, 0): (ALICE, 0)}


@pytest.mark.parametrize(
    "text,bad_line",
    [
        ("animal EL\nbounds infinite\nA 0\n", 3),
        ("animal EL\nbounds infinite\nB 9 0 0\n", 3),
        ("animal EL\nA 0 0\n", 2),
        ("animal Q 1\nbounds infinite\n", 1),
        ("animal EL\nbounds rect 1 2\n", 2),
        ("animal EL\nbounds infinite\nA 0 0\nA 0 0\n", 4),
        ("animal EL\nbounds infinite\nwhat 1\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, bad_line):
    with pytest.raises(ParseError) as err:
        decode_record(text)
    assert err.value.line == bad_line


def test_missing_header_rejected():
    with pytest.raises(ParseError):
        decode_record("animal EL\n")
    with pytest.raises(ParseError):
        decode_record("")


def test_bounds_round_trip():
    assert parse_bounds(format_bounds(None)) is None
    rect = Rect(-2, 5, 0, 3)
    assert parse_bounds(format_bounds(rect)) == rect
    with pytest.raises(ValueError):
        parse_bounds("sphere 1 2 3 4")


def test_render_board_marks_owners():
    game = new_game("R 1 2", Rect(0, 2, 0, 2))
    game.apply_alice((0, 0))
    game.apply_bob(Placement(0, 2, 0))
    art = render_board(game)
    assert "A" in art and "b" in art


# --- invariants over random play ---------------------------------------------

small_setups_st = st.tuples(
    st.sampled_from(["R 1 2", "EL", "R 2 2", "CELLS (0,0);(1,0);(1,1);(2,1)"]),
    st.sampled_from([Rect(0, 3, 0, 3), Rect(0, 4, 0, 3), Rect(0, 4, 0, 4)]),
    st.integers(0, 10_000),
)


@given(small_setups_st)
@settings(max_examples=60, deadline=None)
def test_incremental_win_agrees_with_scan(setup):
    animal, rect, seed = setup

    def oracle(game):
        assert (game.status == ALICE_WON) == naive_alice_win_scan(game)

    _play_random_game(animal, rect, seed, scan_oracle=oracle)


@given(small_setups_st)
@settings(max_examples=60, deadline=None)
def test_occupancy_accounting(setup):
    animal, rect, seed = setup

    def oracle(game):
        bob_moves = sum(1 for kind, _ in game.history if kind == BOB)
        expected = game.alice_move_count + game.animal.size * bob_moves
        assert len(game.occupied) == expected
        assert game.bob_pass_count == sum(
            1 for kind, _ in game.history if kind == PASS
        )

    _play_random_game(animal, rect, seed, scan_oracle=oracle)


@given(small_setups_st)
@settings(max_examples=30, deadline=None)
def test_occupancy_is_permanent(setup):
    animal, rect, seed = setup
    seen: dict = {}

    def oracle(game):
        for cell, tag in seen.items():
            assert game.occupied[cell] == tag
        seen.clear()
        seen.update(game.occupied)

    _play_random_game(animal, rect, seed, scan_oracle=oracle)


@given(small_setups_st)
@settings(max_examples=30, deadline=None)
def test_replay_determinism(setup):
    animal, rect, seed = setup
    game = _play_random_game(animal, rect, seed)
    back = decode_record(encode_record(game))
    assert back.occupied == game.occupied
    assert back.status == game.status
    assert back.win_reason == game.win_reason
