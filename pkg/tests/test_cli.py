"""CLI subcommands, driven through main(argv) with captured streams."""

from __future__ import annotations

import io

from cannibal_game.cli import main
from cannibal_game.engine import ALICE_WON, decode_record
from cannibal_game.harness import run_match


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- tiny calculators ------------------------------------------------------------


def test_choose_n(capsys):
    code, out, _ = run_cli(capsys, "choose-n", "1", "1")
    assert code == 0
    assert out == "33\n"


def test_classify_inner(capsys):
    code, out, _ = run_cli(capsys, "classify-piece", "--animal", "R 3 3", "--remove", "(1,1)")
    assert (code, out) == (0, "inner\n")


def test_classify_outer(capsys):
    code, out, _ = run_cli(capsys, "classify-piece", "--animal", "EL", "--remove", "(1,0)")
    assert (code, out) == (0, "outer\n")


# --- verify-partition ------------------------------------------------------------


def test_verify_known_partition(capsys):
    code, out, _ = run_cli(capsys, "verify-partition", "--animal", "O 4 6 1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "partition block 5x7 shift 0 origin (0,0)"
    assert lines[1] == "NO CRACK"


def test_verify_shifted_u_partition_cracks(capsys):
    code, out, _ = run_cli(
        capsys, "verify-partition", "--animal", "U 2 4 1", "--shift", "2"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "partition block 5x2 shift 2 origin (0,0)"
    assert lines[1] == "CRACK FOUND"
    assert lines[2] == "crack B 1 6 1"


def test_verify_without_partition_or_shift(capsys):
    code, _, err = run_cli(capsys, "verify-partition", "--animal", "U 2 4 1")
    assert code == 1
    assert "no known partition" in err


def test_verify_bad_block(capsys):
    code, _, err = run_cli(
        capsys, "verify-partition", "--animal", "O 4 6 1", "--block", "five-by-7"
    )
    assert code == 2
    assert "usage error" in err


# --- solve -----------------------------------------------------------------


def test_solve_el_3x3(capsys):
    code, out, _ = run_cli(capsys, "solve", "--animal", "EL", "--board", "3x3")
    assert code == 0
    lines = out.splitlines()
    assert "winner alice" in lines
    assert "ply 5" in lines
    assert "alice_moves 3" in lines
    assert "reason completes_copy" in lines
    # the pv block is itself a loadable record
    pv_start = lines.index("pv") + 1
    state = decode_record("\n".join(lines[pv_start:]))
    assert state.status == ALICE_WON


def test_solve_with_starved_budget(capsys):
    code, out, _ = run_cli(
        capsys, "solve", "--animal", "EL", "--board", "3x3", "--budget", "4"
    )
    assert code == 0
    assert "winner bob" in out
    assert "ply -" in out
    assert "reason no_alice_win_within_budget" in out


def test_solve_memo_overflow(capsys):
    code, out, err = run_cli(
        capsys, "solve", "--animal", "EL", "--board", "3x3", "--memo-limit", "5"
    )
    assert code == 1
    assert "winner unknown" in out
    assert "memo overflow" in err


# --- simulate -----------------------------------------------------------------


def test_simulate_writes_records(capsys, tmp_path):
    code, out, err = run_cli(
        capsys,
        "simulate",
        "--alice", "alice:random",
        "--bob", "bob:pairing",
        "--animal", "O 4 6 1",
        "--games", "3",
        "--seed", "5",
        "--budget", "40",
        "--out", str(tmp_path),
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("seed=5 winner=bob")
    assert "violations=0" in lines[0]
    assert "total games=3 alice_wins=0 bob_wins=3" in err
    for seed in (5, 6, 7):
        record = (tmp_path / f"game_{seed}.record").read_text()
        state = decode_record(record)  # round-trips through the engine
        assert state.ply == 40


def test_simulate_wrong_partition_exits_falsified(capsys):
    code, _, err = run_cli(
        capsys,
        "simulate",
        "--alice", "alice:random",
        "--bob", "bob:pairing",
        "--animal", "O 4 6 1",
        "--games", "1",
        "--seed", "0",
        "--pairing-block", "3x3",
    )
    assert code == 3
    assert err.startswith("FALSIFIED: StrategyFalsified")
    assert "animal O 4 6 1" in err  # evidence record is attached


def test_simulate_unknown_strategy(capsys):
    code, _, err = run_cli(
        capsys,
        "simulate",
        "--alice", "alice:psychic",
        "--bob", "bob:random",
        "--animal", "EL",
        "--games", "1",
        "--seed", "0",
    )
    assert code == 2
    assert "error" in err


# --- replay -----------------------------------------------------------------


def test_replay_file(capsys, tmp_path):
    report = run_match("alice:random", "bob:random", "EL", seed=2, move_budget=30)
    path = tmp_path / "g.record"
    path.write_text(report.record)
    code, out, _ = run_cli(capsys, "replay", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "animal EL"
    assert lines[1] == "bounds infinite"
    assert f"ply {report.total_ply}" in lines
    assert f"alice_moves {report.alice_move_count}" in lines
    cell_lines = [l for l in lines if l.startswith("cell ")]
    assert len(cell_lines) == int(next(l for l in lines if l.startswith("cells ")).split()[1])
    assert cell_lines == sorted(cell_lines, key=lambda l: tuple(map(int, l.split()[1:3])))


def test_replay_stdin(capsys, monkeypatch, tmp_path):
    report = run_match("alice:random", "bob:random", "EL", seed=2, move_budget=10)
    monkeypatch.setattr("sys.stdin", io.StringIO(report.record))
    code, out, _ = run_cli(capsys, "replay", "-")
    assert code == 0
    assert "status ongoing" in out
    assert "winner -" in out


def test_replay_board_art(capsys, tmp_path):
    report = run_match("alice:random", "bob:random", "EL", seed=2, move_budget=10)
    path = tmp_path / "g.record"
    path.write_text(report.record)
    code, _, err = run_cli(capsys, "replay", str(path), "--board-art")
    assert code == 0
    assert err.strip()


def test_replay_rejects_corrupt_records(capsys, tmp_path):
    path = tmp_path / "bad.record"
    path.write_text("animal EL\nbounds infinite\nA 0 0\nA 0 0\n")
    code, _, err = run_cli(capsys, "replay", str(path))
    assert code == 2
    assert "error" in err


# --- play -----------------------------------------------------------------


def test_play_instant_win(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("0 0\n"))
    code, out, _ = run_cli(
        capsys, "play", "--animal", "R 1 1", "--board", "1x1", "--engine", "bob:random"
    )
    assert code == 0
    assert "status alice_won" in out
    assert "A 0 0" in out  # final record echoes the move


def test_play_as_bob_against_helly(capsys, monkeypatch):
    # every copy on the 2x2 board is the whole board, so Bob can only pass
    monkeypatch.setattr("sys.stdin", io.StringIO("pass\npass\npass\n"))
    code, out, _ = run_cli(
        capsys,
        "play",
        "--animal", "R 2 2",
        "--board", "2x2",
        "--side", "bob",
        "--engine", "alice:bounded-helly",
    )
    assert code == 0
    assert out.count("engine A ") == 4
    assert "status alice_won" in out


def test_play_reports_illegal_moves(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("5 5\n0 0\n"))
    code, out, err = run_cli(
        capsys, "play", "--animal", "R 1 1", "--board", "1x1", "--engine", "bob:random"
    )
    assert code == 0
    assert "illegal:" in err
    assert "status alice_won" in out


# --- usage -------------------------------------------------------------------


def test_unknown_subcommand(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2


def test_bad_board_spec(capsys):
    code, _, err = run_cli(capsys, "solve", "--animal", "EL", "--board", "3by3")
    assert code == 2
    assert "expected WxH" in err


def test_bad_animal(capsys):
    code, _, err = run_cli(capsys, "choose-n", "0", "1")
    assert code == 2


def test_missing_required_argument(capsys):
    assert run_cli(capsys, "solve", "--animal", "EL")[0] == 2
