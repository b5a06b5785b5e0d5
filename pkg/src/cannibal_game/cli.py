"""Command-line entry point.

Subcommands: solve, simulate, verify-partition, classify-piece, choose-n,
play, serve, replay. Machine-readable output goes to stdout; diagnostics and
boards go to stderr. Exit codes: 0 success, 2 usage error, 3 when a
strategy with an unconditional correctness claim was falsified
(StrategyFalsified / CaseNotCovered), so CI can separate a disproved
claim from ordinary failures.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .alice_strategies import CaseNotCovered, choose_N
from .animals import (
    InvalidAnimal,
    classify_piece,
    make_animal,
    parse_animal,
)
from .bob_strategies import (
    BlockPartition,
    StrategyFalsified,
    UnsupportedAnimal,
    find_crack,
    partition_for,
)
from .engine import (
    ALICE_WON,
    BOB_WON,
    GameError,
    ONGOING,
    Placement,
    Rect,
    decode_record,
    encode_record,
    format_bounds,
    new_game,
    render_board,
)
from .harness import (
    ALICE_IDS,
    BOB_IDS,
    Falsification,
    make_strategy,
    run_match,
    run_series,
)
from .solver import MemoOverflow, SolveConfig, solve

USAGE_ERROR = 2
FALSIFIED = 3


class CliError(Exception):
    """Usage-level problem; maps to exit code 2."""


def parse_board(text: str) -> Rect:
    try:
        w, h = text.lower().split("x")
        width, height = int(w), int(h)
    except ValueError:
        raise CliError(f"bad board {text!r}, expected WxH") from None
    if width < 1 or height < 1:
        raise CliError("board sides must be positive")
    return Rect(0, width - 1, 0, height - 1)


def _parse_cells(text: str) -> frozenset:
    from .animals import _parse_cell_list

    return _parse_cell_list(text)


def _animal(text: str):
    try:
        return parse_animal(text)
    except InvalidAnimal as exc:
        raise CliError(str(exc)) from None


# --- subcommands ---------------------------------------------------------------


def cmd_solve(args) -> int:
    spec = _animal(args.animal)
    board = parse_board(args.board)
    config = SolveConfig(
        animal=spec,
        bounds=board,
        move_budget=args.budget,
        memo_limit=args.memo_limit,
        threads=args.threads,
    )
    try:
        outcome = solve(config)
    except MemoOverflow as exc:
        print(f"memo overflow after {exc.nodes} nodes", file=sys.stderr)
        print("winner unknown")
        print(f"nodes {exc.nodes}")
        print(f"memo_entries {exc.memo_entries}")
        return 1
    print(f"winner {outcome.winner}")
    print(f"ply {outcome.ply_to_win if outcome.ply_to_win is not None else '-'}")
    print(
        f"alice_moves {outcome.alice_moves if outcome.alice_moves is not None else '-'}"
    )
    print(f"reason {outcome.reason}")
    print(f"nodes {outcome.nodes}")
    print(f"memo_entries {outcome.memo_entries}")
    if outcome.pv:
        print("pv")
        print(f"animal {args.animal.strip()}")
        print(f"bounds {format_bounds(board)}")
        for kind, payload in outcome.pv:
            if kind == "A":
                print(f"A {payload[0]} {payload[1]}")
            elif kind == "B":
                print(f"B {payload.orientation} {payload.dx} {payload.dy}")
            else:
                print("BPASS")
    return 0


def cmd_simulate(args) -> int:
    spec = _animal(args.animal)
    bounds = parse_board(args.board) if args.board else None
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    partition = None
    if args.pairing_block or args.pairing_shift is not None:
        base = None
        try:
            base = partition_for(spec)
        except UnsupportedAnimal:
            pass
        if args.pairing_block:
            bw, bh = (int(t) for t in args.pairing_block.lower().split("x"))
        elif base is not None:
            bw, bh = base.block_w, base.block_h
        else:
            raise CliError("--pairing-shift without --pairing-block or a known partition")
        shift = args.pairing_shift
        if shift is None:
            shift = base.shift if base is not None else 0
        partition = BlockPartition(bw, bh, shift)

    def on_report(report):
        violations = len(report.invariant_violations)
        print(
            f"seed={report.seed} winner={report.winner} "
            f"moves={report.alice_move_count} violations={violations}"
        )
        if out_dir is not None:
            path = out_dir / f"game_{report.seed}.record"
            path.write_text(report.record)

    stats = run_series(
        args.alice,
        args.bob,
        spec,
        bounds,
        games=args.games,
        seed_base=args.seed,
        move_budget=args.budget,
        pairing_partition=partition,
        on_report=on_report,
    )
    print(
        f"total games={stats.games} alice_wins={stats.alice_wins} "
        f"bob_wins={stats.bob_wins} violations={len(stats.violations)}",
        file=sys.stderr,
    )
    return 0


def cmd_verify_partition(args) -> int:
    spec = _animal(args.animal)
    if args.block:
        try:
            w, h = (int(t) for t in args.block.lower().split("x"))
        except ValueError:
            raise CliError(f"bad block {args.block!r}, expected WxH") from None
        partition = BlockPartition(w, h, args.shift or 0)
    else:
        try:
            base = partition_for(spec)
        except UnsupportedAnimal as exc:
            if args.shift is None:
                print(f"no known partition: {exc}", file=sys.stderr)
                return 1
            # no known partition, but a shift was proposed: examine it on
            # the family's natural block (one spare column next to the bbox)
            animal = make_animal(spec)
            base = BlockPartition(animal.width + 1, animal.height)
        shift = base.shift if args.shift is None else args.shift
        partition = BlockPartition(base.block_w, base.block_h, shift, base.origin)

    print(f"partition block {partition.block_w}x{partition.block_h} "
          f"shift {partition.shift} origin ({partition.origin[0]},{partition.origin[1]})")
    crack = find_crack(spec, partition, window_blocks=args.window)
    if crack is None:
        print("NO CRACK")
    else:
        print("CRACK FOUND")
        print(f"crack B {crack.orientation} {crack.dx} {crack.dy}")
    return 0


def cmd_classify_piece(args) -> int:
    spec = _animal(args.animal)
    animal = make_animal(spec)
    piece = _parse_cells(args.remove)
    result = classify_piece(animal, piece)
    print(result.value)
    return 0


def cmd_choose_n(args) -> int:
    print(choose_N(args.n, args.m))
    return 0


def cmd_replay(args) -> int:
    text = Path(args.record).read_text() if args.record != "-" else sys.stdin.read()
    state = decode_record(text)
    print(f"animal {args_animal_line(text)}")
    print(f"bounds {format_bounds(state.bounds)}")
    print(f"status {state.status}")
    print(f"winner {_winner_of(state)}")
    print(f"ply {state.ply}")
    print(f"alice_moves {state.alice_move_count}")
    print(f"cells {len(state.occupied)}")
    for (x, y), (owner, ply) in sorted(state.occupied.items()):
        print(f"cell {x} {y} {owner} {ply}")
    if args.board_art:
        print(render_board(state), file=sys.stderr)
    return 0


def args_animal_line(text: str) -> str:
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("animal "):
            return line[len("animal ") :]
    return "?"


def _winner_of(state) -> str:
    if state.status == ALICE_WON:
        return "alice"
    if state.status == BOB_WON:
        return "bob"
    return "-"


def cmd_play(args) -> int:
    import random

    spec = _animal(args.animal)
    bounds = parse_board(args.board) if args.board else None
    state = new_game(spec, bounds, args.seed)
    rng = random.Random(args.seed)
    engine = make_strategy(args.engine, rng, spec, bounds)
    human_side = args.side.upper()[0]  # "A" | "B"
    engine_side = "B" if human_side == "A" else "A"

    def engine_turn():
        while state.status == ONGOING and state.to_move == engine_side:
            mv = engine.move(state)
            if engine_side == "A":
                state.apply_alice(mv)
                print(f"engine A {mv[0]} {mv[1]}")
            elif mv is None:
                state.apply_bob_pass()
                print("engine BPASS")
            else:
                state.apply_bob(mv)
                print(f"engine B {mv.orientation} {mv.dx} {mv.dy}")

    print(f"# you are {'Alice: enter x y' if human_side == 'A' else 'Bob: enter k dx dy, or pass'}", file=sys.stderr)
    engine_turn()
    print(render_board(state), file=sys.stderr)
    for line in sys.stdin:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        try:
            toks = line.split()
            if human_side == "A":
                x, y = int(toks[0]), int(toks[1])
                state.apply_alice((x, y))
            elif line == "pass":
                state.apply_bob_pass()
            else:
                k, dx, dy = int(toks[0]), int(toks[1]), int(toks[2])
                state.apply_bob(Placement(k, dx, dy))
        except (GameError, ValueError, IndexError) as exc:
            print(f"illegal: {exc}", file=sys.stderr)
            continue
        engine_turn()
        print(render_board(state), file=sys.stderr)
        if state.status != ONGOING:
            break
    print(f"status {state.status}")
    print(encode_record(state), end="")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host = os.environ.get("CANNIBAL_HOST", "127.0.0.1")
    port = args.port or int(os.environ.get("CANNIBAL_PORT", "8000"))
    uvicorn.run(create_app(), host=host, port=port, log_level="info")
    return 0


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cannibal",
        description="Cannibal animal game: solver, simulations, and play.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="exact bounded-board solve")
    s.add_argument("--animal", required=True)
    s.add_argument("--board", required=True, help="WxH")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--memo-limit", type=int, default=2_000_000)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("simulate", help="strategy-vs-strategy series")
    s.add_argument("--alice", required=True, help=f"one of {', '.join(ALICE_IDS)}")
    s.add_argument("--bob", required=True, help=f"one of {', '.join(BOB_IDS)}")
    s.add_argument("--animal", required=True)
    s.add_argument("--board", default=None, help="WxH; omit for the infinite board")
    s.add_argument("--games", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--budget", type=int, default=500, help="ply budget per game")
    s.add_argument("--out", default=None, help="directory for per-game records")
    s.add_argument("--pairing-block", default=None, help="override pairing block WxH")
    s.add_argument("--pairing-shift", type=int, default=None)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("verify-partition", help="static crack search for a partition")
    s.add_argument("--animal", required=True)
    s.add_argument("--block", default=None, help="override block WxH")
    s.add_argument("--shift", type=int, default=None, help="override row shift")
    s.add_argument("--window", type=int, default=5, help="window size in blocks")
    s.set_defaults(func=cmd_verify_partition)

    s = sub.add_parser("classify-piece", help="inner/outer classification")
    s.add_argument("--animal", required=True)
    s.add_argument("--remove", required=True, help='piece cells "(x,y);(x,y)"')
    s.set_defaults(func=cmd_classify_piece)

    s = sub.add_parser("choose-n", help="bounding square side for R(n,m)")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_choose_n)

    s = sub.add_parser("play", help="terminal play against an engine strategy")
    s.add_argument("--animal", required=True)
    s.add_argument("--board", default=None)
    s.add_argument("--side", choices=["alice", "bob"], default="alice")
    s.add_argument("--engine", default="bob:pairing")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_play)

    s = sub.add_parser("serve", help="start the HTTP session service")
    s.add_argument("--port", type=int, default=None)
    s.set_defaults(func=cmd_serve)

    s = sub.add_parser("replay", help="re-validate a record and print final state")
    s.add_argument("record", help="record file path, or - for stdin")
    s.add_argument("--board-art", action="store_true", help="ASCII board to stderr")
    s.set_defaults(func=cmd_replay)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (Falsification, StrategyFalsified, CaseNotCovered) as exc:
        print(f"FALSIFIED: {exc}", file=sys.stderr)
        record = getattr(exc, "record", None)
        if record:
            print(record, file=sys.stderr)
        return FALSIFIED
    except (InvalidAnimal, UnsupportedAnimal, GameError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
