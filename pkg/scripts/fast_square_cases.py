#!/usr/bin/env python3
"""Fast-square strategy: per-branch move counts.

For each square size n, plays the scripted Bob lines that force every branch
of the case analysis (anchor (2n,0) blocked with and without a fork, anchor
(3n,0) blocked, four far copies, one copy per half-band) plus random and
crowding Bobs, and prints the observed Alice move count against the claimed
bound for that branch.

Example:
    python3 scripts/fast_square_cases.py --sizes 2,3,4,5,6 --random-games 200
"""

from __future__ import annotations

import argparse

from cannibal_game.harness import run_match, run_series


def case_scripts(n: int):
    far = [f"0,-{12 * n * i},0" for i in range(1, 5)]
    return (
        ("two-occupied ground", ";".join([far[0], f"0,{2 * n},0"]), n * n + 1),
        ("two-occupied fork", ";".join([far[0], f"0,{2 * n},-1"]), n * n + 2),
        ("three-occupied", ";".join(far[:2] + [f"0,{3 * n},0"]), n * n + 2),
        ("four-occupied empty band", ";".join(far[:4]), n * n + 3),
        ("four-occupied lone copy",
         ";".join([far[0], f"0,{n + 1},-{n}", f"0,{n + 1},1"]), n * n + 3),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="2,3,4,5,6")
    parser.add_argument("--random-games", type=int, default=200)
    parser.add_argument("--seed-base", type=int, default=0)
    args = parser.parse_args(argv)

    violations = 0
    for n in (int(t) for t in args.sizes.split(",")):
        animal = f"R {n} {n}"
        for name, script, bound in case_scripts(n):
            report = run_match(
                "alice:fast-square", f"bob:scripted({script})", animal,
                seed=args.seed_base,
            )
            ok = report.winner == "alice" and report.alice_move_count <= bound
            violations += not ok
            print(
                f"n={n} {name:26s} moves={report.alice_move_count:3d} "
                f"bound={bound:3d} {'ok' if ok else 'VIOLATED'}"
            )
        report = run_match("alice:fast-square", "bob:adjacent-blocker", animal,
                           seed=args.seed_base)
        print(f"n={n} {'adjacent-blocker':26s} moves={report.alice_move_count:3d} "
              f"bound={n * n + 3:3d} {'ok' if report.alice_move_count <= n * n + 3 else 'VIOLATED'}")
        stats = run_series(
            "alice:fast-square", "bob:random", animal,
            games=args.random_games, seed_base=args.seed_base,
        )
        ok = stats.alice_wins == stats.games and stats.max_alice_moves <= n * n + 3
        violations += not ok
        print(
            f"n={n} {'random x' + str(stats.games):26s} "
            f"moves={stats.max_alice_moves:3d} bound={n * n + 3:3d} "
            f"{'ok' if ok else 'VIOLATED'}"
        )
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
