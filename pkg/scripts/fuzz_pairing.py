#!/usr/bin/env python3
"""Long-running pairing-strategy fuzz.

Plays seeded series of alice:random and alice:greedy against bob:pairing for
every animal with a known partition. Any Alice win or falsification event is
a finding; falsifications abort with the full game record on stderr, since a
reproducible record contradicting the strategy is the most valuable artifact
this script can produce.

Example:
    python3 scripts/fuzz_pairing.py --games 50000 --seed-base 1000000
"""

from __future__ import annotations

import argparse
import sys
import time

from cannibal_game.harness import Falsification, run_series

DEFAULT_ANIMALS = (
    "O 4 6 1",
    "O 5 5 2",
    "L 2",
    "L 3",
    "U 2 3 1",
    "U 3 4 1",
    "U 3 8 1",
    "PUNCHED 5 REMOVED (2,2)",
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--animals", default=",".join(DEFAULT_ANIMALS),
                        help="comma-separated animal descriptors")
    parser.add_argument("--games", type=int, default=10_000, help="games per animal per alice")
    parser.add_argument("--greedy-games", type=int, default=1_000)
    parser.add_argument("--seed-base", type=int, default=0)
    parser.add_argument("--budget", type=int, default=500, help="ply budget per game")
    args = parser.parse_args(argv)

    total_games = total_wins = 0
    start = time.time()
    for animal in args.animals.split(","):
        animal = animal.strip()
        for alice, games in (("alice:random", args.games), ("alice:greedy", args.greedy_games)):
            t0 = time.time()
            try:
                stats = run_series(
                    alice, "bob:pairing", animal,
                    games=games, seed_base=args.seed_base, move_budget=args.budget,
                )
            except Falsification as exc:
                print(f"FALSIFIED on {animal!r} vs {alice}: {exc}", file=sys.stderr)
                if exc.record:
                    print(exc.record, file=sys.stderr)
                return 3
            total_games += stats.games
            total_wins += stats.alice_wins
            print(
                f"{animal:28s} {alice:14s} games={stats.games} "
                f"alice_wins={stats.alice_wins} max_moves={stats.max_alice_moves} "
                f"({time.time() - t0:.1f}s)"
            )
            if stats.alice_wins:
                print(f"  winning seeds: {stats.alice_win_seeds[:20]}", file=sys.stderr)
    print(f"total games={total_games} alice_wins={total_wins} ({time.time() - start:.1f}s)")
    return 1 if total_wins else 0


if __name__ == "__main__":
    raise SystemExit(main())
