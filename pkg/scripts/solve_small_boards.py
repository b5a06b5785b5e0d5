#!/usr/bin/env python3
"""Exact desk-scale verdict table.

Solves every requested animal on every board up to --max-side and prints one
line per instance: winner, total plies, Alice move count, and search size.
On these finite boards "Bob wins" means Bob can fill or block until no copy
of the animal can ever be completed.

Example:
    python3 scripts/solve_small_boards.py --animals "R 1 3,EL,R 2 2" --max-side 5
"""

from __future__ import annotations

import argparse
import time

from cannibal_game.animals import make_animal, parse_animal
from cannibal_game.engine import Rect
from cannibal_game.solver import MemoOverflow, SolveConfig, solve

DEFAULT_ANIMALS = "R 1 1,R 1 2,R 1 3,EL,R 2 2,R 1 4,CELLS (0,0);(1,0);(2,0);(1,1)"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--animals", default=DEFAULT_ANIMALS)
    parser.add_argument("--min-side", type=int, default=3)
    parser.add_argument("--max-side", type=int, default=5)
    parser.add_argument("--budget", type=int, default=None, help="ply budget, default 2x cells")
    parser.add_argument("--memo-limit", type=int, default=2_000_000)
    args = parser.parse_args(argv)

    for descriptor in args.animals.split(","):
        descriptor = descriptor.strip()
        spec = parse_animal(descriptor)
        animal = make_animal(spec)
        for w in range(args.min_side, args.max_side + 1):
            for h in range(w, args.max_side + 1):
                if animal.width > max(w, h) or animal.height > max(w, h):
                    continue
                board = Rect(0, w - 1, 0, h - 1)
                t0 = time.time()
                try:
                    out = solve(SolveConfig(
                        animal=spec, bounds=board,
                        move_budget=args.budget, memo_limit=args.memo_limit,
                    ))
                except MemoOverflow as exc:
                    print(f"{descriptor:24s} {w}x{h}  memo overflow after {exc.nodes} nodes")
                    continue
                ply = "-" if out.ply_to_win is None else out.ply_to_win
                moves = "-" if out.alice_moves is None else out.alice_moves
                print(
                    f"{descriptor:24s} {w}x{h}  winner={out.winner:5s} ply={ply:>3} "
                    f"alice_moves={moves:>3} nodes={out.nodes:>9} "
                    f"({time.time() - t0:.2f}s)"
                )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
