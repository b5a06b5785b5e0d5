"""Match runner: strategy registry, single matches, and seeded series.

All randomness flows from one ``random.Random(seed)`` per game (Mersenne
Twister, recorded in the game record header as ``rng mt19937``), so every
match is reproducible from (strategies, animal, bounds, seed).

A StrategyFalsified or CaseNotCovered escaping a strategy is wrapped into a
Falsification carrying the record and seed and re-raised. These are the
most valuable artifacts a fuzzing run can produce and are never swallowed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .alice_strategies import (
    BoundedHellyAlice,
    BoundingAlice,
    CaseNotCovered,
    FastSquareAlice,
    GreedyAlice,
    RandomAlice,
)
from .animals import AnimalSpec, parse_animal
from .bob_strategies import PairingBob, StrategyFalsified
from .engine import (
    ALICE,
    ALICE_WON,
    BOB_WON,
    ONGOING,
    Bounds,
    GameState,
    Placement,
    bob_placements_in_region,
    encode_record,
    naive_alice_win_scan,
    new_game,
)
from .solver import SolverBob

RNG_NAME = "mt19937"


class UnknownStrategy(ValueError):
    pass


class Falsification(RuntimeError):
    """A paper-backed strategy hit a contradiction; carries the evidence."""

    def __init__(self, kind: str, message: str, record: str | None, seed):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.record = record
        self.seed = seed


@dataclass
class MatchReport:
    winner: str  # "alice" | "bob"
    alice_move_count: int
    total_ply: int
    record: str
    seed: int | None
    invariant_violations: list[str]
    reason: str
    alice_strategy: object = None
    bob_strategy: object = None


# --- Bob heuristics -----------------------------------------------------------


class RandomBob:
    """Random legal placement. On the infinite board, sampled near the
    occupied bounding box with a deterministic far-away fallback; on bounded
    boards, uniform over all legal placements (pass when none)."""

    def __init__(self, rng: random.Random, tries: int = 64):
        self.rng = rng
        self.tries = tries

    def move(self, game: GameState) -> Optional[Placement]:
        if game.bounds is not None:
            options = bob_placements_in_region(game, game.bounds)
            if not options:
                return None
            return self.rng.choice(options)
        d = game.animal.diameter
        if game.occupied:
            xs = [x for x, _ in game.occupied]
            ys = [y for _, y in game.occupied]
            x_lo, x_hi = min(xs) - d - 1, max(xs) + 2
            y_lo, y_hi = min(ys) - d - 1, max(ys) + 2
        else:
            r = d * 10
            x_lo = y_lo = -r
            x_hi = y_hi = r
        orients = game._rep
        occupied = game.occupied
        for _ in range(self.tries):
            k = self.rng.choice(orients)
            dx = self.rng.randint(x_lo, x_hi)
            dy = self.rng.randint(y_lo, y_hi)
            pl = Placement(k, dx, dy)
            if all(c not in occupied for c in game.placement_cells(pl)):
                return pl
        # guaranteed free: strictly beyond the occupied bounding box
        if game.occupied:
            return Placement(orients[0], max(xs) + 1, max(ys) + 1)
        return Placement(orients[0], 0, 0)


class AdjacentBlockerBob:
    """Deterministic crowding Bob: the first legal placement touching the
    smallest Chebyshev ring around Alice's last cell."""

    def __init__(self, max_ring_factor: int = 6):
        self.max_ring_factor = max_ring_factor

    def move(self, game: GameState) -> Optional[Placement]:
        last = None
        for kind, payload in reversed(game.history):
            if kind == ALICE:
                last = payload
                break
        if last is None:
            last = (0, 0)
        lx, ly = last
        occupied = game.occupied
        bounds = game.bounds
        shapes = [(k, sorted(game._oriented[k])) for k in game._rep]
        max_ring = game.animal.diameter * self.max_ring_factor
        for r in range(1, max_ring + 1):
            ring = sorted(
                (lx + dx, ly + dy)
                for dx in range(-r, r + 1)
                for dy in range(-r, r + 1)
                if max(abs(dx), abs(dy)) == r
            )
            for cell in ring:
                for k, cells in shapes:
                    for sx, sy in cells:
                        dx, dy = cell[0] - sx, cell[1] - sy
                        pl = Placement(k, dx, dy)
                        target = game.placement_cells(pl)
                        if bounds is not None and not all(
                            bounds.contains(c) for c in target
                        ):
                            continue
                        if all(c not in occupied for c in target):
                            return pl
        if bounds is not None:
            options = bob_placements_in_region(game, bounds)
            return options[0] if options else None
        xs = [x for x, _ in occupied] or [0]
        ys = [y for _, y in occupied] or [0]
        return Placement(game._rep[0], max(xs) + 1, max(ys) + 1)


class ScriptedBob:
    """Plays a fixed placement list (skipping any that became illegal), then
    falls back to random play."""

    def __init__(self, placements: list[Placement], rng: random.Random):
        self.script = list(placements)
        self.cursor = 0
        self.fallback = RandomBob(rng)

    def move(self, game: GameState) -> Optional[Placement]:
        while self.cursor < len(self.script):
            pl = self.script[self.cursor]
            self.cursor += 1
            cells = game.placement_cells(pl)
            if game.bounds is not None and not all(
                game.bounds.contains(c) for c in cells
            ):
                continue
            if all(c not in game.occupied for c in cells):
                return pl
        return self.fallback.move(game)


def parse_scripted_placements(text: str) -> list[Placement]:
    """Grammar: 'k,dx,dy[;k,dx,dy...]' as in bob:scripted(0,5,0;2,-3,1)."""
    out = []
    text = text.strip()
    if not text:
        return out
    for part in text.split(";"):
        toks = part.split(",")
        if len(toks) != 3:
            raise UnknownStrategy(f"bad scripted placement {part!r}")
        k, dx, dy = (int(t.strip()) for t in toks)
        if not 0 <= k <= 7:
            raise UnknownStrategy(f"orientation {k} out of range in {part!r}")
        out.append(Placement(k, dx, dy))
    return out


# --- registry -----------------------------------------------------------------


def make_strategy(
    identifier: str,
    rng: random.Random,
    animal_spec: AnimalSpec,
    bounds: Bounds,
    pairing_partition=None,
):
    """Instantiate a fresh strategy object (one per game) from its id."""
    if identifier == "alice:random":
        return RandomAlice(rng)
    if identifier == "alice:greedy":
        return GreedyAlice(rng)
    if identifier == "alice:fast-square":
        return FastSquareAlice()
    if identifier == "alice:bounded-helly":
        return BoundedHellyAlice()
    if identifier == "alice:bounding":
        return BoundingAlice()
    if identifier == "bob:pairing":
        return PairingBob(animal_spec, pairing_partition)
    if identifier == "bob:random":
        return RandomBob(rng)
    if identifier == "bob:adjacent-blocker":
        return AdjacentBlockerBob()
    if identifier == "bob:solver":
        if bounds is None:
            raise UnknownStrategy("bob:solver needs a bounded board")
        return SolverBob(animal_spec, bounds)
    if identifier.startswith("bob:scripted(") and identifier.endswith(")"):
        inner = identifier[len("bob:scripted(") : -1]
        return ScriptedBob(parse_scripted_placements(inner), rng)
    raise UnknownStrategy(f"unknown strategy id {identifier!r}")


ALICE_IDS = (
    "alice:random",
    "alice:greedy",
    "alice:fast-square",
    "alice:bounded-helly",
    "alice:bounding",
)
BOB_IDS = (
    "bob:pairing",
    "bob:random",
    "bob:adjacent-blocker",
    "bob:scripted(<k,dx,dy;...>)",
    "bob:solver",
)


# --- match loop -----------------------------------------------------------------


def run_match(
    alice,
    bob,
    animal: "AnimalSpec | str",
    bounds: Bounds = None,
    seed: int | None = 0,
    move_budget: int = 500,
    pairing_partition=None,
    check_win_scan: bool = False,
) -> MatchReport:
    """Play one full game. ``alice`` / ``bob`` may be registry ids or
    objects with a move(state) method."""
    if isinstance(animal, str):
        animal = parse_animal(animal)
    rng = random.Random(seed)
    state = new_game(animal, bounds, seed)
    state.rng_name = RNG_NAME
    if isinstance(alice, str):
        alice = make_strategy(alice, rng, animal, bounds, pairing_partition)
    if isinstance(bob, str):
        bob = make_strategy(bob, rng, animal, bounds, pairing_partition)

    violations: list[str] = []
    try:
        while state.status == ONGOING and state.ply < move_budget:
            if state.to_move == ALICE:
                cell = alice.move(state)
                state.apply_alice(cell)
                if check_win_scan:
                    incremental = state.status == ALICE_WON
                    if incremental != naive_alice_win_scan(state):
                        violations.append(
                            f"win-check disagreement at ply {state.ply}"
                        )
            else:
                pl = bob.move(state)
                if pl is None:
                    state.apply_bob_pass()
                else:
                    state.apply_bob(pl)
    except (StrategyFalsified, CaseNotCovered) as exc:
        record = getattr(exc, "record", None) or encode_record(state)
        raise Falsification(type(exc).__name__, str(exc), record, seed) from exc

    if state.status == ALICE_WON:
        winner, reason = "alice", state.win_reason
    elif state.status == BOB_WON:
        winner, reason = "bob", state.win_reason
    else:
        winner, reason = "bob", "budget_exhausted"

    violations.extend(getattr(bob, "violations", ()))
    return MatchReport(
        winner=winner,
        alice_move_count=state.alice_move_count,
        total_ply=state.ply,
        record=encode_record(state),
        seed=seed,
        invariant_violations=violations,
        reason=reason,
        alice_strategy=alice,
        bob_strategy=bob,
    )


@dataclass
class SeriesStats:
    games: int = 0
    alice_wins: int = 0
    bob_wins: int = 0
    alice_win_seeds: list = field(default_factory=list)
    max_alice_moves: int = 0
    violations: list[str] = field(default_factory=list)
    reports: list[MatchReport] = field(default_factory=list)

    def add(self, report: MatchReport, keep_report: bool = False) -> None:
        self.games += 1
        if report.winner == "alice":
            self.alice_wins += 1
            self.alice_win_seeds.append(report.seed)
        else:
            self.bob_wins += 1
        self.max_alice_moves = max(self.max_alice_moves, report.alice_move_count)
        for v in report.invariant_violations:
            self.violations.append(f"seed {report.seed}: {v}")
        if keep_report:
            self.reports.append(report)


def run_series(
    alice,
    bob,
    animal: "AnimalSpec | str",
    bounds: Bounds = None,
    games: int = 100,
    seed_base: int = 0,
    move_budget: int = 500,
    keep_reports: bool = False,
    on_report: Callable[[MatchReport], None] | None = None,
    **match_kwargs,
) -> SeriesStats:
    """Seeded sequence of independent games; aggregate fold of the reports."""
    stats = SeriesStats()
    for i in range(games):
        report = run_match(
            alice,
            bob,
            animal,
            bounds,
            seed=seed_base + i,
            move_budget=move_budget,
            **match_kwargs,
        )
        stats.add(report, keep_report=keep_reports)
        if on_report is not None:
            on_report(report)
    return stats
