"""Exact solver for bounded boards.

Full minimax over bitboard occupancy with memoization. Positions are
canonicalized under the board's symmetry group (all eight symmetries for
square boards, the four axis-preserving ones otherwise), which is sound
because the copy set is itself closed under those symmetries.

Key pruning facts, all exact:

- If no copy is free of Bob cells, Alice can never win (occupancy is
  permanent), so the node is a Bob win outright.
- With k_min = fewest missing cells over Bob-free copies, Alice needs at
  least 2*k_min - 1 plies to move (2*k_min with Bob to move); a smaller
  remaining budget is an immediate budget loss.
- An Alice win found at exactly that floor is optimal, allowing early exit.

Budget exhaustion counts as a Bob win, so an "Alice wins" verdict is always
trustworthy; Bob verdicts mean "Alice cannot force a win within the budget".
Reported distances for Alice wins are exact minimal ply counts (iterative
deepening over win-parity budgets); Bob-side distances are not minimax-exact
and are reported as None.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .animals import AnimalSpec, Polyomino, build_animal, orientations, parse_animal
from .engine import (
    ALICE,
    BOB,
    ONGOING,
    PASS,
    GameState,
    Move,
    Placement,
    Rect,
)
from .geometry import Cell, apply_d4


class MemoOverflow(RuntimeError):
    """Transposition table hit its limit; carries partial statistics."""

    def __init__(self, message: str, nodes: int, memo_entries: int):
        super().__init__(message)
        self.nodes = nodes
        self.memo_entries = memo_entries


@dataclass(frozen=True)
class SolveConfig:
    animal: "AnimalSpec | str"
    bounds: Rect
    move_budget: int | None = None  # None: 2 * free cells
    memo_limit: int = 2_000_000
    threads: int = 1  # accepted for interface compatibility; search is sequential

    def __post_init__(self) -> None:
        if self.move_budget is not None and self.move_budget < 1:
            raise ValueError("move budget must be at least 1")


@dataclass
class Outcome:
    winner: str  # "alice" | "bob"
    ply_to_win: int | None  # total plies, None for Bob verdicts
    alice_moves: int | None
    reason: str
    pv: list[Move] = field(default_factory=list)
    nodes: int = 0
    memo_entries: int = 0


_PASS_MOVE = -1  # sentinel in memo best-move slots


class Solver:
    """Reusable search context for one (animal, bounds) pair.

    The memo persists across calls, so driving a whole game through
    ``best_move`` shares work between consecutive positions.
    """

    def __init__(self, animal: "AnimalSpec | str | Polyomino", bounds: Rect, memo_limit: int = 2_000_000):
        if isinstance(animal, str):
            animal = parse_animal(animal)
        self.animal = animal if isinstance(animal, Polyomino) else build_animal(animal)
        self.bounds = bounds
        self.memo_limit = memo_limit
        self.cells: list[Cell] = sorted(bounds.cells())
        self.index: dict[Cell, int] = {c: i for i, c in enumerate(self.cells)}
        self.n_cells = len(self.cells)
        self.full_mask = (1 << self.n_cells) - 1
        self.size = self.animal.size

        self.copy_masks: list[int] = []
        self.copy_placements: list[Placement] = []
        for k, shape in orientations(self.animal):
            w = max(x for x, _ in shape)
            h = max(y for _, y in shape)
            for dx in range(bounds.x_min, bounds.x_max - w + 1):
                for dy in range(bounds.y_min, bounds.y_max - h + 1):
                    mask = 0
                    for x, y in shape:
                        mask |= 1 << self.index[(x + dx, y + dy)]
                    self.copy_masks.append(mask)
                    self.copy_placements.append(Placement(k, dx, dy))
        if not self.copy_masks:
            raise ValueError("no copy of the animal fits in the bounds")
        self.placement_of_mask = {
            m: pl for m, pl in zip(self.copy_masks, self.copy_placements)
        }
        self.copies_through: list[list[int]] = [[] for _ in range(self.n_cells)]
        for ci, mask in enumerate(self.copy_masks):
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                self.copies_through[i].append(ci)
                m &= m - 1

        self.perms = self._board_symmetries()
        self.inv_perms = [self._invert(p) for p in self.perms]

        self.memo: dict[tuple, tuple] = {}
        self.nodes = 0

    # -- symmetry -------------------------------------------------------------

    def _board_symmetries(self) -> list[list[int]]:
        b = self.bounds
        perms = []
        for k in range(8):
            corners = [apply_d4(k, c) for c in ((b.x_min, b.y_min), (b.x_max, b.y_max))]
            xs = [x for x, _ in corners]
            ys = [y for _, y in corners]
            if max(xs) - min(xs) != b.x_max - b.x_min:
                continue  # 90-degree turn of a non-square board
            ox = b.x_min - min(xs)
            oy = b.y_min - min(ys)
            perm = [0] * self.n_cells
            for i, c in enumerate(self.cells):
                x, y = apply_d4(k, c)
                perm[i] = self.index[(x + ox, y + oy)]
            perms.append(perm)
        return perms

    @staticmethod
    def _invert(perm: list[int]) -> list[int]:
        inv = [0] * len(perm)
        for i, j in enumerate(perm):
            inv[j] = i
        return inv

    @staticmethod
    def _apply_perm(perm: list[int], mask: int) -> int:
        out = 0
        while mask:
            i = (mask & -mask).bit_length() - 1
            out |= 1 << perm[i]
            mask &= mask - 1
        return out

    def _canonicalize(self, a: int, b: int) -> tuple[int, int, int]:
        """Minimal (a, b) over board symmetries; returns the perm index used."""
        best = (a, b)
        best_p = 0
        for p in range(1, len(self.perms)):
            perm = self.perms[p]
            ca = self._apply_perm(perm, a)
            cb = self._apply_perm(perm, b)
            if (ca, cb) < best:
                best = (ca, cb)
                best_p = p
        if best_p == 0:
            return a, b, 0
        return best[0], best[1], best_p

    # -- search ---------------------------------------------------------------

    def _copy_stats(self, a: int, b: int) -> tuple[int, int]:
        """(k_min, completing cell bit index or -1 when k_min != 1)."""
        k_min = self.size + 1
        win_bit = -1
        for mask in self.copy_masks:
            if mask & b:
                continue
            missing = self.size - (mask & a).bit_count()
            if missing < k_min:
                k_min = missing
                if missing == 1:
                    rest = mask & ~a
                    win_bit = rest.bit_length() - 1
                    break
        return k_min, win_bit

    def _search(self, a: int, b: int, to_move: str, budget: int, hint: int) -> tuple[str, int, int | None]:
        """Returns (winner, dist_in_plies, best_move).

        best_move: bit index (Alice), copy mask (Bob), _PASS_MOVE, or None.
        dist is exact for Alice winners; a loose lower bound for Bob.
        """
        self.nodes += 1
        free_mask = self.full_mask & ~(a | b)
        f = free_mask.bit_count()

        k_min, win_bit = self._copy_stats(a, b)
        if k_min > self.size:
            return ("bob", 2 * f, None)  # no Bob-free copy survives
        floor = 2 * k_min - 1 if to_move == ALICE else 2 * k_min
        if floor > budget:
            return ("bob", budget, None)
        if to_move == ALICE and k_min == 1:
            return ("alice", 1, win_bit)

        bound = 2 * f + 1
        cap = budget if budget <= bound else -1
        ca, cb, p = self._canonicalize(a, b)
        key = (ca, cb, to_move, cap)
        hit = self.memo.get(key)
        if hit is not None:
            winner, dist, best = hit
            return (winner, dist, self._map_move_back(best, p, to_move))

        if to_move == ALICE:
            result = self._alice_node(a, b, budget, free_mask, k_min)
        else:
            result = self._bob_node(a, b, budget, hint)

        if len(self.memo) >= self.memo_limit:
            raise MemoOverflow(
                f"memo limit {self.memo_limit} reached", self.nodes, len(self.memo)
            )
        winner, dist, best = result
        self.memo[key] = (winner, dist, self._map_move_fwd(best, p, to_move))
        return result

    def _map_move_fwd(self, best, p: int, to_move: str):
        if best is None or best == _PASS_MOVE or p == 0:
            return best
        if to_move == ALICE:
            return self.perms[p][best]
        return self._apply_perm(self.perms[p], best)

    def _map_move_back(self, best, p: int, to_move: str):
        if best is None or best == _PASS_MOVE or p == 0:
            return best
        if to_move == ALICE:
            return self.inv_perms[p][best]
        return self._apply_perm(self.inv_perms[p], best)

    def _alice_node(self, a: int, b: int, budget: int, free_mask: int, k_min: int):
        # order free cells by the progress of the best live copy through them
        scored = []
        m = free_mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            best_missing = self.size + 1
            for ci in self.copies_through[i]:
                mask = self.copy_masks[ci]
                if mask & b:
                    continue
                missing = self.size - (mask & a).bit_count()
                if missing < best_missing:
                    best_missing = missing
            scored.append((best_missing, i))
        scored.sort()

        target = 2 * k_min - 1  # optimal-possible distance from here
        best_move = None
        best_dist = None
        for _, i in scored:
            winner, dist, _ = self._search(a | (1 << i), b, BOB, budget - 1, i)
            if winner == "alice":
                d = dist + 1
                if best_dist is None or d < best_dist:
                    best_dist = d
                    best_move = i
                    if d <= target:
                        break
        if best_dist is not None:
            return ("alice", best_dist, best_move)
        return ("bob", budget, None)

    def _bob_node(self, a: int, b: int, budget: int, hint: int):
        occupied = a | b
        legal = [
            (ci, mask)
            for ci, mask in enumerate(self.copy_masks)
            if not (mask & occupied)
        ]
        if not legal:
            winner, dist, _ = self._search(a, b, ALICE, budget - 1, hint)
            if winner == "alice":
                return ("alice", dist + 1, _PASS_MOVE)
            return ("bob", dist + 1, _PASS_MOVE)

        if 0 <= hint < self.n_cells:
            hx, hy = self.cells[hint]
            legal.sort(
                key=lambda cm: max(
                    abs(self.copy_placements[cm[0]].dx - hx),
                    abs(self.copy_placements[cm[0]].dy - hy),
                )
            )

        worst_dist = 0
        worst_move = None
        for ci, mask in legal:
            winner, dist, _ = self._search(a, b | mask, ALICE, budget - 1, hint)
            if winner == "bob":
                return ("bob", dist + 1, mask)
            if dist + 1 > worst_dist:
                worst_dist = dist + 1
                worst_move = mask
        return ("alice", worst_dist, worst_move)

    # -- public ---------------------------------------------------------------

    def solve_position(
        self, a: int, b: int, to_move: str, budget: int
    ) -> tuple[str, int, int | None]:
        """Iterative deepening from an arbitrary position."""
        parity_start = 1 if to_move == ALICE else 2
        dep = parity_start
        result = None
        while dep < budget:
            result = self._search(a, b, to_move, dep, -1)
            if result[0] == "alice":
                return result
            dep += 2
        return self._search(a, b, to_move, budget, -1)

    def masks_of_state(self, state: GameState) -> tuple[int, int]:
        a = b = 0
        for cell, (owner, _) in state.occupied.items():
            bit = 1 << self.index[cell]
            if owner == ALICE:
                a |= bit
            else:
                b |= bit
        return a, b

    def principal_variation(
        self, a: int, b: int, to_move: str, budget: int
    ) -> list[Move]:
        """Walk stored best moves; stops at terminals or memo misses."""
        pv: list[Move] = []
        f = (self.full_mask & ~(a | b)).bit_count()
        for _ in range(2 * f + 1):
            k_min, win_bit = self._copy_stats(a, b)
            if k_min == 0 or k_min > self.size:
                break
            if to_move == ALICE and k_min == 1:
                pv.append((ALICE, self.cells[win_bit]))
                break
            bound = 2 * (self.full_mask & ~(a | b)).bit_count() + 1
            cap = budget if budget <= bound else -1
            ca, cb, p = self._canonicalize(a, b)
            hit = self.memo.get((ca, cb, to_move, cap))
            if hit is None or hit[2] is None:
                break
            best = self._map_move_back(hit[2], p, to_move)
            if to_move == ALICE:
                pv.append((ALICE, self.cells[best]))
                a |= 1 << best
                to_move = BOB
            elif best == _PASS_MOVE:
                pv.append((PASS, None))
                to_move = ALICE
            else:
                pv.append((BOB, self.placement_of_mask[best]))
                b |= best
                to_move = ALICE
            budget -= 1
        return pv


def _config_solver(config: SolveConfig) -> Solver:
    animal = config.animal
    if isinstance(animal, str):
        animal = parse_animal(animal)
    return Solver(animal, config.bounds, config.memo_limit)


def solve(config: SolveConfig) -> Outcome:
    """Solve the empty-board game for the configured animal and bounds."""
    solver = _config_solver(config)
    budget = config.move_budget
    if budget is None:
        budget = 2 * solver.n_cells
    winner, dist, _ = solver.solve_position(0, 0, ALICE, budget)
    if winner == "alice":
        # align memo keys with the budgets the PV walk will probe
        solver._search(0, 0, ALICE, dist, -1)
        pv = solver.principal_variation(0, 0, ALICE, dist)
        return Outcome(
            winner="alice",
            ply_to_win=dist,
            alice_moves=(dist + 1) // 2,
            reason="completes_copy",
            pv=pv,
            nodes=solver.nodes,
            memo_entries=len(solver.memo),
        )
    return Outcome(
        winner="bob",
        ply_to_win=None,
        alice_moves=None,
        reason="no_alice_win_within_budget",
        pv=[],
        nodes=solver.nodes,
        memo_entries=len(solver.memo),
    )


def best_move(state: GameState, config: SolveConfig, solver: Solver | None = None) -> Move:
    """A move on some optimal line for the side to move."""
    if state.status != ONGOING:
        raise ValueError("game is already decided")
    if solver is None:
        solver = _config_solver(config)
    a, b = solver.masks_of_state(state)
    budget = config.move_budget
    if budget is None:
        budget = 2 * (solver.full_mask & ~(a | b)).bit_count()
    to_move = state.to_move
    winner, dist, best = solver.solve_position(a, b, to_move, budget)
    if best is None:
        # losing side gets the first legal option: lexicographic cell for
        # Alice, first placement (or pass) for Bob
        if to_move == ALICE:
            free = solver.full_mask & ~(a | b)
            return (ALICE, solver.cells[(free & -free).bit_length() - 1])
        occ = a | b
        for ci, mask in enumerate(solver.copy_masks):
            if not (mask & occ):
                return (BOB, solver.copy_placements[ci])
        return (PASS, None)
    if to_move == ALICE:
        return (ALICE, solver.cells[best])
    if best == _PASS_MOVE:
        return (PASS, None)
    return (BOB, solver.placement_of_mask[best])


class SolverBob:
    """Bob adapter playing solver-optimal moves; shares one memo per game."""

    def __init__(self, animal: AnimalSpec, bounds: Rect, move_budget: int | None = None):
        self.solver = Solver(animal, bounds, memo_limit=4_000_000)
        self.move_budget = move_budget

    def move(self, game: GameState) -> Optional[Placement]:
        config = SolveConfig(
            animal=game.animal_spec, bounds=game.bounds, move_budget=self.move_budget
        )
        kind, payload = best_move(game, config, solver=self.solver)
        if kind == PASS:
            return None
        return payload
