"""Alice's constructive strategies.

Three winning constructions for rectangle animals, plus two generic
heuristic opponents used to stress Bob strategies:

- BoundedHellyAlice: on a bounded board, maintain the set S of copies free
  of Bob cells and play a cell common to the sub-family S' of copies that
  stab all of S. Pairwise-intersecting axis-parallel rectangles share a
  cell, so the common cell exists whenever S' is nonempty.
- BoundingAlice: on the infinite board, wall off an N x N square chosen
  large enough that Bob cannot both fight the wall and poison the interior,
  then run the bounded strategy inside.
- FastSquareAlice: wins with the n x n square in at most n^2 + 3 moves via
  an explicit case analysis over how Bob interferes with the four anchor
  cells (0,0), (n,0), (2n,0), (3n,0).

RandomAlice and GreedyAlice are heuristics, not winning strategies.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .animals import oriented_cells, orientations
from .engine import (
    ALICE,
    BOB,
    GameState,
    Placement,
    Rect,
    encode_record,
)
from .geometry import Cell, apply_d4, compose_d4, inverse_d4


class EmptyIntersection(RuntimeError):
    """helly_cell got rectangles with no common cell: precondition broken."""


class NoTarget(RuntimeError):
    """The stab strategy ran out of Bob-free copies, which its own loop
    invariant rules out; a live occurrence means a bug or a broken setup."""


class BoundaryCellLost(RuntimeError):
    """Bob occupied a boundary cell the surrounding plan still needed."""


class CaseNotCovered(RuntimeError):
    """A fast-square game line escaped the case analysis.

    Carries the full game record: any such record is a direct lead on either
    an implementation bug or a genuine gap in the argument.
    """

    def __init__(self, message: str, record: str | None = None):
        super().__init__(message)
        self.record = record


# --- bounded boards: stab sets and the Helly cell ----------------------------


@dataclass(frozen=True)
class StabState:
    """S: copies containing no Bob cell (Alice cells are fine).
    S_prime: members of S that intersect every member of S."""

    S: tuple[Placement, ...]
    S_prime: tuple[Placement, ...]


def placement_rect(state: GameState, pl: Placement) -> Rect:
    cells = state.placement_cells(pl)
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    return Rect(min(xs), max(xs), min(ys), max(ys))


def _copies_within(state: GameState, region: Rect) -> list[Placement]:
    """All copy positions fully inside ``region`` in (orientation, dx, dy)
    order, ignoring occupancy."""
    out = []
    for k, shape in orientations(state.animal):
        w = max(x for x, _ in shape)
        h = max(y for _, y in shape)
        for dx in range(region.x_min, region.x_max - w + 1):
            for dy in range(region.y_min, region.y_max - h + 1):
                out.append(Placement(k, dx, dy))
    return out


def stab_sets(state: GameState, region: Rect | None = None) -> StabState:
    """Exhaustively recompute S and S' for the given region (default: the
    whole board). Requires a bounded region."""
    if region is None:
        region = state.bounds
    if region is None:
        raise ValueError("stab strategy needs a bounded board or region")
    occupied = state.occupied
    S = []
    rects = []
    for pl in _copies_within(state, region):
        cells = state.placement_cells(pl)
        if any(occupied.get(c, (None,))[0] == BOB for c in cells):
            continue
        S.append(pl)
        xs = [x for x, _ in cells]
        ys = [y for _, y in cells]
        rects.append(Rect(min(xs), max(xs), min(ys), max(ys)))
    if not S:
        return StabState((), ())
    # s' meets every s iff it spans the extreme mins/maxes on both axes;
    # intersection is per-axis interval overlap, aggregated over all of S.
    max_x_min = max(r.x_min for r in rects)
    min_x_max = min(r.x_max for r in rects)
    max_y_min = max(r.y_min for r in rects)
    min_y_max = min(r.y_max for r in rects)
    S_prime = tuple(
        pl
        for pl, r in zip(S, rects)
        if r.x_max >= max_x_min
        and r.x_min <= min_x_max
        and r.y_max >= max_y_min
        and r.y_min <= min_y_max
    )
    return StabState(tuple(S), S_prime)


def helly_cell(rects: Iterable[Rect]) -> Cell:
    """Bottom-left cell of the common intersection of pairwise-intersecting
    rectangles. Raises EmptyIntersection when there is none (broken input)."""
    rects = list(rects)
    if not rects:
        raise EmptyIntersection("no rectangles given")
    x = max(r.x_min for r in rects)
    y = max(r.y_min for r in rects)
    if x > min(r.x_max for r in rects) or y > min(r.y_max for r in rects):
        raise EmptyIntersection("rectangles have no common cell")
    return (x, y)


def bounded_rectangle_move(
    state: GameState, region: Rect | None = None
) -> tuple[Cell, StabState]:
    """One move of the bounded-board rectangle strategy.

    Play the Helly cell of S' when it is free; when S' is empty or the cell
    is already Alice's, fall back to the first free cell ((y, x) order) of
    the lexicographically first copy in S.
    """
    stab = stab_sets(state, region)
    if not stab.S:
        raise NoTarget("no Bob-free copy survives; strategy contract broken")
    if stab.S_prime:
        cell = helly_cell(placement_rect(state, pl) for pl in stab.S_prime)
        owner = state.occupied.get(cell, (None,))[0]
        if owner == BOB:
            # impossible: S' members contain no Bob cell and the Helly cell
            # lies in all of them
            raise EmptyIntersection(f"Helly cell {cell} is Bob's")
        if owner is None:
            return cell, stab
    for pl in sorted(stab.S):
        free = sorted(
            (c for c in state.placement_cells(pl) if c not in state.occupied),
            key=lambda c: (c[1], c[0]),
        )
        if free:
            return free[0], stab
    raise NoTarget("every Bob-free copy is fully occupied by Alice")


class BoundedHellyAlice:
    """Stateful wrapper; records |S| at every move for the loop-invariant
    check that S never empties across a Bob reply."""

    def __init__(self, region: Rect | None = None):
        self.region = region
        self.stab_sizes: list[int] = []

    def move(self, game: GameState) -> Cell:
        if game.animal.size != game.animal.width * game.animal.height:
            raise ValueError("the stab strategy only supports rectangles")
        cell, stab = bounded_rectangle_move(game, self.region)
        self.stab_sizes.append(len(stab.S))
        return cell


# --- infinite board: the bounding strategy -----------------------------------


def choose_N(n: int, m: int, extra_bob_moves: int = 0) -> int:
    """Smallest N with (N-n+1)(N-m+1) > (4N + extra)(n^2 + m^2 + 6nm).

    The left side counts copies in an N x N square; the right side bounds
    the copies Bob can poison during the whole game, with ``extra_bob_moves``
    budgeting moves Bob already banked before the square was (re)sited.
    """
    if n < 1 or m < 1:
        raise ValueError("animal sides must be positive")
    weight = n * n + m * m + 6 * n * m
    N = max(n, m)
    while (N - n + 1) * (N - m + 1) <= (4 * N + extra_bob_moves) * weight:
        N += 1
    return N


def boundary_cells(origin: Cell, N: int) -> list[Cell]:
    """The N x N square's boundary minus its four corners, clockwise from
    just above the bottom-left corner."""
    ox, oy = origin
    cells: list[Cell] = []
    cells += [(ox, oy + d) for d in range(1, N - 1)]
    cells += [(ox + d, oy + N - 1) for d in range(1, N - 1)]
    cells += [(ox + N - 1, oy + N - 1 - d) for d in range(1, N - 1)]
    cells += [(ox + N - 1 - d, oy) for d in range(1, N - 1)]
    return cells


SURROUNDING = "surrounding"
INTERIOR = "interior"


@dataclass
class BoundingPlan:
    N: int
    origin: Cell
    boundary: list[Cell] = field(default_factory=list)
    phase: str = SURROUNDING

    def __post_init__(self) -> None:
        if not self.boundary:
            self.boundary = boundary_cells(self.origin, self.N)

    @property
    def interior(self) -> Rect:
        ox, oy = self.origin
        return Rect(ox + 1, ox + self.N - 2, oy + 1, oy + self.N - 2)


class BoundingAlice:
    """Surround an N x N square, then play the stab strategy inside it.

    If Bob lands on a boundary cell Alice has not claimed yet, the plan is
    re-sited past everything on the board and N re-chosen with Bob's spent
    moves added to his budget; the counting argument then restarts intact.
    """

    def __init__(self):
        self.plan: BoundingPlan | None = None
        self.resites = 0
        self._helly: BoundedHellyAlice | None = None
        self._sides: tuple[int, int] | None = None

    def _animal_sides(self, game: GameState) -> tuple[int, int]:
        a = game.animal
        if a.size != a.width * a.height:
            raise ValueError("the bounding strategy only supports rectangles")
        return a.width, a.height

    def _bob_moves(self, game: GameState) -> int:
        return sum(1 for kind, _ in game.history if kind == BOB)

    def _resite(self, game: GameState) -> BoundingPlan:
        n, m = self._sides
        N = choose_N(n, m, extra_bob_moves=self._bob_moves(game))
        if game.occupied:
            xs = [x for x, _ in game.occupied]
            ys = [y for _, y in game.occupied]
            origin = (max(xs) + 1, max(ys) + 1)
        else:
            origin = (0, 0)
        self._helly = None
        return BoundingPlan(N, origin)

    def move(self, game: GameState) -> Cell:
        if game.bounds is not None:
            raise ValueError("the bounding strategy targets the infinite board")
        if self._sides is None:
            self._sides = self._animal_sides(game)
        if self.plan is None:
            self.plan = self._resite(game)
        while True:
            cell = self._step(game)
            if cell is not None:
                return cell

    def _step(self, game: GameState) -> Cell | None:
        plan = self.plan
        if plan.phase == SURROUNDING:
            pending = [c for c in plan.boundary if c not in game.alice_cells]
            if any(c in game.occupied for c in pending):
                self.plan = self._resite(game)
                self.resites += 1
                return None
            if pending:
                return pending[0]
            plan.phase = INTERIOR
        if self._helly is None:
            self._helly = BoundedHellyAlice(region=plan.interior)
        return self._helly.move(game)


def bounding_move(state: GameState, plan: BoundingPlan) -> Cell:
    """Single-shot form of the surrounding/interior move for a fixed plan;
    raises BoundaryCellLost instead of re-siting (the stateful strategy
    catches it and re-sites)."""
    if plan.phase == SURROUNDING:
        pending = [c for c in plan.boundary if c not in state.alice_cells]
        for c in pending:
            if c in state.occupied:
                raise BoundaryCellLost(f"boundary cell {c} occupied")
        if pending:
            return pending[0]
        plan.phase = INTERIOR
    cell, _ = bounded_rectangle_move(state, plan.interior)
    return cell


# --- infinite board: the fast n^2 + 3 square strategy ------------------------


@dataclass(frozen=True)
class Frame:
    """Affine board view: norm(c) = d4(k, c) + (sx, sy).

    The case analysis reasons in normalized coordinates; emitted moves are
    mapped back, so the true board never sees the virtual flips.
    """

    k: int = 0
    sx: int = 0
    sy: int = 0

    def to_norm(self, cell: Cell) -> Cell:
        x, y = apply_d4(self.k, cell)
        return (x + self.sx, y + self.sy)

    def from_norm(self, cell: Cell) -> Cell:
        return apply_d4(inverse_d4(self.k), (cell[0] - self.sx, cell[1] - self.sy))

    def compose_after(self, outer_k: int, outer_sx: int = 0, outer_sy: int = 0) -> "Frame":
        """Frame computing outer(norm(c)): apply this frame, then the outer
        transform, in normalized space."""
        k = compose_d4(outer_k, self.k)
        sx, sy = apply_d4(outer_k, (self.sx, self.sy))
        return Frame(k, sx + outer_sx, sy + outer_sy)


VFLIP = 6  # (x, y) -> (x, -y)
MIRROR = 4  # (x, y) -> (-x, y)

UNDETERMINED = "undetermined"
TWO_OCCUPIED = "two_occupied"
THREE_OCCUPIED = "three_occupied"
FOUR_OCCUPIED = "four_occupied"


@dataclass
class FastSquarePlan:
    n: int
    anchors: tuple[Cell, ...] = ()
    case: str = UNDETERMINED
    bob_anchor: Cell | None = None
    frame: Frame = Frame()
    branch: str | None = None
    moves_bound: int | None = None
    fill_rect: Rect | None = None
    fill_queue: list[Cell] = field(default_factory=list)

    def __post_init__(self) -> None:
        n = self.n
        if not self.anchors:
            self.anchors = ((0, 0), (n, 0), (2 * n, 0), (3 * n, 0))


class FastSquareAlice:
    """Wins R(n,n) on the infinite board in at most n^2 + 3 Alice moves.

    Anchor cells (0,0), (n,0), (2n,0), (3n,0) are claimed in order; any n
    consecutive columns contain exactly one anchor column, so a single Bob
    copy can block at most one anchor and every filled n x n square on the
    baseline absorbs one anchor. Bob's interference is classified by which
    anchor his copy stole; each case secures an n x n square that no future
    Bob copy can enter (checked exhaustively at adoption: occupancy only
    grows, so one check suffices) and fills it.
    """

    def __init__(self):
        self.plan: FastSquarePlan | None = None

    def move(self, game: GameState) -> Cell:
        if game.bounds is not None:
            raise ValueError("the fast square strategy targets the infinite board")
        a = game.animal
        if a.width != a.height or a.size != a.width * a.height:
            raise ValueError("the fast square strategy only supports squares")
        if self.plan is None:
            self.plan = FastSquarePlan(n=a.width)
        return fast_square_move(game, self.plan)


def _norm_occupancy(state: GameState, frame: Frame) -> tuple[set[Cell], set[Cell], dict[Cell, tuple]]:
    alice = {frame.to_norm(c) for c in state.alice_cells}
    bob = set()
    tags: dict[Cell, tuple] = {}
    for c, tag in state.occupied.items():
        if tag[0] == BOB:
            nc = frame.to_norm(c)
            bob.add(nc)
            tags[nc] = tag
    return alice, bob, tags


def _copy_cells_of_tag(tags: dict[Cell, tuple], tag: tuple) -> list[Cell]:
    return [c for c, t in tags.items() if t == tag]


def _square_rect(corner: Cell, n: int) -> Rect:
    return Rect(corner[0], corner[0] + n - 1, corner[1], corner[1] + n - 1)


def _square_is_dead(rect: Rect, n: int, alice: set[Cell], bob: set[Cell]) -> bool:
    """No n x n copy intersecting ``rect`` avoids all occupied cells.

    Occupancy never shrinks, so a square dead now is dead forever.
    """
    occupied = alice | bob
    for dx in range(rect.x_min - n + 1, rect.x_max + 1):
        for dy in range(rect.y_min - n + 1, rect.y_max + 1):
            for x in range(dx, dx + n):
                hit = False
                for y in range(dy, dy + n):
                    if (x, y) in occupied:
                        hit = True
                        break
                if hit:
                    break
            else:
                return False
    return True


def _adopt_fill(
    plan: FastSquarePlan,
    corner: Cell,
    branch: str,
    bound: int,
    alice: set[Cell],
    bob: set[Cell],
    state: GameState,
) -> None:
    rect = _square_rect(corner, plan.n)
    if not _square_is_dead(rect, plan.n, alice, bob):
        raise CaseNotCovered(
            f"fill square at {corner} is not closed to Bob in branch {branch}",
            record=encode_record(state),
        )
    plan.fill_rect = rect
    plan.branch = branch
    plan.moves_bound = bound
    plan.fill_queue = [
        (x, y)
        for y in range(rect.y_min, rect.y_max + 1)
        for x in range(rect.x_min, rect.x_max + 1)
    ]


def _fill_move(
    plan: FastSquarePlan, alice: set[Cell], bob: set[Cell], state: GameState
) -> Cell:
    rect = plan.fill_rect
    for c in bob:
        if rect.contains(c):
            raise CaseNotCovered(
                f"Bob entered the secured square at {c}",
                record=encode_record(state),
            )
    for c in plan.fill_queue:
        if c not in alice:
            return c
    raise CaseNotCovered(
        "secured square already full but the game continues",
        record=encode_record(state),
    )


def _blocking_tag(state: GameState, frame: Frame, norm_cell: Cell) -> tuple:
    tag = state.occupied.get(frame.from_norm(norm_cell))
    if tag is None or tag[0] != BOB:
        raise CaseNotCovered(
            f"expected a Bob cell at normalized {norm_cell}",
            record=encode_record(state),
        )
    return tag


def fast_square_move(state: GameState, plan: FastSquarePlan) -> Cell:
    """One move of the fast square strategy; mutates the plan."""
    n = plan.n
    frame = plan.frame
    moves = state.alice_move_count

    if moves == 0:
        return frame.from_norm((0, 0))

    if moves == 1:
        # Normalize: rotate the board so Bob's first copy sits strictly left
        # of Alice's origin cell. His square avoids (0,0), so its bounding
        # box clears the origin along some axis; a pure rotation sends that
        # side to x <= -1. First qualifying symmetry index wins.
        bob_cells = [c for c, t in state.occupied.items() if t[0] == BOB]
        for k in range(8):
            cand = frame.compose_after(k)
            if all(cand.to_norm(c)[0] <= -1 for c in bob_cells):
                plan.frame = cand
                break
        else:
            raise CaseNotCovered(
                "no symmetry puts Bob's first copy left of the origin",
                record=encode_record(state),
            )
        return plan.frame.from_norm((n, 0))

    alice, bob, tags = _norm_occupancy(state, plan.frame)

    if plan.fill_rect is not None:
        return plan.frame.from_norm(_fill_move(plan, alice, bob, state))

    # The case handlers may recompose plan.frame (flips, mirrors), so the
    # normalized move must be computed before plan.frame is read back.
    if plan.case == UNDETERMINED and moves == 2:
        if (2 * n, 0) not in bob:
            return plan.frame.from_norm((2 * n, 0))
        plan.case = TWO_OCCUPIED
        move = _two_occupied_start(state, plan, tags)
        return plan.frame.from_norm(move)

    if plan.case == TWO_OCCUPIED:
        move = _two_occupied_follow(state, plan)
        return plan.frame.from_norm(move)

    if plan.case == UNDETERMINED and moves == 3:
        if (3 * n, 0) not in bob:
            return plan.frame.from_norm((3 * n, 0))
        plan.case = THREE_OCCUPIED
        move = _three_occupied_start(state, plan, tags)
        return plan.frame.from_norm(move)

    if plan.case == THREE_OCCUPIED:
        move = _three_occupied_follow(state, plan)
        return plan.frame.from_norm(move)

    if plan.case == UNDETERMINED and moves == 4:
        plan.case = FOUR_OCCUPIED
        move = _four_occupied_start(state, plan)
        return plan.frame.from_norm(move)

    if plan.case == FOUR_OCCUPIED:
        move = _four_occupied_follow(state, plan)
        return plan.frame.from_norm(move)

    raise CaseNotCovered(
        f"no move rule for case {plan.case} at Alice move {moves}",
        record=encode_record(state),
    )


def _bob_anchor_of(cells: Sequence[Cell]) -> Cell:
    return (min(x for x, _ in cells), min(y for _, y in cells))


def _two_occupied_start(
    state: GameState, plan: FastSquarePlan, tags: dict[Cell, tuple]
) -> Cell:
    n = plan.n
    tag = _blocking_tag(state, plan.frame, (2 * n, 0))
    bx, by = _bob_anchor_of(_copy_cells_of_tag(tags, tag))
    if not (n + 1 <= bx <= 2 * n and -n + 1 <= by <= 0):
        raise CaseNotCovered(
            f"blocking copy anchor ({bx},{by}) outside the two-occupied range",
            record=encode_record(state),
        )
    plan.bob_anchor = (bx, by)
    move = (bx - n, n - 1)
    if by == 0:
        alice, bob, _ = _norm_occupancy(state, plan.frame)
        alice.add(move)
        _adopt_fill(plan, (bx - n, 0), "two_occupied_b0", n * n + 1, alice, bob, state)
    return move


def _two_occupied_follow(state: GameState, plan: FastSquarePlan) -> Cell:
    n = plan.n
    bx, by = plan.bob_anchor
    alice, bob, _ = _norm_occupancy(state, plan.frame)
    for cand, corner, branch, bound in (
        ((bx - 1, n - 1), (bx - n, 0), "two_occupied_fork_high", n * n + 1),
        ((bx - n, by), (bx - n, by), "two_occupied_fork_low", n * n + 2),
    ):
        if cand not in alice and cand not in bob:
            alice.add(cand)
            _adopt_fill(plan, corner, branch, bound, alice, bob, state)
            return cand
    raise CaseNotCovered(
        "both two-occupied follow-up cells are blocked",
        record=encode_record(state),
    )


def _flip_if(plan: FastSquarePlan, want_flip: bool) -> None:
    if want_flip:
        plan.frame = plan.frame.compose_after(VFLIP)


def _band_copy_counts(
    n: int, tags: dict[Cell, tuple]
) -> tuple[set[tuple], set[tuple]]:
    """Bob copies (by tag) intersecting the upper band [0,3n]x[1,n] and the
    lower band [0,3n]x[-n,-1]. No copy can appear in both: it would have to
    cross row 0 inside columns [0,3n] and so contain an anchor cell."""
    upper, lower = set(), set()
    for (x, y), tag in tags.items():
        if 0 <= x <= 3 * n:
            if 1 <= y <= n:
                upper.add(tag)
            elif -n <= y <= -1:
                lower.add(tag)
    return upper, lower


def _three_occupied_start(
    state: GameState, plan: FastSquarePlan, tags: dict[Cell, tuple]
) -> Cell:
    n = plan.n
    tag = _blocking_tag(state, plan.frame, (3 * n, 0))
    bx, by = _bob_anchor_of(_copy_cells_of_tag(tags, tag))
    if not (2 * n + 1 <= bx <= 3 * n and -n + 1 <= by <= 0):
        raise CaseNotCovered(
            f"blocking copy anchor ({bx},{by}) outside the three-occupied range",
            record=encode_record(state),
        )
    plan.bob_anchor = (bx, by)
    # At most one of the half-strips beside the baseline holds Bob cells in
    # columns [0,2n]: a copy there cannot cross row 0 without eating an
    # anchor. Flip so the clean strip is on top.
    dirty_up = any(
        0 <= x <= 2 * n and 1 <= y <= n for (x, y), t in tags.items()
    )
    _flip_if(plan, dirty_up)
    return (n, n - 1)


def _three_occupied_follow(state: GameState, plan: FastSquarePlan) -> Cell:
    n = plan.n
    alice, bob, _ = _norm_occupancy(state, plan.frame)
    for cand, corner in (((1, n - 1), (1, 0)), ((2 * n - 1, n - 1), (n, 0))):
        if cand not in alice and cand not in bob:
            alice.add(cand)
            _adopt_fill(
                plan, corner, "three_occupied", n * n + 2, alice, bob, state
            )
            return cand
    raise CaseNotCovered(
        "both three-occupied follow-up cells are blocked",
        record=encode_record(state),
    )


def _four_occupied_start(state: GameState, plan: FastSquarePlan) -> Cell:
    n = plan.n
    _, _, tags = _norm_occupancy(state, plan.frame)
    upper, lower = _band_copy_counts(n, tags)
    _flip_if(plan, len(upper) > len(lower))
    if len(upper) > len(lower):
        upper, lower = lower, upper
    if len(upper) == 0:
        plan.branch = "four_occupied_empty_band"
        return (n, n - 1)
    if len(upper) == 1:
        _, _, tags = _norm_occupancy(state, plan.frame)
        upper, _ = _band_copy_counts(n, tags)
        (tag,) = upper
        bx, by = _bob_anchor_of(_copy_cells_of_tag(tags, tag))
        if bx < n:
            # mirror about x = 3n/2; anchors map onto themselves
            plan.frame = plan.frame.compose_after(MIRROR, outer_sx=3 * n)
            _, _, tags = _norm_occupancy(state, plan.frame)
            upper, _ = _band_copy_counts(n, tags)
            (tag,) = upper
            bx, by = _bob_anchor_of(_copy_cells_of_tag(tags, tag))
        if not n <= bx <= 3 * n:
            raise CaseNotCovered(
                f"lone upper copy anchor ({bx},{by}) out of range",
                record=encode_record(state),
            )
        plan.bob_anchor = (bx, by)
        plan.branch = "four_occupied_lone_copy"
        move = (bx - n, n - 1)
        alice, bob, _ = _norm_occupancy(state, plan.frame)
        if move in alice or move in bob:
            raise CaseNotCovered(
                f"lone-copy reply {move} is occupied", record=encode_record(state)
            )
        alice.add(move)
        _adopt_fill(
            plan, (bx - n, 0), "four_occupied_lone_copy", n * n + 3, alice, bob, state
        )
        return move
    # three Bob copies across two disjoint bands cannot put two in the
    # smaller one
    raise CaseNotCovered(
        f"{len(upper)} Bob copies in the smaller band", record=encode_record(state)
    )


def _four_occupied_follow(state: GameState, plan: FastSquarePlan) -> Cell:
    n = plan.n
    if plan.branch != "four_occupied_empty_band":
        raise CaseNotCovered(
            f"unexpected four-occupied follow-up in branch {plan.branch}",
            record=encode_record(state),
        )
    alice, bob, _ = _norm_occupancy(state, plan.frame)
    for cand, corner in (((1, n - 1), (1, 0)), ((2 * n - 1, n - 1), (n, 0))):
        if cand not in alice and cand not in bob:
            alice.add(cand)
            _adopt_fill(
                plan,
                corner,
                "four_occupied_empty_band",
                n * n + 3,
                alice,
                bob,
                state,
            )
            return cand
    raise CaseNotCovered(
        "both empty-band follow-up cells are blocked",
        record=encode_record(state),
    )


# --- heuristic Alices ---------------------------------------------------------


class RandomAlice:
    """Uniform random free cell, kept within a finite window on the infinite
    board so fuzzing stays bounded."""

    def __init__(self, rng: random.Random, window_factor: int = 10):
        self.rng = rng
        self.window_factor = window_factor
        self._r: int | None = None

    def move(self, game: GameState) -> Cell:
        if game.bounds is not None:
            free = [c for c in game.bounds.cells() if c not in game.occupied]
            if not free:
                raise NoTarget("board is full")
            return self.rng.choice(free)
        if self._r is None:
            self._r = game.animal.diameter * self.window_factor
        r = self._r
        while True:
            cell = (self.rng.randint(-r, r), self.rng.randint(-r, r))
            if cell not in game.occupied:
                return cell


class GreedyAlice:
    """Plays the free cell of the most-advanced partial copy.

    Every Alice cell advances all copies through it; a lazy max-heap keyed
    by progress count avoids rescanning. Copies are discarded for good once
    a Bob cell lands in them (progress never decreases, so the heap's best
    valid entry is always current).
    """

    def __init__(self, rng: random.Random, window_factor: int = 10):
        self.rng = rng
        self.window_factor = window_factor
        self.counts: dict[tuple[int, int, int], int] = {}
        self.dead: set[tuple[int, int, int]] = set()
        self.heap: list[tuple[int, tuple[int, int, int]]] = []
        self.seen_ply = 0

    def _keys_through(self, game: GameState, cell: Cell):
        x, y = cell
        bounds = game.bounds
        for k, shape in orientations(game.animal):
            w = max(sx for sx, _ in shape)
            h = max(sy for _, sy in shape)
            for sx, sy in shape:
                dx, dy = x - sx, y - sy
                if bounds is not None and not (
                    bounds.x_min <= dx and dx + w <= bounds.x_max
                    and bounds.y_min <= dy and dy + h <= bounds.y_max
                ):
                    continue
                yield (k, dx, dy)

    def _sync(self, game: GameState) -> None:
        for kind, payload in game.history[self.seen_ply :]:
            if kind == ALICE:
                for key in self._keys_through(game, payload):
                    if key in self.dead:
                        continue
                    c = self.counts.get(key, 0) + 1
                    self.counts[key] = c
                    heapq.heappush(self.heap, (-c, key))
        self.seen_ply = len(game.history)

    def move(self, game: GameState) -> Cell:
        self._sync(game)
        occupied = game.occupied
        while self.heap:
            negc, key = self.heap[0]
            if key in self.dead or self.counts.get(key, 0) != -negc:
                heapq.heappop(self.heap)
                continue
            k, dx, dy = key
            cells = [(sx + dx, sy + dy) for sx, sy in oriented_cells(game.animal, k)]
            free = None
            blocked = False
            for c in sorted(cells, key=lambda c: (c[1], c[0])):
                owner = occupied.get(c, (None,))[0]
                if owner == BOB:
                    blocked = True
                    break
                if owner is None and free is None:
                    free = c
            if blocked or free is None:
                heapq.heappop(self.heap)
                self.dead.add(key)
                self.counts.pop(key, None)
                continue
            return free
        return RandomAlice(self.rng, self.window_factor).move(game)
