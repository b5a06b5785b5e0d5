"""Bob's pairing strategies: block partitions and the static crack check.

Bob virtually tiles the plane with rectangular blocks, possibly slanted row
by row, and answers every Alice move inside the block she just played in.
The load-bearing fact, checked exhaustively by the tests, is that a block
holding at most one Alice cell always still admits a full in-block copy.

Families with known partitions:

ring O(n,m,k)          block (n+k) x (m+k), no slant
chain L(n), n >= 2     block 2n x 2, no slant
punched square, n >= 4 block (n + floor((n-1)/2)) squared, no slant,
                       requires a removed cell at depth >= floor(n/4)
U(h,w,1), not (2,4)    block (w+1) x h, slant by the case table in
                       partition_for

Everything else raises UnsupportedAnimal. A falsified in-block placement on
the infinite board raises StrategyFalsified and must never be swallowed:
it would be a counterexample to the strategy's core claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .animals import (
    AnimalSpec,
    LChainAnimal,
    Polyomino,
    PunchedSquareAnimal,
    RingAnimal,
    UAnimal,
    build_animal,
    format_animal,
    oriented_cells,
    orientations,
)
from .engine import GameState, Placement, Rect, bob_placements_in_region
from .geometry import Cell


class UnsupportedAnimal(ValueError):
    """No pairing partition is known (or can exist) for this animal."""


class HoleTooShallow(UnsupportedAnimal):
    """Punched square whose removed cells all hug the boundary."""


class StrategyFalsified(RuntimeError):
    """A pairing placement that must exist does not.

    Carries the offending block and, when available, the game record: such
    an event would falsify the strategy and is the most valuable artifact a
    fuzzing run can produce.
    """

    def __init__(self, message: str, record: str | None = None):
        super().__init__(message)
        self.record = record


@dataclass(frozen=True)
class BlockPartition:
    """Tiling of the plane by block_w x block_h rectangles, row j of blocks
    shifted right by j*shift. Block (i,j) spans
    [i*block_w + j*shift, (i+1)*block_w - 1 + j*shift] x
    [j*block_h, (j+1)*block_h - 1], both relative to origin."""

    block_w: int
    block_h: int
    shift: int = 0
    origin: Cell = (0, 0)

    def __post_init__(self) -> None:
        if self.block_w < 1 or self.block_h < 1:
            raise ValueError("block sides must be at least 1")

    def block_of(self, cell: Cell) -> tuple[int, int]:
        x = cell[0] - self.origin[0]
        y = cell[1] - self.origin[1]
        j = y // self.block_h
        i = (x - j * self.shift) // self.block_w
        return (i, j)

    def block_origin(self, i: int, j: int) -> Cell:
        return (
            self.origin[0] + i * self.block_w + j * self.shift,
            self.origin[1] + j * self.block_h,
        )

    def block_rect(self, i: int, j: int) -> Rect:
        x0, y0 = self.block_origin(i, j)
        return Rect(x0, x0 + self.block_w - 1, y0, y0 + self.block_h - 1)

    def describe(self) -> str:
        ox, oy = self.origin
        return (
            f"block {self.block_w}x{self.block_h} shift {self.shift} "
            f"origin ({ox},{oy})"
        )


def partition_for(spec: AnimalSpec) -> BlockPartition:
    """The block partition that defeats the given animal."""
    if isinstance(spec, RingAnimal):
        return BlockPartition(spec.n + spec.k, spec.m + spec.k)
    if isinstance(spec, LChainAnimal):
        if spec.n < 2:
            raise UnsupportedAnimal(
                "L(1) has three cells; three-cell animals are non-cannibal, "
                "so no pairing strategy can exist"
            )
        return BlockPartition(2 * spec.n, 2)
    if isinstance(spec, PunchedSquareAnimal):
        n = spec.n
        if n < 4:
            raise UnsupportedAnimal("punched-square partition needs n >= 4")
        need = n // 4
        depth = max(
            min(x, y, n - 1 - x, n - 1 - y) for x, y in spec.removed
        )
        if depth < need:
            raise HoleTooShallow(
                f"deepest removed cell is {depth} from the boundary; "
                f"the partition needs at least {need}"
            )
        side = n + (n - 1) // 2
        return BlockPartition(side, side)
    if isinstance(spec, UAnimal):
        h, w, k = spec.h, spec.w, spec.k
        if k != 1:
            raise UnsupportedAnimal(
                "only thickness-1 U animals have a known partition"
            )
        if (h, w) == (2, 4):
            raise UnsupportedAnimal("conjectured cannibal, no known partition")
        if h == 2:
            t = 2
        elif h - 2 <= w <= 2 * h - 2:
            t = (w + 1) // 2
        else:
            t = 0
        return BlockPartition(w + 1, h, t)
    raise UnsupportedAnimal(
        f"no pairing partition is known for {format_animal(spec)}"
    )


@lru_cache(maxsize=1 << 16)
def _relative_placement(
    animal: Polyomino, block_w: int, block_h: int, occupied: frozenset[Cell]
) -> Optional[tuple[int, int, int]]:
    """First (orientation, dx, dy) lex placing a copy inside a block at the
    origin while avoiding ``occupied`` block-relative cells."""
    for k, shape in orientations(animal):
        cells = sorted(shape)
        w = max(x for x, _ in cells) + 1
        h = max(y for _, y in cells) + 1
        if w > block_w or h > block_h:
            continue
        for dx in range(block_w - w + 1):
            for dy in range(block_h - h + 1):
                for x, y in cells:
                    if (x + dx, y + dy) in occupied:
                        break
                else:
                    return (k, dx, dy)
    return None


def canonical_placement(
    partition: BlockPartition,
    block: tuple[int, int],
    animal: Polyomino,
    occupied: "GameState | Iterable[Cell]",
) -> Optional[Placement]:
    """Deterministic first-fit copy fully inside the block avoiding every
    occupied cell, or None when the block is too congested."""
    if isinstance(occupied, GameState):
        occupied = occupied.occupied
    ox, oy = partition.block_origin(*block)
    rect = partition.block_rect(*block)
    offsets = frozenset(
        (x - ox, y - oy) for x, y in occupied if rect.contains((x, y))
    )
    rel = _relative_placement(animal, partition.block_w, partition.block_h, offsets)
    if rel is None:
        return None
    k, dx, dy = rel
    return Placement(k, ox + dx, oy + dy)


def _spiral(limit: int) -> Iterable[tuple[int, int]]:
    """Block indices by Chebyshev ring around (0,0), sorted within a ring."""
    yield (0, 0)
    for r in range(1, limit):
        ring = [
            (i, j)
            for i in range(-r, r + 1)
            for j in range(-r, r + 1)
            if max(abs(i), abs(j)) == r
        ]
        for ij in sorted(ring):
            yield ij


@dataclass
class PairingBobState:
    """Mutable per-game pairing bookkeeping.

    blocks_played are blocks holding one of Bob's copies; touched blocks
    contain any occupied cell and are skipped by the spiral. The spiral
    cursor only moves forward: occupancy is permanent, so a skipped block
    never becomes empty again.
    """

    partition: BlockPartition
    blocks_played: set[tuple[int, int]] = field(default_factory=set)
    spiral_cursor: int = 0
    touched: set[tuple[int, int]] = field(default_factory=set)
    block_cells: dict[tuple[int, int], set[Cell]] = field(default_factory=dict)
    seen_ply: int = 0
    violations: list[str] = field(default_factory=list)
    _spiral_seq: list[tuple[int, int]] = field(default_factory=list)
    _spiral_iter: object = None

    def _sync(self, state: GameState) -> None:
        part = self.partition
        for kind, payload in state.history[self.seen_ply :]:
            if kind == "A":
                cells = (payload,)
            elif kind == "B":
                cells = state.placement_cells(payload)
            else:
                cells = ()
            for cell in cells:
                b = part.block_of(cell)
                self.touched.add(b)
                self.block_cells.setdefault(b, set()).add(cell)
                if kind == "B":
                    self.blocks_played.add(b)
        self.seen_ply = len(state.history)

    def _next_empty_block(self, state: GameState) -> Optional[tuple[int, int]]:
        if self._spiral_iter is None:
            self._spiral_iter = _spiral(1 << 20)
        bounds = state.bounds
        if bounds is not None:
            bw, bh = self.partition.block_w, self.partition.block_h
            max_ring = (
                max(bounds.width, bounds.height) // min(bw, bh)
                + max(map(abs, self.partition.origin)) // min(bw, bh)
                + 3
            )
        while True:
            while len(self._spiral_seq) <= self.spiral_cursor:
                self._spiral_seq.append(next(self._spiral_iter))
            block = self._spiral_seq[self.spiral_cursor]
            if bounds is not None and max(map(abs, block)) > max_ring:
                return None
            in_bounds = True
            if bounds is not None:
                r = self.partition.block_rect(*block)
                in_bounds = (
                    bounds.x_min <= r.x_min
                    and r.x_max <= bounds.x_max
                    and bounds.y_min <= r.y_min
                    and r.y_max <= bounds.y_max
                )
            if block not in self.touched and in_bounds:
                return block
            self.spiral_cursor += 1


def new_pairing_state(animal: AnimalSpec, partition: BlockPartition | None = None) -> PairingBobState:
    return PairingBobState(partition or partition_for(animal))


def pairing_move(state: GameState, pairing: PairingBobState) -> Optional[Placement]:
    """Bob's pairing reply: answer inside Alice's block when it is Bob-free,
    otherwise fill the first empty block on an outward spiral. Returns None
    to pass (possible only on bounded boards)."""
    pairing._sync(state)
    part = pairing.partition
    animal = state.animal
    bounded = state.bounds is not None

    target: Optional[tuple[int, int]] = None
    if state.history and state.history[-1][0] == "A":
        last_block = part.block_of(state.history[-1][1])
        if last_block not in pairing.blocks_played:
            target = last_block
            in_block = pairing.block_cells.get(last_block, ())
            if len(in_block) > 1:
                pairing.violations.append(
                    f"block {last_block} held {len(in_block)} occupied cells "
                    "when Bob answered there"
                )

    if target is not None:
        # block_cells is synced, so it beats rescanning state.occupied
        pl = canonical_placement(
            part, target, animal, pairing.block_cells.get(target, ())
        )
        if pl is not None:
            if not bounded or all(
                state.bounds.contains(c) for c in state.placement_cells(pl)
            ):
                return pl
        elif not bounded:
            cells = sorted(pairing.block_cells.get(target, ()))
            raise StrategyFalsified(
                f"no in-block copy of {format_animal(state.animal_spec)} "
                f"({part.describe()}) avoids {cells} in Bob-free block "
                f"{target}",
                record=_record_of(state),
            )
        # bounded board: fall through to the spiral / fallback

    block = pairing._next_empty_block(state)
    if block is not None:
        pl = canonical_placement(
            part, block, animal, pairing.block_cells.get(block, ())
        )
        if pl is not None:
            if not bounded or all(
                state.bounds.contains(c) for c in state.placement_cells(pl)
            ):
                return pl
        elif not bounded:
            raise StrategyFalsified(
                f"empty block {block} cannot hold "
                f"{format_animal(state.animal_spec)} under {part.describe()}",
                record=_record_of(state),
            )
    if bounded:
        anywhere = bob_placements_in_region(state, state.bounds)
        return anywhere[0] if anywhere else None
    raise StrategyFalsified(
        "no empty block found on an infinite board", record=_record_of(state)
    )


def _record_of(state: GameState) -> str | None:
    from .engine import encode_record

    try:
        return encode_record(state)
    except Exception:
        return None


class PairingBob:
    """Harness adapter holding a PairingBobState across a game."""

    def __init__(self, animal_spec: AnimalSpec, partition: BlockPartition | None = None):
        self.state = new_pairing_state(animal_spec, partition)

    @property
    def partition(self) -> BlockPartition:
        return self.state.partition

    @property
    def violations(self) -> list[str]:
        return self.state.violations

    def move(self, game: GameState) -> Optional[Placement]:
        return pairing_move(game, self.state)


def _block_escapes(
    animal: Polyomino,
    partition: BlockPartition,
    copy_rel: frozenset[Cell],
) -> bool:
    """Can Alice open this block so Bob's reply misses her copy's cells?

    copy_rel holds the block-relative cells of the copy restricted to this
    block. Bob's reply to a first cell at ``a`` is canonical_placement with
    only ``a`` occupied; Alice escapes when some trigger cell (hers to pick,
    inside or outside the copy) draws a reply disjoint from copy_rel. A None
    reply also counts: a block Bob cannot answer never stops anything.
    """
    bw, bh = partition.block_w, partition.block_h
    for ax in range(bw):
        for ay in range(bh):
            rel = _relative_placement(animal, bw, bh, frozenset(((ax, ay),)))
            if rel is None:
                return True
            k, dx, dy = rel
            if not any(
                (x + dx, y + dy) in copy_rel for x, y in oriented_cells(animal, k)
            ):
                return True
    return False


def find_crack(
    animal_or_spec: "Polyomino | AnimalSpec",
    partition: BlockPartition,
    window_blocks: int = 5,
    block_offset: tuple[int, int] = (0, 0),
) -> Optional[Placement]:
    """Search a window of blocks for a copy Alice could build against the
    pairing strategy.

    Alice chooses her first cell in every block, and Bob's reply reacts only
    to that cell. A copy is a crack when every block it meets can be opened
    with some trigger cell whose reply misses the copy: Alice triggers those
    blocks first, then fills the copy at leisure. Only copies whose blocks
    lie entirely inside the window are considered; each block is judged by
    itself, so the window bounds the search without edge effects, and the
    pattern's periodicity makes a 5x5-block window exhaustive. Returns the
    first witness in (orientation, dx, dy) order, or None. Raises ValueError
    when the animal cannot fit in an empty block or overflows the window.
    """
    if window_blocks < 3:
        raise ValueError("window_blocks must be at least 3")
    animal = (
        animal_or_spec
        if isinstance(animal_or_spec, Polyomino)
        else build_animal(animal_or_spec)
    )
    bw, bh = partition.block_w, partition.block_h
    if _relative_placement(animal, bw, bh, frozenset()) is None:
        raise ValueError("the animal does not fit inside an empty block")
    if animal.diameter > window_blocks * min(bw, bh):
        raise ValueError("window too small for this animal; raise window_blocks")

    di, dj = block_offset
    window = {
        (i, j)
        for j in range(dj, dj + window_blocks)
        for i in range(di, di + window_blocks)
    }
    x_lo = min(partition.block_rect(i, j).x_min for i, j in window)
    x_hi = max(partition.block_rect(i, j).x_max for i, j in window)
    y_lo = min(partition.block_rect(i, j).y_min for i, j in window)
    y_hi = max(partition.block_rect(i, j).y_max for i, j in window)

    # blocks are congruent, so escape only depends on block-relative cells
    escapable_cache: dict[frozenset[Cell], bool] = {}

    def escapes(block: tuple[int, int], part_cells: frozenset[Cell]) -> bool:
        ox, oy = partition.block_origin(*block)
        rel = frozenset((x - ox, y - oy) for x, y in part_cells)
        if rel not in escapable_cache:
            escapable_cache[rel] = _block_escapes(animal, partition, rel)
        return escapable_cache[rel]

    for k, shape in orientations(animal):
        cells = sorted(shape)
        w = max(x for x, _ in cells)
        h = max(y for _, y in cells)
        for dy in range(y_lo, y_hi - h + 1):
            for dx in range(x_lo, x_hi - w + 1):
                copy = [(x + dx, y + dy) for x, y in cells]
                by_block: dict[tuple[int, int], set[Cell]] = {}
                for c in copy:
                    by_block.setdefault(partition.block_of(c), set()).add(c)
                if not all(b in window for b in by_block):
                    continue
                if all(
                    escapes(b, frozenset(part)) for b, part in by_block.items()
                ):
                    return Placement(k, dx, dy)
    return None


def verify_partition_static(
    animal_or_spec: "Polyomino | AnimalSpec",
    partition: BlockPartition,
    window_blocks: int = 5,
    block_offset: tuple[int, int] = (0, 0),
) -> bool:
    """True iff the partition admits no crack for this animal."""
    try:
        return (
            find_crack(animal_or_spec, partition, window_blocks, block_offset)
            is None
        )
    except ValueError as exc:
        if "empty block" in str(exc):
            # a partition whose blocks cannot hold the animal defeats nobody
            return False
        raise
