"""Game engine: occupancy, move legality, win detection, and game records.

The game: Alice and Bob alternate, Alice first. Alice occupies one free cell
per turn and wins as soon as her cells contain a copy of the animal. Bob
occupies a full copy of the animal per turn; copies may never overlap
anything already occupied, by either player. On bounded boards Bob passes
when (and only when) no copy fits; if the board fills without an Alice win,
Bob has won. On the infinite board a placement always exists, so passing is
never legal and the game has no natural end without an Alice win.

States mutate in place under exclusive access; use ``clone`` when a snapshot
is needed. All occupancy is permanent: no move ever removes an occupant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .animals import (
    AnimalSpec,
    ExplicitAnimal,
    Polyomino,
    build_animal,
    format_animal,
    oriented_cells,
    orientations,
    parse_animal,
)
from .geometry import Cell

ALICE = "A"
BOB = "B"
PASS = "P"

ONGOING = "ongoing"
ALICE_WON = "alice_won"
BOB_WON = "bob_won"


class GameError(Exception):
    pass


class RuleViolation(GameError):
    pass


class NotYourTurn(RuleViolation):
    pass


class GameFinished(RuleViolation):
    pass


class CellOccupied(RuleViolation):
    pass


class OverlapsOccupied(RuleViolation):
    pass


class OutOfBounds(RuleViolation):
    pass


class IllegalPass(RuleViolation):
    pass


class AnimalDoesNotFit(GameError):
    """No copy of the animal fits inside the board at all."""


class ParseError(GameError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Rect:
    """Inclusive cell rectangle [x_min..x_max] x [y_min..y_max]."""

    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self) -> None:
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError("empty rectangle")

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def contains(self, cell: Cell) -> bool:
        x, y = cell
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def intersects(self, other: "Rect") -> bool:
        return (
            self.x_min <= other.x_max
            and other.x_min <= self.x_max
            and self.y_min <= other.y_max
            and other.y_min <= self.y_max
        )

    def cells(self) -> Iterator[Cell]:
        for x in range(self.x_min, self.x_max + 1):
            for y in range(self.y_min, self.y_max + 1):
                yield (x, y)


Bounds = Optional[Rect]  # None means the infinite board


class Placement(NamedTuple):
    """A Bob copy: symmetry index 0..7 plus the translated bounding-box
    corner of the oriented animal."""

    orientation: int
    dx: int
    dy: int


Move = tuple  # (ALICE, (x, y)) | (BOB, Placement) | (PASS, None)

# Cells packed into single ints for the hot win-check loop: high half x,
# low half y, both biased to stay nonnegative. Adding a packed offset to a
# packed cell translates it, as long as coordinates stay far from the
# 32-bit bias edges (guaranteed by the Polyomino coordinate limit).
_BIAS = 1 << 31


def _pack(x: int, y: int) -> int:
    return ((x + _BIAS) << 32) + (y + _BIAS)


class GameState:
    __slots__ = (
        "animal_spec",
        "animal",
        "bounds",
        "occupied",
        "alice_cells",
        "history",
        "to_move",
        "status",
        "win_reason",
        "bob_pass_count",
        "seed",
        "rng_name",
        "_alice_packed",
        "_oriented",
        "_rep",
        "_win_probes",
        "_free",
        "_bob_dead",
    )

    def __init__(self, animal_spec: AnimalSpec, bounds: Bounds, seed: int | None = None):
        self.animal_spec = animal_spec
        self.animal = build_animal(animal_spec)
        self.bounds = bounds
        self.occupied: dict[Cell, tuple[str, int]] = {}
        self.alice_cells: set[Cell] = set()
        self.history: list[Move] = []
        self.to_move = ALICE
        self.status = ONGOING
        self.win_reason: str | None = None
        self.bob_pass_count = 0
        self.seed = seed
        self.rng_name: str | None = None
        self._alice_packed: set[int] = set()
        self._oriented = tuple(
            tuple(sorted(oriented_cells(self.animal, k))) for k in range(8)
        )
        self._rep = tuple(k for k, _ in orientations(self.animal))
        # For the incremental win check: for every distinct shape and every
        # anchor cell of it, the packed offsets of the shape's other cells.
        # A copy through a given cell then probes the Alice set with pure
        # integer additions.
        probes = []
        for k in self._rep:
            shape = self._oriented[k]
            for ax, ay in shape:
                rest = tuple(
                    ((x - ax) << 32) + (y - ay)
                    for x, y in shape
                    if (x, y) != (ax, ay)
                )
                probes.append(rest)
        self._win_probes = tuple(probes)
        self._free = bounds.area if bounds is not None else None
        self._bob_dead = False
        if bounds is not None and not any(
            True for _ in _placements_in(self, bounds, self.occupied)
        ):
            raise AnimalDoesNotFit(
                f"no copy of {format_animal(animal_spec)} fits in the board"
            )

    # -- queries ------------------------------------------------------------

    @property
    def ply(self) -> int:
        return len(self.history)

    @property
    def alice_move_count(self) -> int:
        return len(self.alice_cells)

    def is_free(self, cell: Cell) -> bool:
        return cell not in self.occupied and (
            self.bounds is None or self.bounds.contains(cell)
        )

    def placement_cells(self, pl: Placement) -> tuple[Cell, ...]:
        if not 0 <= pl.orientation <= 7:
            raise RuleViolation(f"orientation {pl.orientation} out of range")
        return tuple((x + pl.dx, y + pl.dy) for x, y in self._oriented[pl.orientation])

    def clone(self) -> "GameState":
        other = GameState(self.animal_spec, self.bounds, self.seed)
        other.occupied = dict(self.occupied)
        other.alice_cells = set(self.alice_cells)
        other.history = list(self.history)
        other.to_move = self.to_move
        other.status = self.status
        other.win_reason = self.win_reason
        other.bob_pass_count = self.bob_pass_count
        other.rng_name = self.rng_name
        other._alice_packed = set(self._alice_packed)
        other._free = self._free
        other._bob_dead = self._bob_dead
        return other

    # -- moves --------------------------------------------------------------

    def _require_turn(self, who: str) -> None:
        if self.status != ONGOING:
            raise GameFinished(f"game is over ({self.status})")
        if self.to_move != who:
            raise NotYourTurn(f"it is {self.to_move}'s turn")

    def apply_alice(self, cell: Cell) -> "GameState":
        self._require_turn(ALICE)
        if self.bounds is not None and not self.bounds.contains(cell):
            raise OutOfBounds(f"cell {cell} is outside the board")
        if cell in self.occupied:
            raise CellOccupied(f"cell {cell} is already occupied")
        ply = len(self.history)
        self.occupied[cell] = (ALICE, ply)
        self.alice_cells.add(cell)
        self._alice_packed.add(_pack(cell[0], cell[1]))
        self.history.append((ALICE, cell))
        if self._free is not None:
            self._free -= 1
        self.to_move = BOB
        if self._wins_through(cell):
            self.status = ALICE_WON
            self.win_reason = "animal_completed"
        elif self._free == 0:
            self.status = BOB_WON
            self.win_reason = "board_full"
        return self

    def apply_bob(self, pl: Placement) -> "GameState":
        self._require_turn(BOB)
        cells = self.placement_cells(pl)
        bounds = self.bounds
        occupied = self.occupied
        for c in cells:
            if bounds is not None and not bounds.contains(c):
                raise OutOfBounds(f"copy cell {c} is outside the board")
            if c in occupied:
                raise OverlapsOccupied(f"copy cell {c} is already occupied")
        ply = len(self.history)
        tag = (BOB, ply)
        for c in cells:
            occupied[c] = tag
        self.history.append((BOB, pl))
        if self._free is not None:
            self._free -= len(cells)
        self.to_move = ALICE
        if self._free == 0:
            self.status = BOB_WON
            self.win_reason = "board_full"
        return self

    def apply_bob_pass(self) -> "GameState":
        self._require_turn(BOB)
        if self.bounds is None:
            raise IllegalPass("a copy always fits on the infinite board")
        if not self._bob_dead:
            if any(True for _ in _placements_in(self, self.bounds, self.occupied)):
                raise IllegalPass("Bob still has a legal placement")
            self._bob_dead = True
        self.history.append((PASS, None))
        self.bob_pass_count += 1
        self.to_move = ALICE
        return self

    def apply_move(self, move: Move) -> "GameState":
        kind, payload = move
        if kind == ALICE:
            return self.apply_alice(payload)
        if kind == BOB:
            return self.apply_bob(Placement(*payload))
        if kind == PASS:
            return self.apply_bob_pass()
        raise RuleViolation(f"unknown move kind {kind!r}")

    # -- win detection -------------------------------------------------------

    def _wins_through(self, cell: Cell) -> bool:
        """Does some copy through ``cell`` lie entirely in Alice's cells?"""
        if len(self.alice_cells) < self.animal.size:
            return False
        base = _pack(cell[0], cell[1])
        alice = self._alice_packed
        for rest in self._win_probes:
            for off in rest:
                if base + off not in alice:
                    break
            else:
                return True
        return False


def new_game(
    animal: AnimalSpec | str, bounds: Bounds = None, seed: int | None = None
) -> GameState:
    if isinstance(animal, str):
        animal = parse_animal(animal)
    if isinstance(animal, Polyomino):
        animal = ExplicitAnimal(animal.cells)
    return GameState(animal, bounds, seed)


def apply_alice(state: GameState, cell: Cell) -> GameState:
    return state.apply_alice(cell)


def apply_bob(state: GameState, placement: Placement) -> GameState:
    return state.apply_bob(placement)


def apply_bob_pass(state: GameState) -> GameState:
    return state.apply_bob_pass()


def alice_has_won(state: GameState) -> bool:
    return state.status == ALICE_WON


def naive_alice_win_scan(state: GameState) -> bool:
    """Full-board scan for a completed copy; oracle for the incremental check."""
    alice = state.alice_cells
    if len(alice) < state.animal.size:
        return False
    xs = [x for x, _ in alice]
    ys = [y for _, y in alice]
    for _, shape in orientations(state.animal):
        cells = sorted(shape)
        w = max(x for x, _ in cells)
        h = max(y for _, y in cells)
        for dx in range(min(xs), max(xs) - w + 1):
            for dy in range(min(ys), max(ys) - h + 1):
                if all((x + dx, y + dy) in alice for x, y in cells):
                    return True
    return False


def _placements_in(
    state: GameState, region: Rect, occupied
) -> Iterator[Placement]:
    """Legal placements whose copies intersect ``region``, in deterministic
    (orientation, dx, dy) order. Copies must also lie within the board."""
    bounds = state.bounds
    for k in state._rep:
        shape = state._oriented[k]
        w = max(x for x, _ in shape)
        h = max(y for _, y in shape)
        x_lo, x_hi = region.x_min - w, region.x_max
        y_lo, y_hi = region.y_min - h, region.y_max
        if bounds is not None:
            x_lo = max(x_lo, bounds.x_min)
            x_hi = min(x_hi, bounds.x_max - w)
            y_lo = max(y_lo, bounds.y_min)
            y_hi = min(y_hi, bounds.y_max - h)
        for dx in range(x_lo, x_hi + 1):
            for dy in range(y_lo, y_hi + 1):
                for x, y in shape:
                    if (x + dx, y + dy) in occupied:
                        break
                else:
                    yield Placement(k, dx, dy)


def bob_placements_in_region(state: GameState, region: Rect) -> list[Placement]:
    """All legal Bob placements intersecting the region."""
    return list(_placements_in(state, region, state.occupied))


def bob_has_placement(state: GameState) -> bool:
    """Bounded boards: does any copy still fit? Sticky once false."""
    if state.bounds is None:
        return True
    if state._bob_dead:
        return False
    alive = any(True for _ in _placements_in(state, state.bounds, state.occupied))
    if not alive:
        state._bob_dead = True
    return alive


# --- record codec -----------------------------------------------------------
#
# Line-oriented text, one move per line after a small header:
#
#   animal O 4 6 1
#   bounds infinite            (or: bounds rect <x_min> <x_max> <y_min> <y_max>)
#   seed 7                     (optional)
#   A <x> <y>
#   B <orientation 0-7> <dx> <dy>
#   BPASS
#
# Blank lines and lines starting with '#' are ignored.


def format_bounds(bounds: Bounds) -> str:
    if bounds is None:
        return "infinite"
    return f"rect {bounds.x_min} {bounds.x_max} {bounds.y_min} {bounds.y_max}"


def parse_bounds(text: str) -> Bounds:
    toks = text.split()
    if toks == ["infinite"]:
        return None
    if len(toks) == 5 and toks[0] == "rect":
        try:
            a, b, c, d = (int(t) for t in toks[1:])
        except ValueError:
            raise ValueError(f"bad bounds {text!r}") from None
        return Rect(a, b, c, d)
    raise ValueError(f"bad bounds {text!r}")


def encode_record(state: GameState) -> str:
    lines = [
        f"animal {format_animal(state.animal_spec)}",
        f"bounds {format_bounds(state.bounds)}",
    ]
    if state.seed is not None:
        lines.append(f"seed {state.seed}")
    if state.rng_name is not None:
        lines.append(f"rng {state.rng_name}")
    for kind, payload in state.history:
        if kind == ALICE:
            lines.append(f"A {payload[0]} {payload[1]}")
        elif kind == BOB:
            lines.append(f"B {payload.orientation} {payload.dx} {payload.dy}")
        else:
            lines.append("BPASS")
    return "\n".join(lines) + "\n"


def decode_record(text: str) -> GameState:
    """Rebuild a state by replaying a record; every move is re-validated.

    Errors carry the 1-based line number of the offending line.
    """
    state: GameState | None = None
    seed: int | None = None
    rng_name: str | None = None
    animal: AnimalSpec | None = None
    bounds: Bounds = None
    saw_bounds = False

    def ints(tokens: list[str], n: int, lineno: int) -> list[int]:
        if len(tokens) != n:
            raise ParseError(f"expected {n} integers, got {tokens!r}", lineno)
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"expected integers, got {tokens!r}", lineno) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        head = toks[0]
        if state is None and head not in ("A", "B", "BPASS"):
            if head == "animal":
                try:
                    animal = parse_animal(" ".join(toks[1:]))
                except Exception as exc:
                    raise ParseError(str(exc), lineno) from None
                continue
            if head == "bounds":
                try:
                    bounds = parse_bounds(" ".join(toks[1:]))
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
                saw_bounds = True
                continue
            if head == "seed":
                (seed,) = ints(toks[1:], 1, lineno)
                continue
            if head == "rng":
                if len(toks) != 2:
                    raise ParseError("rng header takes one identifier", lineno)
                rng_name = toks[1]
                continue
            raise ParseError(f"unknown header line {line!r}", lineno)
        if state is None:
            if animal is None or not saw_bounds:
                raise ParseError(
                    "moves before the animal/bounds header is complete", lineno
                )
            state = GameState(animal, bounds, seed)
            state.rng_name = rng_name
        try:
            if head == "A":
                x, y = ints(toks[1:], 2, lineno)
                state.apply_alice((x, y))
            elif head == "B":
                k, dx, dy = ints(toks[1:], 3, lineno)
                if not 0 <= k <= 7:
                    raise ParseError(f"orientation {k} out of range", lineno)
                state.apply_bob(Placement(k, dx, dy))
            elif head == "BPASS":
                state.apply_bob_pass()
            else:
                raise ParseError(f"unknown move line {line!r}", lineno)
        except ParseError:
            raise
        except GameError as exc:
            raise ParseError(str(exc), lineno) from None
    if state is None:
        if animal is None or not saw_bounds:
            raise ParseError("record is missing its header", max(1, text.count("\n")))
        state = GameState(animal, bounds, seed)
        state.rng_name = rng_name
    return state


def render_board(state: GameState, margin: int = 1) -> str:
    """ASCII sketch: Alice cells 'A', Bob cells 'b', free '.'."""
    if state.bounds is not None:
        x0, x1 = state.bounds.x_min, state.bounds.x_max
        y0, y1 = state.bounds.y_min, state.bounds.y_max
    elif state.occupied:
        xs = [x for x, _ in state.occupied]
        ys = [y for _, y in state.occupied]
        x0, x1 = min(xs) - margin, max(xs) + margin
        y0, y1 = min(ys) - margin, max(ys) + margin
    else:
        x0 = y0 = -2
        x1 = y1 = 2
    rows = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            occ = state.occupied.get((x, y))
            row.append("." if occ is None else ("A" if occ[0] == ALICE else "b"))
        rows.append(f"{y:>4} " + " ".join(row))
    rows.append("     " + " ".join(_axis_label(x) for x in range(x0, x1 + 1)))
    return "\n".join(rows)


def _axis_label(x: int) -> str:
    return str(abs(x) % 10)
