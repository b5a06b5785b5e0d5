"""Animal (polyomino) construction, symmetry images, and piece punching.

An animal is a finite edge-connected set of grid cells, held in canonical
translation (bounding box corner at the origin). Two cell sets are copies of
one another when some rotation or reflection plus a translation maps one onto
the other. The parametric families used throughout:

``R n m``
    Solid rectangle, ``n`` wide and ``m`` tall.
``O n m k``
    Rectangle ``R(n, m)`` with a centered ``(n-2k) x (m-2k)`` hole; a ring of
    thickness ``k``. Has ``2k(n+m-2k)`` cells.
``U h w k``
    U-shape of height ``h``, width ``w``, arm/bar thickness ``k``:
    a full bottom bar plus two vertical arms. Has ``k(2h+w-2k)`` cells.
``L n``
    ``n`` El trominoes concatenated horizontally, each shifted two columns,
    touching but not overlapping. Has ``3n`` cells in a ``2n x 2`` box.
``EL``
    The L-shaped tromino.
``CELLS (x,y);...``
    Explicit cell list.
``PUNCHED n REMOVED (x,y);...``
    ``R(n, n)`` with the listed interior cells removed.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

from .geometry import (
    Cell,
    D4_ELEMENTS,
    apply_d4,
    bounding_box,
    is_connected,
    map_cells,
    normalize,
)

_COORD_LIMIT = 2**31 - 1


class InvalidAnimal(ValueError):
    """Animal parameters outside their defined ranges, or malformed cells."""


class DisconnectedResult(InvalidAnimal):
    """Removing the requested cells would disconnect the animal."""


@dataclass(frozen=True)
class Polyomino:
    """Canonical animal: nonempty, connected, min corner at the origin."""

    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        if not self.cells:
            raise InvalidAnimal("an animal needs at least one cell")
        for x, y in self.cells:
            if abs(x) > _COORD_LIMIT or abs(y) > _COORD_LIMIT:
                raise InvalidAnimal("cell coordinates must fit in 32 bits")
        x0, y0, _, _ = bounding_box(self.cells)
        if x0 != 0 or y0 != 0:
            raise InvalidAnimal("cells are not in canonical translation")
        if not is_connected(self.cells):
            raise InvalidAnimal("cells are not edge-connected")

    @staticmethod
    def from_cells(cells: Iterable[Cell]) -> "Polyomino":
        pts = frozenset((int(x), int(y)) for x, y in cells)
        if not pts:
            raise InvalidAnimal("an animal needs at least one cell")
        return Polyomino(normalize(pts))

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return bounding_box(self.cells)[2] + 1

    @property
    def height(self) -> int:
        return bounding_box(self.cells)[3] + 1

    @property
    def diameter(self) -> int:
        """Chebyshev extent: the larger bounding-box side."""
        return max(self.width, self.height)

    def sorted_cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))


@lru_cache(maxsize=4096)
def oriented_cells(poly: Polyomino, k: int) -> frozenset[Cell]:
    """Image of the animal under symmetry ``k``, re-normalized."""
    return normalize(map_cells(k, poly.cells))


@lru_cache(maxsize=1024)
def orientations(poly: Polyomino) -> tuple[tuple[int, frozenset[Cell]], ...]:
    """Distinct symmetry images, each tagged with the first index producing it.

    Order is deterministic: first occurrence over indices 0..7.
    """
    seen: dict[tuple[Cell, ...], int] = {}
    out = []
    for k in D4_ELEMENTS:
        img = oriented_cells(poly, k)
        key = tuple(sorted(img))
        if key not in seen:
            seen[key] = k
            out.append((k, img))
    return tuple(out)


@lru_cache(maxsize=1024)
def canonical_key(poly: Polyomino) -> tuple[Cell, ...]:
    """Lexicographically smallest sorted cell list over all symmetry images."""
    return min(tuple(sorted(oriented_cells(poly, k))) for k in D4_ELEMENTS)


def congruent(a: Polyomino, b: Polyomino) -> bool:
    return canonical_key(a) == canonical_key(b)


def transform(poly: Polyomino, orientation: int, dx: int, dy: int) -> frozenset[Cell]:
    """Cells of the copy with the given orientation, translated so the
    oriented bounding-box corner lands on ``(dx, dy)``."""
    return frozenset((x + dx, y + dy) for x, y in oriented_cells(poly, orientation))


# --- parametric families ---------------------------------------------------


@dataclass(frozen=True)
class RectAnimal:
    n: int
    m: int


@dataclass(frozen=True)
class RingAnimal:
    n: int
    m: int
    k: int


@dataclass(frozen=True)
class UAnimal:
    h: int
    w: int
    k: int


@dataclass(frozen=True)
class LChainAnimal:
    n: int


@dataclass(frozen=True)
class ElAnimal:
    pass


@dataclass(frozen=True)
class ExplicitAnimal:
    cells: frozenset[Cell]


@dataclass(frozen=True)
class PunchedSquareAnimal:
    n: int
    removed: frozenset[Cell] = field(default_factory=frozenset)


AnimalSpec = Union[
    RectAnimal,
    RingAnimal,
    UAnimal,
    LChainAnimal,
    ElAnimal,
    ExplicitAnimal,
    PunchedSquareAnimal,
]

EL_CELLS = frozenset({(0, 0), (1, 0), (0, 1)})


def build_animal(spec: AnimalSpec) -> Polyomino:
    """Construct the cell set for an animal spec, validating parameters."""
    if isinstance(spec, RectAnimal):
        n, m = spec.n, spec.m
        if n < 1 or m < 1:
            raise InvalidAnimal("rectangle sides must be at least 1")
        return Polyomino.from_cells((x, y) for x in range(n) for y in range(m))
    if isinstance(spec, RingAnimal):
        n, m, k = spec.n, spec.m, spec.k
        if k < 1 or 2 * k >= n or 2 * k >= m:
            raise InvalidAnimal("ring needs 1 <= k < min(n/2, m/2)")
        cells = [
            (x, y)
            for x in range(n)
            for y in range(m)
            if not (k <= x < n - k and k <= y < m - k)
        ]
        return Polyomino.from_cells(cells)
    if isinstance(spec, UAnimal):
        h, w, k = spec.h, spec.w, spec.k
        if h < 2 or w < 3 or k < 1 or k >= h or 2 * k >= w:
            raise InvalidAnimal("U-shape needs h >= 2, w >= 3, 1 <= k < min(h, w/2)")
        cells = [
            (x, y)
            for x in range(w)
            for y in range(h)
            if y < k or x < k or x >= w - k
        ]
        return Polyomino.from_cells(cells)
    if isinstance(spec, LChainAnimal):
        n = spec.n
        if n < 1:
            raise InvalidAnimal("chain length must be at least 1")
        cells = [(x + 2 * i, y) for i in range(n) for (x, y) in EL_CELLS]
        return Polyomino.from_cells(cells)
    if isinstance(spec, ElAnimal):
        return Polyomino(EL_CELLS)
    if isinstance(spec, ExplicitAnimal):
        return Polyomino.from_cells(spec.cells)
    if isinstance(spec, PunchedSquareAnimal):
        n = spec.n
        if n < 3:
            raise InvalidAnimal("punched square needs n >= 3 for an interior")
        if not spec.removed:
            raise InvalidAnimal("punched square needs at least one removed cell")
        for x, y in spec.removed:
            if not (1 <= x <= n - 2 and 1 <= y <= n - 2):
                raise InvalidAnimal(f"removed cell ({x},{y}) is not interior")
        cells = [
            (x, y) for x in range(n) for y in range(n) if (x, y) not in spec.removed
        ]
        if not is_connected(cells):
            raise DisconnectedResult("removed cells disconnect the square")
        return Polyomino.from_cells(cells)
    raise InvalidAnimal(f"unknown animal spec {spec!r}")


_CELL_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def _parse_cell_list(text: str) -> frozenset[Cell]:
    pairs = _CELL_RE.findall(text)
    if not pairs:
        raise InvalidAnimal(f"no cells found in {text!r}")
    stripped = _CELL_RE.sub("", text).replace(";", "").strip()
    if stripped:
        raise InvalidAnimal(f"unparsed text in cell list: {stripped!r}")
    return frozenset((int(x), int(y)) for x, y in pairs)


def parse_animal(text: str) -> AnimalSpec:
    """Parse an animal descriptor. Keywords are case-insensitive."""
    parts = text.strip().split(None, 1)
    if not parts:
        raise InvalidAnimal("empty animal descriptor")
    head = parts[0].upper()
    rest = parts[1] if len(parts) > 1 else ""

    def ints(expected: int) -> list[int]:
        toks = rest.split()
        if len(toks) != expected or not all(
            t.lstrip("-").isdigit() for t in toks
        ):
            raise InvalidAnimal(
                f"{head} needs {expected} integer parameter(s), got {rest!r}"
            )
        return [int(t) for t in toks]

    if head == "R":
        n, m = ints(2)
        return RectAnimal(n, m)
    if head == "O":
        n, m, k = ints(3)
        return RingAnimal(n, m, k)
    if head == "U":
        h, w, k = ints(3)
        return UAnimal(h, w, k)
    if head == "L":
        (n,) = ints(1)
        return LChainAnimal(n)
    if head == "EL":
        if rest.strip():
            raise InvalidAnimal("EL takes no parameters")
        return ElAnimal()
    if head == "CELLS":
        return ExplicitAnimal(_parse_cell_list(rest))
    if head == "PUNCHED":
        m = re.match(r"\s*(\d+)\s+REMOVED\s+(.*)$", rest, re.IGNORECASE | re.DOTALL)
        if not m:
            raise InvalidAnimal("expected: PUNCHED <n> REMOVED (x,y);...")
        return PunchedSquareAnimal(int(m.group(1)), _parse_cell_list(m.group(2)))
    raise InvalidAnimal(f"unknown animal family {head!r}")


def format_animal(spec: AnimalSpec) -> str:
    if isinstance(spec, RectAnimal):
        return f"R {spec.n} {spec.m}"
    if isinstance(spec, RingAnimal):
        return f"O {spec.n} {spec.m} {spec.k}"
    if isinstance(spec, UAnimal):
        return f"U {spec.h} {spec.w} {spec.k}"
    if isinstance(spec, LChainAnimal):
        return f"L {spec.n}"
    if isinstance(spec, ElAnimal):
        return "EL"
    if isinstance(spec, ExplicitAnimal):
        body = ";".join(f"({x},{y})" for x, y in sorted(spec.cells))
        return f"CELLS {body}"
    if isinstance(spec, PunchedSquareAnimal):
        body = ";".join(f"({x},{y})" for x, y in sorted(spec.removed))
        return f"PUNCHED {spec.n} REMOVED {body}"
    raise InvalidAnimal(f"unknown animal spec {spec!r}")


def make_animal(spec: AnimalSpec | str) -> Polyomino:
    """Build an animal from a spec object or a descriptor string."""
    if isinstance(spec, str):
        spec = parse_animal(spec)
    return build_animal(spec)


# --- punching --------------------------------------------------------------


class PieceClass(enum.Enum):
    INNER = "inner"
    OUTER = "outer"


def punch(animal: Polyomino, piece: Iterable[Cell]) -> Polyomino:
    """Remove ``piece`` (cells in the animal's own frame) from the animal.

    Raises DisconnectedResult if the remainder falls apart, InvalidAnimal if
    the piece is not a proper nonempty subset.
    """
    piece_set = frozenset(piece)
    if not piece_set:
        raise InvalidAnimal("piece to punch must be nonempty")
    if not piece_set <= animal.cells:
        raise InvalidAnimal("piece must be a subset of the animal's cells")
    rest = animal.cells - piece_set
    if not rest:
        raise InvalidAnimal("cannot punch the whole animal away")
    if not is_connected(rest):
        raise DisconnectedResult("punching this piece disconnects the animal")
    return Polyomino.from_cells(rest)


def classify_piece(animal: Polyomino, piece: Iterable[Cell]) -> PieceClass:
    """Outer iff a second copy of animal-minus-piece, disjoint from the first,
    can overlay part of the removed piece.

    The remainder stays in the animal's frame; the piece's position relative
    to it matters. Candidate copies are anchored on the piece's cells, which
    enumerates every placement intersecting the piece.
    """
    piece_set = frozenset(piece)
    remainder = punch(animal, piece_set)  # validates the piece
    # Keep the remainder at its true position inside the animal, not
    # re-normalized: punch() canonicalizes, so recompute directly.
    rest = animal.cells - piece_set
    for _, shape in orientations(remainder):
        shape_cells = tuple(shape)
        for tx, ty in piece_set:
            for sx, sy in shape_cells:
                dx, dy = tx - sx, ty - sy
                if all((x + dx, y + dy) not in rest for x, y in shape_cells):
                    return PieceClass.OUTER
    return PieceClass.INNER


def size_witnesses(n: int) -> tuple[AnimalSpec, AnimalSpec]:
    """(cannibal, non-cannibal) animal specs with exactly ``n`` cells each.

    Defined for n >= 5: below that every animal is non-cannibal. The
    non-cannibal witness is the 1 x n rectangle. The cannibal witness is the
    thin U of width n-2 (which has n cells), except at n = 6 where that U is
    the one open case and the chain of two Els stands in.
    """
    if n < 5:
        raise InvalidAnimal("size witnesses exist for n >= 5 only")
    cannibal: AnimalSpec
    if n == 6:
        cannibal = LChainAnimal(2)
    else:
        cannibal = UAnimal(2, n - 2, 1)
    return cannibal, RectAnimal(1, n)
