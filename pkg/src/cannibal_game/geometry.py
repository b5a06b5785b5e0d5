"""Cells of the square grid and the dihedral symmetry group acting on them.

Cells are plain ``(x, y)`` integer tuples. The eight symmetries of the grid
are indexed 0..7: element ``k`` mirrors across the y axis when ``k >= 4`` and
then applies ``k % 4`` quarter-turns counterclockwise. Index 0 is the
identity. Composition and inverses are derived mechanically by probing the
action on basis vectors, so the tables cannot drift from ``apply_d4``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

Cell = tuple[int, int]

D4_ELEMENTS = tuple(range(8))
IDENTITY = 0


def apply_d4(k: int, cell: Cell) -> Cell:
    """Apply symmetry ``k`` to a cell (rotation about the origin)."""
    x, y = cell
    if k >= 4:
        x = -x
    r = k & 3
    if r == 0:
        return (x, y)
    if r == 1:
        return (-y, x)
    if r == 2:
        return (-x, -y)
    return (y, -x)


@lru_cache(maxsize=1)
def _tables() -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    probes = {(apply_d4(k, (1, 0)), apply_d4(k, (0, 1))): k for k in D4_ELEMENTS}
    compose = []
    for a in D4_ELEMENTS:
        row = []
        for b in D4_ELEMENTS:
            image = (
                apply_d4(a, apply_d4(b, (1, 0))),
                apply_d4(a, apply_d4(b, (0, 1))),
            )
            row.append(probes[image])
        compose.append(tuple(row))
    inverse = tuple(
        next(b for b in D4_ELEMENTS if compose[a][b] == IDENTITY) for a in D4_ELEMENTS
    )
    return tuple(compose), inverse


def compose_d4(a: int, b: int) -> int:
    """The element acting as ``b`` first, then ``a``."""
    return _tables()[0][a][b]


def inverse_d4(k: int) -> int:
    return _tables()[1][k]


def map_cells(k: int, cells: Iterable[Cell]) -> frozenset[Cell]:
    return frozenset(apply_d4(k, c) for c in cells)


def translate(cells: Iterable[Cell], dx: int, dy: int) -> frozenset[Cell]:
    return frozenset((x + dx, y + dy) for x, y in cells)


def normalize(cells: Iterable[Cell]) -> frozenset[Cell]:
    """Translate a nonempty cell set so min x and min y are both zero."""
    pts = list(cells)
    dx = min(x for x, _ in pts)
    dy = min(y for _, y in pts)
    if dx == 0 and dy == 0:
        return frozenset(pts)
    return frozenset((x - dx, y - dy) for x, y in pts)


def bounding_box(cells: Iterable[Cell]) -> tuple[int, int, int, int]:
    """(x_min, y_min, x_max, y_max) of a nonempty cell set."""
    xs = []
    ys = []
    for x, y in cells:
        xs.append(x)
        ys.append(y)
    return (min(xs), min(ys), max(xs), max(ys))


def is_connected(cells: Iterable[Cell]) -> bool:
    """Edge-connectivity of a cell set. Empty sets count as connected."""
    todo = set(cells)
    if not todo:
        return True
    stack = [todo.pop()]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in todo:
                todo.remove(nb)
                stack.append(nb)
    return not todo
