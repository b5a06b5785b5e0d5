"""Cannibal animal game: engine, strategies, solver, and play service.

Alice claims one grid cell per turn and wins by assembling a congruent copy
(rotations and reflections allowed) of a fixed polyomino, the animal. Bob
answers each turn by stamping a full non-overlapping copy of the same
animal. An animal is cannibal when Bob can deny Alice forever.
"""

from .animals import (
    AnimalSpec,
    ElAnimal,
    ExplicitAnimal,
    InvalidAnimal,
    LChainAnimal,
    PieceClass,
    Polyomino,
    PunchedSquareAnimal,
    RectAnimal,
    RingAnimal,
    UAnimal,
    build_animal,
    classify_piece,
    congruent,
    format_animal,
    make_animal,
    parse_animal,
    punch,
    size_witnesses,
)
from .engine import (
    ALICE,
    ALICE_WON,
    BOB,
    BOB_WON,
    ONGOING,
    PASS,
    Bounds,
    GameState,
    Placement,
    Rect,
    decode_record,
    encode_record,
    new_game,
)
from .bob_strategies import (
    BlockPartition,
    HoleTooShallow,
    PairingBob,
    StrategyFalsified,
    UnsupportedAnimal,
    canonical_placement,
    find_crack,
    pairing_move,
    partition_for,
    verify_partition_static,
)
from .alice_strategies import (
    BoundedHellyAlice,
    BoundingAlice,
    CaseNotCovered,
    FastSquareAlice,
    GreedyAlice,
    RandomAlice,
    bounded_rectangle_move,
    choose_N,
    fast_square_move,
    helly_cell,
    stab_sets,
)
from .solver import Outcome, SolveConfig, Solver, SolverBob, best_move, solve
from .harness import (
    Falsification,
    MatchReport,
    SeriesStats,
    make_strategy,
    run_match,
    run_series,
)

__version__ = "0.1.0"
