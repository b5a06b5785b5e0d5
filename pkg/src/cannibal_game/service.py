"""HTTP session service for human-vs-engine play.

Sessions live in memory; each one holds a game state, the engine strategy for
the non-human side, and a lock so concurrent move posts serialize (the loser
of the race gets a 409). Engine replies are computed synchronously inside the
move request, and at creation time when the engine plays Alice.
"""

from __future__ import annotations

import random
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .alice_strategies import CaseNotCovered
from .animals import InvalidAnimal, make_animal, orientations, parse_animal
from .bob_strategies import (
    BlockPartition,
    PairingBob,
    StrategyFalsified,
    UnsupportedAnimal,
    partition_for,
)
from .engine import (
    ALICE,
    ALICE_WON,
    BOB,
    BOB_WON,
    GameFinished,
    GameState,
    NotYourTurn,
    ONGOING,
    ParseError,
    Placement,
    Rect,
    RuleViolation,
    decode_record,
    encode_record,
    new_game,
)
from .harness import ALICE_IDS, BOB_IDS, AdjacentBlockerBob, make_strategy
from .solver import SolveConfig, best_move

SOLVER_CELL_LIMIT = 24  # exact search stays interactive below this


class CreateGame(BaseModel):
    animal: str
    human_side: str  # "alice" | "bob"
    engine: Optional[str] = None
    board: Optional[str] = None  # "WxH", omit for the infinite board
    seed: int = 0


class MoveBody(BaseModel):
    type: str  # "cell" | "placement" | "pass"
    x: Optional[int] = None
    y: Optional[int] = None
    orientation: Optional[int] = None
    dx: Optional[int] = None
    dy: Optional[int] = None


class ReplayBody(BaseModel):
    record: str


@dataclass
class Session:
    session_id: str
    state: GameState
    human_side: str  # engine letter "A" | "B"
    engine_id: str
    engine: Any
    seed: int
    partition: Optional[BlockPartition] = None
    last_engine_move: Optional[dict] = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _parse_board(text: Optional[str]) -> Optional[Rect]:
    if text is None or text == "" or text == "infinite":
        return None
    try:
        w, h = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise HTTPException(400, {"reason": "BadBoard", "message": f"bad board {text!r}, expected WxH"})
    if w < 1 or h < 1:
        raise HTTPException(400, {"reason": "BadBoard", "message": "board sides must be positive"})
    return Rect(0, w - 1, 0, h - 1)


_SIDE = {"alice": ALICE, "a": ALICE, "bob": BOB, "b": BOB}
_LONG = {ALICE: "alice", BOB: "bob"}


def _engine_move_json(state: GameState, move) -> dict:
    kind, payload = move
    if kind == ALICE:
        return {"type": "cell", "x": payload[0], "y": payload[1]}
    if kind == BOB:
        cells = [[x, y] for x, y in state.placement_cells(payload)]
        return {
            "type": "placement",
            "orientation": payload.orientation,
            "dx": payload.dx,
            "dy": payload.dy,
            "cells": cells,
        }
    return {"type": "pass"}


def _run_engine(session: Session) -> None:
    """Let the engine move while it is on turn. Raises on strategy failure."""
    state = session.state
    engine_side = BOB if session.human_side == ALICE else ALICE
    while state.status == ONGOING and state.to_move == engine_side:
        mv = session.engine.move(state)
        if engine_side == ALICE:
            state.apply_alice(mv)
        elif mv is None:
            state.apply_bob_pass()
        else:
            state.apply_bob(mv)
        session.last_engine_move = _engine_move_json(state, state.history[-1])


def _cells_json(state: GameState) -> list[dict]:
    return [
        {"x": x, "y": y, "owner": owner, "ply": ply}
        for (x, y), (owner, ply) in sorted(
            state.occupied.items(), key=lambda item: (item[1][1], item[0])
        )
    ]


def _bounds_json(bounds) -> Optional[dict]:
    if bounds is None:
        return None
    return {
        "x_min": bounds.x_min,
        "x_max": bounds.x_max,
        "y_min": bounds.y_min,
        "y_max": bounds.y_max,
        "width": bounds.width,
        "height": bounds.height,
    }


def _animal_json(state: GameState) -> dict:
    return {
        "descriptor": _descriptor_of(state),
        "size": state.animal.size,
        "diameter": state.animal.diameter,
    }


def _session_json(session: Session) -> dict:
    state = session.state
    animal = state.animal
    payload = {
        "session_id": session.session_id,
        "animal": _animal_json(state),
        "bounds": _bounds_json(state.bounds),
        "human_side": _LONG[session.human_side],
        "engine": session.engine_id,
        "to_move": _LONG[state.to_move] if state.status == ONGOING else None,
        "status": state.status,
        "win_reason": state.win_reason,
        "ply": state.ply,
        "alice_move_count": state.alice_move_count,
        "cells": _cells_json(state),
        "last_engine_move": session.last_engine_move,
        "orientations": [
            {"orientation": k, "cells": [[x, y] for x, y in sorted(shape)]}
            for k, shape in orientations(animal)
        ],
        "partition": None
        if session.partition is None
        else {
            "block_w": session.partition.block_w,
            "block_h": session.partition.block_h,
            "shift": session.partition.shift,
            "origin": list(session.partition.origin),
        },
    }
    return payload


def _descriptor_of(state: GameState) -> str:
    from .animals import format_animal

    return format_animal(state.animal_spec)


def _hint_for(session: Session) -> dict:
    """Suggested move for the human side, or null with a reason."""
    state = session.state
    if state.status != ONGOING:
        return {"move": None, "reason": "game is over"}
    if state.to_move != session.human_side:
        return {"move": None, "reason": "engine to move"}

    bounds = state.bounds
    # A fresh strategy object rebuilt from the full history; only history-
    # synced strategies qualify (the fast-square case machine does not).
    try:
        if session.human_side == ALICE:
            if bounds is not None and _free_cells(state) <= SOLVER_CELL_LIMIT:
                kind, payload = best_move(
                    state, SolveConfig(state.animal_spec, bounds)
                )
                if kind == ALICE and payload is not None:
                    return {"move": {"type": "cell", "x": payload[0], "y": payload[1]}}
            strategy = make_strategy(
                "alice:greedy", random.Random(session.seed), state.animal_spec, bounds
            )
            cell = strategy.move(state)
            return {"move": {"type": "cell", "x": cell[0], "y": cell[1]}}
        try:
            bob = PairingBob(state.animal_spec)
        except UnsupportedAnimal:
            bob = AdjacentBlockerBob()
        mv = bob.move(state)
        if mv is None:
            return {"move": {"type": "pass"}}
        return {
            "move": {
                "type": "placement",
                "orientation": mv.orientation,
                "dx": mv.dx,
                "dy": mv.dy,
                "cells": [[x, y] for x, y in state.placement_cells(mv)],
            }
        }
    except (StrategyFalsified, CaseNotCovered, ValueError) as exc:
        return {"move": None, "reason": str(exc)}


def _free_cells(state: GameState) -> int:
    return state.bounds.area - len(state.occupied)


def create_app() -> FastAPI:
    app = FastAPI(title="cannibal animal game", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def _get(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, {"reason": "UnknownSession", "message": f"no session {session_id}"})
        return session

    @app.post("/v1/games", status_code=201)
    def create_game(body: CreateGame):
        side = _SIDE.get(body.human_side.lower())
        if side is None:
            raise HTTPException(400, {"reason": "BadSide", "message": "human_side must be alice or bob"})
        try:
            spec = parse_animal(body.animal)
            make_animal(spec)
        except InvalidAnimal as exc:
            raise HTTPException(400, {"reason": "InvalidAnimal", "message": str(exc)})
        bounds = _parse_board(body.board)
        engine_id = body.engine or ("bob:pairing" if side == ALICE else "alice:greedy")
        engine_side_ids = BOB_IDS if side == ALICE else ALICE_IDS
        if engine_id.split("(")[0] not in engine_side_ids:
            raise HTTPException(
                400,
                {
                    "reason": "BadStrategy",
                    "message": f"engine for {'bob' if side == ALICE else 'alice'} must be one of {sorted(engine_side_ids)}",
                },
            )
        if engine_id == "bob:solver" and (
            bounds is None or bounds.area > SOLVER_CELL_LIMIT
        ):
            raise HTTPException(
                400,
                {
                    "reason": "BadStrategy",
                    "message": f"bob:solver is only exposed on boards of at most {SOLVER_CELL_LIMIT} cells",
                },
            )
        rng = random.Random(body.seed)
        try:
            engine = make_strategy(engine_id, rng, spec, bounds)
            state = new_game(spec, bounds, body.seed)
        except (UnsupportedAnimal, InvalidAnimal, ValueError) as exc:
            raise HTTPException(400, {"reason": type(exc).__name__, "message": str(exc)})
        partition = getattr(engine, "partition", None)
        session = Session(
            session_id=uuid.uuid4().hex,
            state=state,
            human_side=side,
            engine_id=engine_id,
            engine=engine,
            seed=body.seed,
            partition=partition,
        )
        with session.lock:
            _engine_guarded(session)
        with registry_lock:
            sessions[session.session_id] = session
        return _session_json(session)

    def _engine_guarded(session: Session) -> None:
        try:
            _run_engine(session)
        except (StrategyFalsified, CaseNotCovered) as exc:
            raise HTTPException(
                500,
                {
                    "reason": type(exc).__name__,
                    "message": str(exc),
                    "record": getattr(exc, "record", None),
                },
            )

    @app.get("/v1/games/{session_id}")
    def get_game(session_id: str):
        return _session_json(_get(session_id))

    @app.post("/v1/games/{session_id}/moves")
    def post_move(session_id: str, body: MoveBody):
        session = _get(session_id)
        with session.lock:
            state = session.state
            try:
                if state.status != ONGOING:
                    raise GameFinished(f"game is over ({state.status})")
                if state.to_move != session.human_side:
                    raise NotYourTurn("engine to move")
                if body.type == "cell":
                    if body.x is None or body.y is None:
                        raise HTTPException(422, {"reason": "BadMove", "message": "cell move needs x and y"})
                    state.apply_alice((body.x, body.y))
                elif body.type == "placement":
                    if body.orientation is None or body.dx is None or body.dy is None:
                        raise HTTPException(
                            422, {"reason": "BadMove", "message": "placement needs orientation, dx, dy"}
                        )
                    state.apply_bob(Placement(body.orientation, body.dx, body.dy))
                elif body.type == "pass":
                    state.apply_bob_pass()
                else:
                    raise HTTPException(422, {"reason": "BadMove", "message": f"unknown move type {body.type!r}"})
            except (NotYourTurn, GameFinished) as exc:
                raise HTTPException(409, {"reason": type(exc).__name__, "message": str(exc)})
            except RuleViolation as exc:
                raise HTTPException(422, {"reason": type(exc).__name__, "message": str(exc)})
            _engine_guarded(session)
            return _session_json(session)

    @app.get("/v1/games/{session_id}/record", response_class=PlainTextResponse)
    def get_record(session_id: str):
        session = _get(session_id)
        with session.lock:
            return encode_record(session.state)

    @app.get("/v1/games/{session_id}/hint")
    def get_hint(session_id: str):
        session = _get(session_id)
        with session.lock:
            return _hint_for(session)

    @app.post("/v1/replay")
    def replay(body: ReplayBody):
        """Stepwise positions of a record, so replay views never have to
        reconstruct game state client-side."""
        if len(body.record) > 500_000:
            raise HTTPException(422, {"reason": "BadRecord", "message": "record too large"})
        try:
            final = decode_record(body.record)
        except ParseError as exc:
            raise HTTPException(
                422, {"reason": "BadRecord", "message": str(exc), "line": exc.line}
            )
        state = new_game(final.animal_spec, final.bounds, final.seed)
        steps = [{"ply": 0, "status": state.status, "move": None, "cells": []}]
        for move in final.history:
            state.apply_move(move)
            steps.append(
                {
                    "ply": state.ply,
                    "status": state.status,
                    "move": _engine_move_json(state, move),
                    "cells": _cells_json(state),
                }
            )
        return {
            "animal": _animal_json(state),
            "bounds": _bounds_json(state.bounds),
            "status": final.status,
            "win_reason": final.win_reason,
            "ply": final.ply,
            "steps": steps,
        }

    return app


app = create_app()
