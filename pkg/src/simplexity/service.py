"""FastAPI service hosting live matches for the web UI.

One WebSocket connection drives one match. Human seats block on
``HumanMove`` frames; agent seats run through the same timed think
machinery as console matches, with their diagnostics streamed as
``Thinking`` frames while they run. Static assets for the browser UI are
served from the configured directory.
"""

from __future__ import annotations

import asyncio
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from pydantic import ValidationError

from simplexity.agents import (
    Agent,
    MatchConfig,
    SetupError,
    available_agents,
    create_agent,
)
from simplexity.engine import Board, Move, PieceColor, PieceShape, RulesError, new_board
from simplexity.match import MatchReason, execute_think
from simplexity.protocol import (
    ErrorMessage,
    HumanMoveMessage,
    NewMatchMessage,
    OutcomeModel,
    ResignMessage,
    ServerMessage,
    ThinkingMessage,
    client_message_adapter,
    state_from_board,
)

HUMAN_SEAT = "human"


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="simplexity match service")

    @app.get("/api/agents")
    def list_agents() -> dict:
        return {"agents": available_agents() + [HUMAN_SEAT]}

    @app.websocket("/ws")
    async def websocket_match(websocket: WebSocket) -> None:
        await websocket.accept()
        try:
            await _run_connection(websocket)
        except WebSocketDisconnect:
            pass  # client left; the match is abandoned
        except RuntimeError:
            # Connection torn down mid-send; nothing left to answer.
            pass

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


async def _send(websocket: WebSocket, message: ServerMessage) -> None:
    await websocket.send_text(message.model_dump_json())


async def _receive(websocket: WebSocket):
    raw = await websocket.receive_text()
    try:
        return client_message_adapter.validate_json(raw)
    except ValidationError as exc:
        return ErrorMessage(reason=f"bad message: {exc.errors()[0].get('msg', 'invalid')}")


async def _run_connection(websocket: WebSocket) -> None:
    message = await _receive(websocket)
    if isinstance(message, ErrorMessage):
        await _send(websocket, message)
        return
    if not isinstance(message, NewMatchMessage):
        await _send(websocket, ErrorMessage(reason="expected NewMatch first"))
        return

    try:
        params = message.params.to_game_params()
    except RulesError as exc:
        await _send(websocket, ErrorMessage(reason=str(exc)))
        return
    config = MatchConfig(params)

    seats: dict[PieceColor, Optional[Agent]] = {}
    names = {PieceColor.WHITE: message.white, PieceColor.RED: message.red}
    try:
        for color, (name, raw_params) in {
            PieceColor.WHITE: (message.white, message.white_params),
            PieceColor.RED: (message.red, message.red_params),
        }.items():
            if name == HUMAN_SEAT:
                seats[color] = None
                names[color] = "Human"
            else:
                agent = create_agent(name, raw_params, config)
                seats[color] = agent
                names[color] = agent.display_name()
    except SetupError as exc:
        await _send(websocket, ErrorMessage(reason=str(exc)))
        return

    board = new_board(params)
    await _send(websocket, state_from_board(board))

    final_outcome: Optional[OutcomeModel] = None
    while final_outcome is None:
        outcome = board.check_winner()
        if outcome.is_over:
            break
        mover = board.to_move
        agent = seats[mover]
        if agent is None:
            final_outcome = await _human_turn(websocket, board, mover, names)
        else:
            final_outcome = await _agent_turn(websocket, board, mover, agent, names, params.time_limit_ms)

    if final_outcome is not None:
        await _send(websocket, state_from_board(board, outcome_override=final_outcome))
    # After the game ends, answer any further moves with errors until the
    # client disconnects.
    while True:
        message = await _receive(websocket)
        if isinstance(message, ErrorMessage):
            await _send(websocket, message)
        else:
            await _send(websocket, ErrorMessage(reason="match is over"))


async def _human_turn(
    websocket: WebSocket,
    board: Board,
    mover: PieceColor,
    names: dict[PieceColor, str],
) -> Optional[OutcomeModel]:
    """Wait for a valid HumanMove; returns a final outcome on resign."""
    while True:
        message = await _receive(websocket)
        if isinstance(message, ErrorMessage):
            await _send(websocket, message)
            continue
        if isinstance(message, ResignMessage):
            return OutcomeModel(
                status="Win",
                winner=mover.other.value,
                reason="Resigned",
            )
        if isinstance(message, NewMatchMessage):
            await _send(websocket, ErrorMessage(reason="match already running"))
            continue
        assert isinstance(message, HumanMoveMessage)
        if not 0 <= message.column < board.params.cols:
            await _send(websocket, ErrorMessage(reason="column out of range"))
            continue
        move = Move(
            message.column,
            PieceShape.ROUND if message.shape == "round" else PieceShape.SQUARE,
        )
        if not board.is_legal(move):
            await _send(websocket, ErrorMessage(reason=f"illegal move {move.to_text()}"))
            continue
        board.do_move(move)
        await _send(websocket, state_from_board(board, last_move=move.to_text()))
        return None


async def _agent_turn(
    websocket: WebSocket,
    board: Board,
    mover: PieceColor,
    agent: Agent,
    names: dict[PieceColor, str],
    time_limit_ms: int,
) -> Optional[OutcomeModel]:
    """Run one timed agent think, streaming Thinking frames as they arrive."""
    loop = asyncio.get_running_loop()
    info_queue: asyncio.Queue[str] = asyncio.Queue()
    agent.bind_info_sink(lambda text: loop.call_soon_threadsafe(info_queue.put_nowait, text))
    think_task = asyncio.create_task(
        asyncio.to_thread(execute_think, agent, board.copy(), time_limit_ms)
    )
    try:
        while True:
            info_task = asyncio.create_task(info_queue.get())
            done, _ = await asyncio.wait({think_task, info_task}, return_when=asyncio.FIRST_COMPLETED)
            if info_task in done:
                await _send(websocket, _thinking(names[mover], info_task.result()))
                continue
            info_task.cancel()
            break
        while not info_queue.empty():
            await _send(websocket, _thinking(names[mover], info_queue.get_nowait()))
    finally:
        agent.bind_info_sink(None)
    report = think_task.result()

    def forfeit(reason: MatchReason) -> OutcomeModel:
        return OutcomeModel(status="Win", winner=mover.other.value, reason=reason.value)

    if report.error is not None:
        return forfeit(MatchReason.OPPONENT_EXCEPTION)
    if report.timed_out or report.abandoned:
        return forfeit(MatchReason.OPPONENT_TIMEOUT)
    if report.future is None or report.future.is_no_move:
        return forfeit(MatchReason.OPPONENT_INVALID_MOVE)
    move = report.future.move
    if not board.is_legal(move):
        return forfeit(MatchReason.OPPONENT_INVALID_MOVE)
    board.do_move(move)
    await _send(websocket, state_from_board(board, last_move=move.to_text()))
    return None


def _thinking(agent_name: str, text: str) -> ThinkingMessage:
    return ThinkingMessage(agent=agent_name, info=text)
