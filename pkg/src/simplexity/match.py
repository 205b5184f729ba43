"""Match controller: the timed turn loop and its loss conditions.

One match pits a White agent against a Red agent. Each turn the controller
copies the board, runs the mover's ``think`` on a worker thread, signals
cancellation once the time limit expires and abandons the thread at a hard
deadline shortly after. An agent loses immediately when it throws, exceeds
the time limit (even if a move arrives inside the grace window), or returns
an illegal move or an unrequested no-move.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Union

from simplexity.agents import Agent, CancellationToken, FutureMove
from simplexity.engine import (
    Board,
    GameParams,
    Move,
    Outcome,
    OutcomeKind,
    PieceColor,
    encode_board,
    new_board,
)


class MatchReason(Enum):
    LINE_WIN = "LineWin"
    OPPONENT_EXCEPTION = "OpponentException"
    OPPONENT_TIMEOUT = "OpponentTimeout"
    OPPONENT_INVALID_MOVE = "OpponentInvalidMove"
    OPPONENT_SETUP_FAILURE = "OpponentSetupFailure"
    DRAW = "Draw"


@dataclass(frozen=True)
class TranscriptEntry:
    move: Move
    landing_row: int
    think_seconds: float


@dataclass
class MatchResult:
    """Outcome of one match; the transcript replays to the final board."""

    winner: Optional[PieceColor]
    reason: MatchReason
    transcript: list[TranscriptEntry]
    final_board_text: str
    white_name: str = "White"
    red_name: str = "Red"

    @property
    def is_draw(self) -> bool:
        return self.winner is None


# Event stream emitted by the controller; listeners are plain callables
# invoked on the controller's thread and must not block.

@dataclass(frozen=True)
class MatchStart:
    params: GameParams
    white_name: str
    red_name: str
    timestamp: float = field(default_factory=time.time)


@dataclass(frozen=True)
class MoveChosen:
    color: PieceColor
    move: Move
    landing_row: int
    think_seconds: float
    timestamp: float = field(default_factory=time.time)


@dataclass(frozen=True)
class BoardUpdated:
    board_text: str
    timestamp: float = field(default_factory=time.time)


@dataclass(frozen=True)
class ThinkingInfo:
    agent: str
    text: str
    timestamp: float = field(default_factory=time.time)


@dataclass(frozen=True)
class MatchEnd:
    result: MatchResult
    timestamp: float = field(default_factory=time.time)


MatchEvent = Union[MatchStart, MoveChosen, BoardUpdated, ThinkingInfo, MatchEnd]
MatchListener = Callable[[MatchEvent], None]


class HarnessError(RuntimeError):
    """An internal failure of the match harness itself (not an agent loss)."""


def grace_ms(time_limit_ms: int) -> int:
    """Extra time granted for a cancelled think to unwind: max(50ms, 10%)."""
    return max(50, time_limit_ms // 10)


@dataclass
class ThinkReport:
    """What happened when one think call was executed."""

    future: Optional[FutureMove]
    error: Optional[BaseException]
    elapsed: float
    timed_out: bool
    abandoned: bool


def execute_think(agent: Agent, board: Board, time_limit_ms: int, *, untimed: bool = False) -> ThinkReport:
    """Run one think call on its own thread under the time limit.

    ``untimed`` seats (interactive humans) run inline with no deadline.
    A thread still alive at the hard deadline is abandoned as a daemon;
    the board it holds is a private copy, so the match state stays safe.
    """
    cancel = CancellationToken()
    box: dict[str, object] = {}

    def work() -> None:
        try:
            box["future"] = agent.think(board, cancel)
        except BaseException as exc:  # agent failures become match losses
            box["error"] = exc

    start = time.perf_counter()
    if untimed:
        work()
        return ThinkReport(
            future=box.get("future"),
            error=box.get("error"),
            elapsed=time.perf_counter() - start,
            timed_out=False,
            abandoned=False,
        )
    thread = threading.Thread(target=work, name=f"think-{agent.display_name()}", daemon=True)
    thread.start()
    thread.join(time_limit_ms / 1000.0)
    timed_out = thread.is_alive()
    if timed_out:
        cancel.cancel()
        thread.join(grace_ms(time_limit_ms) / 1000.0)
    return ThinkReport(
        future=box.get("future"),
        error=box.get("error"),
        elapsed=time.perf_counter() - start,
        timed_out=timed_out,
        abandoned=thread.is_alive(),
    )


def forfeit_result(winner: Optional[PieceColor], reason: MatchReason, white_name: str, red_name: str, params: GameParams) -> MatchResult:
    """A result for a match decided without play (setup failure)."""
    return MatchResult(
        winner=winner,
        reason=reason,
        transcript=[],
        final_board_text=encode_board(new_board(params)),
        white_name=white_name,
        red_name=red_name,
    )


def run_match(
    params: GameParams,
    white: Agent,
    red: Agent,
    listeners: Iterable[MatchListener] = (),
) -> MatchResult:
    """Play one match to completion and return its result.

    Both agents must have completed setup. Loss conditions are results,
    not exceptions; only harness bugs raise.
    """
    listeners = list(listeners)
    board = new_board(params)
    seats = {PieceColor.WHITE: white, PieceColor.RED: red}
    names = {PieceColor.WHITE: white.display_name(), PieceColor.RED: red.display_name()}
    transcript: list[TranscriptEntry] = []
    pending_info: list[tuple[str, str]] = []

    def emit(event: MatchEvent) -> None:
        for listener in listeners:
            listener(event)

    def flush_info() -> None:
        while pending_info:
            agent_name, text = pending_info.pop(0)
            emit(ThinkingInfo(agent=agent_name, text=text))

    for color, agent in seats.items():
        agent.bind_info_sink(lambda text, _name=names[color]: pending_info.append((_name, text)))

    emit(MatchStart(params=params, white_name=names[PieceColor.WHITE], red_name=names[PieceColor.RED]))

    def finish(winner: Optional[PieceColor], reason: MatchReason) -> MatchResult:
        result = MatchResult(
            winner=winner,
            reason=reason,
            transcript=transcript,
            final_board_text=encode_board(board),
            white_name=names[PieceColor.WHITE],
            red_name=names[PieceColor.RED],
        )
        emit(MatchEnd(result=result))
        return result

    try:
        while True:
            outcome = board.check_winner()
            if outcome.kind is OutcomeKind.WIN:
                return finish(outcome.winner, MatchReason.LINE_WIN)
            if outcome.kind is OutcomeKind.DRAW:
                return finish(None, MatchReason.DRAW)

            mover = board.to_move
            agent = seats[mover]
            report = execute_think(
                agent,
                board.copy(),
                params.time_limit_ms,
                untimed=getattr(agent, "untimed", False),
            )
            flush_info()
            if report.error is not None:
                return finish(mover.other, MatchReason.OPPONENT_EXCEPTION)
            if report.timed_out or report.abandoned:
                return finish(mover.other, MatchReason.OPPONENT_TIMEOUT)
            future = report.future
            if future is None or future.is_no_move:
                # No-move is only legal after cancellation, which never
                # happened here: the agent forfeits.
                return finish(mover.other, MatchReason.OPPONENT_INVALID_MOVE)
            move = future.move
            if not board.is_legal(move):
                return finish(mover.other, MatchReason.OPPONENT_INVALID_MOVE)
            landing_row = board.do_move(move)
            transcript.append(TranscriptEntry(move, landing_row, report.elapsed))
            emit(MoveChosen(color=mover, move=move, landing_row=landing_row, think_seconds=report.elapsed))
            emit(BoardUpdated(board_text=encode_board(board)))
    except Exception as exc:
        raise HarnessError(f"match harness failed: {exc}") from exc


def replay_transcript(params: GameParams, transcript: Iterable[TranscriptEntry]) -> tuple[Board, Outcome]:
    """Re-apply a transcript from an empty board; used for verification."""
    board = new_board(params)
    for entry in transcript:
        landing = board.do_move(entry.move)
        if landing != entry.landing_row:
            raise HarnessError(
                f"transcript replay diverged: {entry.move.to_text()} landed at {landing}, recorded {entry.landing_row}"
            )
    return board, board.check_winner()
