"""Wire protocol for live play: tagged JSON messages over a WebSocket.

Client to server: ``NewMatch``, ``HumanMove``, ``Resign``.
Server to client: ``State``, ``Thinking``, ``Error``.
One JSON object per frame, discriminated by the ``type`` field.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter

from simplexity.engine import Board, GameParams, Outcome, OutcomeKind, encode_board


class ParamsModel(BaseModel):
    """Game parameters as they travel on the wire (CLI flag names)."""

    rows: int = 6
    cols: int = 7
    win: int = 4
    squares: int = 11
    rounds: int = 10
    time_limit_ms: int = 200

    def to_game_params(self) -> GameParams:
        return GameParams(
            rows=self.rows,
            cols=self.cols,
            win_length=self.win,
            squares_per_player=self.squares,
            rounds_per_player=self.rounds,
            time_limit_ms=self.time_limit_ms,
        )

    @classmethod
    def from_game_params(cls, params: GameParams) -> "ParamsModel":
        return cls(
            rows=params.rows,
            cols=params.cols,
            win=params.win_length,
            squares=params.squares_per_player,
            rounds=params.rounds_per_player,
            time_limit_ms=params.time_limit_ms,
        )


class NewMatchMessage(BaseModel):
    type: Literal["NewMatch"] = "NewMatch"
    white: str
    red: str
    white_params: str = ""
    red_params: str = ""
    params: ParamsModel = Field(default_factory=ParamsModel)


class HumanMoveMessage(BaseModel):
    type: Literal["HumanMove"] = "HumanMove"
    column: int
    shape: Literal["round", "square"]


class ResignMessage(BaseModel):
    type: Literal["Resign"] = "Resign"


ClientMessage = Annotated[
    Union[NewMatchMessage, HumanMoveMessage, ResignMessage],
    Field(discriminator="type"),
]

client_message_adapter: TypeAdapter = TypeAdapter(ClientMessage)


class OutcomeModel(BaseModel):
    status: Literal["InProgress", "Draw", "Win"]
    winner: Optional[Literal["White", "Red"]] = None
    line: Optional[list[tuple[int, int]]] = None
    reason: Optional[str] = None

    @classmethod
    def from_outcome(cls, outcome: Outcome, reason: Optional[str] = None) -> "OutcomeModel":
        if outcome.kind is OutcomeKind.WIN:
            return cls(
                status="Win",
                winner=outcome.winner.value,
                line=[tuple(position) for position in outcome.line],
                reason=reason or "LineWin",
            )
        if outcome.kind is OutcomeKind.DRAW:
            return cls(status="Draw", reason=reason or "Draw")
        return cls(status="InProgress")


class ReservesModel(BaseModel):
    round: int
    square: int


class StateMessage(BaseModel):
    """Full board snapshot sent after every applied move."""

    type: Literal["State"] = "State"
    board: str
    to_move: Literal["White", "Red"]
    legal_moves: list[str]
    last_move: Optional[str] = None
    outcome: OutcomeModel
    reserves: dict[Literal["White", "Red"], ReservesModel]
    params: ParamsModel


class ThinkingMessage(BaseModel):
    type: Literal["Thinking"] = "Thinking"
    agent: str
    info: str


class ErrorMessage(BaseModel):
    type: Literal["Error"] = "Error"
    reason: str


ServerMessage = Union[StateMessage, ThinkingMessage, ErrorMessage]


def state_from_board(
    board: Board,
    last_move: Optional[str] = None,
    outcome_reason: Optional[str] = None,
    outcome_override: Optional[OutcomeModel] = None,
) -> StateMessage:
    """Snapshot a board into a State frame."""
    from simplexity.engine import PieceColor, PieceShape

    outcome = outcome_override or OutcomeModel.from_outcome(board.check_winner(), outcome_reason)
    legal = [] if outcome.status != "InProgress" else [move.to_text() for move in board.legal_moves()]
    return StateMessage(
        board=encode_board(board),
        to_move=board.to_move.value,
        legal_moves=legal,
        last_move=last_move,
        outcome=outcome,
        reserves={
            color.value: ReservesModel(
                round=board.reserve(color, PieceShape.ROUND),
                square=board.reserve(color, PieceShape.SQUARE),
            )
            for color in PieceColor
        },
        params=ParamsModel.from_game_params(board.params),
    )
