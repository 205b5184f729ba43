"""Parameterized Simplexity board-game AI framework."""

from simplexity.engine import (
    Board,
    GameParams,
    Move,
    Outcome,
    OutcomeKind,
    Piece,
    PieceColor,
    PieceShape,
    RulesError,
    decode_board,
    encode_board,
    max_turns,
    new_board,
    win_corridors,
)

__all__ = [
    "Board",
    "GameParams",
    "Move",
    "Outcome",
    "OutcomeKind",
    "Piece",
    "PieceColor",
    "PieceShape",
    "RulesError",
    "decode_board",
    "encode_board",
    "max_turns",
    "new_board",
    "win_corridors",
]
