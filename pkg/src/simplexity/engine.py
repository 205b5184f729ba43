"""Rules, state and combinatorics of the parameterized Simplexity game.

Two players drop pieces into columns of an r x c grid. Pieces have a color
(White or Red) and a shape (round or square). White moves first and wins
with a line of ``win_length`` round pieces or of white pieces; Red wins
with squares or red pieces. Shape outranks color, so completing a line of
the opponent's winning shape loses the game even if the pieces are yours.

Coordinates are bottom-origin: row 0 is the lowest row, column 0 the
leftmost. Boards are plain single-threaded values; copy them to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator, Optional


class RulesError(ValueError):
    """Raised for invalid parameters, illegal moves or malformed board text."""


class PieceColor(Enum):
    WHITE = "White"
    RED = "Red"

    @property
    def other(self) -> "PieceColor":
        return PieceColor.RED if self is PieceColor.WHITE else PieceColor.WHITE

    @property
    def winning_shape(self) -> "PieceShape":
        """White wins with round lines, Red with square lines."""
        return PieceShape.ROUND if self is PieceColor.WHITE else PieceShape.SQUARE


class PieceShape(Enum):
    ROUND = "round"
    SQUARE = "square"

    @property
    def other(self) -> "PieceShape":
        return PieceShape.SQUARE if self is PieceShape.ROUND else PieceShape.ROUND


@dataclass(frozen=True)
class Piece:
    color: PieceColor
    shape: PieceShape


# Cells hold small integer codes internally; 0 is empty. Odd codes are round,
# codes <= 2 are white, so shape/color tests in hot loops stay on ints.
_EMPTY = 0
_CODE_TO_PIECE = {
    1: Piece(PieceColor.WHITE, PieceShape.ROUND),
    2: Piece(PieceColor.WHITE, PieceShape.SQUARE),
    3: Piece(PieceColor.RED, PieceShape.ROUND),
    4: Piece(PieceColor.RED, PieceShape.SQUARE),
}
_PIECE_TO_CODE = {piece: code for code, piece in _CODE_TO_PIECE.items()}
_CODE_TO_CHAR = {0: ".", 1: "w", 2: "W", 3: "r", 4: "R"}
_CHAR_TO_CODE = {char: code for code, char in _CODE_TO_CHAR.items()}


def _piece_code(color: PieceColor, shape: PieceShape) -> int:
    code = 1 if shape is PieceShape.ROUND else 2
    if color is PieceColor.RED:
        code += 2
    return code


@dataclass(frozen=True)
class GameParams:
    """The five rule parameters plus the per-move time limit.

    Defaults are the regular Simplexity game: 6x7 board, lines of 4 to win,
    11 squares and 10 rounds per player, 200 ms per move.
    """

    rows: int = 6
    cols: int = 7
    win_length: int = 4
    squares_per_player: int = 11
    rounds_per_player: int = 10
    time_limit_ms: int = 200

    def __post_init__(self) -> None:
        if self.rows < 1:
            raise RulesError("rows must be >= 1")
        if self.cols < 1:
            raise RulesError("cols must be >= 1")
        if self.win_length < 1:
            raise RulesError("win_length must be >= 1")
        if self.squares_per_player < 0:
            raise RulesError("squares_per_player must be >= 0")
        if self.rounds_per_player < 0:
            raise RulesError("rounds_per_player must be >= 0")
        if self.squares_per_player + self.rounds_per_player < 1:
            raise RulesError("squares_per_player + rounds_per_player must be >= 1")
        if self.time_limit_ms <= 0:
            raise RulesError("time_limit_ms must be > 0")

    def initial_reserve(self, shape: PieceShape) -> int:
        if shape is PieceShape.SQUARE:
            return self.squares_per_player
        return self.rounds_per_player


def max_turns(params: GameParams) -> int:
    """Upper bound on game length: board capacity vs. total piece supply."""
    return min(
        params.rows * params.cols,
        2 * (params.squares_per_player + params.rounds_per_player),
    )


@dataclass(frozen=True)
class Move:
    """A (column, shape) choice for the side to move."""

    column: int
    shape: PieceShape

    def to_text(self) -> str:
        """Move notation used in logs and on the wire, e.g. ``3r``."""
        return f"{self.column}{'r' if self.shape is PieceShape.ROUND else 's'}"

    @classmethod
    def from_text(cls, text: str) -> "Move":
        text = text.strip()
        if len(text) < 2 or text[-1] not in ("r", "s"):
            raise RulesError(f"bad move notation: {text!r}")
        try:
            column = int(text[:-1])
        except ValueError:
            raise RulesError(f"bad move notation: {text!r}") from None
        shape = PieceShape.ROUND if text[-1] == "r" else PieceShape.SQUARE
        return cls(column, shape)


class OutcomeKind(Enum):
    IN_PROGRESS = "InProgress"
    DRAW = "Draw"
    WIN = "Win"


@dataclass(frozen=True)
class Outcome:
    """Result of a position scan: in progress, drawn, or won with a line."""

    kind: OutcomeKind
    winner: Optional[PieceColor] = None
    line: Optional[tuple[tuple[int, int], ...]] = None

    @classmethod
    def in_progress(cls) -> "Outcome":
        return cls(OutcomeKind.IN_PROGRESS)

    @classmethod
    def draw(cls) -> "Outcome":
        return cls(OutcomeKind.DRAW)

    @classmethod
    def win(cls, winner: PieceColor, line: tuple[tuple[int, int], ...]) -> "Outcome":
        return cls(OutcomeKind.WIN, winner, line)

    @property
    def is_over(self) -> bool:
        return self.kind is not OutcomeKind.IN_PROGRESS


@lru_cache(maxsize=None)
def _corridors(rows: int, cols: int, win_length: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All maximal straight lines of length >= win_length, each exactly once."""
    lines: list[tuple[tuple[int, int], ...]] = []
    if cols >= win_length:
        for row in range(rows):
            lines.append(tuple((row, col) for col in range(cols)))
    if rows >= win_length:
        for col in range(cols):
            lines.append(tuple((row, col) for row in range(rows)))
    # Up-right diagonals start on the bottom row or left column.
    for row, col in [(0, c) for c in range(cols)] + [(r, 0) for r in range(1, rows)]:
        length = min(rows - row, cols - col)
        if length >= win_length:
            lines.append(tuple((row + i, col + i) for i in range(length)))
    # Up-left diagonals start on the bottom row or right column.
    for row, col in [(0, c) for c in range(cols)] + [(r, cols - 1) for r in range(1, rows)]:
        length = min(rows - row, col + 1)
        if length >= win_length:
            lines.append(tuple((row + i, col - i) for i in range(length)))
    return tuple(lines)


def win_corridors(params: GameParams) -> list[tuple[tuple[int, int], ...]]:
    """Corridors (maximal lines) within which winning windows can exist."""
    return list(_corridors(params.rows, params.cols, params.win_length))


@lru_cache(maxsize=None)
def _win_windows(rows: int, cols: int, win_length: int) -> tuple[tuple[tuple[int, ...], tuple[tuple[int, int], ...]], ...]:
    """Sliding windows of length win_length over every corridor.

    Each entry pairs the window's flat grid indexes (for fast scanning)
    with its (row, col) positions (for reporting the winning line).
    """
    windows = []
    for corridor in _corridors(rows, cols, win_length):
        for start in range(len(corridor) - win_length + 1):
            positions = corridor[start:start + win_length]
            flat = tuple(row * cols + col for row, col in positions)
            windows.append((flat, positions))
    return tuple(windows)


class Board:
    """Full match state: grid, per-player reserves, history, side to move.

    Mutated strictly through :meth:`do_move` / :meth:`undo_move`, which keep
    gravity, conservation and side-to-move alternation intact. Equality is
    structural over grid, reserves and side to move; the move history is
    controller metadata and takes no part in comparisons.
    """

    __slots__ = ("params", "_grid", "_heights", "_reserves", "to_move", "history")

    def __init__(self, params: GameParams):
        self.params = params
        self._grid = [_EMPTY] * (params.rows * params.cols)
        self._heights = [0] * params.cols
        # Reserves indexed by piece code 1..4; slot 0 unused.
        self._reserves = [
            0,
            params.rounds_per_player,
            params.squares_per_player,
            params.rounds_per_player,
            params.squares_per_player,
        ]
        self.to_move = PieceColor.WHITE
        self.history: list[tuple[Move, int]] = []

    # ------------------------------------------------------------------
    # Inspection

    @property
    def turn_count(self) -> int:
        """Number of pieces on the grid (equals moves played from empty)."""
        return sum(self._heights)

    def piece_at(self, row: int, col: int) -> Optional[Piece]:
        code = self._grid[row * self.params.cols + col]
        return _CODE_TO_PIECE.get(code)

    @property
    def cells(self) -> tuple[tuple[Optional[Piece], ...], ...]:
        """The grid as rows of pieces, row 0 first (bottom)."""
        cols = self.params.cols
        return tuple(
            tuple(_CODE_TO_PIECE.get(self._grid[row * cols + col]) for col in range(cols))
            for row in range(self.params.rows)
        )

    def reserve(self, color: PieceColor, shape: PieceShape) -> int:
        return self._reserves[_piece_code(color, shape)]

    def column_height(self, col: int) -> int:
        return self._heights[col]

    def copy(self) -> "Board":
        board = Board.__new__(Board)
        board.params = self.params
        board._grid = self._grid[:]
        board._heights = self._heights[:]
        board._reserves = self._reserves[:]
        board.to_move = self.to_move
        board.history = self.history[:]
        return board

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Board):
            return NotImplemented
        return (
            self.params == other.params
            and self._grid == other._grid
            and self._reserves == other._reserves
            and self.to_move == other.to_move
        )

    def __hash__(self) -> int:
        return hash((self.params, bytes(self._grid), self.to_move))

    def __repr__(self) -> str:
        return f"<Board {self.params.rows}x{self.params.cols} turn={self.turn_count} to_move={self.to_move.value}>"

    # ------------------------------------------------------------------
    # Moves

    def legal_moves(self) -> list[Move]:
        """Every playable (column, shape), ascending column, round first."""
        moves: list[Move] = []
        rows = self.params.rows
        round_code = _piece_code(self.to_move, PieceShape.ROUND)
        has_round = self._reserves[round_code] > 0
        has_square = self._reserves[round_code + 1] > 0
        if not (has_round or has_square):
            return moves
        for col, height in enumerate(self._heights):
            if height >= rows:
                continue
            if has_round:
                moves.append(Move(col, PieceShape.ROUND))
            if has_square:
                moves.append(Move(col, PieceShape.SQUARE))
        return moves

    def is_legal(self, move: Move) -> bool:
        return (
            0 <= move.column < self.params.cols
            and self._heights[move.column] < self.params.rows
            and self._reserves[_piece_code(self.to_move, move.shape)] > 0
        )

    def do_move(self, move: Move) -> int:
        """Drop a piece of the side to move; returns the landing row.

        Rejects illegal moves with the reason and leaves the board unchanged.
        """
        if not 0 <= move.column < self.params.cols:
            raise RulesError(f"column {move.column} out of range 0..{self.params.cols - 1}")
        if self._heights[move.column] >= self.params.rows:
            raise RulesError(f"column {move.column} is full")
        code = _piece_code(self.to_move, move.shape)
        if self._reserves[code] <= 0:
            raise RulesError(f"{self.to_move.value} has no {move.shape.value} pieces left")
        landing_row = self._heights[move.column]
        self._grid[landing_row * self.params.cols + move.column] = code
        self._heights[move.column] = landing_row + 1
        self._reserves[code] -= 1
        self.history.append((move, landing_row))
        self.to_move = self.to_move.other
        return landing_row

    def undo_move(self) -> Move:
        """Remove the last move, restoring the board exactly."""
        if not self.history:
            raise RulesError("no moves to undo")
        move, landing_row = self.history.pop()
        mover = self.to_move.other
        self._grid[landing_row * self.params.cols + move.column] = _EMPTY
        self._heights[move.column] = landing_row
        self._reserves[_piece_code(mover, move.shape)] += 1
        self.to_move = mover
        return move

    # ------------------------------------------------------------------
    # Outcome

    def check_winner(self) -> Outcome:
        """Scan the position for a finished game.

        Window scan order is fixed: round-shape, square-shape, white-color,
        red-color. Shape windows strictly outrank color windows, so a line
        that is simultaneously four white pieces and four squares is a Red
        win. With no win, the game is drawn once the side to move has no
        legal move or the turn limit is reached.
        """
        grid = self._grid
        round_win = square_win = white_win = red_win = None
        params = self.params
        for flat, positions in _win_windows(params.rows, params.cols, params.win_length):
            first = grid[flat[0]]
            if not first:
                continue
            same_shape = True
            same_color = True
            for index in flat[1:]:
                code = grid[index]
                if not code:
                    same_shape = same_color = False
                    break
                if code & 1 != first & 1:
                    same_shape = False
                    if not same_color:
                        break
                if (code <= 2) != (first <= 2):
                    same_color = False
                    if not same_shape:
                        break
            if same_shape:
                if first & 1:
                    return Outcome.win(PieceColor.WHITE, positions)
                if square_win is None:
                    square_win = positions
            if same_color:
                if first <= 2:
                    if white_win is None:
                        white_win = positions
                elif red_win is None:
                    red_win = positions
        if square_win is not None:
            return Outcome.win(PieceColor.RED, square_win)
        if white_win is not None:
            return Outcome.win(PieceColor.WHITE, white_win)
        if red_win is not None:
            return Outcome.win(PieceColor.RED, red_win)
        if self.turn_count >= max_turns(params) or not self._has_any_move():
            return Outcome.draw()
        return Outcome.in_progress()

    def _has_any_move(self) -> bool:
        round_code = _piece_code(self.to_move, PieceShape.ROUND)
        if self._reserves[round_code] <= 0 and self._reserves[round_code + 1] <= 0:
            return False
        rows = self.params.rows
        return any(height < rows for height in self._heights)


def new_board(params: GameParams) -> Board:
    """An empty board with full reserves, White to move."""
    return Board(params)


def encode_board(board: Board) -> str:
    """Board text: one row per line, top row first, LF separated.

    Cell characters: ``.`` empty, ``w``/``W`` white round/square,
    ``r``/``R`` red round/square.
    """
    cols = board.params.cols
    lines = []
    for row in range(board.params.rows - 1, -1, -1):
        start = row * cols
        lines.append("".join(_CODE_TO_CHAR[code] for code in board._grid[start:start + cols]))
    return "\n".join(lines)


def decode_board(text: str, params: GameParams) -> Board:
    """Rebuild a board from its text form.

    The move history is not encoded; reserves are reconstructed by
    conservation and the side to move is inferred from the piece count
    (White moves first, so an even count means White to move). Rejects
    wrong dimensions, unknown characters, floating pieces and piece counts
    exceeding the initial supply.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if len(lines) != params.rows:
        raise RulesError(f"expected {params.rows} lines, got {len(lines)}")
    board = Board(params)
    counts = [0] * 5
    for line_index, line in enumerate(lines):
        if len(line) != params.cols:
            raise RulesError(
                f"line {line_index + 1}: expected {params.cols} characters, got {len(line)}"
            )
        row = params.rows - 1 - line_index
        for col, char in enumerate(line):
            code = _CHAR_TO_CODE.get(char)
            if code is None:
                raise RulesError(f"unknown cell character {char!r}")
            if code:
                board._grid[row * params.cols + col] = code
                counts[code] += 1
    for col in range(params.cols):
        height = 0
        seen_empty = False
        for row in range(params.rows):
            if board._grid[row * params.cols + col]:
                if seen_empty:
                    raise RulesError(f"gravity violated in column {col}")
                height = row + 1
            else:
                seen_empty = True
        board._heights[col] = height
    for code in range(1, 5):
        piece = _CODE_TO_PIECE[code]
        initial = params.initial_reserve(piece.shape)
        if counts[code] > initial:
            raise RulesError(
                f"{counts[code]} {piece.color.value} {piece.shape.value} pieces on grid "
                f"exceed the initial supply of {initial}"
            )
        board._reserves[code] = initial - counts[code]
    board.to_move = PieceColor.WHITE if sum(counts) % 2 == 0 else PieceColor.RED
    return board


def validate_board(board: Board) -> None:
    """Debug validator: gravity, conservation and bookkeeping invariants."""
    params = board.params
    for col in range(params.cols):
        height = 0
        for row in range(params.rows):
            occupied = board._grid[row * params.cols + col] != _EMPTY
            if occupied and row >= board._heights[col]:
                raise AssertionError(f"cell above recorded height in column {col}")
            if not occupied and row < board._heights[col]:
                raise AssertionError(f"gravity violated in column {col}")
            if occupied:
                height = row + 1
        if height != board._heights[col]:
            raise AssertionError(f"height bookkeeping wrong in column {col}")
    counts = [0] * 5
    for code in board._grid:
        counts[code] += 1
    for code in range(1, 5):
        piece = _CODE_TO_PIECE[code]
        initial = params.initial_reserve(piece.shape)
        if counts[code] + board._reserves[code] != initial:
            raise AssertionError(
                f"conservation broken for {piece.color.value} {piece.shape.value}: "
                f"{counts[code]} on grid + {board._reserves[code]} in reserve != {initial}"
            )
    if board.turn_count > max_turns(params):
        raise AssertionError("turn count exceeds the maximum")
    if board.history:
        if len(board.history) != board.turn_count:
            raise AssertionError("history length disagrees with piece count")
        expected = PieceColor.WHITE if board.turn_count % 2 == 0 else PieceColor.RED
        if board.to_move != expected:
            raise AssertionError("side to move disagrees with turn parity")


def centrality_weights(params: GameParams) -> list[float]:
    """Per-cell weight in [0, 1], highest at the grid's geometric center.

    Flat-indexed like the board grid; used by the center-biased heuristic.
    """
    center_row = (params.rows - 1) / 2
    center_col = (params.cols - 1) / 2
    max_dist = max(
        math.hypot(row - center_row, col - center_col)
        for row in (0, params.rows - 1)
        for col in (0, params.cols - 1)
    )
    weights = []
    for row in range(params.rows):
        for col in range(params.cols):
            dist = math.hypot(row - center_row, col - center_col)
            weights.append(1.0 if max_dist == 0 else 1.0 - dist / max_dist)
    return weights


def iter_pieces(board: Board) -> Iterator[tuple[int, int, Piece]]:
    """Yield (row, col, piece) for every occupied cell."""
    cols = board.params.cols
    for index, code in enumerate(board._grid):
        if code:
            yield index // cols, index % cols, _CODE_TO_PIECE[code]
