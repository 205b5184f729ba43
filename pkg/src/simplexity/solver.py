"""Exhaustive perfect-play solver for small parameterizations.

Plain negamax over the full legal game tree, optionally memoized on the
position (move history is irrelevant to the value). Feasible only when the
``(2c)^remaining_turns`` tree-size bound fits the node budget; oversized
instances are refused outright rather than answered approximately.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from simplexity.engine import Board, Move, OutcomeKind, PieceColor, max_turns

DEFAULT_BUDGET = 20_000_000


class BudgetExceeded(RuntimeError):
    """The game tree bound exceeds the node budget; no answer is attempted."""


class GameValue(Enum):
    WHITE_WINS = "WhiteWins"
    RED_WINS = "RedWins"
    DRAW = "Draw"


@dataclass(frozen=True)
class Solution:
    """Game-theoretic value of a position under optimal play.

    ``plies_to_end`` counts remaining moves assuming the winner prefers the
    fastest win and the loser the slowest loss.
    """

    value: GameValue
    plies_to_end: int


def _check_budget(board: Board, budget: int) -> None:
    remaining = max_turns(board.params) - board.turn_count
    bound = (2 * board.params.cols) ** remaining
    if bound > budget:
        raise BudgetExceeded(
            f"game tree bound (2*{board.params.cols})^{remaining} = {bound} exceeds budget {budget}"
        )


def _negamax(board: Board, memo: Optional[dict]) -> tuple[int, int]:
    """(outcome, plies) from the side to move: +1 win, 0 draw, -1 loss."""
    if memo is not None:
        key = (bytes(board._grid), board.to_move)
        cached = memo.get(key)
        if cached is not None:
            return cached
    outcome = board.check_winner()
    if outcome.kind is OutcomeKind.WIN:
        result = (1 if outcome.winner is board.to_move else -1, 0)
    elif outcome.kind is OutcomeKind.DRAW:
        result = (0, 0)
    else:
        best_outcome = -2
        best_plies = 0
        for move in board.legal_moves():
            board.do_move(move)
            child_outcome, child_plies = _negamax(board, memo)
            board.undo_move()
            my_outcome = -child_outcome
            my_plies = child_plies + 1
            if my_outcome > best_outcome or (
                my_outcome == best_outcome
                and (
                    (my_outcome > 0 and my_plies < best_plies)
                    or (my_outcome < 0 and my_plies > best_plies)
                )
            ):
                best_outcome = my_outcome
                best_plies = my_plies
        result = (best_outcome, best_plies)
    if memo is not None:
        memo[key] = result
    return result


def _to_game_value(mover_outcome: int, to_move: PieceColor) -> GameValue:
    if mover_outcome == 0:
        return GameValue.DRAW
    winner = to_move if mover_outcome > 0 else to_move.other
    return GameValue.WHITE_WINS if winner is PieceColor.WHITE else GameValue.RED_WINS


def solve(board: Board, budget: int = DEFAULT_BUDGET, *, use_memo: bool = True) -> Solution:
    """Exact value of the position, or a :class:`BudgetExceeded` refusal."""
    _check_budget(board, budget)
    if board.check_winner().is_over:
        raise ValueError("position is already terminal")
    search_board = board.copy()
    mover_outcome, plies = _negamax(search_board, {} if use_memo else None)
    return Solution(_to_game_value(mover_outcome, board.to_move), plies)


def best_moves(board: Board, budget: int = DEFAULT_BUDGET, *, use_memo: bool = True) -> set[Move]:
    """All moves achieving the position's game value."""
    _check_budget(board, budget)
    if board.check_winner().is_over:
        raise ValueError("position is already terminal")
    search_board = board.copy()
    memo = {} if use_memo else None
    best_outcome, _ = _negamax(search_board, memo)
    moves: set[Move] = set()
    for move in search_board.legal_moves():
        search_board.do_move(move)
        child_outcome, _ = _negamax(search_board, memo)
        search_board.undo_move()
        if -child_outcome == best_outcome:
            moves.add(move)
    return moves


def immediately_losing_moves(board: Board) -> set[Move]:
    """Moves that lose within the next ply.

    Either the move itself completes a line in the opponent's favor (the
    shape-priority trap) or it leaves the opponent an immediate winning
    reply. A two-ply brute-force scan, independent of the full search.
    """
    mover = board.to_move
    search_board = board.copy()
    losing: set[Move] = set()
    for move in search_board.legal_moves():
        search_board.do_move(move)
        outcome = search_board.check_winner()
        if outcome.kind is OutcomeKind.WIN and outcome.winner is not mover:
            losing.add(move)
        elif not outcome.is_over:
            for reply in search_board.legal_moves():
                search_board.do_move(reply)
                reply_outcome = search_board.check_winner()
                search_board.undo_move()
                if reply_outcome.kind is OutcomeKind.WIN and reply_outcome.winner is mover.other:
                    losing.add(move)
                    break
        search_board.undo_move()
    return losing
