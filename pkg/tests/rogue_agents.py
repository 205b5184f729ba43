"""Deliberately misbehaving agents for exercising match loss conditions."""

from __future__ import annotations

import time

from simplexity.agents import Agent, CancellationToken, FutureMove
from simplexity.engine import Board, Move, PieceShape


class ThrowingAgent(Agent):
    """Raises from think; must lose with OpponentException."""

    def setup(self, params_string, config):
        self.config = config

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        raise RuntimeError("agent blew up")


class SleepingAgent(Agent):
    """Ignores cancellation and sleeps ten time limits; must be abandoned."""

    def setup(self, params_string, config):
        self.config = config

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        time.sleep(self.config.time_limit_ms / 1000.0 * 10)
        return FutureMove.decided(board.legal_moves()[0])


class CooperativeSlowAgent(Agent):
    """Waits for cancellation, then answers inside the grace window.

    The decided move still arrives after the time limit, which is a
    timeout loss by the rules.
    """

    def setup(self, params_string, config):
        self.config = config

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        cancel.wait()
        return FutureMove.decided(board.legal_moves()[0])


class NoMoveAgent(Agent):
    """Returns the no-move sentinel without being cancelled (a forfeit)."""

    def setup(self, params_string, config):
        self.config = config

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        return FutureMove.NO_MOVE


class IllegalMoveAgent(Agent):
    """Returns a move outside the board."""

    def setup(self, params_string, config):
        self.config = config

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        return FutureMove.decided(Move(-1, PieceShape.ROUND))


class RecordingAgent(Agent):
    """Plays like the wrapped agent while recording what think sees."""

    def __init__(self, inner: Agent):
        super().__init__()
        self.inner = inner
        self.outcomes = []

    def setup(self, params_string, config):
        self.config = config
        self.inner.setup(params_string, config)

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        self.outcomes.append(board.check_winner().kind)
        return self.inner.think(board, cancel)

    def display_name(self) -> str:
        return self.inner.display_name()
