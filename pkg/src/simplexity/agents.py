"""Agent contract and the baseline agents shipped with the framework.

An agent is constructed without arguments, configured once through
:meth:`Agent.setup` with a raw parameter string, and then asked for moves
through :meth:`Agent.think`. ``think`` runs on its own thread with a board
copy it may mutate freely; it must poll the cancellation token and return
promptly (with :data:`FutureMove.NO_MOVE`) once cancellation is signalled.
"""

from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass
from typing import Callable, Optional, Type

from simplexity.engine import (
    Board,
    GameParams,
    Move,
    OutcomeKind,
    PieceColor,
    PieceShape,
    centrality_weights,
)

logger = logging.getLogger(__name__)

_NAME_SUFFIXES = ("aithinker", "thinkerai", "thinker")


class SetupError(ValueError):
    """Raised when an agent cannot parse its parameter string."""


class CancellationToken:
    """Monotone stop flag: starts unset, set at most once, cheap to poll."""

    __slots__ = ("_event",)

    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    def is_set(self) -> bool:
        return self._event.is_set()

    def wait(self, timeout: float | None = None) -> bool:
        return self._event.wait(timeout)


@dataclass(frozen=True)
class FutureMove:
    """Think result: a decided move, or the no-move cancellation sentinel."""

    move: Optional[Move]

    @classmethod
    def decided(cls, move: Move) -> "FutureMove":
        return cls(move)

    @property
    def is_no_move(self) -> bool:
        return self.move is None


FutureMove.NO_MOVE = FutureMove(None)


@dataclass(frozen=True)
class MatchConfig:
    """Read-only board and match configuration handed to agents at setup."""

    params: GameParams

    @property
    def rows(self) -> int:
        return self.params.rows

    @property
    def cols(self) -> int:
        return self.params.cols

    @property
    def win_length(self) -> int:
        return self.params.win_length

    @property
    def squares_per_player(self) -> int:
        return self.params.squares_per_player

    @property
    def rounds_per_player(self) -> int:
        return self.params.rounds_per_player

    @property
    def time_limit_ms(self) -> int:
        return self.params.time_limit_ms


@dataclass(frozen=True)
class AgentDescriptor:
    """Identity of a tournament entrant: registry name plus raw parameters."""

    registry_name: str
    params_string: str = ""
    display_name: Optional[str] = None


def default_display_name(qualified_name: str) -> str:
    """Strip the namespace and thinker-style suffixes from a class name.

    ``baselines.MinimaxAIThinker`` becomes ``Minimax``; stripping is
    case-insensitive and idempotent.
    """
    name = qualified_name.rsplit(".", 1)[-1]
    lowered = name.lower()
    for suffix in _NAME_SUFFIXES:
        if lowered.endswith(suffix) and len(name) > len(suffix):
            name = name[: -len(suffix)]
            break
    return name


def parse_params_string(raw: str, allowed: dict[str, Callable[[str], object]]) -> dict[str, object]:
    """Parse the ``key=value;key=value`` microformat shared by baselines.

    ``allowed`` maps accepted keys to value parsers; unknown keys and
    unparsable values are setup errors.
    """
    values: dict[str, object] = {}
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, raw_value = chunk.partition("=")
        key = key.strip()
        if key not in allowed:
            raise SetupError(f"unknown parameter {key!r} (accepted: {', '.join(sorted(allowed)) or 'none'})")
        try:
            values[key] = allowed[key](raw_value.strip())
        except (TypeError, ValueError) as exc:
            raise SetupError(f"bad value for {key!r}: {raw_value.strip()!r}") from exc
    return values


class Agent:
    """Base class for move-selecting agents.

    Subclasses override :meth:`think` (mandatory) and optionally
    :meth:`setup` and :meth:`display_name`. Instances must keep all state
    local: the controller creates one instance per seat per match.
    """

    def __init__(self) -> None:
        self.config: MatchConfig | None = None
        self.params_string = ""
        self._info_sink: Callable[[str], None] | None = None

    def setup(self, params_string: str, config: MatchConfig) -> None:
        """Parse agent parameters; called exactly once before any think."""
        self.params_string = params_string
        self.config = config
        if params_string.strip():
            raise SetupError(f"{self.display_name()} takes no parameters, got {params_string!r}")

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        raise NotImplementedError

    def display_name(self) -> str:
        qualified = f"{type(self).__module__}.{type(self).__qualname__}"
        return default_display_name(qualified)

    def post_info(self, text: str) -> None:
        """Emit a diagnostic line; forwarded to match listeners when attached."""
        sink = self._info_sink
        if sink is not None:
            sink(text)

    def bind_info_sink(self, sink: Callable[[str], None] | None) -> None:
        self._info_sink = sink


_REGISTRY: dict[str, Type[Agent]] = {}


def register_agent(name: str, agent_type: Type[Agent] | None = None):
    """Register an agent class under a registry name. Usable as a decorator."""

    def _register(cls: Type[Agent]) -> Type[Agent]:
        if name in _REGISTRY and _REGISTRY[name] is not cls:
            raise ValueError(f"agent name {name!r} already registered")
        _REGISTRY[name] = cls
        return cls

    if agent_type is not None:
        return _register(agent_type)
    return _register


def available_agents() -> list[str]:
    return sorted(_REGISTRY)


def create_agent(name: str, params_string: str, config: MatchConfig) -> Agent:
    """Instantiate a registered agent and run its setup."""
    agent_type = _REGISTRY.get(name)
    if agent_type is None:
        raise SetupError(f"unknown agent {name!r}; available: {', '.join(available_agents())}")
    agent = agent_type()
    agent.setup(params_string, config)
    return agent


@register_agent("sequential")
class SequentialThinker(Agent):
    """Plays columns in cyclic ascending order, skipping full ones.

    Uses its winning shape while any remain, then switches to the losing
    shape. Not a real AI, but a deterministic punching bag.
    """

    def __init__(self) -> None:
        super().__init__()
        self._cursor = 0

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        if cancel.is_set():
            return FutureMove.NO_MOVE
        me = board.to_move
        shape = me.winning_shape
        if board.reserve(me, shape) == 0:
            shape = shape.other
        cols = board.params.cols
        for offset in range(cols):
            col = (self._cursor + offset) % cols
            if board.column_height(col) < board.params.rows:
                self._cursor = (col + 1) % cols
                return FutureMove.decided(Move(col, shape))
        return FutureMove.NO_MOVE


@register_agent("random")
class RandomThinker(Agent):
    """Uniformly random legal moves; reproducible when given a seed."""

    def __init__(self) -> None:
        super().__init__()
        self._rng = random.Random()

    def setup(self, params_string: str, config: MatchConfig) -> None:
        self.params_string = params_string
        self.config = config
        values = parse_params_string(params_string, {"seed": int})
        seed = values.get("seed")
        if seed is None:
            seed = random.SystemRandom().randrange(2**63)
            logger.info("random agent drew seed %d", seed)
        self._rng = random.Random(seed)

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        if cancel.is_set():
            return FutureMove.NO_MOVE
        moves = board.legal_moves()
        if not moves:
            return FutureMove.NO_MOVE
        return FutureMove.decided(self._rng.choice(moves))


@register_agent("minimax")
class MinimaxThinker(Agent):
    """Plain fixed-depth minimax (no pruning) with a center-bias heuristic.

    Terminal states score +/-infinity or 0; other leaves sum, over occupied
    cells, a centrality weight times a piece value of +1 per attribute
    (color, winning shape) that favors the searching player and -1 per
    attribute favoring the opponent. Ties break on legal-move order, and
    the cancellation token is polled at every node expansion, unwinding
    with the best fully evaluated root move found so far.
    """

    DEFAULT_DEPTH = 3

    def __init__(self) -> None:
        super().__init__()
        self.depth = self.DEFAULT_DEPTH
        self._weights: list[float] = []

    def setup(self, params_string: str, config: MatchConfig) -> None:
        self.params_string = params_string
        self.config = config
        values = parse_params_string(params_string, {"depth": int})
        self.depth = values.get("depth", self.DEFAULT_DEPTH)
        if self.depth < 1:
            raise SetupError(f"depth must be >= 1, got {self.depth}")
        self._weights = centrality_weights(config.params)

    def display_name(self) -> str:
        return f"Minimax(d={self.depth})"

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        if cancel.is_set():
            return FutureMove.NO_MOVE
        if not self._weights:
            self._weights = centrality_weights(board.params)
        me = board.to_move
        # Piece values from the searcher's perspective, indexed by cell code.
        values = [0.0] * 5
        for code in range(1, 5):
            color_term = 1.0 if (code <= 2) == (me is PieceColor.WHITE) else -1.0
            shape_is_round = bool(code & 1)
            shape_term = 1.0 if shape_is_round == (me.winning_shape is PieceShape.ROUND) else -1.0
            values[code] = color_term + shape_term
        best_move: Move | None = None
        best_score = float("-inf")
        try:
            for move in board.legal_moves():
                board.do_move(move)
                try:
                    score = self._search(board, self.depth - 1, me, values, cancel)
                finally:
                    board.undo_move()
                if best_move is None or score > best_score:
                    best_score = score
                    best_move = move
        except _Cancelled:
            pass
        if best_move is None:
            return FutureMove.NO_MOVE
        self.post_info(f"depth={self.depth} best={best_move.to_text()} score={best_score:.3f}")
        return FutureMove.decided(best_move)

    def _search(self, board: Board, depth: int, me, values: list[float], cancel: CancellationToken) -> float:
        if cancel.is_set():
            raise _Cancelled
        outcome = board.check_winner()
        if outcome.kind is OutcomeKind.WIN:
            return float("inf") if outcome.winner is me else float("-inf")
        if outcome.kind is OutcomeKind.DRAW:
            return 0.0
        if depth == 0:
            weights = self._weights
            total = 0.0
            for index, code in enumerate(board._grid):
                if code:
                    total += weights[index] * values[code]
            return total
        maximizing = board.to_move is me
        best = float("-inf") if maximizing else float("inf")
        for move in board.legal_moves():
            board.do_move(move)
            try:
                score = self._search(board, depth - 1, me, values, cancel)
            finally:
                board.undo_move()
            if maximizing:
                if score > best:
                    best = score
            elif score < best:
                best = score
        return best


class _Cancelled(Exception):
    """Internal unwind signal for cancelled searches."""
