"""Console frontend: match, session, solve and serve subcommands.

Exit codes are stable and scriptable: 0 White win, 1 Red win, 2 draw,
3 usage or configuration error, 4 internal harness failure. A learning
loop can branch on the match result without parsing any output.
"""

from __future__ import annotations

import argparse
import json
import sys
from enum import IntEnum
from typing import Optional, Sequence

from simplexity.agents import (
    Agent,
    CancellationToken,
    FutureMove,
    MatchConfig,
    SetupError,
    available_agents,
    create_agent,
)
from simplexity.engine import (
    Board,
    GameParams,
    Move,
    PieceColor,
    RulesError,
    encode_board,
    new_board,
)
from simplexity.match import (
    BoardUpdated,
    HarnessError,
    MatchEnd,
    MatchEvent,
    MatchResult,
    MatchStart,
    MoveChosen,
    ThinkingInfo,
    run_match,
)
from simplexity.session import ConfigError, parse_session_config, run_session
from simplexity.solver import DEFAULT_BUDGET, BudgetExceeded, best_moves, solve


class ExitStatus(IntEnum):
    WHITE_WIN = 0
    RED_WIN = 1
    DRAW = 2
    USAGE_ERROR = 3
    INTERNAL_ERROR = 4


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped onto the documented exit code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise SystemExit(self._fail(message))

    def _fail(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)


def column_ruler(cols: int) -> str:
    return "".join(str(col % 10) for col in range(cols))


def result_line(result: MatchResult) -> str:
    winner = result.winner.value if result.winner is not None else "Draw"
    return f"winner={winner} reason={result.reason.value} moves={len(result.transcript)}"


class AsciiRenderer:
    """Streams match events as text: moves, thinking info and board blocks.

    The board block is exactly the board text framed by a column ruler.
    Durations and timestamps are never printed, so transcripts are
    byte-reproducible for deterministic entrants.
    """

    def __init__(self, out=None):
        self.out = out or sys.stdout
        self._move_number = 0

    def __call__(self, event: MatchEvent) -> None:
        if isinstance(event, MatchStart):
            self._move_number = 0
            print(f"{event.white_name} (White) vs {event.red_name} (Red)", file=self.out)
            self._board_block(encode_board(new_board(event.params)), event.params.cols)
        elif isinstance(event, MoveChosen):
            self._move_number += 1
            print(
                f"{self._move_number}. {event.color.value} {event.move.to_text()} -> row {event.landing_row}",
                file=self.out,
            )
        elif isinstance(event, BoardUpdated):
            self._board_block(event.board_text, len(event.board_text.split("\n", 1)[0]))
        elif isinstance(event, ThinkingInfo):
            print(f"[{event.agent}] {event.text}", file=self.out)
        elif isinstance(event, MatchEnd):
            print(result_line(event.result), file=self.out)

    def _board_block(self, board_text: str, cols: int) -> None:
        ruler = column_ruler(cols)
        print(ruler, file=self.out)
        print(board_text, file=self.out)
        print(ruler, file=self.out)


class QuietRenderer:
    """Prints only the result line, identical to ascii mode's."""

    def __init__(self, out=None):
        self.out = out or sys.stdout

    def __call__(self, event: MatchEvent) -> None:
        if isinstance(event, MatchEnd):
            print(result_line(event.result), file=self.out)


class HumanConsoleAgent(Agent):
    """Interactive stdin seat: reads move notation like ``3r`` per turn.

    The seat is untimed; the match controller runs it inline without a
    deadline so a person can take their time.
    """

    untimed = True

    def __init__(self) -> None:
        super().__init__()

    def setup(self, params_string: str, config: MatchConfig) -> None:
        self.params_string = params_string
        self.config = config

    def display_name(self) -> str:
        return "Human"

    def think(self, board: Board, cancel: CancellationToken) -> FutureMove:
        legal = board.legal_moves()
        while True:
            print(f"{board.to_move.value} to move, legal: {' '.join(m.to_text() for m in legal)}")
            try:
                raw = input("column shape> ")
            except EOFError:
                return FutureMove.NO_MOVE
            try:
                move = Move.from_text(raw)
            except RulesError as exc:
                print(exc)
                continue
            if not board.is_legal(move):
                print(f"illegal move {move.to_text()}")
                continue
            return FutureMove.decided(move)


def _add_board_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rows", type=int, default=6, help="board rows (default 6)")
    parser.add_argument("--cols", type=int, default=7, help="board columns (default 7)")
    parser.add_argument("--win", type=int, default=4, help="line length to win (default 4)")
    parser.add_argument("--squares", type=int, default=11, help="square pieces per player (default 11)")
    parser.add_argument("--rounds", type=int, default=10, help="round pieces per player (default 10)")
    parser.add_argument("--time-limit-ms", type=int, default=200, help="per-move time limit (default 200)")


def _params_from(args: argparse.Namespace) -> GameParams:
    return GameParams(
        rows=args.rows,
        cols=args.cols,
        win_length=args.win,
        squares_per_player=args.squares,
        rounds_per_player=args.rounds,
        time_limit_ms=args.time_limit_ms,
    )


def _resolve_agent(name: str, params_string: str, config: MatchConfig) -> Agent:
    if name == "human":
        agent = HumanConsoleAgent()
        agent.setup(params_string, config)
        return agent
    return create_agent(name, params_string, config)


def cmd_match(args: argparse.Namespace) -> int:
    try:
        params = _params_from(args)
        config = MatchConfig(params)
        white = _resolve_agent(args.white, args.white_params, config)
        red = _resolve_agent(args.red, args.red_params, config)
    except (RulesError, SetupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    renderer = AsciiRenderer() if args.render == "ascii" else QuietRenderer()
    try:
        result = run_match(params, white, red, listeners=[renderer])
    except HarnessError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return int(ExitStatus.INTERNAL_ERROR)
    if result.winner is PieceColor.WHITE:
        return int(ExitStatus.WHITE_WIN)
    if result.winner is PieceColor.RED:
        return int(ExitStatus.RED_WIN)
    return int(ExitStatus.DRAW)


def _standings_table(standings) -> str:
    headers = ("#", "Name", "Pts", "W", "D", "L", "P")
    rows = [
        (
            str(position),
            row.name,
            str(row.points),
            str(row.wins),
            str(row.draws),
            str(row.losses),
            str(row.played),
        )
        for position, row in enumerate(standings.rows, start=1)
    ]
    widths = [max(len(cell) for cell in column) for column in zip(headers, *rows)]
    lines = []
    for record in (headers, *rows):
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(record, widths)).rstrip())
    return "\n".join(lines)


def record_json(record) -> str:
    return json.dumps(
        {
            "white": record.white,
            "red": record.red,
            "winner": record.winner.value if record.winner else None,
            "reason": record.reason.value,
            "moves": record.moves,
        }
    )


def cmd_session(args: argparse.Namespace) -> int:
    try:
        params = _params_from(args)
        text = open(args.config, "r", encoding="utf-8").read()
    except RulesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    try:
        config = parse_session_config(text, params)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    listeners = [AsciiRenderer()] if args.render == "ascii" else []
    try:
        standings = run_session(config, listeners)
    except HarnessError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return int(ExitStatus.INTERNAL_ERROR)
    for record in standings.records:
        print(record_json(record))
    print(_standings_table(standings))
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        params = _params_from(args)
    except RulesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    board = new_board(params)
    try:
        solution = solve(board, budget=args.budget)
        moves = best_moves(board, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"error: instance too large: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    ordered = [move.to_text() for move in board.legal_moves() if move in moves]
    print(f"{solution.value.value} {solution.plies_to_end} {' '.join(ordered)}".rstrip())
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from simplexity.service import create_app

    try:
        app = create_app(static_dir=args.static_dir)
    except RulesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="simplexity", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    match = subparsers.add_parser("match", help="run one match between two agents", parents=[])
    match.add_argument("--white", required=True, help="White agent registry name, or 'human'")
    match.add_argument("--red", required=True, help="Red agent registry name, or 'human'")
    match.add_argument("--white-params", default="", help="parameter string for the White agent")
    match.add_argument("--red-params", default="", help="parameter string for the Red agent")
    _add_board_flags(match)
    match.add_argument("--render", choices=("ascii", "quiet"), default="ascii")
    match.set_defaults(func=cmd_match)

    session = subparsers.add_parser("session", help="run a round-robin tournament from a config file")
    session.add_argument("config", help="config file: one 'name params' entrant per line")
    _add_board_flags(session)
    session.add_argument("--render", choices=("ascii", "quiet"), default="quiet")
    session.set_defaults(func=cmd_session)

    solver = subparsers.add_parser("solve", help="perfect-play value of a small parameterization")
    _add_board_flags(solver)
    solver.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget for the search")
    solver.set_defaults(func=cmd_solve)

    serve = subparsers.add_parser("serve", help="serve the web play UI and its match protocol")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--static-dir", default=None, help="directory of built web UI assets")
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except KeyboardInterrupt:
        return int(ExitStatus.INTERNAL_ERROR)
    except Exception as exc:  # anything unplanned is an internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return int(ExitStatus.INTERNAL_ERROR)


if __name__ == "__main__":
    sys.exit(main())
