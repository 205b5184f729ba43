"""Session controller: round-robin tournaments, scoring and standings.

Every ordered pair of entrants plays exactly one match, so each pairing
meets twice with seats swapped. Wins score 3 points, draws 1, losses 0.
An entrant whose setup fails forfeits all of its matches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from simplexity.agents import AgentDescriptor, MatchConfig, SetupError, available_agents, create_agent
from simplexity.engine import GameParams, PieceColor
from simplexity.match import (
    MatchListener,
    MatchReason,
    MatchResult,
    forfeit_result,
    run_match,
)


class ConfigError(ValueError):
    """Raised for unusable session configurations."""


@dataclass(frozen=True)
class SessionConfig:
    params: GameParams
    entrants: tuple[AgentDescriptor, ...]

    def __post_init__(self) -> None:
        if len(self.entrants) < 2:
            raise ConfigError("need at least 2 entrants")


@dataclass(frozen=True)
class MatchRecord:
    """Machine-readable summary of one session match."""

    white: str
    red: str
    winner: Optional[PieceColor]
    reason: MatchReason
    moves: int


@dataclass
class StandingsRow:
    name: str
    points: int = 0
    wins: int = 0
    draws: int = 0
    losses: int = 0
    played: int = 0


@dataclass
class Standings:
    """Ranked points table plus the per-match records behind it."""

    rows: list[StandingsRow] = field(default_factory=list)
    records: list[MatchRecord] = field(default_factory=list)


def score(result: MatchResult, seat: PieceColor) -> int:
    """Points earned by one seat: 3 for a win, 1 for a draw, 0 for a loss."""
    if result.winner is None:
        return 1
    return 3 if result.winner is seat else 0


def rank(rows: Iterable[StandingsRow], records: Iterable[MatchRecord]) -> list[StandingsRow]:
    """Total order: points, then wins, then head-to-head points, then name.

    Head-to-head points are computed within each tied group, over the
    matches its members played against each other.
    """
    records = list(records)
    ordered = sorted(rows, key=lambda row: (-row.points, -row.wins, row.name))
    result: list[StandingsRow] = []
    index = 0
    while index < len(ordered):
        group = [ordered[index]]
        while (
            index + len(group) < len(ordered)
            and ordered[index + len(group)].points == group[0].points
            and ordered[index + len(group)].wins == group[0].wins
        ):
            group.append(ordered[index + len(group)])
        if len(group) > 1:
            names = {row.name for row in group}
            h2h = {name: 0 for name in names}
            for record in records:
                if record.white in names and record.red in names:
                    if record.winner is PieceColor.WHITE:
                        h2h[record.white] += 3
                    elif record.winner is PieceColor.RED:
                        h2h[record.red] += 3
                    else:
                        h2h[record.white] += 1
                        h2h[record.red] += 1
            group.sort(key=lambda row: (-h2h[row.name], row.name))
        result.extend(group)
        index += len(group)
    return result


def _disambiguate(names: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    unique = []
    for name in names:
        count = seen.get(name, 0)
        seen[name] = count + 1
        unique.append(name if count == 0 else f"{name}#{count + 1}")
    return unique


def run_session(config: SessionConfig, listeners: Iterable[MatchListener] = ()) -> Standings:
    """Play the full round robin and return ranked standings.

    Fresh agent instances are created for every match. A setup failure
    forfeits that entrant's matches with reason ``OpponentSetupFailure``;
    if both sides fail, the match counts as a draw for neither's benefit.
    """
    listeners = list(listeners)
    match_config = MatchConfig(config.params)
    entrants = list(config.entrants)

    # Resolve display names once, via probe instances; a failed probe marks
    # the entrant as forfeiting (re-checked per match anyway).
    display: list[str] = []
    for descriptor in entrants:
        if descriptor.display_name:
            display.append(descriptor.display_name)
            continue
        try:
            display.append(create_agent(descriptor.registry_name, descriptor.params_string, match_config).display_name())
        except SetupError:
            display.append(descriptor.registry_name)
    display = _disambiguate(display)

    rows = {name: StandingsRow(name=name) for name in display}
    records: list[MatchRecord] = []

    def build(index: int):
        descriptor = entrants[index]
        return create_agent(descriptor.registry_name, descriptor.params_string, match_config)

    for white_index in range(len(entrants)):
        for red_index in range(len(entrants)):
            if white_index == red_index:
                continue
            white_name = display[white_index]
            red_name = display[red_index]
            white = red = None
            try:
                white = build(white_index)
            except SetupError:
                pass
            try:
                red = build(red_index)
            except SetupError:
                pass
            if white is None and red is None:
                result = forfeit_result(None, MatchReason.DRAW, white_name, red_name, config.params)
            elif white is None:
                result = forfeit_result(PieceColor.RED, MatchReason.OPPONENT_SETUP_FAILURE, white_name, red_name, config.params)
            elif red is None:
                result = forfeit_result(PieceColor.WHITE, MatchReason.OPPONENT_SETUP_FAILURE, white_name, red_name, config.params)
            else:
                result = run_match(config.params, white, red, listeners)
                result.white_name = white_name
                result.red_name = red_name
            record = MatchRecord(
                white=white_name,
                red=red_name,
                winner=result.winner,
                reason=result.reason,
                moves=len(result.transcript),
            )
            records.append(record)
            for seat, name in ((PieceColor.WHITE, white_name), (PieceColor.RED, red_name)):
                row = rows[name]
                row.played += 1
                points = score(result, seat)
                row.points += points
                if points == 3:
                    row.wins += 1
                elif points == 1:
                    row.draws += 1
                else:
                    row.losses += 1

    return Standings(rows=rank(rows.values(), records), records=records)


def parse_session_config(text: str, params: GameParams) -> SessionConfig:
    """Parse a session config file: one entrant per line.

    Each line is ``registry_name`` optionally followed by whitespace and a
    parameter string running to end of line; ``#`` starts a comment and
    blank lines are skipped. Unknown registry names are config errors and
    name the offending line.
    """
    entrants: list[AgentDescriptor] = []
    known = set(available_agents())
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        name = parts[0]
        params_string = parts[1].strip() if len(parts) > 1 else ""
        if name not in known:
            raise ConfigError(
                f"line {line_number}: unknown agent {name!r}; available: {', '.join(sorted(known))}"
            )
        entrants.append(AgentDescriptor(name, params_string))
    if len(entrants) < 2:
        raise ConfigError("need at least 2 entrants")
    return SessionConfig(params=params, entrants=tuple(entrants))
