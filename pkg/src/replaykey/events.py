"""Interaction-event domain types and the line-oriented event-log codec.

The interchange format is JSON-lines: one flat JSON object per line with a
fixed schema version. Required keys:

    v            schema version, fixed string "1"
    event_id     unique opaque id (duplicates are dropped on load, first wins)
    video_id     opaque video id
    user_id      opaque user id
    session_id   opaque session id
    action       one of "play", "pause", "seek_back_30", "seek_fwd_30"
    cue_time_s   player position in seconds when the action fired (>= 0)
    wall_time    RFC 3339 timestamp (carried through, unused by analysis)

Unknown keys are ignored so the format can grow without breaking readers.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable

from .errors import MalformedRecord

SCHEMA_VERSION = "1"

LOG_EXTENSION = ".jsonl"


class Action(enum.Enum):
    """A viewer interaction logged by the player."""

    PLAY = "play"
    PAUSE = "pause"
    SEEK_BACK_30 = "seek_back_30"
    SEEK_FWD_30 = "seek_fwd_30"


class Genre(enum.Enum):
    """Video genre; selects the default smoothing window."""

    LECTURE = "lecture"
    HOW_TO = "how_to"
    OTHER = "other"


# Default moving-average window per genre, in seconds.
GENRE_WINDOW_S = {Genre.LECTURE: 60, Genre.HOW_TO: 45, Genre.OTHER: 60}
DEFAULT_WINDOW_S = 60


@dataclass(frozen=True)
class InteractionEvent:
    """One logged viewer action at a player cue time."""

    event_id: str
    video_id: str
    user_id: str
    session_id: str
    action: Action
    cue_time_s: float
    wall_time: datetime

    def __post_init__(self):
        object.__setattr__(self, "cue_time_s", float(self.cue_time_s))
        if not (self.cue_time_s >= 0 and math.isfinite(self.cue_time_s)):
            raise ValueError(f"cue_time_s must be a finite non-negative number, got {self.cue_time_s!r}")
        if not isinstance(self.action, Action):
            raise ValueError(f"action must be an Action, got {self.action!r}")
        for name in ("event_id", "video_id", "user_id", "session_id"):
            value = getattr(self, name)
            if not isinstance(value, str) or not value:
                raise ValueError(f"{name} must be a non-empty string")
        if self.wall_time.tzinfo is None:
            raise ValueError("wall_time must carry a UTC offset")


@dataclass(frozen=True)
class VideoMeta:
    """Identity and duration of a video, plus optional genre and title."""

    video_id: str
    duration_s: int
    genre: Genre | None = None
    title: str | None = None

    def __post_init__(self):
        if not isinstance(self.video_id, str) or not self.video_id:
            raise ValueError("video_id must be a non-empty string")
        if (
            isinstance(self.duration_s, bool)
            or not isinstance(self.duration_s, int)
            or self.duration_s < 1
        ):
            raise ValueError(f"duration_s must be a positive integer, got {self.duration_s!r}")

    @property
    def default_window_s(self) -> int:
        """Genre-dependent smoothing window (lecture 60 s, how-to 45 s)."""
        if self.genre is None:
            return DEFAULT_WINDOW_S
        return GENRE_WINDOW_S[self.genre]


def _parse_rfc3339(text: str) -> datetime:
    """Parse an RFC 3339 timestamp, accepting the 'Z' zone suffix."""
    if not isinstance(text, str):
        raise ValueError("wall_time must be a string")
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        raise ValueError("wall_time must carry a UTC offset")
    return parsed


def event_from_record(record: object) -> InteractionEvent:
    """Build an InteractionEvent from one decoded log record (a JSON object)."""
    if not isinstance(record, dict):
        raise MalformedRecord(f"record must be a JSON object, got {type(record).__name__}")
    if record.get("v") != SCHEMA_VERSION:
        raise MalformedRecord(f"unsupported schema version {record.get('v')!r}")
    for key in ("event_id", "video_id", "user_id", "session_id", "action", "cue_time_s", "wall_time"):
        if key not in record:
            raise MalformedRecord(f"missing required field {key!r}")
    try:
        action = Action(record["action"])
    except ValueError:
        raise MalformedRecord(f"unknown action {record['action']!r}") from None
    cue = record["cue_time_s"]
    if isinstance(cue, bool) or not isinstance(cue, (int, float)):
        raise MalformedRecord(f"cue_time_s must be a number, got {cue!r}")
    try:
        wall = _parse_rfc3339(record["wall_time"])
        return InteractionEvent(
            event_id=record["event_id"],
            video_id=record["video_id"],
            user_id=record["user_id"],
            session_id=record["session_id"],
            action=action,
            cue_time_s=cue,
            wall_time=wall,
        )
    except ValueError as exc:
        raise MalformedRecord(str(exc)) from None


def parse_event_line(line: str) -> InteractionEvent:
    """Parse one event-log line; raises MalformedRecord on any violation."""
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc.msg}") from None
    return event_from_record(record)


def serialize_event(event: InteractionEvent) -> str:
    """Emit the canonical one-line record for an event (no trailing newline).

    parse_event_line is a left inverse, and re-serializing a parsed line is
    byte-stable.
    """
    record = {
        "v": SCHEMA_VERSION,
        "event_id": event.event_id,
        "video_id": event.video_id,
        "user_id": event.user_id,
        "session_id": event.session_id,
        "action": event.action.value,
        "cue_time_s": event.cue_time_s,
        "wall_time": event.wall_time.isoformat(),
    }
    return json.dumps(record, separators=(",", ":"))


@dataclass
class LoadResult:
    """Events from one log plus what the loader dropped along the way."""

    events: list[InteractionEvent] = field(default_factory=list)
    duplicates: int = 0
    skipped: int = 0


def load_log(lines: Iterable[str], strict: bool = True) -> LoadResult:
    """Load an event log, dropping duplicate event_ids (first occurrence wins).

    Blank lines are skipped. In strict mode the first malformed line raises
    MalformedRecord with its line number; otherwise bad lines are counted in
    ``skipped`` and ignored. Output order is first-occurrence input order.
    """
    result = LoadResult()
    seen: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            event = parse_event_line(line)
        except MalformedRecord as exc:
            if strict:
                raise MalformedRecord(str(exc), line_no=line_no) from None
            result.skipped += 1
            continue
        if event.event_id in seen:
            result.duplicates += 1
            continue
        seen.add(event.event_id)
        result.events.append(event)
    return result


def write_log(events: Iterable[InteractionEvent]) -> str:
    """Serialize events to event-log text, one record per line."""
    return "".join(serialize_event(e) + "\n" for e in events)
