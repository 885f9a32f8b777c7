"""Per-second activity series: raw replay counts and their smoothed form.

A video of duration k seconds maps to an array of k cells. Every 30-second
replay action increments the 30 cells that were just re-watched; summing over
all users gives the aggregate replay series, and a centered moving average
turns it into the user-interest curve that peak detection runs on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable

from .errors import BadWindow, CueOutOfRange, VideoMismatch
from .events import Action, InteractionEvent, VideoMeta

REPLAY_SPAN_S = 30


class SeriesKind(enum.Enum):
    RAW_REPLAY = "raw_replay"
    SMOOTHED = "smoothed"
    PULSE = "pulse"


@dataclass(frozen=True)
class ActivitySeries:
    """Immutable per-second series over one video; index t is video second t."""

    video_id: str
    kind: SeriesKind
    cells: tuple[float, ...]
    smoothing_window_s: int | None = None

    def __post_init__(self):
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("series must have at least one cell")
        if min(cells) < 0:
            raise ValueError("cells must be non-negative")
        if self.kind is SeriesKind.SMOOTHED:
            if not isinstance(self.smoothing_window_s, int) or self.smoothing_window_s < 1:
                raise ValueError("smoothed series needs a positive smoothing_window_s")
        elif self.smoothing_window_s is not None:
            raise ValueError(f"{self.kind.value} series must not carry a smoothing window")

    @property
    def duration_s(self) -> int:
        return len(self.cells)


def build_replay_series(events: Iterable[InteractionEvent], meta: VideoMeta) -> ActivitySeries:
    """Aggregate all users' replay actions into the raw per-second count series.

    A replay at cue time t re-watches seconds floor(t)-30 .. floor(t)-1, so
    exactly those cells are incremented (clamped at the video start; a replay
    at floor(t) = 0 contributes nothing). Play, pause and forward skips are
    accepted but contribute zero.
    """
    k = meta.duration_s
    cells = [0] * k
    for event in events:
        if event.video_id != meta.video_id:
            raise VideoMismatch(
                f"event {event.event_id} belongs to {event.video_id!r}, series is {meta.video_id!r}"
            )
        t = math.floor(event.cue_time_s)
        if t > k:
            raise CueOutOfRange(f"event {event.event_id} cue {event.cue_time_s} past duration {k}")
        if event.action is Action.SEEK_BACK_30 and t > 0:
            for i in range(max(0, t - REPLAY_SPAN_S), t):
                cells[i] += 1
    return ActivitySeries(video_id=meta.video_id, kind=SeriesKind.RAW_REPLAY, cells=tuple(cells))


def smooth(series: ActivitySeries, window_s: int) -> ActivitySeries:
    """Centered moving average with edge truncation.

    Cell t becomes the mean of the raw cells at indices
    [t - floor(w/2), t + ceil(w/2) - 1] clipped to the series, dividing by the
    number of in-range cells. A window of 1 is the identity.
    """
    if series.kind is not SeriesKind.RAW_REPLAY:
        raise ValueError(f"can only smooth a raw replay series, got {series.kind.value}")
    k = len(series.cells)
    if not isinstance(window_s, int) or window_s < 1 or window_s > k:
        raise BadWindow(f"window must be an integer in [1, {k}], got {window_s!r}")
    prefix = [0, *accumulate(series.cells)]
    back = window_s // 2
    fwd = (window_s + 1) // 2
    cells = []
    for t in range(k):
        lo = max(0, t - back)
        hi = min(k, t + fwd)
        cells.append((prefix[hi] - prefix[lo]) / (hi - lo))
    return ActivitySeries(
        video_id=series.video_id,
        kind=SeriesKind.SMOOTHED,
        cells=tuple(cells),
        smoothing_window_s=window_s,
    )


def export_series(series: ActivitySeries) -> str:
    """Two-column text export for plotting and debugging."""
    window = series.smoothing_window_s if series.smoothing_window_s is not None else "-"
    lines = [f"# {series.video_id} {series.kind.value} {window}"]
    for t, value in enumerate(series.cells):
        lines.append(f"{t}\t{value:g}")
    return "\n".join(lines) + "\n"
