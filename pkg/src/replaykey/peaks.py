"""Peak detection, ranking, and key-frame window selection.

Peaks of the smoothed interest curve are the positive-to-negative
zero crossings of its first difference; a flat top counts once, reported at
the plateau midpoint. Peaks are ranked by interest value, the top-ranked peak
supplies the thumbnail time, and each peak gets a fixed-width candidate
window reaching back to where the interesting segment is expected to start.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import NoPeaks, TooShort
from .series import ActivitySeries

CANDIDATE_WINDOW_S = 60


@dataclass(frozen=True)
class Peak:
    """A local maximum of an activity series; rank is set by rank_peaks."""

    time_s: int
    value: float
    rank: int | None = None


@dataclass(frozen=True)
class KeyframeResult:
    """Ranked peaks with their candidate windows and the chosen thumbnail time."""

    video_id: str
    thumbnail_time_s: int
    peaks: tuple[Peak, ...]
    windows: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "thumbnail_time_s": self.thumbnail_time_s,
            "peaks": [
                {"time_s": p.time_s, "value": p.value, "rank": p.rank, "window": list(w)}
                for p, w in zip(self.peaks, self.windows)
            ],
        }


def derivative(series: ActivitySeries) -> list[float]:
    """First difference of the series: d[t] = cells[t+1] - cells[t]."""
    cells = series.cells
    if len(cells) < 2:
        raise TooShort("derivative needs at least 2 cells")
    return [cells[t + 1] - cells[t] for t in range(len(cells) - 1)]


def find_peaks(series: ActivitySeries, min_value: float = 0.0) -> list[Peak]:
    """Locate local maxima, time-ordered and unranked.

    A peak is a maximal run of equal cells that rises on the left and falls on
    the right; its time is the plateau midpoint (floored). Runs touching
    either boundary are excluded, as are peaks with value <= min_value.
    """
    if min_value < 0:
        raise ValueError("min_value must be >= 0")
    cells = series.cells
    k = len(cells)
    if k < 3:
        raise TooShort(f"peak detection needs at least 3 cells, got {k}")
    peaks = []
    run_start = 0
    rising = False
    for i in range(1, k):
        c = cells[i]
        p = cells[i - 1]
        if c == p:
            continue
        if c < p:
            # Falling edge closes the run [run_start, i-1]; it is a peak iff
            # the run was entered on a rising edge (which also keeps it off
            # cell 0). The final run never sees a falling edge, so cell k-1
            # is never part of a peak.
            if rising:
                value = cells[run_start]
                if value > min_value:
                    peaks.append(Peak(time_s=(run_start + i - 1) // 2, value=float(value)))
            rising = False
        else:
            rising = True
        run_start = i
    return peaks


def rank_peaks(peaks: list[Peak]) -> list[Peak]:
    """Order peaks by value descending, earlier time first on ties; rank 1..n."""
    ordered = sorted(peaks, key=lambda p: (-p.value, p.time_s))
    return [replace(p, rank=i) for i, p in enumerate(ordered, start=1)]


def select_thumbnail(ranked: list[Peak]) -> Peak:
    """The rank-1 peak; its time is the video's representative thumbnail."""
    if not ranked:
        raise NoPeaks("no peaks to select a thumbnail from")
    return ranked[0]


def keyframe_windows(
    ranked: list[Peak],
    video_id: str = "",
    candidate_window_s: int = CANDIDATE_WINDOW_S,
) -> KeyframeResult:
    """Attach the candidate window [max(0, t - w), t] to each ranked peak."""
    thumbnail = select_thumbnail(ranked)
    windows = tuple((max(0, p.time_s - candidate_window_s), p.time_s) for p in ranked)
    return KeyframeResult(
        video_id=video_id,
        thumbnail_time_s=thumbnail.time_s,
        peaks=tuple(ranked),
        windows=windows,
    )


def detect_keyframes(
    series: ActivitySeries,
    min_value: float = 0.0,
    candidate_window_s: int = CANDIDATE_WINDOW_S,
    max_peaks: int | None = None,
) -> KeyframeResult:
    """find_peaks -> rank_peaks -> keyframe_windows over one smoothed series."""
    ranked = rank_peaks(find_peaks(series, min_value=min_value))
    if max_peaks is not None:
        ranked = ranked[:max_peaks]
    return keyframe_windows(ranked, video_id=series.video_id, candidate_window_s=candidate_window_s)
