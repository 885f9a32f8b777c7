"""Ground-truth segments, peak-to-segment matching, and the distance report.

Manually annotated interesting segments form a 0/1 pulse series. Detected
peaks are matched one-to-one to segment starts, greedily by smallest absolute
distance, and a segment counts as detected when its matched peak lies within
the tolerance (strictly less, default 60 s). The report mirrors the
`distance (start) [peak value]` cell notation used for the reference results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import MalformedRecord, OverlappingSegments, SegmentOutOfRange
from .peaks import Peak, find_peaks, rank_peaks, select_thumbnail
from .series import ActivitySeries, SeriesKind

DEFAULT_TOLERANCE_S = 60
FALLBACK_THUMBNAIL_S = 0


@dataclass(frozen=True)
class SemanticSegment:
    """One annotated region of interest; start_s is the evaluation anchor."""

    label: str
    start_s: int
    end_s: int

    def __post_init__(self):
        if not isinstance(self.start_s, int) or not isinstance(self.end_s, int):
            raise ValueError("segment bounds must be integers")
        if not 0 <= self.start_s < self.end_s:
            raise ValueError(f"segment {self.label!r} needs 0 <= start < end")


@dataclass(frozen=True)
class MatchRow:
    """Per-segment evaluation outcome."""

    label: str
    start_s: int
    matched_time_s: int | None
    signed_distance_s: int | None
    peak_value: float | None
    detected: bool


@dataclass(frozen=True)
class EvaluationReport:
    video_id: str
    rows: tuple[MatchRow, ...]
    detection_rate: float
    thumbnail_time_s: int
    tolerance_s: int

    def to_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "tolerance_s": self.tolerance_s,
            "detection_rate": self.detection_rate,
            "detected": sum(r.detected for r in self.rows),
            "segments": len(self.rows),
            "thumbnail_time_s": self.thumbnail_time_s,
            "rows": [
                {
                    "label": r.label,
                    "start_s": r.start_s,
                    "matched_time_s": r.matched_time_s,
                    "signed_distance_s": r.signed_distance_s,
                    "peak_value": r.peak_value,
                    "detected": r.detected,
                }
                for r in self.rows
            ],
        }


def validate_segments(segments: Sequence[SemanticSegment], duration_s: int) -> None:
    """Check segments fit in [0, duration_s], sorted by start, non-overlapping."""
    previous_end = 0
    previous_start = -1
    for seg in segments:
        if seg.end_s > duration_s:
            raise SegmentOutOfRange(f"segment {seg.label!r} ends at {seg.end_s}, duration is {duration_s}")
        if seg.start_s < previous_start:
            raise OverlappingSegments(f"segment {seg.label!r} is not sorted by start")
        if seg.start_s < previous_end:
            raise OverlappingSegments(f"segment {seg.label!r} overlaps its predecessor")
        previous_start = seg.start_s
        previous_end = seg.end_s


def build_pulse_series(
    segments: Sequence[SemanticSegment], duration_s: int, video_id: str = ""
) -> ActivitySeries:
    """0/1 pulse series: 1 on [start_s, end_s) of any segment, 0 elsewhere."""
    validate_segments(segments, duration_s)
    cells = [0] * duration_s
    for seg in segments:
        for t in range(seg.start_s, seg.end_s):
            cells[t] = 1
    return ActivitySeries(video_id=video_id, kind=SeriesKind.PULSE, cells=tuple(cells))


def match_peaks(
    peaks: Sequence[Peak],
    segments: Sequence[SemanticSegment],
    tolerance_s: int = DEFAULT_TOLERANCE_S,
) -> list[MatchRow]:
    """Greedy one-to-one assignment of peaks to segment starts.

    Repeatedly pairs the segment/peak combination with the smallest absolute
    distance, breaking ties by earlier segment then earlier peak. Segments
    left without a peak are unmatched. Distances are signed
    (peak time - segment start) and detection requires |distance| < tolerance.
    """
    if tolerance_s <= 0:
        raise ValueError("tolerance_s must be positive")
    candidates = sorted(
        (abs(p.time_s - seg.start_s), si, p.time_s, pi)
        for si, seg in enumerate(segments)
        for pi, p in enumerate(peaks)
    )
    seg_match: dict[int, int] = {}
    used_peaks: set[int] = set()
    for _, si, _, pi in candidates:
        if si in seg_match or pi in used_peaks:
            continue
        seg_match[si] = pi
        used_peaks.add(pi)
    rows = []
    for si, seg in enumerate(segments):
        pi = seg_match.get(si)
        if pi is None:
            rows.append(MatchRow(seg.label, seg.start_s, None, None, None, False))
            continue
        peak = peaks[pi]
        distance = peak.time_s - seg.start_s
        rows.append(
            MatchRow(
                label=seg.label,
                start_s=seg.start_s,
                matched_time_s=peak.time_s,
                signed_distance_s=distance,
                peak_value=peak.value,
                detected=abs(distance) < tolerance_s,
            )
        )
    return rows


def evaluate(
    series: ActivitySeries,
    segments: Sequence[SemanticSegment],
    tolerance_s: int = DEFAULT_TOLERANCE_S,
) -> EvaluationReport:
    """Full detection pipeline against ground truth for one smoothed series.

    With no peaks at all (for example an all-zero series) the report carries
    zero detections and the fallback thumbnail time 0.
    """
    validate_segments(segments, series.duration_s)
    ranked = rank_peaks(find_peaks(series))
    rows = match_peaks(ranked, segments, tolerance_s=tolerance_s)
    thumbnail = select_thumbnail(ranked).time_s if ranked else FALLBACK_THUMBNAIL_S
    detected = sum(r.detected for r in rows)
    rate = detected / len(rows) if rows else 1.0
    return EvaluationReport(
        video_id=series.video_id,
        rows=tuple(rows),
        detection_rate=rate,
        thumbnail_time_s=thumbnail,
        tolerance_s=tolerance_s,
    )


def render_report_table(report: EvaluationReport) -> str:
    """Aligned text table, one `distance (start) [value]` cell per segment."""
    header = ("Scene", f"{report.video_id or 'video'}")
    cells = [header]
    for row in report.rows:
        if row.matched_time_s is None:
            cell = f"-- ({row.start_s}) [--]"
        else:
            cell = f"{row.signed_distance_s} ({row.start_s}) [{row.peak_value:g}]"
        cells.append((row.label, cell))
    width = max(len(label) for label, _ in cells) + 2
    lines = [f"{label:<{width}}{cell}" for label, cell in cells]
    detected = sum(r.detected for r in report.rows)
    lines.append(
        f"detected {detected}/{len(report.rows)} "
        f"({100 * report.detection_rate:g}%) at tolerance {report.tolerance_s}s"
    )
    lines.append(f"thumbnail at {report.thumbnail_time_s}s")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GroundTruth:
    """Contents of a ground-truth file: the annotated segments of one video."""

    video_id: str
    duration_s: int
    segments: tuple[SemanticSegment, ...]

    def __post_init__(self):
        validate_segments(self.segments, self.duration_s)

    def to_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "duration_s": self.duration_s,
            "segments": [
                {"label": s.label, "start_s": s.start_s, "end_s": s.end_s} for s in self.segments
            ],
        }


def parse_ground_truth(text: str) -> GroundTruth:
    """Parse the ground-truth JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid truth JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise MalformedRecord("truth document must be a JSON object")
    try:
        video_id = doc["video_id"]
        duration_s = doc["duration_s"]
        raw_segments = doc["segments"]
    except KeyError as exc:
        raise MalformedRecord(f"truth document missing field {exc.args[0]!r}") from None
    if not isinstance(video_id, str) or not video_id:
        raise MalformedRecord("truth video_id must be a non-empty string")
    if not isinstance(duration_s, int) or duration_s < 1:
        raise MalformedRecord("truth duration_s must be a positive integer")
    if not isinstance(raw_segments, list):
        raise MalformedRecord("truth segments must be an array")
    segments = []
    for i, item in enumerate(raw_segments):
        if not isinstance(item, dict):
            raise MalformedRecord(f"segment {i} must be an object")
        try:
            segments.append(SemanticSegment(item["label"], item["start_s"], item["end_s"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedRecord(f"segment {i}: {exc}") from None
    return GroundTruth(video_id=video_id, duration_s=duration_s, segments=tuple(segments))


def load_ground_truth(path: str | Path) -> GroundTruth:
    return parse_ground_truth(Path(path).read_text(encoding="utf-8"))
