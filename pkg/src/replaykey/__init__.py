"""Key-frame detection for videos from aggregated viewer replay interactions.

Pipeline: interaction events -> per-second replay-count series -> centered
moving average -> derivative zero-crossing peaks -> ranked key frames and a
thumbnail time, with a ground-truth evaluation harness, a deterministic
session simulator, an HTTP ingestion service, and a CLI.
"""

from .errors import (
    BadConfig,
    BadWindow,
    CueOutOfRange,
    MalformedRecord,
    NoPeaks,
    OverlappingSegments,
    ReplayKeyError,
    SegmentOutOfRange,
    StorageFailure,
    TooShort,
    VideoConflict,
    VideoMismatch,
)
from .events import (
    Action,
    Genre,
    InteractionEvent,
    LoadResult,
    VideoMeta,
    load_log,
    parse_event_line,
    serialize_event,
    write_log,
)
from .evaluation import (
    EvaluationReport,
    GroundTruth,
    MatchRow,
    SemanticSegment,
    build_pulse_series,
    evaluate,
    load_ground_truth,
    match_peaks,
    parse_ground_truth,
    render_report_table,
)
from .peaks import (
    KeyframeResult,
    Peak,
    derivative,
    detect_keyframes,
    find_peaks,
    keyframe_windows,
    rank_peaks,
    select_thumbnail,
)
from .series import ActivitySeries, SeriesKind, build_replay_series, export_series, smooth
from .simulate import SimulationConfig, simulate_sessions
from .store import AppendResult, EventStore

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActivitySeries",
    "AppendResult",
    "BadConfig",
    "BadWindow",
    "CueOutOfRange",
    "EvaluationReport",
    "EventStore",
    "Genre",
    "GroundTruth",
    "InteractionEvent",
    "KeyframeResult",
    "LoadResult",
    "MalformedRecord",
    "MatchRow",
    "NoPeaks",
    "OverlappingSegments",
    "Peak",
    "ReplayKeyError",
    "SegmentOutOfRange",
    "SemanticSegment",
    "SeriesKind",
    "SimulationConfig",
    "StorageFailure",
    "TooShort",
    "VideoConflict",
    "VideoMeta",
    "VideoMismatch",
    "build_pulse_series",
    "build_replay_series",
    "derivative",
    "detect_keyframes",
    "evaluate",
    "export_series",
    "find_peaks",
    "keyframe_windows",
    "load_ground_truth",
    "load_log",
    "match_peaks",
    "parse_ground_truth",
    "parse_event_line",
    "rank_peaks",
    "render_report_table",
    "select_thumbnail",
    "serialize_event",
    "simulate_sessions",
    "smooth",
    "write_log",
]
