"""Exception types shared across the toolkit."""


class ReplayKeyError(Exception):
    """Base class for all toolkit errors."""


class MalformedRecord(ReplayKeyError):
    """An event-log line or JSON document does not match its schema."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class VideoMismatch(ReplayKeyError):
    """An event carries a video_id different from the series being built."""


class CueOutOfRange(ReplayKeyError):
    """An event cue time lies past the end of the video."""


class BadWindow(ReplayKeyError):
    """Smoothing window is smaller than 1 or larger than the series."""


class TooShort(ReplayKeyError):
    """Series has too few cells for the requested operation."""


class NoPeaks(ReplayKeyError):
    """No peaks found; there is not enough replay activity yet."""


class SegmentOutOfRange(ReplayKeyError):
    """A ground-truth segment lies outside [0, duration_s]."""


class OverlappingSegments(ReplayKeyError):
    """Ground-truth segments overlap or are not sorted by start."""


class BadConfig(ReplayKeyError):
    """Simulation configuration violates its invariants."""


class VideoConflict(ReplayKeyError):
    """A video is already registered with a different duration."""


class StorageFailure(ReplayKeyError):
    """The event store could not persist an append."""
