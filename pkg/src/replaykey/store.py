"""Append-only on-disk event store with in-memory dedup and video registry.

Layout under the store root:

    videos/<quoted-video-id>/events.jsonl   append-only event log
    videos/<quoted-video-id>/meta.json      registered VideoMeta, if any

Recovery simply replays every log through the deduplicating loader, so a
store survives hard kills: whatever was flushed before the crash is what the
reborn store serves. An append is fsynced before it is acknowledged.
"""

from __future__ import annotations

import json
import os
import threading
import urllib.parse
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import StorageFailure, VideoConflict
from .events import Genre, InteractionEvent, LOG_EXTENSION, VideoMeta, load_log, serialize_event

_META_FILE = "meta.json"
_LOG_FILE = "events" + LOG_EXTENSION


@dataclass
class AppendResult:
    accepted: int
    duplicates: int


def _meta_to_dict(meta: VideoMeta) -> dict:
    doc = {"video_id": meta.video_id, "duration_s": meta.duration_s}
    if meta.genre is not None:
        doc["genre"] = meta.genre.value
    if meta.title is not None:
        doc["title"] = meta.title
    return doc


def _meta_from_dict(doc: dict) -> VideoMeta:
    genre = Genre(doc["genre"]) if "genre" in doc and doc["genre"] is not None else None
    return VideoMeta(
        video_id=doc["video_id"],
        duration_s=doc["duration_s"],
        genre=genre,
        title=doc.get("title"),
    )


class EventStore:
    """Durable per-video event logs plus the video registry.

    Appends to one video are serialized; reads copy a snapshot under the
    lock, so analysis always sees a consistent prefix of the log.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._videos_dir = self.root / "videos"
        self._videos_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._events: dict[str, list[InteractionEvent]] = {}
        self._meta: dict[str, VideoMeta] = {}
        self._ids: set[str] = set()
        self._recover()

    def _video_dir(self, video_id: str) -> Path:
        return self._videos_dir / urllib.parse.quote(video_id, safe="")

    def _recover(self) -> None:
        for entry in sorted(self._videos_dir.iterdir()):
            if not entry.is_dir():
                continue
            video_id = urllib.parse.unquote(entry.name)
            meta_path = entry / _META_FILE
            if meta_path.exists():
                self._meta[video_id] = _meta_from_dict(json.loads(meta_path.read_text("utf-8")))
            log_path = entry / _LOG_FILE
            if log_path.exists():
                # Lenient load: a crash can leave a truncated final line.
                with log_path.open("r", encoding="utf-8") as fh:
                    loaded = load_log(fh, strict=False)
                fresh = [e for e in loaded.events if e.event_id not in self._ids]
                self._ids.update(e.event_id for e in fresh)
                self._events[video_id] = fresh

    # -- registry ----------------------------------------------------------

    def register_video(self, meta: VideoMeta) -> bool:
        """Register or re-register a video; returns True when newly created.

        Re-registering with the same duration is allowed (genre and title may
        be updated); a different duration raises VideoConflict.
        """
        with self._lock:
            existing = self._meta.get(meta.video_id)
            if existing is not None and existing.duration_s != meta.duration_s:
                raise VideoConflict(
                    f"video {meta.video_id!r} already registered with duration "
                    f"{existing.duration_s}, got {meta.duration_s}"
                )
            created = existing is None
            self._meta[meta.video_id] = meta
            video_dir = self._video_dir(meta.video_id)
            video_dir.mkdir(parents=True, exist_ok=True)
            tmp = video_dir / (_META_FILE + ".tmp")
            tmp.write_text(json.dumps(_meta_to_dict(meta), indent=2) + "\n", encoding="utf-8")
            os.replace(tmp, video_dir / _META_FILE)
            return created

    def get_meta(self, video_id: str) -> VideoMeta | None:
        with self._lock:
            return self._meta.get(video_id)

    def list_videos(self) -> list[str]:
        with self._lock:
            return sorted(self._meta)

    # -- events ------------------------------------------------------------

    def append_events(self, events: Sequence[InteractionEvent]) -> AppendResult:
        """Append new events, fsync them, and report accepted/duplicate counts.

        Duplicate event_ids (already stored or repeated within the batch) are
        skipped silently; nothing is acknowledged that was not flushed.
        """
        by_video: dict[str, list[InteractionEvent]] = {}
        accepted = 0
        duplicates = 0
        with self._lock:
            for event in events:
                if event.event_id in self._ids:
                    duplicates += 1
                    continue
                self._ids.add(event.event_id)
                by_video.setdefault(event.video_id, []).append(event)
                accepted += 1
            done: set[str] = set()
            try:
                for video_id, fresh in by_video.items():
                    self._append_to_log(video_id, fresh)
                    self._events.setdefault(video_id, []).extend(fresh)
                    done.add(video_id)
            except OSError as exc:
                # Forget ids that were not flushed so a retry can store them.
                for video_id, fresh in by_video.items():
                    if video_id not in done:
                        self._ids.difference_update(e.event_id for e in fresh)
                raise StorageFailure(f"could not persist events: {exc}") from exc
        return AppendResult(accepted=accepted, duplicates=duplicates)

    def _append_to_log(self, video_id: str, events: Iterable[InteractionEvent]) -> None:
        video_dir = self._video_dir(video_id)
        video_dir.mkdir(parents=True, exist_ok=True)
        with (video_dir / _LOG_FILE).open("a", encoding="utf-8") as fh:
            for event in events:
                fh.write(serialize_event(event) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def get_events(self, video_id: str) -> list[InteractionEvent]:
        """Snapshot copy of one video's stored events, in append order."""
        with self._lock:
            return list(self._events.get(video_id, ()))

    def counts(self) -> tuple[int, int]:
        """(registered videos, stored events) for health reporting."""
        with self._lock:
            return len(self._meta), sum(len(v) for v in self._events.values())
