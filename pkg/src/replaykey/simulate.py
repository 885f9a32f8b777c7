"""Deterministic synthetic viewers for desk-scale experiments.

Each simulated user hunts for the content of every annotated segment: they
start playback, skip forward toward the segment, and replay around its start
a few times. Replay cue times center on segment start + 30 so the replayed
30-second span covers the start itself, which is where real interest
concentrates. All randomness comes from one seeded generator, so a config
maps to exactly one event log, byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

import numpy as np

from .errors import BadConfig
from .evaluation import GroundTruth, SemanticSegment, validate_segments
from .events import Action, InteractionEvent
from .series import REPLAY_SPAN_S

# Fixed epoch for synthetic wall clocks; keeps serialized logs reproducible.
WALL_BASE = datetime(2024, 1, 1, tzinfo=timezone.utc)

DEFAULT_USERS = 23
DEFAULT_REPLAYS_PER_SEGMENT = 2.0
DEFAULT_SEEK_NOISE_SIGMA_S = 10.0
DEFAULT_FORWARD_SKIP_RATE = 3.0


@dataclass(frozen=True)
class SimulationConfig:
    """Synthetic-viewer behavior parameters plus the truth being simulated."""

    video_id: str
    duration_s: int
    segments: tuple[SemanticSegment, ...]
    n_users: int = DEFAULT_USERS
    replays_per_segment_mean: float = DEFAULT_REPLAYS_PER_SEGMENT
    seek_noise_sigma_s: float = DEFAULT_SEEK_NOISE_SIGMA_S
    forward_skip_rate: float = DEFAULT_FORWARD_SKIP_RATE
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if self.duration_s < 1:
            raise BadConfig("duration_s must be >= 1")
        if self.n_users < 0:
            raise BadConfig("n_users must be >= 0")
        for name in ("replays_per_segment_mean", "seek_noise_sigma_s", "forward_skip_rate"):
            if getattr(self, name) < 0:
                raise BadConfig(f"{name} must be >= 0")
        try:
            validate_segments(self.segments, self.duration_s)
        except Exception as exc:
            raise BadConfig(f"invalid segments: {exc}") from None

    @classmethod
    def from_truth(cls, truth: GroundTruth, **overrides) -> "SimulationConfig":
        return cls(
            video_id=truth.video_id,
            duration_s=truth.duration_s,
            segments=truth.segments,
            **overrides,
        )


def simulate_sessions(config: SimulationConfig) -> list[InteractionEvent]:
    """Generate the full interaction log for one synthetic cohort.

    Per user and segment: one play at cue 0, a Poisson number of forward
    skips stepping toward the segment, then a Poisson number of replays with
    Gaussian landing noise. Identical configs produce identical logs.
    """
    rng = np.random.default_rng(config.seed % 2**64)
    duration = float(config.duration_s)
    events: list[InteractionEvent] = []

    def emit(user: str, session: str, seg_index: int, counter: int, action: Action, cue: float):
        events.append(
            InteractionEvent(
                event_id=f"sim-{config.seed}-u{user}-g{seg_index:02d}-e{counter:03d}",
                video_id=config.video_id,
                user_id=f"user-{user}",
                session_id=session,
                action=action,
                cue_time_s=min(max(cue, 0.0), duration),
                wall_time=WALL_BASE + timedelta(seconds=len(events)),
            )
        )

    for u in range(config.n_users):
        user = f"{u:03d}"
        session = f"sess-{config.seed}-{u:03d}"
        for gi, seg in enumerate(config.segments):
            counter = 0
            emit(user, session, gi, counter, Action.PLAY, 0.0)
            counter += 1

            interior = (seg.start_s + seg.end_s) / 2
            landing = min(max(interior + rng.normal(0.0, config.seek_noise_sigma_s), 0.0), duration)
            n_skips = int(rng.poisson(config.forward_skip_rate))
            for i in range(n_skips):
                # Skips walk up to the landing point in 30 s strides.
                cue = landing - 30.0 * (n_skips - i)
                emit(user, session, gi, counter, Action.SEEK_FWD_30, cue)
                counter += 1

            n_replays = int(rng.poisson(config.replays_per_segment_mean))
            for _ in range(n_replays):
                cue = seg.start_s + REPLAY_SPAN_S + rng.normal(0.0, config.seek_noise_sigma_s)
                emit(user, session, gi, counter, Action.SEEK_BACK_30, cue)
                counter += 1
    return events
