/** Player control core: fixed ±30 s seeks and play/pause, each press
 * emitting exactly one event with the cue time sampled BEFORE the seek
 * moves the position — the analysis keys off where the viewer was when
 * they decided to jump.
 *
 * There is deliberately no free-seek surface here: the only ways to move
 * through the video are these controls.
 */

import type { InteractionRecord, PlayerAction, RecordIdentity } from "./events.js";
import { makeRecord } from "./events.js";

export const SEEK_STEP_S = 30;

/** The slice of a media element the controls need; tests provide a fake. */
export interface MediaLike {
  currentTime: number;
  readonly duration: number;
  readonly paused: boolean;
  play(): void;
  pause(): void;
}

export type EventSink = (record: InteractionRecord) => void;

export class PlayerCore {
  constructor(
    private readonly media: MediaLike,
    private readonly identity: RecordIdentity,
    private readonly sink: EventSink,
    private readonly now: () => Date = () => new Date(),
  ) {}

  get cueTimeS(): number {
    return this.media.currentTime;
  }

  get durationS(): number {
    return this.media.duration;
  }

  pressGoBackward(): void {
    const cue = this.media.currentTime;
    this.emit("seek_back_30", cue);
    this.media.currentTime = Math.max(0, cue - SEEK_STEP_S);
  }

  pressGoForward(): void {
    const cue = this.media.currentTime;
    this.emit("seek_fwd_30", cue);
    const limit = Number.isFinite(this.media.duration) ? this.media.duration : cue + SEEK_STEP_S;
    this.media.currentTime = Math.min(limit, cue + SEEK_STEP_S);
  }

  pressPlayPause(): void {
    const cue = this.media.currentTime;
    if (this.media.paused) {
      this.emit("play", cue);
      this.media.play();
    } else {
      this.emit("pause", cue);
      this.media.pause();
    }
  }

  private emit(action: PlayerAction, cue: number): void {
    this.sink(makeRecord(this.identity, action, cue, this.now));
  }
}

/** mm:ss (or h:mm:ss) for the cue/total time display. */
export function formatTime(seconds: number): string {
  if (!Number.isFinite(seconds)) return "--:--";
  const whole = Math.floor(seconds);
  const h = Math.floor(whole / 3600);
  const m = Math.floor((whole % 3600) / 60);
  const s = whole % 60;
  const mmss = `${String(m).padStart(2, "0")}:${String(s).padStart(2, "0")}`;
  return h > 0 ? `${h}:${mmss}` : mmss;
}
