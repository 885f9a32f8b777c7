/** Wire format for player interaction events, matching the ingestion service. */

export const SCHEMA_VERSION = "1";

export const ACTIONS = ["play", "pause", "seek_back_30", "seek_fwd_30"] as const;

export type PlayerAction = (typeof ACTIONS)[number];

export interface InteractionRecord {
  v: typeof SCHEMA_VERSION;
  event_id: string;
  video_id: string;
  user_id: string;
  session_id: string;
  action: PlayerAction;
  cue_time_s: number;
  wall_time: string;
}

export interface RecordIdentity {
  videoId: string;
  userId: string;
  sessionId: string;
}

/** Random id usable for event/session/user identifiers. */
export function randomId(prefix: string): string {
  const uuid =
    typeof crypto !== "undefined" && "randomUUID" in crypto
      ? crypto.randomUUID()
      : `${Date.now().toString(36)}-${Math.random().toString(36).slice(2, 10)}`;
  return `${prefix}-${uuid}`;
}

export function makeRecord(
  identity: RecordIdentity,
  action: PlayerAction,
  cueTimeS: number,
  now: () => Date = () => new Date(),
): InteractionRecord {
  if (!Number.isFinite(cueTimeS) || cueTimeS < 0) {
    throw new RangeError(`cue_time_s must be finite and >= 0, got ${cueTimeS}`);
  }
  return {
    v: SCHEMA_VERSION,
    event_id: randomId("evt"),
    video_id: identity.videoId,
    user_id: identity.userId,
    session_id: identity.sessionId,
    action,
    cue_time_s: cueTimeS,
    wall_time: now().toISOString(),
  };
}

/** Structural check mirroring the server's record validation; [] means valid. */
export function recordProblems(value: unknown): string[] {
  const problems: string[] = [];
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    return ["record must be an object"];
  }
  const record = value as Record<string, unknown>;
  if (record.v !== SCHEMA_VERSION) problems.push(`v must be "${SCHEMA_VERSION}"`);
  for (const key of ["event_id", "video_id", "user_id", "session_id"]) {
    if (typeof record[key] !== "string" || record[key] === "") {
      problems.push(`${key} must be a non-empty string`);
    }
  }
  if (!ACTIONS.includes(record.action as PlayerAction)) {
    problems.push(`action must be one of ${ACTIONS.join(", ")}`);
  }
  if (
    typeof record.cue_time_s !== "number" ||
    !Number.isFinite(record.cue_time_s) ||
    record.cue_time_s < 0
  ) {
    problems.push("cue_time_s must be a finite number >= 0");
  }
  if (
    typeof record.wall_time !== "string" ||
    Number.isNaN(Date.parse(record.wall_time))
  ) {
    problems.push("wall_time must be an RFC 3339 timestamp");
  }
  return problems;
}
