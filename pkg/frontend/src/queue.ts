/** FIFO event queue with batched delivery and backoff retry.
 *
 * Events are appended in press order and posted as one array to the
 * ingestion endpoint. A failed flush keeps the whole batch at the head of
 * the queue, so order never changes and delivery is at-least-once; the
 * server deduplicates by event_id, which makes retries safe.
 */

import type { InteractionRecord } from "./events.js";

export interface QueueOptions {
  /** Service base URL, e.g. "http://127.0.0.1:8077". */
  apiBase: string;
  /** Injectable fetch for tests; defaults to the global. */
  fetchFn?: typeof fetch;
  /** Initial retry delay; doubles per consecutive failure. */
  retryBaseMs?: number;
  /** Retry delay ceiling. */
  retryMaxMs?: number;
  /** Called after each flush attempt, e.g. to update a status line. */
  onState?: (state: QueueState) => void;
}

export interface QueueState {
  pending: number;
  sent: number;
  consecutiveFailures: number;
}

export class EventQueue {
  private queue: InteractionRecord[] = [];
  private sent = 0;
  private failures = 0;
  private inflight: Promise<boolean> | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly endpoint: string;
  private readonly fetchFn: typeof fetch;
  private readonly retryBaseMs: number;
  private readonly retryMaxMs: number;
  private readonly onState?: (state: QueueState) => void;

  constructor(options: QueueOptions) {
    this.endpoint = options.apiBase.replace(/\/$/, "") + "/api/v1/events";
    this.fetchFn = options.fetchFn ?? fetch;
    this.retryBaseMs = options.retryBaseMs ?? 500;
    this.retryMaxMs = options.retryMaxMs ?? 15_000;
    this.onState = options.onState;
  }

  get state(): QueueState {
    return {
      pending: this.queue.length,
      sent: this.sent,
      consecutiveFailures: this.failures,
    };
  }

  enqueue(record: InteractionRecord): void {
    this.queue.push(record);
    // A running drain loops until the queue is empty and a pending retry
    // timer re-flushes everything, so only start a flush when neither is
    // active; this keeps enqueues from defeating the backoff pacing.
    if (this.inflight === null && this.timer === null) {
      void this.flush();
    }
  }

  /** Drain the queue now; resolves true when it emptied, false on failure. */
  async flush(): Promise<boolean> {
    while (this.inflight !== null) {
      await this.inflight;
    }
    if (this.queue.length === 0) return true;
    this.inflight = this.drain();
    try {
      return await this.inflight;
    } finally {
      this.inflight = null;
    }
  }

  private async drain(): Promise<boolean> {
    while (this.queue.length > 0) {
      // Presses during the await stay queued behind this batch.
      const batch = this.queue.slice();
      let delivered = false;
      try {
        const response = await this.fetchFn(this.endpoint, {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify(batch),
        });
        delivered = response.ok;
      } catch {
        delivered = false;
      }
      if (!delivered) {
        this.failures += 1;
        this.scheduleRetry();
        this.onState?.(this.state);
        return false;
      }
      this.queue.splice(0, batch.length);
      this.sent += batch.length;
      this.failures = 0;
      this.onState?.(this.state);
    }
    return true;
  }

  private scheduleRetry(): void {
    if (this.timer !== null) return;
    const delay = Math.min(this.retryBaseMs * 2 ** (this.failures - 1), this.retryMaxMs);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.flush();
    }, delay);
  }

  /** Cancel a pending retry timer (for teardown). */
  stop(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}
