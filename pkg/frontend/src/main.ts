/** Page wiring: query parameters, control buttons, time display, queue.
 *
 * Usage: index.html?video=<media-url>&video_id=<id>&user=<id>&api=<base-url>
 * user defaults to a generated id; api defaults to the page origin.
 */

import { randomId } from "./events.js";
import { EventQueue } from "./queue.js";
import { PlayerCore, formatTime } from "./player.js";

function requireElement<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing #${id}`);
  return el as T;
}

export function start(): void {
  const params = new URLSearchParams(window.location.search);
  const videoUrl = params.get("video");
  const videoId = params.get("video_id");
  if (!videoUrl || !videoId) {
    requireElement<HTMLElement>("status").textContent =
      "missing ?video=<media-url>&video_id=<id> query parameters";
    return;
  }
  const identity = {
    videoId,
    userId: params.get("user") ?? randomId("user"),
    sessionId: randomId("sess"),
  };
  const apiBase = params.get("api") ?? window.location.origin;

  const media = requireElement<HTMLVideoElement>("media");
  media.src = videoUrl;
  const status = requireElement<HTMLElement>("status");
  const queue = new EventQueue({
    apiBase,
    onState: (state) => {
      status.textContent =
        state.pending === 0
          ? `${state.sent} events sent`
          : `${state.pending} events pending (${state.sent} sent)`;
    },
  });
  const player = new PlayerCore(media, identity, (record) => queue.enqueue(record));

  const playPause = requireElement<HTMLButtonElement>("play-pause");
  playPause.addEventListener("click", () => {
    player.pressPlayPause();
    playPause.textContent = media.paused ? "Play" : "Pause";
  });
  requireElement<HTMLButtonElement>("go-backward").addEventListener("click", () =>
    player.pressGoBackward(),
  );
  requireElement<HTMLButtonElement>("go-forward").addEventListener("click", () =>
    player.pressGoForward(),
  );
  const mute = requireElement<HTMLButtonElement>("mute");
  mute.addEventListener("click", () => {
    media.muted = !media.muted;
    mute.textContent = media.muted ? "Unmute" : "Mute";
  });

  const clock = requireElement<HTMLElement>("clock");
  const renderClock = () =>
    (clock.textContent = `${formatTime(media.currentTime)} / ${formatTime(media.duration)}`);
  media.addEventListener("timeupdate", renderClock);
  media.addEventListener("loadedmetadata", renderClock);
  renderClock();

  window.addEventListener("beforeunload", () => void queue.flush());
}

start();
