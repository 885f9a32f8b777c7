"""Command-line front door for the whole pipeline.

Subcommands:

    ingest     load an event log into a store (deduplicating)
    analyze    compute ranked key frames for one stored video
    evaluate   compare detected peaks against a ground-truth file
    simulate   generate a synthetic event log for a ground-truth file
    serve      run the HTTP ingestion/analysis service

Exit codes: 0 success, 1 usage error, 2 data error, 3 no peaks (analyze).
Everything except `simulate --seed` is deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import simulate as sim
from .errors import NoPeaks, ReplayKeyError
from .events import Genre, VideoMeta, load_log, write_log
from .evaluation import evaluate, load_ground_truth, render_report_table
from .peaks import KeyframeResult, detect_keyframes
from .series import build_replay_series, smooth
from .store import EventStore

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NO_PEAKS = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract reserves 2 for data
    # errors, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="replaykey", description="Key-frame detection from replay interactions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[], help="load an event log into a store")
    p.add_argument("--log", required=True, help="event log file (.jsonl)")
    p.add_argument("--store", required=True, help="store root directory")
    p.add_argument("--meta", help="optional VideoMeta JSON file (object or array) to register")
    p.add_argument("--lenient", action="store_true", help="skip malformed lines instead of failing")

    p = sub.add_parser("analyze", help="compute ranked key frames for a stored video")
    p.add_argument("--store", required=True)
    p.add_argument("--video", required=True, help="video id")
    p.add_argument("--window", type=int, help="smoothing window seconds (default: genre default)")
    p.add_argument("--min-peak", type=float, default=0.0, help="drop peaks with value <= this")
    p.add_argument("--max-peaks", type=int, help="keep only the top-ranked peaks")
    p.add_argument("--duration", type=int, help="video duration if the video is not registered")
    p.add_argument("--genre", choices=[g.value for g in Genre], help="genre if not registered")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("evaluate", help="compare detected peaks against ground truth")
    p.add_argument("--store", required=True)
    p.add_argument("--video", required=True)
    p.add_argument("--truth", required=True, help="ground-truth JSON file")
    p.add_argument("--tolerance", type=int, default=60, help="detection tolerance in seconds")
    p.add_argument("--window", type=int, help="smoothing window seconds (default: genre default)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("simulate", help="generate a synthetic event log for a ground truth")
    p.add_argument("--truth", required=True, help="ground-truth JSON file")
    p.add_argument("--users", type=int, default=sim.DEFAULT_USERS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replays-mean", type=float, default=sim.DEFAULT_REPLAYS_PER_SEGMENT)
    p.add_argument("--skip-rate", type=float, default=sim.DEFAULT_FORWARD_SKIP_RATE)
    p.add_argument("--noise-sigma", type=float, default=sim.DEFAULT_SEEK_NOISE_SIGMA_S)
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", help="listen address host:port (env REPLAYKEY_ADDR)")
    p.add_argument("--store", help="store root directory (env REPLAYKEY_STORE)")
    p.add_argument("--cors", action="store_true", help="allow cross-origin requests")

    return parser


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_keyframes(result: KeyframeResult, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.to_dict(), indent=2) + "\n"
    lines = [f"{'rank':<6}{'time_s':<8}{'value':<10}window"]
    for peak, window in zip(result.peaks, result.windows):
        lines.append(f"{peak.rank:<6}{peak.time_s:<8}{peak.value:<10g}[{window[0]}, {window[1]}]")
    lines.append(f"thumbnail at {result.thumbnail_time_s}s")
    return "\n".join(lines) + "\n"


def _resolve_meta(store: EventStore, args) -> VideoMeta:
    meta = store.get_meta(args.video)
    if meta is not None:
        return meta
    if args.duration is None:
        raise ReplayKeyError(
            f"video {args.video!r} is not registered in the store; pass --duration"
        )
    genre = Genre(args.genre) if args.genre else None
    return VideoMeta(video_id=args.video, duration_s=args.duration, genre=genre)


def _cmd_ingest(args) -> int:
    store = EventStore(args.store)
    if args.meta:
        doc = json.loads(Path(args.meta).read_text(encoding="utf-8"))
        for item in doc if isinstance(doc, list) else [doc]:
            genre = Genre(item["genre"]) if item.get("genre") else None
            store.register_video(
                VideoMeta(item["video_id"], item["duration_s"], genre, item.get("title"))
            )
    with open(args.log, "r", encoding="utf-8") as fh:
        loaded = load_log(fh, strict=not args.lenient)
    result = store.append_events(loaded.events)
    print(
        f"ingested {result.accepted} events "
        f"({loaded.duplicates + result.duplicates} duplicates dropped, "
        f"{loaded.skipped} bad lines skipped)"
    )
    return EXIT_OK


def _cmd_analyze(args) -> int:
    store = EventStore(args.store)
    meta = _resolve_meta(store, args)
    raw = build_replay_series(store.get_events(args.video), meta)
    smoothed = smooth(raw, args.window or meta.default_window_s)
    try:
        result = detect_keyframes(smoothed, min_value=args.min_peak, max_peaks=args.max_peaks)
    except NoPeaks:
        print(
            f"no peaks for video {args.video!r}: no replay activity yet, ingest more data",
            file=sys.stderr,
        )
        return EXIT_NO_PEAKS
    _write_out(_render_keyframes(result, args.format), args.out)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    store = EventStore(args.store)
    truth = load_ground_truth(args.truth)
    if truth.video_id != args.video:
        raise ReplayKeyError(f"truth file is for {truth.video_id!r}, not {args.video!r}")
    meta = store.get_meta(args.video)
    if meta is not None and meta.duration_s != truth.duration_s:
        raise ReplayKeyError(
            f"store duration {meta.duration_s} conflicts with truth duration {truth.duration_s}"
        )
    if meta is None:
        meta = VideoMeta(video_id=truth.video_id, duration_s=truth.duration_s)
    raw = build_replay_series(store.get_events(args.video), meta)
    smoothed = smooth(raw, args.window or meta.default_window_s)
    report = evaluate(smoothed, list(truth.segments), tolerance_s=args.tolerance)
    if args.format == "table":
        _write_out(render_report_table(report), args.out)
    else:
        _write_out(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    truth = load_ground_truth(args.truth)
    config = sim.SimulationConfig.from_truth(
        truth,
        n_users=args.users,
        seed=args.seed,
        replays_per_segment_mean=args.replays_mean,
        forward_skip_rate=args.skip_rate,
        seek_noise_sigma_s=args.noise_sigma,
    )
    _write_out(write_log(sim.simulate_sessions(config)), args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import run_server

    run_server(args.addr, args.store, cors=args.cors)
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "analyze": _cmd_analyze,
    "evaluate": _cmd_evaluate,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ReplayKeyError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
