import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import max_detectable
from replaykey import (
    ActivitySeries,
    GroundTruth,
    MalformedRecord,
    OverlappingSegments,
    Peak,
    SegmentOutOfRange,
    SemanticSegment,
    SeriesKind,
    build_pulse_series,
    evaluate,
    load_ground_truth,
    match_peaks,
    parse_ground_truth,
    rank_peaks,
    render_report_table,
)

# Reference evaluation data: two videos with four annotated segments each,
# the peak sets observed for them, and the resulting signed distances.
LECTURE_STARTS = [40, 145, 350, 554]
LECTURE_PEAKS = [(73, 10.0), (158, 10.0), (398, 9.0), (555, 13.0)]
LECTURE_DISTANCES = [33, 13, 48, 1]
HOWTO_STARTS = [105, 230, 374, 475]
HOWTO_PEAKS = [(150, 16.0), (251, 8.0), (361, 3.0), (496, 7.0)]
HOWTO_DISTANCES = [45, 21, -13, 21]


def segs(starts, width=20):
    return [SemanticSegment(f"S{i + 1}", s, s + width) for i, s in enumerate(starts)]


def peaks_of(pairs):
    return rank_peaks([Peak(t, v) for t, v in pairs])


def test_pulse_hand_computed():
    series = build_pulse_series([SemanticSegment("S1", 2, 4)], 6)
    assert series.cells == (0, 0, 1, 1, 0, 0)
    assert series.kind is SeriesKind.PULSE


def test_pulse_empty_segments():
    assert build_pulse_series([], 5).cells == (0,) * 5


@given(st.lists(st.tuples(st.integers(0, 50), st.integers(1, 10)), max_size=6))
def test_pulse_mass_equals_total_segment_length(items):
    cursor = 0
    segments = []
    for gap, width in items:
        start = cursor + gap
        segments.append(SemanticSegment(f"S{len(segments)}", start, start + width))
        cursor = start + width
    duration = cursor + 1
    series = build_pulse_series(segments, duration)
    assert sum(series.cells) == sum(s.end_s - s.start_s for s in segments)


def test_segment_bounds_validation():
    with pytest.raises(ValueError):
        SemanticSegment("S1", -1, 5)
    with pytest.raises(ValueError):
        SemanticSegment("S1", 5, 5)
    with pytest.raises(ValueError):
        SemanticSegment("S1", 5.0, 9)


def test_segments_must_fit_duration():
    with pytest.raises(SegmentOutOfRange):
        build_pulse_series([SemanticSegment("S1", 2, 11)], 10)


def test_segments_must_be_sorted_and_disjoint():
    a, b = SemanticSegment("A", 10, 20), SemanticSegment("B", 15, 30)
    with pytest.raises(OverlappingSegments):
        build_pulse_series([a, b], 40)
    with pytest.raises(OverlappingSegments):
        build_pulse_series([b, a], 40)
    # adjacent tiling is fine
    build_pulse_series([SemanticSegment("A", 0, 10), SemanticSegment("B", 10, 20)], 20)


@pytest.mark.parametrize(
    "starts,pairs,distances",
    [
        (LECTURE_STARTS, LECTURE_PEAKS, LECTURE_DISTANCES),
        (HOWTO_STARTS, HOWTO_PEAKS, HOWTO_DISTANCES),
    ],
)
def test_reference_videos_match_four_of_four(starts, pairs, distances):
    rows = match_peaks(peaks_of(pairs), segs(starts))
    assert [r.signed_distance_s for r in rows] == distances
    assert all(r.detected for r in rows)


def test_no_peaks_leaves_all_unmatched():
    rows = match_peaks([], segs([10, 100], width=5))
    assert [r.matched_time_s for r in rows] == [None, None]
    assert not any(r.detected for r in rows)


def test_fewer_peaks_than_segments():
    rows = match_peaks([Peak(12, 3.0)], segs([10, 100], width=5))
    assert rows[0].matched_time_s == 12 and rows[0].detected
    assert rows[1].matched_time_s is None and not rows[1].detected


def test_exact_start_gives_zero_distance():
    rows = match_peaks([Peak(40, 2.0)], segs([40], width=5))
    assert rows[0].signed_distance_s == 0 and rows[0].detected


def test_tolerance_is_strict():
    rows = match_peaks([Peak(100, 2.0)], segs([40], width=5), tolerance_s=60)
    assert rows[0].signed_distance_s == 60 and not rows[0].detected
    rows = match_peaks([Peak(99, 2.0)], segs([40], width=5), tolerance_s=60)
    assert rows[0].detected
    with pytest.raises(ValueError):
        match_peaks([], segs([40], width=5), tolerance_s=0)


def test_equal_distance_prefers_earlier_peak():
    # both peaks sit 10 s from the single start; the earlier one wins
    rows = match_peaks([Peak(110, 5.0), Peak(90, 5.0)], segs([100], width=5))
    assert rows[0].matched_time_s == 90


@st.composite
def match_cases(draw):
    starts = sorted(draw(st.sets(st.integers(0, 500), min_size=1, max_size=8)))
    times = sorted(draw(st.sets(st.integers(0, 560), max_size=8)))
    peaks = [Peak(t, float(draw(st.integers(1, 20)))) for t in times]
    return segs(starts, width=1), peaks


@given(match_cases())
def test_matching_is_one_to_one(case):
    segments, peaks = case
    rows = match_peaks(peaks, segments)
    assert len(rows) == len(segments)
    matched = [r.matched_time_s for r in rows if r.matched_time_s is not None]
    assert len(matched) == min(len(peaks), len(segments))
    assert len(set(matched)) == len(matched)
    peak_times = {p.time_s for p in peaks}
    assert all(t in peak_times for t in matched)


@given(match_cases(), st.integers(1, 50), st.integers(0, 100))
def test_detections_grow_with_tolerance(case, tol, extra):
    segments, peaks = case
    low = sum(r.detected for r in match_peaks(peaks, segments, tolerance_s=tol))
    high = sum(r.detected for r in match_peaks(peaks, segments, tolerance_s=tol + extra))
    assert low <= high


@pytest.mark.parametrize(
    "starts,pairs",
    [(LECTURE_STARTS, LECTURE_PEAKS), (HOWTO_STARTS, HOWTO_PEAKS)],
)
def test_greedy_is_optimal_on_reference_data(starts, pairs):
    rows = match_peaks(peaks_of(pairs), segs(starts))
    best = max_detectable([t for t, _ in pairs], starts, 60)
    assert sum(r.detected for r in rows) == best == len(starts)


def test_greedy_can_fall_short_of_optimal():
    # Known trade-off of the greedy pairing: grabbing the globally closest
    # pair (10, 40) forces the far pairing (0, 65) which misses, while the
    # crossed assignment would detect both.
    segments = [SemanticSegment("A", 0, 5), SemanticSegment("B", 10, 15)]
    peaks = [Peak(40, 2.0), Peak(65, 2.0)]
    rows = match_peaks(peaks, segments, tolerance_s=60)
    assert sum(r.detected for r in rows) == 1
    assert max_detectable([40, 65], [0, 10], 60) == 2


def test_evaluate_on_spiky_series_reproduces_reference_numbers():
    cells = [0.0] * 600
    for t, v in LECTURE_PEAKS:
        cells[t] = v
    series = ActivitySeries("lecture-a", SeriesKind.SMOOTHED, tuple(cells), smoothing_window_s=1)
    report = evaluate(series, segs(LECTURE_STARTS))
    assert report.detection_rate == 1.0
    assert report.thumbnail_time_s == 555
    assert [r.signed_distance_s for r in report.rows] == LECTURE_DISTANCES


def test_evaluate_flat_series_falls_back():
    series = ActivitySeries("v", SeriesKind.RAW_REPLAY, (0,) * 100)
    report = evaluate(series, segs([20], width=10))
    assert report.detection_rate == 0.0
    assert report.thumbnail_time_s == 0
    assert report.rows[0].matched_time_s is None


def test_evaluate_no_segments_is_vacuously_perfect():
    series = ActivitySeries("v", SeriesKind.RAW_REPLAY, (0, 3, 0))
    assert evaluate(series, []).detection_rate == 1.0


def test_report_table_mirrors_cell_notation():
    cells = [0.0] * 600
    for t, v in LECTURE_PEAKS:
        cells[t] = v
    series = ActivitySeries("lecture-a", SeriesKind.SMOOTHED, tuple(cells), smoothing_window_s=1)
    text = render_report_table(evaluate(series, segs(LECTURE_STARTS)))
    for cell in ("33 (40) [10]", "13 (145) [10]", "48 (350) [9]", "1 (554) [13]"):
        assert cell in text
    assert "detected 4/4 (100%)" in text
    assert "thumbnail at 555s" in text


def test_report_table_marks_unmatched():
    report = evaluate(ActivitySeries("v", SeriesKind.RAW_REPLAY, (0,) * 50), segs([5], width=3))
    assert "-- (5) [--]" in render_report_table(report)


def test_parse_ground_truth_round_trip():
    truth = GroundTruth("vid", 100, (SemanticSegment("S1", 10, 20),))
    import json

    assert parse_ground_truth(json.dumps(truth.to_dict())) == truth


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"video_id": "v", "duration_s": 100}',
        '{"video_id": "", "duration_s": 100, "segments": []}',
        '{"video_id": "v", "duration_s": 0, "segments": []}',
        '{"video_id": "v", "duration_s": "100", "segments": []}',
        '{"video_id": "v", "duration_s": 100, "segments": {}}',
        '{"video_id": "v", "duration_s": 100, "segments": [5]}',
        '{"video_id": "v", "duration_s": 100, "segments": [{"label": "S1"}]}',
        '{"video_id": "v", "duration_s": 100, "segments": [{"label": "S1", "start_s": 9, "end_s": 5}]}',
    ],
)
def test_parse_ground_truth_rejects_malformed(text):
    with pytest.raises(MalformedRecord):
        parse_ground_truth(text)


def test_bundled_truth_files(lecture_truth_path, howto_truth_path):
    lecture = load_ground_truth(lecture_truth_path)
    assert lecture.video_id == "lecture-a"
    assert lecture.duration_s == 600
    assert [s.start_s for s in lecture.segments] == LECTURE_STARTS
    howto = load_ground_truth(howto_truth_path)
    assert [s.start_s for s in howto.segments] == HOWTO_STARTS
