import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_peaks
from replaykey import (
    ActivitySeries,
    NoPeaks,
    Peak,
    SeriesKind,
    TooShort,
    derivative,
    detect_keyframes,
    find_peaks,
    keyframe_windows,
    rank_peaks,
    select_thumbnail,
)

cell_lists = st.lists(st.integers(min_value=0, max_value=6), min_size=3, max_size=40)


def series(cells):
    return ActivitySeries("v", SeriesKind.RAW_REPLAY, tuple(cells))


def times_values(peaks):
    return [(p.time_s, p.value) for p in peaks]


def test_derivative_hand_computed():
    assert derivative(series((1, 3, 2, 2))) == [2, -1, 0]


def test_derivative_reconstructs_series():
    cells = (0, 2, 5, 5, 1, 0, 3)
    diffs = derivative(series(cells))
    total = cells[0]
    rebuilt = [float(cells[0])]
    for d in diffs:
        total += d
        rebuilt.append(total)
    assert rebuilt == [float(c) for c in cells]


def test_derivative_too_short():
    with pytest.raises(TooShort):
        derivative(ActivitySeries("v", SeriesKind.RAW_REPLAY, (1,)))


def test_single_apex():
    assert times_values(find_peaks(series((0, 1, 3, 1, 0)))) == [(2, 3.0)]


def test_plateau_midpoint():
    assert times_values(find_peaks(series((0, 2, 2, 2, 0)))) == [(2, 2.0)]


def test_even_plateau_rounds_down():
    assert times_values(find_peaks(series((0, 2, 2, 0)))) == [(1, 2.0)]


def test_monotone_has_no_peaks():
    assert find_peaks(series((0, 1, 2, 3))) == []
    assert find_peaks(series((3, 2, 1, 0))) == []
    assert find_peaks(series((2, 2, 2, 2))) == []


def test_boundary_runs_excluded():
    # high edges never count as peaks, even after an interior dip
    assert find_peaks(series((5, 1, 0, 1, 5))) == []
    assert times_values(find_peaks(series((5, 1, 4, 1, 5)))) == [(2, 4.0)]


def test_min_value_filter():
    cells = (0, 1, 0, 4, 0)
    assert times_values(find_peaks(series(cells))) == [(1, 1.0), (3, 4.0)]
    assert times_values(find_peaks(series(cells), min_value=1.0)) == [(3, 4.0)]
    with pytest.raises(ValueError):
        find_peaks(series(cells), min_value=-1.0)


def test_find_peaks_too_short():
    with pytest.raises(TooShort):
        find_peaks(ActivitySeries("v", SeriesKind.RAW_REPLAY, (1, 2)))


@given(cell_lists)
def test_matches_derivative_oracle(cells):
    assert times_values(find_peaks(series(cells))) == brute_force_peaks(cells)


def test_exhaustive_small_series():
    for k in range(3, 9):
        for cells in itertools.product(range(3), repeat=k):
            assert times_values(find_peaks(series(cells))) == brute_force_peaks(cells)


@given(cell_lists, st.integers(min_value=2, max_value=5))
def test_scaling_preserves_peak_times(cells, c):
    base = find_peaks(series(cells))
    scaled = find_peaks(series(tuple(v * c for v in cells)))
    assert [p.time_s for p in scaled] == [p.time_s for p in base]
    assert [p.value for p in scaled] == [p.value * c for p in base]


@given(cell_lists, st.integers(min_value=1, max_value=10))
def test_shift_covariance(cells, pad):
    # prepending zeros shifts every interior peak right by the pad size
    base = brute_force_peaks(cells)
    shifted = find_peaks(series((0,) * pad + tuple(cells)))
    interior = [(t + pad, v) for t, v in base if not (t == 0 or cells[0] == max(cells[: t + 1]))]
    got = [(p.time_s, p.value) for p in shifted if p.time_s > pad]
    for t, v in interior:
        assert (t, v) in got


def test_rank_by_value_then_time():
    peaks = [Peak(73, 10.0), Peak(158, 10.0), Peak(398, 9.0), Peak(555, 13.0)]
    ranked = rank_peaks(peaks)
    assert [(p.time_s, p.rank) for p in ranked] == [
        (555, 1),
        (73, 2),
        (158, 3),
        (398, 4),
    ]


def test_rank_tie_prefers_earlier_time():
    ranked = rank_peaks([Peak(9, 2.0), Peak(4, 2.0)])
    assert [(p.time_s, p.rank) for p in ranked] == [(4, 1), (9, 2)]


def test_select_thumbnail():
    ranked = rank_peaks([Peak(73, 10.0), Peak(555, 13.0)])
    assert select_thumbnail(ranked).time_s == 555
    with pytest.raises(NoPeaks):
        select_thumbnail([])


def test_candidate_windows():
    peaks = [Peak(73, 10.0), Peak(158, 10.0)]
    assert keyframe_windows(peaks).windows == ((13, 73), (98, 158))
    assert keyframe_windows([Peak(30, 1.0)]).windows == ((0, 30),)


def test_detect_keyframes_composes():
    cells = [0] * 200
    cells[50] = 4
    cells[120] = 9
    result = detect_keyframes(series(cells))
    assert result.thumbnail_time_s == 120
    assert [(p.time_s, p.rank) for p in result.peaks] == [(120, 1), (50, 2)]
    assert result.windows == ((60, 120), (0, 50))
    d = result.to_dict()
    assert d["thumbnail_time_s"] == 120
    assert d["peaks"][0] == {
        "time_s": 120,
        "value": 9.0,
        "rank": 1,
        "window": [60, 120],
    }


def test_detect_keyframes_max_peaks():
    cells = [0] * 100
    for t, v in ((10, 3), (30, 7), (60, 5)):
        cells[t] = v
    result = detect_keyframes(series(cells), max_peaks=2)
    assert [(p.time_s, p.rank) for p in result.peaks] == [(30, 1), (60, 2)]


@given(cell_lists)
def test_thumbnail_dominates_all_cells_local_maxima(cells):
    peaks = find_peaks(series(cells))
    if not peaks:
        return
    best = select_thumbnail(rank_peaks(peaks))
    assert best.value == max(p.value for p in peaks)


def test_random_large_series_against_oracle():
    rng = random.Random(11)
    for _ in range(50):
        cells = [rng.randint(0, 8) for _ in range(rng.randint(3, 400))]
        assert times_values(find_peaks(series(cells))) == brute_force_peaks(cells)
