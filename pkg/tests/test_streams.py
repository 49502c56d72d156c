import numpy as np
import pytest

from koco.errors import StreamParseError, TargetOutOfRange
from koco.kernels import gaussian
from koco.streams import (SyntheticSpec, emit_csv, generate_stream, ingest_csv)


def test_alternating_adversary_exact_pattern():
    spec = SyntheticSpec(generator="sixsix-adversary", input_dim=2, horizon=4,
                         clip_c=1.0)
    events = generate_stream(spec, 0)
    assert [ev.target for ev in events] == [1.0, -1.0, 1.0, -1.0]
    assert all(np.array_equal(ev.point, events[0].point) for ev in events)
    assert all(ev.family == "squared" for ev in events)


def test_rkhs_target_noise_free_is_clamped_function():
    spec = SyntheticSpec(generator="rkhs-target", input_dim=2, horizon=50,
                         n_centers=4, noise_sd=0.0, clip_c=1.0)
    events = generate_stream(spec, 3, kernel=gaussian(1.0))
    ys = np.array([ev.target for ev in events])
    assert np.max(np.abs(ys)) <= 1.0
    again = generate_stream(spec, 3, kernel=gaussian(1.0))
    assert all(ev.target == ev2.target for ev, ev2 in zip(events, again))


def test_same_seed_identical_different_seed_not():
    spec = SyntheticSpec(generator="rkhs-target", input_dim=3, horizon=30,
                         noise_sd=0.2)
    a = generate_stream(spec, 5)
    b = generate_stream(spec, 5)
    c = generate_stream(spec, 6)
    assert all(np.array_equal(x.point, y.point) and x.target == y.target
               for x, y in zip(a, b))
    assert any(not np.array_equal(x.point, y.point) for x, y in zip(a, c))


def test_orthogonal_drift_spacing():
    spec = SyntheticSpec(generator="orthogonal-drift", input_dim=2, horizon=5,
                         spread=10.0)
    events = generate_stream(spec, 0)
    xs = np.array([ev.point[0] for ev in events])
    assert np.allclose(np.diff(xs), 10.0)


# ---------------------------------------------------------------------------
# CSV round trip
# ---------------------------------------------------------------------------

def test_ingest_minimal_target_file(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("f1,target\n0.1,0.5\n", encoding="utf-8")
    events = ingest_csv(p, "squared", 1.0)
    assert len(events) == 1
    assert events[0].point.shape == (1,)
    assert events[0].target == 0.5


def test_ingest_rejects_zero_label(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("f1,label\n0.1,0\n", encoding="utf-8")
    with pytest.raises(StreamParseError) as err:
        ingest_csv(p, "logistic", 1.0)
    assert err.value.line == 2


def test_ingest_rejects_out_of_range_targets(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("f1,target\n0.0,0.5\n0.0,2.5\n0.0,-3.0\n", encoding="utf-8")
    with pytest.raises(TargetOutOfRange) as err:
        ingest_csv(p, "squared", 1.0)
    assert "3" in str(err.value) and "4" in str(err.value)


def test_ingest_validates_header(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("a,b\n0.0,0.5\n", encoding="utf-8")
    with pytest.raises(StreamParseError):
        ingest_csv(p, "squared", 1.0)


def test_round_trip_thousand_rows(tmp_path):
    spec = SyntheticSpec(generator="rkhs-target", input_dim=3, horizon=1000,
                         noise_sd=0.3)
    events = generate_stream(spec, 9)
    p = tmp_path / "big.csv"
    emit_csv(p, events)
    back = ingest_csv(p, "squared", 1.0)
    assert len(back) == 1000
    for a, b in zip(events, back):
        assert np.array_equal(a.point, b.point)
        assert a.target == b.target


def test_round_trip_labels(tmp_path):
    spec = SyntheticSpec(generator="rkhs-target", input_dim=2, horizon=20,
                         noise_sd=0.5)
    events = generate_stream(spec, 1, family="logistic")
    p = tmp_path / "lab.csv"
    emit_csv(p, events)
    back = ingest_csv(p, "logistic", 1.0)
    assert [ev.target for ev in back] == [ev.target for ev in events]
