import numpy as np
import pytest

from koco import verify
from koco.kernels import linear
from koco.kons import Kons
from koco.oracle import primal_ons
from tests.test_kons import squared_cfg, unit_feature_stream

INVARIANTS = [(name, fn) for name, _, fn in verify.CHECKS
              if not name.startswith("acceptance/")]


@pytest.mark.parametrize("name,fn", INVARIANTS, ids=[n for n, _ in INVARIANTS])
def test_invariant_block(name, fn):
    passed, detail = fn()
    assert passed, f"{name}: {detail}"


def test_fast_level_is_fast_and_reports_lines():
    import time
    lines = []
    tic = time.perf_counter()
    results = verify.run_suite("fast", echo=lines.append)
    elapsed = time.perf_counter() - tic
    assert elapsed < 60.0, f"fast level took {elapsed:.1f}s"
    assert len(results) >= 10
    for line, res in zip(lines, results):
        assert line.startswith("PASS " if res.passed else "FAIL ")


def test_full_level_includes_monte_carlo_suites():
    full_names = [name for name, fast, _ in verify.CHECKS if not fast]
    assert "acceptance/3-sampler-guarantees" in full_names
    assert "skons/sketch-lower-floor" in full_names


def test_tampered_coefficients_break_primal_equivalence():
    # mutation check: flipping the sign of one dual coefficient mid-run must
    # be caught by the primal-equivalence comparison
    X, events = unit_feature_stream(17, 60)
    cfg = squared_cfg()
    learner = Kons(linear(), cfg)
    preds = []
    for t, ev in enumerate(events):
        preds.append(learner.step(ev.point, ev).yhat)
        if t == 29:
            learner._b[20] = -learner._b[20]
    ref = primal_ons(X, events, cfg)
    assert np.max(np.abs(np.array(preds) - ref)) > 1e-6
