import numpy as np
import pytest

from koco.kernels import gaussian
from koco.kons import Kons, KonsConfig
from koco.kors import KorsConfig
from koco.losses import curvature_profile
from koco.skons import SketchedKons, SkonsConfig, sandwich_audit
from koco.streams import SyntheticSpec, generate_stream


def squared_cfg(C=1.0, alpha=1.0):
    prof = curvature_profile("squared", C)
    return KonsConfig(clip_c=C, alpha=alpha, sigma=prof.sigma,
                      lipschitz=prof.lipschitz)


def sketch_cfg(gamma, seed=0, beta=30.0, epsilon=0.5, C=1.0, alpha=1.0):
    return SkonsConfig(kons=squared_cfg(C, alpha),
                       kors=KorsConfig(alpha=alpha, epsilon=epsilon, beta=beta,
                                       delta=0.1, rng_seed=seed),
                       gamma=gamma)


def stream(seed, T, generator="rkhs-target", **kw):
    spec = SyntheticSpec(generator=generator, input_dim=kw.pop("dim", 3),
                         horizon=T, clip_c=kw.pop("clip_c", 1.0), **kw)
    return generate_stream(spec, seed, kernel=gaussian(1.0))


def run(learner, events):
    return np.array([learner.step(ev.point, ev).yhat for ev in events])


def test_config_requires_fixed_sigma():
    with pytest.raises(ValueError):
        SkonsConfig(kons=KonsConfig(clip_c=1, alpha=1, eta_mode="inverse-sqrt",
                                    sigma=0.0, lipschitz=4.0),
                    kors=KorsConfig(alpha=1, epsilon=0.5, beta=10, delta=0.1),
                    gamma=0.5)
    with pytest.raises(ValueError):
        sketch_cfg(gamma=1.5)


def test_empty_history_predicts_zero():
    learner = SketchedKons(gaussian(1.0), sketch_cfg(0.5))
    assert learner.predict(np.ones(2)) == (0.0, 0.0)


def test_gamma_one_equals_exact_learner():
    events = stream(0, 200, noise_sd=0.1)
    exact = Kons(gaussian(1.0), squared_cfg())
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(1.0))
    pe = run(exact, events)
    ps = run(sketch, events)
    assert np.max(np.abs(pe - ps)) <= 1e-8
    assert all(r.accepted == 1 for r in sketch.records)


def test_forced_acceptance_equals_exact_learner():
    # near-orthogonal points with a huge budget: every coin is deterministic
    events = stream(1, 60, generator="orthogonal-drift", spread=12.0, dim=2)
    exact = Kons(gaussian(1.0), squared_cfg())
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(0.0, beta=1e9))
    assert np.max(np.abs(run(exact, events) - run(sketch, events))) <= 1e-8


def test_repeated_point_acceptance_approaches_floor():
    # leverage of a repeated point decays like 1/t, so acceptances settle
    # near the probability floor
    gamma = 0.2
    events = stream(2, 1500, generator="sixsix-adversary", dim=2)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(gamma, seed=5, beta=20.0))
    run(sketch, events)
    tail = sketch.records[700:]
    assert all(r.p_accept == gamma for r in tail)
    freq = np.mean([r.accepted for r in tail])
    assert abs(freq - gamma) < 0.05
    prof = curvature_profile("squared", 1.0)
    worst = max((r.eta * r.accepted - prof.sigma) * r.gdot**2 for r in sketch.records)
    assert worst <= 1e-12


def test_probability_floor_applies_only_to_learner():
    gamma = 0.9
    events = stream(3, 300, generator="sixsix-adversary", dim=2)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(gamma, seed=1, beta=10.0))
    run(sketch, events)
    # learner acceptances are floored at gamma ...
    assert min(r.p_accept for r in sketch.records) >= gamma
    # ... the embedded sampler's dictionary is not: on a repeated point its
    # admission probabilities drop well below the floor
    assert min(e.prob for e in sketch.kors.dict.entries) < gamma
    assert len(sketch.kors.dict) < len(sketch.selected)


def test_upper_domination_deterministic():
    events = stream(4, 120, noise_sd=0.2)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(0.3, seed=9))
    run(sketch, events)
    lo, hi = sandwich_audit(sketch)
    assert hi <= 1.0 + 1e-10
    assert 0.0 < lo <= 1.0 + 1e-10


def test_no_acceptances_gives_alpha_identity_sketch():
    # gamma=0 and a zero budget keep every coin at zero: the sketch stays at
    # alpha*I, so the lower eigenvalue is alpha over the top eigenvalue of
    # the exact preconditioner
    from koco.kernels import gram
    from koco.linalg import sym_eigvals

    events = stream(5, 40, noise_sd=0.2)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(0.0, beta=1e-9))
    run(sketch, events)
    assert sketch.selected == []
    lo, hi = sandwich_audit(sketch)
    D = sketch.d_scale
    Kbar = gram(gaussian(1.0), sketch.points) * np.outer(D, D)
    lam_max = sym_eigvals(Kbar)[-1]
    assert lo == pytest.approx(1.0 / (lam_max + 1.0), rel=1e-9)  # alpha = 1
    assert hi <= 1.0 + 1e-10


def test_gamma_one_audit_is_unit():
    events = stream(6, 80)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(1.0))
    run(sketch, events)
    lo, hi = sandwich_audit(sketch)
    assert lo == pytest.approx(1.0, abs=1e-9)
    assert hi == pytest.approx(1.0, abs=1e-9)


def test_expected_acceptances_match_probabilities():
    # binomial consistency of the acceptance count under gamma=0
    events = stream(7, 400, generator="sixsix-adversary", dim=2)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(0.0, seed=21, beta=15.0))
    run(sketch, events)
    ps = np.array([r.p_accept for r in sketch.records])
    zs = np.array([r.accepted for r in sketch.records])
    mean, sd = ps.sum(), np.sqrt(np.sum(ps * (1 - ps)))
    assert abs(zs.sum() - mean) <= 4.0 * sd + 1.0


def test_support_never_exceeds_acceptances():
    events = stream(8, 150)
    sketch = SketchedKons(gaussian(1.0), sketch_cfg(0.2, seed=2))
    run(sketch, events)
    assert sketch.e_inv.order == len(sketch.selected)
    assert len(sketch.selected) <= sum(r.accepted for r in sketch.records)
