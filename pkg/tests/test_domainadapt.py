"""Adversarial domain adaptation: schedule, domain head, gradients and loops."""

import math
from dataclasses import replace

import numpy as np
import pytest

from classifier import Model, forward_with_cache, loss_ce
from domainadapt import (
    AdaptOpts,
    DomainModel,
    adapt,
    adapt_gradients,
    bce,
    domain_accuracy,
    domain_forward,
    feature_parameter_names,
    fine_tune,
    head_forward,
    init_domain_model,
    joint_loss,
    lambda_schedule,
    sample_id_subset,
    schedule_progress,
    transfer_study,
)
from errors import EmptyInputError
from seqcore import Dataset
from tests.fixtures import TINY_POINTS, random_sequence, tiny_model

QUICK = AdaptOpts(max_epochs=2, learning_rate=1e-2, weight_decay=0.05, batch_size=4, seed=0)


def _writer(rng: np.random.Generator, subject: str, per_letter: int = 2, letters: str = "ABC") -> Dataset:
    return Dataset(tuple(random_sequence(rng, 25, label=ch, subject=subject) for ch in letters for _ in range(per_letter)))


def _zero_head(features: int = 4, hidden: int = 4) -> dict[str, np.ndarray]:
    return {
        "dom1.W": np.zeros((features, hidden)),
        "dom1.b": np.zeros(hidden),
        "dom2.W": np.zeros((hidden, 1)),
        "dom2.b": np.zeros(1),
    }


def test_schedule_values() -> None:
    assert lambda_schedule(0.0) == 0.0
    assert lambda_schedule(0.5) == pytest.approx(0.986614, abs=1e-6)
    assert lambda_schedule(1.0) == pytest.approx(0.999909, abs=1e-6)


def test_schedule_is_increasing_and_bounded() -> None:
    values = [lambda_schedule(p) for p in np.linspace(0.0, 1.0, 100)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(0.0 <= v < 1.0 for v in values)
    with pytest.raises(ValueError, match="non-negative"):
        lambda_schedule(-0.1)


def test_schedule_progress_modes() -> None:
    assert schedule_progress(5, 10, "progress") == 0.5
    assert schedule_progress(5, 10, "raw-epoch") == 5.0
    with pytest.raises(ValueError, match="Unknown schedule"):
        schedule_progress(0, 10, "cosine")


def test_opts_lambda_per_epoch() -> None:
    opts = AdaptOpts(max_epochs=4)
    assert opts.lambda_at(0) == 0.0
    assert opts.lambda_at(2) == pytest.approx(lambda_schedule(0.5))
    assert replace(opts, schedule="raw-epoch").lambda_at(1) == pytest.approx(lambda_schedule(1.0))
    assert replace(opts, lambda_override=0.3).lambda_at(3) == 0.3
    with pytest.raises(ValueError, match="lambda_override"):
        replace(opts, lambda_override=1.0)


def test_zero_head_is_undecided(rng: np.random.Generator) -> None:
    dm = DomainModel(tiny_model(), _zero_head())
    assert np.all(domain_forward(dm, rng.normal(size=(5, 4))) == 0.5)
    assert domain_forward(dm, np.ones(4)) == 0.5


def test_small_head_by_hand() -> None:
    """Two features, two hidden units, one output."""
    head = {
        "dom1.W": np.array([[1.0, -1.0], [2.0, 0.5]]),
        "dom1.b": np.array([0.0, -1.0]),
        "dom2.W": np.array([[1.0], [-2.0]]),
        "dom2.b": np.array([0.5]),
    }
    dm = DomainModel(tiny_model(ff_hidden=2), head)
    # z1 = (5, -1), relu -> (5, 0), score = 5.5
    assert domain_forward(dm, np.array([1.0, 2.0])) == pytest.approx(1.0 / (1.0 + math.exp(-5.5)), rel=1e-12)
    with pytest.raises(ValueError, match="width"):
        domain_forward(dm, np.ones(3))


def test_head_shape_validation() -> None:
    with pytest.raises(ValueError, match="features"):
        DomainModel(tiny_model(ff_hidden=5), _zero_head())
    with pytest.raises(ValueError, match="parameters"):
        DomainModel(tiny_model(), {"dom1.W": np.zeros((4, 4))})


def test_init_domain_model() -> None:
    base = tiny_model(seed=1)
    dm = init_domain_model(base, seed=0, head_hidden=3)
    assert dm.head_hidden == 3
    assert dm.base.equals(base)
    assert init_domain_model(base, seed=0).head_hidden == 4
    assert feature_parameter_names(base) == ["lstm.0.W", "lstm.0.b", "dec1.W", "dec1.b"]


def test_bce_values_and_clamp() -> None:
    assert bce(np.array([0.5, 0.5]), [0, 1]) == pytest.approx(math.log(2))
    assert bce(np.array([0.0]), [1]) == pytest.approx(-math.log(1e-12))
    assert math.isfinite(bce(np.array([1.0]), [0]))
    with pytest.raises(ValueError, match="Domain labels"):
        bce(np.array([0.5]), [2])


def test_joint_loss() -> None:
    total, l_chr, l_dom = joint_loss(np.zeros((2, 27)), [0, 5], np.array([0.5, 0.5]), [0, 1], lam=0.25)
    assert l_chr == pytest.approx(math.log(27))
    assert l_dom == pytest.approx(math.log(2))
    assert total == pytest.approx(math.log(27) - 0.25 * math.log(2))


def test_adversarial_gradients_match_finite_differences(rng: np.random.Generator) -> None:
    """Classifier gradients follow L_chr - lam * L_dom; head gradients follow L_dom."""
    lam = 0.5
    start = init_domain_model(tiny_model(seed=2, resample_points=4), seed=3)
    h = start.base.hparams
    X = rng.normal(size=(4, 4, 3))
    y_c = np.array([0, 1, 2, 26])
    y_d = np.array([0, 0, 1, 1])

    base = start.base.working_copy()
    head = {k: v.copy() for k, v in start.head.items()}
    dm = DomainModel(Model.wrap(h, base), head)
    losses, grads = adapt_gradients(dm, X, y_c, y_d, lam)

    def objective(for_head: bool) -> float:
        logits, cache = forward_with_cache(dm.base, X)
        l_dom = bce(head_forward(dm.head, cache.features).prob, y_d)
        return l_dom if for_head else loss_ce(logits, y_c) - lam * l_dom

    assert losses.total == pytest.approx(objective(False), rel=1e-12)
    eps = 1e-6
    worst = 0.0
    for group, for_head in ((base, False), (head, True)):
        for name, value in group.items():
            for idx in np.ndindex(value.shape):
                saved = value[idx]
                value[idx] = saved + eps
                up = objective(for_head)
                value[idx] = saved - eps
                down = objective(for_head)
                value[idx] = saved
                numeric = (up - down) / (2 * eps)
                err = abs(numeric - grads[name][idx]) / max(abs(numeric) + abs(grads[name][idx]), 1e-4)
                worst = max(worst, err)
    print(f"Worst relative gradient error: {worst:.2e}")
    assert worst < 1e-4


def test_letter_head_ignores_domain_loss(rng: np.random.Generator) -> None:
    dm = init_domain_model(tiny_model(seed=4), seed=5)
    X = rng.normal(size=(3, TINY_POINTS, 3))
    y_c, y_d = np.array([1, 2, 3]), np.array([0, 1, 1])
    _, at_zero = adapt_gradients(dm, X, y_c, y_d, 0.0)
    _, at_one = adapt_gradients(dm, X, y_c, y_d, 0.9)
    assert np.array_equal(at_zero["dec2.W"], at_one["dec2.W"])
    assert np.array_equal(at_zero["dom2.W"], at_one["dom2.W"])


def test_lambda_scales_only_the_reversed_feature_gradient(rng: np.random.Generator) -> None:
    """The domain head trains on plain L_dom; lam only weighs what reaches the features."""
    dm = init_domain_model(tiny_model(seed=6), seed=7)
    X = rng.normal(size=(4, TINY_POINTS, 3))
    y_c, y_d = np.array([0, 4, 9, 26]), np.array([0, 0, 1, 1])
    grads = {lam: adapt_gradients(dm, X, y_c, y_d, lam)[1] for lam in (0.0, 0.3, 0.9)}

    for name in dm.head:
        assert np.array_equal(grads[0.0][name], grads[0.9][name]), name
    moved = 0.0
    for name in feature_parameter_names(dm.base):
        small = grads[0.3][name] - grads[0.0][name]
        large = grads[0.9][name] - grads[0.0][name]
        assert np.allclose(large, 3.0 * small, rtol=1e-9, atol=1e-12), name
        moved = max(moved, float(np.abs(large).max()))
    print(f"Largest feature gradient shift at lam=0.9: {moved:.3e}")
    assert moved > 0.0


def test_domain_accuracy_of_undecided_head(rng: np.random.Generator) -> None:
    dm = DomainModel(tiny_model(), _zero_head())
    X = rng.normal(size=(4, TINY_POINTS, 3))
    assert domain_accuracy(dm, X, np.array([0, 1, 1, 0])) == 0.5


def test_id_subset_size_and_order(rng: np.random.Generator) -> None:
    id_set = _writer(rng, "s01", per_letter=7)
    sub = sample_id_subset(id_set, 10, 1.09, np.random.default_rng(0))
    assert len(sub) == 11
    positions = [next(i for i, s in enumerate(id_set) if s is item) for item in sub]
    assert positions == sorted(positions)
    assert len(sample_id_subset(id_set, 5, 1.0, np.random.default_rng(0))) == 5
    assert len(sample_id_subset(id_set, 100, 1.09, np.random.default_rng(0))) == len(id_set)
    assert len(sample_id_subset(id_set, 10, 0.0, np.random.default_rng(0))) == 0


def test_adapt_keeps_base_and_records_lambda(rng: np.random.Generator) -> None:
    base = tiny_model(seed=6)
    snapshot = Model(base.hparams, base.working_copy())
    id_set, ood_set = _writer(rng, "s01"), _writer(rng, "s02")
    dm, history = adapt(base, id_set, ood_set, QUICK, ood_dev=_writer(rng, "s02", per_letter=1))

    assert base.equals(snapshot)
    assert not dm.base.equals(base)
    assert [r.epoch for r in history] == [1, 2]
    assert history[0].lam == 0.0
    assert history[1].lam == pytest.approx(lambda_schedule(0.5))
    assert all(r.ood_dev_acc is not None and r.dom_acc is not None for r in history)
    assert history[0].to_json()["lambda"] == 0.0


def test_adapt_is_deterministic(rng: np.random.Generator) -> None:
    base = tiny_model(seed=7)
    id_set, ood_set = _writer(rng, "s01"), _writer(rng, "s02")
    a, ha = adapt(base, id_set, ood_set, QUICK)
    b, hb = adapt(base, id_set, ood_set, QUICK)
    assert a.base.equals(b.base)
    assert ha == hb


def test_zero_lambda_adaptation_is_fine_tuning(rng: np.random.Generator) -> None:
    """With the adversarial term switched off the classifier sees the same updates."""
    base = tiny_model(seed=8)
    id_set, ood_set = _writer(rng, "s01"), _writer(rng, "s02")
    opts = replace(QUICK, max_epochs=3, lambda_override=0.0)

    adapted, da_history = adapt(base, id_set, ood_set, opts)
    tuned, ft_history = fine_tune(base, ood_set, opts, id_set=id_set)

    assert adapted.base.equals(tuned)
    for da, ft in zip(da_history, ft_history, strict=True):
        assert da.char_loss == pytest.approx(ft.char_loss, rel=1e-12)


def test_fine_tune_without_id_data(rng: np.random.Generator) -> None:
    tuned, history = fine_tune(tiny_model(seed=9), _writer(rng, "s02"), QUICK)
    assert len(history) == 2
    assert all(r.lam == 0.0 and r.dom_acc is None for r in history)
    assert tuned.hparams == tiny_model().hparams


def test_empty_ood_set() -> None:
    with pytest.raises(EmptyInputError):
        adapt(tiny_model(), Dataset(), Dataset(), QUICK)


def test_transfer_study_rows(rng: np.random.Generator) -> None:
    base = tiny_model(seed=10)
    id_set = _writer(rng, "s01", per_letter=4, letters="AB")
    ood_set = _writer(rng, "s02", per_letter=6, letters="AB")
    report = transfer_study(base, id_set, ood_set, replace(QUICK, max_epochs=1))

    assert [r.setting for r in report.rows] == ["Original", "Fine-Tuning", "Domain Adaptation"]
    assert report.row("Original").train_acc is None
    assert all(0.0 <= r.test_acc <= 1.0 for r in report.rows)
    assert len(report.fine_tune_history) == len(report.adapt_history) == 1
    table = report.format_table()
    print(table)
    assert "Domain Adaptation" in table and "\\" in table
    assert report.to_json()["rows"][1]["setting"] == "Fine-Tuning"
