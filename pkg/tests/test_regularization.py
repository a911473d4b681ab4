import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prioritycut.mask_core import invert_mask
from prioritycut.regularization import (
    LossWeights,
    PredictionMap,
    consistency_loss,
    discriminator_loss,
    load_prediction_map,
)
from prioritycut.tensor_io import AlphaMask, BinaryMask, TensorIOError, write_pct1_array


def pmap(values):
    return PredictionMap(np.asarray(values, dtype=np.float32))


def f32_mix(real, fake, mask):
    w = mask.data
    return PredictionMap(w * real.data + (np.float32(1.0) - w) * fake.data)


class TestConsistencyLoss:
    def test_consistent_discriminator_scores_zero(self):
        rng = np.random.default_rng(0)
        d_real = pmap(rng.normal(size=(8, 8)))
        d_fake = pmap(rng.normal(size=(8, 8)))
        m = AlphaMask(rng.random((8, 8), dtype=np.float32))
        d_mix = f32_mix(d_real, d_fake, m)
        assert consistency_loss(d_mix, d_real, d_fake, m) == 0.0

    def test_all_ones_mask_with_real_output(self):
        rng = np.random.default_rng(1)
        d_real = pmap(rng.normal(size=(4, 4)))
        d_fake = pmap(rng.normal(size=(4, 4)))
        m = BinaryMask(np.ones((4, 4), dtype=np.float32))
        assert consistency_loss(d_real, d_real, d_fake, m) == 0.0

    def test_hand_case(self):
        d_mix = pmap([[1.0, 0.0]])
        d_real = pmap([[0.0, 0.0]])
        d_fake = pmap([[0.0, 1.0]])
        m = BinaryMask(np.array([[1.0, 0.0]], dtype=np.float32))
        assert consistency_loss(d_mix, d_real, d_fake, m) == 2.0

    def test_nonnegative_and_mean_reduction(self):
        rng = np.random.default_rng(2)
        d_mix = pmap(rng.normal(size=(5, 5)))
        d_real = pmap(rng.normal(size=(5, 5)))
        d_fake = pmap(rng.normal(size=(5, 5)))
        m = BinaryMask((rng.random((5, 5)) > 0.5).astype(np.float32))
        total = consistency_loss(d_mix, d_real, d_fake, m)
        assert total >= 0.0
        mean = consistency_loss(d_mix, d_real, d_fake, m, reduction="mean")
        assert mean == pytest.approx(total / 25.0, rel=1e-12)

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_complement_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        d_mix = pmap(rng.normal(size=(6, 4)))
        d_real = pmap(rng.normal(size=(6, 4)))
        d_fake = pmap(rng.normal(size=(6, 4)))
        m = BinaryMask((rng.random((6, 4)) > 0.5).astype(np.float32))
        lhs = consistency_loss(d_mix, d_real, d_fake, m)
        rhs = consistency_loss(d_mix, d_fake, d_real, invert_mask(m))
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            consistency_loss(pmap([[1.0]]), pmap([[1.0]]), pmap([[1.0]]),
                             BinaryMask(np.ones((2, 2), dtype=np.float32)))

    def test_bad_reduction(self):
        m = BinaryMask(np.ones((1, 1), dtype=np.float32))
        with pytest.raises(ValueError):
            consistency_loss(pmap([[1.0]]), pmap([[1.0]]), pmap([[1.0]]), m, reduction="max")


class TestDiscriminatorLoss:
    def test_disabled_regularizer(self):
        assert discriminator_loss(0.0, 0.0, 5.0, LossWeights(0.0)) == 0.0

    def test_unit_weight_sum(self):
        assert discriminator_loss(1.0, 2.0, 3.0, LossWeights(1.0)) == 6.0

    def test_weighted_sum(self):
        assert discriminator_loss(0.5, 0.5, 2.0, LossWeights(0.25)) == 1.5

    def test_linear_in_consistency_term(self):
        w = LossWeights(0.7)
        base = discriminator_loss(1.0, 2.0, 0.0, w)
        for l_cons in (1.0, 2.0, 5.0):
            assert discriminator_loss(1.0, 2.0, l_cons, w) == pytest.approx(
                base + 0.7 * l_cons, rel=1e-12
            )

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            discriminator_loss(float("nan"), 0.0, 0.0, LossWeights(1.0))
        with pytest.raises(ValueError):
            discriminator_loss(0.0, float("inf"), 0.0, LossWeights(1.0))

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            LossWeights(-0.1)


class TestPredictionMapIO:
    def test_unbounded_values_load(self, tmp_path):
        p = tmp_path / "pred.pct1"
        arr = np.array([[-4.5, 10.0], [0.0, 2.5]], dtype=np.float32)
        write_pct1_array(arr, p)
        pm = load_prediction_map(p)
        assert np.array_equal(pm.data, arr)

    def test_rank_three_rejected(self, tmp_path):
        p = tmp_path / "pred.pct1"
        write_pct1_array(np.zeros((2, 2, 2), dtype=np.float32), p)
        with pytest.raises(TensorIOError, match="rank 2"):
            load_prediction_map(p)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            PredictionMap(np.array([[np.inf]], dtype=np.float32))
