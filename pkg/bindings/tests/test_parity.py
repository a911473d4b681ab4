import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

import prioritycut as core
from prioritycut.cli import main as core_cli
from prioritycut_bindings import BufferView, __version__, bind_derive_mask, bind_metrics, bind_mix


def flat(arr):
    return np.ascontiguousarray(arr, dtype=np.float32).ravel()


def golden_cases(n=20):
    """Deterministic input tuples covering all three bound kernels."""
    cases = []
    for i in range(n):
        rng = np.random.default_rng(1000 + i)
        h = int(rng.integers(12, 24))
        w = int(rng.integers(12, 24))
        occ = rng.random((h, w), dtype=np.float32)
        m_bg = rng.random((h, w), dtype=np.float32)
        x = rng.random((h, w, 3), dtype=np.float32)
        x_prime = rng.random((h, w, 3), dtype=np.float32)
        soft_mask = rng.random((h, w), dtype=np.float32)
        k = float(rng.uniform(0, 100))
        cases.append((occ, m_bg, x, x_prime, soft_mask, k))
    return cases


def run_suite():
    """Binding outputs for every golden case, for cross-thread comparison."""
    outputs = []
    for occ, m_bg, x, x_prime, soft_mask, k in golden_cases():
        h, w = occ.shape
        derived = bind_derive_mask(BufferView(flat(occ), (h, w)), BufferView(flat(m_bg), (h, w)), k)
        mixed = bind_mix(
            BufferView(flat(x), x.shape),
            BufferView(flat(x_prime), x_prime.shape),
            BufferView(derived.data, derived.dims),
        )
        scores = bind_metrics(
            BufferView(flat(x), x.shape),
            BufferView(flat(x_prime), x_prime.shape),
            BufferView(flat(soft_mask), (h, w)),
        )
        outputs.append((derived.data.tobytes(), mixed.data.tobytes(), tuple(sorted(scores.items()))))
    return outputs


class TestGoldenParity:
    def test_bitwise_equal_to_core(self):
        for occ, m_bg, x, x_prime, soft_mask, k in golden_cases():
            h, w = occ.shape
            derived = bind_derive_mask(
                BufferView(flat(occ), (h, w)), BufferView(flat(m_bg), (h, w)), k
            )
            core_mask = core.derive_cut_mask(core.AlphaMask(occ), core.AlphaMask(m_bg), k)
            assert derived.data.tobytes() == core_mask.data.tobytes()
            assert derived.dims == (h, w)

            mixed = bind_mix(
                BufferView(flat(x), x.shape),
                BufferView(flat(x_prime), x_prime.shape),
                BufferView(derived.data, derived.dims),
            )
            core_mixed = core.mix(core.ImageTensor(x), core.ImageTensor(x_prime), core_mask)
            assert mixed.data.tobytes() == core_mixed.data.tobytes()

            scores = bind_metrics(
                BufferView(flat(x), x.shape),
                BufferView(flat(x_prime), x_prime.shape),
                BufferView(flat(soft_mask), (h, w)),
            )
            a, b, m = core.ImageTensor(x), core.ImageTensor(x_prime), core.AlphaMask(soft_mask)
            assert scores["l1"] == core.l1(a, b)
            assert scores["psnr"] == core.psnr(a, b)
            assert scores["ssim"] == core.ssim(a, b)
            assert scores["m_psnr"] == core.masked_psnr(a, b, m)
            assert scores["m_ssim"] == core.masked_ssim(a, b, m)

    def test_four_threads_identical_results(self):
        reference = run_suite()
        with ThreadPoolExecutor(max_workers=4) as pool:
            futures = [pool.submit(run_suite) for _ in range(4)]
            for future in futures:
                assert future.result() == reference


class TestDeriveMask:
    def test_matches_cli_output_bitwise(self, tmp_path):
        rng = np.random.default_rng(5)
        occ = rng.random((12, 10), dtype=np.float32)
        m_bg = rng.random((12, 10), dtype=np.float32)
        occ_dir, bg_dir, out = tmp_path / "occ", tmp_path / "bg", tmp_path / "out"
        occ_dir.mkdir(), bg_dir.mkdir()
        core.write_pct1_array(occ, occ_dir / "f.pct1")
        core.write_pct1_array(m_bg, bg_dir / "f.pct1")
        assert core_cli([
            "derive-mask", "--occlusion", str(occ_dir), "--background", str(bg_dir),
            "--k", "35", "--out", str(out),
        ]) == 0
        from_cli = core.read_pct1_array(out / "f_mpc.pct1")
        bound = bind_derive_mask(BufferView(flat(occ), (12, 10)), BufferView(flat(m_bg), (12, 10)), 35)
        assert bound.data.tobytes() == from_cli.tobytes()

    def test_k_zero_all_ones(self):
        rng = np.random.default_rng(6)
        occ = BufferView(flat(rng.random((5, 5), dtype=np.float32)), (5, 5))
        m_bg = BufferView(flat(rng.random((5, 5), dtype=np.float32)), (5, 5))
        out = bind_derive_mask(occ, m_bg, 0)
        assert np.all(np.asarray(out.data) == 1.0)

    def test_small_oracle_case(self):
        occ = BufferView([0.1, 0.9, 0.5, 0.7], (2, 2))
        m_bg = BufferView([0.0, 0.0, 0.0, 0.0], (2, 2))
        out = bind_derive_mask(occ, m_bg, 25)
        assert np.asarray(out.data).tolist() == [0.0, 1.0, 1.0, 1.0]


class TestMix:
    def test_all_ones_mask_returns_first(self):
        rng = np.random.default_rng(7)
        x = rng.random((4, 4, 3), dtype=np.float32)
        xp = rng.random((4, 4, 3), dtype=np.float32)
        out = bind_mix(BufferView(flat(x), x.shape), BufferView(flat(xp), xp.shape),
                       BufferView([1.0] * 16, (4, 4)))
        assert out.data.tobytes() == flat(x).tobytes()

    def test_all_zeros_mask_returns_second(self):
        rng = np.random.default_rng(8)
        x = rng.random((4, 4, 3), dtype=np.float32)
        xp = rng.random((4, 4, 3), dtype=np.float32)
        out = bind_mix(BufferView(flat(x), x.shape), BufferView(flat(xp), xp.shape),
                       BufferView([0.0] * 16, (4, 4)))
        assert out.data.tobytes() == flat(xp).tobytes()

    def test_half_blend(self):
        x = BufferView([0.8] * 4, (2, 2))
        xp = BufferView([0.2] * 4, (2, 2))
        out = bind_mix(x, xp, BufferView([0.5] * 4, (2, 2)))
        assert np.asarray(out.data) == pytest.approx(0.5)


class TestMetrics:
    def test_identical_images(self):
        rng = np.random.default_rng(9)
        x = rng.random((16, 16), dtype=np.float32)
        v = BufferView(flat(x), (16, 16))
        scores = bind_metrics(v, v)
        assert scores["l1"] == 0.0
        assert scores["ssim"] == pytest.approx(1.0, abs=1e-12)
        assert scores["psnr"] == math.inf

    def test_all_ones_mask_equals_unmasked(self):
        rng = np.random.default_rng(10)
        a = rng.random((16, 16), dtype=np.float32)
        b = rng.random((16, 16), dtype=np.float32)
        va, vb = BufferView(flat(a), (16, 16)), BufferView(flat(b), (16, 16))
        ones = BufferView([1.0] * 256, (16, 16))
        scores = bind_metrics(va, vb, ones)
        assert abs(scores["m_psnr"] - scores["psnr"]) <= 1e-9
        assert abs(scores["m_ssim"] - scores["ssim"]) <= 1e-9

    def test_masked_psnr_twenty_db(self):
        a = BufferView([0.6, 0.8], (1, 2))
        b = BufferView([0.5, 0.5], (1, 2))
        m = BufferView([1.0, 0.0], (1, 2))
        scores = bind_metrics(a, b, m, which=["m_psnr"])
        assert scores["m_psnr"] == pytest.approx(20.0, abs=1e-4)

    def test_unknown_metric_rejected(self):
        v = BufferView([0.5], (1, 1))
        with pytest.raises(ValueError, match="unknown metric"):
            bind_metrics(v, v, which=["fid"])

    def test_masked_metric_needs_mask(self):
        v = BufferView([0.5], (1, 1))
        with pytest.raises(ValueError, match="without a mask"):
            bind_metrics(v, v, which=["m_psnr"])


class TestBufferContract:
    def test_inputs_not_mutated(self):
        rng = np.random.default_rng(11)
        occ = flat(rng.random((6, 6), dtype=np.float32))
        m_bg = flat(rng.random((6, 6), dtype=np.float32))
        occ_copy, bg_copy = occ.copy(), m_bg.copy()
        bind_derive_mask(BufferView(occ, (6, 6)), BufferView(m_bg, (6, 6)), 40)
        assert np.array_equal(occ, occ_copy) and np.array_equal(m_bg, bg_copy)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="do not fill"):
            bind_derive_mask(BufferView([0.5] * 5, (2, 2)), BufferView([0.5] * 4, (2, 2)), 10)

    def test_non_contiguous_rejected(self):
        strided = np.zeros(8, dtype=np.float32)[::2]
        with pytest.raises(ValueError, match="contiguous"):
            bind_derive_mask(BufferView(strided, (2, 2)), BufferView([0.5] * 4, (2, 2)), 10)

    def test_non_flat_array_rejected(self):
        with pytest.raises(ValueError, match="flat"):
            bind_derive_mask(BufferView(np.zeros((2, 2), dtype=np.float32), (2, 2)),
                             BufferView([0.5] * 4, (2, 2)), 10)

    def test_core_error_message_propagates(self):
        v = BufferView([0.5] * 4, (2, 2))
        with pytest.raises(ValueError, match="tau must be in"):
            bind_derive_mask(v, v, 10, tau=2.0)

    def test_bad_rank_rejected(self):
        with pytest.raises(ValueError, match="rank"):
            bind_derive_mask(BufferView([0.5] * 4, (4,)), BufferView([0.5] * 4, (2, 2)), 10)

    def test_version_mirrors_core(self):
        assert __version__ == core.__version__
