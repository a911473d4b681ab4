"""Reconstruction-quality metrics and their masked variants.

Pixel metrics (l1, psnr, ssim) compare a generated frame against ground
truth; masked variants restrict them to a mask's support so foreground
and background can be scored separately. Keypoint and embedding metrics
(akd, mkr, aed) consume externally-detected per-frame outputs. Per-frame
values are folded into mean / count / 95% half-width reports.

All reductions accumulate in float64 regardless of input dtype.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .tensor_io import AlphaMask, BinaryMask, EmbeddingSequence, ImageTensor, KeypointSequence

PSNR_CAP_DB = 100.0


@dataclass(frozen=True)
class SsimParams:
    window: int = 11
    sigma: float = 1.5
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 1.0

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError("window must be odd and >= 3")
        if self.sigma <= 0 or self.k1 <= 0 or self.k2 <= 0 or self.dynamic_range <= 0:
            raise ValueError("sigma, k1, k2, dynamic_range must be > 0")


@dataclass(frozen=True)
class MetricStat:
    """Mean, sample count, and 95% confidence half-width of one metric."""

    mean: float
    count: int
    ci95: float


MetricReport = dict[str, MetricStat]


def _require_same_shape(a: ImageTensor, b: ImageTensor) -> None:
    if a.data.shape != b.data.shape:
        raise ValueError(f"image shapes differ: {a.data.shape} vs {b.data.shape}")


def _require_mask_fits(a: ImageTensor, m: AlphaMask | BinaryMask) -> None:
    if m.data.shape != a.data.shape[:2]:
        raise ValueError(f"mask shape {m.data.shape} does not match image {a.data.shape[:2]}")


def l1(a: ImageTensor, b: ImageTensor) -> float:
    """Mean absolute difference over all pixels and channels."""
    _require_same_shape(a, b)
    return float(np.mean(np.abs(a.data.astype(np.float64) - b.data.astype(np.float64))))


def psnr(a: ImageTensor, b: ImageTensor, dynamic_range: float = 1.0) -> float:
    """10 * log10(L^2 / MSE); returns math.inf when the images are identical."""
    _require_same_shape(a, b)
    if dynamic_range <= 0:
        raise ValueError("dynamic_range must be > 0")
    diff = a.data.astype(np.float64) - b.data.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(dynamic_range * dynamic_range / mse)


def masked_psnr(
    a: ImageTensor, b: ImageTensor, m: AlphaMask | BinaryMask, dynamic_range: float = 1.0
) -> float:
    """PSNR with the squared error weighted by the mask over its support."""
    _require_same_shape(a, b)
    _require_mask_fits(a, m)
    if dynamic_range <= 0:
        raise ValueError("dynamic_range must be > 0")
    w = m.data.astype(np.float64)
    w_sum = float(w.sum())
    if w_sum == 0.0:
        raise ValueError("mask has empty support")
    diff = a.data.astype(np.float64) - b.data.astype(np.float64)
    channels = a.data.shape[2]
    weighted = float(np.sum(w[:, :, np.newaxis] * diff * diff))
    mse = weighted / (channels * w_sum)
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(dynamic_range * dynamic_range / mse)


def _gaussian_taps(window: int, sigma: float) -> np.ndarray:
    offsets = np.arange(window, dtype=np.float64) - (window - 1) / 2.0
    taps = np.exp(-(offsets**2) / (2.0 * sigma * sigma))
    return taps / taps.sum()


def _windowed_mean(plane: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Gaussian-weighted local mean at every position where the window fits."""
    tmp = correlate1d(plane, taps, axis=0, mode="constant")
    tmp = correlate1d(tmp, taps, axis=1, mode="constant")
    r = taps.size // 2
    return tmp[r : plane.shape[0] - r, r : plane.shape[1] - r]


def ssim_map(a: ImageTensor, b: ImageTensor, p: SsimParams = SsimParams()) -> np.ndarray:
    """Per-pixel similarity over the valid (fully-windowed) region.

    The map has shape (H - window + 1, W - window + 1); channels are
    averaged. Window statistics use a normalized Gaussian.
    """
    _require_same_shape(a, b)
    h, w = a.data.shape[:2]
    if h < p.window or w < p.window:
        raise ValueError(f"image {h}x{w} is smaller than the {p.window}-pixel window")
    taps = _gaussian_taps(p.window, p.sigma)
    c1 = (p.k1 * p.dynamic_range) ** 2
    c2 = (p.k2 * p.dynamic_range) ** 2
    maps = []
    for c in range(a.data.shape[2]):
        x = a.data[:, :, c].astype(np.float64)
        y = b.data[:, :, c].astype(np.float64)
        mu_x = _windowed_mean(x, taps)
        mu_y = _windowed_mean(y, taps)
        var_x = _windowed_mean(x * x, taps) - mu_x * mu_x
        var_y = _windowed_mean(y * y, taps) - mu_y * mu_y
        cov = _windowed_mean(x * y, taps) - mu_x * mu_y
        num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
        den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
        maps.append(num / den)
    return np.mean(maps, axis=0)


def ssim(a: ImageTensor, b: ImageTensor, p: SsimParams = SsimParams()) -> float:
    """Mean of the similarity map."""
    return float(np.mean(ssim_map(a, b, p)))


def masked_ssim(
    a: ImageTensor, b: ImageTensor, m: AlphaMask | BinaryMask, p: SsimParams = SsimParams()
) -> float:
    """Mask-weighted mean of the similarity map.

    The map only covers window centers, so the mask is cropped to the
    same central region before weighting.
    """
    _require_mask_fits(a, m)
    smap = ssim_map(a, b, p)
    r = p.window // 2
    w = m.data[r : m.data.shape[0] - r, r : m.data.shape[1] - r].astype(np.float64)
    w_sum = float(w.sum())
    if w_sum == 0.0:
        raise ValueError("mask has empty support over the windowed region")
    return float(np.sum(w * smap) / w_sum)


def akd(gt: KeypointSequence, gen: KeypointSequence) -> float:
    """Mean Euclidean distance over keypoints detected in both sequences."""
    if gt.xy.shape != gen.xy.shape:
        raise ValueError(f"keypoint shapes differ: {gt.xy.shape} vs {gen.xy.shape}")
    both = gt.detected & gen.detected
    if not np.any(both):
        raise ValueError("no keypoint is detected in both sequences")
    delta = gt.xy[both] - gen.xy[both]
    return float(np.mean(np.sqrt(np.sum(delta * delta, axis=-1))))


def mkr(gt: KeypointSequence, gen: KeypointSequence) -> float:
    """Share of ground-truth-detected keypoints missing from the generated side."""
    if gt.detected.shape != gen.detected.shape:
        raise ValueError(f"keypoint shapes differ: {gt.detected.shape} vs {gen.detected.shape}")
    gt_count = int(np.count_nonzero(gt.detected))
    if gt_count == 0:
        raise ValueError("ground truth has no detected keypoints")
    missing = int(np.count_nonzero(gt.detected & ~gen.detected))
    return missing / gt_count


def aed(gt: EmbeddingSequence, gen: EmbeddingSequence) -> float:
    """Mean per-frame Euclidean distance between embedding vectors."""
    if gt.vectors.shape != gen.vectors.shape:
        raise ValueError(f"embedding shapes differ: {gt.vectors.shape} vs {gen.vectors.shape}")
    if gt.frames == 0:
        raise ValueError("empty embedding sequences")
    delta = gt.vectors - gen.vectors
    return float(np.mean(np.sqrt(np.sum(delta * delta, axis=1))))


def cap_sentinels(values: list[float], cap: float = PSNR_CAP_DB) -> list[float]:
    """Replace +inf sentinels (identical-image psnr) with a finite cap."""
    return [min(v, cap) for v in values]


def aggregate(values: list[float]) -> MetricStat:
    """Mean, count, and 1.96 * s / sqrt(n) half-width (sample std, 0 for n=1)."""
    if len(values) == 0:
        raise ValueError("cannot aggregate an empty list")
    arr = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("aggregate requires finite values (cap sentinels first)")
    n = arr.size
    mean = float(arr.mean())
    if n == 1:
        return MetricStat(mean, 1, 0.0)
    s = float(arr.std(ddof=1))
    return MetricStat(mean, n, 1.96 * s / math.sqrt(n))


# ---------------------------------------------------------------------------
# Report renderings


def report_to_json(report: MetricReport, skipped: list[str] | None = None) -> str:
    """Serialize a report deterministically (sorted keys, repr floats)."""
    doc = {
        "metrics": {
            name: {"mean": stat.mean, "n": stat.count, "ci95": stat.ci95}
            for name, stat in report.items()
        },
        "skipped_frames": sorted(skipped or []),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def report_from_json(text: str) -> MetricReport:
    doc = json.loads(text)
    return {
        name: MetricStat(entry["mean"], entry["n"], entry["ci95"])
        for name, entry in doc["metrics"].items()
    }


def render_table(report: MetricReport, skipped: list[str] | None = None) -> str:
    """Aligned text table: metric, mean, n, ci95."""
    rows = [("metric", "mean", "n", "ci95")]
    for name in sorted(report):
        stat = report[name]
        rows.append((name, f"{stat.mean:.6f}", str(stat.count), f"{stat.ci95:.6f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    if skipped:
        lines.append(f"skipped frames: {len(skipped)}")
    return "\n".join(lines) + "\n"
