"""Derivation of the occlusion-guided cut mask.

The pipeline turns a soft background mask and a warp occlusion map into
a hard cut mask in three steps: threshold the background mask to keep
only confident background, force that background to "not occluded" in
the occlusion map so ranking concentrates on the foreground, then zero
out the k percent most-occluded pixels. Occlusion convention throughout:
0 = fully occluded, 1 = not occluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor_io import AlphaMask, BinaryMask

DEFAULT_TAU = 0.9


@dataclass(frozen=True)
class PercentileK:
    """Percentage of pixels to treat as the cut region, in [0, 100]."""

    k: float

    def __post_init__(self):
        if not math.isfinite(self.k) or not 0.0 <= self.k <= 100.0:
            raise ValueError(f"k must be in [0, 100], got {self.k}")


def binarize_background(m_bg: AlphaMask, tau: float = DEFAULT_TAU) -> BinaryMask:
    """Suppress uncertain pixels: 1 where m_bg >= tau, else 0."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    return BinaryMask((m_bg.data >= np.float32(tau)).astype(np.float32))


def foreground_occlusion(bg: BinaryMask, occ: AlphaMask) -> AlphaMask:
    """Compose bg + (1 - bg) * occ elementwise.

    Confident background is forced to 1 (not occluded); everywhere else
    the occlusion value passes through unchanged, so the most-occluded
    ranking only ever selects foreground pixels.
    """
    if bg.data.shape != occ.data.shape:
        raise ValueError(f"shape mismatch: bg {bg.data.shape} vs occ {occ.data.shape}")
    out = bg.data + (np.float32(1.0) - bg.data) * occ.data
    return AlphaMask(out)


def topk_occluded_mask(o_fg: AlphaMask, k: PercentileK | float) -> BinaryMask:
    """Zero the floor(k * H * W / 100) most-occluded pixels, ones elsewhere.

    Smallest values count as most occluded. Ties are broken by smaller
    row-major index, so the result is deterministic for a fixed input.
    """
    if not isinstance(k, PercentileK):
        k = PercentileK(float(k))
    flat = o_fg.data.ravel()
    n = flat.size
    n_sel = math.floor(k.k * n / 100.0)
    out = np.ones(n, dtype=np.float32)
    if n_sel >= n:
        out[:] = 0.0
    elif n_sel > 0:
        # Selection without a full sort: everything strictly below the
        # n_sel-th smallest value is in, then ties at that value fill the
        # remaining slots in row-major order.
        boundary = np.partition(flat, n_sel - 1)[n_sel - 1]
        below = flat < boundary
        out[below] = 0.0
        remaining = n_sel - int(np.count_nonzero(below))
        if remaining > 0:
            at_boundary = np.flatnonzero(flat == boundary)
            out[at_boundary[:remaining]] = 0.0
    return BinaryMask(out.reshape(o_fg.data.shape))


def invert_mask(m: BinaryMask) -> BinaryMask:
    """Elementwise complement, 1 - m."""
    return BinaryMask(np.float32(1.0) - m.data)


def derive_cut_mask(
    occ: AlphaMask,
    m_bg: AlphaMask,
    k: PercentileK | float,
    tau: float = DEFAULT_TAU,
) -> BinaryMask:
    """Full pipeline: binarize background, compose, select top-k occluded."""
    bg = binarize_background(m_bg, tau)
    o_fg = foreground_occlusion(bg, occ)
    return topk_occluded_mask(o_fg, k)
