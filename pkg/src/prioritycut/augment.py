"""Mask-driven mixing, the occlusion-guided augmentation, and the
comparison family (cutout / mixup / rectangular cutmix).

Randomness is explicit: every stochastic operation takes an RngState,
a (seed, counter) pair that fully determines its draws. Operations
never advance state behind the caller's back; the caller moves to the
next counter slot between draws (or hands each frame its own slot
range for parallel processing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mask_core import DEFAULT_TAU, PercentileK, derive_cut_mask
from .tensor_io import AlphaMask, BinaryMask, ImageTensor

_U64 = 2**64


@dataclass(frozen=True)
class RngState:
    """Counter-based RNG state; identical (seed, counter) gives identical draws.

    Each state keys an independent Philox stream, so draws depend only on
    the pair and never on call order or thread interleaving.
    """

    seed: int
    counter: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % _U64, self.counter % _U64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def advance(self, n: int = 1) -> "RngState":
        return RngState(self.seed, self.counter + n)


@dataclass(frozen=True)
class AugmentSchedule:
    """Linear ramp of augmentation probability over the first warmup epochs."""

    warmup_epochs: int = 10
    max_probability: float = 0.5

    def __post_init__(self):
        if self.warmup_epochs < 1:
            raise ValueError("warmup_epochs must be >= 1")
        if not 0.0 <= self.max_probability <= 1.0:
            raise ValueError("max_probability must be in [0, 1]")


def mix(x: ImageTensor, x_prime: ImageTensor, m: AlphaMask | BinaryMask) -> ImageTensor:
    """Blend two images through a mask: m * x + (1 - m) * x_prime.

    A hard mask selects pixels verbatim (bitwise), a soft mask blends.
    The mask is broadcast across channels.
    """
    if x.data.shape != x_prime.data.shape:
        raise ValueError(f"image shapes differ: {x.data.shape} vs {x_prime.data.shape}")
    if m.data.shape != x.data.shape[:2]:
        raise ValueError(f"mask shape {m.data.shape} does not match image {x.data.shape[:2]}")
    w = m.data[:, :, np.newaxis]
    if isinstance(m, BinaryMask):
        out = np.where(w == 1.0, x.data, x_prime.data).astype(np.float32)
    else:
        # Blend in float64 so rounding back to float32 keeps the convex
        # bounds and the self-mix identity exact.
        w64 = w.astype(np.float64)
        blended = w64 * x.data + (1.0 - w64) * x_prime.data
        out = np.clip(blended, 0.0, 1.0).astype(np.float32)
    return ImageTensor(out)


def prioritycut_augment(
    driving: ImageTensor,
    generated: ImageTensor,
    occ: AlphaMask,
    m_bg: AlphaMask,
    k: PercentileK | float,
    tau: float = DEFAULT_TAU,
) -> tuple[ImageTensor, BinaryMask]:
    """Derive the cut mask from occlusion + background and mix through it.

    The result keeps the driving image where the mask is 1 and takes the
    generated image on the zero set (the k percent most-occluded pixels),
    both verbatim. Returns (augmented, mask).
    """
    for name, t in (("generated", generated), ("occ", occ), ("m_bg", m_bg)):
        spatial = t.data.shape[:2]
        if spatial != driving.data.shape[:2]:
            raise ValueError(f"{name} shape {spatial} does not match driving {driving.data.shape[:2]}")
    m_pc = derive_cut_mask(occ, m_bg, k, tau)
    return mix(driving, generated, m_pc), m_pc


def cutmix_mask(h: int, w: int, lam: float, rng: RngState) -> BinaryMask:
    """Single axis-aligned rectangle of zeros, ones elsewhere.

    Nominal size is round(w * sqrt(1 - lam)) by round(h * sqrt(1 - lam)),
    centered uniformly over the image and clipped at the borders. Draw
    order from rng: row center, then column center.
    """
    if h < 1 or w < 1:
        raise ValueError("mask dimensions must be >= 1")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    out = np.ones((h, w), dtype=np.float32)
    ratio = math.sqrt(1.0 - lam)
    rh = round(h * ratio)
    rw = round(w * ratio)
    if rh > 0 and rw > 0:
        gen = rng.generator()
        cy = int(gen.integers(0, h))
        cx = int(gen.integers(0, w))
        y1 = cy - rh // 2
        x1 = cx - rw // 2
        y2 = min(y1 + rh, h)
        x2 = min(x1 + rw, w)
        out[max(y1, 0) : y2, max(x1, 0) : x2] = 0.0
    return BinaryMask(out)


def cutout_mask(h: int, w: int, side: int, rng: RngState) -> BinaryMask:
    """Zero square of the given side, ones elsewhere.

    Placement is uniform over all positions where the square fits, so the
    zero region is always exactly side * side pixels. Draw order from rng:
    row offset, then column offset.
    """
    if h < 1 or w < 1:
        raise ValueError("mask dimensions must be >= 1")
    if not 1 <= side <= min(h, w):
        raise ValueError(f"side must be in [1, {min(h, w)}], got {side}")
    gen = rng.generator()
    y0 = int(gen.integers(0, h - side + 1))
    x0 = int(gen.integers(0, w - side + 1))
    out = np.ones((h, w), dtype=np.float32)
    out[y0 : y0 + side, x0 : x0 + side] = 0.0
    return BinaryMask(out)


def cutout(x: ImageTensor, side: int, rng: RngState, fill: float = 0.0) -> ImageTensor:
    """Erase one square region to a constant fill value.

    Same placement contract as cutout_mask for the same rng state.
    """
    if not 0.0 <= fill <= 1.0:
        raise ValueError(f"fill must be in [0, 1], got {fill}")
    h, w = x.data.shape[:2]
    m = cutout_mask(h, w, side, rng)
    out = np.where(m.data[:, :, np.newaxis] == 1.0, x.data, np.float32(fill))
    return ImageTensor(out.astype(np.float32))


def mixup(x: ImageTensor, x_prime: ImageTensor, lam: float) -> ImageTensor:
    """Global blend lam * x + (1 - lam) * x_prime."""
    if x.data.shape != x_prime.data.shape:
        raise ValueError(f"image shapes differ: {x.data.shape} vs {x_prime.data.shape}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    blended = lam * x.data.astype(np.float64) + (1.0 - lam) * x_prime.data.astype(np.float64)
    return ImageTensor(np.clip(blended, 0.0, 1.0).astype(np.float32))


def sample_k(rng: RngState, k_min: float = 0.0, k_max: float = 50.0) -> PercentileK:
    """Draw k uniformly from [k_min, k_max]."""
    if not 0.0 <= k_min <= k_max <= 100.0:
        raise ValueError(f"need 0 <= k_min <= k_max <= 100, got [{k_min}, {k_max}]")
    if k_min == k_max:
        return PercentileK(k_min)
    u = float(rng.generator().random())
    return PercentileK(k_min + u * (k_max - k_min))


def sample_lambda(rng: RngState) -> float:
    """Draw the rectangular-cutmix area ratio uniformly from [0, 1]."""
    return float(rng.generator().random())


def augmentation_probability(epoch: int, sched: AugmentSchedule = AugmentSchedule()) -> float:
    """Probability of applying augmentation at a given epoch.

    Ramps linearly from 0 at epoch 0 to max_probability at warmup_epochs
    and stays there.
    """
    if epoch < 0:
        raise ValueError("epoch must be >= 0")
    return sched.max_probability * min(1.0, epoch / sched.warmup_epochs)


def should_augment(rng: RngState, probability: float) -> bool:
    """Bernoulli gate: one uniform draw compared against probability."""
    if not 0.0 <= probability <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {probability}")
    return float(rng.generator().random()) < probability
