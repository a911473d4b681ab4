"""Consistency regularization over per-pixel discriminator outputs.

A per-pixel discriminator that is consistent under cut-and-mix should
predict, on a mixed image, exactly the mix of its predictions on the
two unmixed images. The penalty here is the squared L2 norm of that
residual. Adversarial loss terms are accepted as precomputed scalars;
producing them requires networks and is out of scope for this library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .tensor_io import AlphaMask, BinaryMask, TensorIOError, read_pct1_array


@dataclass(frozen=True)
class PredictionMap:
    """H x W per-pixel realness scores; finite floats, unbounded range."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 2:
            raise ValueError(f"prediction map must be HxW, got shape {arr.shape}")
        if min(arr.shape) == 0:
            raise ValueError("prediction map has a zero dimension")
        if not np.all(np.isfinite(arr)):
            raise ValueError("prediction map contains non-finite values")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class LossWeights:
    """Weight of the consistency term in the discriminator loss."""

    lambda_cons: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.lambda_cons) or self.lambda_cons < 0.0:
            raise ValueError("lambda_cons must be finite and >= 0")


def load_prediction_map(path: str | Path) -> PredictionMap:
    """Read a rank-2 PCT1 tensor as a prediction map (values unbounded)."""
    arr = read_pct1_array(path)
    if arr.ndim != 2:
        raise TensorIOError(f"{path}: prediction map must have rank 2, got {arr.ndim}")
    return PredictionMap(arr)


def consistency_loss(
    d_mix: PredictionMap,
    d_real: PredictionMap,
    d_fake: PredictionMap,
    m: BinaryMask | AlphaMask,
    reduction: str = "sum",
) -> float:
    """Squared L2 norm of d_mix - (m * d_real + (1 - m) * d_fake).

    reduction "sum" accumulates over pixels (the norm itself); "mean"
    divides by the pixel count for a scale-free variant.
    """
    shape = d_mix.data.shape
    if d_real.data.shape != shape or d_fake.data.shape != shape or m.data.shape != shape:
        raise ValueError("prediction maps and mask must share one shape")
    if reduction not in ("sum", "mean"):
        raise ValueError(f"reduction must be 'sum' or 'mean', got {reduction!r}")
    # Mix in the maps' own dtype so a discriminator that is consistent at
    # storage precision scores exactly zero; only the reduction widens.
    w = m.data
    mixed = w * d_real.data + (np.float32(1.0) - w) * d_fake.data
    residual = (d_mix.data - mixed).astype(np.float64)
    total = float(np.sum(residual * residual))
    if reduction == "mean":
        return total / residual.size
    return total


def discriminator_loss(
    l_enc: float, l_dec: float, l_cons: float, w: LossWeights = LossWeights()
) -> float:
    """Total discriminator loss: l_enc + l_dec + lambda_cons * l_cons."""
    for name, v in (("l_enc", l_enc), ("l_dec", l_dec), ("l_cons", l_cons)):
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v}")
    return l_enc + l_dec + w.lambda_cons * l_cons
