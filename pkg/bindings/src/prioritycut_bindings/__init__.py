"""Flat-buffer access to the hot prioritycut kernels.

Training loops hand in contiguous row-major float buffers with explicit
dims and get the same shape of thing back; no container types cross the
boundary. Only stateless kernels are exposed: randomness and scheduling
stay on the caller's side so the training framework keeps control of
its own draws. Heavy lifting runs in numpy kernels, which drop the
interpreter lock, so concurrent calls from several host threads are
fine; inputs are never mutated.

Results are bitwise identical to calling the core library directly on
the same values.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

import prioritycut as core

__version__ = core.__version__

__all__ = ["BufferView", "bind_derive_mask", "bind_mix", "bind_metrics", "__version__"]

_METRIC_NAMES = ("l1", "psnr", "ssim", "m_psnr", "m_ssim")


class BufferView(NamedTuple):
    """Row-major float payload plus its dims; product(dims) must equal len(data)."""

    data: Sequence[float]
    dims: tuple[int, ...]


def _as_array(view: BufferView, what: str, ranks: tuple[int, ...]) -> np.ndarray:
    data, dims = view
    if isinstance(data, np.ndarray):
        if data.ndim != 1:
            raise ValueError(f"{what}: buffer data must be flat, got {data.ndim}-d array")
        if not data.flags["C_CONTIGUOUS"]:
            raise ValueError(f"{what}: buffer must be contiguous")
        flat = data.astype(np.float32, copy=True)
    else:
        flat = np.asarray(list(data), dtype=np.float32)
    dims = tuple(int(d) for d in dims)
    if len(dims) not in ranks:
        raise ValueError(f"{what}: expected rank in {ranks}, got dims {dims}")
    if any(d <= 0 for d in dims):
        raise ValueError(f"{what}: dims must be positive, got {dims}")
    if flat.size != int(np.prod(dims)):
        raise ValueError(f"{what}: {flat.size} values do not fill dims {dims}")
    return flat.reshape(dims)


def _as_view(arr: np.ndarray) -> BufferView:
    return BufferView(np.ascontiguousarray(arr, dtype=np.float32).ravel(), arr.shape)


def _as_mask(arr: np.ndarray):
    if np.all((arr == 0.0) | (arr == 1.0)):
        return core.BinaryMask(arr)
    return core.AlphaMask(arr)


def _as_image(view: BufferView, what: str) -> core.ImageTensor:
    arr = _as_array(view, what, ranks=(2, 3))
    if arr.ndim == 2:
        arr = arr[:, :, np.newaxis]
    return core.ImageTensor(arr)


def bind_derive_mask(occ: BufferView, m_bg: BufferView, k: float, tau: float = core.DEFAULT_TAU) -> BufferView:
    """Run the full cut-mask derivation over HxW occlusion and background buffers."""
    occ_mask = core.AlphaMask(_as_array(occ, "occ", ranks=(2,)))
    bg_mask = core.AlphaMask(_as_array(m_bg, "m_bg", ranks=(2,)))
    return _as_view(core.derive_cut_mask(occ_mask, bg_mask, k, tau).data)


def bind_mix(x: BufferView, x_prime: BufferView, m: BufferView) -> BufferView:
    """Mask-weighted mix of two image buffers; HxW masks broadcast over channels."""
    image = _as_image(x, "x")
    other = _as_image(x_prime, "x_prime")
    mask = _as_mask(_as_array(m, "m", ranks=(2,)))
    return _as_view(core.mix(image, other, mask).data)


def bind_metrics(
    a: BufferView,
    b: BufferView,
    mask: BufferView | None = None,
    which: Iterable[str] | None = None,
) -> Mapping[str, float]:
    """Selected reconstruction metrics between two image buffers.

    Defaults to l1/psnr/ssim, plus the masked variants when a mask buffer
    is supplied.
    """
    image_a = _as_image(a, "a")
    image_b = _as_image(b, "b")
    m = _as_mask(_as_array(mask, "mask", ranks=(2,))) if mask is not None else None
    if which is None:
        names = list(_METRIC_NAMES) if m is not None else ["l1", "psnr", "ssim"]
    else:
        names = list(which)
    out: dict[str, float] = {}
    for name in names:
        if name == "l1":
            out[name] = core.l1(image_a, image_b)
        elif name == "psnr":
            out[name] = core.psnr(image_a, image_b)
        elif name == "ssim":
            out[name] = core.ssim(image_a, image_b)
        elif name == "m_psnr":
            if m is None:
                raise ValueError("m_psnr requested without a mask buffer")
            out[name] = core.masked_psnr(image_a, image_b, m)
        elif name == "m_ssim":
            if m is None:
                raise ValueError("m_ssim requested without a mask buffer")
            out[name] = core.masked_ssim(image_a, image_b, m)
        else:
            raise ValueError(f"unknown metric {name!r}, supported: {_METRIC_NAMES}")
    return out
