"""Tensor containers and file ingestion/emission.

All pixel math in this package runs on the containers defined here:
images and alpha masks are row-major float32 in [0, 1], binary masks are
float32 restricted to {0, 1}. Detector outputs (keypoints, embeddings)
are ingested from line-oriented text files; float tensors are exchanged
through the PCT1 binary format, which round-trips bit-exactly.

PCT1 layout: magic b"PCT1", u8 rank, rank little-endian u32 dims,
row-major little-endian f32 payload.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

PCT1_MAGIC = b"PCT1"

_GRAY_8 = ("L",)
_GRAY_16 = ("I;16", "I;16L", "I;16B", "I;16N")


class TensorIOError(ValueError):
    """Raised for unreadable, malformed, or out-of-contract payloads."""


def _check_unit_range(data: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(data)):
        raise TensorIOError(f"{what} contains non-finite values")
    if data.size and (float(data.min()) < 0.0 or float(data.max()) > 1.0):
        raise TensorIOError(f"{what} has values outside [0, 1]")


@dataclass(frozen=True)
class ImageTensor:
    """H x W x C image, float32 in [0, 1], C in {1, 3}."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 3 or arr.shape[2] not in (1, 3):
            raise TensorIOError(f"image must be HxWxC with C in {{1,3}}, got {arr.shape}")
        if min(arr.shape) == 0:
            raise TensorIOError("image has a zero dimension")
        _check_unit_range(arr, "image")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]


@dataclass(frozen=True)
class AlphaMask:
    """H x W soft mask, float32 in [0, 1].

    Carries occlusion maps (0 = fully occluded, 1 = not occluded) and
    alpha background masks alike; the interpretation is the caller's.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 2:
            raise TensorIOError(f"mask must be HxW, got shape {arr.shape}")
        if min(arr.shape) == 0:
            raise TensorIOError("mask has a zero dimension")
        _check_unit_range(arr, "mask")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class BinaryMask:
    """H x W hard mask, float32 with every element exactly 0 or 1."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 2:
            raise TensorIOError(f"mask must be HxW, got shape {arr.shape}")
        if min(arr.shape) == 0:
            raise TensorIOError("mask has a zero dimension")
        if not np.all((arr == 0.0) | (arr == 1.0)):
            raise TensorIOError("binary mask has values other than 0 and 1")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class KeypointSequence:
    """Per-frame keypoints with detection flags.

    xy has shape (frames, points, 2); detected has shape (frames, points).
    Coordinates must be finite wherever the point is flagged detected.
    """

    xy: np.ndarray
    detected: np.ndarray

    def __post_init__(self):
        xy = np.ascontiguousarray(self.xy, dtype=np.float64)
        det = np.ascontiguousarray(self.detected, dtype=bool)
        if xy.ndim != 3 or xy.shape[2] != 2 or det.shape != xy.shape[:2]:
            raise TensorIOError("keypoint arrays must be (F,K,2) and (F,K)")
        if not np.all(np.isfinite(xy[det])):
            raise TensorIOError("detected keypoints must have finite coordinates")
        object.__setattr__(self, "xy", xy)
        object.__setattr__(self, "detected", det)

    @property
    def frames(self) -> int:
        return self.xy.shape[0]

    @property
    def points_per_frame(self) -> int:
        return self.xy.shape[1]


@dataclass(frozen=True)
class EmbeddingSequence:
    """Per-frame feature vectors, shape (frames, dim), finite float64."""

    vectors: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.vectors, dtype=np.float64)
        if arr.ndim != 2:
            raise TensorIOError("embeddings must be a (frames, dim) array")
        if not np.all(np.isfinite(arr)):
            raise TensorIOError("embeddings contain non-finite values")
        object.__setattr__(self, "vectors", arr)

    @property
    def frames(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


# ---------------------------------------------------------------------------
# Raster images


def _open_raster(path: str | Path) -> Image.Image:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such image: {p}")
    try:
        img = Image.open(p)
        img.load()
    except (UnidentifiedImageError, OSError) as exc:
        raise TensorIOError(f"cannot decode raster image {p}: {exc}") from exc
    return img


def _raster_to_unit_floats(img: Image.Image, path: Path) -> np.ndarray:
    """Decode to float32 in [0,1]; integer samples divide by (2^bits - 1)."""
    mode = img.mode
    if mode in _GRAY_8:
        arr = np.asarray(img, dtype=np.uint8)
        return arr.astype(np.float32) / np.float32(255.0)
    if mode in _GRAY_16:
        arr = np.asarray(img, dtype=np.uint16)
        return arr.astype(np.float32) / np.float32(65535.0)
    if mode == "I":
        # 16-bit grayscale PNGs decode to 32-bit "I" in some Pillow versions.
        arr = np.asarray(img, dtype=np.int32)
        if arr.size and (arr.min() < 0 or arr.max() > 65535):
            raise TensorIOError(f"{path}: integer image exceeds 16-bit range")
        return arr.astype(np.float32) / np.float32(65535.0)
    if mode == "RGB":
        arr = np.asarray(img, dtype=np.uint8)
        return arr.astype(np.float32) / np.float32(255.0)
    raise TensorIOError(f"{path}: unsupported color model {mode!r} (need 8/16-bit gray or RGB)")


def load_image(path: str | Path) -> ImageTensor:
    """Load an 8- or 16-bit grayscale/RGB raster image, scaled to [0, 1]."""
    img = _open_raster(path)
    arr = _raster_to_unit_floats(img, Path(path))
    if arr.ndim == 2:
        arr = arr[:, :, np.newaxis]
    return ImageTensor(arr)


def load_mask(path: str | Path) -> AlphaMask:
    """Load a single-channel raster or rank-2 PCT1 tensor as an alpha mask."""
    p = Path(path)
    if p.suffix.lower() == ".pct1" or _has_pct1_magic(p):
        arr = read_pct1_array(p)
        if arr.ndim != 2:
            raise TensorIOError(f"{p}: mask tensor must have rank 2, got rank {arr.ndim}")
        return AlphaMask(arr)
    img = _open_raster(p)
    if img.mode == "RGB":
        raise TensorIOError(f"{p}: masks must be single-channel, got RGB")
    arr = _raster_to_unit_floats(img, p)
    return AlphaMask(arr)


def save_image_png(t: ImageTensor, path: str | Path) -> None:
    """Write an 8-bit PNG preview; values quantized by round(v * 255)."""
    arr = np.round(t.data * 255.0).astype(np.uint8)
    if arr.shape[2] == 1:
        img = Image.fromarray(arr[:, :, 0], mode="L")
    else:
        img = Image.fromarray(arr, mode="RGB")
    img.save(Path(path), format="PNG")


def save_mask_png(m: AlphaMask | BinaryMask, path: str | Path) -> None:
    """Write a mask as an 8-bit grayscale PNG preview."""
    arr = np.round(m.data * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(Path(path), format="PNG")


# ---------------------------------------------------------------------------
# PCT1 float tensors


def _has_pct1_magic(path: Path) -> bool:
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with open(path, "rb") as fh:
        return fh.read(4) == PCT1_MAGIC


def write_pct1_array(arr: np.ndarray, path: str | Path) -> None:
    """Serialize a float array as PCT1 (little-endian f32, row-major)."""
    arr = np.ascontiguousarray(arr, dtype="<f4")
    with open(Path(path), "wb") as fh:
        fh.write(PCT1_MAGIC)
        fh.write(struct.pack("<B", arr.ndim))
        fh.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
        fh.write(arr.tobytes(order="C"))


def read_pct1_array(path: str | Path) -> np.ndarray:
    """Read a PCT1 file into a float32 array; rejects malformed payloads."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such file: {p}")
    blob = p.read_bytes()
    if blob[:4] != PCT1_MAGIC:
        raise TensorIOError(f"{p}: bad magic, not a PCT1 file")
    if len(blob) < 5:
        raise TensorIOError(f"{p}: truncated header")
    rank = blob[4]
    header_end = 5 + 4 * rank
    if rank == 0 or len(blob) < header_end:
        raise TensorIOError(f"{p}: invalid rank or truncated dims")
    dims = struct.unpack(f"<{rank}I", blob[5:header_end])
    if any(d == 0 for d in dims):
        raise TensorIOError(f"{p}: zero dimension in header {dims}")
    count = int(np.prod(dims, dtype=np.int64))
    payload = blob[header_end:]
    if len(payload) != 4 * count:
        raise TensorIOError(
            f"{p}: payload holds {len(payload) // 4} floats, header expects {count}"
        )
    arr = np.frombuffer(payload, dtype="<f4").reshape(dims)
    if not np.all(np.isfinite(arr)):
        raise TensorIOError(f"{p}: payload contains NaN or Inf")
    return arr.astype(np.float32, copy=True)


def save_tensor(t: ImageTensor | AlphaMask | BinaryMask, path: str | Path) -> None:
    """Write any tensor container as PCT1 (rank 3 for images, rank 2 for masks)."""
    write_pct1_array(t.data, path)


def load_tensor(path: str | Path) -> ImageTensor | AlphaMask | BinaryMask:
    """Load a PCT1 file back into a tensor container.

    Rank 3 loads as ImageTensor. Rank 2 loads as BinaryMask when every
    value is exactly 0 or 1, else as AlphaMask; payload bits are
    preserved either way.
    """
    arr = read_pct1_array(path)
    if arr.ndim == 3:
        return ImageTensor(arr)
    if arr.ndim == 2:
        if np.all((arr == 0.0) | (arr == 1.0)):
            return BinaryMask(arr)
        return AlphaMask(arr)
    raise TensorIOError(f"{path}: expected rank 2 or 3, got rank {arr.ndim}")


# ---------------------------------------------------------------------------
# Detector outputs (keypoints / embeddings)


def load_keypoints(path: str | Path) -> KeypointSequence:
    """Parse keypoints: one frame per line, points split by ';', each 'x,y,flag'."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such keypoint file: {p}")
    frames_xy: list[list[tuple[float, float]]] = []
    frames_det: list[list[bool]] = []
    for lineno, line in enumerate(p.read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        xs: list[tuple[float, float]] = []
        ds: list[bool] = []
        for token in line.split(";"):
            parts = token.strip().split(",")
            if len(parts) != 3:
                raise TensorIOError(f"{p}:{lineno}: point {token!r} is not 'x,y,flag'")
            try:
                x, y = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise TensorIOError(f"{p}:{lineno}: non-numeric coordinate in {token!r}") from exc
            flag = parts[2].strip()
            if flag not in ("0", "1"):
                raise TensorIOError(f"{p}:{lineno}: flag must be 0 or 1, got {flag!r}")
            xs.append((x, y))
            ds.append(flag == "1")
        if frames_xy and len(xs) != len(frames_xy[0]):
            raise TensorIOError(
                f"{p}:{lineno}: ragged frame, {len(xs)} points vs {len(frames_xy[0])} earlier"
            )
        frames_xy.append(xs)
        frames_det.append(ds)
    if not frames_xy:
        return KeypointSequence(np.zeros((0, 0, 2)), np.zeros((0, 0), dtype=bool))
    return KeypointSequence(np.asarray(frames_xy, dtype=np.float64), np.asarray(frames_det))


def load_embeddings(path: str | Path) -> EmbeddingSequence:
    """Parse embeddings: one frame per line, comma-separated floats."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such embedding file: {p}")
    rows: list[list[float]] = []
    for lineno, line in enumerate(p.read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            vec = [float(tok) for tok in line.split(",")]
        except ValueError as exc:
            raise TensorIOError(f"{p}:{lineno}: non-numeric field") from exc
        if rows and len(vec) != len(rows[0]):
            raise TensorIOError(
                f"{p}:{lineno}: ragged frame, dim {len(vec)} vs {len(rows[0])} earlier"
            )
        rows.append(vec)
    if not rows:
        return EmbeddingSequence(np.zeros((0, 0)))
    return EmbeddingSequence(np.asarray(rows, dtype=np.float64))
