"""Synthetic frame corpus shared by the CLI and acceptance tests."""

import numpy as np
from PIL import Image

from prioritycut.tensor_io import write_pct1_array


def build_corpus(root, n_frames=4, h=20, w=20, seed=0):
    """Create driving/generated PNG frames plus occlusion/background masks.

    Returns a dict of the directory paths.
    """
    rng = np.random.default_rng(seed)
    dirs = {}
    for name in ("driving", "generated", "occ", "bg", "salient"):
        d = root / name
        d.mkdir(parents=True, exist_ok=True)
        dirs[name] = d
    for i in range(n_frames):
        stem = f"frame_{i:03d}"
        for img_dir in ("driving", "generated"):
            arr = rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
            Image.fromarray(arr, mode="RGB").save(dirs[img_dir] / f"{stem}.png")
        write_pct1_array(rng.random((h, w), dtype=np.float32), dirs["occ"] / f"{stem}.pct1")
        write_pct1_array(rng.random((h, w), dtype=np.float32), dirs["bg"] / f"{stem}.pct1")
        salient = (rng.random((h, w)) * 0.9 + 0.05).astype(np.float32)
        write_pct1_array(salient, dirs["salient"] / f"{stem}.pct1")
    return dirs


def write_keypoint_files(root, n_frames=3, n_points=4):
    """Ground-truth points plus a (3,4)-shifted copy with one point missing.

    Every frame's generated side misses exactly one of the four detected
    ground-truth points, so akd = 5.0 and mkr = 0.25.
    """
    gt_lines, gen_lines = [], []
    for f in range(n_frames):
        gt_pts, gen_pts = [], []
        for i in range(n_points):
            x, y = 10.0 * f + i, 5.0 * f + 2 * i
            gt_pts.append(f"{x},{y},1")
            missing = i == 0
            gen_pts.append(f"{x + 3},{y + 4},{0 if missing else 1}")
        gt_lines.append(";".join(gt_pts))
        gen_lines.append(";".join(gen_pts))
    gt_path = root / "kp_gt.txt"
    gen_path = root / "kp_gen.txt"
    gt_path.write_text("\n".join(gt_lines) + "\n")
    gen_path.write_text("\n".join(gen_lines) + "\n")
    return gt_path, gen_path


def write_embedding_files(root, n_frames=3, dim=4):
    """Embeddings offset by a constant vector of norm 1.0 per frame."""
    rng = np.random.default_rng(7)
    gt = rng.normal(size=(n_frames, dim))
    offset = np.zeros(dim)
    offset[0] = 1.0
    gen = gt + offset
    gt_path = root / "emb_gt.txt"
    gen_path = root / "emb_gen.txt"
    gt_path.write_text("\n".join(",".join(repr(float(v)) for v in row) for row in gt) + "\n")
    gen_path.write_text("\n".join(",".join(repr(float(v)) for v in row) for row in gen) + "\n")
    return gt_path, gen_path
