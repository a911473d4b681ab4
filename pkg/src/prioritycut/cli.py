"""Command-line pipeline over directories of frames.

Three subcommands: derive-mask (occlusion + background -> cut masks),
augment (mix frames through a chosen augmentation), evaluate (metric
report with optional masked variants and detector-based metrics).

Frames are paired across directories by filename stem, sorted. Every
stochastic choice is keyed by (seed, frame index), and per-frame results
are folded in sorted order, so output bytes do not depend on --jobs.
Exit codes: 0 clean, 1 any frame-level failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import augment as aug
from . import mask_core, metrics, tensor_io
from .tensor_io import AlphaMask, BinaryMask, ImageTensor

_RASTER_SUFFIXES = {".png", ".pgm", ".bmp", ".tif", ".tiff", ".jpg", ".jpeg"}
_FRAME_SUFFIXES = _RASTER_SUFFIXES | {".pct1"}
_SLOTS_PER_FRAME = 8
_SLOT_GATE = 0
_SLOT_PARAM = 1
_SLOT_PLACE = 2

PIXEL_METRICS = ("l1", "psnr", "ssim")
MASKED_METRICS = ("m_psnr", "m_ssim")
SEQUENCE_METRICS = ("akd", "mkr", "aed")
ALL_METRICS = PIXEL_METRICS + MASKED_METRICS + SEQUENCE_METRICS


class ConfigError(Exception):
    """Invalid flags or unusable inputs; maps to exit code 2."""


@dataclass
class RunConfig:
    """Validated knob set shared by the subcommands."""

    out_dir: Path
    driving_dir: Path | None = None
    generated_dir: Path | None = None
    ground_truth_dir: Path | None = None
    occlusion_dir: Path | None = None
    background_dir: Path | None = None
    mask_dir: Path | None = None
    keypoints_gt: Path | None = None
    keypoints_gen: Path | None = None
    embeddings_gt: Path | None = None
    embeddings_gen: Path | None = None
    method: str = "prioritycut"
    k: float | None = None
    k_min: float = 0.0
    k_max: float = 50.0
    tau: float = mask_core.DEFAULT_TAU
    lam: float | None = None
    side: int | None = None
    fill: float = 0.0
    seed: int = 0
    epoch: int | None = None
    warmup_epochs: int = 10
    max_probability: float = 0.5
    mask_mode: str | None = None
    hard_mask: bool = False
    psnr_cap: float = metrics.PSNR_CAP_DB
    metric_names: list[str] = field(default_factory=list)
    jobs: int = 1
    out_format: str = "table"
    keep_intermediates: bool = False


def _require_dir(path: Path | None, flag: str) -> Path:
    if path is None:
        raise ConfigError(f"{flag} is required for this command")
    if not path.is_dir():
        raise ConfigError(f"{flag}: not a directory: {path}")
    return path


def _collect_frames(d: Path, flag: str) -> dict[str, Path]:
    frames: dict[str, Path] = {}
    for p in sorted(d.iterdir()):
        if not p.is_file() or p.suffix.lower() not in _FRAME_SUFFIXES:
            continue
        if p.stem in frames:
            raise ConfigError(f"{flag}: ambiguous frame {p.stem!r} ({frames[p.stem].name} vs {p.name})")
        frames[p.stem] = p
    if not frames:
        raise ConfigError(f"{flag}: no frames found in {d}")
    return frames


def _pair_frames(named_dirs: dict[str, dict[str, Path]]) -> tuple[list[str], list[str]]:
    """Intersect stems across directories; unpaired stems become failures."""
    names = list(named_dirs)
    common = set(named_dirs[names[0]])
    for n in names[1:]:
        common &= set(named_dirs[n])
    failures = []
    for n in names:
        for stem in sorted(set(named_dirs[n]) - common):
            failures.append(f"frame {stem!r}: present in --{n} but unpaired elsewhere")
    return sorted(common), failures


def _run_pool(stems: list[str], worker, jobs: int):
    """Run worker(i, stem) for every frame; collect results and failures.

    Results are keyed by stem and consumed in sorted order afterwards, so
    pool width never changes any output.
    """
    results: dict[str, object] = {}
    failures: list[str] = []
    if jobs <= 1:
        ordered = map(lambda t: (t[1], _safe(worker, *t)), enumerate(stems))
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outs = pool.map(lambda t: (t[1], _safe(worker, *t)), enumerate(stems))
            ordered = list(outs)
    for stem, (ok, payload) in ordered:
        if ok:
            results[stem] = payload
        else:
            failures.append(f"frame {stem!r}: {payload}")
    return results, failures


def _safe(worker, i, stem):
    try:
        return True, worker(i, stem)
    except Exception as exc:  # noqa: BLE001 - per-frame isolation by design
        return False, str(exc)


def _load_frame_image(path: Path) -> ImageTensor:
    if path.suffix.lower() == ".pct1":
        t = tensor_io.load_tensor(path)
        if not isinstance(t, ImageTensor):
            arr = t.data[:, :, np.newaxis]
            return ImageTensor(arr)
        return t
    return tensor_io.load_image(path)


# ---------------------------------------------------------------------------
# derive-mask


def cmd_derive_mask(cfg: RunConfig) -> int:
    occ_dir = _require_dir(cfg.occlusion_dir, "--occlusion")
    bg_dir = _require_dir(cfg.background_dir, "--background")
    k = cfg.k if cfg.k is not None else 30.0
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    frames = {"occlusion": _collect_frames(occ_dir, "--occlusion"),
              "background": _collect_frames(bg_dir, "--background")}
    stems, failures = _pair_frames(frames)

    def worker(i: int, stem: str):
        occ = tensor_io.load_mask(frames["occlusion"][stem])
        bg_mask = tensor_io.load_mask(frames["background"][stem])
        bg = mask_core.binarize_background(bg_mask, cfg.tau)
        o_fg = mask_core.foreground_occlusion(bg, occ)
        m_pc = mask_core.topk_occluded_mask(o_fg, k)
        tensor_io.save_tensor(m_pc, cfg.out_dir / f"{stem}_mpc.pct1")
        tensor_io.save_mask_png(m_pc, cfg.out_dir / f"{stem}_mpc.png")
        if cfg.keep_intermediates:
            tensor_io.save_tensor(o_fg, cfg.out_dir / f"{stem}_ofg.pct1")
        return stem

    results, frame_failures = _run_pool(stems, worker, cfg.jobs)
    failures.extend(frame_failures)
    manifest = {"k": k, "tau": cfg.tau, "frames": sorted(results)}
    (cfg.out_dir / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    for msg in failures:
        print(msg, file=sys.stderr)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# augment


def _method_inputs(cfg: RunConfig) -> dict[str, dict[str, Path]]:
    dirs = {"driving": _collect_frames(_require_dir(cfg.driving_dir, "--driving"), "--driving")}
    if cfg.method in ("prioritycut", "cutmix", "mixup"):
        dirs["generated"] = _collect_frames(_require_dir(cfg.generated_dir, "--generated"), "--generated")
    if cfg.method == "prioritycut":
        dirs["occlusion"] = _collect_frames(_require_dir(cfg.occlusion_dir, "--occlusion"), "--occlusion")
        dirs["background"] = _collect_frames(_require_dir(cfg.background_dir, "--background"), "--background")
    return dirs


def cmd_augment(cfg: RunConfig) -> int:
    if cfg.method not in ("prioritycut", "cutmix", "cutout", "mixup"):
        raise ConfigError(f"unknown method {cfg.method!r}")
    if cfg.k is not None:
        mask_core.PercentileK(cfg.k)
    if not 0.0 <= cfg.k_min <= cfg.k_max <= 100.0:
        raise ConfigError(f"bad k range [{cfg.k_min}, {cfg.k_max}]")
    if cfg.lam is not None and not 0.0 <= cfg.lam <= 1.0:
        raise ConfigError(f"--lambda must be in [0, 1], got {cfg.lam}")
    sched = aug.AugmentSchedule(cfg.warmup_epochs, cfg.max_probability)
    dirs = _method_inputs(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stems, failures = _pair_frames(dirs)

    def worker(i: int, stem: str):
        driving = _load_frame_image(dirs["driving"][stem])
        base = aug.RngState(cfg.seed, i * _SLOTS_PER_FRAME)
        applied = True
        if cfg.epoch is not None:
            p = aug.augmentation_probability(cfg.epoch, sched)
            applied = aug.should_augment(base.advance(_SLOT_GATE), p)
        rec = {"frame": stem, "method": cfg.method, "applied": applied,
               "k": None, "lambda": None, "side": None, "counter_base": i * _SLOTS_PER_FRAME}
        h, w = driving.height, driving.width
        if not applied:
            out_img = driving
            mask: AlphaMask | BinaryMask = BinaryMask(np.ones((h, w), dtype=np.float32))
        elif cfg.method == "prioritycut":
            generated = _load_frame_image(dirs["generated"][stem])
            occ = tensor_io.load_mask(dirs["occlusion"][stem])
            bg = tensor_io.load_mask(dirs["background"][stem])
            if cfg.k is not None:
                k = mask_core.PercentileK(cfg.k)
            else:
                k = aug.sample_k(base.advance(_SLOT_PARAM), cfg.k_min, cfg.k_max)
            out_img, mask = aug.prioritycut_augment(driving, generated, occ, bg, k, cfg.tau)
            rec["k"] = k.k
        elif cfg.method == "cutmix":
            generated = _load_frame_image(dirs["generated"][stem])
            lam = cfg.lam if cfg.lam is not None else aug.sample_lambda(base.advance(_SLOT_PARAM))
            mask = aug.cutmix_mask(h, w, lam, base.advance(_SLOT_PLACE))
            out_img = aug.mix(driving, generated, mask)
            rec["lambda"] = lam
        elif cfg.method == "mixup":
            generated = _load_frame_image(dirs["generated"][stem])
            lam = cfg.lam if cfg.lam is not None else aug.sample_lambda(base.advance(_SLOT_PARAM))
            out_img = aug.mixup(driving, generated, lam)
            mask = AlphaMask(np.full((h, w), np.float32(lam), dtype=np.float32))
            rec["lambda"] = lam
        else:  # cutout
            side = cfg.side if cfg.side is not None else max(1, min(h, w) // 2)
            place = base.advance(_SLOT_PLACE)
            mask = aug.cutout_mask(h, w, side, place)
            out_img = aug.cutout(driving, side, place, cfg.fill)
            rec["side"] = side
        tensor_io.save_tensor(out_img, cfg.out_dir / f"{stem}_aug.pct1")
        tensor_io.save_image_png(out_img, cfg.out_dir / f"{stem}_aug.png")
        tensor_io.save_tensor(mask, cfg.out_dir / f"{stem}_mask.pct1")
        tensor_io.save_mask_png(mask, cfg.out_dir / f"{stem}_mask.png")
        return rec

    results, frame_failures = _run_pool(stems, worker, cfg.jobs)
    failures.extend(frame_failures)
    manifest = {
        "method": cfg.method,
        "seed": cfg.seed,
        "tau": cfg.tau,
        "k": cfg.k,
        "k_min": cfg.k_min,
        "k_max": cfg.k_max,
        "lambda": cfg.lam,
        "side": cfg.side,
        "fill": cfg.fill,
        "epoch": cfg.epoch,
        "warmup_epochs": cfg.warmup_epochs,
        "max_probability": cfg.max_probability,
        "frames": [results[s] for s in sorted(results)],
    }
    (cfg.out_dir / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    for msg in failures:
        print(msg, file=sys.stderr)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# evaluate


def _select_metrics(cfg: RunConfig) -> list[str]:
    have_masks = cfg.mask_mode is not None
    available = list(PIXEL_METRICS)
    if have_masks:
        available += list(MASKED_METRICS)
    if cfg.keypoints_gt and cfg.keypoints_gen:
        available += ["akd", "mkr"]
    if cfg.embeddings_gt and cfg.embeddings_gen:
        available += ["aed"]
    if not cfg.metric_names:
        return available
    for name in cfg.metric_names:
        if name not in ALL_METRICS:
            raise ConfigError(f"unknown metric {name!r}")
        if name not in available:
            raise ConfigError(f"metric {name!r} requested but its inputs were not provided")
    return list(cfg.metric_names)


def _evaluation_mask(cfg: RunConfig, stem: str, frames: dict[str, dict[str, Path]]) -> AlphaMask | BinaryMask:
    if cfg.mask_mode == "salient":
        m = tensor_io.load_mask(frames["mask-dir"][stem])
        if cfg.hard_mask:
            return BinaryMask((m.data >= np.float32(0.5)).astype(np.float32))
        return m
    occ = tensor_io.load_mask(frames["occlusion"][stem])
    if "background" in frames:
        bg = mask_core.binarize_background(tensor_io.load_mask(frames["background"][stem]), cfg.tau)
        o_fg = mask_core.foreground_occlusion(bg, occ)
    else:
        o_fg = occ
    k = cfg.k if cfg.k is not None else 30.0
    m_pc = mask_core.topk_occluded_mask(o_fg, k)
    if cfg.mask_mode == "topk":
        return mask_core.invert_mask(m_pc)
    return m_pc


def _sequence_metric_values(cfg: RunConfig, selected: list[str], failures: list[str]) -> dict[str, list[float]]:
    """Per-frame detector metrics; frames without usable pairs contribute nothing."""
    values: dict[str, list[float]] = {}
    if "akd" in selected or "mkr" in selected:
        gt = tensor_io.load_keypoints(cfg.keypoints_gt)
        gen = tensor_io.load_keypoints(cfg.keypoints_gen)
        if gt.xy.shape != gen.xy.shape:
            raise ConfigError(
                f"keypoint sequences misaligned: {gt.xy.shape} vs {gen.xy.shape}"
            )
        akd_vals, mkr_vals = [], []
        for f in range(gt.frames):
            both = gt.detected[f] & gen.detected[f]
            if np.any(both):
                delta = gt.xy[f][both] - gen.xy[f][both]
                akd_vals.append(float(np.mean(np.sqrt(np.sum(delta * delta, axis=-1)))))
            n_gt = int(np.count_nonzero(gt.detected[f]))
            if n_gt:
                n_missing = int(np.count_nonzero(gt.detected[f] & ~gen.detected[f]))
                mkr_vals.append(n_missing / n_gt)
        if "akd" in selected:
            if akd_vals:
                values["akd"] = akd_vals
            else:
                failures.append("akd: no frame has keypoints detected in both sequences")
        if "mkr" in selected:
            if mkr_vals:
                values["mkr"] = mkr_vals
            else:
                failures.append("mkr: ground truth has no detected keypoints")
    if "aed" in selected:
        egt = tensor_io.load_embeddings(cfg.embeddings_gt)
        egen = tensor_io.load_embeddings(cfg.embeddings_gen)
        if egt.vectors.shape != egen.vectors.shape:
            raise ConfigError(
                f"embedding sequences misaligned: {egt.vectors.shape} vs {egen.vectors.shape}"
            )
        if egt.frames == 0:
            failures.append("aed: empty embedding sequences")
        else:
            delta = egt.vectors - egen.vectors
            values["aed"] = list(np.sqrt(np.sum(delta * delta, axis=1)))
    return values


def cmd_evaluate(cfg: RunConfig) -> int:
    gt_dir = _require_dir(cfg.ground_truth_dir, "--ground-truth")
    gen_dir = _require_dir(cfg.generated_dir, "--generated")
    if cfg.mask_mode is not None and cfg.mask_mode not in ("salient", "topk", "neg-topk"):
        raise ConfigError(f"unknown mask mode {cfg.mask_mode!r}")
    frames = {"ground-truth": _collect_frames(gt_dir, "--ground-truth"),
              "generated": _collect_frames(gen_dir, "--generated")}
    if cfg.mask_mode == "salient":
        frames["mask-dir"] = _collect_frames(_require_dir(cfg.mask_dir, "--mask-dir"), "--mask-dir")
    elif cfg.mask_mode in ("topk", "neg-topk"):
        frames["occlusion"] = _collect_frames(_require_dir(cfg.occlusion_dir, "--occlusion"), "--occlusion")
        if cfg.background_dir is not None:
            frames["background"] = _collect_frames(_require_dir(cfg.background_dir, "--background"), "--background")
    selected = _select_metrics(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stems, failures = _pair_frames(frames)
    ssim_params = metrics.SsimParams()

    def worker(i: int, stem: str):
        a = _load_frame_image(frames["ground-truth"][stem])
        b = _load_frame_image(frames["generated"][stem])
        vals: dict[str, float] = {}
        skip: str | None = None
        if "l1" in selected:
            vals["l1"] = metrics.l1(a, b)
        if "psnr" in selected:
            vals["psnr"] = metrics.psnr(a, b)
        if "ssim" in selected:
            vals["ssim"] = metrics.ssim(a, b, ssim_params)
        if "m_psnr" in selected or "m_ssim" in selected:
            m = _evaluation_mask(cfg, stem, frames)
            if float(m.data.sum()) == 0.0:
                skip = "all-zero mask"
            else:
                if "m_psnr" in selected:
                    vals["m_psnr"] = metrics.masked_psnr(a, b, m)
                if "m_ssim" in selected:
                    vals["m_ssim"] = metrics.masked_ssim(a, b, m, ssim_params)
        return vals, skip

    results, frame_failures = _run_pool(stems, worker, cfg.jobs)
    failures.extend(frame_failures)

    per_metric: dict[str, list[float]] = {name: [] for name in selected}
    skipped: list[str] = []
    for stem in sorted(results):
        vals, skip = results[stem]
        if skip:
            skipped.append(stem)
            failures.append(f"frame {stem!r}: skipped masked metrics ({skip})")
        for name, v in vals.items():
            per_metric[name].append(v)
    per_metric.update(_sequence_metric_values(cfg, selected, failures))

    report: metrics.MetricReport = {}
    for name in selected:
        vals = per_metric.get(name, [])
        if not vals:
            continue
        if name in ("psnr", "m_psnr"):
            vals = metrics.cap_sentinels(vals, cfg.psnr_cap)
        report[name] = metrics.aggregate(vals)

    json_text = metrics.report_to_json(report, skipped)
    (cfg.out_dir / "report.json").write_text(json_text)
    table_text = metrics.render_table(report, skipped)
    (cfg.out_dir / "report.txt").write_text(table_text)
    sys.stdout.write(json_text if cfg.out_format == "json" else table_text)
    for msg in failures:
        print(msg, file=sys.stderr)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output is identical for any value)")
    p.add_argument("--tau", type=float, default=mask_core.DEFAULT_TAU,
                   help="background binarization threshold")
    p.add_argument("--k", type=float, default=None, help="fixed percentile of most-occluded pixels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prioritycut",
        description="Occlusion-guided cut masks, augmentation, and reconstruction metrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive-mask", help="derive cut masks from occlusion + background masks")
    _add_common(p)
    p.add_argument("--occlusion", type=Path, required=True, help="occlusion map directory")
    p.add_argument("--background", type=Path, required=True, help="background mask directory")
    p.add_argument("--keep-intermediates", action="store_true",
                   help="also write the composed foreground-occlusion maps")

    p = sub.add_parser("augment", help="augment driving frames")
    _add_common(p)
    p.add_argument("--driving", type=Path, required=True)
    p.add_argument("--generated", type=Path, default=None)
    p.add_argument("--occlusion", type=Path, default=None)
    p.add_argument("--background", type=Path, default=None)
    p.add_argument("--method", choices=["prioritycut", "cutmix", "cutout", "mixup"],
                   default="prioritycut")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-min", type=float, default=0.0)
    p.add_argument("--k-max", type=float, default=50.0)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="fixed blend/area ratio (drawn per frame when omitted)")
    p.add_argument("--side", type=int, default=None, help="cutout square side")
    p.add_argument("--fill", type=float, default=0.0, help="cutout fill value")
    p.add_argument("--epoch", type=int, default=None,
                   help="apply the warmup probability gate for this epoch")
    p.add_argument("--warmup-epochs", type=int, default=10)
    p.add_argument("--max-probability", type=float, default=0.5)

    p = sub.add_parser("evaluate", help="metric report for generated vs ground-truth frames")
    _add_common(p)
    p.add_argument("--ground-truth", type=Path, required=True)
    p.add_argument("--generated", type=Path, required=True)
    p.add_argument("--mask-mode", choices=["salient", "topk", "neg-topk"], default=None)
    p.add_argument("--mask-dir", type=Path, default=None, help="salient alpha masks")
    p.add_argument("--occlusion", type=Path, default=None, help="occlusion maps for top-k masks")
    p.add_argument("--background", type=Path, default=None,
                   help="optional background masks composed into the occlusion ranking")
    p.add_argument("--hard-mask", action="store_true",
                   help="threshold salient masks at 0.5 instead of alpha weighting")
    p.add_argument("--metrics", type=str, default=None,
                   help=f"comma-separated subset of {','.join(ALL_METRICS)}")
    p.add_argument("--keypoints-gt", type=Path, default=None)
    p.add_argument("--keypoints-gen", type=Path, default=None)
    p.add_argument("--embeddings-gt", type=Path, default=None)
    p.add_argument("--embeddings-gen", type=Path, default=None)
    p.add_argument("--psnr-cap", type=float, default=metrics.PSNR_CAP_DB,
                   help="finite stand-in for identical-image psnr when aggregating")
    p.add_argument("--format", dest="out_format", choices=["json", "table"], default="table")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(out_dir=args.out)
    cfg.jobs = max(1, args.jobs)
    cfg.tau = args.tau
    cfg.k = args.k
    if not 0.0 <= cfg.tau <= 1.0:
        raise ConfigError(f"--tau must be in [0, 1], got {cfg.tau}")
    if cfg.k is not None and not 0.0 <= cfg.k <= 100.0:
        raise ConfigError(f"--k must be in [0, 100], got {cfg.k}")
    if args.command == "derive-mask":
        cfg.occlusion_dir = args.occlusion
        cfg.background_dir = args.background
        cfg.keep_intermediates = args.keep_intermediates
    elif args.command == "augment":
        cfg.driving_dir = args.driving
        cfg.generated_dir = args.generated
        cfg.occlusion_dir = args.occlusion
        cfg.background_dir = args.background
        cfg.method = args.method
        cfg.seed = args.seed
        cfg.k_min = args.k_min
        cfg.k_max = args.k_max
        cfg.lam = args.lam
        cfg.side = args.side
        cfg.fill = args.fill
        cfg.epoch = args.epoch
        cfg.warmup_epochs = args.warmup_epochs
        cfg.max_probability = args.max_probability
    else:
        cfg.ground_truth_dir = args.ground_truth
        cfg.generated_dir = args.generated
        cfg.mask_mode = args.mask_mode
        cfg.mask_dir = args.mask_dir
        cfg.occlusion_dir = args.occlusion
        cfg.background_dir = args.background
        cfg.hard_mask = args.hard_mask
        cfg.metric_names = [s.strip() for s in args.metrics.split(",")] if args.metrics else []
        cfg.keypoints_gt = args.keypoints_gt
        cfg.keypoints_gen = args.keypoints_gen
        cfg.embeddings_gt = args.embeddings_gt
        cfg.embeddings_gen = args.embeddings_gen
        cfg.psnr_cap = args.psnr_cap
        cfg.out_format = args.out_format
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "derive-mask":
            return cmd_derive_mask(cfg)
        if args.command == "augment":
            return cmd_augment(cfg)
        return cmd_evaluate(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
