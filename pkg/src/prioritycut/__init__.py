"""Occlusion-guided cut-and-mix augmentation with masked reconstruction metrics.

The pipeline derives a hard cut mask from a warp occlusion map and a
background mask (threshold, compose, rank by occlusion, keep the top-k
percent), mixes real and generated frames through it, and scores
reconstructions with plain and masked image metrics plus detector-based
keypoint/embedding distances.
"""

from .augment import (
    AugmentSchedule,
    RngState,
    augmentation_probability,
    cutmix_mask,
    cutout,
    cutout_mask,
    mix,
    mixup,
    prioritycut_augment,
    sample_k,
    sample_lambda,
    should_augment,
)
from .mask_core import (
    DEFAULT_TAU,
    PercentileK,
    binarize_background,
    derive_cut_mask,
    foreground_occlusion,
    invert_mask,
    topk_occluded_mask,
)
from .metrics import (
    MetricReport,
    MetricStat,
    SsimParams,
    aed,
    aggregate,
    akd,
    cap_sentinels,
    l1,
    masked_psnr,
    masked_ssim,
    mkr,
    psnr,
    render_table,
    report_from_json,
    report_to_json,
    ssim,
    ssim_map,
)
from .regularization import (
    LossWeights,
    PredictionMap,
    consistency_loss,
    discriminator_loss,
    load_prediction_map,
)
from .tensor_io import (
    AlphaMask,
    BinaryMask,
    EmbeddingSequence,
    ImageTensor,
    KeypointSequence,
    TensorIOError,
    load_embeddings,
    load_image,
    load_keypoints,
    load_mask,
    load_tensor,
    read_pct1_array,
    save_image_png,
    save_mask_png,
    save_tensor,
    write_pct1_array,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaMask",
    "AugmentSchedule",
    "BinaryMask",
    "DEFAULT_TAU",
    "EmbeddingSequence",
    "ImageTensor",
    "KeypointSequence",
    "LossWeights",
    "MetricReport",
    "MetricStat",
    "PercentileK",
    "PredictionMap",
    "RngState",
    "SsimParams",
    "TensorIOError",
    "aed",
    "aggregate",
    "akd",
    "augmentation_probability",
    "binarize_background",
    "cap_sentinels",
    "consistency_loss",
    "cutmix_mask",
    "cutout",
    "cutout_mask",
    "derive_cut_mask",
    "discriminator_loss",
    "foreground_occlusion",
    "invert_mask",
    "l1",
    "load_embeddings",
    "load_image",
    "load_keypoints",
    "load_mask",
    "load_prediction_map",
    "load_tensor",
    "masked_psnr",
    "masked_ssim",
    "mix",
    "mixup",
    "mkr",
    "prioritycut_augment",
    "psnr",
    "read_pct1_array",
    "render_table",
    "report_from_json",
    "report_to_json",
    "sample_k",
    "sample_lambda",
    "save_image_png",
    "save_mask_png",
    "save_tensor",
    "should_augment",
    "ssim",
    "ssim_map",
    "topk_occluded_mask",
    "write_pct1_array",
]
