"""Salient region detection in still images via dynamic mode decomposition."""
from .color_saliency import ColorSaliencyConfig, color_saliency_map
from .config import RunConfig
from .dmd import DmdConfig, DmdDecomposition, SnapshotMatrix, exact_dmd
from .kernels import BACKEND
from .luminance_saliency import LuminanceConfig, luminance_saliency_map
from .pipeline import Detection, PipelineConfig, detect, fuse_maps, segment

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ColorSaliencyConfig",
    "Detection",
    "DmdConfig",
    "DmdDecomposition",
    "LuminanceConfig",
    "PipelineConfig",
    "RunConfig",
    "SnapshotMatrix",
    "color_saliency_map",
    "detect",
    "exact_dmd",
    "fuse_maps",
    "luminance_saliency_map",
    "segment",
]
