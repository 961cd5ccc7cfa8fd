"""Image decoding and atomic file output."""
import json
import os
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".ppm", ".pnm", ".pgm", ".bmp"}
GT_LEVEL = 128


class ImageReadError(OSError):
    pass


def _open(path):
    try:
        with Image.open(path) as im:
            im.load()
            return im.copy()
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise ImageReadError(f"cannot decode {path}: {exc}") from exc


def read_rgb(path):
    return np.asarray(_open(path).convert("RGB"), dtype=np.uint8)


def read_gray(path):
    return np.asarray(_open(path).convert("L"), dtype=np.uint8)


def read_map(path):
    """Grayscale saliency map scaled to [0, 1]."""
    return read_gray(path) / 255.0


def read_mask(path):
    return read_gray(path) >= GT_LEVEL


def quantize(saliency):
    return np.rint(np.clip(saliency, 0.0, 1.0) * 255.0).astype(np.uint8)


def _atomic_write(path, write):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_png(path, gray):
    img = Image.fromarray(np.asarray(gray, dtype=np.uint8), mode="L")
    _atomic_write(path, lambda fh: img.save(fh, format="PNG"))


def write_mask(path, mask):
    write_png(path, np.where(mask, 255, 0).astype(np.uint8))


def write_json(path, obj):
    data = (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode()
    _atomic_write(path, lambda fh: fh.write(data))


def list_images(directory):
    """Image files in ``directory`` keyed by stem; raises on stem collisions."""
    out = {}
    for p in sorted(Path(directory).iterdir()):
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES:
            if p.stem in out:
                raise ValueError(f"stem collision: {out[p.stem].name} and {p.name}")
            out[p.stem] = p
    return out
