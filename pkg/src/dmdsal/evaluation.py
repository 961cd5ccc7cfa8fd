"""Precision-recall, ROC, AUC and F-measure against ground-truth masks.

Curves sweep the 256 thresholds k/255 with a strict ``map > t`` prediction.
Rate conventions for empty denominators: precision 0/0 = 1 (an empty
prediction is vacuously precise) and recall 0/0 = 1 (nothing to find).
"""
import csv
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from .errors import DegenerateGroundTruth, EmptyDataset, ShapeMismatch
from .pipeline import adaptive_threshold

THRESHOLDS = np.arange(256) / 255.0
CSV_HEADER = ("threshold", "precision", "recall", "fpr", "tpr")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self):
        return self.tp + self.fp + self.tn + self.fn


def _pair(saliency, gt):
    saliency = np.asarray(saliency, dtype=np.float64)
    gt = np.asarray(gt, dtype=bool)
    if saliency.shape != gt.shape:
        raise ShapeMismatch(f"map {saliency.shape} vs ground truth {gt.shape}")
    return saliency, gt


def _ratio(num, den, empty=1.0):
    return num / den if den else empty


def confusion_at_threshold(saliency, gt, t):
    saliency, gt = _pair(saliency, gt)
    pred = saliency > t
    tp = int(np.count_nonzero(pred & gt))
    fp = int(np.count_nonzero(pred & ~gt))
    fn = int(np.count_nonzero(~pred & gt))
    return ConfusionCounts(tp, fp, gt.size - tp - fp - fn, fn)


def sweep_counts(saliency, gt):
    """(tp, fp, n_pos, n_neg) over all 256 thresholds."""
    saliency, gt = _pair(saliency, gt)
    tp, fp = kernels.threshold_counts(saliency, gt, THRESHOLDS)
    n_pos = int(np.count_nonzero(gt))
    return tp, fp, n_pos, gt.size - n_pos


def pr_curve(saliency, gt):
    tp, fp, n_pos, _ = sweep_counts(saliency, gt)
    return [
        (_ratio(int(a), int(a) + int(b)), _ratio(int(a), n_pos))
        for a, b in zip(tp, fp)
    ]


def roc_curve(saliency, gt):
    tp, fp, n_pos, n_neg = sweep_counts(saliency, gt)
    if n_pos == 0 or n_neg == 0:
        raise DegenerateGroundTruth("ground truth must contain both salient and background pixels")
    return [(int(b) / n_neg, int(a) / n_pos) for a, b in zip(tp, fp)]


def auc(roc_points):
    """Trapezoidal area under (fpr, tpr) points, with (0,0) and (1,1) added."""
    pts = sorted([(0.0, 0.0), *((float(x), float(y)) for x, y in roc_points), (1.0, 1.0)])
    return math.fsum(
        (x1 - x0) * (y0 + y1) / 2.0 for (x0, y0), (x1, y1) in zip(pts, pts[1:])
    )


def f_measure(precision, recall, beta_squared=0.3):
    den = beta_squared * precision + recall
    if den == 0:
        return 0.0
    return (1.0 + beta_squared) * precision * recall / den


@dataclass
class ImageMetrics:
    image_id: str
    auc: float | None
    max_f: float
    f_at_adaptive: float
    pr_points: list
    roc_points: list | None
    degenerate_gt: bool = False


@dataclass
class MetricsReport:
    per_image: list
    aggregate: dict
    beta_squared: float
    flagged: list = field(default_factory=list)

    def to_dict(self):
        return {
            "beta_squared": self.beta_squared,
            "aggregate": self.aggregate,
            "flagged": self.flagged,
            "per_image": [asdict(m) for m in self.per_image],
        }


def evaluate_image(saliency, gt, image_id, beta_squared=0.3, kappa=2.0):
    saliency, gt = _pair(saliency, gt)
    pr = pr_curve(saliency, gt)
    max_f = max(f_measure(p, r, beta_squared) for p, r in pr)

    c = confusion_at_threshold(saliency, gt, adaptive_threshold(saliency, kappa))
    f_ad = f_measure(_ratio(c.tp, c.tp + c.fp), _ratio(c.tp, c.tp + c.fn), beta_squared)

    try:
        roc = roc_curve(saliency, gt)
    except DegenerateGroundTruth:
        roc = None
    return ImageMetrics(
        image_id=str(image_id),
        auc=None if roc is None else auc(roc),
        max_f=max_f,
        f_at_adaptive=f_ad,
        pr_points=[list(p) for p in pr],
        roc_points=None if roc is None else [list(p) for p in roc],
        degenerate_gt=roc is None,
    )


def _mean(values):
    values = list(values)
    return math.fsum(values) / len(values) if values else None


def evaluate_dataset(pairs, beta_squared=0.3, kappa=2.0):
    """Evaluate ``(map, gt, image_id)`` triples; results ordered by image id.

    Images whose ground truth is all-true or all-false get no ROC/AUC, are
    left out of the AUC mean and listed in ``flagged``.
    """
    pairs = sorted(pairs, key=lambda p: str(p[2]))
    if not pairs:
        raise EmptyDataset("no map/ground-truth pairs to evaluate")
    per_image = [evaluate_image(m, g, i, beta_squared, kappa) for m, g, i in pairs]
    aggregate = {
        "auc": _mean(m.auc for m in per_image if m.auc is not None),
        "max_f": _mean(m.max_f for m in per_image),
        "f_at_adaptive": _mean(m.f_at_adaptive for m in per_image),
        "n_images": len(per_image),
    }
    flagged = [m.image_id for m in per_image if m.degenerate_gt]
    return MetricsReport(per_image, aggregate, beta_squared, flagged)


def curve_rows(saliency, gt):
    """Rows (threshold, precision, recall, fpr, tpr); fpr is NaN without negatives."""
    tp, fp, n_pos, n_neg = sweep_counts(saliency, gt)
    rows = []
    for t, a, b in zip(THRESHOLDS, tp, fp):
        a, b = int(a), int(b)
        recall = _ratio(a, n_pos)
        fpr = b / n_neg if n_neg else float("nan")
        rows.append((float(t), _ratio(a, a + b), recall, fpr, recall))
    return rows


def write_curves_csv(path, saliency, gt):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in curve_rows(saliency, gt):
            w.writerow([repr(v) for v in row])
