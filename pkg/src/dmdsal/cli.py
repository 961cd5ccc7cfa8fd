"""Command-line entry point: ``dmdsal saliency|batch|eval``.

Exit codes: 0 success, 1 partial batch failure, 2 unusable input,
3 invalid configuration.
"""
import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import imageio
from .config import RunConfig
from .errors import ConfigError, DmdsalError
from .evaluation import evaluate_dataset, write_curves_csv
from .pipeline import detect, segment

log = logging.getLogger("dmdsal")

EXIT_OK, EXIT_PARTIAL, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2, 3


def _pair_arg(kind):
    def parse(text):
        parts = text.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}")
        try:
            return tuple(kind(p) for p in parts)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    return parse


def _jobs_default():
    try:
        return max(1, int(os.environ.get("DMDSAL_JOBS", "1")))
    except ValueError:
        return 1


def _add_config_flags(p, evaluation_only=False):
    p.add_argument("--config", help="JSON file with run configuration")
    p.add_argument("--beta2", type=float, help="F-measure beta squared (default 0.3)")
    p.add_argument("--kappa", type=float, help="adaptive threshold multiplier (default 2)")
    if evaluation_only:
        return
    p.add_argument("--repeats", type=int, help="3-column cycles in the color sequence")
    p.add_argument("--weights", type=_pair_arg(float), metavar="WC,WL",
                   help="color and luminance fusion weights")
    p.add_argument("--max-dim", type=int, help="downscale bound before DMD")
    p.add_argument("--sv-range", type=_pair_arg(int), metavar="I0,I1",
                   help="first and last singular value index for luminance snapshots")


def build_config(args):
    config = RunConfig.from_json(args.config) if args.config else RunConfig()
    over = {}
    if getattr(args, "repeats", None) is not None:
        over["repeats"] = args.repeats
    if getattr(args, "weights", None) is not None:
        over["color_weight"], over["luminance_weight"] = args.weights
    if args.kappa is not None:
        over["segmentation_multiplier"] = args.kappa
    if getattr(args, "max_dim", None) is not None:
        over["max_dimension"] = args.max_dim
    if getattr(args, "sv_range", None) is not None:
        over["first_index"], over["last_index"] = args.sv_range
    if args.beta2 is not None:
        over["beta_squared"] = args.beta2
    return RunConfig.from_mapping(over, base=config) if over else config


def _run_one(path, config):
    """Detect on one file; returns (quantized map, mask, dmd summaries)."""
    img = imageio.read_rgb(path)
    result = detect(img, config)
    q = imageio.quantize(result.saliency)
    # segment the exported 8-bit map so the files agree with each other
    mask = segment(q / 255.0, config.pipeline)
    return q, mask, result.dmd


def cmd_saliency(args, config):
    try:
        q, mask, dumps = _run_one(args.input, config)
    except imageio.ImageReadError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except DmdsalError as exc:
        log.error("%s: %s", args.input, exc)
        return EXIT_INPUT
    imageio.write_png(args.out, q)
    if args.seg:
        imageio.write_mask(args.seg, mask)
    if args.dump_dmd:
        imageio.write_json(args.dump_dmd, dumps)
    return EXIT_OK


def _batch_worker(task):
    path, out_dir, config, dump = task
    stem = Path(path).stem
    try:
        q, mask, dumps = _run_one(path, config)
    except (imageio.ImageReadError, DmdsalError) as exc:
        return stem, str(exc)
    out_dir = Path(out_dir)
    imageio.write_png(out_dir / "maps" / f"{stem}.png", q)
    imageio.write_mask(out_dir / "masks" / f"{stem}.png", mask)
    if dump:
        imageio.write_json(out_dir / "dmd" / f"{stem}.json", dumps)
    return stem, None


def _evaluate_dirs(maps_dir, gt_dir, out_dir, config):
    maps = imageio.list_images(maps_dir)
    gts = imageio.list_images(gt_dir)
    for stem in sorted(set(maps) ^ set(gts)):
        where = "maps" if stem in maps else "ground truth"
        log.warning("unmatched %s file: %s", where, stem)
    common = sorted(set(maps) & set(gts))
    if not common:
        return None
    pairs = []
    curves = Path(out_dir) / "curves"
    curves.mkdir(parents=True, exist_ok=True)
    for stem in common:
        m, g = imageio.read_map(maps[stem]), imageio.read_mask(gts[stem])
        if m.shape != g.shape:
            log.warning("skipping %s: map %s vs ground truth %s", stem, m.shape, g.shape)
            continue
        pairs.append((m, g, stem))
        write_curves_csv(curves / f"{stem}.csv", m, g)
    if not pairs:
        return None
    report = evaluate_dataset(
        pairs, config.beta_squared, config.pipeline.segmentation_multiplier
    )
    imageio.write_json(Path(out_dir) / "report.json", report.to_dict())
    return report


def cmd_batch(args, config):
    try:
        inputs = imageio.list_images(args.input_dir)
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    if not inputs:
        log.error("no images found in %s", args.input_dir)
        return EXIT_INPUT
    tasks = [(str(p), args.out, config, args.dump_dmd) for _, p in sorted(inputs.items())]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_worker, tasks))
    else:
        results = [_batch_worker(t) for t in tasks]

    failed = [(stem, err) for stem, err in results if err is not None]
    for stem, err in failed:
        log.error("failed %s: %s", stem, err)
    ok = len(results) - len(failed)
    print(f"{ok}/{len(results)} succeeded", file=sys.stderr)

    if args.gt:
        try:
            report = _evaluate_dirs(Path(args.out) / "maps", args.gt, args.out, config)
        except (OSError, ValueError) as exc:
            log.error("%s", exc)
            return EXIT_INPUT
        if report is None:
            log.error("no map/ground-truth pairs matched")
            return EXIT_INPUT
    return EXIT_OK if not failed else EXIT_PARTIAL


def cmd_eval(args, config):
    try:
        report = _evaluate_dirs(args.maps_dir, args.gt_dir, args.out, config)
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    if report is None:
        log.error("no map/ground-truth pairs matched")
        return EXIT_INPUT
    agg = report.aggregate
    print(
        f"images={agg['n_images']} auc={agg['auc']} max_f={agg['max_f']} "
        f"f_adaptive={agg['f_at_adaptive']}"
    )
    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog="dmdsal", description="Salient region detection with dynamic mode decomposition"
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("saliency", help="saliency map for one image")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="output map PNG")
    p.add_argument("--seg", help="output binary mask PNG")
    p.add_argument("--dump-dmd", metavar="JSON", help="write DMD spectra summaries")
    _add_config_flags(p)
    p.set_defaults(func=cmd_saliency)

    p = sub.add_parser("batch", help="maps and masks for a directory of images")
    p.add_argument("input_dir")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--gt", help="ground-truth mask directory (matched by file stem)")
    p.add_argument("--dump-dmd", action="store_true", help="write DMD summaries per image")
    p.add_argument("--jobs", type=int, default=_jobs_default(),
                   help="worker processes (default $DMDSAL_JOBS or 1)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("eval", help="evaluate existing maps against ground truth")
    p.add_argument("maps_dir")
    p.add_argument("gt_dir")
    p.add_argument("--out", default=".", help="directory for report.json and curves/")
    _add_config_flags(p, evaluation_only=True)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = build_config(args)
    except ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    if getattr(args, "jobs", 1) < 1:
        log.error("invalid configuration: --jobs must be >= 1")
        return EXIT_CONFIG
    return args.func(args, config)


if __name__ == "__main__":
    sys.exit(main())
