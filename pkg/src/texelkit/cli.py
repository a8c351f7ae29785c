"""Command-line front end.

Subcommands: analyze, synthesize, detect, generate. JSON reports go to
stdout (or --json-out); images are written only to explicit output paths;
warnings and diagnostics go to stderr.

Exit codes: 0 success; 1 anomalies found (detect); 2 usage, I/O, or parse
error; 3 no conforming block to synthesize from (synthesize).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .blocks import DEFAULT_EPSILON, classify_blocks, partition
from .image import GrayImage, load_pgm, save_pgm
from .periodicity import column_dmf, estimate_periods, forward_difference, row_dmf
from .synthesis import extract_texel, highlight_anomalies, synthesize
from .testgen import GroundTruth, generate, random_texel

EXIT_OK = 0
EXIT_ANOMALIES = 1
EXIT_ERROR = 2
EXIT_NO_REPRESENTATIVE = 3


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _load_image(path: str) -> GrayImage:
    return load_pgm(Path(path).read_bytes())


def _save_image(path: str, img: GrayImage) -> None:
    Path(path).write_bytes(save_pgm(img))


def _emit_json(obj, json_out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if json_out:
        Path(json_out).write_text(text + "\n")
    else:
        print(text)


def _parse_defects(text: str) -> list[tuple[int, int]]:
    """Parse '1,1;2,0' into [(1, 1), (2, 0)]."""
    blocks = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(",")
        if len(pieces) != 2:
            raise ValueError(f"bad defect block {part!r}: expected 'row,col'")
        blocks.append((int(pieces[0]), int(pieces[1])))
    return blocks


def _resolve_periods(img: GrayImage, args):
    """Manual periods when given, DMF estimation otherwise.

    Returns (periods_dict, block_h, block_w, curves) where curves is None on
    the manual path.
    """
    manual = args.period_rows is not None or args.period_cols is not None
    if manual:
        if args.period_rows is None or args.period_cols is None:
            raise ValueError("--period-rows and --period-cols must be given together")
        periods = {
            "row_period": args.period_rows,
            "col_period": args.period_cols,
            "row_candidates": [],
            "col_candidates": [],
            "row_degenerate": False,
            "col_degenerate": False,
            "manual": True,
        }
        return periods, args.period_rows, args.period_cols, None

    est = estimate_periods(img, args.dmax_fraction)
    if est.row_degenerate:
        _warn("row periodicity is degenerate (no usable minima); consider --period-rows")
    if est.col_degenerate:
        _warn("column periodicity is degenerate (no usable minima); consider --period-cols")
    periods = est.to_dict()
    periods["manual"] = False
    d_max_r = min(int(args.dmax_fraction * img.height), img.height - 1)
    d_max_c = min(int(args.dmax_fraction * img.width), img.width - 1)
    curves = (row_dmf(img, d_max_r), column_dmf(img, d_max_c))
    return periods, est.row_period, est.col_period, curves


def _dump_dmf_csv(path: str, curves) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["axis", "d", "dmf", "forward_difference"])
        for curve in curves:
            diffs = forward_difference(curve) if curve.d_max >= 2 else []
            for d in range(1, curve.d_max + 1):
                fd = repr(float(diffs[d - 1])) if d < curve.d_max else ""
                writer.writerow([curve.axis, d, repr(curve.value_at(d)), fd])


def cmd_analyze(args) -> int:
    img = _load_image(args.input)
    periods, block_h, block_w, curves = _resolve_periods(img, args)
    if args.csv_dmf:
        if curves is None:
            _warn("--csv-dmf ignored: DMF estimation was skipped (manual periods)")
        else:
            _dump_dmf_csv(args.csv_dmf, curves)
    grid = partition(img, block_h, block_w)
    result = classify_blocks(img, grid, args.threshold, args.epsilon)
    if result.representative is None:
        _warn("no block conforms at this threshold; no representative texel")
    _emit_json({"periods": periods, "analysis": result.to_dict()}, args.json_out)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    img = _load_image(args.input)
    _, block_h, block_w, _ = _resolve_periods(img, args)
    grid = partition(img, block_h, block_w)
    result = classify_blocks(img, grid, args.threshold, args.epsilon)
    if result.representative is None:
        print(
            "error: no block conforms at this threshold; nothing to synthesize from",
            file=sys.stderr,
        )
        return EXIT_NO_REPRESENTATIVE
    texel = extract_texel(img, grid, result.representative)
    if args.texel_out:
        _save_image(args.texel_out, texel)
    out_w = args.width if args.width else img.width
    out_h = args.height if args.height else img.height
    _save_image(args.output, synthesize(texel, out_w, out_h))
    return EXIT_OK


def cmd_detect(args) -> int:
    img = _load_image(args.input)
    _, block_h, block_w, _ = _resolve_periods(img, args)
    grid = partition(img, block_h, block_w)
    result = classify_blocks(img, grid, args.threshold, args.epsilon)
    highlighted = highlight_anomalies(
        img, grid, result.anomalies, args.highlight_value, args.thickness
    )
    _save_image(args.output, highlighted)
    _emit_json(result.to_dict(), args.json_out)
    return EXIT_ANOMALIES if result.anomalies else EXIT_OK


def cmd_generate(args) -> int:
    gt = GroundTruth(
        texel_h=args.texel_h,
        texel_w=args.texel_w,
        reps_r=args.reps_r,
        reps_c=args.reps_c,
        defect_blocks=_parse_defects(args.defects) if args.defects else [],
        noise_amplitude=args.noise_amplitude,
        seed=args.seed,
    )
    texel = random_texel(gt.texel_h, gt.texel_w, gt.seed)
    img = generate(gt, texel)
    out = Path(args.output)
    out.write_bytes(save_pgm(img))
    out.with_suffix(".json").write_text(gt.to_json() + "\n")
    return EXIT_OK


def _add_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threshold", type=float, default=0.10,
                   help="max per-feature relative deviation for a block to conform "
                        "(default 0.10; use 0.02 for clean synthetic textures)")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="denominator guard for relative deviations (default 1e-6)")
    p.add_argument("--dmax-fraction", type=float, default=0.5,
                   help="fraction of each axis to probe for periodicity (default 0.5)")
    p.add_argument("--period-rows", type=int, default=None,
                   help="manual row period; skips DMF estimation (needs --period-cols)")
    p.add_argument("--period-cols", type=int, default=None,
                   help="manual column period; skips DMF estimation (needs --period-rows)")
    p.add_argument("--json-out", default=None,
                   help="write the JSON report to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="texelkit",
        description="Near-regular texture analysis, synthesis, and defect detection "
                    "for grayscale PGM images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="estimate periodicity and classify blocks")
    p.add_argument("input", help="input PGM image")
    _add_analysis_flags(p)
    p.add_argument("--csv-dmf", default=None,
                   help="dump both DMF curves as CSV (axis,d,dmf,forward_difference)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize", help="tile the representative texel into a new image")
    p.add_argument("input", help="input PGM image")
    p.add_argument("output", help="output PGM path")
    _add_analysis_flags(p)
    p.add_argument("--width", type=int, default=None,
                   help="output width (default: input width)")
    p.add_argument("--height", type=int, default=None,
                   help="output height (default: input height)")
    p.add_argument("--texel-out", default=None,
                   help="also write the extracted texel to this PGM path")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("detect", help="flag and outline statistically deviant blocks")
    p.add_argument("input", help="input PGM image")
    p.add_argument("output", help="output PGM path for the highlighted image")
    _add_analysis_flags(p)
    p.add_argument("--highlight-value", type=int, default=255,
                   help="gray level for anomaly outlines (default 255)")
    p.add_argument("--thickness", type=int, default=1,
                   help="outline thickness in pixels (default 1)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("generate", help="write a synthetic test texture plus ground truth")
    p.add_argument("output", help="output PGM path (sidecar JSON goes next to it)")
    p.add_argument("--texel-h", type=int, required=True, help="texel height in pixels")
    p.add_argument("--texel-w", type=int, required=True, help="texel width in pixels")
    p.add_argument("--reps-r", type=int, required=True, help="tile rows")
    p.add_argument("--reps-c", type=int, required=True, help="tile columns")
    p.add_argument("--defects", default=None,
                   help="defect blocks as 'row,col;row,col;...' grid indices")
    p.add_argument("--noise-amplitude", type=int, default=0,
                   help="uniform noise amplitude in gray levels (default 0)")
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
