"""Command-line front end: ``sbon speckle|despeckle|metrics|pipeline-dump``.

Exit codes: 0 success, 1 data or processing error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .errors import SbonError
from .image import Image, clamp_to_depth, read_image, write_pgm, write_raw
from .metrics import REFERENCE_FIELDS, REPORT_FIELDS, assess
from .pipeline import DespeckleConfig, trace
from .speckle import SpeckleParams, add_speckle

METHOD_NAMES = {"sbon": "sbon", "visu-hard": "visu_hard", "visu-soft": "visu_soft"}
PROJECTION_NAMES = {"dual-order": "dual_order", "identity": "identity"}


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _bits(text):
    value = _positive_int(text)
    if value > 16:
        raise argparse.ArgumentTypeError(f"must be in [1, 16], got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def atomic_write(path, data):
    """Write bytes to ``path`` through a temporary file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load(path):
    with open(path, "rb") as fh:
        return read_image(fh.read())


def _encode(image, raw=False):
    if raw:
        return write_raw(image)
    return write_pgm(clamp_to_depth(image))


def _add_despeckle_flags(p):
    p.add_argument("--method", choices=sorted(METHOD_NAMES), default="sbon")
    p.add_argument("--levels", type=_positive_int, default=1)
    p.add_argument("--bits", type=_bits, default=8)
    p.add_argument("--projection", choices=sorted(PROJECTION_NAMES), default="dual-order")


def _config(args):
    return DespeckleConfig(
        method=METHOD_NAMES[args.method],
        levels=args.levels,
        bits=args.bits,
        projection=PROJECTION_NAMES[args.projection],
    )


def cmd_speckle(args):
    image = _load(args.inp)
    out = add_speckle(image, SpeckleParams(args.looks, args.seed))
    atomic_write(args.out, _encode(out, args.raw))


def cmd_despeckle(args):
    image = _load(args.inp)
    out = trace(image, _config(args)).output
    atomic_write(args.out, _encode(out, args.raw))


def _fmt(value):
    if value is None:
        return ""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def cmd_metrics(args):
    if args.ref is None and args.speckled is None:
        raise _Usage("metrics needs --ref and/or --speckled")
    test = _load(args.test)
    ref = _load(args.ref) if args.ref else None
    speckled = _load(args.speckled) if args.speckled else None
    report = assess(test, reference=ref, speckled=speckled)
    fields = [
        f for f in REPORT_FIELDS
        if not (ref is None and f in REFERENCE_FIELDS) and not (speckled is None and f == "msd")
    ]
    values = report.as_dict(fields)
    if args.format == "json":
        # JSON has no inf/nan literals
        clean = {k: (v if v is None or math.isfinite(v) else None) for k, v in values.items()}
        sys.stdout.write(json.dumps(clean) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        writer.writerow([_fmt(values[f]) for f in fields])
        sys.stdout.write(buf.getvalue())


def _normalized(grid, declared_max=255):
    """Affine map of a real grid onto [0, declared_max]; returns image and (offset, scale)."""
    lo, hi = float(grid.min()), float(grid.max())
    scale = (hi - lo) / declared_max if hi > lo else 1.0
    return Image((grid - lo) / scale, declared_max), (lo, scale)


def _plane_image(bits, shape):
    return Image(bits.reshape(shape).astype(np.float64) * 255, 255)


def cmd_pipeline_dump(args):
    image = _load(args.inp)
    config = _config(args)
    result = trace(image, config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    sidecar = [
        "# file offset scale  (coefficient = offset + scale * pixel)",
    ]

    def dump_coeffs(name, grid):
        img, (lo, scale) = _normalized(grid)
        atomic_write(outdir / f"{name}.pgm", write_pgm(img))
        sidecar.append(f"{name}.pgm {lo!r} {scale!r}")

    dec = result.decomposition
    dump_coeffs(f"L{dec.levels}_LL_coeffs", dec.ll)
    int_max = 255 if config.bits <= 8 else 65535
    for sb in result.subbands:
        dump_coeffs(f"{sb.key}_coeffs", sb.coeffs)
        dump_coeffs(f"{sb.key}_restored", sb.restored)
        if sb.int_grid is not None:
            atomic_write(outdir / f"{sb.key}_int.pgm", write_pgm(Image(sb.int_grid, int_max)))
            atomic_write(outdir / f"{sb.key}_int_projected.pgm", write_pgm(Image(sb.int_out, int_max)))
            for k in range(sb.planes_in.bits):
                atomic_write(
                    outdir / f"{sb.key}_plane{k}.pgm",
                    write_pgm(_plane_image(sb.planes_in.planes[k], sb.planes_in.shape)),
                )
                atomic_write(
                    outdir / f"{sb.key}_plane{k}_projected.pgm",
                    write_pgm(_plane_image(sb.planes_out.planes[k], sb.planes_out.shape)),
                )
            q = sb.quant
            sidecar.append(f"# {sb.key} quantization c_min={q.c_min!r} c_max={q.c_max!r} bits={q.bits}")
        if sb.shrink is not None:
            s = sb.shrink
            sidecar.append(f"# {sb.key} threshold delta_mad={s.delta_mad!r} lambda={s.lam!r} n={s.n_pixels}")
    atomic_write(outdir / "normalization.txt", ("\n".join(sidecar) + "\n").encode("ascii"))
    atomic_write(outdir / "despeckled.pgm", _encode(result.output))


class _Usage(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="sbon", description="Wavelet-domain bit-plane SAR despeckling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("speckle", help="multiply an image by Gamma speckle")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--looks", type=_positive_int, default=1)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--raw", action="store_true", help="write a plain-text float grid instead of PGM")
    p.set_defaults(func=cmd_speckle)

    p = sub.add_parser("despeckle", help="despeckle an image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    _add_despeckle_flags(p)
    p.add_argument("--raw", action="store_true", help="write a plain-text float grid instead of PGM")
    p.set_defaults(func=cmd_despeckle)

    p = sub.add_parser("metrics", help="print quality metrics as CSV or JSON")
    p.add_argument("--test", required=True)
    p.add_argument("--ref")
    p.add_argument("--speckled")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("pipeline-dump", help="write every pipeline intermediate to a directory")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--outdir", required=True)
    _add_despeckle_flags(p)
    p.set_defaults(func=cmd_pipeline_dump)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except (SbonError, OSError) as exc:
        print(f"sbon {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
