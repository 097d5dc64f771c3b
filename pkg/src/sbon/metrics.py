"""Despeckling quality metrics.

All variances use the population (1/RC) normalization. ``snr`` follows the
ratio ``10 log10(NV(test) / MSE(ref, test))`` with NV taken over the test
(despeckled) image, not the reference.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import ndimage

from .errors import DegenerateInputError, StructuralError

__all__ = [
    "MetricsReport",
    "FomParams",
    "REPORT_FIELDS",
    "nmv",
    "nv",
    "nsd",
    "mse",
    "msd",
    "snr",
    "enl_tiled",
    "dr",
    "detect_edges",
    "otsu_threshold",
    "fom",
    "assess",
]

REPORT_FIELDS = ("msd", "nmv", "nsd", "enl", "dr", "fom", "snr", "mse", "nv")
REFERENCE_FIELDS = ("snr", "mse", "nv")


def _grid(x):
    a = getattr(x, "samples", x)
    return np.asarray(a, dtype=np.float64)


def _pair(a, b):
    a, b = _grid(a), _grid(b)
    if a.shape != b.shape:
        raise StructuralError(f"image shapes differ: {a.shape} vs {b.shape}")
    return a, b


def nmv(image):
    """Mean pixel value."""
    return float(np.mean(_grid(image)))


def nv(image):
    """Population variance of the pixel values."""
    return float(np.var(_grid(image)))


def nsd(image):
    return math.sqrt(nv(image))


def mse(reference, test):
    a, b = _pair(reference, test)
    return float(np.mean((a - b) ** 2))


def msd(speckled, despeckled):
    """Mean squared difference between the speckled input and the filter output."""
    return mse(speckled, despeckled)


def snr(reference, test, strict=False):
    """SNR in dB; ``inf`` when the images match (or an error if ``strict``)."""
    err = mse(reference, test)
    if err == 0:
        if strict:
            raise DegenerateInputError("SNR undefined: MSE is zero")
        return math.inf
    var = nv(test)
    if var == 0:
        return -math.inf
    return 10.0 * math.log10(var / err)


def enl_tiled(image, tile=25):
    """Mean of per-block ``mean**2 / var`` over non-overlapping tiles.

    Tiles are anchored at the top-left corner; partial tiles at the right and
    bottom edges are dropped, as are tiles with zero variance.
    """
    g = _grid(image)
    if tile < 1:
        raise ValueError(f"tile must be positive, got {tile}")
    rows, cols = g.shape[0] // tile, g.shape[1] // tile
    if rows == 0 or cols == 0:
        raise DegenerateInputError(f"image {g.shape} smaller than one {tile}x{tile} tile")
    blocks = g[: rows * tile, : cols * tile].reshape(rows, tile, cols, tile).swapaxes(1, 2)
    blocks = blocks.reshape(rows * cols, tile * tile)
    means = blocks.mean(axis=1)
    variances = blocks.var(axis=1)
    keep = variances > 0
    if not keep.any():
        raise DegenerateInputError("every tile has zero variance; ENL undefined")
    return float(np.mean(means[keep] ** 2 / variances[keep]))


def dr(image):
    """Mean standardized deviation from the image mean.

    Analytically zero for any non-constant image; the computed value is
    floating-point residue.
    """
    g = _grid(image)
    sd = nsd(g)
    if sd == 0:
        raise DegenerateInputError("deflection ratio undefined for zero NSD")
    return float(np.sum((g - nmv(g)) / sd) / g.size)


def otsu_threshold(values, bins=256, upper=None):
    """Otsu threshold over a histogram of ``bins`` bins spanning ``[0, upper]``.

    Returns the upper edge of the bin that maximizes between-class variance.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    upper = float(v.max()) if upper is None else float(upper)
    if upper <= 0:
        return 0.0
    hist, edges = np.histogram(v, bins=bins, range=(0.0, upper))
    centers = 0.5 * (edges[:-1] + edges[1:])
    w0 = np.cumsum(hist).astype(np.float64)
    w1 = w0[-1] - w0
    m0 = np.cumsum(hist * centers)
    mt = m0[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = m0 / w0
        mu1 = (mt - m0) / w1
        between = w0 * w1 * (mu0 - mu1) ** 2
    between = np.nan_to_num(between[:-1], nan=-1.0)
    k = int(np.argmax(between))
    return float(edges[k + 1])


def detect_edges(image, threshold=None):
    """Binary edge map from the Sobel gradient magnitude.

    Parameters
    ----------
    image : Image or array_like
    threshold : float, optional
        Fixed magnitude threshold. By default Otsu's method picks one from a
        256-bin histogram over ``[0, max magnitude]``.

    Returns
    -------
    ndarray of uint8
        1 where the magnitude exceeds the threshold.
    """
    g = _grid(image)
    gx = ndimage.sobel(g, axis=1, mode="reflect")
    gy = ndimage.sobel(g, axis=0, mode="reflect")
    mag = np.hypot(gx, gy)
    peak = float(mag.max())
    if peak == 0:
        return np.zeros(g.shape, dtype=np.uint8)
    t = otsu_threshold(mag, 256, peak) if threshold is None else float(threshold)
    return (mag > t).astype(np.uint8)


@dataclass(frozen=True)
class FomParams:
    alpha: float = 1.0 / 9.0
    edge_threshold: float | None = None

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


def fom(detected, ideal, params=FomParams()):
    """Pratt's figure of merit of a detected edge map against an ideal one.

    ``sum_i 1 / (1 + alpha d_i**2) / max(N_detected, N_ideal)``, where ``d_i``
    is the exact Euclidean distance from detected pixel ``i`` to the nearest
    ideal edge pixel. An empty detected map scores 0.
    """
    det, ide = _pair(detected, ideal)
    det = det != 0
    ide = ide != 0
    n_ideal = int(ide.sum())
    if n_ideal == 0:
        raise DegenerateInputError("ideal edge map is empty")
    n_det = int(det.sum())
    if n_det == 0:
        return 0.0
    dist = ndimage.distance_transform_edt(~ide)
    d2 = dist[det] ** 2
    return float(np.sum(1.0 / (1.0 + params.alpha * d2)) / max(n_det, n_ideal))


@dataclass
class MetricsReport:
    """Assessment values for one despeckled image.

    Fields not computable from the supplied images are ``None``.
    """

    msd: float | None = None
    nmv: float | None = None
    nsd: float | None = None
    enl: float | None = None
    dr: float | None = None
    fom: float | None = None
    snr: float | None = None
    mse: float | None = None
    nv: float | None = None

    def as_dict(self, fields=None):
        d = asdict(self)
        return {k: d[k] for k in (fields or REPORT_FIELDS)}


def _or_nan(fn, *args):
    try:
        return fn(*args)
    except DegenerateInputError:
        return math.nan


def assess(test, reference=None, speckled=None, fom_params=FomParams(), enl_tile=25):
    """Compute every metric available for the given images.

    ``reference`` (noise-free) enables SNR, MSE and NV; ``speckled`` enables
    MSD. The FOM compares edges of ``test`` against edges of ``reference``
    when given, else against edges of ``speckled``. Degenerate statistics
    (constant images) are reported as NaN; identical reference and test give
    ``snr = inf``.
    """
    t = _grid(test)
    for other in (reference, speckled):
        if other is not None:
            _pair(t, other)
    report = MetricsReport(
        nmv=nmv(t),
        nsd=nsd(t),
        enl=_or_nan(enl_tiled, t, enl_tile),
        dr=_or_nan(dr, t),
    )
    if speckled is not None:
        report.msd = msd(speckled, t)
    if reference is not None:
        report.mse = mse(reference, t)
        report.snr = snr(reference, t)
        report.nv = nv(t)
    edge_source = reference if reference is not None else speckled
    if edge_source is not None:
        ideal = detect_edges(edge_source, fom_params.edge_threshold)
        detected = detect_edges(t, fom_params.edge_threshold)
        report.fom = _or_nan(fom, detected, ideal, fom_params)
    return report
