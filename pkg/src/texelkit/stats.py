"""Gray-level histograms and first-order statistical features.

The six features are computed from the gray-level probability distribution
p_k = counts[k] / n alone, ignoring pixel arrangement:

    mean      =  sum k * p_k
    variance  =  sum (k - mean)^2 * p_k
    skewness  =  sum (k - mean)^3 * p_k     (raw third central moment)
    kurtosis  =  sum (k - mean)^4 * p_k     (raw fourth central moment)
    energy    =  sum p_k^2
    entropy   = -sum p_k * log2(p_k)        (bits; 0*log2(0) taken as 0)

Skewness and kurtosis are deliberately not standardized by powers of the
standard deviation; downstream conformance checks compare them as-is.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .image import GrayImage, Rect

GRAY_LEVELS = 256

FEATURE_NAMES = ("mean", "variance", "skewness", "kurtosis", "energy", "entropy")

_LEVELS = np.arange(GRAY_LEVELS, dtype=np.float64)


@dataclass(frozen=True)
class Histogram:
    """Gray-level counts over one region; 256 bins."""

    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.counts)
        if arr.shape != (GRAY_LEVELS,):
            raise ValueError(f"histogram needs {GRAY_LEVELS} bins, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer) or arr.min() < 0:
            raise ValueError("histogram counts must be non-negative integers")
        arr = arr.astype(np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @property
    def n(self) -> int:
        """Total pixel count."""
        return int(self.counts.sum())


@dataclass(frozen=True)
class FeatureVector:
    """The six first-order statistics of one region."""

    mean: float
    variance: float
    skewness: float
    kurtosis: float
    energy: float
    entropy: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.mean, self.variance, self.skewness, self.kurtosis,
                self.energy, self.entropy)

    def to_dict(self) -> dict[str, float]:
        return dict(zip(FEATURE_NAMES, self.as_tuple()))


def histogram(img: GrayImage, region: Rect | None = None) -> Histogram:
    """Histogram of the pixels inside `region` (whole image when omitted)."""
    if region is None:
        block = img.pixels
    else:
        region.check_inside(img)
        block = img.pixels[region.y0 : region.y0 + region.h,
                           region.x0 : region.x0 + region.w]
    return Histogram(np.bincount(block.ravel(), minlength=GRAY_LEVELS))


def features(h: Histogram) -> FeatureVector:
    """Feature vector of a histogram; requires at least one counted pixel."""
    n = h.n
    if n == 0:
        raise ValueError("cannot compute features of an empty histogram")
    p = h.counts / n
    mean = float(_LEVELS @ p)
    centered = _LEVELS - mean
    c2 = centered * centered
    variance = float(c2 @ p)
    skewness = float((c2 * centered) @ p)
    kurtosis = float((c2 * c2) @ p)
    energy = float(p @ p)
    nonzero = p[p > 0]
    # +0.0 normalizes the -0.0 produced by single-level regions
    entropy = float(-(nonzero @ np.log2(nonzero)) + 0.0)
    return FeatureVector(mean, variance, skewness, kurtosis, energy, entropy)


def features_of_region(img: GrayImage, region: Rect | None = None) -> FeatureVector:
    """features(histogram(img, region)); whole image when `region` is omitted."""
    return features(histogram(img, region))
