"""Shared fixtures and independent reference implementations.

The reference functions here deliberately avoid the library's vectorized
code paths (no histogram arrays, no shifted-slice arithmetic) so that
agreement between the two is meaningful.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest

from texelkit import GrayImage, Rect


def make_image(rows) -> GrayImage:
    """Build a GrayImage from a list of row lists."""
    return GrayImage(np.array(rows, dtype=np.uint8))


def random_image(rng: np.random.Generator, h: int, w: int) -> GrayImage:
    return GrayImage(rng.integers(0, 256, size=(h, w), dtype=np.uint8))


def pixel_loop_features(img: GrayImage, region: Rect | None = None) -> dict[str, float]:
    """Per-pixel reference for the six first-order features.

    Moments come from a direct pass over pixel values; energy and entropy
    from a Counter of gray levels. math.fsum keeps the sums exactly rounded.
    """
    pix = img.pixels
    if region is not None:
        pix = pix[region.y0 : region.y0 + region.h, region.x0 : region.x0 + region.w]
    values = [int(v) for v in pix.ravel()]
    n = len(values)
    mean = math.fsum(values) / n
    variance = math.fsum((v - mean) ** 2 for v in values) / n
    skewness = math.fsum((v - mean) ** 3 for v in values) / n
    kurtosis = math.fsum((v - mean) ** 4 for v in values) / n
    counts = Counter(values)
    energy = math.fsum((c / n) ** 2 for c in counts.values())
    entropy = -math.fsum((c / n) * math.log2(c / n) for c in counts.values())
    return {
        "mean": mean,
        "variance": variance,
        "skewness": skewness,
        "kurtosis": kurtosis,
        "energy": energy,
        "entropy": entropy + 0.0,
    }


def naive_column_dmf(img: GrayImage, d_max: int) -> list[float]:
    """Quadruple-loop reference: integer sums, one float division at the end."""
    pix = img.pixels
    h, w = pix.shape
    out = []
    for d in range(1, d_max + 1):
        total = 0
        for i in range(h):
            for j in range(w - d):
                diff = int(pix[i, j + d]) - int(pix[i, j])
                total += diff * diff
        out.append(total / (h * (w - d)))
    return out


def naive_row_dmf(img: GrayImage, d_max: int) -> list[float]:
    pix = img.pixels
    h, w = pix.shape
    out = []
    for d in range(1, d_max + 1):
        total = 0
        for i in range(h - d):
            for j in range(w):
                diff = int(pix[i + d, j]) - int(pix[i, j])
                total += diff * diff
        out.append(total / (w * (h - d)))
    return out


def features_close(actual, expected: dict[str, float], rel=1e-9, abs_=1e-9) -> bool:
    """Per-feature closeness: relative 1e-9, absolute escape hatch at zero."""
    got = actual.to_dict() if hasattr(actual, "to_dict") else actual
    return all(
        math.isclose(got[name], expected[name], rel_tol=rel, abs_tol=abs_)
        for name in expected
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260816)
