"""Texture periodicity estimation via distance matching functions.

A distance matching function (DMF) measures how much an image disagrees with
a copy of itself shifted by d pixels along one axis: the mean squared
gray-level difference over all overlapping pixel pairs. Per-row (or
per-column) contributions are superposed into a single curve; displacements
where the curve dips to a local minimum are candidate periods, located by
sign changes of the curve's forward differences.

Curve values at exact multiples of a true period are exactly zero: squared
differences are accumulated as integers and only the final per-pair
normalization is floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .image import GrayImage

ROWS = "rows"
COLUMNS = "columns"

# A local minimum only counts toward period selection when its value is within
# this fraction of the way from the curve's global minimum up to the curve
# mean. Random/noisy textures produce many shallow dips (neighbouring
# displacements fluctuate around the curve's high plateau); true periods dip
# close to the global minimum and survive this cut.
MINIMA_DEPTH_FRACTION = 0.25


@dataclass(frozen=True)
class DmfCurve:
    """DMF values for displacements 1..d_max along one axis.

    values[i] holds displacement i+1; use value_at(d) for 1-based access.
    """

    axis: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.axis not in (ROWS, COLUMNS):
            raise ValueError(f"axis must be {ROWS!r} or {COLUMNS!r}, got {self.axis!r}")
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("curve needs at least one value")
        if arr.min() < 0:
            raise ValueError("DMF values cannot be negative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def d_max(self) -> int:
        return self.values.size

    @property
    def displacements(self) -> np.ndarray:
        return np.arange(1, self.d_max + 1)

    def value_at(self, d: int) -> float:
        if not 1 <= d <= self.d_max:
            raise ValueError(f"displacement {d} outside 1..{self.d_max}")
        return float(self.values[d - 1])


@dataclass(frozen=True)
class PeriodEstimate:
    """Estimated row/column periods with the candidate minima behind them.

    A degenerate axis had no usable minima (constant image, or no dip inside
    the probed range); its period comes from the curve's global minimum and
    should be treated as a guess.
    """

    row_period: int
    col_period: int
    row_candidates: list[int]
    col_candidates: list[int]
    row_degenerate: bool = False
    col_degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "row_period": self.row_period,
            "col_period": self.col_period,
            "row_candidates": list(self.row_candidates),
            "col_candidates": list(self.col_candidates),
            "row_degenerate": self.row_degenerate,
            "col_degenerate": self.col_degenerate,
        }


def column_dmf(img: GrayImage, d_max: int) -> DmfCurve:
    """DMF over column displacements: value_at(d) is the mean squared
    difference between pixels d columns apart, over all rows.
    """
    if not 1 <= d_max <= img.width - 1:
        raise ValueError(f"d_max must be in 1..{img.width - 1}, got {d_max}")
    pix = img.pixels.astype(np.int64)
    h, w = pix.shape
    values = np.empty(d_max, dtype=np.float64)
    for d in range(1, d_max + 1):
        diff = pix[:, d:] - pix[:, : w - d]
        values[d - 1] = np.sum(diff * diff) / (h * (w - d))
    return DmfCurve(COLUMNS, values)


def row_dmf(img: GrayImage, d_max: int) -> DmfCurve:
    """DMF over row displacements: value_at(d) compares pixels d rows apart."""
    if not 1 <= d_max <= img.height - 1:
        raise ValueError(f"d_max must be in 1..{img.height - 1}, got {d_max}")
    pix = img.pixels.astype(np.int64)
    h, w = pix.shape
    values = np.empty(d_max, dtype=np.float64)
    for d in range(1, d_max + 1):
        diff = pix[d:, :] - pix[: h - d, :]
        values[d - 1] = np.sum(diff * diff) / (w * (h - d))
    return DmfCurve(ROWS, values)


def forward_difference(curve: DmfCurve) -> np.ndarray:
    """Forward differences value_at(d+1) - value_at(d), for d = 1..d_max-1."""
    if curve.d_max < 2:
        raise ValueError("curve needs at least 2 values for forward differences")
    return np.diff(curve.values)


def find_minima(curve: DmfCurve) -> list[int]:
    """All strict local minima of the curve, ascending.

    A minimum is a displacement where the forward difference turns from
    negative to positive; an exact plateau at the trough is reported at the
    plateau's first displacement. Endpoints (d=1 and d=d_max) never qualify.
    """
    if curve.d_max < 3:
        raise ValueError("curve needs at least 3 values to locate minima")
    minima = []
    pending = None  # first displacement of the current candidate trough
    diffs = np.diff(curve.values)
    for i, dv in enumerate(diffs):  # dv = value(d+1) - value(d) with d = i+1
        if dv < 0:
            pending = i + 2
        elif dv > 0 and pending is not None:
            minima.append(pending)
            pending = None
    return minima


def _mode_smallest(candidates: list[int]) -> int:
    counts = Counter(candidates)
    top = max(counts.values())
    return min(v for v, c in counts.items() if c == top)


def _select_period(curve: DmfCurve) -> tuple[int, list[int], bool]:
    """Period, the minima actually used, and whether the fallback fired."""
    minima = find_minima(curve) if curve.d_max >= 3 else []
    if not minima:
        return int(np.argmin(curve.values)) + 1, [], True
    gmin = float(curve.values.min())
    tau = gmin + MINIMA_DEPTH_FRACTION * (float(curve.values.mean()) - gmin)
    significant = [d for d in minima if curve.values[d - 1] <= tau]
    used = significant if significant else minima
    spacings = [b - a for a, b in zip(used, used[1:])]
    return _mode_smallest([used[0]] + spacings), used, False


def estimate_period(curve: DmfCurve) -> int:
    """Most plausible period of one curve.

    Selection: take the significant local minima (see MINIMA_DEPTH_FRACTION),
    pool the first minimum's displacement with the spacings between
    consecutive minima, and return the pool's mode, ties broken toward the
    smallest value. A curve without minima falls back to the displacement of
    its global minimum.
    """
    period, _, _ = _select_period(curve)
    return period


def estimate_periods(img: GrayImage, d_max_fraction: float = 0.5) -> PeriodEstimate:
    """Estimate row and column periods of an image independently.

    Each axis is probed up to floor(d_max_fraction * dimension) displacements
    (capped at dimension - 1). A period longer than half the axis cannot be
    confirmed by two full repetitions, hence the 0.5 default.
    """
    if not 0 < d_max_fraction <= 1:
        raise ValueError(f"d_max_fraction must be in (0, 1], got {d_max_fraction}")
    d_max_r = min(int(d_max_fraction * img.height), img.height - 1)
    d_max_c = min(int(d_max_fraction * img.width), img.width - 1)
    if d_max_r < 3 or d_max_c < 3:
        raise ValueError(
            f"image {img.width}x{img.height} too small for fraction {d_max_fraction}: "
            "need at least 3 displacements per axis"
        )
    row_period, row_used, row_degen = _select_period(row_dmf(img, d_max_r))
    col_period, col_used, col_degen = _select_period(column_dmf(img, d_max_c))
    return PeriodEstimate(
        row_period=row_period,
        col_period=col_period,
        row_candidates=row_used,
        col_candidates=col_used,
        row_degenerate=row_degen,
        col_degenerate=col_degen,
    )
