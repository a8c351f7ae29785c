"""Texel extraction, tiling synthesis, and anomaly highlighting.

Synthesis is pure tiling: the representative texel repeats across the output
and is cropped at the right/bottom borders when the requested size is not a
whole multiple of the texel. No seam blending is applied; an imperfect texel
tiles with visible junctions by design.
"""

from __future__ import annotations

import numpy as np

from .blocks import BlockGrid
from .image import GrayImage, Rect, crop, draw_rect_outline


def extract_texel(img: GrayImage, grid: BlockGrid, index: tuple[int, int]) -> GrayImage:
    """Pixels of grid block `index`, as a standalone image."""
    i, j = index
    return crop(img, grid.rect(i, j))


def synthesize(texel: GrayImage, out_w: int, out_h: int) -> GrayImage:
    """Tile `texel` into an out_w x out_h image.

    Output pixel (row, col) equals texel pixel (row mod texel.height,
    col mod texel.width).
    """
    if out_w < 1 or out_h < 1:
        raise ValueError(f"output size must be positive, got {out_w}x{out_h}")
    reps_r = -(-out_h // texel.height)
    reps_c = -(-out_w // texel.width)
    tiled = np.tile(texel.pixels, (reps_r, reps_c))
    return GrayImage(tiled[:out_h, :out_w])


def highlight_anomalies(
    img: GrayImage,
    grid: BlockGrid,
    anomalies: list[tuple[int, int]],
    value: int = 255,
    thickness: int = 1,
) -> GrayImage:
    """Copy of `img` with each anomalous block's border band set to `value`.

    A block too small for the requested band (2*thickness exceeding either
    block side) is filled solid instead.
    """
    if not 0 <= value <= 255:
        raise ValueError(f"highlight value must be in [0, 255], got {value}")
    if thickness < 1:
        raise ValueError(f"thickness must be >= 1, got {thickness}")
    out = img
    for i, j in anomalies:
        r = grid.rect(i, j)
        if 2 * thickness > min(r.w, r.h):
            r.check_inside(out)
            filled = out.pixels.copy()
            filled[r.y0 : r.y0 + r.h, r.x0 : r.x0 + r.w] = value
            out = GrayImage(filled)
        else:
            out = draw_rect_outline(out, r, value, thickness)
    return out
