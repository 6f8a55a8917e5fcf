"""Bilinear image sampling helpers shared by unwrapping, warping and rendering."""

from __future__ import annotations

import numpy as np
from scipy import ndimage


def sample_bilinear(image: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Sample ``image`` at subpixel positions (``u`` columns, ``v`` rows).

    Out-of-bounds samples return 0. ``u``/``v`` may have any common shape;
    the result has that shape.
    """
    coords = np.stack([np.asarray(v, dtype=float), np.asarray(u, dtype=float)])
    return ndimage.map_coordinates(image, coords, order=1, mode="constant", cval=0.0)


def sample_bilinear_periodic_x(image: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Bilinear sampling with the column axis treated as periodic.

    Rows are clamped to the image edge. Used for equirectangular textures
    where the horizontal axis is longitude.
    """
    h, w = image.shape
    u = np.mod(np.asarray(u, dtype=float), w)
    v = np.clip(np.asarray(v, dtype=float), 0.0, h - 1.0)

    u0 = np.floor(u).astype(np.intp)
    v0 = np.floor(v).astype(np.intp)
    fu = u - u0
    fv = v - v0
    u1 = (u0 + 1) % w
    v1 = np.minimum(v0 + 1, h - 1)

    top = image[v0, u0] * (1.0 - fu) + image[v0, u1] * fu
    bot = image[v1, u0] * (1.0 - fu) + image[v1, u1] * fu
    return top * (1.0 - fv) + bot * fv
