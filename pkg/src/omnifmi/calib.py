"""Omnidirectional camera model: pixel <-> ray mapping and calibration I/O.

The lens is modelled by a radial polynomial ``f(rho)`` giving the axial
component of the viewing ray for a pixel at centered radius ``rho``, plus
a small affine correction ``[[c, d], [e, 1]]`` and the image center. The
accepted calibration text is the OCamCalib ``calib_results.txt`` layout;
see ``parse_calibration`` and the commented fixture shipped with the tests
for the exact grammar.

Pixel convention: ``(u*, v*)`` has its origin at the top-left corner,
``u*`` growing rightward (columns) and ``v*`` downward (rows). Centered
coordinates ``(u, v)`` are related by::

    [u*]   [c  d] [u]   [x_c']
    [v*] = [e  1] [v] + [y_c']

The calibration file stores the center as (row, column), which maps to
``(y_c', x_c')`` here.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    AmbiguousProjectionError,
    CalibrationParseError,
    DegenerateRayError,
    OutOfFovError,
)

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class CameraModel:
    """Immutable radial-polynomial omni-camera model."""

    poly_coeffs: tuple[float, ...]
    affine: tuple[float, float, float]  # c, d, e
    center: tuple[float, float]  # (x_c', y_c') in pixels, top-left origin
    image_size: tuple[int, int]  # (width, height)
    inverse_poly: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.poly_coeffs) < 1 or self.poly_coeffs[0] == 0.0:
            raise ValueError("polynomial needs a nonzero constant coefficient")
        c, d, e = self.affine
        if abs(c - d * e) < _NORM_TOL:
            raise ValueError("affine correction matrix is singular")
        w, h = self.image_size
        xc, yc = self.center
        if not (0 < xc < w - 1 and 0 < yc < h - 1):
            raise ValueError("image center must lie strictly inside the image")

    @property
    def affine_matrix(self) -> np.ndarray:
        c, d, e = self.affine
        return np.array([[c, d], [e, 1.0]])

    def f(self, rho):
        """Evaluate the radial polynomial at ``rho`` (scalar or array)."""
        return npoly.polyval(rho, self.poly_coeffs)

    def max_center_radius(self) -> float:
        """Largest centered radius fully inside the image (inscribed)."""
        xc, yc = self.center
        w, h = self.image_size
        return float(min(xc, yc, w - 1 - xc, h - 1 - yc))

    def max_corner_radius(self) -> float:
        """Largest centered radius reaching any image corner."""
        xc, yc = self.center
        w, h = self.image_size
        corners = np.array([[0, 0], [w - 1, 0], [0, h - 1], [w - 1, h - 1]], dtype=float)
        uv = np.linalg.solve(self.affine_matrix, (corners - [xc, yc]).T)
        return float(np.hypot(uv[0], uv[1]).max())


@dataclass(frozen=True)
class Ray:
    """Unit-norm viewing direction in the camera frame."""

    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def unproject_pixels(model: CameraModel, pixels: np.ndarray) -> np.ndarray:
    """Map an (n, 2) array of (u*, v*) pixels to (n, 3) unit rays."""
    pts = np.atleast_2d(np.asarray(pixels, dtype=float))
    xc, yc = model.center
    uv = np.linalg.solve(model.affine_matrix, (pts - [xc, yc]).T)
    rho = np.hypot(uv[0], uv[1])
    z = model.f(rho)
    vec = np.stack([uv[0], uv[1], z], axis=1)
    norm = np.linalg.norm(vec, axis=1)
    if np.any(norm < _NORM_TOL):
        raise DegenerateRayError("pixel unprojects to a near-zero vector")
    return vec / norm[:, None]


def pixel_to_ray(model: CameraModel, pixel) -> Ray:
    """Viewing ray of a single pixel ``(u*, v*)`` (top-left origin)."""
    v = unproject_pixels(model, np.asarray(pixel, dtype=float).reshape(1, 2))[0]
    return Ray(float(v[0]), float(v[1]), float(v[2]))


def _projection_roots(model: CameraModel, zr: float, rho_max: float) -> list[float]:
    """Radii rho in (0, rho_max] with f(rho)/rho == zr, by scan + bisection."""
    samples = 2048
    grid = np.linspace(rho_max / samples, rho_max, samples)
    g = model.f(grid) - zr * grid
    roots = []
    for i in range(samples - 1):
        a, b = g[i], g[i + 1]
        if a == 0.0:
            roots.append(float(grid[i]))
            continue
        if a * b < 0:
            lo, hi = float(grid[i]), float(grid[i + 1])
            flo = float(a)
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = float(model.f(mid) - zr * mid)
                if fm == 0.0 or hi - lo < 1e-10:
                    lo = hi = mid
                    break
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))
    if abs(g[-1]) < 1e-12 and (not roots or abs(roots[-1] - rho_max) > 1e-6):
        roots.append(float(grid[-1]))
    return roots


def ray_to_pixel(model: CameraModel, ray) -> tuple[float, float]:
    """Project a ray back to pixel coordinates (inverse of ``pixel_to_ray``).

    Solves ``f(rho)/rho = z / hypot(x, y)`` for rho by bracketed bisection
    over (0, rho_max], then applies the affine correction.

    Raises ``OutOfFovError`` if no radius reproduces the ray and
    ``AmbiguousProjectionError`` (carrying every candidate radius) if the
    polynomial admits several.
    """
    if isinstance(ray, Ray):
        x, y, z = ray.x, ray.y, ray.z
    else:
        x, y, z = (float(c) for c in np.asarray(ray, dtype=float))
    rxy = np.hypot(x, y)
    nrm = np.hypot(rxy, z)
    if nrm < _NORM_TOL:
        raise DegenerateRayError("cannot project a zero vector")
    xc, yc = model.center
    if rxy / nrm < 1e-12:
        # On-axis ray: valid only if it points the same way as f(0).
        if np.sign(z) != np.sign(model.poly_coeffs[0]):
            raise OutOfFovError("axial ray points away from the lens")
        return (xc, yc)
    rho_max = model.max_corner_radius()
    roots = _projection_roots(model, z / rxy, rho_max)
    if not roots:
        raise OutOfFovError("no radius reproduces this ray direction")
    if len(roots) > 1:
        raise AmbiguousProjectionError(roots)
    rho = roots[0]
    u = rho * x / rxy
    v = rho * y / rxy
    p = model.affine_matrix @ np.array([u, v]) + [xc, yc]
    return (float(p[0]), float(p[1]))


def _tokenized_lines(text: str) -> list[list[str]]:
    lines = []
    for raw in io.StringIO(text):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append(stripped.split())
    return lines


def _coeff_section(tokens: list[str], section: str) -> tuple[float, ...]:
    try:
        count = int(tokens[0])
    except (ValueError, IndexError):
        raise CalibrationParseError(section, "expected leading coefficient count")
    values = tokens[1:]
    if len(values) != count:
        raise CalibrationParseError(
            section, f"declared {count} coefficients, found {len(values)}"
        )
    try:
        return tuple(float(t) for t in values)
    except ValueError:
        raise CalibrationParseError(section, "non-numeric coefficient")


def _looks_like_coeff_section(tokens: list[str]) -> bool:
    if not tokens or not tokens[0].isdigit():
        return False
    return len(tokens) == int(tokens[0]) + 1


def parse_calibration(file_content: str) -> CameraModel:
    """Parse OCamCalib ``calib_results.txt`` text into a ``CameraModel``.

    Expected sections, in order, one logical line each (``#`` comments and
    blank lines are ignored):

    1. polynomial coefficients: ``N a0 a1 ... aN-1``
    2. inverse polynomial coefficients (optional): ``M b0 ... bM-1``
    3. center (row, column): ``yc xc``
    4. affine parameters: ``c d e``
    5. image size (height, width): ``H W``
    """
    lines = _tokenized_lines(file_content)
    if not lines:
        raise CalibrationParseError("polynomial", "empty calibration text")
    idx = 0
    poly = _coeff_section(lines[idx], "polynomial")
    idx += 1

    inverse: tuple[float, ...] = ()
    remaining = len(lines) - idx
    if remaining == 4:
        inverse = _coeff_section(lines[idx], "inverse polynomial")
        idx += 1
        remaining -= 1
    if remaining < 3:
        missing = ("center", "affine", "image size")[3 - remaining]
        raise CalibrationParseError(missing, "section missing")

    def floats(section: str, n: int) -> list[float]:
        nonlocal idx
        tokens = lines[idx]
        if len(tokens) != n:
            raise CalibrationParseError(section, f"expected {n} values, found {len(tokens)}")
        try:
            out = [float(t) for t in tokens]
        except ValueError:
            raise CalibrationParseError(section, "non-numeric value")
        idx += 1
        return out

    row_c, col_c = floats("center", 2)
    c, d, e = floats("affine", 3)
    height, width = floats("image size", 2)
    if idx != len(lines):
        raise CalibrationParseError("image size", "unexpected trailing content")

    try:
        return CameraModel(
            poly_coeffs=poly,
            affine=(c, d, e),
            center=(col_c, row_c),
            image_size=(int(width), int(height)),
            inverse_poly=inverse,
        )
    except ValueError as exc:
        raise CalibrationParseError("model", str(exc))


def serialize_calibration(model: CameraModel) -> str:
    """Render a ``CameraModel`` back into the accepted text layout."""
    out = ["#polynomial coefficients for the DIRECT mapping function", ""]
    out.append(" ".join([str(len(model.poly_coeffs))] + [repr(c) for c in model.poly_coeffs]))
    out.append("")
    if model.inverse_poly:
        out += ["#polynomial coefficients for the inverse mapping function", ""]
        out.append(
            " ".join([str(len(model.inverse_poly))] + [repr(c) for c in model.inverse_poly])
        )
        out.append("")
    xc, yc = model.center
    w, h = model.image_size
    out += ['#center: "row" and "column", starting from 0 (C convention)', ""]
    out.append(f"{yc!r} {xc!r}")
    out += ["", '#affine parameters "c", "d", "e"', ""]
    out.append(" ".join(repr(a) for a in model.affine))
    out += ["", '#image size: "height" and "width"', ""]
    out.append(f"{h} {w}")
    out.append("")
    return "\n".join(out)
