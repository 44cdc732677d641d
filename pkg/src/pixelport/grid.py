"""Pixel grids and image fields.

An optical image is held as a rectangular grid of pixels, each carrying one
complex coherent amplitude.  A field sampled at the pixel centers is converted
to per-pixel amplitudes by scaling with the square root of the pixel area
(``pitch``), and back.  Pixels are anti-correlated in pairs under point
reflection through the grid center, which is where a downstream receiver's
copy of pixel (i, j) actually lands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GridGeometry",
    "ImageField",
    "decompose",
    "synthesize",
    "partner_index",
    "pixel_center",
    "centered_origin",
]


@dataclass(frozen=True)
class GridGeometry:
    """Rectangular pixel grid.

    Parameters
    ----------
    width, height : int
        Pixel counts along x and y.
    pitch : float
        Side length of one (square) pixel.  The pixel area is ``pitch**2``.
    origin : tuple of float
        Transverse position of the grid corner (the corner of pixel (0, 0)
        nearest to negative x and y).  Pixel centers sit at
        ``origin + (i + 0.5, j + 0.5) * pitch``.
    """

    width: int
    height: int
    pitch: float = 1.0
    origin: tuple[float, float] | None = None

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid needs at least one pixel per axis")
        if not self.pitch > 0:
            raise ValueError("pitch must be positive")
        if self.origin is None:
            object.__setattr__(self, "origin", centered_origin(self.width, self.height, self.pitch))
        else:
            object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape (rows, cols) = (height, width)."""
        return (self.height, self.width)

    @property
    def n_pixels(self) -> int:
        return self.width * self.height


def centered_origin(width: int, height: int, pitch: float) -> tuple[float, float]:
    """Grid-corner position that centers the grid on the optical axis."""
    return (-0.5 * width * pitch, -0.5 * height * pitch)


@dataclass
class ImageField:
    """Per-pixel coherent amplitudes on a grid.

    ``amplitudes[j, i]`` is the full amplitude teleported for pixel (i, j),
    i.e. it already includes the global input amplitude ``global_scale``.
    """

    geometry: GridGeometry
    amplitudes: np.ndarray
    global_scale: complex = 1.0 + 0.0j

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != self.geometry.shape:
            raise ValueError(
                f"amplitude array shape {amps.shape} does not match grid {self.geometry.shape}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        self.amplitudes = amps


def decompose(samples: np.ndarray, geometry: GridGeometry, global_scale: complex = 1.0) -> ImageField:
    """Turn field samples at pixel centers into per-pixel amplitudes.

    The mode value is taken constant over each pixel, so the amplitude of
    pixel j is the sample times the square root of the pixel area:
    ``samples * pitch``, times the overall input amplitude ``global_scale``.
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != geometry.shape:
        raise ValueError(f"sample shape {samples.shape} does not match grid {geometry.shape}")
    return ImageField(geometry, samples * (geometry.pitch * global_scale), global_scale=global_scale)


def synthesize(fieldarr: ImageField) -> np.ndarray:
    """Exact inverse of :func:`decompose`: recover the center samples."""
    g = fieldarr.geometry
    return fieldarr.amplitudes / (g.pitch * fieldarr.global_scale)


def _check_bounds(i: int, j: int, geometry: GridGeometry) -> None:
    if not (0 <= i < geometry.width and 0 <= j < geometry.height):
        raise IndexError(f"pixel ({i}, {j}) outside {geometry.width}x{geometry.height} grid")


def partner_index(i: int, j: int, geometry: GridGeometry) -> tuple[int, int]:
    """Index of the pixel anti-correlated with (i, j).

    Down-converted photon pairs satisfy k1 = -k2 in both transverse
    components, so correlated pixels sit at point reflections through the
    grid center: (i, j) maps to (width-1-i, height-1-j).  The map is an
    involution and (for odd side lengths) fixes the central pixel.
    """
    _check_bounds(i, j, geometry)
    return (geometry.width - 1 - i, geometry.height - 1 - j)


def pixel_center(i: int, j: int, geometry: GridGeometry) -> tuple[float, float]:
    """Transverse position of the center of pixel (i, j)."""
    _check_bounds(i, j, geometry)
    ox, oy = geometry.origin
    return (ox + (i + 0.5) * geometry.pitch, oy + (j + 0.5) * geometry.pitch)


def pixel_centers(geometry: GridGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Center coordinates for every pixel, as (x, y) arrays of shape (height, width)."""
    ox, oy = geometry.origin
    xs = ox + (np.arange(geometry.width) + 0.5) * geometry.pitch
    ys = oy + (np.arange(geometry.height) + 0.5) * geometry.pitch
    return np.meshgrid(xs, ys)
