"""Pixel-by-pixel continuous-variable teleportation of optical images.

The package splits into the image/grid layer (:mod:`pixelport.grid`), the
down-conversion squeezing profile (:mod:`pixelport.spdc`), the analytic
teleportation channel (:mod:`pixelport.channel`), a brute-force Fock-space
oracle used to verify every closed form (:mod:`pixelport.fock`), and the
file/CLI plumbing (:mod:`pixelport.imagefile`, :mod:`pixelport.config`,
:mod:`pixelport.cli`).
"""

from .channel import (
    FidelityMap,
    TeleportOutcome,
    average_fidelity,
    conditional_amplitude,
    conditional_fidelity,
    feedback_displace,
    sample_bell_outcome,
    teleport_image,
    teleport_pixel,
)
from .grid import GridGeometry, ImageField, decompose, partner_index, pixel_center, synthesize
from .spdc import (
    RingParams,
    SpdcParams,
    SqueezingProfile,
    eta_k,
    eta_quadrature,
    eta_x,
    profile_for_grid,
    ring_from_spdc,
)

__version__ = "0.1.0"

__all__ = [
    "GridGeometry",
    "ImageField",
    "decompose",
    "synthesize",
    "partner_index",
    "pixel_center",
    "SpdcParams",
    "RingParams",
    "SqueezingProfile",
    "eta_k",
    "eta_x",
    "eta_quadrature",
    "ring_from_spdc",
    "profile_for_grid",
    "TeleportOutcome",
    "FidelityMap",
    "conditional_amplitude",
    "feedback_displace",
    "conditional_fidelity",
    "sample_bell_outcome",
    "average_fidelity",
    "teleport_pixel",
    "teleport_image",
    "__version__",
]
