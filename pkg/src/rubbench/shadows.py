"""Analytic cast-shadow model: a translucent pole projected as a band.

The occluder is approximated by a constant-width band across the image
plane. Band width grows with ``width_level``, band darkness with
``alpha`` (opacity of the pole), and the band's orientation/offset are
fixed functions of ``rotation_id``/``translation_id``. Rotation 1 lays
the band horizontally along the foreground's long axis, rotation 2
stands it vertically so it crosses only the composition's short
dimension. Translation 1 runs the band through the image center;
translation 2 parallel-shifts it along its own normal, a short hop for
the horizontal band and most of a half-frame for the vertical one.
With every composition wider than tall and densest at its centroid,
both id-1 settings cover strictly more foreground than their id-2
counterparts.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

# Max fraction of luminance removed inside the band at alpha = 1.
DARKENING = 0.9

WIDTH_LEVELS = (1, 2, 3)
TRANSLATION_IDS = (1, 2)
ROTATION_IDS = (1, 2)

_WIDTH_FRACTION = {1: 0.10, 2: 0.17, 3: 0.24}  # band width / image size
_ROTATION_DEG = {1: 0.0, 2: 90.0}              # band direction in the image plane
# Shift along the band normal / image size, keyed by (translation_id, rotation_id).
_TRANSLATION_FRACTION = {(1, 1): 0.0, (1, 2): 0.0, (2, 1): 0.12, (2, 2): 0.32}
_EDGE_SOFTNESS_PX = 1.5


@dataclass(frozen=True)
class ShadowConfig:
    width_level: int
    alpha: float
    translation_id: int
    rotation_id: int

    def validate(self) -> None:
        if self.width_level not in _WIDTH_FRACTION:
            raise ValidationError("width_level", f"must be one of {WIDTH_LEVELS}, got {self.width_level}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValidationError("alpha", f"must be in (0, 1], got {self.alpha}")
        if self.translation_id not in TRANSLATION_IDS:
            raise ValidationError("translation_id", f"must be one of {TRANSLATION_IDS}, got {self.translation_id}")
        if self.rotation_id not in _ROTATION_DEG:
            raise ValidationError("rotation_id", f"must be one of {ROTATION_IDS}, got {self.rotation_id}")

    def key(self) -> tuple:
        return (self.width_level, self.alpha, self.translation_id, self.rotation_id)


def band_half_width(cfg: ShadowConfig, image_size: int) -> float:
    return 0.5 * _WIDTH_FRACTION[cfg.width_level] * image_size


def _band_distance(cfg: ShadowConfig, image_size: int) -> np.ndarray:
    """Unsigned pixel distance of every pixel to the band's axis line."""
    c = (image_size - 1) / 2.0
    beta = math.radians(_ROTATION_DEG[cfg.rotation_id])
    # Unit normal to the band direction (image coords, y down).
    nx, ny = -math.sin(beta), math.cos(beta)
    off = _TRANSLATION_FRACTION[(cfg.translation_id, cfg.rotation_id)] * image_size
    ax, ay = c - off * nx, c - off * ny
    ys, xs = np.mgrid[0:image_size, 0:image_size].astype(np.float64)
    return np.abs(nx * (xs - ax) + ny * (ys - ay))


def shadow_mask(cfg: ShadowConfig, image_size: int) -> np.ndarray:
    """Boolean band membership (hard edge); used for area/coverage accounting."""
    cfg.validate()
    return _band_distance(cfg, image_size) < band_half_width(cfg, image_size)


def shadow_coverage(cfg: ShadowConfig, image_size: int) -> np.ndarray:
    """Band coverage in [0, 1] with a soft edge of ~1.5 px."""
    cfg.validate()
    dist = _band_distance(cfg, image_size)
    t = (band_half_width(cfg, image_size) - dist) / _EDGE_SOFTNESS_PX + 0.5
    return np.clip(t, 0.0, 1.0)


def shadow_factor(cfg: ShadowConfig, image_size: int) -> np.ndarray:
    """Per-pixel multiplicative luminance factor, 1 outside the band."""
    return 1.0 - cfg.alpha * DARKENING * shadow_coverage(cfg, image_size)
