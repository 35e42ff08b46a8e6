"""Procedural renderer for the five rubbing-action classes.

Each class is a fixed composition of two "palm" ellipses plus
class-specific primitives (finger rods, interlaced bars, a thumb lobe,
a fingertip cluster), drawn in a skin-tone color over a procedural
background texture. The composition is anchored so its area centroid
lands on a fixed image point; rotation spins the composition about that
point, the frame index advances a closed 20-step rubbing motion, and
the dual variant mirrors the composition before rotation. Rendering is
a pure function of (spec, seed).
"""

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .actions import ACTIONS, BACK_AND_FORTH, CIRCULAR, NUM_FRAMES, ActionClass
from .errors import ValidationError
from .shadows import ShadowConfig, shadow_factor

ANGLE_GRID: tuple[int, ...] = tuple(range(-90, 91, 5))
DEFAULT_IMAGE_SIZE = 128

NUM_SKIN_TONES = 10
NUM_BACKGROUNDS = 10

# Light-to-dark skin hues applied to the whole foreground composition.
SKIN_TONES = (
    (0.976, 0.871, 0.780),
    (0.957, 0.824, 0.714),
    (0.933, 0.769, 0.643),
    (0.894, 0.710, 0.573),
    (0.831, 0.635, 0.494),
    (0.749, 0.553, 0.412),
    (0.655, 0.467, 0.337),
    (0.553, 0.380, 0.267),
    (0.447, 0.298, 0.204),
    (0.349, 0.227, 0.153),
)

_EDGE_SHADE = 0.58   # darkening of the rim band around each primitive
_EDGE_WIDTH = 0.016  # rim width, canonical units


@dataclass(frozen=True)
class SceneSpec:
    """Complete parametric description of one rendered image."""

    action: ActionClass
    dual: bool = False
    angle_deg: int = 0
    frame: int = 0
    skin_tone: int = 0
    background: int = 0
    shadow: ShadowConfig | None = None
    image_size: int = DEFAULT_IMAGE_SIZE

    def validate(self) -> None:
        if self.action.id not in ACTIONS:
            raise ValidationError("action", f"unknown action {self.action.id!r}")
        if self.dual and not self.action.has_dual_pose:
            raise ValidationError("dual", f"{self.action.id} has no dual pose")
        if self.angle_deg not in ANGLE_GRID:
            raise ValidationError("angle_deg", f"must be a multiple of 5 in [-90, 90], got {self.angle_deg}")
        if not (0 <= self.frame < NUM_FRAMES):
            raise ValidationError("frame", f"must be in [0, {NUM_FRAMES - 1}], got {self.frame}")
        if not (0 <= self.skin_tone < NUM_SKIN_TONES):
            raise ValidationError("skin_tone", f"must be in [0, {NUM_SKIN_TONES - 1}], got {self.skin_tone}")
        if not (0 <= self.background < NUM_BACKGROUNDS):
            raise ValidationError("background", f"must be in [0, {NUM_BACKGROUNDS - 1}], got {self.background}")
        if self.image_size < 32:
            raise ValidationError("image_size", f"must be >= 32, got {self.image_size}")
        if self.shadow is not None:
            self.shadow.validate()


@dataclass
class RenderedSample:
    pixels: np.ndarray  # (H, W, 3) float32 in [0, 1]
    spec: SceneSpec
    label: str
    rng_seed: int


# --------------------------------------------------------------------------
# Primitives. Coordinates are canonical units: image fraction, origin at the
# composition anchor, x right, y down. All compositions are wider than tall.

@dataclass(frozen=True)
class _Ellipse:
    cx: float
    cy: float
    a: float
    b: float
    tilt_deg: float
    shade: float
    moving: bool

    def sdf(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        t = math.radians(self.tilt_deg)
        dx, dy = x - self.cx, y - self.cy
        u = dx * math.cos(t) + dy * math.sin(t)
        v = -dx * math.sin(t) + dy * math.cos(t)
        q = np.sqrt((u / self.a) ** 2 + (v / self.b) ** 2)
        return (q - 1.0) * min(self.a, self.b)


@dataclass(frozen=True)
class _Capsule:
    x0: float
    y0: float
    x1: float
    y1: float
    r: float
    shade: float
    moving: bool

    def sdf(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        ex, ey = self.x1 - self.x0, self.y1 - self.y0
        px, py = x - self.x0, y - self.y0
        ee = ex * ex + ey * ey
        h = np.clip((px * ex + py * ey) / ee, 0.0, 1.0) if ee > 0 else 0.0
        return np.sqrt((px - ex * h) ** 2 + (py - ey * h) ** 2) - self.r


def _dot(cx, cy, r, shade, moving):
    return _Capsule(cx, cy, cx, cy, r, shade, moving)


def _interlaced_bars():
    bars = []
    for k in range(6):
        x = -0.075 + 0.030 * k
        if k % 2 == 0:
            bars.append(_Capsule(x, -0.105, x, 0.045, 0.016, 1.00, False))
        else:
            bars.append(_Capsule(x, -0.045, x, 0.105, 0.016, 0.84, True))
    return tuple(bars)


COMPOSITIONS: dict[str, tuple] = {
    "rub_palm": (
        _Ellipse(-0.060, 0.010, 0.210, 0.115, 18.0, 1.00, False),
        _Ellipse(0.060, -0.010, 0.210, 0.115, -18.0, 0.84, True),
    ),
    "rub_back": (
        _Ellipse(-0.060, 0.020, 0.165, 0.105, -4.0, 0.90, False),
        _Capsule(0.070, -0.060, 0.270, -0.088, 0.021, 0.90, False),
        _Capsule(0.070, -0.021, 0.272, -0.030, 0.021, 0.90, False),
        _Capsule(0.070, 0.021, 0.272, 0.030, 0.021, 0.90, False),
        _Capsule(0.070, 0.060, 0.270, 0.088, 0.021, 0.90, False),
        _Ellipse(-0.020, -0.030, 0.170, 0.100, 14.0, 1.00, True),
    ),
    "rub_fingers_interlaced": (
        _Ellipse(-0.145, 0.000, 0.150, 0.100, -8.0, 1.00, False),
        _Ellipse(0.145, 0.000, 0.150, 0.100, 8.0, 0.84, True),
    ) + _interlaced_bars(),
    "rub_thumb": (
        _Ellipse(0.080, 0.005, 0.160, 0.115, -15.0, 0.84, False),
        _Ellipse(-0.090, -0.005, 0.135, 0.092, 25.0, 1.00, True),
        _Capsule(-0.085, -0.020, -0.265, -0.095, 0.040, 1.00, False),
    ),
    "rub_tips": (
        _Ellipse(-0.080, 0.005, 0.195, 0.125, 8.0, 1.00, False),
        _Ellipse(0.175, -0.040, 0.120, 0.068, -28.0, 0.84, True),
        _dot(-0.020, -0.062, 0.0235, 0.66, True),
        _dot(-0.052, -0.028, 0.0235, 0.66, True),
        _dot(-0.058, 0.018, 0.0235, 0.66, True),
        _dot(-0.038, 0.058, 0.0235, 0.66, True),
        _dot(0.002, 0.082, 0.0235, 0.66, True),
    ),
}

# Rubbing amplitude (canonical units) and, for back-and-forth actions, the axis.
_MOTION: dict[str, tuple[float, tuple[float, float] | None]] = {
    "rub_palm": (0.035, None),
    "rub_back": (0.040, (1.0, 0.0)),
    "rub_fingers_interlaced": (0.030, (0.0, 1.0)),
    "rub_thumb": (0.030, None),
    "rub_tips": (0.032, None),
}


def motion_offset(action: ActionClass, frame: int) -> tuple[float, float]:
    """Displacement of the moving primitives at this frame of the 20-step cycle."""
    amp, axis = _MOTION[action.id]
    t = frame / NUM_FRAMES
    if action.motion_pattern == CIRCULAR:
        ph = 2.0 * math.pi * t
        return (amp * math.cos(ph), amp * math.sin(ph))
    assert action.motion_pattern == BACK_AND_FORTH
    tri = 4.0 * abs(t - math.floor(t + 0.5)) - 1.0  # closed triangle wave in [-1, 1]
    return (amp * tri * axis[0], amp * tri * axis[1])


def _prims_at_frame(action: ActionClass, frame: int):
    ox, oy = motion_offset(action, frame)
    out = []
    for p in COMPOSITIONS[action.id]:
        if not p.moving:
            out.append(p)
        elif isinstance(p, _Ellipse):
            out.append(replace(p, cx=p.cx + ox, cy=p.cy + oy))
        else:
            out.append(replace(p, x0=p.x0 + ox, y0=p.y0 + oy, x1=p.x1 + ox, y1=p.y1 + oy))
    return out


@lru_cache(maxsize=256)
def _canonical_centroid(action_id: str, frame: int) -> tuple[float, float]:
    """Area centroid of the composition's union mask, canonical coords."""
    n = 220
    axis = np.linspace(-0.55, 0.55, n)
    x, y = np.meshgrid(axis, axis)
    mask = np.zeros((n, n), dtype=bool)
    for p in _prims_at_frame(ACTIONS[action_id], frame):
        mask |= p.sdf(x, y) < 0.0
    w = mask.sum()
    return (float((x * mask).sum() / w), float((y * mask).sum() / w))


# --------------------------------------------------------------------------
# Background textures: 10 procedural patterns with seeded phase jitter.

def _pixel_grid(size: int):
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    return xs, ys


def _two_tone(mask, c_on, c_off):
    out = np.empty(mask.shape + (3,))
    for i in range(3):
        out[..., i] = np.where(mask, c_on[i], c_off[i])
    return out


def _blend(t, c0, c1):
    t = np.clip(t, 0.0, 1.0)[..., None]
    return (1.0 - t) * np.asarray(c0) + t * np.asarray(c1)


def _upsample_bilinear(coarse: np.ndarray, size: int) -> np.ndarray:
    n = coarse.shape[0]
    pos = np.linspace(0, n - 1, size)
    i0 = np.clip(pos.astype(int), 0, n - 2)
    f = pos - i0
    rows = coarse[i0] * (1 - f)[:, None] + coarse[i0 + 1] * f[:, None]
    cols = rows[:, i0] * (1 - f)[None, :] + rows[:, i0 + 1] * f[None, :]
    return cols


def _bg_checker(size, rng):
    cell = max(4, size // 8)
    px, py = rng.integers(0, cell, size=2)
    xs, ys = _pixel_grid(size)
    mask = (((xs + px) // cell + (ys + py) // cell) % 2) == 0
    return _two_tone(mask, (0.62, 0.60, 0.58), (0.44, 0.43, 0.42))


def _bg_stripes_h(size, rng):
    period = size / 9.0
    phase = rng.uniform(0, period)
    _, ys = _pixel_grid(size)
    mask = ((ys + phase) % period) < period / 2
    return _two_tone(mask, (0.55, 0.58, 0.63), (0.41, 0.44, 0.48))


def _bg_stripes_v(size, rng):
    period = size / 7.0
    phase = rng.uniform(0, period)
    xs, _ = _pixel_grid(size)
    mask = ((xs + phase) % period) < period / 2
    return _two_tone(mask, (0.61, 0.55, 0.47), (0.47, 0.42, 0.35))


def _bg_stripes_diag(size, rng):
    period = size / 6.0
    phase = rng.uniform(0, period)
    xs, ys = _pixel_grid(size)
    mask = ((xs + ys + phase) % period) < period / 2
    return _two_tone(mask, (0.52, 0.58, 0.52), (0.39, 0.44, 0.39))


def _bg_gradient_linear(size, rng):
    shift = rng.uniform(-0.1, 0.1)
    xs, ys = _pixel_grid(size)
    t = (0.8 * xs + 0.6 * ys) / (1.4 * (size - 1)) + shift
    return _blend(t, (0.33, 0.36, 0.42), (0.68, 0.66, 0.61))


def _bg_gradient_radial(size, rng):
    cx, cy = (size - 1) / 2 + rng.uniform(-size / 6, size / 6, size=2)
    xs, ys = _pixel_grid(size)
    t = np.hypot(xs - cx, ys - cy) / (0.75 * size)
    return _blend(t, (0.66, 0.60, 0.52), (0.36, 0.33, 0.30))


def _bg_noise(size, rng):
    coarse = rng.uniform(0.0, 1.0, size=(9, 9))
    t = _upsample_bilinear(coarse, size)
    return _blend(t, (0.36, 0.42, 0.36), (0.62, 0.66, 0.58))


def _bg_wood(size, rng):
    cx = size * (0.5 + rng.uniform(-0.3, 0.3))
    cy = -size * rng.uniform(0.2, 0.8)
    phase = rng.uniform(0, 2 * math.pi)
    xs, ys = _pixel_grid(size)
    ring = 0.5 + 0.5 * np.sin(np.hypot(xs - cx, ys - cy) / (size / 14.0) * 2 * math.pi + phase)
    base = np.array([0.52, 0.40, 0.28])
    amp = np.array([0.10, 0.07, 0.05])
    return base + ring[..., None] * amp


def _bg_polka(size, rng):
    cell = max(6, size // 7)
    px, py = rng.integers(0, cell, size=2)
    xs, ys = _pixel_grid(size)
    dx = (xs + px) % cell - cell / 2
    dy = (ys + py) % cell - cell / 2
    mask = np.hypot(dx, dy) < 0.28 * cell
    return _two_tone(mask, (0.42, 0.40, 0.36), (0.58, 0.56, 0.52))


def _bg_plaid(size, rng):
    period = size / 8.0
    p1, p2 = rng.uniform(0, 2 * math.pi, size=2)
    xs, ys = _pixel_grid(size)
    v = 0.5 + 0.35 * np.sin(2 * math.pi * xs / period + p1)
    h = 0.5 + 0.35 * np.sin(2 * math.pi * ys / period + p2)
    return _blend((v + h) / 2, (0.40, 0.44, 0.52), (0.62, 0.64, 0.68))


BACKGROUND_BUILDERS = (
    _bg_checker,
    _bg_stripes_h,
    _bg_stripes_v,
    _bg_stripes_diag,
    _bg_gradient_linear,
    _bg_gradient_radial,
    _bg_noise,
    _bg_wood,
    _bg_polka,
    _bg_plaid,
)


# --------------------------------------------------------------------------
# Rendering

def _sample_jitters(rng: np.random.Generator):
    # Fixed draw order; nothing here may depend on spec.angle_deg or dual, so
    # renders of the same seed at different angles share identical jitters.
    jitter_y = rng.uniform(-0.018, 0.018)
    scale = rng.uniform(0.97, 1.03)
    tone_jitter = rng.uniform(0.97, 1.03)
    illum = rng.uniform(0.92, 1.08)
    return jitter_y, scale, tone_jitter, illum


def _foreground_fields(spec: SceneSpec, rng: np.random.Generator):
    """Foreground premultiplied RGB, coverage alpha, and the illum factor."""
    jitter_y, scale, tone_jitter, illum = _sample_jitters(rng)
    size = spec.image_size
    cx = (size - 1) / 2.0
    cy = (size - 1) / 2.0 + jitter_y * size
    gx, gy = _canonical_centroid(spec.action.id, spec.frame)

    xs, ys = _pixel_grid(size)
    theta = math.radians(spec.angle_deg)
    dx = (xs - cx) / (size * scale)
    dy = (ys - cy) / (size * scale)
    # Inverse map: un-rotate about the anchor, then un-mirror about the
    # composition centroid, so the rendered centroid sits at (cx, cy) for
    # every angle and for both pose variants.
    qx = dx * math.cos(theta) + dy * math.sin(theta)
    qy = -dx * math.sin(theta) + dy * math.cos(theta)
    if spec.dual:
        qx = -qx
    px = gx + qx
    py = gy + qy

    tone = np.asarray(SKIN_TONES[spec.skin_tone]) * tone_jitter
    aa = 1.0 / size
    rgb = np.zeros((size, size, 3))
    alpha = np.zeros((size, size))
    for prim in _prims_at_frame(spec.action, spec.frame):
        sdf = prim.sdf(px, py)
        cov = np.clip(-sdf / aa + 0.5, 0.0, 1.0)
        if not cov.any():
            continue
        rim = np.clip((-sdf - _EDGE_WIDTH) / aa + 0.5, 0.0, 1.0)
        shade = prim.shade * (_EDGE_SHADE + (1.0 - _EDGE_SHADE) * rim)
        color = tone[None, None, :] * shade[..., None]
        rgb = rgb * (1.0 - cov[..., None]) + color * cov[..., None]
        alpha = alpha * (1.0 - cov) + cov
    return rgb, alpha, illum


def foreground_alpha(spec: SceneSpec, seed: int) -> np.ndarray:
    """Foreground coverage in [0, 1] for (spec, seed), background skipped."""
    spec.validate()
    rng = np.random.default_rng(np.uint64(seed & (2**64 - 1)))
    _, alpha, _ = _foreground_fields(spec, rng)
    return alpha


def foreground_mask(spec: SceneSpec, seed: int) -> np.ndarray:
    return foreground_alpha(spec, seed) > 0.5


def render_scene(spec: SceneSpec, seed: int) -> RenderedSample:
    """Render one sample; bit-identical output for identical (spec, seed)."""
    spec.validate()
    rng = np.random.default_rng(np.uint64(seed & (2**64 - 1)))
    rgb, alpha, illum = _foreground_fields(spec, rng)
    bg = BACKGROUND_BUILDERS[spec.background](spec.image_size, rng)
    img = bg * (1.0 - alpha[..., None]) + rgb
    img = np.clip(img * illum, 0.0, 1.0).astype(np.float32)
    base = RenderedSample(img, replace(spec, shadow=None), spec.action.id, seed)
    if spec.shadow is None:
        return base
    return apply_shadow(base, spec.shadow)


def apply_shadow(base: RenderedSample, cfg: ShadowConfig) -> RenderedSample:
    """Composite the band shadow onto an unshadowed render."""
    cfg.validate()
    if base.spec.shadow is not None:
        raise ValidationError("shadow", "base sample already has a shadow applied")
    factor = shadow_factor(cfg, base.spec.image_size)
    pixels = (base.pixels.astype(np.float64) * factor[..., None]).astype(np.float32)
    return RenderedSample(pixels, replace(base.spec, shadow=cfg), base.label, base.rng_seed)


def to_uint8(pixels: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(pixels.astype(np.float64) * 255.0), 0, 255).astype(np.uint8)
