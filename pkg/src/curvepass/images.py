"""Image catalog management and generation of degraded challenge renderings.

The catalog is an ordered list of identically sized RGB images.  At login
time the service shows only degraded variants: contrast compressed around
the mid-gray pivot and brightness raised, which keeps images recognizable
up close but hard to read from a distance.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import DimensionMismatch, DuplicateId, MissingFile, MissingImages

DEGRADED_SUFFIX = "#degraded"

#: Defaults tuned so the degraded grid stays readable at arm's length.
DEFAULT_CONTRAST = 0.4
DEFAULT_BRIGHTNESS = 70.0


@dataclass(frozen=True)
class CatalogImage:
    """One catalog entry: a unique id, a label and an HxWx3 uint8 raster."""

    id: str
    label: str
    pixels: np.ndarray

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3 or px.dtype != np.uint8:
            raise ValueError("pixels must be an HxWx3 uint8 array")
        px = px.copy()
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def size(self) -> tuple[int, int]:
        """(height, width) in pixels."""
        return self.pixels.shape[0], self.pixels.shape[1]

    def png_bytes(self) -> bytes:
        buf = io.BytesIO()
        Image.fromarray(self.pixels).save(buf, format="PNG")
        return buf.getvalue()


@dataclass(frozen=True)
class DegradeParams:
    """Contrast factor in (0, 1] and additive brightness in [0, 255]."""

    contrast: float = DEFAULT_CONTRAST
    brightness: float = DEFAULT_BRIGHTNESS

    def __post_init__(self) -> None:
        if not (0.0 < self.contrast <= 1.0):
            raise ValueError("contrast factor must be in (0, 1]")
        if not (0.0 <= self.brightness <= 255.0):
            raise ValueError("brightness delta must be in [0, 255]")


def degrade(img: CatalogImage, params: DegradeParams = DegradeParams()) -> CatalogImage:
    """Low-contrast, brightened variant of an image.

    Per channel and pixel: ``p' = clamp(a*(p - 128) + 128 + b, 0, 255)``,
    rounded to the nearest integer.  Dimensions are preserved and the id is
    suffixed to mark the variant.
    """
    px = img.pixels.astype(np.float64)
    px = params.contrast * (px - 128.0) + 128.0 + params.brightness
    px = np.clip(np.rint(px), 0, 255).astype(np.uint8)
    return CatalogImage(id=img.id + DEGRADED_SUFFIX, label=img.label, pixels=px)


def load_catalog(manifest: str | Path) -> list[CatalogImage]:
    """Load a catalog from a JSON manifest: ``[{id, label, path}, ...]``.

    Paths are relative to the manifest's directory.  Validates uniform
    dimensions and unique ids; order follows the manifest.
    """
    manifest = Path(manifest)
    if not manifest.is_file():
        raise MissingFile(f"manifest not found: {manifest}")
    entries = json.loads(manifest.read_text())
    if not entries:
        raise MissingImages("manifest lists no images")

    images: list[CatalogImage] = []
    seen: set[str] = set()
    dims: tuple[int, int] | None = None
    for entry in entries:
        image_id = entry["id"]
        if image_id in seen:
            raise DuplicateId(f"duplicate image id: {image_id}")
        seen.add(image_id)
        path = manifest.parent / entry["path"]
        if not path.is_file():
            raise MissingFile(f"image file not found: {path}")
        pixels = np.asarray(Image.open(path).convert("RGB"), dtype=np.uint8)
        img = CatalogImage(id=image_id, label=entry.get("label", image_id), pixels=pixels)
        if dims is None:
            dims = img.size
        elif img.size != dims:
            raise DimensionMismatch(
                f"image {image_id} is {img.size}, expected {dims}"
            )
        images.append(img)
    return images


def save_catalog(images: list[CatalogImage], out_dir: str | Path) -> Path:
    """Write rasters as PNG plus a manifest.json; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for img in images:
        filename = f"{img.id}.png"
        Image.fromarray(img.pixels).save(out / filename)
        entries.append({"id": img.id, "label": img.label, "path": filename})
    manifest = out / "manifest.json"
    manifest.write_text(json.dumps(entries, indent=2) + "\n")
    return manifest


_SHAPES = ("disc", "ring", "square", "diamond", "cross", "stripes", "checker", "wedge")
_PALETTE = (
    (205, 60, 60),
    (60, 140, 205),
    (70, 170, 90),
    (210, 160, 50),
    (150, 80, 190),
    (220, 110, 160),
    (80, 180, 180),
    (120, 120, 70),
)


def _draw_glyph(shape: str, fg: tuple[int, int, int], bg: tuple[int, int, int],
                side: int) -> np.ndarray:
    yy, xx = np.mgrid[0:side, 0:side].astype(np.float64)
    cx = cy = (side - 1) / 2.0
    rad = side * 0.32
    px = np.empty((side, side, 3), dtype=np.uint8)
    px[:, :] = bg

    if shape == "disc":
        mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= rad**2
    elif shape == "ring":
        d2 = (xx - cx) ** 2 + (yy - cy) ** 2
        mask = (d2 <= rad**2) & (d2 >= (rad * 0.55) ** 2)
    elif shape == "square":
        mask = (np.abs(xx - cx) <= rad) & (np.abs(yy - cy) <= rad)
    elif shape == "diamond":
        mask = np.abs(xx - cx) + np.abs(yy - cy) <= rad * 1.3
    elif shape == "cross":
        mask = (np.abs(xx - cx) <= rad * 0.35) | (np.abs(yy - cy) <= rad * 0.35)
    elif shape == "stripes":
        mask = ((xx + yy) // max(2, side // 8)) % 2 == 0
    elif shape == "checker":
        mask = ((xx // max(2, side // 6)) + (yy // max(2, side // 6))) % 2 == 0
    else:  # wedge
        mask = (xx - cx >= 0) & (np.abs(yy - cy) <= (xx - cx) * 0.8)
    px[mask] = fg
    return px


def generate_synthetic_catalog(count: int, seed: int, side: int = 64) -> list[CatalogImage]:
    """Procedurally generated catalog: deterministic per seed, distinct images.

    Each image is a colored glyph; an index strip stamped into the top-left
    row guarantees pairwise distinctness even if two draws repeat a
    shape/color combination.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    images = []
    for i in range(count):
        shape = _SHAPES[int(rng.integers(len(_SHAPES)))]
        fg = _PALETTE[int(rng.integers(len(_PALETTE)))]
        bg_base = _PALETTE[int(rng.integers(len(_PALETTE)))]
        bg = tuple(min(255, ch + 60) for ch in bg_base)
        px = _draw_glyph(shape, fg, bg, side)
        # noise speckle keeps distinct seeds visually and bitwise distinct
        noise = rng.integers(-12, 13, size=px.shape)
        px = np.clip(px.astype(np.int16) + noise, 0, 255).astype(np.uint8)
        for bit in range(16):
            px[0, bit] = (255, 255, 255) if (i >> bit) & 1 else (0, 0, 0)
        images.append(CatalogImage(id=f"img{i:03d}", label=f"{shape} {i}", pixels=px))
    return images
