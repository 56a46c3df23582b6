"""Deterministic grayscale rasterizer for schematics.

Every schematic is drawn on a tight canvas (bounding box plus padding),
so the image is invariant under translation and under symbol-block
reordering.  Wires become black segments, symbols an outlined box with a
per-kind hatch, flags small triangles.  Output is plain 8-bit grayscale,
with 255 as background, written as non-interlaced PNG.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .asc import AscDocument
from .extract import orientation_transform
from .pinmap import PinMap


class RenderError(ValueError):
    """Raised when a document has nothing to draw."""


@dataclass(frozen=True)
class RenderConfig:
    units_per_pixel: int = 4
    wire_stroke: int = 1
    pad: int = 8

    def __post_init__(self) -> None:
        if self.units_per_pixel <= 0 or self.wire_stroke <= 0 or self.pad <= 0:
            raise ValueError("render config fields must be positive")


@dataclass
class GrayImage:
    pixels: np.ndarray  # uint8, shape (height, width); 255 = background

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


def _glyph_rect(symbol, pinmap: PinMap) -> tuple[int, int, int, int]:
    """Axis-aligned envelope of the glyph box and pins, in schematic units."""
    w, h = pinmap.bbox
    corners = [(0, 0), (w, 0), (0, h), (w, h), *pinmap.pins]
    points = [orientation_transform(p, symbol.orientation) for p in corners]
    xs = [symbol.x + px for px, _ in points]
    ys = [symbol.y + py for _, py in points]
    return min(xs), min(ys), max(xs), max(ys)


def _extent(doc: AscDocument, registry: dict[str, PinMap]) -> tuple[int, int, int, int]:
    xs: list[int] = []
    ys: list[int] = []
    for w in doc.wires:
        xs.extend((w.x1, w.x2))
        ys.extend((w.y1, w.y2))
    for f in doc.flags:
        xs.append(f.x)
        ys.append(f.y)
    for s in doc.symbols:
        pinmap = registry.get(s.kind)
        if pinmap is None:
            xs.append(s.x)
            ys.append(s.y)
            continue
        x0, y0, x1, y1 = _glyph_rect(s, pinmap)
        xs.extend((x0, x1))
        ys.extend((y0, y1))
    if not xs:
        raise RenderError("document has no geometry to render")
    return min(xs), min(ys), max(xs), max(ys)


def _draw_line(canvas: np.ndarray, x1: int, y1: int, x2: int, y2: int, stroke: int) -> None:
    h, w = canvas.shape
    half = stroke // 2

    def plot(x: int, y: int) -> None:
        y0, y1_ = max(0, y - half), min(h, y + half + 1)
        x0, x1_ = max(0, x - half), min(w, x + half + 1)
        canvas[y0:y1_, x0:x1_] = 0

    dx = abs(x2 - x1)
    dy = abs(y2 - y1)
    sx = 1 if x1 < x2 else -1
    sy = 1 if y1 < y2 else -1
    err = dx - dy
    x, y = x1, y1
    while True:
        plot(x, y)
        if x == x2 and y == y2:
            break
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x += sx
        if e2 < dx:
            err += dx
            y += sy


def _hatch_spacing(kind: str) -> int:
    # Stable across runs and platforms (Python's hash() is randomized).
    return 2 + (zlib.crc32(kind.encode("utf-8")) % 4)


def render(doc: AscDocument, cfg: RenderConfig = RenderConfig(),
           registry: dict[str, PinMap] | None = None) -> GrayImage:
    """Rasterize a document; output depends only on (doc, cfg, registry)."""
    from .pinmap import BUILTIN_PINMAPS

    if registry is None:
        registry = BUILTIN_PINMAPS
    min_x, min_y, max_x, max_y = _extent(doc, registry)
    upp = cfg.units_per_pixel
    width = (max_x - min_x) // upp + 1 + 2 * cfg.pad
    height = (max_y - min_y) // upp + 1 + 2 * cfg.pad
    canvas = np.full((height, width), 255, dtype=np.uint8)

    def to_px(x: int, y: int) -> tuple[int, int]:
        return (x - min_x) // upp + cfg.pad, (y - min_y) // upp + cfg.pad

    for w in doc.wires:
        x1, y1 = to_px(w.x1, w.y1)
        x2, y2 = to_px(w.x2, w.y2)
        _draw_line(canvas, x1, y1, x2, y2, cfg.wire_stroke)

    for s in doc.symbols:
        pinmap = registry.get(s.kind)
        if pinmap is None:
            continue
        gx0, gy0, gx1, gy1 = _glyph_rect(s, pinmap)
        px0, py0 = to_px(gx0, gy0)
        px1, py1 = to_px(gx1, gy1)
        _draw_line(canvas, px0, py0, px1, py0, 1)
        _draw_line(canvas, px1, py0, px1, py1, 1)
        _draw_line(canvas, px1, py1, px0, py1, 1)
        _draw_line(canvas, px0, py1, px0, py0, 1)
        spacing = _hatch_spacing(s.kind)
        for offset in range(0, (px1 - px0) + (py1 - py0) + 1, spacing):
            xa = px0 + min(offset, px1 - px0)
            ya = py0 + max(0, offset - (px1 - px0))
            xb = px0 + max(0, offset - (py1 - py0))
            yb = py0 + min(offset, py1 - py0)
            _draw_line(canvas, xa, ya, xb, yb, 1)

    for f in doc.flags:
        fx, fy = to_px(f.x, f.y)
        for row in range(3):
            y = fy + 1 + row
            x0, x1 = fx - row, fx + row + 1
            if 0 <= y < height:
                canvas[y, max(0, x0):min(width, x1)] = 0

    return GrayImage(canvas)


def pad_to_common(a: GrayImage, b: GrayImage) -> tuple[GrayImage, GrayImage]:
    """Center both images on background canvases of the joint maximum size."""
    width = max(a.width, b.width)
    height = max(a.height, b.height)

    def grow(img: GrayImage) -> GrayImage:
        if img.width == width and img.height == height:
            return img
        canvas = np.full((height, width), 255, dtype=np.uint8)
        top = (height - img.height) // 2
        left = (width - img.width) // 2
        canvas[top:top + img.height, left:left + img.width] = img.pixels
        return GrayImage(canvas)

    return grow(a), grow(b)


# Minimal PNG support: 8-bit grayscale, no interlacing, filter 0 rows.

def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF)
    )


def encode_png(img: GrayImage) -> bytes:
    header = struct.pack(">IIBBBBB", img.width, img.height, 8, 0, 0, 0, 0)
    raw = b"".join(b"\x00" + img.pixels[row].tobytes() for row in range(img.height))
    return (
        b"\x89PNG\r\n\x1a\n"
        + _chunk(b"IHDR", header)
        + _chunk(b"IDAT", zlib.compress(raw, 9))
        + _chunk(b"IEND", b"")
    )


def decode_png(data: bytes) -> GrayImage:
    """Inverse of :func:`encode_png` (only the subset this module emits)."""
    if not data.startswith(b"\x89PNG\r\n\x1a\n"):
        raise ValueError("not a PNG file")
    pos = 8
    width = height = 0
    idat = b""
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        tag = data[pos + 4:pos + 8]
        payload = data[pos + 8:pos + 8 + length]
        if tag == b"IHDR":
            width, height, depth, color, *_ = struct.unpack(">IIBBBBB", payload)
            if depth != 8 or color != 0:
                raise ValueError("only 8-bit grayscale PNG is supported")
        elif tag == b"IDAT":
            idat += payload
        pos += 12 + length
    raw = zlib.decompress(idat)
    stride = width + 1
    rows = []
    for r in range(height):
        row = raw[r * stride:(r + 1) * stride]
        if row[0] != 0:
            raise ValueError("only filter-0 scanlines are supported")
        rows.append(np.frombuffer(row[1:], dtype=np.uint8))
    return GrayImage(np.vstack(rows))


def save_png(img: GrayImage, path: str | Path) -> None:
    Path(path).write_bytes(encode_png(img))


def load_png(path: str | Path) -> GrayImage:
    return decode_png(Path(path).read_bytes())
