"""CSV tables and raster heatmaps."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal, Sequence

import numpy as np

from .maps import FieldMap

Quantity = Literal["intensity", "phase", "real", "imag"]


def format_float(value) -> str:
    """17 significant digits: parses back to the identical double."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(rows: Iterable[Sequence], schema: Sequence[str], path: str | Path) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(schema)
            for row in rows:
                if len(row) != len(schema):
                    raise ValueError(f"row has {len(row)} fields, schema has {len(schema)}")
                writer.writerow([format_float(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Header and float matrix of a numeric CSV written by :func:`write_csv`."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = [[float(v) for v in row] for row in reader]
    return header, np.array(data, dtype=float).reshape(len(data), len(header))


def field_map_rows(fmap: FieldMap):
    X, Y = fmap.grid.mesh()
    return zip(X.ravel(), Y.ravel(), fmap.values.real.ravel(), fmap.values.imag.ravel())


FIELD_MAP_SCHEMA = ("x_over_w", "y_over_w", "re", "im")


def write_field_map_csv(fmap: FieldMap, path: str | Path) -> None:
    write_csv(field_map_rows(fmap), FIELD_MAP_SCHEMA, path)


@dataclass(frozen=True)
class HeatmapStyle:
    colormap: Literal["grayscale", "diverging"] = "grayscale"
    normalization: Literal["linear", "symmetric"] = "linear"
    format: Literal["pgm", "ppm", "png"] = "pgm"

    def __post_init__(self) -> None:
        if self.colormap not in ("grayscale", "diverging"):
            raise ValueError(f"unknown colormap {self.colormap!r}")
        if self.normalization not in ("linear", "symmetric"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.format not in ("pgm", "ppm", "png"):
            raise ValueError(f"unknown raster format {self.format!r}")
        if self.colormap == "diverging" and self.normalization != "symmetric":
            raise ValueError("diverging colormap requires symmetric normalization")
        if self.format == "pgm" and self.colormap != "grayscale":
            raise ValueError("PGM output is grayscale only")


GRAY_INTENSITY = HeatmapStyle()
GRAY_PHASE = HeatmapStyle()
SIGNED = HeatmapStyle("diverging", "symmetric", "ppm")


def _scalar_field(fmap: FieldMap, quantity: Quantity) -> np.ndarray:
    if quantity == "intensity":
        return fmap.intensity
    if quantity == "phase":
        return fmap.phase
    if quantity == "real":
        return fmap.values.real
    if quantity == "imag":
        return fmap.values.imag
    raise ValueError(f"unknown quantity {quantity!r}")


def normalized(data: np.ndarray, quantity: Quantity, style: HeatmapStyle) -> np.ndarray:
    """Map samples onto [0, 1]; 0.5 is zero for symmetric normalization."""
    if quantity == "phase":
        # [-pi, pi) -> [0, 1); -pi and +pi land on the same level.
        return np.mod(data + np.pi, 2 * np.pi) / (2 * np.pi)
    if style.normalization == "symmetric":
        peak = float(np.max(np.abs(data)))
        if peak == 0.0:
            warnings.warn("map has zero dynamic range; rendering uniform mid-gray", stacklevel=3)
            return np.full(data.shape, 0.5)
        return 0.5 + 0.5 * data / peak
    lo, hi = float(np.min(data)), float(np.max(data))
    if hi == lo:
        warnings.warn("map has zero dynamic range; rendering uniform mid-gray", stacklevel=3)
        return np.full(data.shape, 0.5)
    if quantity == "intensity":
        # Intensity is scaled to the map maximum with zero kept black.
        return data / hi
    return (data - lo) / (hi - lo)


def _to_bytes(level: np.ndarray) -> np.ndarray:
    return np.clip(np.floor(level * 256), 0, 255).astype(np.uint8)


def _diverging_rgb(level: np.ndarray) -> np.ndarray:
    """Blue (negative) - white (zero) - red (positive)."""
    t = 2 * level - 1
    rgb = np.empty(level.shape + (3,))
    neg = t < 0
    rgb[..., 0] = np.where(neg, 1 + t, 1.0)
    rgb[..., 1] = 1 - np.abs(t)
    rgb[..., 2] = np.where(neg, 1.0, 1 - t)
    return rgb


def raster(fmap: FieldMap, style: HeatmapStyle, quantity: Quantity) -> np.ndarray:
    """Image array with the top row at +y: (ny, nx) uint8 gray or (ny, nx, 3) RGB."""
    level = normalized(_scalar_field(fmap, quantity), quantity, style)
    if style.colormap == "diverging":
        img = _to_bytes(_diverging_rgb(level))
    else:
        img = _to_bytes(level)
    return np.ascontiguousarray(img[::-1])


def netpbm_bytes(image: np.ndarray) -> bytes:
    if image.ndim == 2:
        magic, (h, w) = b"P5", image.shape
    elif image.ndim == 3 and image.shape[2] == 3:
        magic, (h, w) = b"P6", image.shape[:2]
    else:
        raise ValueError("image must be (h, w) gray or (h, w, 3) RGB")
    header = magic + b"\n" + f"{w} {h}\n255\n".encode("ascii")
    return header + image.astype(np.uint8).tobytes()


def render_heatmap(fmap: FieldMap, style: HeatmapStyle, path: str | Path, quantity: Quantity = "intensity") -> Path:
    """Write one pixel per grid sample.

    PGM/PPM are binary Netpbm; PNG goes through matplotlib without axes.
    """
    path = Path(path)
    image = raster(fmap, style, quantity)
    if style.format == "png":
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.image as mpimg

        mpimg.imsave(path, image if image.ndim == 3 else np.stack([image] * 3, axis=-1), format="png")
        return path
    if style.format == "pgm" and image.ndim != 2:
        raise ValueError("PGM output needs a grayscale style")
    if style.format == "ppm" and image.ndim == 2:
        image = np.stack([image] * 3, axis=-1)
    path.write_bytes(netpbm_bytes(image))
    return path


def read_netpbm(path: str | Path) -> np.ndarray:
    """Parse a binary P5/P6 file written by :func:`render_heatmap`."""
    data = Path(path).read_bytes()
    magic, dims, maxval, rest = data.split(b"\n", 3)
    w, h = (int(v) for v in dims.split())
    if int(maxval) != 255:
        raise ValueError("only 8-bit Netpbm files are supported")
    pixels = np.frombuffer(rest, dtype=np.uint8)
    if magic == b"P5":
        return pixels.reshape(h, w)
    if magic == b"P6":
        return pixels.reshape(h, w, 3)
    raise ValueError(f"unsupported Netpbm magic {magic!r}")
