"""Persistence images and persistent Laplacian images.

Diagram points (or PLD cells) are moved to birth-persistence coordinates
by M(x, y) = (x, y - x), weighted, smoothed with an isotropic Gaussian,
and integrated over a rectangular pixel grid. Pixel integrals use
separable error-function differences, so they are exact up to the
accuracy of erf itself. Points with infinite death either get their
persistence capped at a finite value or keep a point mass that is dropped
into a single pixel at integration time.
"""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf

_SQRT2 = math.sqrt(2.0)


def gaussian_sup(sigma):
    """Peak value of the normalized 2-D Gaussian."""
    return 1.0 / (2.0 * math.pi * sigma * sigma)


def gaussian_grad(sigma):
    """Largest gradient norm of the normalized 2-D Gaussian, attained at
    radius sigma."""
    return math.exp(-0.5) / (2.0 * math.pi * sigma ** 3)


RAMP_SUP = 1.0


def ramp_grad(y_max):
    return 1.0 / y_max


def weight_linear(y_max):
    """Piecewise linear weight in the persistence coordinate: zero on the
    horizontal axis, one from y_max upward."""
    if not y_max > 0:
        raise ValueError("y_max must be positive")

    def f(point):
        y = point[1]
        return min(max(y / y_max, 0.0), 1.0)

    return f


def weight_constant():
    return lambda point: 1.0


def gaussian(u, sigma):
    """Normalized 2-D Gaussian density centered at u."""
    ux, uy = u
    norm = gaussian_sup(sigma)
    two_s2 = 2.0 * sigma * sigma

    def phi(z):
        dx = z[0] - ux
        dy = z[1] - uy
        return norm * math.exp(-(dx * dx + dy * dy) / two_s2)

    return phi


@dataclass
class ImagingConfig:
    """Grid geometry plus the smoothing and weighting choices.

    grid is (x_min, x_max, y_min, y_max, nx, ny). sigma defaults to 5% of
    the grid's y extent, the ramp's y_max to the grid's y_max, and the cap
    to 1.05 times the largest finite persistence of whatever is imaged.
    """
    grid: tuple
    sigma: float = None
    weight: str = "linear_ramp"
    weight_y_max: float = None
    infinity: str = "cap"
    cap: float = None

    def __post_init__(self):
        x0, x1, y0, y1, nx, ny = self.grid
        if not (x1 > x0 and y1 > y0):
            raise ValueError("grid bounds must have positive extent")
        if not (int(nx) >= 1 and int(ny) >= 1):
            raise ValueError("grid needs at least one pixel per axis")
        self.grid = (float(x0), float(x1), float(y0), float(y1), int(nx), int(ny))
        if self.sigma is not None and not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.weight not in ("linear_ramp", "constant_one"):
            raise ValueError("unknown weight %r" % (self.weight,))
        if self.infinity not in ("cap", "dirac_top_row"):
            raise ValueError("unknown infinity handling %r" % (self.infinity,))
        if self.weight == "linear_ramp" and self.weight_y_max is not None \
                and not self.weight_y_max > 0:
            raise ValueError("y_max must be positive for the linear ramp")

    def resolved_sigma(self):
        if self.sigma is not None:
            return self.sigma
        return 0.05 * (self.grid[3] - self.grid[2])

    def resolved_y_max(self):
        if self.weight_y_max is not None:
            return self.weight_y_max
        return self.grid[3]

    def weight_fn(self):
        if self.weight == "constant_one":
            return weight_constant()
        return weight_linear(self.resolved_y_max())

    def weight_constants(self):
        """(sup f, sup |grad f|) for the configured weight."""
        if self.weight == "constant_one":
            return 1.0, 0.0
        return RAMP_SUP, ramp_grad(self.resolved_y_max())

    def resolve_cap(self, finite_persistences):
        if self.cap is not None:
            return self.cap
        finite = [p for p in finite_persistences if p > 0]
        if finite:
            return 1.05 * max(finite)
        span = self.grid[3] - self.grid[2]
        return span if span > 0 else 1.0


@dataclass
class PixelImage:
    values: np.ndarray             # ny x nx, row 0 is the bottom row
    bounds: tuple                  # (x_min, x_max, y_min, y_max)
    pixel_area: float
    meta: dict = field(default_factory=dict)

    def flatten(self):
        """Row-major vector, bottom row first."""
        return self.values.reshape(-1).copy()

    @property
    def nx(self):
        return self.values.shape[1]

    @property
    def ny(self):
        return self.values.shape[0]


def _prepare(points, cfg):
    """Split raw (birth, death, amplitude) triples into smoothed and point
    mass contributions in transformed coordinates.

    Returns (gauss, dirac): lists of (cx, cy, amp) with amp already
    multiplied by the weight at the center. Sorted for deterministic
    accumulation.
    """
    f = cfg.weight_fn()
    finite_pers = [d - b for b, d, _ in points if not math.isinf(d)]
    cap = cfg.resolve_cap(finite_pers)
    gauss, dirac = [], []
    for b, d, s in points:
        if math.isinf(d):
            center = (b, cap)
            target = dirac if cfg.infinity == "dirac_top_row" else gauss
        else:
            center = (b, d - b)
            target = gauss
        amp = f(center) * s
        target.append((center[0], center[1], amp))
    gauss.sort()
    dirac.sort()
    return gauss, dirac


def _surface_from_points(points, cfg):
    gauss, _ = _prepare(points, cfg)
    sigma = cfg.resolved_sigma()
    norm = gaussian_sup(sigma)
    two_s2 = 2.0 * sigma * sigma

    def rho(z):
        x, y = z
        total = 0.0
        for cx, cy, amp in gauss:
            dx = x - cx
            dy = y - cy
            total += amp * norm * math.exp(-(dx * dx + dy * dy) / two_s2)
        return total

    return rho


def _image_from_points(points, cfg, meta=None):
    x0, x1, y0, y1, nx, ny = cfg.grid
    sigma = cfg.resolved_sigma()
    gauss, dirac = _prepare(points, cfg)
    xe = np.linspace(x0, x1, nx + 1)
    ye = np.linspace(y0, y1, ny + 1)
    values = np.zeros((ny, nx))
    for cx, cy, amp in gauss:
        if amp == 0.0:
            continue
        # separable: the pixel integral of the Gaussian factors into a
        # product of 1-D CDF differences along each axis
        cdf_x = 0.5 * (1.0 + erf((xe - cx) / (sigma * _SQRT2)))
        cdf_y = 0.5 * (1.0 + erf((ye - cy) / (sigma * _SQRT2)))
        values += amp * np.outer(np.diff(cdf_y), np.diff(cdf_x))
    dx = (x1 - x0) / nx
    dy = (y1 - y0) / ny
    for cx, cy, amp in dirac:
        if not (x0 <= cx <= x1 and y0 <= cy <= y1):
            continue
        ix = min(int((cx - x0) / dx), nx - 1)
        iy = min(int((cy - y0) / dy), ny - 1)
        values[iy, ix] += amp
    return PixelImage(values=values, bounds=(x0, x1, y0, y1),
                      pixel_area=dx * dy, meta=dict(meta or {}))


def pl_surface(C, cfg):
    """Weighted Gaussian mixture over the cells of a PLD, as a callable of
    (x, y). Cells feeding the point-mass branch do not appear here; their
    mass only exists at integration time."""
    pts = [(b, d, val) for (b, d), val in sorted(C.cells.items())]
    return _surface_from_points(pts, cfg)


def pl_image(C, cfg):
    pts = [(b, d, val) for (b, d), val in sorted(C.cells.items())]
    meta = {"q": C.q, "signature": C.signature, "kind": "pli"}
    return _image_from_points(pts, cfg, meta)


def persistence_surface(D, cfg):
    pts = [(b, d, 1.0) for b, d in D.expand()]
    return _surface_from_points(pts, cfg)


def persistence_image(D, cfg):
    pts = [(b, d, 1.0) for b, d in D.expand()]
    meta = {"q": D.q, "signature": "unit", "kind": "pi"}
    return _image_from_points(pts, cfg, meta)


def fit_grid(xs, ys, nx=20, ny=20, pad_frac=0.1):
    """Axis-aligned grid wrapping the given transformed points with
    proportional padding; degenerate spans get a fixed margin."""
    xs = list(xs)
    ys = list(ys)
    if not xs:
        return (0.0, 1.0, 0.0, 1.0, int(nx), int(ny))
    x_lo, x_hi = min(xs), max(xs)
    y_hi = max(ys)
    y_lo = min(min(ys), 0.0)
    span = max(x_hi - x_lo, y_hi - y_lo)
    pad = pad_frac * span if span > 0 else 0.5
    y_bottom = y_lo - pad if y_lo < 0 else 0.0
    return (x_lo - pad, x_hi + pad, y_bottom, y_hi + pad, int(nx), int(ny))


def image_to_csv(img, path):
    """ny rows of nx reals, bottom row first, with a JSON sidecar holding
    the geometry and provenance next to it."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in img.values:
            w.writerow([repr(float(v)) for v in row])
    side = {
        "bounds": list(img.bounds),
        "nx": img.nx,
        "ny": img.ny,
        "pixel_area": img.pixel_area,
        "meta": img.meta,
    }
    with open(str(path) + ".json", "w") as fh:
        json.dump(side, fh, indent=2, sort_keys=True)
        fh.write("\n")


def image_from_csv(path):
    with open(path, newline="") as fh:
        rows = [[float(v) for v in line] for line in csv.reader(fh) if line]
    values = np.array(rows)
    try:
        with open(str(path) + ".json") as fh:
            side = json.load(fh)
        bounds = tuple(side["bounds"])
        area = side["pixel_area"]
        meta = side.get("meta", {})
    except OSError:
        bounds = (0.0, float(values.shape[1]), 0.0, float(values.shape[0]))
        area = 1.0
        meta = {}
    return PixelImage(values=values, bounds=bounds, pixel_area=area, meta=meta)


def image_to_pgm(img, path):
    """Min-max normalized 8-bit grayscale, top row first."""
    v = img.values
    lo = float(v.min())
    hi = float(v.max())
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    gray = np.round((v - lo) * scale).astype(int)
    with open(path, "w") as fh:
        fh.write("P2\n%d %d\n255\n" % (img.nx, img.ny))
        for row in gray[::-1]:
            fh.write(" ".join(str(int(g)) for g in row) + "\n")
