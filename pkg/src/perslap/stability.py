"""Numerical certification of the smoothing stability bounds.

Each check evaluates both sides of one inequality on concrete inputs and
reports whether the left side stays under the right side. The randomized
suite perturbs diagram or cell coordinates while holding signature values
fixed, which is the regime where every constant in the bounds is
unambiguous; the end-to-end check perturbs a filtration instead and takes
the value sup over both sides of the comparison.
"""

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .filtration import sublevel_filtration
from .complex import build_complex
from .imaging import (ImagingConfig, gaussian_sup, gaussian_grad, fit_grid,
                      pl_image, pl_surface, _prepare)
from .persistence import PersistenceDiagram, persistence_diagram, wasserstein
from .signatures import PLDiagram, SignatureSpec, build_pld, pld_wasserstein

HOLDS_SLACK = 1e-9

_SQRT5 = math.sqrt(5.0)
_SQRT_10_PI = math.sqrt(10.0 / math.pi)


@dataclass
class BoundReport:
    case_id: str
    name: str
    lhs: float
    rhs: float
    constants: dict
    holds: bool
    slack: float

    def to_dict(self):
        return {
            "case_id": self.case_id,
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "constants": {k: v for k, v in self.constants.items()},
            "holds": self.holds,
            "slack": self.slack,
        }


def _report(case_id, name, lhs, rhs, constants):
    holds = bool(lhs <= rhs * (1.0 + HOLDS_SLACK)) if math.isfinite(rhs) \
        else True
    if rhs > 0 and math.isfinite(rhs) and math.isfinite(lhs):
        slack = lhs / rhs
    elif lhs == 0.0:
        slack = 0.0
    else:
        slack = math.inf
    return BoundReport(case_id=case_id, name=name, lhs=float(lhs),
                       rhs=float(rhs), constants=constants, holds=holds,
                       slack=slack)


# ---------------------------------------------------------------------------
# perturbations

def perturb_diagram(D, magnitude, seed):
    """Move every diagram point by an offset bounded by magnitude in the
    sup norm. Deaths stay strictly above births (offsets are halved until
    they do) and infinite deaths stay infinite, only the birth moving."""
    if magnitude < 0:
        raise ValueError("magnitude must be >= 0")
    rng = np.random.default_rng(seed)
    out = {}
    for b, d, m in D.points:
        for _ in range(m):
            if magnitude == 0:
                nb, nd = b, d
            elif math.isinf(d):
                nb, nd = b + float(rng.uniform(-magnitude, magnitude)), d
            else:
                db = float(rng.uniform(-magnitude, magnitude))
                dd = float(rng.uniform(-magnitude, magnitude))
                while not d + dd > b + db:
                    db *= 0.5
                    dd *= 0.5
                nb, nd = b + db, d + dd
            out[(nb, nd)] = out.get((nb, nd), 0) + 1
    points = tuple(sorted((b, d, m) for (b, d), m in out.items()))
    return PersistenceDiagram(q=D.q, points=points)


def perturb_pld(C, magnitude, seed):
    """Move every cell's coordinates by at most magnitude, keeping its
    value. Cell keys must stay distinct; a collision (possible only for
    contrived inputs) is rejected rather than silently merged."""
    if magnitude < 0:
        raise ValueError("magnitude must be >= 0")
    rng = np.random.default_rng(seed)
    cells = {}
    for (b, d), val in sorted(C.cells.items()):
        if magnitude == 0:
            nb, nd = b, d
        elif math.isinf(d):
            nb, nd = b + float(rng.uniform(-magnitude, magnitude)), d
        else:
            db = float(rng.uniform(-magnitude, magnitude))
            dd = float(rng.uniform(-magnitude, magnitude))
            while not d + dd > b + db:
                db *= 0.5
                dd *= 0.5
            nb, nd = b + db, d + dd
        if (nb, nd) in cells:
            raise ValueError("perturbation collided two cells; change the seed")
        cells[(nb, nd)] = val
    return PLDiagram(q=C.q, cells=cells, births=C.births, deaths=C.deaths,
                     signature=C.signature)


# ---------------------------------------------------------------------------
# shared plumbing

def _value_sup(*plds):
    vals = [abs(v) for C in plds for v in C.cells.values()]
    return max(vals) if vals else 0.0


def _pin_cap(cfg, plds):
    """Fix the infinite-persistence cap from the union of the inputs so
    both sides of a comparison are imaged through the same map."""
    if cfg.cap is not None:
        return cfg
    if not any(math.isinf(d) for C in plds for (_, d) in C.cells):
        return cfg
    finite = [d - b for C in plds for (b, d) in C.cells if not math.isinf(d)]
    return replace(cfg, cap=cfg.resolve_cap(finite))


def _centers(C, cfg):
    pts = [(b, d, val) for (b, d), val in sorted(C.cells.items())]
    gauss, _ = _prepare(pts, cfg)
    return gauss


def _smoothing_constant(cfg):
    """The factor multiplying the transport cost in the generic-kernel
    bounds: sup f times the kernel's gradient bound plus the kernel's sup
    times f's gradient bound."""
    sigma = cfg.resolved_sigma()
    f_sup, f_grad = cfg.weight_constants()
    return f_sup * gaussian_grad(sigma) + gaussian_sup(sigma) * f_grad


def _gauss_constant(cfg):
    """The sharper Gaussian-specific factor."""
    sigma = cfg.resolved_sigma()
    f_sup, f_grad = cfg.weight_constants()
    return _SQRT5 * f_grad + _SQRT_10_PI * f_sup / sigma


def _mesh_sup(C1, C2, cfg, n=201):
    """Estimate sup |rho1 - rho2|: dense grid over the Gaussian centers
    padded by five sigma, then one Newton polish step at the grid argmax."""
    g1 = _centers(C1, cfg)
    g2 = _centers(C2, cfg)
    if not g1 and not g2:
        return 0.0
    sigma = cfg.resolved_sigma()
    xs = [c[0] for c in g1 + g2]
    ys = [c[1] for c in g1 + g2]
    pad = 5.0 * sigma
    gx = np.linspace(min(xs) - pad, max(xs) + pad, n)
    gy = np.linspace(min(ys) - pad, max(ys) + pad, n)
    X, Y = np.meshgrid(gx, gy)
    two_s2 = 2.0 * sigma * sigma
    norm = gaussian_sup(sigma)

    def field(pts):
        total = np.zeros_like(X)
        for cx, cy, amp in pts:
            total += amp * norm * np.exp(-((X - cx) ** 2 + (Y - cy) ** 2) / two_s2)
        return total

    diff = field(g1) - field(g2)
    iy, ix = np.unravel_index(np.argmax(np.abs(diff)), diff.shape)
    best = abs(float(diff[iy, ix]))
    sign = 1.0 if diff[iy, ix] >= 0 else -1.0
    rho1 = pl_surface(C1, cfg)
    rho2 = pl_surface(C2, cfg)

    def fun(z):
        return sign * (rho1(z) - rho2(z))

    x0, y0 = float(gx[ix]), float(gy[iy])
    h = max(float(gx[1] - gx[0]), float(gy[1] - gy[0])) / 4.0
    f0 = fun((x0, y0))
    fpx = fun((x0 + h, y0))
    fmx = fun((x0 - h, y0))
    fpy = fun((x0, y0 + h))
    fmy = fun((x0, y0 - h))
    fx = (fpx - fmx) / (2 * h)
    fy = (fpy - fmy) / (2 * h)
    fxx = (fpx - 2 * f0 + fmx) / (h * h)
    fyy = (fpy - 2 * f0 + fmy) / (h * h)
    fxy = (fun((x0 + h, y0 + h)) - fun((x0 + h, y0 - h))
           - fun((x0 - h, y0 + h)) + fun((x0 - h, y0 - h))) / (4 * h * h)
    det = fxx * fyy - fxy * fxy
    if det > 0 and fxx < 0:
        dx = -(fyy * fx - fxy * fy) / det
        dy = -(fxx * fy - fxy * fx) / det
        if abs(dx) <= 4 * h and abs(dy) <= 4 * h:
            best = max(best, fun((x0 + dx, y0 + dy)))
    return best


def _abs_integral(C1, C2, cfg, n=320):
    """Estimate the integral of |rho1 - rho2| over the plane by exact
    per-cell integrals on a fine grid covering the centers plus six sigma."""
    g1 = _centers(C1, cfg)
    g2 = _centers(C2, cfg)
    if not g1 and not g2:
        return 0.0
    sigma = cfg.resolved_sigma()
    xs = [c[0] for c in g1 + g2]
    ys = [c[1] for c in g1 + g2]
    pad = 6.0 * sigma
    fine = replace(cfg, grid=(min(xs) - pad, max(xs) + pad,
                              min(ys) - pad, max(ys) + pad, n, n),
                   sigma=sigma)
    I1 = pl_image(C1, fine)
    I2 = pl_image(C2, fine)
    return float(np.abs(I1.values - I2.values).sum())


# ---------------------------------------------------------------------------
# individual bound checks

def _grid_of(D):
    """All ordered pairs over the distinct birth and death values of a
    diagram, with (a, inf) rows when some class never dies."""
    levels = set()
    has_inf = False
    for b, d, _ in D.points:
        levels.add(b)
        if math.isinf(d):
            has_inf = True
        else:
            levels.add(d)
    fin = sorted(levels)
    cells = [(a, b) for i, a in enumerate(fin) for b in fin[i + 1:]]
    if has_inf:
        cells.extend((a, math.inf) for a in fin)
    return cells


def check_pdpld(B1, B2, p, case_id="pdpld"):
    """Grid-of-a-diagram transport bound: moving to the induced pair grids
    inflates the Wasserstein distance by at most 4 times the larger
    diagram's distinct point count."""
    C1 = _grid_of(B1)
    C2 = _grid_of(B2)
    lhs = wasserstein(C1, C2, p)
    w = wasserstein(B1, B2, p)
    n = max(len(B1.points), len(B2.points))
    rhs = 4.0 * n * w
    return _report(case_id, "pdpld", lhs, rhs, {"n": n, "W_p": w, "p": p})


def check_surface_bound(C1, C2, cfg, case_id="surface"):
    cfg = _pin_cap(cfg, [C1, C2])
    s_sup = _value_sup(C1, C2)
    w1 = pld_wasserstein(C1, C2, 1)
    lhs = _mesh_sup(C1, C2, cfg)
    rhs = 2.0 * math.sqrt(2.0) * s_sup * _smoothing_constant(cfg) * w1
    sigma = cfg.resolved_sigma()
    f_sup, f_grad = cfg.weight_constants()
    consts = {"S_sup": s_sup, "f_sup": f_sup, "f_grad": f_grad,
              "phi_sup": gaussian_sup(sigma), "phi_grad": gaussian_grad(sigma),
              "sigma": sigma, "W_1": w1}
    return _report(case_id, "surface_sup", lhs, rhs, consts)


def check_image_bounds(C1, C2, cfg, case_id="image"):
    """Pixel-level versions of the surface bound, one report per norm."""
    cfg = _pin_cap(cfg, [C1, C2])
    s_sup = _value_sup(C1, C2)
    w1 = pld_wasserstein(C1, C2, 1)
    I1 = pl_image(C1, cfg)
    I2 = pl_image(C2, cfg)
    d = (I1.values - I2.values).reshape(-1)
    base = 2.0 * math.sqrt(2.0) * s_sup * _smoothing_constant(cfg) * w1
    A = I1.pixel_area
    n = d.size
    total_area = A * n
    sigma = cfg.resolved_sigma()
    consts = {"S_sup": s_sup, "sigma": sigma, "A": A, "A_total": total_area,
              "n_pixels": n, "W_1": w1}
    return [
        _report(case_id, "image_sup", float(np.max(np.abs(d))) if n else 0.0,
                A * base, consts),
        _report(case_id, "image_l1", float(np.abs(d).sum()),
                total_area * base, consts),
        _report(case_id, "image_l2", float(np.sqrt((d * d).sum())),
                math.sqrt(n) * A * base, consts),
    ]


def check_gauss_bounds(C1, C2, cfg, case_id="gauss"):
    """The Gaussian-kernel refinements: an L1 surface bound and image
    bounds for p in {1, 2, inf}, all with the same right side."""
    cfg = _pin_cap(cfg, [C1, C2])
    s_sup = _value_sup(C1, C2)
    w1 = pld_wasserstein(C1, C2, 1)
    rhs = s_sup * _gauss_constant(cfg) * w1
    sigma = cfg.resolved_sigma()
    f_sup, f_grad = cfg.weight_constants()
    consts = {"S_sup": s_sup, "sigma": sigma, "f_sup": f_sup,
              "f_grad": f_grad, "W_1": w1}
    reports = [_report(case_id, "gauss_surface_l1",
                       _abs_integral(C1, C2, cfg), rhs, consts)]
    I1 = pl_image(C1, cfg)
    I2 = pl_image(C2, cfg)
    d = (I1.values - I2.values).reshape(-1)
    n = d.size
    reports.append(_report(case_id, "gauss_image_l1",
                           float(np.abs(d).sum()), rhs, consts))
    reports.append(_report(case_id, "gauss_image_l2",
                           float(np.sqrt((d * d).sum())), rhs, consts))
    reports.append(_report(case_id, "gauss_image_sup",
                           float(np.max(np.abs(d))) if n else 0.0, rhs, consts))
    return reports


def check_plipd(F1, F2, q, spec, cfg, case_id="plipd"):
    """End to end: two filtrations, full pipeline to images, and the image
    L1 distance against the diagram-level transport cost."""
    D1 = persistence_diagram(F1, q)
    D2 = persistence_diagram(F2, q)
    C1 = build_pld(F1, q, spec, mode="per_q")
    C2 = build_pld(F2, q, spec, mode="per_q")
    cfg = _pin_cap(cfg, [C1, C2])
    I1 = pl_image(C1, cfg)
    I2 = pl_image(C2, cfg)
    lhs = float(np.abs(I1.values - I2.values).sum())
    s_sup = _value_sup(C1, C2)
    n_q = max(D1.total, D2.total)
    w1 = wasserstein(D1, D2, 1)
    rhs = 4.0 * n_q * s_sup * _gauss_constant(cfg) * w1
    sigma = cfg.resolved_sigma()
    consts = {"S_sup": s_sup, "n_q": n_q, "sigma": sigma, "W_1": w1}
    return _report(case_id, "plipd", lhs, rhs, consts)


# ---------------------------------------------------------------------------
# randomized suite

def _random_diagram(rng, max_points=6, inf_chance=0.25):
    k = int(rng.integers(1, max_points + 1))
    pts = []
    for _ in range(k):
        b = float(rng.uniform(0.0, 5.0))
        if rng.uniform() < inf_chance:
            pts.append((b, math.inf, 1))
        else:
            pts.append((b, b + float(rng.uniform(0.1, 3.0)), 1))
    return PersistenceDiagram(q=0, points=tuple(sorted(pts)))


def _random_pld(rng, max_levels=5, inf_chance=0.4):
    k = int(rng.integers(3, max_levels + 1))
    levels = sorted(float(v) for v in rng.uniform(0.0, 5.0, size=k))
    cells = {}
    for i, a in enumerate(levels):
        for b in levels[i + 1:]:
            cells[(a, b)] = float(rng.uniform(0.0, 3.0))
    if rng.uniform() < inf_chance:
        for a in levels:
            cells[(a, math.inf)] = float(rng.uniform(0.0, 3.0))
    return PLDiagram(q=0, cells=cells, signature="synthetic")


def _random_cfg(rng, plds):
    finite = [d - b for C in plds for (b, d) in C.cells if not math.isinf(d)]
    cap = 1.05 * max(finite) if finite else 1.0
    xs, ys = [], []
    for C in plds:
        for (b, d) in C.cells:
            xs.append(b)
            ys.append(cap if math.isinf(d) else d - b)
    npix = int(rng.choice([8, 12, 16]))
    grid = fit_grid(xs, ys, nx=npix, ny=npix)
    y_ext = grid[3] - grid[2]
    sigma = float(rng.uniform(0.05, 0.25)) * y_ext
    weight = "linear_ramp" if rng.uniform() < 0.7 else "constant_one"
    return ImagingConfig(grid=grid, sigma=sigma, weight=weight, cap=cap)


def _random_filtration_pair(rng, magnitude):
    """A random graph with a three-level sublevel filtration and a copy of
    it with every level shifted by less than half the smallest level gap,
    so the order of events is preserved while every event moves."""
    n = int(rng.integers(4, 8))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.uniform() < 0.5]
    maximal = [(v,) for v in range(n)] + [tuple(e) for e in edges]
    K = build_complex(maximal)
    while True:
        base = sorted(float(v) for v in rng.uniform(0.0, 3.0, size=3))
        gap = min(base[1] - base[0], base[2] - base[1])
        if gap > 0.3:
            break
    assign = {v: base[int(rng.integers(0, 3))] for v in range(n)}
    shift = {lv: float(rng.uniform(-1.0, 1.0)) * min(magnitude, 0.45 * gap)
             for lv in base}

    def f1(s):
        return max(assign[v] for v in s)

    def f2(s):
        return max(assign[v] + shift[assign[v]] for v in s)

    return sublevel_filtration(K, f1), sublevel_filtration(K, f2)


def run_suite(seed=0, counts=None, out_path=None):
    """Randomized certification sweep. Returns a summary dict and, when
    out_path is given, writes the full report array as JSON. Any violated
    bound lands in the summary's violations list with enough detail to
    replay it."""
    counts = dict(counts or {"pdpld": 500, "surface": 150, "image": 150,
                             "gauss": 100, "plipd": 100})
    reports = []
    violations = []

    def run(fn, detail):
        out = fn()
        outs = out if isinstance(out, list) else [out]
        reports.extend(outs)
        for r in outs:
            if not r.holds:
                violations.append({"report": r.to_dict(), "detail": detail})

    for i in range(counts.get("pdpld", 0)):
        rng = np.random.default_rng([seed, 1, i])
        B1 = _random_diagram(rng)
        eps = float(rng.choice([0.01, 0.05, 0.1, 0.5]))
        B2 = perturb_diagram(B1, eps, [seed, 1, i, 7])
        p = float(rng.choice([1.0, 2.0, 3.0]))
        run(lambda: check_pdpld(B1, B2, p, "pdpld[%d]" % i),
            {"B1": B1.points, "B2": B2.points, "p": p, "eps": eps,
             "seed": [seed, 1, i]})

    for i in range(counts.get("surface", 0)):
        rng = np.random.default_rng([seed, 2, i])
        C1 = _random_pld(rng)
        eps = float(rng.choice([0.01, 0.1, 0.5]))
        C2 = perturb_pld(C1, eps, [seed, 2, i, 7])
        cfg = _random_cfg(rng, [C1, C2])
        run(lambda: check_surface_bound(C1, C2, cfg, "surface[%d]" % i),
            {"cells1": sorted(C1.cells.items()), "cells2": sorted(C2.cells.items()),
             "eps": eps, "seed": [seed, 2, i]})

    for i in range(counts.get("image", 0)):
        rng = np.random.default_rng([seed, 3, i])
        C1 = _random_pld(rng)
        eps = float(rng.choice([0.01, 0.1, 0.5]))
        C2 = perturb_pld(C1, eps, [seed, 3, i, 7])
        cfg = _random_cfg(rng, [C1, C2])
        run(lambda: check_image_bounds(C1, C2, cfg, "image[%d]" % i),
            {"cells1": sorted(C1.cells.items()), "cells2": sorted(C2.cells.items()),
             "eps": eps, "seed": [seed, 3, i]})

    for i in range(counts.get("gauss", 0)):
        rng = np.random.default_rng([seed, 4, i])
        C1 = _random_pld(rng)
        eps = float(rng.choice([0.01, 0.1, 0.5]))
        C2 = perturb_pld(C1, eps, [seed, 4, i, 7])
        cfg = _random_cfg(rng, [C1, C2])
        run(lambda: check_gauss_bounds(C1, C2, cfg, "gauss[%d]" % i),
            {"cells1": sorted(C1.cells.items()), "cells2": sorted(C2.cells.items()),
             "eps": eps, "seed": [seed, 4, i]})

    for i in range(counts.get("plipd", 0)):
        rng = np.random.default_rng([seed, 5, i])
        F1, F2 = _random_filtration_pair(rng, magnitude=float(rng.uniform(0.05, 0.3)))
        q = int(rng.integers(0, 2))
        kind = "gap" if rng.uniform() < 0.5 else "entropy"
        spec = SignatureSpec(kind=kind)
        grid = fit_grid(list(F1.index_set) + list(F2.index_set), [0.0, 4.0],
                        nx=12, ny=12)
        cfg = ImagingConfig(grid=grid, sigma=0.1 * (grid[3] - grid[2]))
        run(lambda: check_plipd(F1, F2, q, spec, cfg, "plipd[%d]" % i),
            {"values1": sorted(F1.values.items()), "values2": sorted(F2.values.items()),
             "q": q, "signature": kind, "seed": [seed, 5, i]})

    finite_slacks = sorted(r.slack for r in reports
                           if math.isfinite(r.slack) and r.rhs > 0)
    summary = {
        "seed": seed,
        "counts": counts,
        "n_reports": len(reports),
        "n_violations": len(violations),
        "median_slack": (finite_slacks[len(finite_slacks) // 2]
                         if finite_slacks else 0.0),
        "violations": violations,
    }
    if out_path is not None:
        payload = dict(summary)
        payload["reports"] = [r.to_dict() for r in reports]
        with open(out_path, "w") as fh:
            json.dump(payload, fh, indent=2, default=_json_default)
            fh.write("\n")
    return summary, reports


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if obj == math.inf:
        return "inf"
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError("not JSON serializable: %r" % (obj,))
