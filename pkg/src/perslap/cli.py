"""Command line front end.

Subcommands: pd (persistence diagrams), pld (persistent Laplacian
diagrams), pli (images plus a concatenated feature vector), distance
(between exported CSVs), verify (fixture and bound certification).
Exit codes: 0 success, 1 verification failure, 2 input error.
"""

import argparse
import itertools
import json
import math
import sys
from fractions import Fraction

import numpy as np

from .complex import build_complex, boundary_matrix
from .filtration import (Filtration, degree_filtration, sublevel_filtration,
                         vietoris_rips, complex_at)
from .spectral import schur_complement
from .plaplacian import (combinatorial_laplacian, persistent_laplacian,
                         up_persistent_laplacian, schur_up_persistent_laplacian)
from .persistence import (PersistenceDiagram, persistence_diagram,
                          diagram_to_csv, diagrams_from_csv, wasserstein,
                          bottleneck, BETTI_TOL)
from .signatures import (SignatureSpec, PLDiagram, build_pld, pld_to_csv,
                         pld_from_csv, geo_sweep)
from .imaging import (ImagingConfig, fit_grid, pl_image, persistence_image,
                      image_to_csv, image_to_pgm)
from .stability import run_suite


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# builtin fixtures

def _graph(n, edges, weights=None):
    maximal = [(v,) for v in range(n)] + [tuple(sorted(e)) for e in edges]
    if weights is None:
        return build_complex(maximal)
    return build_complex(maximal, weight_fn=lambda s: weights.get(s, 1.0))


def _shrikhande_edges():
    edges = set()
    for i in range(4):
        for j in range(4):
            for di, dj in [(1, 0), (0, 1), (1, 1)]:
                u = 4 * i + j
                v = 4 * ((i + di) % 4) + ((j + dj) % 4)
                edges.add(tuple(sorted((u, v))))
    return sorted(edges)


def _rook_edges():
    edges = set()
    for i in range(4):
        for j in range(4):
            for i2 in range(4):
                for j2 in range(4):
                    if (i2, j2) != (i, j) and (i2 == i or j2 == j):
                        edges.add(tuple(sorted((4 * i + j, 4 * i2 + j2))))
    return sorted(edges)


# The twin seven-vertex graphs. Vertex order for the first:
# 0..5 in the base plus 6 as the apex joined to five of them; the second
# follows the same pattern with a different base wiring.
_G_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (1, 5), (4, 5),
            (3, 4), (6, 1), (6, 2), (6, 3), (6, 4), (6, 5)]
_H_EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4), (4, 5), (3, 5),
            (2, 3), (6, 0), (6, 2), (6, 3), (6, 4), (6, 5)]


def builtin(name):
    """Builtin inputs. Graphs come back as ("graph", complex); point sets
    as ("cloud", points)."""
    if name == "G1":
        return "graph", _graph(6, [(0, 1), (0, 2), (2, 1), (1, 3), (3, 4),
                                   (3, 5), (5, 4)])
    if name == "G2":
        return "graph", _graph(6, [(0, 1), (0, 2), (1, 3), (3, 2), (3, 5),
                                   (2, 4), (4, 5)])
    if name == "G":
        return "graph", _graph(7, _G_EDGES)
    if name == "H":
        return "graph", _graph(7, _H_EDGES)
    if name == "Shrikhande":
        return "graph", _graph(16, _shrikhande_edges())
    if name == "rook":
        return "graph", _graph(16, _rook_edges())
    if name == "square_cloud":
        return "cloud", [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    raise InputError("unknown builtin %r (have G1, G2, G, H, Shrikhande, "
                     "rook, square_cloud)" % (name,))


# ---------------------------------------------------------------------------
# ingestion

def read_edge_list(path):
    """Whitespace separated `u v [columns...]` with # comments and 0-based
    integer vertices. Returns (vertices, records) where each record is
    (u, v, extras, line_number)."""
    verts = set()
    records = []
    try:
        fh = open(path)
    except OSError as e:
        raise InputError(str(e))
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise InputError("%s:%d: need at least two fields" % (path, lineno))
            try:
                u, v = int(parts[0]), int(parts[1])
                extras = [float(x) for x in parts[2:]]
            except ValueError:
                raise InputError("%s:%d: bad token in %r" % (path, lineno, line))
            if u == v:
                raise InputError("%s:%d: self loop %d" % (path, lineno, u))
            verts.update((u, v))
            records.append((u, v, extras, lineno))
    return sorted(verts), records


def read_point_cloud(path):
    """Headerless CSV of coordinates, one point per row."""
    pts = []
    width = None
    try:
        fh = open(path)
    except OSError as e:
        raise InputError(str(e))
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                row = [float(x) for x in line.split(",")]
            except ValueError:
                raise InputError("%s:%d: bad coordinate in %r" % (path, lineno, line))
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise InputError("%s:%d: expected %d coordinates, got %d"
                                 % (path, lineno, width, len(row)))
            pts.append(tuple(row))
    return pts


def _load_input(args):
    sources = [s for s in (args.builtin, args.edge_list, args.point_cloud)
               if s is not None]
    if len(sources) != 1:
        raise InputError("exactly one of --builtin, --edge-list, "
                         "--point-cloud is required")
    if args.builtin is not None:
        kind, payload = builtin(args.builtin)
        return kind, payload, []
    if args.edge_list is not None:
        verts, records = read_edge_list(args.edge_list)
        weights = {}
        for u, v, extras, _ in records:
            if extras:
                weights[tuple(sorted((u, v)))] = extras[0]
        K = _graph(0, [], None) if not verts else \
            build_complex([(v,) for v in verts]
                          + [tuple(sorted((u, v))) for u, v, _, _ in records],
                          weight_fn=(lambda s: weights.get(s, 1.0)) if weights else None)
        return "graph", K, records
    return "cloud", read_point_cloud(args.point_cloud), []


def _build_filtration(args):
    kind, payload, records = _load_input(args)
    filt = args.filtration
    if kind == "cloud":
        if filt not in (None, "vr"):
            raise InputError("point clouds only support the vr filtration")
        eps = _parse_floats(args.eps) if args.eps else None
        return vietoris_rips(payload, args.max_dim, eps_values=eps)
    if filt in (None, "degree"):
        return degree_filtration(payload)
    if filt == "sublevel":
        if not records:
            raise InputError("sublevel filtration needs an edge list with a "
                             "value column")
        col = args.column
        values = {}
        for u, v, extras, lineno in records:
            if col >= len(extras):
                raise InputError("%s:%d: no column %d on this line"
                                 % (args.edge_list, lineno, col))
            values[tuple(sorted((u, v)))] = extras[col]
        # a vertex enters with its earliest incident edge
        vert_val = {}
        for (u, v), val in values.items():
            for w in (u, v):
                vert_val[w] = min(vert_val.get(w, math.inf), val)
        full = {}
        for s in payload.all_simplices():
            full[s] = values[s] if len(s) == 2 else vert_val.get(s[0], 0.0)
        return Filtration(payload, full)
    if filt == "vr":
        raise InputError("vr filtration needs a point cloud")
    raise InputError("unknown filtration %r" % (filt,))


# ---------------------------------------------------------------------------
# shared option plumbing

def _parse_floats(text):
    try:
        return [float(x) for x in str(text).split(",") if x != ""]
    except ValueError:
        raise InputError("bad float list %r" % (text,))


def _parse_qs(text):
    try:
        qs = [int(x) for x in str(text).split(",") if x != ""]
    except ValueError:
        raise InputError("bad q list %r" % (text,))
    if not qs or any(q < 0 for q in qs):
        raise InputError("q values must be >= 0")
    return qs


def _signature_specs(args):
    specs = []
    for kind in str(args.signature).split(","):
        kind = kind.strip()
        if kind == "unit":
            specs.append("unit")
            continue
        v = None
        if kind == "geo":
            if not args.geo_vector:
                raise InputError("geo signature needs --geo-vector")
            v = np.array(_parse_floats(args.geo_vector))
        try:
            specs.append(SignatureSpec(kind=kind, p=args.p, v=v,
                                       geo_mode=args.geo_mode))
        except ValueError as e:
            raise InputError(str(e))
    return specs


def _prefix(args):
    if args.out:
        return args.out
    if args.builtin:
        return args.builtin
    src = args.edge_list or args.point_cloud
    stem = src.rsplit("/", 1)[-1]
    return stem.rsplit(".", 1)[0] if "." in stem else stem


def _apply_config(args):
    if not args.config:
        return args
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError("bad config file: %s" % e)
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise InputError("unknown config key %r" % (key,))
        setattr(args, attr, val)
    return args


# ---------------------------------------------------------------------------
# subcommands

def cmd_pd(args):
    F = _build_filtration(args)
    prefix = _prefix(args)
    for q in _parse_qs(args.q):
        D = persistence_diagram(F, q)
        path = "%s_pd_q%d.csv" % (prefix, q)
        diagram_to_csv(D, path)
        print(path)
    return 0


def cmd_pld(args):
    F = _build_filtration(args)
    prefix = _prefix(args)
    for q in _parse_qs(args.q):
        for spec in _signature_specs(args):
            if spec == "unit":
                raise InputError("the unit signature is for pli only")
            C = build_pld(F, q, spec, mode=args.grid_mode)
            path = "%s_pld_q%d_%s.csv" % (prefix, q, spec.kind)
            pld_to_csv(C, path)
            print(path)
    return 0


def _shared_imaging_config(args, point_sets):
    """One imaging map for every channel of a run: cap resolved over the
    union, grid auto-fit over the union unless given explicitly."""
    finite = [d - b for pts in point_sets for (b, d, _) in pts
              if not math.isinf(d)]
    if args.cap is not None:
        cap = args.cap
    elif finite:
        cap = 1.05 * max(finite)
    else:
        cap = 1.0
    xs, ys = [], []
    for pts in point_sets:
        for (b, d, _) in pts:
            xs.append(b)
            ys.append(cap if math.isinf(d) else d - b)
    if args.bounds:
        b4 = _parse_floats(args.bounds)
        if len(b4) != 4:
            raise InputError("--bounds needs x_min,x_max,y_min,y_max")
        grid = (b4[0], b4[1], b4[2], b4[3], args.nx, args.ny)
    else:
        grid = fit_grid(xs, ys, nx=args.nx, ny=args.ny)
    try:
        return ImagingConfig(grid=grid, sigma=args.sigma, weight=args.weight,
                             infinity=args.infinity, cap=cap)
    except ValueError as e:
        raise InputError(str(e))


def cmd_pli(args):
    F = _build_filtration(args)
    prefix = _prefix(args)
    qs = _parse_qs(args.q)
    specs = _signature_specs(args)
    channels = []           # (q, label, points, object)
    for q in qs:
        D = persistence_diagram(F, q)
        for spec in specs:
            if spec == "unit":
                pts = [(b, d, 1.0) for b, d in D.expand()]
                channels.append((q, "unit", pts, ("pd", D)))
            else:
                C = build_pld(F, q, spec, mode=args.grid_mode)
                pts = [(b, d, val) for (b, d), val in sorted(C.cells.items())]
                channels.append((q, spec.kind, pts, ("pld", C)))
    cfg = _shared_imaging_config(args, [pts for _, _, pts, _ in channels])
    vector = []
    for q, label, _, (kind, obj) in channels:
        img = persistence_image(obj, cfg) if kind == "pd" else pl_image(obj, cfg)
        base = "%s_pli_q%d_%s" % (prefix, q, label)
        image_to_csv(img, base + ".csv")
        image_to_pgm(img, base + ".pgm")
        vector.extend(float(v) for v in img.flatten())
        print(base + ".csv")
    vec_path = "%s_pli_vector.csv" % prefix
    with open(vec_path, "w") as fh:
        fh.write(",".join(repr(v) for v in vector) + "\n")
    print(vec_path)
    return 0


def cmd_distance(args):
    p = math.inf if str(args.p).lower() in ("inf", "infinity") else float(args.p)
    if args.kind == "pd":
        A = {D.q: D for D in diagrams_from_csv(args.path_a)}
        B = {D.q: D for D in diagrams_from_csv(args.path_b)}
        keys = sorted(set(A) | set(B))

        def blank(q):
            return PersistenceDiagram(q=q, points=())
    else:
        A = {(C.q, C.signature): C for C in pld_from_csv(args.path_a)}
        B = {(C.q, C.signature): C for C in pld_from_csv(args.path_b)}
        keys = sorted(set(A) | set(B))

        def blank(key):
            return PLDiagram(q=key[0], cells=dict(), signature=key[1])
    parts = [(A.get(k) or blank(k), B.get(k) or blank(k)) for k in keys]
    if math.isinf(p):
        total = max((bottleneck(a, b) for a, b in parts), default=0.0)
    else:
        acc = 0.0
        for a, b in parts:
            d = wasserstein(a, b, p)
            if math.isinf(d):
                acc = math.inf
                break
            acc += d ** p
        total = acc if math.isinf(acc) else acc ** (1.0 / p)
    print(repr(float(total)))
    return 0


# ---------------------------------------------------------------------------
# verification: exact homology oracle and brute-force matcher

def _frac_rank(M):
    """Rank of an integer matrix by exact elimination."""
    rows = [[Fraction(int(x)) for x in row] for row in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        inv = Fraction(1, 1) / pr[col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], pr)]
        rank += 1
    return rank


def betti_oracle(F, q, s, t):
    """Rank-based persistent Betti number over the rationals, independent
    of any Laplacian machinery."""
    Ks = complex_at(F, s)
    Kt = complex_at(F, t)
    ns = Ks.n(q)
    if ns == 0:
        return 0
    E = np.zeros((Kt.n(q), ns), dtype=int)
    for j, sim in enumerate(Ks.simplices(q)):
        E[Kt.index_of(sim), j] = 1
    Bt = boundary_matrix(Kt, q + 1).entries.astype(int)
    Bs = boundary_matrix(Ks, q).entries.astype(int)
    joint = np.hstack([E, Bt]) if Bt.size else E
    return _frac_rank(joint) - _frac_rank(Bs) - _frac_rank(Bt)


def _nullity(M, tol=BETTI_TOL):
    if M.shape[0] == 0:
        return 0
    lam = np.linalg.eigvalsh((M + M.T) / 2.0)
    scale = max(1.0, float(np.max(np.abs(lam))))
    return int(np.sum(lam <= tol * scale))


def _random_instances(seed, count):
    """Half random graph sublevel filtrations, half small VR filtrations."""
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, 11, i])
        if i % 2 == 0:
            n = int(rng.integers(3, 9))
            edges = [(a, b) for a in range(n) for b in range(a + 1, n)
                     if rng.uniform() < 0.45]
            weighted = rng.uniform() < 0.5
            wmap = {}
            if weighted:
                K0 = build_complex([(v,) for v in range(n)]
                                   + [tuple(e) for e in edges])
                for s in K0.all_simplices():
                    wmap[s] = float(rng.uniform(0.5, 2.0))
            K = build_complex([(v,) for v in range(n)] + [tuple(e) for e in edges],
                              weight_fn=(lambda s: wmap[s]) if weighted else None)
            lv = {v: int(rng.integers(0, 4)) for v in range(n)}
            F = sublevel_filtration(K, lambda s: float(max(lv[v] for v in s)))
            out.append(F)
        else:
            m = int(rng.integers(3, 7))
            pts = rng.uniform(0.0, 2.0, size=(m, 2))
            dmax = max(float(np.linalg.norm(a - b))
                       for a, b in itertools.combinations(pts, 2))
            k = int(rng.integers(2, 5))
            eps = [dmax * (j + 1) / k for j in range(k)]
            out.append(vietoris_rips([tuple(p) for p in pts], 2, eps_values=eps))
    return out


def _diag_cost(pt):
    b, d = pt
    return math.inf if math.isinf(d) else (d - b) / 2.0


def _pair_cost(a, b):
    db = abs(a[0] - b[0])
    if math.isinf(a[1]) or math.isinf(b[1]):
        dd = 0.0 if math.isinf(a[1]) and math.isinf(b[1]) else math.inf
    else:
        dd = abs(a[1] - b[1])
    return max(db, dd)


def brute_force_distance(P1, P2, p):
    """Exhaustive optimal matching over all partial injections, with
    unmatched points paying their diagonal cost. p = inf gives the
    bottleneck value."""
    n1, n2 = len(P1), len(P2)
    best = math.inf
    for k in range(0, min(n1, n2) + 1):
        for sub1 in itertools.combinations(range(n1), k):
            for sub2 in itertools.permutations(range(n2), k):
                costs = [_pair_cost(P1[i], P2[j]) for i, j in zip(sub1, sub2)]
                costs += [_diag_cost(P1[i]) for i in range(n1) if i not in sub1]
                costs += [_diag_cost(P2[j]) for j in range(n2) if j not in sub2]
                if math.isinf(p):
                    val = max(costs) if costs else 0.0
                else:
                    val = sum(c ** p for c in costs) ** (1.0 / p) \
                        if all(map(math.isfinite, costs)) else math.inf
                best = min(best, val)
    return best


# ---------------------------------------------------------------------------
# verification: the criteria

_SPEC_G1 = sorted([0.0, (5 - math.sqrt(17)) / 2, 3.0, 3.0, 3.0,
                   (5 + math.sqrt(17)) / 2])
_SPEC_G2 = [0.0, 1.0, 2.0, 3.0, 3.0, 5.0]
_LAMBDA2_TWINS = 4.0 - math.sqrt(2.0)
_SEP_G = (9.0 - math.sqrt(5.0)) / 2.0
_SEP_H = (12.0 - math.sqrt(6.0)) / 3.0


def _spectrum(K):
    return np.sort(np.linalg.eigvalsh(combinatorial_laplacian(K, 0)))


def _crit_spectra():
    s1 = _spectrum(builtin("G1")[1])
    s2 = _spectrum(builtin("G2")[1])
    ok = (np.max(np.abs(s1 - np.array(_SPEC_G1))) < 1e-9
          and np.max(np.abs(s2 - np.array(_SPEC_G2))) < 1e-9)
    return ok, {"G1": s1.tolist(), "G2": s2.tolist()}


def _degree_sequence(K):
    deg = {v: 0 for v in K.vertices}
    for (u, v) in K.simplices(1):
        deg[u] += 1
        deg[v] += 1
    return sorted(deg.values())


def _crit_codegree():
    d1 = _degree_sequence(builtin("G1")[1])
    d2 = _degree_sequence(builtin("G2")[1])
    dg = _degree_sequence(builtin("G")[1])
    dh = _degree_sequence(builtin("H")[1])
    lg = float(np.sort(np.linalg.eigvalsh(
        combinatorial_laplacian(builtin("G")[1], 0)))[1])
    lh = float(np.sort(np.linalg.eigvalsh(
        combinatorial_laplacian(builtin("H")[1], 0)))[1])
    ok = (d1 == [2, 2, 2, 2, 3, 3] and d2 == [2, 2, 2, 2, 3, 3]
          and dg == [3, 4, 4, 4, 4, 4, 5] and dh == [3, 4, 4, 4, 4, 4, 5]
          and abs(lg - _LAMBDA2_TWINS) < 1e-9
          and abs(lh - _LAMBDA2_TWINS) < 1e-9)
    return ok, {"deg_G1": d1, "deg_G2": d2, "deg_G": dg, "deg_H": dh,
                "lambda2_G": lg, "lambda2_H": lh}


def _twin_diagrams():
    FG = degree_filtration(builtin("G")[1])
    FH = degree_filtration(builtin("H")[1])
    return FG, FH


def _crit_pd_fixture():
    FG, FH = _twin_diagrams()
    expected0 = ((3.0, math.inf, 1),)
    expected1 = ((4.0, math.inf, 4), (5.0, math.inf, 4))
    d = {}
    ok = True
    for name, F in (("G", FG), ("H", FH)):
        D0 = persistence_diagram(F, 0)
        D1 = persistence_diagram(F, 1)
        d[name] = {"B0": D0.points, "B1": D1.points}
        ok = ok and D0.points == expected0 and D1.points == expected1
    if ok:
        pts = {name: [(b, dd, 1.0) for b, dd, m in
                      persistence_diagram(F, 0).points for _ in range(m)]
               + [(b, dd, 1.0) for b, dd, m in
                  persistence_diagram(F, 1).points for _ in range(m)]
               for name, F in (("G", FG), ("H", FH))}
        cap = 1.05 * 5.0
        xs = [b for P in pts.values() for (b, _, _) in P]
        ys = [cap for _ in xs]
        grid = fit_grid(xs, ys, nx=20, ny=20)
        cfg = ImagingConfig(grid=grid, cap=cap)
        imgs = {}
        for name, F in (("G", FG), ("H", FH)):
            vec = []
            for q in (0, 1):
                vec.extend(persistence_image(persistence_diagram(F, q), cfg)
                           .flatten())
            imgs[name] = np.array(vec)
        same = bool(np.array_equal(imgs["G"], imgs["H"]))
        d["pi_identical"] = same
        ok = ok and same
    return ok, d


def _locate_separation_values():
    """Where the separation values actually arise: the second smallest
    eigenvalue of the Kron reduction of the full graph Laplacian that
    eliminates the unique minimum-degree vertex, equivalently the
    superlevel (descending degree) pair of thresholds 4 and 3."""
    out = {}
    for name, target in (("G", _SEP_G), ("H", _SEP_H)):
        K = builtin(name)[1]
        deg = {v: 0 for v in K.vertices}
        for (u, v) in K.simplices(1):
            deg[u] += 1
            deg[v] += 1
        keep = [i for i, v in enumerate(sorted(K.vertices)) if deg[v] >= 4]
        L = combinatorial_laplacian(K, 0)
        red = schur_complement(L, keep)
        lam2 = float(np.sort(np.linalg.eigvalsh(red))[1])
        out[name] = {"target": target, "kron_lambda2": lam2,
                     "matches": bool(abs(lam2 - target) < 1e-9)}
    return out


def _crit_pl_separation():
    FG, FH = _twin_diagrams()
    spec = SignatureSpec(kind="gap")
    detail = {}
    located = {}
    for name, F, target in (("G", FG, _SEP_G), ("H", FH, _SEP_H)):
        C = build_pld(F, 0, spec, mode="pooled")
        cells = {("%g" % b) + "," + ("inf" if math.isinf(dd) else "%g" % dd): v
                 for (b, dd), v in C.cells.items()}
        hits = [k for k, v in cells.items() if abs(v - target) < 1e-9]
        detail[name] = {"cells": cells, "target": target, "hits": hits}
        located[name] = len(hits) == 1
    clause_values = located["G"] and located["H"]
    # image separation
    pli = {}
    for name, F in (("G", FG), ("H", FH)):
        C = build_pld(F, 0, spec, mode="pooled")
        pts = [(b, dd, v) for (b, dd), v in sorted(C.cells.items())]
        pli[name] = pts
    finite = [dd - b for P in pli.values() for (b, dd, _) in P
              if not math.isinf(dd)]
    cap = 1.05 * max(finite) if finite else 1.0
    xs = [b for P in pli.values() for (b, dd, _) in P]
    ys = [(cap if math.isinf(dd) else dd - b) for P in pli.values()
          for (b, dd, _) in P]
    grid = fit_grid(xs, ys, nx=20, ny=20)
    cfg = ImagingConfig(grid=grid, cap=cap)
    vecs = {}
    for name, F in (("G", FG), ("H", FH)):
        C = build_pld(F, 0, spec, mode="pooled")
        vecs[name] = pl_image(C, cfg).flatten()
    sep = float(np.max(np.abs(vecs["G"] - vecs["H"])))
    clause_images = sep > 1e-6
    detail["pli_inf_norm_separation"] = sep
    detail["value_location_analysis"] = _locate_separation_values()
    detail["clause_values_in_one_cell"] = clause_values
    detail["clause_image_separation"] = clause_images
    return clause_values and clause_images, detail


def _crit_cospectral():
    out = {}
    ok = True
    spectra = {}
    for name in ("Shrikhande", "rook"):
        K = builtin(name)[1]
        degs = _degree_sequence(K)
        n_e = len(K.simplices(1))
        lam = np.sort(np.linalg.eigvalsh(combinatorial_laplacian(K, 0)))
        spectra[name] = lam
        ok = ok and len(K.vertices) == 16 and n_e == 48 and degs == [6] * 16
        out[name] = {"vertices": len(K.vertices), "edges": n_e,
                     "degrees_all_6": degs == [6] * 16}
    ok = ok and bool(np.max(np.abs(spectra["Shrikhande"] - spectra["rook"])) < 1e-8)
    out["cospectral"] = bool(np.max(np.abs(spectra["Shrikhande"] - spectra["rook"])) < 1e-8)
    # vertex-transitivity identity for the projection profile
    e1 = np.zeros(16)
    e1[0] = 1.0
    for name in ("Shrikhande", "rook"):
        K = builtin(name)[1]
        L = combinatorial_laplacian(K, 0)
        lam, U = np.linalg.eigh(L)
        clusters = []
        start = 0
        for i in range(1, 17):
            if i == 16 or lam[i] - lam[i - 1] > 1e-8 * max(1.0, abs(lam[-1])):
                clusters.append((start, i))
                start = i
        ident_ok = True
        for (a, b) in clusters:
            P = U[:, a:b] @ U[:, a:b].T
            nrm2 = float(np.linalg.norm(P @ e1) ** 2)
            ident_ok = ident_ok and abs(nrm2 - (b - a) / 16.0) < 1e-8
        out[name]["projection_identity"] = ident_ok
        ok = ok and ident_ok
    LS = combinatorial_laplacian(builtin("Shrikhande")[1], 0)
    LR = combinatorial_laplacian(builtin("rook")[1], 0)
    out["geo_sweep"] = geo_sweep(LS, LR, e1)
    return ok, out


def _crit_betti_oracle(seed, count):
    instances = _random_instances(seed, count)
    checked = 0
    for F in instances:
        T = list(F.index_set)
        qmax = F.final_complex.dim
        for q in range(qmax + 1):
            for si, s in enumerate(T):
                for t in T[si:] + [math.inf]:
                    expect = betti_oracle(F, q, s, t)
                    got = _nullity(persistent_laplacian(F, q, s, t).matrix)
                    if got != expect:
                        return False, {"instance": instances.index(F),
                                       "q": q, "s": s,
                                       "t": "inf" if math.isinf(t) else t,
                                       "oracle": expect, "nullity": got}
                    checked += 1
    return True, {"instances": len(instances), "checked": checked}


def _crit_dual_route(seed, count):
    instances = _random_instances(seed, count)
    checked = 0
    worst = 0.0
    for F in instances:
        T = list(F.index_set)
        qmax = F.final_complex.dim
        for q in range(qmax + 1):
            for si, s in enumerate(T):
                for t in T[si:] + [math.inf]:
                    A = up_persistent_laplacian(F, q, s, t)
                    B = schur_up_persistent_laplacian(F, q, s, t)
                    if A.shape != B.shape:
                        return False, {"q": q, "s": s, "t": str(t),
                                       "shapes": [A.shape, B.shape]}
                    diff = float(np.max(np.abs(A - B))) if A.size else 0.0
                    worst = max(worst, diff)
                    if diff > 1e-8:
                        return False, {"instance": instances.index(F),
                                       "q": q, "s": s, "t": str(t),
                                       "max_diff": diff}
                    checked += 1
    return True, {"instances": len(instances), "checked": checked,
                  "worst_diff": worst}


def _crit_matcher(seed, count):
    worst = 0.0
    for i in range(count):
        rng = np.random.default_rng([seed, 12, i])
        def rand_pts():
            k = int(rng.integers(0, 6))
            pts = []
            for _ in range(k):
                b = float(rng.uniform(0.0, 4.0))
                pts.append((b, b + float(rng.uniform(0.05, 2.0))))
            return pts
        P1, P2 = rand_pts(), rand_pts()
        for p in (1.0, 2.0, math.inf):
            expect = brute_force_distance(P1, P2, p)
            got = bottleneck(P1, P2) if math.isinf(p) else wasserstein(P1, P2, p)
            worst = max(worst, abs(got - expect))
            if abs(got - expect) > 1e-12:
                return False, {"pair": i, "p": "inf" if math.isinf(p) else p,
                               "P1": P1, "P2": P2,
                               "expected": expect, "got": got}
    return True, {"pairs": count, "worst_diff": worst}


def _crit_stability(seed, counts=None):
    summary, _ = run_suite(seed=seed, counts=counts)
    return summary["n_violations"] == 0, summary


def _crit_imaging():
    detail = {}
    b, d, s = 1.0, 3.0, 2.5
    sigma = 0.1
    cfg = ImagingConfig(grid=(b - 6 * sigma, b + 6 * sigma,
                              (d - b) - 6 * sigma, (d - b) + 6 * sigma,
                              40, 40),
                        sigma=sigma, weight="linear_ramp", weight_y_max=1.0)
    C = PLDiagram(q=0, cells={(b, d): s}, signature="gap")
    img = pl_image(C, cfg)
    mass = float(img.values.sum())
    expected = 1.0 * s            # ramp saturates at persistence 2 with y_max 1
    mass_ok = abs(mass - expected) < 1e-4
    detail["mass"] = {"got": mass, "expected": expected}

    C1 = PLDiagram(q=0, cells={(1.0, 3.0): 2.0}, signature="gap")
    C2 = PLDiagram(q=0, cells={(1.5, 2.5): 1.0}, signature="gap")
    C12 = PLDiagram(q=0, cells={(1.0, 3.0): 2.0, (1.5, 2.5): 1.0},
                    signature="gap")
    cfg2 = ImagingConfig(grid=(0.0, 4.0, 0.0, 4.0, 16, 16), sigma=0.2)
    lin = float(np.max(np.abs(pl_image(C12, cfg2).values
                              - pl_image(C1, cfg2).values
                              - pl_image(C2, cfg2).values)))
    lin_ok = lin < 1e-12
    detail["linearity_gap"] = lin

    t = 2.0
    Ca = PLDiagram(q=0, cells={(1.0, 3.0): 1.5}, signature="gap")
    Cb = PLDiagram(q=0, cells={(1.0 + t, 3.0 + t): 1.5}, signature="gap")
    cfa = ImagingConfig(grid=(0.0, 4.0, 0.0, 4.0, 10, 10), sigma=0.25)
    cfb = ImagingConfig(grid=(0.0 + t, 4.0 + t, 0.0, 4.0, 10, 10), sigma=0.25)
    shift = float(np.max(np.abs(pl_image(Ca, cfa).values
                                - pl_image(Cb, cfb).values)))
    shift_ok = shift < 1e-12
    detail["translation_gap"] = shift
    return mass_ok and lin_ok and shift_ok, detail


def cmd_verify(args):
    seed = args.seed
    scale_counts = None
    if args.stability_cases != 1000:
        base = {"pdpld": 500, "surface": 150, "image": 150,
                "gauss": 100, "plipd": 100}
        frac = args.stability_cases / 1000.0
        scale_counts = {k: max(1, int(round(v * frac))) for k, v in base.items()}
    checks = [
        ("spectra", _crit_spectra),
        ("codegree", _crit_codegree),
        ("pd_fixture", _crit_pd_fixture),
        ("pl_separation", _crit_pl_separation),
        ("cospectral", _crit_cospectral),
        ("betti_oracle", lambda: _crit_betti_oracle(seed, args.oracle_cases)),
        ("dual_route", lambda: _crit_dual_route(seed, args.oracle_cases)),
        ("matcher", lambda: _crit_matcher(seed, args.oracle_cases)),
        ("stability", lambda: _crit_stability(seed, scale_counts)),
        ("imaging", _crit_imaging),
    ]
    results = []
    all_ok = True
    for n, (name, fn) in enumerate(checks, 1):
        ok, detail = fn()
        all_ok = all_ok and ok
        results.append({"n": n, "name": name, "ok": bool(ok), "detail": detail})
        print("criterion %d (%s): %s" % (n, name, "PASS" if ok else "FAIL"))
    summary = {"seed": seed, "ok": all_ok, "criteria": results}
    out = args.out or "verify_summary.json"
    with open(out, "w") as fh:
        json.dump(summary, fh, indent=2, default=_jsonable)
        fh.write("\n")
    print("summary written to %s" % out)
    return 0 if all_ok else 1


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    return str(obj)


# ---------------------------------------------------------------------------
# argument wiring

def _add_input_opts(sp):
    sp.add_argument("--builtin", help="fixture name: G1, G2, G, H, "
                    "Shrikhande, rook, square_cloud")
    sp.add_argument("--edge-list", help="path to `u v [value...]` lines, "
                    "# comments")
    sp.add_argument("--point-cloud", help="path to headerless coordinate CSV")
    sp.add_argument("--filtration", choices=["degree", "vr", "sublevel"],
                    help="default: degree for graphs, vr for clouds")
    sp.add_argument("--max-dim", type=int, default=2,
                    help="top simplex dimension for vr (default 2)")
    sp.add_argument("--eps", help="comma separated vr scale grid; default "
                    "all pairwise diameters")
    sp.add_argument("--column", type=int, default=0,
                    help="0-based extra column carrying sublevel values")
    sp.add_argument("--q", default="0,1", help="comma separated degrees "
                    "(default 0,1)")
    sp.add_argument("--out", help="output path prefix (default: input name)")


def _add_signature_opts(sp):
    sp.add_argument("--signature", default="gap",
                    help="comma separated: gap, entropy, geo, unit (pli only)")
    sp.add_argument("--p", type=float, default=2.0, help="geo exponent")
    sp.add_argument("--geo-vector", help="comma separated reference vector")
    sp.add_argument("--geo-mode", default="distinct_eigenspaces",
                    choices=["distinct_eigenspaces", "multiplicity_weighted"])
    sp.add_argument("--grid-mode", default="pooled",
                    choices=["pooled", "per_q"],
                    help="PLD level grid: pooled across degrees or literal")


def _add_imaging_opts(sp):
    sp.add_argument("--nx", type=int, default=20)
    sp.add_argument("--ny", type=int, default=20)
    sp.add_argument("--bounds", help="x_min,x_max,y_min,y_max (default auto)")
    sp.add_argument("--sigma", type=float, help="Gaussian std dev "
                    "(default 5%% of grid height)")
    sp.add_argument("--weight", default="linear_ramp",
                    choices=["linear_ramp", "constant_one"])
    sp.add_argument("--infinity", default="cap",
                    choices=["cap", "dirac_top_row"])
    sp.add_argument("--cap", type=float,
                    help="persistence assigned to never-dying classes "
                    "(default 1.05 x largest finite persistence)")


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="perslap",
        description="Persistent Laplacian diagrams, images, and distances "
        "for filtered simplicial complexes.")
    ap.add_argument("--config", help="JSON file whose keys override flags")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pd", help="persistence diagram CSVs per q")
    _add_input_opts(sp)
    sp.set_defaults(func=cmd_pd)

    sp = sub.add_parser("pld", help="persistent Laplacian diagram CSVs")
    _add_input_opts(sp)
    _add_signature_opts(sp)
    sp.set_defaults(func=cmd_pld)

    sp = sub.add_parser("pli", help="images per (q, signature) plus a "
                        "concatenated vector")
    _add_input_opts(sp)
    _add_signature_opts(sp)
    _add_imaging_opts(sp)
    sp.set_defaults(func=cmd_pli)

    sp = sub.add_parser("distance", help="distance between two exported CSVs")
    sp.add_argument("path_a")
    sp.add_argument("path_b")
    sp.add_argument("--kind", choices=["pd", "pld"], default="pd")
    sp.add_argument("--p", default="2", help="order, or inf for bottleneck")
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("verify", help="run fixture checks and the bound "
                        "certification suite")
    sp.add_argument("--out", help="summary JSON path "
                    "(default verify_summary.json)")
    sp.add_argument("--stability-cases", type=int, default=1000,
                    help="total randomized bound cases (default 1000)")
    sp.add_argument("--oracle-cases", type=int, default=200,
                    help="instances for the oracle equivalence sweeps "
                    "(default 200)")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        args = _apply_config(args)
        return args.func(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
