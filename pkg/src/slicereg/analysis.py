"""Numerical harnesses for the modulus principles and the open mapping theorem.

Everything here is seeded and deterministic: a report is a pure function of
(inputs, seed).  Local refinement uses central-difference derivatives; no
analytic quaternionic derivative is involved.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT, Config
from .errors import NotOrthogonalError, ReciprocalUndefinedError, TrustRegionError, VanishesAtPointError
from .quaternion import (
    UNIT_I,
    ImaginaryUnit,
    Quaternion,
    norm,
    random_in_ball,
    slice_decompose,
)
from .series import (
    RegularSeries,
    evaluate,
    evaluate_many,
    product_eval_identity,
    reciprocal_eval_identity,
    reciprocal_series,
    regular_conjugate,
    regular_product,
    relative_deviation,
    scale,
    symmetrization,
    transform_T,
)
from .spheres import Sphere2, spherical_split, value_at

# the 80 non-zero offsets of {-1, 0, 1}^4
NEIGHBOR_OFFSETS = np.array([o for o in itertools.product((-1, 0, 1), repeat=4) if any(o)], dtype=float)


def _fn(f: RegularSeries):
    return lambda pts: evaluate_many(f, pts)


def numeric_jacobian(func, q: np.ndarray, step: float) -> np.ndarray:
    """Central-difference Jacobian of a vectorized map R^4 -> R^4 at q."""
    h = step * (1.0 + np.linalg.norm(q))
    stencil = np.concatenate([q + h * np.eye(4), q - h * np.eye(4)])
    vals = func(stencil)
    return (vals[:4] - vals[4:]).T / (2.0 * h)


def grad_sq(func, q: np.ndarray, step: float) -> np.ndarray:
    """Gradient of |func|^2 at q."""
    F = func(q[None, :])[0]
    return 2.0 * numeric_jacobian(func, q, step).T @ F


@dataclass
class DescentResult:
    point: np.ndarray
    residual: float
    # 'converged' (residual below abs_tol), 'stationary', 'exited' or 'maxiter'
    status: str
    iterations: int


def levenberg_marquardt(func, q0, inside, abs_tol: float, cfg: Config = DEFAULT) -> DescentResult:
    """Damped Gauss-Newton descent on |func|^2 restricted to a region.

    A start counts as 'exited' as soon as an accepted (decreasing) step leaves
    the region described by ``inside``.
    """
    q = np.asarray(q0, dtype=float).copy()
    F = func(q[None, :])[0]
    fn = float(np.linalg.norm(F))
    lam = 1e-3
    for it in range(cfg.max_iter):
        if fn <= abs_tol:
            return DescentResult(q, fn, "converged", it)
        J = numeric_jacobian(func, q, cfg.fd_step)
        A = J.T @ J
        g = J.T @ F
        mu = np.trace(A) / 4.0 + np.finfo(float).tiny
        accepted = False
        while lam < 1e16:
            delta = np.linalg.solve(A + lam * mu * np.eye(4), -g)
            cand = q + delta
            Fc = func(cand[None, :])[0]
            fc = float(np.linalg.norm(Fc))
            if fc < fn:
                if not inside(cand):
                    return DescentResult(cand, fc, "exited", it + 1)
                accepted = True
                break
            lam *= 4.0
        if not accepted:
            return DescentResult(q, fn, "stationary", it)
        small = np.linalg.norm(delta) <= 1e-15 * (1.0 + np.linalg.norm(q))
        q, F, fn = cand, Fc, fc
        lam = max(lam / 3.0, 1e-12)
        if small:
            status = "converged" if fn <= abs_tol else "stationary"
            return DescentResult(q, fn, status, it + 1)
    return DescentResult(q, fn, "converged" if fn <= abs_tol else "maxiter", cfg.max_iter)


# -- degenerate set ----------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    x_range: tuple
    y_range: tuple
    nx: int
    ny: int

    def __post_init__(self):
        x0, x1 = map(float, self.x_range)
        y0, y1 = map(float, self.y_range)
        if not all(math.isfinite(v) for v in (x0, x1, y0, y1)):
            raise ValueError("grid ranges must be finite")
        if y0 < 0 or y1 < 0:
            raise ValueError("grid y range must be >= 0")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        object.__setattr__(self, "x_range", (x0, x1))
        object.__setattr__(self, "y_range", (y0, y1))

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(*self.x_range, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(*self.y_range, self.ny)

    @property
    def max_radius(self) -> float:
        return max(math.hypot(x, y) for x in self.x_range for y in self.y_range)


def _split_field(f: RegularSeries, X: np.ndarray, Y: np.ndarray):
    """(b, c) arrays of shape X.shape + (4,) via powers of x + iy."""
    Z = X + 1j * Y
    P = np.ones_like(Z)
    b = np.zeros(X.shape + (4,))
    c = np.zeros(X.shape + (4,))
    for a in f.array:
        b += P.real[..., None] * a
        c += P.imag[..., None] * a
        P = P * Z
    return b, c


def _scale_field(f: RegularSeries, R: np.ndarray) -> np.ndarray:
    s = np.zeros_like(R)
    for a in f.array[::-1]:
        s = s * R + np.linalg.norm(a)
    return s


@dataclass
class DegenerateScan:
    grid: GridSpec
    abs_c: np.ndarray  # shape (ny, nx)
    rel_c: np.ndarray
    candidate_mask: np.ndarray
    candidates: list
    tol: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "abs_c"])
        for j, y in enumerate(self.grid.ys):
            for i, x in enumerate(self.grid.xs):
                w.writerow([repr(float(x)), repr(float(y)), repr(float(self.abs_c[j, i]))])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "tol": self.tol,
            "grid": {
                "x_range": list(self.grid.x_range),
                "y_range": list(self.grid.y_range),
                "nx": self.grid.nx,
                "ny": self.grid.ny,
            },
            "candidates": [s.to_json() for s in self.candidates],
            "filled_block": has_filled_block(self.candidate_mask),
        }


def has_filled_block(mask: np.ndarray, size: int = 3) -> bool:
    """True if some size x size window of ``mask`` is entirely True."""
    m = np.asarray(mask, dtype=bool)
    if m.shape[0] < size or m.shape[1] < size:
        return False
    win = np.lib.stride_tricks.sliding_window_view(m, (size, size))
    return bool(np.any(win.all(axis=(-1, -2))))


def _bisect(fun, lo: float, hi: float, flo: float, iters: int = 80) -> float:
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = fun(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def degenerate_scan(f: RegularSeries, grid: GridSpec, tol: float = DEFAULT.degenerate_tol, cfg: Config = DEFAULT) -> DegenerateScan:
    """|c(x, y)| on a grid plus the spheres (y > 0) where c vanishes.

    Cells with |c| <= tol * scale are candidates directly; sign changes of a
    component of c between neighbouring grid nodes are refined by bisection
    along the grid line and kept when all of c vanishes at the refined point.
    """
    if not grid.max_radius < f.trust_radius:
        raise TrustRegionError()
    xs, ys = grid.xs, grid.ys
    X, Y = np.meshgrid(xs, ys)
    _, C = _split_field(f, X, Y)
    S = _scale_field(f, np.hypot(X, Y))
    abs_c = np.linalg.norm(C, axis=-1)
    rel = abs_c / np.maximum(S, np.finfo(float).tiny)
    mask = (rel <= tol) & (Y > 0)

    found = [(float(X[j, i]), float(Y[j, i])) for j, i in zip(*np.nonzero(mask))]

    def c_at(x, y):
        v = spherical_split(f, Sphere2(x, y))
        return v.c.to_array(), v.scale

    def refine(point_of, a, b, p):
        fun = lambda t: c_at(*point_of(t))[0][p]
        t = _bisect(fun, a, b, fun(a))
        cx, sc = c_at(*point_of(t))
        if np.linalg.norm(cx) <= tol * sc:
            found.append(point_of(t))

    for j, y in enumerate(ys):
        if y <= 0:
            continue
        for i in range(len(xs) - 1):
            for p in range(4):
                if C[j, i, p] * C[j, i + 1, p] < 0:
                    refine(lambda t, y=y: (t, float(y)), float(xs[i]), float(xs[i + 1]), p)
    for i, x in enumerate(xs):
        for j in range(len(ys) - 1):
            if ys[j] <= 0:
                continue
            for p in range(4):
                if C[j, i, p] * C[j + 1, i, p] < 0:
                    refine(lambda t, x=x: (float(x), t), float(ys[j]), float(ys[j + 1]), p)

    found.sort()
    cands: list = []
    for x, y in found:
        if y <= 0:
            continue
        if any(math.hypot(x - s.x, y - s.y) <= cfg.dedup_tol for s in cands):
            continue
        cands.append(Sphere2(x, y))
    return DegenerateScan(grid, abs_c, rel, mask, cands, tol)


# -- modulus principles --------------------------------------------------------

def _constant_report(kind: str) -> dict:
    return {"check": kind, "verdict": "constant", "passed": True}


def check_max_modulus(f: RegularSeries, ball_radius: float, n_samples: int = DEFAULT.samples,
                      seed: int = DEFAULT.seed, cfg: Config = DEFAULT) -> dict:
    """Seeded search for interior local maxima of |f| on B(0, ball_radius)."""
    if f.is_constant():
        return _constant_report("max-modulus")
    if not ball_radius <= f.trust_radius:
        raise TrustRegionError()
    R = float(ball_radius)
    rng = np.random.default_rng(seed)
    pts = random_in_ball(rng, n_samples, radius=R)
    vals = np.linalg.norm(evaluate_many(f, pts), axis=-1)
    order = np.argsort(-vals, kind="stable")[: cfg.starts]
    func = _fn(f)
    shell = R * (1.0 - 1e-9)
    interior, boundary, unfinished = [], 0, 0
    for idx in order:
        q = pts[idx].copy()
        val = float(np.sum(func(q[None, :])[0] ** 2))
        t = 0.1 * R
        for _ in range(cfg.max_iter * 5):
            g = grad_sq(func, q, cfg.fd_step)
            gn = np.linalg.norm(g)
            if gn == 0.0:
                break
            moved = False
            while t > 1e-14 * R:
                cand = q + t * g / gn
                if np.linalg.norm(cand) >= shell:
                    cand = cand * (shell / np.linalg.norm(cand))
                cv = float(np.sum(func(cand[None, :])[0] ** 2))
                if cv > val:
                    q, val, moved = cand, cv, True
                    t *= 2.0
                    break
                t *= 0.5
            if not moved or np.linalg.norm(q) >= shell * (1.0 - 1e-12):
                break
        else:
            unfinished += 1
            continue
        if np.linalg.norm(q) >= shell * (1.0 - 1e-6):
            boundary += 1
        else:
            interior.append({"point": q.tolist(), "abs_f": math.sqrt(val)})
    verdict = "violation" if interior else ("pass" if unfinished == 0 else "inconclusive")
    return {
        "check": "max-modulus",
        "verdict": verdict,
        "passed": not interior,
        "ball_radius": R,
        "samples": n_samples,
        "seed": seed,
        "runs": len(order),
        "reached_boundary": boundary,
        "unfinished": unfinished,
        "interior_maxima": interior,
        "max_sampled": float(vals.max()),
    }


def _local_min_candidates(func, pts: np.ndarray, vals: np.ndarray, h: float) -> np.ndarray:
    """Indices of samples whose 80-neighbourhood at spacing h is nowhere lower."""
    nb = pts[:, None, :] + h * NEIGHBOR_OFFSETS[None, :, :]
    nv = np.linalg.norm(func(nb.reshape(-1, 4)), axis=-1).reshape(len(pts), -1)
    return np.nonzero(np.all(nv >= vals[:, None], axis=1))[0]


def check_min_modulus(f: RegularSeries, ball_radius: float, n_samples: int = DEFAULT.samples,
                      seed: int = DEFAULT.seed, cfg: Config = DEFAULT) -> dict:
    """Find interior local minima of |f| on B(0, ball_radius); each must be a zero.

    Starting points are the samples that are grid-local minima (80-neighbour
    test at spacing 0.05 R) together with the lowest samples.  Each start is
    refined by damped Gauss-Newton descent on |f|^2; a converged interior end
    point is re-tested with the neighbour test and, if some neighbour is
    lower, the descent restarts from there.
    """
    if f.is_constant():
        return _constant_report("min-modulus")
    if not ball_radius <= f.trust_radius:
        raise TrustRegionError()
    R = float(ball_radius)
    rng = np.random.default_rng(seed)
    func = _fn(f)
    pts = random_in_ball(rng, n_samples, radius=R)
    vals = np.linalg.norm(func(pts), axis=-1)
    cand = _local_min_candidates(func, pts, vals, 0.05 * R)
    lowest = np.argsort(vals, kind="stable")[: cfg.starts]
    starts = list(dict.fromkeys(list(cand[np.argsort(vals[cand], kind="stable")][: 4 * cfg.starts]) + list(lowest)))

    inside = lambda q: np.linalg.norm(q) < R
    scale_R = scale(f, R)
    minima, exited, unresolved = [], 0, 0
    for idx in starts:
        q = pts[idx]
        for _restart in range(6):
            res = levenberg_marquardt(func, q, inside, abs_tol=1e-3 * cfg.min_modulus_tol * scale_R, cfg=cfg)
            if res.status == "exited":
                exited += 1
                break
            if res.status == "maxiter":
                unresolved += 1
                break
            h = 1e-4 * R
            nb = res.point + h * NEIGHBOR_OFFSETS
            nv = np.linalg.norm(func(nb), axis=-1)
            lower = nv < res.residual * (1.0 - 1e-12)
            if lower.any() and res.residual > 0.0:
                q = nb[int(np.argmin(nv))]
                continue
            minima.append(res)
            break
        else:
            unresolved += 1

    reported: list = []
    violations = 0
    for res in minima:
        p = res.point
        if any(np.linalg.norm(p - np.asarray(r["point"])) <= 1e-6 * max(1.0, R) for r in reported):
            continue
        s = scale(f, float(np.linalg.norm(p)))
        rel = res.residual / max(s, np.finfo(float).tiny)
        g = float(np.linalg.norm(grad_sq(func, p, cfg.fd_step)))
        ok = rel <= cfg.min_modulus_tol and g < 1e-5 * s * s
        violations += not ok
        reported.append({
            "point": p.tolist(),
            "abs_f": res.residual,
            "rel_abs_f": rel,
            "grad_norm": g,
            "is_zero": ok,
        })
    return {
        "check": "min-modulus",
        "verdict": "violation" if violations else "pass",
        "passed": violations == 0,
        "ball_radius": R,
        "samples": n_samples,
        "seed": seed,
        "starts": len(starts),
        "exited": exited,
        "unresolved": unresolved,
        "interior_minima": reported,
    }


# -- open mapping ----------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    center: Quaternion
    radius: float

    def contains(self, q: np.ndarray) -> bool:
        return float(np.linalg.norm(np.asarray(q) - self.center.to_array())) < self.radius

    def center_point(self) -> Quaternion:
        return self.center

    @property
    def max_radius(self) -> float:
        return norm(self.center) + self.radius

    def sample(self, rng, n: int) -> np.ndarray:
        return random_in_ball(rng, n, self.center.to_array(), self.radius)

    def to_json(self) -> dict:
        return {"kind": "ball", "center": self.center.to_list(), "radius": self.radius}


@dataclass(frozen=True)
class Circular:
    """C(S, r): points at distance < r from the sphere S."""

    sphere: Sphere2
    radius: float

    def contains(self, q: np.ndarray) -> bool:
        return self.sphere.distance(Quaternion.from_array(q)) < self.radius

    def center_point(self) -> Quaternion:
        return self.sphere.point(UNIT_I)

    @property
    def max_radius(self) -> float:
        return self.sphere.radius + self.radius

    def sample(self, rng, n: int) -> np.ndarray:
        v = rng.standard_normal((n, 3))
        v /= np.linalg.norm(v, axis=-1, keepdims=True)
        return self.sphere.points(v) + random_in_ball(rng, n, radius=self.radius)

    def to_json(self) -> dict:
        return {"kind": "circular", "sphere": self.sphere.to_json(), "radius": self.radius}


@dataclass
class CoverageReport:
    target_center: Quaternion
    epsilon: float
    probes: int
    solved: int
    max_residual: float
    verdict: str
    region: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "covered"

    def to_json(self) -> dict:
        return {
            "check": "open-mapping",
            "target_center": self.target_center.to_list(),
            "epsilon": self.epsilon,
            "probes": self.probes,
            "solved": self.solved,
            "max_residual": self.max_residual,
            "verdict": self.verdict,
            "passed": self.passed,
            "region": self.region,
            "failures": self.failures,
        }


def open_mapping_probe(f: RegularSeries, region, epsilon: float = DEFAULT.epsilon,
                       n_probes: int = DEFAULT.probes, seed: int = DEFAULT.seed,
                       targets: Optional[Sequence] = None, cfg: Config = DEFAULT) -> CoverageReport:
    """Try to solve f(q) = p inside ``region`` for targets p near p0 = f(center).

    Targets default to ``n_probes`` points uniform in B(p0, epsilon); pass
    ``targets`` to probe specific values instead.  The verdict is 'covered'
    when every target is hit with residual < coverage_tol * scale,
    'not-covered' when every failed target had all of its descents leave the
    region or stall at a nonzero stationary point, else 'inconclusive'.
    """
    if not region.max_radius < f.trust_radius:
        raise TrustRegionError()
    rng = np.random.default_rng(seed)
    p0 = evaluate(f, region.center_point())
    if targets is None:
        tgt = random_in_ball(rng, n_probes, p0.to_array(), epsilon)
    else:
        tgt = np.array([Quaternion.coerce(t).to_array() for t in targets], dtype=float).reshape(-1, 4)
    tol = cfg.coverage_tol * scale(f, region.max_radius)
    starts = np.concatenate([region.center_point().to_array()[None, :], region.sample(rng, max(cfg.starts - 1, 0))])
    solved, max_res, conclusive = 0, 0.0, True
    failures = []
    for n, p in enumerate(tgt):
        func = lambda pts, p=p: evaluate_many(f, pts) - p
        best, ok = math.inf, False
        statuses = []
        for q0 in starts:
            res = levenberg_marquardt(func, q0, region.contains, abs_tol=1e-3 * tol, cfg=cfg)
            statuses.append(res.status)
            if res.status != "exited":
                best = min(best, res.residual)
            if res.status != "exited" and res.residual < tol and region.contains(res.point):
                ok = True
                max_res = max(max_res, res.residual)
                break
        if ok:
            solved += 1
        else:
            if "maxiter" in statuses:
                conclusive = False
            failures.append({"probe": n, "target": p.tolist(), "best_residual": best if math.isfinite(best) else None,
                             "statuses": statuses})
    if solved == len(tgt):
        verdict = "covered"
    else:
        verdict = "not-covered" if conclusive else "inconclusive"
    return CoverageReport(p0, float(epsilon), len(tgt), solved, max_res, verdict, region.to_json(), failures)


# -- the q^2 + 1 counterexample -----------------------------------------------------

def counterexample_witness(I: ImaginaryUnit, K: ImaginaryUnit, n_samples: int = 100_000,
                           seed: int = DEFAULT.seed, tol: float = DEFAULT.witness_tol) -> dict:
    """Evidence that f(q) = q^2 + 1 maps B(I, 1/2) onto a non-open set.

    Checks f(I) = 0 and that samples whose image lies in the slice L_K (within
    ``tol``) have an image with K-component below ``tol``.  Half of the
    samples are uniform in the ball; the other half have their real part
    shrunk by a random factor 10^-t, t in [0, 14], which drives the image
    towards L_K so that the landing condition is actually exercised.
    """
    if abs(I.dot(K)) > 1e-9:
        raise NotOrthogonalError()
    f = RegularSeries.polynomial([1.0, 0.0, 1.0])
    Iq = I.as_quaternion()
    zero_residual = norm(evaluate(f, Iq))
    rng = np.random.default_rng(seed)
    pts = random_in_ball(rng, n_samples, Iq.to_array(), 0.5)
    half = n_samples // 2
    pts[half:, 0] *= 10.0 ** (-14.0 * rng.random(n_samples - half))
    vals = evaluate_many(f, pts)
    k = np.asarray(K.vector)
    im = vals[:, 1:]
    k_comp = im @ k
    perp = np.linalg.norm(im - k_comp[:, None] * k, axis=-1)
    landed = perp <= tol
    worst = float(np.max(np.abs(k_comp[landed]))) if landed.any() else 0.0
    ratio = float(np.max(np.abs(k_comp) / np.maximum(perp, np.finfo(float).tiny)))
    passed = zero_residual < 1e-12 and worst <= tol
    return {
        "check": "counterexample",
        "verdict": "pass" if passed else "violation",
        "passed": passed,
        "I": I.to_list(),
        "K": K.to_list(),
        "samples": n_samples,
        "seed": seed,
        "zero_residual": zero_residual,
        "landed_in_LK": int(landed.sum()),
        "max_K_component_landed": worst,
        "max_K_to_offslice_ratio": ratio,
        "tol": tol,
    }


# -- identity suite -------------------------------------------------------------------

def identity_suite(f: RegularSeries, g: Optional[RegularSeries] = None, n_points: int = 1000,
                   seed: int = DEFAULT.seed, radius: Optional[float] = None, order: int = 16,
                   tol: float = DEFAULT.eps_eq, cfg: Config = DEFAULT) -> dict:
    """Run the pointwise and coefficient identities at seeded random points.

    g defaults to f^c.  Points inside the guard band |f^s(q)| < guard_band *
    scale(f, |q|)^2 are skipped by the checks that divide by f^s(q) or f(q).
    """
    if g is None:
        g = regular_conjugate(f)
    if radius is None:
        radius = min(1.0, 0.9 * min(f.trust_radius, g.trust_radius))
    # the pointwise identities are exact for the stored partial sums; products of
    # truncated series would drop the tail and break them at O(|q|^(order+1))
    truncated = not (f.is_exact and g.is_exact)
    f_series = f
    f = RegularSeries.polynomial(f.coeffs)
    g = RegularSeries.polynomial(g.coeffs)
    rng = np.random.default_rng(seed)
    pts = random_in_ball(rng, n_points, radius=radius)
    fs = symmetrization(f)
    fc = regular_conjugate(f)

    names = ["product_evaluation", "reciprocal_evaluation", "transform_inverse", "spherical_split", "reciprocal_series"]
    stats = {n: {"max_rel_dev": 0.0, "checked": 0, "skipped": 0} for n in names}

    def record(name, dev):
        st = stats[name]
        st["checked"] += 1
        st["max_rel_dev"] = max(st["max_rel_dev"], float(dev))

    for row in pts:
        q = Quaternion.from_array(row)
        r = norm(q)
        sc = scale(f, r)
        f_q = evaluate(f, q)
        try:
            lhs, rhs = product_eval_identity(f, g, q, eps=cfg.guard_band)
        except VanishesAtPointError:
            stats["product_evaluation"]["skipped"] += 1
        else:
            record("product_evaluation", relative_deviation(lhs, rhs))
        if norm(evaluate(fs, q)) > cfg.guard_band * sc * sc:
            lhs, rhs = reciprocal_eval_identity(f, q, eps=0.0)
            record("reciprocal_evaluation", relative_deviation(lhs, rhs))
            back = transform_T(fc, transform_T(f, q, eps=0.0), eps=0.0)
            record("transform_inverse", norm(back - q) / (1.0 + r))
        else:
            stats["reciprocal_evaluation"]["skipped"] += 1
            stats["transform_inverse"]["skipped"] += 1
        sd = slice_decompose(q)
        v = spherical_split(f, Sphere2(sd.x, sd.y))
        unit = sd.unit or UNIT_I
        record("spherical_split", norm(f_q - value_at(v, unit)) / max(sc, np.finfo(float).tiny))

    try:
        rs = reciprocal_series(f_series, order)
    except ReciprocalUndefinedError:
        stats["reciprocal_series"]["skipped"] = 1
    else:
        n = rs.order + 1
        one = np.zeros((n, 4))
        one[0, 0] = 1.0
        fa = np.zeros(n)
        m = min(n, len(f.coeffs))
        fa[:m] = np.linalg.norm(f.array[:m], axis=-1)
        # |sum_k a_k r_(n-k)| can only be trusted relative to sum_k |a_k||r_(n-k)|
        bound = np.maximum(np.convolve(fa, np.linalg.norm(rs.array, axis=-1))[:n], 1.0)
        for prod in (regular_product(f, rs), regular_product(rs, f)):
            arr = np.zeros((n, 4))
            arr[: len(prod.coeffs)] = prod.array[:n]
            record("reciprocal_series", float(np.max(np.linalg.norm(arr - one, axis=-1) / bound)))

    for st in stats.values():
        if st["checked"] == 0:
            st["status"] = "skipped"
        else:
            st["status"] = "pass" if st["max_rel_dev"] < tol else "fail"
    passed = all(st["status"] != "fail" for st in stats.values())
    return {
        "check": "identities",
        "verdict": "pass" if passed else "violation",
        "passed": passed,
        "seed": seed,
        "n_points": n_points,
        "radius": radius,
        "tolerance": tol,
        "truncated_inputs": truncated,
        "identities": stats,
    }


__all__ = [
    "GridSpec",
    "DegenerateScan",
    "CoverageReport",
    "Ball",
    "Circular",
    "degenerate_scan",
    "has_filled_block",
    "check_max_modulus",
    "check_min_modulus",
    "open_mapping_probe",
    "counterexample_witness",
    "identity_suite",
    "levenberg_marquardt",
    "numeric_jacobian",
]
