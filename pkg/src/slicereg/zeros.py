"""Zero sets of regular functions.

The symmetrization f^s has real coefficients and vanishes exactly on the
spheres x + yS carrying a zero of f.  Its complex roots on the standard slice
therefore enumerate candidate spheres; each candidate is then classified with
the spherical split b + Ic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Config
from .errors import RootFinderError, TrustRegionError, ZeroFunctionError
from .quaternion import Quaternion, fibonacci_sphere, norm, qmul
from .series import (
    RegularSeries,
    evaluate,
    evaluate_many,
    real_coefficients,
    regular_conjugate,
    scale,
    symmetrization,
)
from .spheres import Sphere2, ZeroOnSphere, sphere_zero, spherical_split


def real_polynomial_roots(coeffs) -> np.ndarray:
    """All complex roots of sum coeffs[n] z^n (ascending order) via companion eigenvalues."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if len(c) <= 1:
        return np.zeros(0, dtype=complex)
    roots = np.roots(c[::-1])
    if not np.all(np.isfinite(roots)):
        raise RootFinderError(diagnostics={"coeffs": c.tolist()})
    return roots


def _polish_simple(s: np.ndarray, z: complex, steps: int = 3) -> complex:
    """A few guarded Newton steps on the real polynomial s (ascending)."""
    p = np.polynomial.Polynomial(s)
    dp = p.deriv()
    best, best_val = z, abs(p(z))
    for _ in range(steps):
        d = dp(best)
        if d == 0:
            break
        cand = best - p(best) / d
        val = abs(p(cand))
        if not val < best_val:
            break
        best, best_val = cand, val
    return best


def _polish_common_root(A: np.ndarray, z: complex, iters: int = 60) -> tuple:
    """Gauss-Newton for a common complex root of the four component polynomials.

    Component p of f is the real polynomial sum a_n^p z^n; a sphere on which f
    vanishes identically is a common root of all four.  Returns (z, residual).
    """
    comps = [np.polynomial.Polynomial(A[:, p]) for p in range(4)]
    derivs = [c.deriv() for c in comps]

    def resid(w):
        return math.sqrt(sum(abs(c(w)) ** 2 for c in comps))

    best, best_r = z, resid(z)
    for _ in range(iters):
        vals = [c(best) for c in comps]
        ds = [d(best) for d in derivs]
        den = sum(abs(d) ** 2 for d in ds)
        if den == 0:
            break
        step = -sum(d.conjugate() * v for d, v in zip(ds, vals)) / den
        cand = best + step
        r = resid(cand)
        if not r < best_r:
            break
        best, best_r = cand, r
        if abs(step) <= 1e-16 * max(1.0, abs(best)):
            break
    return best, best_r


@dataclass(frozen=True)
class _Candidate:
    sphere: Sphere2
    multiplicity_unknown: bool


def _sphere_candidates(f: RegularSeries, search_radius: float, cfg: Config = DEFAULT) -> list:
    if f.is_zero():
        raise ZeroFunctionError()
    if f.order is not None and not search_radius < f.trust_radius:
        raise TrustRegionError(
            f"search radius {search_radius} not inside trust radius {f.trust_radius}"
        )
    s = np.trim_zeros(real_coefficients(symmetrization(f)), "b")
    roots = real_polynomial_roots(s)
    if len(roots) == 0:
        return []
    # canonical sphere parameters (x, |y|)
    pts = [complex(r.real, abs(r.imag)) for r in roots if abs(r) < search_radius]
    pts.sort(key=lambda z: (z.real, z.imag))

    clusters: list = []
    for z in pts:
        tol = 1e-6 * max(1.0, abs(z))
        for cl in clusters:
            if abs(cl[0] - z) <= tol:
                cl.append(z)
                break
        else:
            clusters.append([z])

    A = f.array
    fscale = lambda z: scale(f, abs(z))
    out = []
    for cl in clusters:
        z = sum(cl) / len(cl)
        if len(cl) == 1 and z.imag > 0:
            z = _polish_simple(s, z)
        else:
            zc, r = _polish_common_root(A, z)
            if r <= cfg.eps_strict * fscale(zc):
                z = zc
        y = abs(z.imag)
        if y <= 1e-12 * max(1.0, abs(z)):
            y = 0.0
        root_val = abs(np.polynomial.polynomial.polyval(complex(z.real, y), s))
        bound = 1e-8 * float(np.sum(np.abs(s))) * max(1.0, abs(z)) ** (len(s) - 1)
        if root_val > bound:
            raise RootFinderError(
                diagnostics={"root": [z.real, y], "residual": root_val, "bound": bound}
            )
        sph = Sphere2(z.real, y)
        # a simple zero sphere contributes the pair z, conj(z); real zeros of f are
        # always double roots of f^s and are not flagged
        out.append(_Candidate(sph, y > 0 and len(cl) > 2))

    deduped: list = []
    for c in out:
        if any(math.hypot(c.sphere.x - d.sphere.x, c.sphere.y - d.sphere.y) <= cfg.dedup_tol for d in deduped):
            continue
        deduped.append(c)
    return deduped


def symmetrization_roots(f: RegularSeries, search_radius: float = math.inf, cfg: Config = DEFAULT) -> list:
    """Spheres x + yS (as Sphere2, y >= 0) inside the search radius on which f^s vanishes."""
    return [c.sphere for c in _sphere_candidates(f, search_radius, cfg)]


def jacobian(f: RegularSeries, q: Quaternion) -> np.ndarray:
    """4x4 real Jacobian of q -> f(q); column m is the derivative along basis unit m."""
    qa = q.to_array()
    acc = np.zeros(4)
    dacc = np.zeros((4, 4))
    H = np.eye(4)
    for a in f.array[::-1]:
        # d(q * acc) = h * acc + q * d(acc)
        dacc = qmul(H, acc) + qmul(qa, dacc)
        acc = qmul(qa, acc) + a
    return dacc.T


def polish_point_zero(f: RegularSeries, q: Quaternion, iters: int = 20) -> Quaternion:
    """Newton on f: R^4 -> R^4, keeping only steps that reduce |f|."""
    best, best_val = q, norm(evaluate(f, q))
    for _ in range(iters):
        if best_val == 0.0:
            break
        J = jacobian(f, best)
        step, *_ = np.linalg.lstsq(J, -evaluate(f, best).to_array(), rcond=None)
        cand = Quaternion.from_array(best.to_array() + step)
        val = norm(evaluate(f, cand))
        if not val < best_val:
            break
        best, best_val = cand, val
    return best


@dataclass
class ZeroSet:
    isolated_points: list = field(default_factory=list)
    zero_spheres: list = field(default_factory=list)
    # scale-relative residuals: one per point, then one per sphere (max over samples)
    point_residuals: list = field(default_factory=list)
    sphere_residuals: list = field(default_factory=list)
    spurious: list = field(default_factory=list)
    multiplicity_unknown: list = field(default_factory=list)
    approximate: bool = False

    @property
    def residuals(self) -> list:
        return self.point_residuals + self.sphere_residuals

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "points": [p.to_list() for p in self.isolated_points],
            "spheres": [s.to_json() for s in self.zero_spheres],
            "residuals": self.residuals,
            "approximate": self.approximate,
            "multiplicity_unknown": [s.to_json() for s in self.multiplicity_unknown],
            "spurious": self.spurious,
        }


def _sphere_residual(f: RegularSeries, s: Sphere2, n: int = 20) -> float:
    pts = s.points(fibonacci_sphere(n))
    vals = np.linalg.norm(evaluate_many(f, pts), axis=-1)
    return float(np.max(vals)) / max(scale(f, s.radius), np.finfo(float).tiny)


def zero_set(f: RegularSeries, search_radius: float = math.inf, cfg: Config = DEFAULT) -> ZeroSet:
    zs = ZeroSet(approximate=not f.is_exact)
    for cand in _sphere_candidates(f, search_radius, cfg):
        s = cand.sphere
        v = spherical_split(f, s)
        z = sphere_zero(v, cfg.zero_tol, cfg.unit_tol)
        if cand.multiplicity_unknown:
            zs.multiplicity_unknown.append(s)
        if z.kind == "whole" and s.y > 0:
            zs.zero_spheres.append(s)
            zs.sphere_residuals.append(_sphere_residual(f, s))
        elif z.kind == "whole" or z.kind == "point":
            p = Quaternion(s.x) if z.kind == "whole" else polish_point_zero(f, z.point)
            zs.isolated_points.append(p)
            zs.point_residuals.append(norm(evaluate(f, p)) / max(scale(f, norm(p)), np.finfo(float).tiny))
        else:
            zs.spurious.append(
                {
                    "sphere": s.to_json(),
                    "abs_b": norm(v.b),
                    "abs_c": norm(v.c),
                    "unit_defect": z.unit_defect,
                }
            )
    return zs


def conjugate_zero_check(f: RegularSeries, s: Sphere2, cfg: Config = DEFAULT) -> tuple:
    """Zero classification ('none' | 'point' | 'whole') of f and of f^c on s."""
    kf = sphere_zero(spherical_split(f, s), cfg.zero_tol, cfg.unit_tol).kind
    kc = sphere_zero(spherical_split(regular_conjugate(f), s), cfg.zero_tol, cfg.unit_tol).kind
    return kf, kc


__all__ = [
    "ZeroSet",
    "ZeroOnSphere",
    "real_polynomial_roots",
    "symmetrization_roots",
    "zero_set",
    "conjugate_zero_check",
    "jacobian",
    "polish_point_zero",
]
