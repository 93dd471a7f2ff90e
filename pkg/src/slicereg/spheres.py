"""Values of a regular function on the spheres x + yS.

On every such sphere f(x + yI) = b + I c with b, c independent of I.  This
module computes (b, c), classifies zeros on a sphere, detects degenerate
spheres (c = 0) and locates the extrema of |f| on a sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import DEFAULT
from .errors import NotASphereError
from .quaternion import ImaginaryUnit, Quaternion, inverse, norm, qmul, slice_point
from .series import RegularSeries, _check_trust, scale


@dataclass(frozen=True)
class Sphere2:
    """The orbit x + yS; y is stored as |y| and y = 0 is the real point x."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", abs(float(self.y)))

    @property
    def radius(self) -> float:
        """|x + yI|, the same for every I."""
        return math.hypot(self.x, self.y)

    @property
    def is_real(self) -> bool:
        return self.y == 0.0

    def point(self, unit: ImaginaryUnit) -> Quaternion:
        return slice_point(self.x, self.y, unit)

    def points(self, units: np.ndarray) -> np.ndarray:
        """x + y*u for an ``(n, 3)`` array of unit vectors."""
        units = np.asarray(units, dtype=float)
        out = np.empty(units.shape[:-1] + (4,))
        out[..., 0] = self.x
        out[..., 1:] = self.y * units
        return out

    def distance(self, q: Quaternion) -> float:
        """Euclidean distance from q to the sphere."""
        return math.hypot(q.w - self.x, math.hypot(q.x, q.y, q.z) - self.y)

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y}


@dataclass(frozen=True)
class SphericalValue:
    """f(x + yI) = b + I c on ``sphere``; ``scale`` is scale(f, sphere.radius)."""

    b: Quaternion
    c: Quaternion
    sphere: Sphere2
    scale: float = 1.0

    def to_json(self) -> dict:
        return {"b": self.b.to_list(), "c": self.c.to_list(), "sphere": self.sphere.to_json()}


def slice_powers(x: float, y: float, n: int):
    """Real arrays (x_k, y_k), k < n, with (x + yI)^k = x_k + y_k I."""
    z = np.empty(n, dtype=complex)
    if n:
        z[0] = 1.0
        w = complex(x, y)
        for k in range(1, n):
            z[k] = z[k - 1] * w
    return z.real, z.imag


def spherical_split(f: RegularSeries, s: Sphere2) -> SphericalValue:
    _check_trust(f, s.radius)
    xs, ys = slice_powers(s.x, s.y, len(f.coeffs))
    A = f.array
    b = xs @ A if len(A) else np.zeros(4)
    c = ys @ A if len(A) else np.zeros(4)
    return SphericalValue(Quaternion.from_array(b), Quaternion.from_array(c), s, scale(f, s.radius))


def value_at(v: SphericalValue, unit: ImaginaryUnit) -> Quaternion:
    """b + I c (I multiplies c from the left)."""
    return v.b + unit.as_quaternion() * v.c


def is_degenerate(f: RegularSeries, s: Sphere2, tol: float = DEFAULT.degenerate_tol) -> bool:
    if s.y <= 0:
        raise NotASphereError()
    v = spherical_split(f, s)
    return norm(v.c) <= tol * v.scale


@dataclass(frozen=True)
class ZeroOnSphere:
    """Zero structure of f on one sphere: 'whole', 'point' or 'none'."""

    kind: str
    point: Optional[Quaternion] = None
    # distance of -b c^-1 from the unit sphere (diagnostic; None when c ~ 0)
    unit_defect: Optional[float] = None

    def to_json(self) -> dict:
        d = {"kind": self.kind}
        if self.point is not None:
            d["point"] = self.point.to_list()
        if self.unit_defect is not None:
            d["unit_defect"] = self.unit_defect
        return d


def sphere_zero(
    v: SphericalValue,
    zero_tol: float = DEFAULT.zero_tol,
    unit_tol: float = DEFAULT.unit_tol,
) -> ZeroOnSphere:
    """Solve b + I c = 0 for I in S.

    |c| and |b| are compared with ``zero_tol * v.scale``; the candidate unit
    I* = -b c^-1 must have |Re I*| and ||I*| - 1| below ``unit_tol``.
    """
    tol = zero_tol * max(v.scale, np.finfo(float).tiny)
    if norm(v.c) <= tol:
        return ZeroOnSphere("whole" if norm(v.b) <= tol else "none")
    cand = -(v.b * inverse(v.c))
    defect = math.hypot(cand.w, norm(cand.imag) - 1.0)
    if v.sphere.y == 0.0 or defect > unit_tol:
        # on the real axis c vanishes with y, so a genuine zero there is caught above
        return ZeroOnSphere("none", unit_defect=defect)
    unit = ImaginaryUnit.from_quaternion(cand)
    return ZeroOnSphere("point", v.sphere.point(unit), defect)


@dataclass(frozen=True)
class ExtremaReport:
    min_unit: Optional[ImaginaryUnit]
    min_value: float
    max_unit: Optional[ImaginaryUnit]
    max_value: float
    constant_modulus: bool

    def to_json(self) -> dict:
        return {
            "min": {"unit": self.min_unit.to_list() if self.min_unit else None, "value": self.min_value},
            "max": {"unit": self.max_unit.to_list() if self.max_unit else None, "value": self.max_value},
            "constant_modulus": self.constant_modulus,
        }


def modulus_extrema_on_sphere(v: SphericalValue, tol: float = DEFAULT.eps_strict) -> ExtremaReport:
    """Extrema of |b + I c| over I in S.

    |b + Ic|^2 = |b|^2 + |c|^2 - 2 <I, Im(c conj(b))>, so the minimum sits at
    the direction of Im(c conj(b)) and the maximum at its antipode.
    """
    b, c = v.b, v.c
    w = (c * b.conjugate()).imag
    wn = norm(w)
    base = b.norm2() + c.norm2()
    if wn <= tol * max(norm(b) * norm(c), np.finfo(float).tiny):
        m = math.sqrt(base)
        return ExtremaReport(None, m, None, m, True)
    unit = ImaginaryUnit.from_quaternion(w)
    # direct evaluation at the minimizer; base - 2|w| cancels badly near zeros
    lo = norm(b + unit.as_quaternion() * c)
    hi = math.sqrt(base + 2.0 * wn)
    return ExtremaReport(unit, lo, -unit, hi, False)


def modulus_on_units(v: SphericalValue, units: np.ndarray) -> np.ndarray:
    """|b + I c| for an ``(n, 3)`` array of unit vectors (vectorized helper)."""
    units = np.asarray(units, dtype=float)
    uq = np.zeros(units.shape[:-1] + (4,))
    uq[..., 1:] = units
    vals = v.b.to_array() + qmul(uq, v.c.to_array())
    return np.linalg.norm(vals, axis=-1)


__all__ = [
    "Sphere2",
    "SphericalValue",
    "ZeroOnSphere",
    "ExtremaReport",
    "spherical_split",
    "value_at",
    "is_degenerate",
    "sphere_zero",
    "modulus_extrema_on_sphere",
    "modulus_on_units",
    "slice_powers",
]
