"""Hamilton quaternions, imaginary units and the slice decomposition q = x + yI.

Scalar values are immutable :class:`Quaternion` objects.  Hot loops (sampling,
grid scans, descents) work on ``(..., 4)`` float arrays laid out as
``[w, x, y, z]`` through :func:`qmul`, :func:`qconj` and friends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT
from .errors import NonInvertibleError


@dataclass(frozen=True)
class Quaternion:
    """w + x i + y j + z k with float components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"quaternion component {name} is not finite: {v}")
            object.__setattr__(self, name, v)

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Accept a Quaternion, a real number, a complex number or a 4-sequence."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, np.floating, np.integer)):
            return cls(float(value))
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        seq = list(value)
        if len(seq) != 4:
            raise ValueError(f"expected 4 components, got {len(seq)}")
        return cls(*seq)

    # -- components --------------------------------------------------------
    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    @property
    def vector(self) -> tuple:
        return (self.x, self.y, self.z)

    def to_list(self) -> list:
        return [self.w, self.x, self.y, self.z]

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def is_real(self, tol: float = 0.0) -> bool:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z) <= tol

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return hamilton_mul(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        return NotImplemented

    def __rmul__(self, other):
        # only reals reach here; reals are central
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * (1.0 / float(other))
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return conjugate(self)

    def norm(self) -> float:
        return norm(self)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def __abs__(self):
        return norm(self)

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _as_quat(v) -> Optional[Quaternion]:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float, np.floating, np.integer)):
        return Quaternion(float(v))
    return None


ZERO = Quaternion(0.0)
ONE = Quaternion(1.0)
QI = Quaternion(0.0, 1.0, 0.0, 0.0)
QJ = Quaternion(0.0, 0.0, 1.0, 0.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


def hamilton_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product pq (ij = k, jk = i, ki = j)."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def conjugate(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def norm(q: Quaternion) -> float:
    # hypot avoids overflow/underflow of the squared sum
    return math.hypot(q.w, q.x, q.y, q.z)


def inverse(q: Quaternion, eps_inv: float = DEFAULT.eps_inv) -> Quaternion:
    n = norm(q)
    if not n > eps_inv:
        raise NonInvertibleError()
    # scale first so tiny or huge q do not under/overflow n**2
    c = conjugate(q) / n
    return c / n


def dot(p: Quaternion, q: Quaternion) -> float:
    """Euclidean inner product on R^4."""
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z


def distance(p: Quaternion, q: Quaternion) -> float:
    return norm(p - q)


def isclose(p: Quaternion, q: Quaternion, rel: float = DEFAULT.eps_eq, abs_tol: float = 0.0) -> bool:
    return norm(p - q) <= max(abs_tol, rel * max(norm(p), norm(q)))


@dataclass(frozen=True)
class ImaginaryUnit:
    """A point u1 i + u2 j + u3 k of the unit sphere; normalized on construction."""

    u1: float
    u2: float
    u3: float

    def __post_init__(self):
        n = math.hypot(self.u1, self.u2, self.u3)
        if not (math.isfinite(n) and n > 0.0):
            raise ValueError("imaginary unit needs a nonzero finite direction")
        object.__setattr__(self, "u1", float(self.u1) / n)
        object.__setattr__(self, "u2", float(self.u2) / n)
        object.__setattr__(self, "u3", float(self.u3) / n)

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "ImaginaryUnit":
        """Direction of the imaginary part of q (its real part is ignored)."""
        return cls(q.x, q.y, q.z)

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.u1, self.u2, self.u3)

    @property
    def vector(self) -> tuple:
        return (self.u1, self.u2, self.u3)

    def dot(self, other: "ImaginaryUnit") -> float:
        return self.u1 * other.u1 + self.u2 * other.u2 + self.u3 * other.u3

    def __neg__(self):
        return ImaginaryUnit(-self.u1, -self.u2, -self.u3)

    def to_list(self) -> list:
        return [self.u1, self.u2, self.u3]


UNIT_I = ImaginaryUnit(1.0, 0.0, 0.0)
UNIT_J = ImaginaryUnit(0.0, 1.0, 0.0)
UNIT_K = ImaginaryUnit(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SliceCoordinates:
    """q = x + y * unit with y >= 0; unit is None exactly for real q."""

    x: float
    y: float
    unit: Optional[ImaginaryUnit]

    def __post_init__(self):
        if self.y < 0:
            raise ValueError("slice coordinate y must be >= 0")
        if (self.unit is None) != (self.y == 0.0):
            raise ValueError("unit must be absent exactly when y == 0")

    def reassemble(self) -> Quaternion:
        if self.unit is None:
            return Quaternion(self.x)
        return Quaternion(self.x, self.y * self.unit.u1, self.y * self.unit.u2, self.y * self.unit.u3)


def slice_decompose(q: Quaternion) -> SliceCoordinates:
    y = math.hypot(q.x, q.y, q.z)
    if y == 0.0:
        return SliceCoordinates(q.w, 0.0, None)
    return SliceCoordinates(q.w, y, ImaginaryUnit(q.x, q.y, q.z))


def slice_point(x: float, y: float, unit: ImaginaryUnit) -> Quaternion:
    """x + y*unit, for any real y (negative y means the antipodal unit)."""
    return Quaternion(x, y * unit.u1, y * unit.u2, y * unit.u3)


# -- array kernels ---------------------------------------------------------

def qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product of broadcastable ``(..., 4)`` arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        (
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ),
        axis=-1,
    )


def qconj(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.asarray(q, dtype=float), axis=-1)


def qinv(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    n2 = np.sum(q * q, axis=-1, keepdims=True)
    return qconj(q) / n2


def as_array(qs: Sequence[Quaternion]) -> np.ndarray:
    if len(qs) == 0:
        return np.zeros((0, 4))
    return np.array([[q.w, q.x, q.y, q.z] for q in qs], dtype=float)


def fibonacci_sphere(n: int) -> np.ndarray:
    """n nearly uniform unit vectors on S^2 (golden-angle spiral), shape (n, 3)."""
    k = np.arange(n, dtype=float) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = k * math.pi * (3.0 - math.sqrt(5.0))
    return np.stack((r * np.cos(phi), r * np.sin(phi), z), axis=-1)


def random_units(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_in_ball(rng: np.random.Generator, n: int, center=None, radius: float = 1.0) -> np.ndarray:
    """n points uniform in the 4-ball B(center, radius), shape (n, 4)."""
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    r = radius * rng.random(n) ** 0.25
    pts = v * r[:, None]
    if center is not None:
        pts = pts + np.asarray(center, dtype=float)
    return pts
