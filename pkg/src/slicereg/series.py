"""Regular functions as right-coefficient power series f(q) = sum q^n a_n.

A :class:`RegularSeries` is either an exact polynomial (``order is None``) or
a truncation valid modulo q^(order+1).  The regular calculus lives here:
the *-product, regular conjugate, symmetrization, reciprocal and the point
transform T_f, plus the two pointwise evaluation identities used as
cross-checks.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT
from .errors import (
    ConsistencyError,
    FunctionFileError,
    OnZeroSetError,
    ReciprocalUndefinedError,
    VanishesAtPointError,
)
from .quaternion import Quaternion, conjugate, inverse, norm, qmul

FORMAT_VERSION = 1


class TrustRadiusWarning(UserWarning):
    """Evaluation of a truncated series outside its trust radius."""


@dataclass(frozen=True, eq=False)
class RegularSeries:
    """Coefficients a_0..a_N of sum q^n a_n.

    ``order=None`` marks an exact polynomial (trailing zeros are trimmed, the
    zero function is the empty list).  An integer ``order`` marks a truncated
    series known modulo q^(order+1); it always stores order+1 coefficients.
    """

    coeffs: tuple
    order: Optional[int] = None
    trust_radius: float = math.inf

    def __post_init__(self):
        cs = [Quaternion.coerce(c) for c in self.coeffs]
        if self.order is None:
            while cs and cs[-1] == Quaternion():
                cs.pop()
        else:
            if self.order < 0:
                raise ValueError("truncation order must be >= 0")
            cs = cs[: self.order + 1] + [Quaternion()] * max(0, self.order + 1 - len(cs))
        if not self.trust_radius > 0:
            raise ValueError("trust_radius must be > 0")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trust_radius", float(self.trust_radius))

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "RegularSeries":
        return cls(tuple(coeffs))

    @classmethod
    def truncated(cls, coeffs: Sequence, order: Optional[int] = None, trust_radius: float = math.inf) -> "RegularSeries":
        order = len(coeffs) - 1 if order is None else order
        return cls(tuple(coeffs), order, trust_radius)

    @classmethod
    def constant(cls, a) -> "RegularSeries":
        return cls((a,))

    @classmethod
    def from_array(cls, arr, order=None, trust_radius=math.inf) -> "RegularSeries":
        arr = np.asarray(arr, dtype=float).reshape(-1, 4)
        return cls(tuple(Quaternion.from_array(r) for r in arr), order, trust_radius)

    @property
    def flavor(self) -> str:
        return "polynomial" if self.order is None else "truncated"

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def degree(self) -> Optional[int]:
        """Polynomial degree; None for the zero function.  For truncations, the
        index of the last nonzero stored coefficient."""
        nz = [n for n, a in enumerate(self.coeffs) if a != Quaternion()]
        return nz[-1] if nz else None

    @cached_property
    def array(self) -> np.ndarray:
        if not self.coeffs:
            return np.zeros((0, 4))
        return np.array([c.to_list() for c in self.coeffs], dtype=float)

    def is_zero(self) -> bool:
        return all(c == Quaternion() for c in self.coeffs)

    def is_constant(self) -> bool:
        return all(c == Quaternion() for c in self.coeffs[1:])

    def has_real_coefficients(self, tol: float = 0.0) -> bool:
        return all(c.is_real(tol) for c in self.coeffs)

    def coefficient(self, n: int) -> Quaternion:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Quaternion()

    def same_coefficients(self, other: "RegularSeries", tol: float = 0.0) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(norm(self.coefficient(k) - other.coefficient(k)) <= tol for k in range(n))

    def __call__(self, q) -> Quaternion:
        return evaluate(self, q)

    def __mul__(self, other):
        if isinstance(other, RegularSeries):
            return regular_product(self, other)
        return NotImplemented

    def __repr__(self):
        body = ", ".join(str(c.to_list()) for c in self.coeffs)
        extra = "" if self.order is None else f", order={self.order}, trust_radius={self.trust_radius}"
        return f"RegularSeries([{body}]{extra})"

    # -- file format --------------------------------------------------------
    def to_json_dict(self) -> dict:
        d = {
            "format_version": FORMAT_VERSION,
            "coeffs": [c.to_list() for c in self.coeffs],
            "flavor": self.flavor,
        }
        if self.order is not None:
            d["order"] = self.order
        if math.isfinite(self.trust_radius):
            d["trust_radius"] = self.trust_radius
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d) -> "RegularSeries":
        return parse_function(d)

    @classmethod
    def loads(cls, text: str) -> "RegularSeries":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FunctionFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return parse_function(d)


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FunctionFileError(f"{where}: expected a number, got {json.dumps(v)}")
    if not math.isfinite(v):
        raise FunctionFileError(f"{where}: number is not finite")
    return float(v)


def parse_function(d) -> RegularSeries:
    """Validate a decoded function-file document."""
    if not isinstance(d, dict):
        raise FunctionFileError("top level: expected a JSON object")
    version = d.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FunctionFileError(f"format_version: unsupported value {version!r}")
    if "coeffs" not in d:
        raise FunctionFileError("coeffs: missing field")
    raw = d["coeffs"]
    if not isinstance(raw, list):
        raise FunctionFileError("coeffs: expected a list of [w,x,y,z] arrays")
    coeffs = []
    for n, c in enumerate(raw):
        if not isinstance(c, list) or len(c) != 4:
            raise FunctionFileError(f"coeffs[{n}]: expected an array of 4 numbers")
        coeffs.append(Quaternion(*(_number(v, f"coeffs[{n}][{m}]") for m, v in enumerate(c))))
    flavor = d.get("flavor", "polynomial")
    if flavor not in ("polynomial", "truncated"):
        raise FunctionFileError(f"flavor: expected 'polynomial' or 'truncated', got {flavor!r}")
    trust = math.inf
    if d.get("trust_radius") is not None:
        trust = _number(d["trust_radius"], "trust_radius")
        if trust <= 0:
            raise FunctionFileError("trust_radius: must be > 0")
    if flavor == "polynomial":
        if "order" in d and d["order"] is not None:
            raise FunctionFileError("order: only allowed with flavor 'truncated'")
        return RegularSeries(tuple(coeffs), None, trust)
    order = d.get("order")
    if order is None:
        order = len(coeffs) - 1
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise FunctionFileError("order: expected a non-negative integer")
    if len(coeffs) > order + 1:
        raise FunctionFileError(f"coeffs: {len(coeffs)} entries exceed order {order}")
    return RegularSeries(tuple(coeffs), order, trust)


# -- evaluation ------------------------------------------------------------

def scale(f: RegularSeries, r: float) -> float:
    """sum |a_n| r^n, the reference magnitude for zero tests at radius r."""
    s = 0.0
    for a in reversed(f.coeffs):
        s = s * r + norm(a)
    return s


def _check_trust(f: RegularSeries, radius: float):
    if f.order is not None and radius >= f.trust_radius:
        warnings.warn(
            f"|q|={radius:.6g} is outside the trust radius {f.trust_radius:.6g} of a truncated series",
            TrustRadiusWarning,
            stacklevel=3,
        )


def evaluate(f: RegularSeries, q) -> Quaternion:
    """Horner evaluation a_0 + q(a_1 + q(a_2 + ...))."""
    q = Quaternion.coerce(q)
    _check_trust(f, norm(q))
    acc = Quaternion()
    for a in reversed(f.coeffs):
        acc = q * acc + a
    return acc


def evaluate_many(f: RegularSeries, points) -> np.ndarray:
    """Vectorized evaluation at ``(..., 4)`` points; returns the same shape."""
    pts = np.asarray(points, dtype=float)
    if f.order is not None and pts.size:
        _check_trust(f, float(np.max(np.linalg.norm(pts, axis=-1))))
    acc = np.zeros(pts.shape)
    for a in f.array[::-1]:
        acc = qmul(pts, acc) + a
    return acc


# -- regular calculus ------------------------------------------------------

def _combine_meta(f: RegularSeries, g: RegularSeries):
    orders = [o for o in (f.order, g.order) if o is not None]
    return (min(orders) if orders else None), min(f.trust_radius, g.trust_radius)


def regular_product(f: RegularSeries, g: RegularSeries) -> RegularSeries:
    """f * g with c_n = sum_k a_k b_(n-k); a_k stays on the left."""
    order, trust = _combine_meta(f, g)
    A, B = f.array, g.array
    if len(A) == 0 or len(B) == 0:
        return RegularSeries((), order, trust)
    n_out = len(A) + len(B) - 1
    if order is not None:
        n_out = min(n_out, order + 1)
    C = np.zeros((n_out, 4))
    for k in range(min(len(A), n_out)):
        m = min(len(B), n_out - k)
        C[k : k + m] += qmul(A[k], B[:m])
    return RegularSeries.from_array(C, order, trust)


def regular_conjugate(f: RegularSeries) -> RegularSeries:
    return RegularSeries(tuple(conjugate(a) for a in f.coeffs), f.order, f.trust_radius)


def symmetrization(f: RegularSeries, tol: float = DEFAULT.eps_eq) -> RegularSeries:
    """f * f^c, returned with exactly real coefficients.

    Raises ConsistencyError when an imaginary part exceeds ``tol`` relative to
    sum_k |a_k||a_(n-k)|, which cannot happen for a correct product.
    """
    s = regular_product(f, regular_conjugate(f))
    mags = np.linalg.norm(f.array, axis=-1)
    bound = np.convolve(mags, mags)[: len(s.coeffs)] if len(mags) else np.zeros(0)
    out = []
    for n, c in enumerate(s.coeffs):
        im = math.hypot(c.x, c.y, c.z)
        if im > tol * max(bound[n], np.finfo(float).tiny):
            raise ConsistencyError(
                f"symmetrization coefficient {n} has imaginary part {im:.3e} (bound {bound[n]:.3e})"
            )
        out.append(Quaternion(c.w))
    return RegularSeries(tuple(out), s.order, s.trust_radius)


def real_coefficients(f: RegularSeries) -> np.ndarray:
    return f.array[:, 0].copy() if len(f.coeffs) else np.zeros(0)


def _guard(f: RegularSeries, fs_q: Quaternion, r: float, eps: float):
    s = scale(f, r)
    if not norm(fs_q) > eps * s * s:
        raise OnZeroSetError()


def reciprocal_pointwise(f: RegularSeries, q, eps: float = DEFAULT.eps_eq) -> Quaternion:
    """f^-*(q) = f^s(q)^-1 f^c(q)."""
    q = Quaternion.coerce(q)
    fs_q = evaluate(symmetrization(f), q)
    _guard(f, fs_q, norm(q), eps)
    return inverse(fs_q) * evaluate(regular_conjugate(f), q)


def invert_real_series(s: np.ndarray, order: int) -> np.ndarray:
    """Coefficients r_0..r_order of 1/s for a real series with s[0] != 0."""
    s = np.asarray(s, dtype=float)
    r = np.zeros(order + 1)
    r[0] = 1.0 / s[0]
    for n in range(1, order + 1):
        m = min(n, len(s) - 1)
        acc = 0.0
        for k in range(1, m + 1):
            acc += s[k] * r[n - k]
        r[n] = -acc / s[0]
    return r


def reciprocal_series(f: RegularSeries, order: int, eps: float = DEFAULT.eps_eq) -> RegularSeries:
    """Truncated power series of f^-* at 0 up to q^order."""
    if f.is_zero() or not norm(f.coefficient(0)) > eps:
        raise ReciprocalUndefinedError()
    if f.order is not None:
        order = min(order, f.order)
    fs = symmetrization(f)
    r = invert_real_series(real_coefficients(fs), order)
    inv_s = RegularSeries.from_array(np.column_stack([r, np.zeros((order + 1, 3))]), order)
    trust = f.trust_radius
    if f.is_exact:
        from .zeros import real_polynomial_roots

        roots = real_polynomial_roots(real_coefficients(fs))
        if len(roots):
            trust = min(trust, float(np.min(np.abs(roots))))
    out = regular_product(inv_s, regular_conjugate(f))
    return RegularSeries(out.coeffs, order, trust)


def transform_T(f: RegularSeries, q, eps: float = DEFAULT.eps_eq) -> Quaternion:
    """T_f(q) = f^c(q)^-1 q f^c(q)."""
    q = Quaternion.coerce(q)
    fs_q = evaluate(symmetrization(f), q)
    _guard(f, fs_q, norm(q), eps)
    fc_q = evaluate(regular_conjugate(f), q)
    return inverse(fc_q) * q * fc_q


def product_eval_identity(f: RegularSeries, g: RegularSeries, q, eps: float = DEFAULT.eps_eq):
    """(f*g)(q) and f(q) g(f(q)^-1 q f(q)); both sides as a pair."""
    q = Quaternion.coerce(q)
    f_q = evaluate(f, q)
    if not norm(f_q) > eps * scale(f, norm(q)):
        raise VanishesAtPointError()
    lhs = evaluate(regular_product(f, g), q)
    rhs = f_q * evaluate(g, inverse(f_q) * q * f_q)
    return lhs, rhs


def reciprocal_eval_identity(f: RegularSeries, q, eps: float = DEFAULT.eps_eq):
    """f^-*(q) and f(T_f(q))^-1; both sides as a pair."""
    q = Quaternion.coerce(q)
    lhs = reciprocal_pointwise(f, q, eps)
    rhs = inverse(evaluate(f, transform_T(f, q, eps)))
    return lhs, rhs


def relative_deviation(lhs: Quaternion, rhs: Quaternion) -> float:
    return norm(lhs - rhs) / (1.0 + norm(lhs))
