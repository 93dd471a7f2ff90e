"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line that is printed in the terminal
summary of the run.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import math

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES, P, random_poly, random_quat

from slicereg import Quaternion, RegularSeries
from slicereg.analysis import Circular, check_min_modulus, counterexample_witness, open_mapping_probe
from slicereg.errors import OnZeroSetError, VanishesAtPointError
from slicereg.quaternion import QI, QJ, QK, UNIT_I, UNIT_J, fibonacci_sphere, norm, qmul, random_units
from slicereg.series import (
    evaluate,
    product_eval_identity,
    reciprocal_eval_identity,
    reciprocal_series,
    regular_conjugate,
    regular_product,
    relative_deviation,
    symmetrization,
    transform_T,
)
from slicereg.spheres import Sphere2, SphericalValue, modulus_extrema_on_sphere, spherical_split
from slicereg.zeros import conjugate_zero_check, symmetrization_roots, zero_set


def record(key, title, ok, detail):
    ACCEPTANCE_LINES[key] = f"{key} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    assert ok, detail


def test_ac01_zero_sphere_of_q2_plus_1():
    f = P([1, 0, 1])
    zs = zero_set(f)
    spheres_ok = len(zs.zero_spheres) == 1 and zs.zero_spheres[0] == Sphere2(0.0, 1.0)
    pts = Sphere2(0, 1).points(random_units(np.random.default_rng(1), 50))
    worst = max(norm(evaluate(f, Quaternion.from_array(p))) for p in pts)
    ok = spheres_ok and zs.isolated_points == [] and worst < 1e-10
    record("AC01", "zero sphere of q^2+1", ok,
           f"spheres={[s.to_json() for s in zs.zero_spheres]} points={len(zs.isolated_points)} max|f|={worst:.2e} (<1e-10)")


def test_ac02_hand_symmetrization_and_product():
    fi, fj = P([-QI, 1]), P([-QJ, 1])
    s = symmetrization(fi)
    d1 = max(norm(s.coefficient(n) - Quaternion(e)) for n, e in enumerate([1, 0, 1]))
    pr = regular_product(fi, fj)
    d2 = max(norm(pr.coefficient(n) - e) for n, e in enumerate([QK, -QI - QJ, Quaternion(1.0)]))
    ok = len(s.coeffs) == 3 and len(pr.coeffs) == 3 and d1 <= 1e-12 and d2 <= 1e-12
    record("AC02", "hand symmetrization and product", ok, f"sym dev={d1:.1e} product dev={d2:.1e} (<=1e-12)")


def test_ac03_reciprocal_series():
    f = P([1, -1])
    r = reciprocal_series(f, 32)
    d1 = max(norm(r.coefficient(n) - Quaternion(1.0)) for n in range(33))
    worst = 0.0
    for prod in (regular_product(f, r), regular_product(r, f)):
        for n in range(33):
            target = Quaternion(1.0) if n == 0 else Quaternion()
            worst = max(worst, norm(prod.coefficient(n) - target))
    ok = r.order == 32 and d1 <= 1e-12 and worst <= 1e-10
    record("AC03", "reciprocal series of 1-q", ok, f"coeff dev={d1:.1e} (<=1e-12) f*f^-* dev={worst:.1e} (<=1e-10)")


def test_ac04_geometric_split():
    f = RegularSeries.truncated([1.0] * 65, order=64, trust_radius=1.0)
    bound = 2 * 0.5**65 / (1 - 0.5) + 1e-12
    grid = [(r * math.cos(t), r * math.sin(t)) for r in np.linspace(0.05, 0.5, 10) for t in np.linspace(0.0, math.pi, 10)]
    worst = 0.0
    for x, y in grid:
        c = spherical_split(f, Sphere2(x, y)).c
        worst = max(worst, norm(c - Quaternion(y / ((1 - x) ** 2 + y**2))))
    ok = len(grid) == 100 and worst <= bound
    record("AC04", "geometric-series split", ok, f"{len(grid)} points, max dev={worst:.1e} (<={bound:.1e})")


def test_ac05_identity_suite():
    rng = np.random.default_rng(5)
    worst = {"product": 0.0, "reciprocal": 0.0, "transform": 0.0}
    checked = dict.fromkeys(worst, 0)
    for _ in range(1000):
        f, g = random_poly(rng, 6), random_poly(rng, 6)
        q = random_quat(rng, 1.0)
        try:
            lhs, rhs = product_eval_identity(f, g, q, eps=1e-6)
            worst["product"] = max(worst["product"], relative_deviation(lhs, rhs))
            checked["product"] += 1
        except VanishesAtPointError:
            pass
        try:
            lhs, rhs = reciprocal_eval_identity(f, q, eps=1e-6)
            worst["reciprocal"] = max(worst["reciprocal"], relative_deviation(lhs, rhs))
            checked["reciprocal"] += 1
            back = transform_T(regular_conjugate(f), transform_T(f, q, eps=1e-6), eps=0.0)
            worst["transform"] = max(worst["transform"], norm(back - q) / (1 + norm(q)))
            checked["transform"] += 1
        except OnZeroSetError:
            pass
    ok = all(v < 1e-9 for v in worst.values()) and min(checked.values()) >= 900
    detail = " ".join(f"{k}={worst[k]:.1e}/{checked[k]}" for k in worst)
    record("AC05", "pointwise identities", ok, f"max rel dev / checked: {detail} (<1e-9)")


def test_ac06_zero_correspondence():
    rng = np.random.default_rng(6)
    spheres = mismatches = 0
    for _ in range(200):
        f = random_poly(rng, 8)
        if f.is_constant():
            continue
        for s in symmetrization_roots(f):
            spheres += 1
            kf, kc = conjugate_zero_check(f, s)
            mismatches += kf != kc
    ok = spheres > 0 and mismatches == 0
    record("AC06", "zero correspondence f vs f^c", ok, f"{spheres} spheres, {mismatches} mismatches")


def test_ac07_minimum_modulus():
    rng = np.random.default_rng(7)
    bad = minima = 0
    worst = 0.0
    for n in range(100):
        f = random_poly(rng, 5, min_degree=1)
        rep = check_min_modulus(f, 1.0, seed=1000 + n)
        for m in rep["interior_minima"]:
            minima += 1
            worst = max(worst, m["rel_abs_f"])
        bad += not rep["passed"]
    ok = bad == 0
    record("AC07", "minimum modulus", ok, f"100 polynomials, {minima} interior minima, worst |f|/scale={worst:.1e} (<=1e-6), failures={bad}")


def test_ac08_counterexample_witness():
    rep = counterexample_witness(UNIT_I, UNIT_J, 100_000, seed=42)
    ok = rep["passed"] and rep["zero_residual"] < 1e-12 and rep["landed_in_LK"] > 0 and rep["max_K_component_landed"] <= 1e-9
    record("AC08", "q^2+1 counterexample witness", ok,
           f"f(i) residual={rep['zero_residual']:.1e}, landed in L_K={rep['landed_in_LK']}, "
           f"max K-component={rep['max_K_component_landed']:.1e} (<=1e-9)")


def test_ac09_circular_open_mapping():
    rep = open_mapping_probe(P([1, 0, 1]), Circular(Sphere2(0, 1), 0.3), 0.01, 200, seed=42)
    ok = rep.verdict == "covered" and rep.solved == 200 and rep.max_residual < 1e-8
    record("AC09", "circular open mapping", ok, f"verdict={rep.verdict} solved={rep.solved}/200 max residual={rep.max_residual:.1e} (<1e-8)")


def _cap_samples(center, radius, n, rng):
    """n unit vectors within angular distance ~radius of the unit vector center."""
    v = center[None, :] + radius * rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _sampled_extrema(b, c, rng):
    """Brute-force oracle: 10^4 Fibonacci points, then hierarchical local re-sampling."""
    bq = b[:, None, :]

    def modulus(units):
        uq = np.zeros(units.shape[:-1] + (4,))
        uq[..., 1:] = units
        return np.linalg.norm(bq + qmul(uq, c[:, None, :]), axis=-1)

    base = fibonacci_sphere(10_000)
    out = []
    for sign in (1.0, -1.0):
        vals = sign * modulus(np.broadcast_to(base, (len(b),) + base.shape))
        best = base[np.argmin(vals, axis=1)]
        radius = 0.03
        while radius > 1e-7:
            cand = np.stack([_cap_samples(best[i], radius, 200, rng) for i in range(len(b))])
            cand = np.concatenate([best[:, None, :], cand], axis=1)
            cv = sign * modulus(cand)
            best = cand[np.arange(len(b)), np.argmin(cv, axis=1)]
            radius *= 0.5
        out.append((best, modulus(best[:, None, :])[:, 0]))
    return out


def test_ac10_modulus_extrema_closed_form():
    rng = np.random.default_rng(10)
    pos_err = val_err = 0.0
    n_done = 0
    for _chunk in range(10):
        b = rng.standard_normal((100, 4))
        c = rng.standard_normal((100, 4))
        (min_u, min_v), (max_u, max_v) = _sampled_extrema(b, c, rng)
        for i in range(100):
            v = SphericalValue(Quaternion.from_array(b[i]), Quaternion.from_array(c[i]), Sphere2(0, 1))
            rep = modulus_extrema_on_sphere(v)
            assert not rep.constant_modulus
            pos_err = max(pos_err, float(np.linalg.norm(np.array(rep.min_unit.vector) - min_u[i])),
                          float(np.linalg.norm(np.array(rep.max_unit.vector) - max_u[i])))
            val_err = max(val_err, abs(rep.min_value - min_v[i]), abs(rep.max_value - max_v[i]))
            n_done += 1
    ok = n_done == 1000 and pos_err <= 1e-3 and val_err <= 1e-6
    record("AC10", "modulus extrema closed form", ok, f"{n_done} instances, max position err={pos_err:.1e} (<=1e-3), max value err={val_err:.1e} (<=1e-6)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
