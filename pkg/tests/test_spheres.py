import math

import numpy as np
import pytest
from conftest import P, random_poly

from slicereg import Quaternion
from slicereg.errors import NotASphereError
from slicereg.quaternion import QI, QJ, ImaginaryUnit, fibonacci_sphere, norm, random_units
from slicereg.series import evaluate, scale
from slicereg.spheres import (
    Sphere2,
    SphericalValue,
    is_degenerate,
    modulus_extrema_on_sphere,
    modulus_on_units,
    slice_powers,
    sphere_zero,
    spherical_split,
    value_at,
)


def test_sphere_canonical_y_and_distance():
    s = Sphere2(1.0, -2.0)
    assert s.y == 2.0 and s.radius == pytest.approx(math.sqrt(5))
    assert s.distance(Quaternion(1, 0, 0, 2)) == pytest.approx(0.0)
    assert s.distance(Quaternion(1, 0, 0, 3)) == pytest.approx(1.0)
    assert Sphere2(3, 0).is_real


def test_slice_powers_match_complex_powers():
    xs, ys = slice_powers(0.3, -0.7, 12)
    z = complex(0.3, -0.7) ** np.arange(12)
    assert np.allclose(xs, z.real, atol=1e-15) and np.allclose(ys, z.imag, atol=1e-15)


@pytest.mark.parametrize("x, y", [(0.0, 1.0), (0.5, 0.25), (-1.5, 2.0)])
def test_split_of_q(x, y):
    v = spherical_split(P([0, 1]), Sphere2(x, y))
    assert v.b == Quaternion(x) and v.c == Quaternion(y)


def test_split_of_q2_plus_1_on_unit_sphere(q2_plus_1):
    v = spherical_split(q2_plus_1, Sphere2(0, 1))
    assert norm(v.b) < 1e-15 and norm(v.c) < 1e-15


def test_split_of_geometric_series(geometric64, rng):
    bound = 2 * 0.5**65 / (1 - 0.5) + 1e-12
    for _ in range(50):
        r, t = 0.5 * math.sqrt(rng.random()), rng.uniform(0, math.pi)
        x, y = r * math.cos(t), r * math.sin(t)
        v = spherical_split(geometric64, Sphere2(x, y))
        expected_c = y / ((1 - x) ** 2 + y**2)
        expected_b = (1 - x) / ((1 - x) ** 2 + y**2)
        assert norm(v.c - Quaternion(expected_c)) <= bound
        assert norm(v.b - Quaternion(expected_b)) <= bound


def test_value_at_examples():
    b = Quaternion(1, 2, 3, 4)
    v = SphericalValue(b, Quaternion(), Sphere2(0, 1))
    for u in random_units(np.random.default_rng(0), 10):
        assert value_at(v, ImaginaryUnit(*u)) == b
    v = spherical_split(P([0, 1]), Sphere2(0, 1))
    assert value_at(v, ImaginaryUnit(0, 1, 0)) == QJ


def test_affine_law_against_evaluate(rng):
    for _ in range(100):
        f = random_poly(rng, 6)
        s = Sphere2(rng.uniform(-1, 1), rng.uniform(0.01, 1))
        u = ImaginaryUnit(*random_units(rng, 1)[0])
        q = s.point(u)
        v = spherical_split(f, s)
        assert norm(value_at(v, u) - evaluate(f, q)) <= 1e-9 * scale(f, norm(q))


def test_left_multiplication_matters():
    # with non-commuting c the order I*c vs c*I differs
    v = SphericalValue(Quaternion(), QJ, Sphere2(0, 1))
    assert value_at(v, ImaginaryUnit(1, 0, 0)) == QI * QJ
    assert value_at(v, ImaginaryUnit(1, 0, 0)) != QJ * QI


def test_swap_symmetry(rng):
    for _ in range(50):
        f = random_poly(rng, 5)
        s = Sphere2(rng.uniform(-1, 1), rng.uniform(0.1, 1))
        u = ImaginaryUnit(*random_units(rng, 1)[0])
        v = spherical_split(f, s)
        opposite = evaluate(f, s.point(-u))
        assert norm(opposite - (v.b - u.as_quaternion() * v.c)) <= 1e-12 * scale(f, s.radius)


def test_is_degenerate_examples(q2_plus_1, geometric64, rng):
    assert is_degenerate(q2_plus_1, Sphere2(0, 1))
    assert is_degenerate(P([Quaternion(1, 2, 3, 4)]), Sphere2(0.3, 0.7))
    for _ in range(50):
        r, t = 0.9 * math.sqrt(rng.random()), rng.uniform(0.01, math.pi - 0.01)
        assert not is_degenerate(geometric64, Sphere2(r * math.cos(t), r * math.sin(t)))
    with pytest.raises(NotASphereError, match="not a sphere"):
        is_degenerate(q2_plus_1, Sphere2(1.0, 0.0))


def test_sphere_zero_examples(q2_plus_1, q_minus_i):
    assert sphere_zero(spherical_split(q2_plus_1, Sphere2(0, 1))).kind == "whole"
    z = sphere_zero(spherical_split(q_minus_i, Sphere2(0, 1)))
    assert z.kind == "point" and norm(z.point - QI) < 1e-15
    z = sphere_zero(spherical_split(q_minus_i, Sphere2(0, 2)))
    assert z.kind == "none" and z.unit_defect == pytest.approx(0.5)
    # c = 0 with b != 0: constant nonzero on the sphere
    assert sphere_zero(spherical_split(P([3]), Sphere2(0, 1))).kind == "none"


def test_sphere_zero_soundness(rng):
    from slicereg.zeros import symmetrization_roots

    for _ in range(50):
        f = random_poly(rng, 6, 1)
        for s in symmetrization_roots(f):
            z = sphere_zero(spherical_split(f, s))
            if z.kind == "point":
                assert norm(evaluate(f, z.point)) <= 1e-8 * scale(f, s.radius)
            elif z.kind == "whole":
                pts = s.points(random_units(rng, 20))
                assert all(norm(evaluate(f, Quaternion.from_array(p))) <= 1e-8 * scale(f, s.radius) for p in pts)


def test_at_most_one_zero_cluster_on_nondegenerate_sphere(rng):
    units = fibonacci_sphere(4000)
    for _ in range(30):
        b, c = (Quaternion.from_array(rng.standard_normal(4)) for _ in range(2))
        # force a zero at a random unit: b = -I c
        I = ImaginaryUnit(*random_units(rng, 1)[0])
        b = -(I.as_quaternion() * c)
        v = SphericalValue(b, c, Sphere2(0, 1))
        mod = modulus_on_units(v, units)
        near = units[mod < 0.05 * norm(c)]
        # all near-zero samples cluster around I
        assert len(near) > 0
        assert np.max(np.linalg.norm(near - np.array(I.vector), axis=1)) < 0.1


def test_extrema_example_q_minus_i(q_minus_i):
    rep = modulus_extrema_on_sphere(spherical_split(q_minus_i, Sphere2(0, 1)))
    assert not rep.constant_modulus
    assert rep.min_unit.vector == pytest.approx((1, 0, 0))
    assert rep.max_unit.vector == pytest.approx((-1, 0, 0))
    assert rep.min_value == pytest.approx(0, abs=1e-15)
    assert rep.max_value == pytest.approx(2)
    units = fibonacci_sphere(10_000)
    mod = modulus_on_units(spherical_split(q_minus_i, Sphere2(0, 1)), units)
    assert units[np.argmin(mod)] == pytest.approx([1, 0, 0], abs=0.05)
    assert units[np.argmax(mod)] == pytest.approx([-1, 0, 0], abs=0.05)


def test_extrema_constant_modulus_cases():
    b = Quaternion(1, -2, 0.5, 0)
    rep = modulus_extrema_on_sphere(SphericalValue(b, Quaternion(), Sphere2(0, 1)))
    assert rep.constant_modulus and rep.min_value == pytest.approx(norm(b))
    # b = 0, c = 1: image b + S c is the unit sphere, |f| = 1 everywhere
    v = SphericalValue(Quaternion(), Quaternion(1.0), Sphere2(0, 1))
    rep = modulus_extrema_on_sphere(v)
    assert rep.constant_modulus and rep.min_value == pytest.approx(1.0) and rep.max_value == pytest.approx(1.0)
    assert np.allclose(modulus_on_units(v, fibonacci_sphere(100)), 1.0)


def test_extrema_against_sampling(rng):
    units = fibonacci_sphere(10_000)
    for _ in range(50):
        b, c = (Quaternion.from_array(rng.standard_normal(4)) for _ in range(2))
        v = SphericalValue(b, c, Sphere2(0, 1))
        rep = modulus_extrema_on_sphere(v)
        mod = modulus_on_units(v, units)
        assert rep.min_value <= mod.min() + 1e-12 and rep.max_value >= mod.max() - 1e-12
        # sampling resolution is ~0.02 on the sphere, quadratic in value
        assert mod.min() - rep.min_value < 1e-2 * (norm(b) + norm(c))
        assert rep.max_value - mod.max() < 1e-2 * (norm(b) + norm(c))
        assert norm(value_at(v, rep.max_unit)) == pytest.approx(rep.max_value, rel=1e-12)
