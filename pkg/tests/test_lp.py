from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lpproj.lp import (LpFunction, SignedLpFunction, canonical_direction,
                       compose_inverse, direction_sample, equal, lp_add,
                       s_add, s_eval, s_negate, scalar_body, sup_distance)
from lpproj.operators import delta_plus, pi_minus, pi_plus
from lpproj.polytope import (LinearMap, apply_map, cube, shifted_simplex,
                             standard_simplex)


def e(n, i):
    return tuple(int(j == i) for j in range(n))


def test_single_term_value():
    f = LpFunction(2, 3, [((1, 0, 0), "+", 1.0)])
    assert f((3, 7, 0)) == 9.0
    assert f((-3, 7, 0)) == 0.0


def test_simplex_value_at_axis():
    f = pi_plus(standard_simplex(3), 2.0)
    assert f((1, 0, 0)) == pytest.approx(0.5, rel=1e-12)


def test_cube_value_is_sum_of_positive_squares():
    f = pi_plus(cube(3), 2.0)
    u = (1, 2, 0)
    assert f(u) == pytest.approx(5.0, rel=1e-12)
    rng = np.random.default_rng(0)
    for u in rng.standard_normal((20, 3)):
        assert f(u) == pytest.approx(float(np.sum(np.maximum(u, 0) ** 2)), rel=1e-12)


def test_dimension_mismatch():
    f = LpFunction(2, 3, [((1, 0, 0), "+", 1.0)])
    with pytest.raises(ValueError):
        f((1, 0))
    with pytest.raises(ValueError):
        lp_add(f, LpFunction(2, 2))
    with pytest.raises(ValueError):
        lp_add(f, LpFunction(3, 3))


def test_p_must_exceed_one():
    with pytest.raises(ValueError):
        LpFunction(1.0, 3)


def test_add_identity_and_merge():
    f = LpFunction(2.5, 3, [((1, 0, 0), "+", 1.0)])
    assert f + LpFunction.zero(2.5, 3) == f
    g = f + f
    assert len(g.terms) == 1 and g.terms[0].coef == 2.0


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_sum_of_signed_simplex_bodies(n, p):
    T = standard_simplex(n)
    g = pi_plus(T, p) + pi_minus(T, p)
    assert len(g.terms) == 2
    ones = (1,) * n
    signs = {}
    for t in g.terms:
        # canonical form keeps +-(1,...,1) together with its sign
        assert t.direction == ones
        signs[t.sign] = t.coef
    fact = 1.0
    for k in range(2, n):
        fact *= k
    assert signs["+"] == pytest.approx(1 / fact, rel=1e-12)
    assert signs["-"] == pytest.approx(1 / fact, rel=1e-12)


def test_canonical_direction_flips_sign():
    assert canonical_direction((-2, 0, 0), "-") == ((1, 0, 0), "+")
    assert canonical_direction((0, -3, 6), "+") == ((0, 1, -2), "-")
    assert LpFunction(2, 3, [((-1, 0, 0), "-", 1.0)]) == LpFunction(2, 3, [((1, 0, 0), "+", 1.0)])


def test_scalar_body():
    f = LpFunction(2, 3, [((1, 0, 0), "+", 1.0)])
    assert scalar_body(f, 1) == f
    assert scalar_body(f, 0).is_zero
    assert scalar_body(f, 2).terms[0].coef == 4.0
    with pytest.raises(ValueError):
        scalar_body(f, -1)


def test_compose_inverse_identity_and_swap():
    f = LpFunction(2, 3, [((1, 0, 0), "+", 1.0)])
    assert compose_inverse(f, LinearMap.identity(3)) == f
    swap = LinearMap([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert compose_inverse(f, swap) == LpFunction(2, 3, [((0, 1, 0), "+", 1.0)])
    with pytest.raises(ValueError):
        compose_inverse(f, LinearMap([[1, 0, 0], [0, 0, 0], [0, 0, 1]]))


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_compose_inverse_matches_image_body(p):
    T = standard_simplex(3)
    shear = LinearMap([[1, 2, 0], [0, 1, -1], [0, 0, 1]])
    lhs = compose_inverse(pi_plus(T, p), shear)
    rhs = pi_plus(apply_map(T, shear), p)
    assert [(t.direction, t.sign) for t in lhs.terms] == [(t.direction, t.sign) for t in rhs.terms]
    for a, b in zip(lhs.terms, rhs.terms):
        assert a.coef == pytest.approx(b.coef, rel=1e-12)


def test_compose_inverse_is_pointwise_precomposition():
    f = LpFunction(2.5, 3, [((1, 2, -1), "+", 0.7), ((0, 1, 1), "-", 1.3)])
    phi = LinearMap([[2, 1, 0], [0, F(1, 2), 0], [1, 0, 3]])
    g = compose_inverse(f, phi)
    inv = np.array(phi.inverse().to_floats())
    for u in direction_sample(3, np.random.default_rng(1), 30):
        assert g(u) == pytest.approx(f(inv @ u), rel=1e-12, abs=1e-14)


def test_equal_examples():
    T = standard_simplex(3)
    f = pi_plus(T, 2.0)
    assert equal(f, f, 0.0)
    assert not equal(f, pi_minus(T, 2.0), 1e-9)


@pytest.mark.parametrize("n", [2, 3])
def test_rotated_frame_sampled_equal(n):
    def frame(dirs, coef):
        return LpFunction(2, n, [(d + (0,) * (n - 2), s, coef) for d in dirs for s in "+-"])
    f = frame([(1, 0), (0, 1)], 1.0)
    g = frame([(1, 1), (1, -1)], 0.5)
    assert f.terms != g.terms
    assert equal(f, g, 1e-12)
    assert sup_distance(f, g) < 1e-12


def test_sup_distance_of_dilate():
    f = pi_plus(standard_simplex(3), 2.0)
    g = scalar_body(f, 2.0)
    # support functions differ by a factor 2, max of h on the unit sphere at (1,1,1)/sqrt3
    h_max = f(np.ones(3) / np.sqrt(3)) ** 0.5
    dirs = np.vstack([direction_sample(3), np.ones((1, 3))])
    assert sup_distance(f, g, dirs) == pytest.approx(h_max, rel=1e-12)
    assert sup_distance(f, g) <= h_max


term = st.tuples(
    st.tuples(*[st.integers(-3, 3)] * 3).filter(any),
    st.sampled_from("+-"),
    st.floats(0.0, 5.0),
)
functions = st.lists(term, max_size=6).map(lambda ts: LpFunction(2.5, 3, ts))
unit = st.tuples(*[st.floats(-1, 1)] * 3)


@settings(max_examples=60, deadline=None)
@given(functions, functions, unit)
def test_addition_commutes_and_adds_values(f, g, u):
    assert f + g == g + f
    assert (f + g)(u) == pytest.approx(f(u) + g(u), rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(functions, unit, st.floats(0.0, 4.0))
def test_values_are_nonnegative_and_homogeneous(f, u, s):
    assert f(u) >= 0
    assert f(tuple(s * x for x in u)) == pytest.approx(s ** 2.5 * f(u), rel=1e-10, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(functions, unit, unit)
def test_pth_root_is_sublinear(f, u, v):
    w = tuple(a + b for a, b in zip(u, v))
    r = 1 / 2.5
    assert f(w) ** r <= f(u) ** r + f(v) ** r + 1e-9


def test_signed_cancellation():
    f = pi_plus(cube(3), 2.0)
    x = SignedLpFunction(f, LpFunction(2.0, 3, [((1, 1, 1), "+", 0.5)]))
    assert s_add(x, s_negate(x)).is_zero


def test_signed_delta_on_simplex_has_no_negative_part():
    T = standard_simplex(3)
    d = delta_plus(T, 2.0)
    assert d.neg.is_zero
    assert d.pos == pi_plus(T, 2.0)


def test_signed_delta_on_shifted_simplex():
    d = delta_plus(shifted_simplex(3), 2.0)
    (pos,) = d.pos.terms
    assert pos.direction == (1, 1, 1) and pos.sign == "+"
    assert pos.coef == pytest.approx(2 ** (1 - 2) / 2, rel=1e-12)
    # <-e1, .>_- is stored as the same function <e1, .>_+
    (neg,) = d.neg.terms
    assert (neg.direction, neg.sign) == canonical_direction((-1, 0, 0), "-")
    assert neg.coef == pytest.approx(0.5, rel=1e-12)
    assert s_eval(d, (1, 1, 1)) == pytest.approx(9 / 4 - 0.5, rel=1e-12)
    assert s_eval(d, (-1, 1, 1)) == pytest.approx(0.25, rel=1e-12)


def test_json_round_trip():
    d = delta_plus(shifted_simplex(3), 2.5)
    assert SignedLpFunction.from_json(d.to_json()) == d
    f = pi_plus(cube(3), 1.5)
    assert LpFunction.from_dict(f.to_dict()) == f


def test_small_terms_kept_when_direction_is_long():
    # a long primitive direction carries a tiny coefficient but a real value
    w = (11800, 1188, -1305, 244)
    f = LpFunction(3.0, 4, [(w, "+", 3e-15), ((1, 0, 0, 0), "+", 1.0)])
    assert len(f.terms) == 2
    u = np.array(w, dtype=float) / np.linalg.norm(w)
    assert f(u) > 1e-3
