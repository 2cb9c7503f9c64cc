import numpy as np
import pytest
from hypothesis import given, strategies as st

from gfon.errors import InvalidParameterError, LevelUnreachableError, RejectedInputError
from gfon.membership import (
    E1, E4, E_QUARTER, Gaussian, GridSpec, Radial, RootExp, Sampled, StretchedExp,
    Triangular, evaluate, sample, shape_stats,
)

pos = st.floats(0.05, 20.0)
real = st.floats(-50.0, 50.0)


def test_gaussian_convention_has_no_factor_two():
    g = Gaussian(4.0, 1.0)
    assert evaluate(g, 5.0) == pytest.approx(np.exp(-1.0), abs=1e-15)
    assert evaluate(g, 4.0) == 1.0


def test_rootexp_zero_A_is_exponential():
    r = RootExp(0.0, 0.0, 2.0)
    x = np.linspace(-10, 10, 41)
    np.testing.assert_allclose(r(x), np.exp(-np.abs(x) / 2.0), rtol=1e-13)


def test_rootexp_large_A_tends_to_gaussian():
    r = RootExp(0.0, 1e6, 1e-3)
    x = np.linspace(-3e6, 3e6, 13)
    np.testing.assert_allclose(r(x), Gaussian(0.0, 1e6)(x), atol=1e-6)


def test_rootexp_stable_near_center_when_B_tiny():
    # naive (sqrt(A^2+4Br)-A)/2B loses every digit here
    r = RootExp(0.0, 1.0, 1e-12)
    assert r.neglog(np.array([1e-3]))[0] == pytest.approx(1e-6, rel=1e-9)


def test_constructors_reject_bad_parameters():
    with pytest.raises(InvalidParameterError):
        Gaussian(0, 0)
    with pytest.raises(InvalidParameterError):
        RootExp(0, -1, 1)
    with pytest.raises(InvalidParameterError):
        RootExp(0, 1, 0)
    with pytest.raises(InvalidParameterError):
        StretchedExp(0, 1, 2.5)
    with pytest.raises(InvalidParameterError):
        Triangular(0, 0)
    with pytest.raises(InvalidParameterError):
        Sampled([0, 0, 1], [0, 1, 0])


def test_nonfinite_points_rejected():
    with pytest.raises(RejectedInputError):
        Gaussian(0, 1)(np.array([0.0, np.nan]))
    with pytest.raises(RejectedInputError):
        Gaussian(0, 1)(np.inf)


def test_triangular_support():
    t = Triangular(1.0, 2.0)
    np.testing.assert_allclose(t([1.0, 2.0, 3.0, 4.0, -1.0]), [1.0, 0.5, 0.0, 0.0, 0.0])


def test_sampled_is_zero_off_grid_and_passes_through_nodes():
    s = Sampled([0.0, 1.0, 2.0], [0.0, 1.0, 0.5])
    np.testing.assert_allclose(s([-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0]), [0, 0, 0.5, 1, 0.75, 0.5, 0])
    assert s.c == 1.0


def test_sampled_plateau_center_is_midpoint():
    s = Sampled([0.0, 1.0, 2.0, 3.0, 4.0], [0.0, 1.0, 1.0, 1.0, 0.0])
    assert s.c == 2.0


def test_sampled_level_unreachable():
    s = sample(Gaussian(0, 1), GridSpec(-0.5, 0.5, 0.01))
    with pytest.raises(LevelUnreachableError):
        s.level_distance(E1)


def test_sample_passthrough_equals_grid():
    grid = GridSpec(0.0, 8.0, 0.01)
    s = sample(Gaussian(4, 1), grid)
    np.testing.assert_array_equal(s.grid, grid.points)
    assert s.grid.size == 801


def test_radial_distance():
    r = Radial(Gaussian(0, 1), [1.0, 2.0])
    assert evaluate(r, np.array([1.0, 3.0])) == pytest.approx(np.exp(-1.0))
    np.testing.assert_allclose(r(np.array([[1.0, 2.0], [4.0, 6.0]])), [1.0, np.exp(-25.0)])


def test_closed_form_table():
    assert shape_stats(Gaussian(4, 1.5)).as_dict() == pytest.approx(
        {"center": 4.0, "sdv": 1.5, "kurtosis": 2.0, "sharpness": 2.0})
    s = shape_stats(RootExp(4, 1, 1))
    assert (s.center, s.sdv, s.kurtosis, s.sharpness) == pytest.approx((4, 2, 3, 8 / 3))
    s = shape_stats(RootExp(0, 0, 3))
    assert (s.sdv, s.kurtosis, s.sharpness) == pytest.approx((3, 4, 4))
    s = shape_stats(Triangular(0, 1))
    assert s.sdv == pytest.approx(1 - np.exp(-1))
    assert s.kurtosis == pytest.approx((1 - E4) / (1 - E1))
    assert s.sharpness == pytest.approx((1 - E1) / (1 - E_QUARTER))


@given(pos, pos)
def test_rootexp_stats_formula(A, B):
    s = shape_stats(RootExp(0.0, A, B))
    assert s.sdv == pytest.approx(A + B, rel=1e-12)
    assert s.kurtosis == pytest.approx(2 + 2 * B / (A + B), rel=1e-12)
    assert s.sharpness == pytest.approx(2 + 2 * B / (2 * A + B), rel=1e-12)


@given(real, pos, st.integers(1, 6))
def test_stretched_stats_are_powers_of_two(c, sigma, n):
    s = shape_stats(StretchedExp(c, sigma, 2.0 / n))
    assert s.sdv == pytest.approx(sigma, rel=1e-12)
    assert s.kurtosis == pytest.approx(2.0**n, rel=1e-12)
    assert s.sharpness == pytest.approx(2.0**n, rel=1e-12)


@given(real, pos, pos)
def test_level_distance_inverts_membership(c, A, B):
    r = RootExp(c, A, B)
    for level in (E1, E4, E_QUARTER):
        d = r.level_distance(level)
        assert evaluate(r, c + d) == pytest.approx(level, rel=1e-9)
        assert evaluate(r, c - d) == pytest.approx(level, rel=1e-9)


@given(real, pos, pos)
def test_memberships_bounded_symmetric_and_peak_at_center(c, A, B):
    x = np.linspace(-30, 30, 61)
    for mf in (Gaussian(c, A), RootExp(c, A, B), StretchedExp(c, A, min(B, 2.0)), Triangular(c, A)):
        mu = mf(c + x)
        assert np.all((mu >= 0) & (mu <= 1))
        np.testing.assert_allclose(mu, mf(c - x), atol=1e-15)
        assert evaluate(mf, c) == 1.0


def test_sampled_bisection_matches_closed_form():
    r = RootExp(1.0, 0.7, 1.3)
    s = sample(r, GridSpec(-40.0, 42.0, 1e-4))
    for a, b in zip(shape_stats(s).as_dict().values(), shape_stats(r).as_dict().values()):
        assert a == pytest.approx(b, abs=1e-6)


def test_gridspec_around_and_refined():
    g = GridSpec.around(2.0, 0.5, steps=100)
    assert (g.lo, g.hi, g.size) == pytest.approx((-2.0, 6.0, 101))
    assert g.refined().size == 201
    assert GridSpec.around(0.0, 1.0, lo_clip=0.0).lo == 0.0
    with pytest.raises(InvalidParameterError):
        GridSpec(1.0, 0.0, 0.1)
