from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from zkcontact.errors import CriticalValueError, DegeneracyError, ProfileError
from zkcontact.profiles import (
    OrbitKind,
    Ordering,
    PLProfile,
    StandardFamilyParams,
    build_standard_profile,
    compare_profiles_ambient,
    compute_eta,
    extract_orbits,
    family_monotonicity_check,
    filter_window,
    floor_inv,
    single_orbit_params,
    stacked_profile,
    to_fraction,
)

WORKED = PLProfile(((0, 10), (F(9, 25), F(31, 4)), (F(9, 10), 1)), 1)
R_WORKED = F(2, 5)


def test_to_fraction_is_exact():
    assert to_fraction("0.1") == F(1, 10)
    assert to_fraction("3/7") == F(3, 7)
    with pytest.raises(TypeError):
        to_fraction(0.1)
    with pytest.raises(ValueError):
        to_fraction("1/0")


def test_profile_invariants():
    with pytest.raises(ProfileError):
        PLProfile(((0, 2), (1, 2)), 2)  # not decreasing
    with pytest.raises(ProfileError):
        PLProfile(((0, 3), (1, 2), (2, 1)), 1)  # no genuine corner at u = 1
    with pytest.raises(ProfileError):
        PLProfile(((1, 3), (2, 1)), 1)
    with pytest.raises(ProfileError):
        PLProfile(((0, 3), (1, 2)), 1)


def test_standard_profile_examples():
    p = build_standard_profile(StandardFamilyParams(R_WORKED, F(5, 8), 10))
    assert p == WORKED
    # the two defining lines meet at the upper corner
    s, b, _ = oracles.line_through((0, 10), (F(8, 5), 0))
    assert b + s * F(9, 25) == F(31, 4)
    with pytest.raises(ProfileError, match="a = 0"):
        build_standard_profile(StandardFamilyParams(R_WORKED, F(1, 2), 10))
    assert build_standard_profile(StandardFamilyParams(R_WORKED, F(9, 10), 20)).corners[1][0] == F(38, 45)


def test_standard_params_reject_integral_reciprocal():
    with pytest.raises(ProfileError):
        StandardFamilyParams(F(1, 2), F(5, 8), 10)


def test_worked_orbits():
    orbits = extract_orbits(WORKED, R_WORKED)
    got = [(o.kind, o.m, o.corner_index, o.action) for o in orbits]
    assert got == [
        (OrbitKind.ORIGIN, 0, 0, F(1, 10)),
        (OrbitKind.SPHERE, 2, 1, F(356, 3875)),
        (OrbitKind.SPHERE, 1, 2, F(16, 25)),
        (OrbitKind.SPHERE, 2, 2, F(7, 25)),
        (OrbitKind.PLATEAU, 0, 2, F(1)),
    ]
    expected = oracles.orbit_oracle(WORKED.corners, WORKED.plateau, R_WORKED)
    spheres = {(o.corner_index, o.m): o.vertical_intercept for o in orbits if o.kind is OrbitKind.SPHERE}
    assert spheres == expected


def test_worked_sweep_bounds():
    # corner 1 sees m with 1/(mR) between the segment intercepts 49/50 and 8/5
    assert WORKED.segment_intercept(0) == F(8, 5)
    assert WORKED.segment_intercept(1) == F(49, 50)
    assert 1 / (1 * R_WORKED) > F(8, 5) and 1 / (3 * R_WORKED) < F(49, 50)


def test_box_profile():
    box = PLProfile(((0, 5), (1, 2)), 2)
    # left intercept 5/3: only 1/(1 * 2/5) = 5/2 lies beyond it
    orbits = extract_orbits(box, F(2, 5))
    assert [(o.kind, o.m) for o in orbits] == [(OrbitKind.ORIGIN, 0), (OrbitKind.SPHERE, 1), (OrbitKind.PLATEAU, 0)]
    tiny = extract_orbits(box, F(7, 3))  # 1/(mR) < 5/3 for every m
    assert [o.kind for o in tiny] == [OrbitKind.ORIGIN, OrbitKind.PLATEAU]


def test_degenerate_intercept():
    # left segment hits zero at 5/2 = 1/(1 * 2/5)
    p = PLProfile(((0, 5), (1, 3), (2, 2)), 2)
    assert p.segment_intercept(0) == F(5, 2)
    with pytest.raises(DegeneracyError, match="m = 1"):
        extract_orbits(p, F(2, 5))


def test_filter_window():
    orbits = extract_orbits(WORKED, R_WORKED)
    assert [o.action for o in filter_window(orbits, F(1, 8))] == [F(1, 10), F(356, 3875)]
    with pytest.raises(CriticalValueError):
        filter_window(orbits, F(356, 3875))
    assert filter_window(orbits, 2) == orbits


def test_eta():
    assert compute_eta(WORKED, F(5, 8)) == F(16, 7)
    box = PLProfile(((0, 5), (1, 2)), 2)
    assert compute_eta(box, F(1, 3)) == min(F(5), 2 / (1 - F(1, 3)))
    assert compute_eta(WORKED.scaled(2), F(5, 8)) == 2 * F(16, 7)


def test_eta_line_touches_from_below():
    eta = compute_eta(WORKED, F(5, 8))
    for u, y in WORKED.corners:
        assert eta * (1 - F(5, 8) * u) <= y
    assert eta * (1 - F(5, 8) * F(9, 10)) == 1


def test_compare_profiles():
    # F_c does not depend on R, so only the ambient rescaling differs
    p = build_standard_profile(StandardFamilyParams(R_WORKED, F(5, 8), 10))
    assert compare_profiles_ambient(p, F(2, 5), p, F(1, 3)).verdict is Ordering.GE
    same = compare_profiles_ambient(p, R_WORKED, p, R_WORKED)
    assert same.verdict is Ordering.LE and same.equal
    a = PLProfile(((0, 4), (1, 1)), 1)
    b = PLProfile(((0, 3), (2, 1)), 1)
    assert compare_profiles_ambient(a, 1, b, 1).verdict is Ordering.INCOMPARABLE


def test_family_monotonicity():
    lo = StandardFamilyParams(R_WORKED, F(9, 10), 20)
    hi = StandardFamilyParams(R_WORKED, F(9, 10), 21)
    assert family_monotonicity_check(lo, hi)
    assert family_monotonicity_check(lo, lo)
    c = 1 + F(1, 10**9)
    assert not family_monotonicity_check(StandardFamilyParams(R_WORKED, F(9, 10), c),
                                         StandardFamilyParams(R_WORKED, F(9, 10), c + 1))


@pytest.mark.parametrize("delta", [F(3, 5), F(3, 4), F(9, 10)])
def test_default_rule_step_holds_exactly_above_two_delta(delta):
    # f(c+1) < f(c) + 1/(2(c+1)delta) reduces to c > 2 delta
    f = lambda c: 1 - 1 / c  # noqa: E731
    for c in [F(11, 10), F(3, 2), 2 * delta, 2 * delta + F(1, 100), F(5)]:
        assert (f(c + 1) < f(c) + 1 / (2 * (c + 1) * delta)) == (c > 2 * delta)


@pytest.mark.parametrize("R", [F(2, 5), F(2, 7), F(7, 6), F(3, 2), F(5, 2), F(3, 10)])
def test_single_orbit_profiles(R):
    params, eps = single_orbit_params(R)
    profile = build_standard_profile(params)
    orbits = extract_orbits(profile, R)
    window = filter_window(orbits, eps)
    assert [o.kind for o in window] == [OrbitKind.ORIGIN]
    assert params.c > 2 / eps
    # no tangency at the upper corner when 1 < 1/delta < 1/(m0 R)
    assert all(o.corner_index != 1 for o in orbits if o.kind is OrbitKind.SPHERE)
    m0 = floor_inv(R)
    for o in orbits:
        if o.corner_index == len(profile.corners) - 1 and o.kind is OrbitKind.SPHERE:
            assert o.action > 1 - m0 * R


@pytest.mark.parametrize("R", [F(2, 5), F(2, 7), F(3, 10)])
def test_stacked_profiles(R):
    profile, eps = stacked_profile(R)
    window = filter_window(extract_orbits(profile, R), eps)
    ms = sorted(o.m for o in window if o.kind is OrbitKind.SPHERE)
    assert ms == list(range(1, floor_inv(R) + 1))


@st.composite
def profiles(draw):
    n = draw(st.integers(1, 3))
    us = sorted(set(draw(st.lists(st.fractions(F(1, 20), F(3), max_denominator=30), min_size=n, max_size=n))))
    ys = sorted(set(draw(st.lists(st.fractions(F(11, 10), F(30), max_denominator=30),
                                  min_size=len(us), max_size=len(us)))), reverse=True)
    assume(len(ys) == len(us))
    plateau = draw(st.fractions(F(1, 2), F(1), max_denominator=10))
    corners = [(F(0), ys[0])] + [(u, y) for u, y in zip(us[:-1], ys[1:])] + [(us[-1], plateau)]
    try:
        return PLProfile(tuple(corners), plateau)
    except ProfileError:
        assume(False)


@settings(max_examples=150, deadline=None)
@given(profiles(), st.fractions(F(1, 10), F(3), max_denominator=20))
def test_extraction_matches_two_point_oracle(profile, R):
    assume((1 / R).denominator != 1)
    try:
        orbits = extract_orbits(profile, R)
    except DegeneracyError:
        assume(False)
    spheres = {(o.corner_index, o.m): o.vertical_intercept for o in orbits if o.kind is OrbitKind.SPHERE}
    assert spheres == oracles.orbit_oracle(profile.corners, profile.plateau, R)
    for o in orbits:
        assert o.action == 1 / o.vertical_intercept
        if o.kind is OrbitKind.SPHERE:
            s, uc = o.tangent_slope, o.u_location
            yc = dict(profile.corners)[uc]
            assert -s / (yc - uc * s) == o.m * R
            left, right = profile.slopes[o.corner_index - 1], profile.slopes[o.corner_index]
            assert min(left, right) < s < max(left, right)


@settings(max_examples=60, deadline=None)
@given(profiles(), st.fractions(F(1, 2), F(4), max_denominator=12))
def test_scaling_eta(profile, factor):
    delta = F(1, 3)
    assert compute_eta(profile.scaled(factor), delta) == factor * compute_eta(profile, delta)
