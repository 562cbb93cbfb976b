"""Piecewise-linear Hamiltonian profiles and their closed Reeb orbits.

A profile is a decreasing piecewise-linear function F(u) of u = pi|z|^2 / R,
given by its corner points and a plateau value. Closed Reeb orbits of the
(smoothed) contact form (dt - alpha)/F are read off from generalized tangent
lines: a line through a corner whose slope lies between the two adjacent
segment slopes. Such a line gives an orbit family of multiplicity m >= 1 when
its horizontal intercept is 1/(mR); the action is the reciprocal of its
vertical intercept. All arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import CriticalValueError, DegeneracyError, ProfileError

Rational = Fraction


def to_fraction(x) -> Fraction:
    """Exact conversion from int, Fraction, or a "p/q" / decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string like '0.1' or '1/10'")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def is_reciprocal_integer(R: Fraction) -> bool:
    """True when 1/R is a positive integer."""
    inv = 1 / R
    return inv.denominator == 1 and inv > 0


def floor_inv(R: Fraction) -> int:
    """[1/R], the integer part of 1/R."""
    return math.floor(1 / R)


@dataclass(frozen=True)
class PLProfile:
    corners: tuple[tuple[Fraction, Fraction], ...]
    plateau: Fraction

    def __post_init__(self):
        corners = tuple((to_fraction(u), to_fraction(y)) for u, y in self.corners)
        plateau = to_fraction(self.plateau)
        object.__setattr__(self, "corners", corners)
        object.__setattr__(self, "plateau", plateau)
        if len(corners) < 2:
            raise ProfileError("a profile needs the point at u = 0 and at least one corner")
        if corners[0][0] != 0:
            raise ProfileError("the first corner must sit at u = 0")
        if plateau <= 0:
            raise ProfileError("the plateau value must be positive")
        for (u0, y0), (u1, y1) in zip(corners, corners[1:]):
            if not u1 > u0:
                raise ProfileError(f"corner abscissae must increase: {fmt(u0)} then {fmt(u1)}")
            if not y1 < y0:
                raise ProfileError(f"profile must strictly decrease: {fmt(y0)} then {fmt(y1)}")
        if corners[-1][1] != plateau:
            raise ProfileError("the last corner must sit at the plateau value")
        s = self.slopes
        for i in range(len(s) - 1):
            if s[i] == s[i + 1]:
                raise ProfileError(f"corner {i + 1} is not a genuine corner (equal slopes)")

    @property
    def slopes(self) -> list[Fraction]:
        """Segment slopes, followed by the plateau slope 0."""
        c = self.corners
        out = [(y1 - y0) / (u1 - u0) for (u0, y0), (u1, y1) in zip(c, c[1:])]
        return out + [Fraction(0)]

    def __call__(self, u) -> Fraction:
        u = to_fraction(u)
        if u < 0:
            raise ValueError("profiles are defined for u >= 0")
        c = self.corners
        for (u0, y0), (u1, y1) in zip(c, c[1:]):
            if u <= u1:
                return y0 + (y1 - y0) * (u - u0) / (u1 - u0)
        return self.plateau

    def segment_intercept(self, i: int) -> Fraction | None:
        """Horizontal intercept of the line through segment i (None for the plateau)."""
        s = self.slopes[i]
        if s == 0:
            return None
        u0, y0 = self.corners[i]
        return u0 - y0 / s

    def scaled(self, factor) -> PLProfile:
        factor = to_fraction(factor)
        return PLProfile(tuple((u, y * factor) for u, y in self.corners), self.plateau * factor)


def default_b_rule(c: Fraction) -> Fraction:
    """b = f(c) = 1 - 1/c."""
    return 1 - 1 / c


@dataclass(frozen=True)
class StandardFamilyParams:
    """Parameters of the three-piece family F_c on the ball of capacity R."""

    R: Fraction
    delta: Fraction
    c: Fraction
    b_rule: Callable[[Fraction], Fraction] = field(default=default_b_rule, compare=False)

    def __post_init__(self):
        for name in ("R", "delta", "c"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.R <= 0:
            raise ProfileError("R must be positive")
        if is_reciprocal_integer(self.R):
            raise ProfileError(f"1/R = {fmt(1 / self.R)} is an integer")
        if not 0 < self.delta < 1:
            raise ProfileError("delta must lie in (0, 1)")
        if not self.c > 1:
            raise ProfileError("c must exceed 1")

    @property
    def b(self) -> Fraction:
        return to_fraction(self.b_rule(self.c))

    @property
    def m0(self) -> int:
        return floor_inv(self.R)


def build_standard_profile(p: StandardFamilyParams) -> PLProfile:
    """Corners (0, c), (a, y_a), (b, 1) and plateau 1.

    Left piece has slope -c*delta through (0, c); middle piece has twice that
    slope through (b, 1).
    """
    c, d, b = p.c, p.delta, p.b
    if not 0 < b:
        raise ProfileError(f"b = f(c) = {fmt(b)} must be positive")
    # c - c*d*u = 1 - 2*c*d*(u - b)
    a = (1 + 2 * c * d * b - c) / (c * d)
    if not 0 < a:
        raise ProfileError(
            f"degenerate profile: upper corner a = {fmt(a)} <= 0 "
            f"(needs 1 + 2*c*delta*b > c; with b = 1 - 1/c this is (2*delta - 1)(c - 1) > 0)"
        )
    if not a < b:
        raise ProfileError(f"degenerate profile: upper corner a = {fmt(a)} >= b = {fmt(b)}")
    return PLProfile(((Fraction(0), c), (a, c - c * d * a), (b, Fraction(1))), Fraction(1))


def three_piece_profile(c, left_intercept, knee, knee_intercept) -> PLProfile:
    """Profile through (0, c) aimed at (left_intercept, 0), then a steeper piece
    through (knee, 1) aimed at (knee_intercept, 0), then plateau 1."""
    c, hl, b, hm = map(to_fraction, (c, left_intercept, knee, knee_intercept))
    if not (c > 1 and hl > 0 and 0 < b < hm):
        raise ProfileError("need c > 1, left_intercept > 0 and 0 < knee < knee_intercept")
    s_left, s_mid = -c / hl, -1 / (hm - b)
    if not s_mid < s_left:
        raise ProfileError("the middle piece must be steeper than the left piece")
    a = (1 - s_mid * b - c) / (s_left - s_mid)
    if not 0 < a < b:
        raise ProfileError(f"upper corner a = {fmt(a)} must lie in (0, {fmt(b)})")
    return PLProfile(((Fraction(0), c), (a, c + s_left * a), (b, Fraction(1))), Fraction(1))


class OrbitKind(str, enum.Enum):
    ORIGIN = "origin"
    SPHERE = "sphere"
    PLATEAU = "plateau"


@dataclass(frozen=True)
class OrbitFamilyRecord:
    kind: OrbitKind
    m: int
    corner_index: int
    tangent_slope: Fraction
    vertical_intercept: Fraction
    u_location: Fraction

    @property
    def action(self) -> Fraction:
        return 1 / self.vertical_intercept


def _check_regular(profile: PLProfile, R: Fraction):
    for i in range(len(profile.corners) - 1):
        h = profile.segment_intercept(i)
        if h is None or h <= 0:
            continue
        m = 1 / (h * R)
        if m.denominator == 1 and m >= 1:
            raise DegeneracyError(
                f"segment {i} has horizontal intercept {fmt(h)} = 1/(mR) for m = {m.numerator}; "
                "orbits along it are degenerate"
            )


def extract_orbits(profile: PLProfile, R) -> list[OrbitFamilyRecord]:
    """All closed Reeb orbit families of the profile, in corner order."""
    R = to_fraction(R)
    if R <= 0:
        raise ProfileError("R must be positive")
    if is_reciprocal_integer(R):
        raise ProfileError(f"1/R = {fmt(1 / R)} is an integer")
    _check_regular(profile, R)
    corners, slopes = profile.corners, profile.slopes
    u0, y0 = corners[0]
    out = [OrbitFamilyRecord(OrbitKind.ORIGIN, 0, 0, slopes[0], y0, u0)]
    last = len(corners) - 1
    for j in range(1, last + 1):
        uc, yc = corners[j]
        h_left = profile.segment_intercept(j - 1)
        h_right = profile.segment_intercept(j) if j < last else None
        lo = min(h_left, h_right) if h_right is not None else h_left
        hi = max(h_left, h_right) if h_right is not None else None
        # 1/(mR) in (lo, hi)  <=>  1/(hi R) < m < 1/(lo R)
        m_min = 1 if hi is None else math.floor(1 / (hi * R)) + 1
        m_max = math.ceil(1 / (lo * R)) - 1
        for m in range(max(m_min, 1), m_max + 1):
            target = 1 / (m * R)
            run = target - uc
            out.append(OrbitFamilyRecord(OrbitKind.SPHERE, m, j, -yc / run, yc * target / run, uc))
        if j == last:
            out.append(OrbitFamilyRecord(OrbitKind.PLATEAU, 0, j, Fraction(0), profile.plateau, uc))
    return out


def filter_window(orbits: Sequence[OrbitFamilyRecord], epsilon) -> list[OrbitFamilyRecord]:
    """Orbits with action strictly below epsilon."""
    eps = to_fraction(epsilon)
    for o in orbits:
        if o.action == eps:
            raise CriticalValueError(f"epsilon = {fmt(eps)} is the action of the {o.kind.value} orbit m={o.m}")
    return [o for o in orbits if o.action < eps]


def warn_if_small_c(profile: PLProfile, epsilon) -> None:
    """The cofinal families use c > 2/epsilon; smaller c is allowed but flagged."""
    eps = to_fraction(epsilon)
    c = profile.corners[0][1]
    if not c > 2 / eps:
        warnings.warn(f"vertical intercept c = {fmt(c)} is not above 2/epsilon = {fmt(2 / eps)}", stacklevel=2)


def compute_eta(profile: PLProfile, delta) -> Fraction:
    """Largest eta with eta*(1 - delta*u) <= profile(u) for all u >= 0."""
    delta = to_fraction(delta)
    if not 0 < delta < 1:
        raise ProfileError("delta must lie in (0, 1)")
    return min(y / (1 - delta * u) for u, y in profile.corners if u < 1 / delta)


class Ordering(str, enum.Enum):
    LE = "LE"
    GE = "GE"
    INCOMPARABLE = "INCOMPARABLE"


@dataclass(frozen=True)
class ProfileComparison:
    verdict: Ordering
    equal: bool = False


def compare_profiles_ambient(P1: PLProfile, R1, P2: PLProfile, R2) -> ProfileComparison:
    """Pointwise order of w -> P1(w/R1) and w -> P2(w/R2) for w >= 0.

    Both are piecewise linear in w and constant past their last corner, so
    comparing at the union of corner abscissae decides the order exactly.
    """
    R1, R2 = to_fraction(R1), to_fraction(R2)
    ws = sorted({u * R1 for u, _ in P1.corners} | {u * R2 for u, _ in P2.corners})
    diffs = [P1(w / R1) - P2(w / R2) for w in ws]
    le = all(d <= 0 for d in diffs)
    ge = all(d >= 0 for d in diffs)
    if le and ge:
        return ProfileComparison(Ordering.LE, equal=True)
    if le:
        return ProfileComparison(Ordering.LE)
    if ge:
        return ProfileComparison(Ordering.GE)
    return ProfileComparison(Ordering.INCOMPARABLE)


def family_monotonicity_check(lower: StandardFamilyParams, upper: StandardFamilyParams) -> bool:
    """Check (1/2) F_upper <= F_lower and f(c_up) < f(c_low) + 1/(2 c_up delta).

    ``upper`` is normally the same family at c + 1.
    """
    if lower.R != upper.R or lower.delta != upper.delta:
        raise ProfileError("both members must share R and delta")
    F_lo, F_up = build_standard_profile(lower), build_standard_profile(upper)
    us = sorted({u for u, _ in F_lo.corners} | {u for u, _ in F_up.corners})
    halved = all(F_up(u) / 2 <= F_lo(u) for u in us)
    step = upper.b < lower.b + 1 / (2 * upper.c * upper.delta)
    return halved and step


def single_orbit_params(R) -> tuple[StandardFamilyParams, Fraction]:
    """Family member and window whose only orbit below the window is the origin.

    delta is the midpoint of (max([1/R] R, 1/2), 1), which keeps tangencies
    away from the upper corner; c is the least integer that pushes the origin
    action below epsilon/2 and the lower corner past 1/(([1/R] + 1) R).
    """
    R = to_fraction(R)
    if R <= 0 or is_reciprocal_integer(R):
        raise ProfileError(f"R = {fmt(R)} must be positive with 1/R not an integer")
    m0 = floor_inv(R)
    lo = max(m0 * R, Fraction(1, 2))
    delta = (lo + 1) / 2
    eps = (1 - m0 * R) / 2
    edge = 1 / ((m0 + 1) * R)
    # 1 - 1/c > edge  <=>  c > 1/(1 - edge)
    c = max(math.floor(2 / eps) + 1, math.floor(1 / (1 - edge)) + 1, 2)
    return StandardFamilyParams(R, delta, Fraction(c)), eps


def stacked_profile(R, first_block: int = 1) -> tuple[PLProfile, Fraction]:
    """Profile whose window holds the origin and sphere blocks first_block..[1/R].

    The left piece is aimed between 1/(first_block R) and 1/((first_block-1) R),
    the middle piece between 1/(([1/R]+1) R) and 1/([1/R] R).
    """
    R = to_fraction(R)
    if R <= 0 or is_reciprocal_integer(R):
        raise ProfileError(f"R = {fmt(R)} must be positive with 1/R not an integer")
    m0 = floor_inv(R)
    if not 1 <= first_block <= m0:
        raise ProfileError(f"first_block must lie in [1, {m0}]")
    h_left = Fraction(2, (2 * first_block - 1)) / R
    h_mid = Fraction(2, (2 * m0 + 1)) / R
    eps = Fraction(1, 2 * (2 * m0 + 1))
    c = Fraction(math.floor(2 / eps) + 1)
    knee = h_mid * (1 - 1 / (2 * c))
    return three_piece_profile(c, h_left, knee, h_mid), eps
