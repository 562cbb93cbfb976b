"""From an orbit window to the equivariant chain complex, and back to the theorems.

The window complex is the origin orbit (a trivial module Z_k) followed by one
shifted Morse block per sphere family S_m, with connecting maps c_j * p(T).
Gradings: block m occupies degrees -n-2nm .. -n-2nm+2n-1, and the origin sits
at -n-2n*m_or, where m_or counts the m >= 1 with 1/(mR) beyond the horizontal
intercept of the leftmost profile segment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import (
    GradedRComplex,
    HomologyTable,
    Free,
    Trivial,
    equivariant_homology,
    homology,
    validate_complex,
)
from .errors import ComplexError, LayoutError, NonFreeActionError, ProfileError
from .groupring import GroupRingElement, PrimeModulus, as_modulus, norm_element, one, t_minus_one
from .profiles import (
    OrbitFamilyRecord,
    OrbitKind,
    PLProfile,
    extract_orbits,
    filter_window,
    floor_inv,
    fmt,
    is_reciprocal_integer,
    to_fraction,
    warn_if_small_c,
)


@dataclass(frozen=True)
class GradingParams:
    n: int
    k: PrimeModulus

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "k", as_modulus(self.k))


@dataclass(frozen=True)
class BlockLayout:
    n: int
    origin_degree: int
    block_ms: tuple[int, ...]
    connecting_units: tuple[GroupRingElement, ...] = ()

    def bottom(self, m: int) -> int:
        return -self.n - 2 * self.n * m

    def top(self, m: int) -> int:
        return self.bottom(m) + 2 * self.n - 1

    def with_units(self, units: Sequence[GroupRingElement]) -> BlockLayout:
        return BlockLayout(self.n, self.origin_degree, self.block_ms, tuple(units))

    def validate(self, k: PrimeModulus) -> None:
        n = self.n
        if (self.origin_degree + n) % (2 * n):
            raise LayoutError(f"origin degree {self.origin_degree} is not of the form -n-2n*m")
        m_or = (-self.origin_degree - n) // (2 * n)
        expected = tuple(range(m_or + 1, m_or + 1 + len(self.block_ms)))
        if self.block_ms != expected:
            raise LayoutError(
                f"non-standard layout: blocks {list(self.block_ms)} should be contiguous from m = {m_or + 1}"
            )
        for m in self.block_ms:
            if m % k.k == 0:
                raise NonFreeActionError(f"block m = {m} is divisible by k = {k.k}: the Z_k action is not free")
        if self.block_ms and self.origin_degree - 1 != self.top(self.block_ms[0]):
            raise LayoutError("origin must sit one degree above the first block")
        if self.connecting_units and len(self.connecting_units) != len(self.block_ms):
            raise LayoutError(
                f"need {len(self.block_ms)} connecting units, got {len(self.connecting_units)}"
            )


def origin_multiplicity(profile: PLProfile, R) -> int:
    """#{m >= 1 : 1/(mR) > h_left}, h_left the intercept of the leftmost segment."""
    R = to_fraction(R)
    h_left = profile.segment_intercept(0)
    bound = 1 / (h_left * R)  # m < bound
    return max(-(-bound.numerator // bound.denominator) - 1, 0)


def assign_degrees(orbits: Sequence[OrbitFamilyRecord], profile: PLProfile, R, g: GradingParams) -> BlockLayout:
    origins = [o for o in orbits if o.kind is OrbitKind.ORIGIN]
    if len(origins) != 1:
        raise LayoutError(f"expected exactly one origin orbit in the window, found {len(origins)}")
    others = [o for o in orbits if o.kind is not OrbitKind.ORIGIN]
    if any(o.kind is OrbitKind.PLATEAU for o in others):
        raise LayoutError("non-standard layout: the plateau orbit lies in the window")
    ms = sorted(o.m for o in others)
    if len(set(ms)) != len(ms):
        raise LayoutError(f"non-standard layout: repeated sphere multiplicities {ms}")
    m_or = origin_multiplicity(profile, R)
    n = g.n
    layout = BlockLayout(n, -n - 2 * n * m_or, tuple(ms))
    layout.validate(g.k)
    return layout


def build_complex(layout: BlockLayout, g: GradingParams) -> GradedRComplex:
    k = g.k
    if layout.n != g.n:
        raise LayoutError(f"layout built for n = {layout.n}, grading uses n = {g.n}")
    layout.validate(k)
    n = g.n
    p, tm1 = norm_element(k), t_minus_one(k)
    units = layout.connecting_units or tuple(one(k) for _ in layout.block_ms)
    modules = {layout.origin_degree: (Trivial(1),)}
    diff: dict[int, dict] = {}
    source = layout.origin_degree
    for m, unit in zip(layout.block_ms, units):
        bot = layout.bottom(m)
        for local in range(2 * n):
            modules[bot + local] = (Free(1),)
            if local:
                diff[bot + local] = {(0, 0): tm1 if local % 2 else p}
        diff[source] = {(0, 0): unit * p}
        source = bot
    c = GradedRComplex(k, modules, diff)
    report = validate_complex(c)
    if not report:
        raise ComplexError(f"assembled complex is invalid at degree {report.degree}: {report.reason}")
    return c


@dataclass(frozen=True)
class ClosedFormPrediction:
    noneq_degree: int
    equivariant_threshold: int


def predict_closed_form(n: int, R, k: int | None = None) -> ClosedFormPrediction:
    """Both theorems put the answer at -n - 2n[1/R]; ``k`` adds the R > 1/k check."""
    R = to_fraction(R)
    if R <= 0 or is_reciprocal_integer(R):
        raise ProfileError(f"1/R = {fmt(1 / R)} must not be a positive integer")
    if k is not None and not R > Fraction(1, int(k)):
        raise ProfileError(f"the equivariant formula needs R > 1/k, got R = {fmt(R)}, k = {int(k)}")
    d = -n - 2 * n * floor_inv(R)
    return ClosedFormPrediction(d, d)


def theorem_window(n: int, R) -> tuple[int, int]:
    d = predict_closed_form(n, R).noneq_degree
    return d - 2 * n, -n + 1


@dataclass
class TheoremReport:
    n: int
    k: int
    R: Fraction
    epsilon: Fraction
    prediction: ClosedFormPrediction
    layout: BlockLayout
    window: tuple[int, int]
    noneq: HomologyTable
    equivariant: HomologyTable
    noneq_ok: bool
    equivariant_ok: bool | None
    orbits: list[OrbitFamilyRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.noneq_ok and self.equivariant_ok is not False


def window_complex(profile: PLProfile, R, epsilon, g: GradingParams, units=None):
    """Orbits below epsilon, their layout, and the assembled complex."""
    orbits = filter_window(extract_orbits(profile, R), epsilon)
    layout = assign_degrees(orbits, profile, R, g)
    if units is not None:
        layout = layout.with_units(units)
    return orbits, layout, build_complex(layout, g)


def verify_against_theorems(profile: PLProfile, R, epsilon, g: GradingParams, units=None,
                            window: tuple[int, int] | None = None) -> TheoremReport:
    """Run the pipeline and compare with -n-2n[1/R]: a single class there
    non-equivariantly, and a half-line of classes from there equivariantly.

    The equivariant comparison is skipped (``equivariant_ok is None``) when
    R <= 1/k, where the closed form does not apply.
    """
    R, eps = to_fraction(R), to_fraction(epsilon)
    warn_if_small_c(profile, eps)
    pred = predict_closed_form(g.n, R)
    orbits, layout, c = window_complex(profile, R, eps, g, units)
    window = window or theorem_window(g.n, R)
    noneq = homology(c, window)
    eq = equivariant_homology(c, window)
    target = pred.noneq_degree
    noneq_ok = all(d == (1 if m == target else 0) for m, d in noneq.dims.items())
    if R > Fraction(1, g.k.k):
        eq_ok = all(d == (1 if m >= target else 0) for m, d in eq.dims.items())
    else:
        eq_ok = None
    return TheoremReport(g.n, g.k.k, R, eps, pred, layout, window, noneq, eq, noneq_ok, eq_ok, orbits)
