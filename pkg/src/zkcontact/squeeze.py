"""Equivariant non-squeezing certificates and squeezing-room arithmetic.

A certificate for (R1, R2) picks a prime k and an integer l with
R2 < k/l < R1. Passing to the k-fold cover turns the balls into B(R_i/k),
and at grading p = -n-2nl the equivariant homology is 0 for the larger
radius and Z_k for the smaller one. A squeeze would make the identity of
Z_k factor through zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .assembler import GradingParams, predict_closed_form, window_complex
from .complexes import equivariant_homology
from .errors import CertificateError
from .groupring import PrimeModulus, is_prime
from .profiles import build_standard_profile, floor_inv, fmt, single_orbit_params, to_fraction

NUDGE_DENOMINATOR = 10**6


def find_prime_scale(R1, R2) -> tuple[int, int]:
    """Smallest l (then smallest prime k, k >= 3) with R2 < k/l < R1 and l < k."""
    R1, R2 = to_fraction(R1), to_fraction(R2)
    if not 1 < R2 < R1:
        raise ValueError(f"need 1 < R2 < R1, got R1 = {fmt(R1)}, R2 = {fmt(R2)}")
    ell = 1
    while True:
        lo = math.floor(ell * R2) + 1  # k > l*R2
        for k in range(max(lo, 3), math.ceil(ell * R1)):  # k < l*R1
            if is_prime(k) and ell < k:
                return k, ell
        ell += 1


def _scale_for_k(R1: Fraction, R2: Fraction, k: int) -> int:
    for ell in range(1, k):
        if R2 < Fraction(k, ell) < R1:
            return ell
    raise ValueError(f"no l < {k} with {fmt(R2)} < {k}/l < {fmt(R1)}")


def cover_radius(R, k) -> Fraction:
    """Radius of the preimage of B(R) under the k-fold cover."""
    R = to_fraction(R)
    if R <= 0 or int(k) < 1:
        raise ValueError("need R > 0 and k >= 1")
    return R / int(k)


def _nudge(R: Fraction, toward: Fraction, k: int) -> Fraction:
    """Closest rational to R, strictly between R and ``toward``, with k/x not an integer."""
    step = Fraction(1, NUDGE_DENOMINATOR)
    sign = 1 if toward > R else -1
    x = R
    while True:
        x = x + sign * step
        if not (min(R, toward) < x < max(R, toward)):
            step /= 10
            x = R
            continue
        if (k / x).denominator != 1:
            return x


@dataclass(frozen=True)
class PipelineRun:
    r: Fraction
    delta: Fraction
    c: Fraction
    epsilon: Fraction
    dim: int


@dataclass(frozen=True)
class Certificate:
    n: int
    R1: Fraction
    R2: Fraction
    certified_R1: Fraction
    certified_R2: Fraction
    k: int
    ell: int
    r1: Fraction
    r2: Fraction
    p: int
    run1: PipelineRun
    run2: PipelineRun
    narrative: tuple[str, ...]

    @property
    def dims(self) -> tuple[int, int]:
        return self.run1.dim, self.run2.dim

    def violations(self) -> list[str]:
        out = []
        if not is_prime(self.k):
            out.append(f"k = {self.k} is not prime")
        if not self.ell < self.k:
            out.append("l must be below k")
        if not self.R2 <= self.certified_R2 < Fraction(self.k, self.ell) < self.certified_R1 <= self.R1:
            out.append("radii do not straddle k/l")
        if self.r1 != self.certified_R1 / self.k or self.r2 != self.certified_R2 / self.k:
            out.append("scaled radii disagree with the cover")
        if not floor_inv(self.r1) < self.ell <= floor_inv(self.r2):
            out.append("[1/r1] < l <= [1/r2] fails")
        if not Fraction(1, self.k) < self.r2:
            out.append("r2 must exceed 1/k")
        if self.p != -self.n - 2 * self.n * self.ell:
            out.append("obstruction grading is not -n-2nl")
        if self.dims != (0, 1):
            out.append(f"dims at p are {self.dims}, expected (0, 1)")
        return out

    @property
    def valid(self) -> bool:
        return not self.violations()


def _pipeline_dim(n: int, r: Fraction, k: PrimeModulus, p: int) -> PipelineRun:
    params, eps = single_orbit_params(r)
    profile = build_standard_profile(params)
    g = GradingParams(n, k)
    _, _, c = window_complex(profile, r, eps, g)
    threshold = predict_closed_form(n, r, k.k).equivariant_threshold
    lo, hi = min(p, threshold) - 1, max(p, threshold)
    table = equivariant_homology(c, (lo, hi))
    expected = {m: int(m >= threshold) for m in range(lo, hi + 1)}
    if table.dims != expected:
        raise CertificateError(f"pipeline at r = {fmt(r)} disagrees with the closed form: {table.dims}")
    return PipelineRun(r, params.delta, params.c, eps, table[p])


def certify_nonsqueezing(n: int, R1, R2, k_override: int | None = None) -> Certificate:
    R1, R2 = to_fraction(R1), to_fraction(R2)
    if not 1 < R2 < R1:
        raise ValueError(f"need 1 < R2 < R1, got R1 = {fmt(R1)}, R2 = {fmt(R2)}")
    if n < 1:
        raise ValueError("n must be positive")
    if k_override is None:
        k, ell = find_prime_scale(R1, R2)
    else:
        k = int(k_override)
        if not is_prime(k) or k == 2:
            raise ValueError(f"k = {k} must be an odd prime")
        ell = _scale_for_k(R1, R2, k)
    mod = PrimeModulus(k, max_k=None)
    mid = Fraction(k, ell)
    cR1 = R1 if (k / R1).denominator != 1 else _nudge(R1, mid, k)
    cR2 = R2 if (k / R2).denominator != 1 else _nudge(R2, mid, k)
    r1, r2 = cover_radius(cR1, k), cover_radius(cR2, k)
    p = -n - 2 * n * ell
    run1, run2 = _pipeline_dim(n, r1, mod, p), _pipeline_dim(n, r2, mod, p)
    narrative = (
        f"A Z_{k}-equivariant squeeze of B({fmt(R1)}) into B({fmt(R2)}) lifts through the {k}-fold cover "
        f"to a squeeze psi of B({fmt(r1)}) into B({fmt(r2)}).",
        f"Then psi(B({fmt(r2)})) lies in psi(B({fmt(r1)})), which lies in B({fmt(r2)}), so the isomorphism "
        f"CH_{p}(B({fmt(r2)})) -> CH_{p}(psi(B({fmt(r2)}))) factors through CH_{p}(B({fmt(r1)})).",
        f"At p = {p} these groups are Z_{k}, 0 and Z_{k} (dims {run2.dim}, {run1.dim}, {run2.dim}); "
        f"an isomorphism of Z_{k} cannot factor through zero.",
    )
    cert = Certificate(n, R1, R2, cR1, cR2, k, ell, r1, r2, p, run1, run2, narrative)
    problems = cert.violations()
    if problems:
        raise CertificateError("; ".join(problems))
    return cert


def fN_image(R, N: int) -> Fraction:
    """Capacity of the image of B(R) under the radial shrinking map F_N."""
    R = to_fraction(R)
    if R <= 0 or int(N) < 0:
        raise ValueError("need R > 0 and N >= 0")
    return R / (1 + int(N) * R)


@dataclass(frozen=True)
class RoomReport:
    m: int
    kappa: int
    b: int
    sandwich_holds: bool
    strong_holds: bool
    required_room: Fraction | None
    ekp_bound: Fraction
    construction_bound: Fraction
    gap: tuple[Fraction, Fraction] | None


def room_report(m: int, kappa: int, b: int) -> RoomReport:
    """Compare the room needed to squeeze B(m/kappa) into itself with known bounds."""
    if not 0 < m < kappa:
        raise ValueError("need 0 < m < kappa")
    if b < 1:
        raise ValueError("need b >= 1")
    x = Fraction(m, kappa)
    sandwich = Fraction(1, b + 1) < x < Fraction(1, b)
    strong = x < 1 / (b + Fraction(1, m))
    construction = Fraction(m, kappa - m)
    required = Fraction(1, b) if sandwich else None
    gap = (required, construction) if sandwich and construction > required else None
    return RoomReport(m, kappa, b, sandwich, strong, required, Fraction(m, kappa - 1), construction, gap)
