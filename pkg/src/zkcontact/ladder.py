"""Chain-map ladders between origin-plus-blocks rows, and unit propagation.

Each row is Z_k followed by free modules R, with arrows alternating
c*p(T) (starting out of the Z_k head) and (T - 1). A ladder adds vertical
maps a_0 in Z_k and a_j in R between the rows, pointing down or up. When the
squares commute and a_0 is a unit, every a_j is a unit of R: across a (T - 1)
square the augmentation of a_j is unchanged, across a c*p(T) square it is
multiplied by a ratio of unit augmentations.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import LadderCounterexample
from .fieldlinalg import solve_affine_mod_p
from .groupring import (
    GroupRingElement,
    PrimeModulus,
    action_matrix,
    as_modulus,
    element,
    gr_is_unit,
    norm_element,
    random_unit,
    scalar,
    t_minus_one,
)

SCHEMA_VERSION = 1


class Direction(str, enum.Enum):
    TOP_TO_BOTTOM = "top_to_bottom"
    BOTTOM_TO_TOP = "bottom_to_top"


@dataclass(frozen=True)
class LadderRow:
    """Z_k head plus ``length`` free modules; ``units[i]`` scales the i-th p(T) arrow."""

    length: int
    units: tuple[GroupRingElement, ...]

    def __post_init__(self):
        needed = (self.length + 1) // 2
        if len(self.units) != needed:
            raise ValueError(f"a row with {self.length} free modules needs {needed} units, got {len(self.units)}")

    def arrow(self, i: int) -> GroupRingElement:
        """Multiplier of the arrow from position i to i + 1 (position 0 is the head)."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        if i % 2:
            return t_minus_one(self.units[0].modulus)
        return self.units[i // 2] * norm_element(self.units[0].modulus)


@dataclass(frozen=True)
class LadderSpec:
    modulus: PrimeModulus
    top: LadderRow
    bottom: LadderRow
    a0: int
    verticals: tuple[GroupRingElement, ...]
    direction: Direction = Direction.TOP_TO_BOTTOM
    N: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "modulus", as_modulus(self.modulus))
        object.__setattr__(self, "a0", int(self.a0) % self.modulus.k)
        object.__setattr__(self, "direction", Direction(self.direction))
        overlap = min(self.top.length, self.bottom.length)
        if len(self.verticals) != overlap:
            raise ValueError(f"expected {overlap} vertical maps a_1..a_{overlap}, got {len(self.verticals)}")

    @property
    def overlap(self) -> int:
        return min(self.top.length, self.bottom.length)

    def vertical(self, j: int) -> GroupRingElement:
        return scalar(self.modulus, self.a0) if j == 0 else self.verticals[j - 1]

    def rows(self) -> tuple[LadderRow, LadderRow]:
        """(source, target) rows of the vertical maps."""
        if self.direction is Direction.TOP_TO_BOTTOM:
            return self.top, self.bottom
        return self.bottom, self.top

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "ladder",
            "k": self.modulus.k,
            "direction": self.direction.value,
            "N": self.N,
            "top": {"length": self.top.length, "units": [list(u.coeffs) for u in self.top.units]},
            "bottom": {"length": self.bottom.length, "units": [list(u.coeffs) for u in self.bottom.units]},
            "a0": self.a0,
            "verticals": [list(a.coeffs) for a in self.verticals],
        }

    @classmethod
    def from_dict(cls, d: dict) -> LadderSpec:
        k = as_modulus(d["k"])

        def row(r):
            return LadderRow(int(r["length"]), tuple(element(k, u) for u in r["units"]))

        return cls(
            k,
            row(d["top"]),
            row(d["bottom"]),
            int(d["a0"]),
            tuple(element(k, a) for a in d["verticals"]),
            Direction(d.get("direction", Direction.TOP_TO_BOTTOM.value)),
            d.get("N"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class SquareReport:
    ok: bool
    square: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class UnitVerdict:
    all_units: bool
    first_non_unit: int | None = None


def _square_sides(ladder: LadderSpec, i: int):
    src, tgt = ladder.rows()
    after = ladder.vertical(i + 1) * src.arrow(i)
    before = tgt.arrow(i) * ladder.vertical(i)
    return after, before


def validate_commutativity(ladder: LadderSpec) -> SquareReport:
    """Check every square between positions i and i + 1 inside the overlap.

    Squares past the end of the shorter row are not checked.
    """
    for i in range(ladder.overlap):
        after, before = _square_sides(ladder, i)
        if after != before:
            return SquareReport(False, i, f"square {i}: {after} != {before}")
    return SquareReport(True)


def propagate_units(ladder: LadderSpec) -> UnitVerdict:
    """Report whether every vertical map is a unit.

    Raises ``LadderCounterexample`` (with a JSON dump) if a_0 is a unit but
    some a_j is not, since units must propagate along a commuting ladder.
    """
    report = validate_commutativity(ladder)
    if not report:
        raise ValueError(f"ladder does not commute: {report.detail}")
    if ladder.a0 == 0:
        return UnitVerdict(False, 0)
    for j in range(1, ladder.overlap + 1):
        if not gr_is_unit(ladder.vertical(j)):
            raise LadderCounterexample(f"a_0 = {ladder.a0} is a unit but a_{j} = {ladder.vertical(j)} is not",
                                       ladder.dumps())
    return UnitVerdict(True)


def random_commuting_ladder(seed, k, N: int, direction=Direction.TOP_TO_BOTTOM) -> LadderSpec:
    """Sample a commuting ladder with unit a_0.

    The top row has 2N + 1 free modules, the bottom row 2N. Units are uniform;
    each a_(j+1) is uniform over the affine solution set of its square.
    """
    if N < 1 or N > 4:
        raise ValueError("N must lie in [1, 4]")
    mod = as_modulus(k)
    rng = np.random.default_rng(seed)
    direction = Direction(direction)
    top_len, bottom_len = 2 * N + 1, 2 * N
    top = LadderRow(top_len, tuple(random_unit(mod, rng) for _ in range((top_len + 1) // 2)))
    bottom = LadderRow(bottom_len, tuple(random_unit(mod, rng) for _ in range((bottom_len + 1) // 2)))
    src, tgt = (top, bottom) if direction is Direction.TOP_TO_BOTTOM else (bottom, top)
    a0 = int(rng.integers(1, mod.k))
    current = scalar(mod, a0)
    verticals = []
    for i in range(min(top_len, bottom_len)):
        A = action_matrix(src.arrow(i))
        rhs = np.array((tgt.arrow(i) * current).coeffs, dtype=np.int64)
        sol = solve_affine_mod_p(A, rhs, mod.k)
        if sol is None:
            raise RuntimeError(f"square {i} has no solution")  # cannot happen for unit a_0
        x, kernel = sol
        if len(kernel):
            x = (x + rng.integers(0, mod.k, len(kernel)) @ kernel) % mod.k
        current = element(mod, [int(v) for v in x])
        verticals.append(current)
    return LadderSpec(mod, top, bottom, a0, tuple(verticals), direction, N)
