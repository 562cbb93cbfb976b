"""Bounded complexes of R-modules and their (equivariant) homology over Z_k.

A complex stores, per degree, a tuple of summands (free or trivial modules)
and, per degree m, the differential d_m : C_m -> C_(m-1) as a sparse map
``{(row_generator, col_generator): entry}`` with group-ring entries. How an
entry x acts depends on the kinds of the two generators:

    free -> free        y |-> x*y
    trivial -> free     1 |-> x          (x must be T-invariant)
    free -> trivial     y |-> aug(x)*aug(y)
    trivial -> trivial  1 |-> aug(x)

Homology is taken of the underlying Z_k-vector spaces. Equivariant homology
is the homology of the total complex of C tensored over R with the
2-periodic resolution ... -> R --p(T)--> R --(T-1)--> R of the trivial module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ComplexError, StabilizationError
from .fieldlinalg import rank_mod_p
from .groupring import (
    GroupRingElement,
    PrimeModulus,
    action_matrix,
    as_modulus,
    norm_element,
    t_minus_one,
)

FREE = "free"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class EquivariantModule:
    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in (FREE, TRIVIAL):
            raise ValueError(f"unknown module kind {self.kind!r}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    def dim(self, k: int) -> int:
        return self.rank * k if self.kind == FREE else self.rank

    def __str__(self):
        base = "R" if self.kind == FREE else "Z_k"
        return base if self.rank == 1 else f"{base}^{self.rank}"


def Free(rank: int = 1) -> EquivariantModule:
    return EquivariantModule(FREE, rank)


def Trivial(dim: int = 1) -> EquivariantModule:
    return EquivariantModule(TRIVIAL, dim)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    degree: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class HomologyTable:
    window: tuple[int, int]
    dims: dict[int, int]
    stabilized: bool = True

    def nonzero(self) -> dict[int, int]:
        return {m: d for m, d in self.dims.items() if d}

    def __getitem__(self, m: int) -> int:
        return self.dims[m]


@dataclass(frozen=True)
class ResolutionTruncation:
    """Multipliers delta_1, ..., delta_D of the 2-periodic resolution."""

    modulus: PrimeModulus
    depth: int

    @cached_property
    def maps(self) -> list[GroupRingElement]:
        tm1, p = t_minus_one(self.modulus), norm_element(self.modulus)
        return [tm1 if i % 2 == 1 else p for i in range(1, self.depth + 1)]

    def multiplier(self, i: int) -> GroupRingElement:
        """The map E_i -> E_(i-1), for 1 <= i <= depth."""
        return self.maps[i - 1]


@dataclass
class GradedRComplex:
    modulus: PrimeModulus
    modules: dict[int, tuple[EquivariantModule, ...]] = field(default_factory=dict)
    diff: dict[int, dict[tuple[int, int], GroupRingElement]] = field(default_factory=dict)

    def __post_init__(self):
        self.modulus = as_modulus(self.modulus)
        self.modules = {
            m: (mods,) if isinstance(mods, EquivariantModule) else tuple(mods)
            for m, mods in self.modules.items()
        }
        self.modules = {m: mods for m, mods in self.modules.items() if any(x.rank for x in mods)}
        self._gens: dict[int, list[str]] = {}
        self._matrices: dict[int, np.ndarray] = {}

    @property
    def k(self) -> int:
        return self.modulus.k

    def degrees(self) -> list[int]:
        return sorted(self.modules)

    def is_empty(self) -> bool:
        return not self.modules

    def generators(self, m: int) -> list[str]:
        """Kinds of the rank-one generators of C_m, in summand order."""
        if m not in self._gens:
            gens = []
            for mod in self.modules.get(m, ()):
                gens.extend([mod.kind] * mod.rank)
            self._gens[m] = gens
        return self._gens[m]

    def dim(self, m: int) -> int:
        return sum(mod.dim(self.k) for mod in self.modules.get(m, ()))

    def _offsets(self, m: int) -> list[int]:
        out, pos = [], 0
        for g in self.generators(m):
            out.append(pos)
            pos += self.k if g == FREE else 1
        return out

    def matrix(self, m: int) -> np.ndarray:
        """d_m expanded to a dim(m-1) x dim(m) matrix over Z_k."""
        if m in self._matrices:
            return self._matrices[m]
        k = self.k
        rows, cols = self.dim(m - 1), self.dim(m)
        M = np.zeros((rows, cols), dtype=np.int64)
        if rows and cols:
            tgt, src = self.generators(m - 1), self.generators(m)
            roff, coff = self._offsets(m - 1), self._offsets(m)
            for (i, j), x in self.diff.get(m, {}).items():
                r0, c0 = roff[i], coff[j]
                if tgt[i] == FREE and src[j] == FREE:
                    M[r0:r0 + k, c0:c0 + k] = action_matrix(x)
                elif tgt[i] == FREE:
                    M[r0:r0 + k, c0] = x.coeffs
                elif src[j] == FREE:
                    M[r0, c0:c0 + k] = x.augmentation()
                else:
                    M[r0, c0] = x.augmentation()
        self._matrices[m] = M
        return M

    def min_degree(self) -> int | None:
        return min(self.modules) if self.modules else None

    def max_degree(self) -> int | None:
        return max(self.modules) if self.modules else None

    def shifted(self, s: int) -> GradedRComplex:
        return GradedRComplex(
            self.modulus,
            {m + s: mods for m, mods in self.modules.items()},
            {m + s: dict(d) for m, d in self.diff.items()},
        )


def validate_complex(c: GradedRComplex) -> ValidationReport:
    """Check entry shapes, T-equivariance of entries into free generators, and d^2 = 0."""
    k = c.k
    tm1 = t_minus_one(c.modulus)
    for m in sorted(c.diff):
        src, tgt = c.generators(m), c.generators(m - 1)
        for (i, j), x in c.diff[m].items():
            if x.modulus != c.modulus:
                return ValidationReport(False, m, f"entry {(i, j)} has modulus {x.k}, expected {k}")
            if not (0 <= i < len(tgt) and 0 <= j < len(src)):
                if x.is_zero():
                    continue
                return ValidationReport(False, m, f"entry {(i, j)} outside the generator range")
            if src[j] == TRIVIAL and tgt[i] == FREE and not (tm1 * x).is_zero():
                return ValidationReport(False, m, f"entry {(i, j)} = {x} is not T-invariant")
    for m in sorted(c.diff):
        if (m - 1) not in c.diff:
            continue
        a, b = c.matrix(m - 1), c.matrix(m)
        if a.size == 0 or b.size == 0:
            continue
        # float64 matmul is exact here: entries < k <= 97 and inner sizes stay small
        prod = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % k
        if prod.any():
            return ValidationReport(False, m - 1, f"d_{m - 1} o d_{m} != 0")
    return ValidationReport(True)


def morse_block(n: int, k) -> GradedRComplex:
    """Equivariant Morse complex of the perturbed function on S^(2n-1).

    Free rank-one modules in degrees 0..2n-1 with d_i = (T - 1) for odd i and
    d_i = p(T) for even i, so the homology is that of S^(2n-1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    mod = as_modulus(k)
    tm1, p = t_minus_one(mod), norm_element(mod)
    modules = {i: (Free(1),) for i in range(2 * n)}
    diff = {i: {(0, 0): tm1 if i % 2 else p} for i in range(1, 2 * n)}
    return GradedRComplex(mod, modules, diff)


def _require_valid(c: GradedRComplex):
    report = validate_complex(c)
    if not report:
        raise ComplexError(f"invalid complex at degree {report.degree}: {report.reason}")


def _table(c: GradedRComplex, window: tuple[int, int]) -> dict[int, int]:
    lo, hi = window
    ranks: dict[int, int] = {}

    def rank(m):
        if m not in ranks:
            ranks[m] = rank_mod_p(c.matrix(m), c.k) if c.dim(m) and c.dim(m - 1) else 0
        return ranks[m]

    return {m: c.dim(m) - rank(m) - rank(m + 1) for m in range(lo, hi + 1)}


def homology(c: GradedRComplex, window: tuple[int, int], check: bool = True) -> HomologyTable:
    """Dimensions over Z_k of H_m(C) for lo <= m <= hi."""
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {window}")
    if check:
        _require_valid(c)
    return HomologyTable((lo, hi), _table(c, (lo, hi)))


def tensor_with_resolution(c: GradedRComplex, depth: int) -> GradedRComplex:
    """Total complex of C_j (x)_R E_i, truncated at E_depth.

    C_j (x)_R E_i is identified with C_j; the resolution map acts on it by
    multiplication, which kills trivial summands. Total differential is
    d (x) 1 + (-1)^j 1 (x) delta.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    mod = c.modulus
    res = ResolutionTruncation(mod, depth)
    if c.is_empty():
        return GradedRComplex(mod)
    degs = c.degrees()
    lo, hi = degs[0], degs[-1] + depth

    # layout[t] = list of (j, i, first_generator_index)
    layout: dict[int, list[tuple[int, int, int]]] = {}
    modules: dict[int, tuple[EquivariantModule, ...]] = {}
    for t in range(lo, hi + 1):
        parts, mods, pos = [], [], 0
        for j in degs:
            i = t - j
            if 0 <= i <= depth:
                parts.append((j, i, pos))
                mods.extend(c.modules[j])
                pos += len(c.generators(j))
        if mods:
            layout[t] = parts
            modules[t] = tuple(mods)

    def start(t, j, i):
        for jj, ii, pos in layout.get(t, ()):
            if jj == j and ii == i:
                return pos
        return None

    diff: dict[int, dict[tuple[int, int], GroupRingElement]] = {}
    for t, parts in layout.items():
        entries: dict[tuple[int, int], GroupRingElement] = {}
        for j, i, pos in parts:
            # horizontal: d_j (x) 1
            tgt = start(t - 1, j - 1, i)
            if tgt is not None:
                for (r, s), x in c.diff.get(j, {}).items():
                    entries[(tgt + r, pos + s)] = x
            # vertical: (-1)^j 1 (x) delta_i
            if i >= 1:
                tgt = start(t - 1, j, i - 1)
                delta = res.multiplier(i)
                if j % 2:
                    delta = -delta
                for g, kind in enumerate(c.generators(j)):
                    if kind == FREE:
                        entries[(tgt + g, pos + g)] = delta
        if entries:
            diff[t] = entries
    return GradedRComplex(mod, modules, diff)


def resolution_depth(c: GradedRComplex, window: tuple[int, int]) -> int:
    """Smallest depth whose truncation cannot affect homology in the window."""
    if c.is_empty():
        return 0
    return max(window[1] - c.min_degree() + 2, 0)


def equivariant_homology(c: GradedRComplex, window: tuple[int, int], check: bool = True) -> HomologyTable:
    """Z_k-equivariant homology on the window, confirmed at two resolution depths."""
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {window}")
    if check:
        _require_valid(c)
    depth = resolution_depth(c, window)
    tables = []
    for d in (depth, depth + 2):
        total = tensor_with_resolution(c, d)
        if check:
            _require_valid(total)
        tables.append(_table(total, window))
    if tables[0] != tables[1]:
        diffs = {m: (tables[0][m], tables[1][m]) for m in tables[0] if tables[0][m] != tables[1][m]}
        raise StabilizationError(f"equivariant homology not stable between depths {depth} and {depth + 2}: {diffs}")
    return HomologyTable((lo, hi), tables[0], stabilized=True)

