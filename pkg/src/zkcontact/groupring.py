"""Arithmetic in the group ring R = Z_k[T]/(T^k - 1) for an odd prime k.

Elements are dense coefficient vectors (coefficient of T^0 first). Since k is
prime, R is a local ring whose maximal ideal is generated by T - 1, so an
element is a unit exactly when its augmentation (sum of coefficients) is
nonzero mod k. ``is_unit_by_search`` keeps an independent check of that fact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ModulusError
from .fieldlinalg import rank_mod_p, solve_mod_p

DEFAULT_MAX_K = 97


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime k, the order of the cyclic group and of the coefficient field.

    ``max_k`` caps the size of dense k x k circulant matrices; pass ``None``
    to lift it when no free summands will be expanded.
    """

    k: int
    max_k: int | None = field(default=DEFAULT_MAX_K, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or isinstance(self.k, bool):
            raise ModulusError(f"modulus must be an integer, got {self.k!r}")
        if self.k == 2:
            raise ModulusError("k = 2 is not supported: the resolution used here needs k > 2")
        if not is_prime(self.k):
            raise ModulusError(f"k = {self.k} is not prime")
        if self.max_k is not None and self.k > self.max_k:
            raise ModulusError(f"k = {self.k} exceeds the configured cap {self.max_k}")
        object.__setattr__(self, "k", int(self.k))

    def __int__(self):
        return self.k


def as_modulus(k) -> PrimeModulus:
    if isinstance(k, PrimeModulus):
        return k
    return _cached_modulus(int(k))


@lru_cache(maxsize=None)
def _cached_modulus(k: int) -> PrimeModulus:
    return PrimeModulus(k)


@dataclass(frozen=True)
class GroupRingElement:
    modulus: PrimeModulus
    coeffs: tuple[int, ...]

    def __post_init__(self):
        k = self.modulus.k
        coeffs = tuple(int(c) % k for c in self.coeffs)
        if len(coeffs) != k:
            raise ValueError(f"expected {k} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def k(self) -> int:
        return self.modulus.k

    def _check(self, other: GroupRingElement):
        if other.modulus != self.modulus:
            raise ModulusError(f"modulus mismatch: {self.k} vs {other.k}")

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return scalar(self.modulus, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GroupRingElement(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return gr_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = one(self.modulus)
        for _ in range(e):
            out = out * self
        return out

    def augmentation(self) -> int:
        """Image under T -> 1, i.e. the sum of coefficients mod k."""
        return sum(self.coeffs) % self.k

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> GroupRingElement:
        if not gr_is_unit(self):
            raise ZeroDivisionError(f"{self} is not a unit")
        e0 = np.zeros(self.k, dtype=np.int64)
        e0[0] = 1
        x = solve_mod_p(action_matrix(self), e0, self.k)
        return GroupRingElement(self.modulus, tuple(int(v) for v in x))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) if terms else "0"


def element(k, coeffs) -> GroupRingElement:
    """Element from a (possibly short) coefficient list, padded with zeros."""
    mod = as_modulus(k)
    coeffs = list(coeffs)
    if len(coeffs) > mod.k:
        raise ValueError(f"too many coefficients for k = {mod.k}")
    return GroupRingElement(mod, tuple(coeffs) + (0,) * (mod.k - len(coeffs)))


def scalar(k, a: int) -> GroupRingElement:
    return element(k, [a])


def zero(k) -> GroupRingElement:
    return element(k, [])


def one(k) -> GroupRingElement:
    return element(k, [1])


def gen_T(k) -> GroupRingElement:
    """The generator T of the cyclic group."""
    return element(k, [0, 1])


def t_minus_one(k) -> GroupRingElement:
    return element(k, [-1, 1])


def norm_element(k) -> GroupRingElement:
    """p(T) = 1 + T + ... + T^(k-1)."""
    mod = as_modulus(k)
    return GroupRingElement(mod, (1,) * mod.k)


def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Product in R: cyclic convolution of the coefficient vectors mod k."""
    a._check(b)
    k = a.k
    out = [0] * k
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj:
                out[(i + j) % k] += ai * bj
    return GroupRingElement(a.modulus, tuple(out))


def gr_is_unit(a: GroupRingElement) -> bool:
    return a.augmentation() != 0


def is_unit_by_search(a: GroupRingElement) -> bool:
    """Unit test by solving a * x = 1 directly, without the local-ring shortcut."""
    e0 = np.zeros(a.k, dtype=np.int64)
    e0[0] = 1
    return solve_mod_p(action_matrix(a), e0, a.k) is not None


def action_matrix(a: GroupRingElement) -> np.ndarray:
    """k x k circulant matrix of x -> a*x in the basis 1, T, ..., T^(k-1).

    Column j holds the coefficients of a*T^j.
    """
    return np.array(a.coeffs, dtype=np.int64)[_circulant_index(a.k)]


@lru_cache(maxsize=None)
def _circulant_index(k: int) -> np.ndarray:
    # entry (i, j) of the circulant is the coefficient of T^(i - j)
    r = np.arange(k)
    return (r[:, None] - r[None, :]) % k


def kernel_dim(a: GroupRingElement) -> int:
    return a.k - rank_mod_p(action_matrix(a), a.k)


def all_elements(k):
    """Every element of R (k^k of them); only sensible for tiny k."""
    mod = as_modulus(k)
    for coeffs in itertools.product(range(mod.k), repeat=mod.k):
        yield GroupRingElement(mod, coeffs)


def random_element(k, rng: np.random.Generator) -> GroupRingElement:
    mod = as_modulus(k)
    return GroupRingElement(mod, tuple(int(v) for v in rng.integers(0, mod.k, mod.k)))


def random_unit(k, rng: np.random.Generator) -> GroupRingElement:
    """Uniform sample from the unit group, by rejection."""
    while True:
        a = random_element(k, rng)
        if gr_is_unit(a):
            return a
