"""Independent reference implementations used to check the library.

Nothing here imports the package: each oracle recomputes its answer from
first principles with plain Python integers and Fractions (or scipy for the
smoothing oracle).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from scipy.optimize import brentq


# --- linear algebra over F_p -------------------------------------------------

def rank_mod_p(rows, p):
    """Row-reduction rank with plain lists."""
    M = [[int(x) % p for x in r] for r in rows]
    if not M or not M[0]:
        return 0
    rank, ncols = 0, len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


# --- the group ring Z_k[T]/(T^k - 1) ------------------------------------------

def cyc_mul(a, b, k):
    """Polynomial product, then fold exponents mod k."""
    full = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            full[i + j] += x * y
    out = [0] * k
    for e, c in enumerate(full):
        out[e % k] = (out[e % k] + c) % k
    return out


def has_inverse_brute(a, k):
    """Search every element x of the ring for a * x = 1."""
    unit = [1] + [0] * (k - 1)
    return any(cyc_mul(a, list(x), k) == unit for x in itertools.product(range(k), repeat=k))


def mult_matrix(a, k):
    """Matrix of x -> a*x built from products with basis monomials."""
    cols = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        cols.append(cyc_mul(a, e, k))
    return [[cols[j][i] for j in range(k)] for i in range(k)]


# --- chain complexes ---------------------------------------------------------

def complex_homology(c, window, reduce_to_trivial=False):
    """Homology of a library complex, recomputed with the oracle matrices and ranks.

    With ``reduce_to_trivial`` the complex is first tensored with Z_k, i.e.
    every free generator becomes one trivial generator and entries become
    their augmentations.
    """
    k = c.k

    def gens(m):
        return c.generators(m)

    def size(kind):
        return 1 if reduce_to_trivial or kind == "trivial" else k

    def block(x, tgt, src):
        coeffs = list(x.coeffs)
        aug = sum(coeffs) % k
        if reduce_to_trivial:
            return [[aug]]
        if tgt == "free" and src == "free":
            return mult_matrix(coeffs, k)
        if tgt == "free":
            return [[v] for v in coeffs]
        if src == "free":
            return [[aug] * k]
        return [[aug]]

    def matrix(m):
        src, tgt = gens(m), gens(m - 1)
        rows, cols = sum(size(g) for g in tgt), sum(size(g) for g in src)
        M = [[0] * cols for _ in range(rows)]
        roff = list(itertools.accumulate([size(g) for g in tgt], initial=0))
        coff = list(itertools.accumulate([size(g) for g in src], initial=0))
        for (i, j), x in c.diff.get(m, {}).items():
            B = block(x, tgt[i], src[j])
            for r, row in enumerate(B):
                for s, v in enumerate(row):
                    M[roff[i] + r][coff[j] + s] = v
        return M, rows, cols

    def rank(m):
        M, rows, cols = matrix(m)
        return rank_mod_p(M, k) if rows and cols else 0

    out = {}
    for m in range(window[0], window[1] + 1):
        dim = sum(size(g) for g in gens(m))
        out[m] = dim - rank(m) - rank(m + 1)
    return out


# --- lines and tangent lines --------------------------------------------------

def line_through(p, q):
    """(slope, vertical intercept, horizontal intercept) of the line through p and q."""
    (x0, y0), (x1, y1) = p, q
    s = Fraction(y1 - y0) / (x1 - x0)
    b = y0 - s * x0
    return s, b, (-b / s if s else None)


def orbit_oracle(corners, plateau, R):
    """Sphere families by direct two-point line construction.

    For each corner j and each m, draw the line from the corner to (1/(mR), 0)
    and keep it when its slope is strictly between the adjacent segment slopes.
    Returns {(corner, m): vertical_intercept}.
    """
    R = Fraction(R)
    pts = [(Fraction(u), Fraction(y)) for u, y in corners]
    slopes = [line_through(pts[i], pts[i + 1])[0] for i in range(len(pts) - 1)] + [Fraction(0)]
    found = {}
    for j in range(1, len(pts)):
        lo, hi = slopes[j - 1], slopes[j]
        m = 1
        while True:
            x = 1 / (m * R)
            if x <= pts[j][0]:
                break
            s, b, _ = line_through(pts[j], (x, Fraction(0)))
            if min(lo, hi) < s < max(lo, hi):
                found[(j, m)] = b
            m += 1
    return found


# --- ladders -----------------------------------------------------------------

def enumerate_k3_n1(top_to_bottom=True):
    """All commuting ladders with top length 3 and bottom length 2 over k = 3.

    Only the units on the first arrow of each row enter a square inside the
    overlap, so the top row's second unit is fixed to 1. Returns a list of
    (c_top, c_bottom, a0, a1, a2) coefficient tuples, computed with the
    oracle's ring arithmetic.
    """
    k = 3
    ring = list(itertools.product(range(k), repeat=k))
    mul = {(x, y): tuple(cyc_mul(list(x), list(y), k)) for x in ring for y in ring}
    units = [x for x in ring if has_inverse_brute(list(x), k)]
    p, tm1 = (1, 1, 1), (k - 1, 1, 0)
    out = []
    for c_top, c_bot, a0 in itertools.product(units, units, range(k)):
        src, tgt = (c_top, c_bot) if top_to_bottom else (c_bot, c_top)
        lhs0 = mul[(tgt, p)]
        rhs0 = tuple(a0 * v % k for v in lhs0)  # (c_tgt p) * a0
        src_p = mul[(src, p)]
        for a1 in ring:
            if mul[(a1, src_p)] != rhs0:
                continue
            right = mul[(tm1, a1)]
            for a2 in ring:
                if mul[(a2, tm1)] == right:
                    out.append((c_top, c_bot, a0, a1, a2))
    return out, set(units)


# --- parabolic smoothing ------------------------------------------------------

class SmoothedProfile:
    """The PL profile with each corner replaced by a parabolic arc of half-width h."""

    def __init__(self, corners, plateau, h):
        self.pts = [(float(u), float(y)) for u, y in corners]
        self.h = h
        n = len(self.pts)
        self.slopes = [
            (self.pts[i + 1][1] - self.pts[i][1]) / (self.pts[i + 1][0] - self.pts[i][0]) for i in range(n - 1)
        ] + [0.0]

    def arc(self, j):
        """(lo, hi, F, dF) on the arc around corner j >= 1."""
        uc, yc = self.pts[j]
        s1, s2, h = self.slopes[j - 1], self.slopes[j], self.h

        def F(u):
            return yc + s1 * (u - uc) + (s2 - s1) * (u - uc + h) ** 2 / (4 * h)

        def dF(u):
            return s1 + (s2 - s1) * (u - uc + h) / (2 * h)

        return uc - h, uc + h, F, dF

    def tangencies(self, R, m_max=50):
        """{(corner, m): vertical intercept} from smooth tangent lines hitting (1/(mR), 0)."""
        out = {}
        for j in range(1, len(self.pts)):
            lo, hi, F, dF = self.arc(j)

            def g(u, target):
                # horizontal intercept of the tangent at u, minus the target
                return u - F(u) / dF(u) - target

            for m in range(1, m_max + 1):
                target = 1 / (m * R)
                a, b = lo, hi
                if self.slopes[j] == 0.0:
                    b = hi - 1e-12 * self.h  # dF vanishes at the right end
                ga, gb = g(a, target), g(b, target)
                if ga * gb >= 0:
                    continue
                u = brentq(g, a, b, args=(target,), xtol=1e-15, rtol=1e-15, maxiter=500)
                out[(j, m)] = F(u) - u * dF(u)
        return out
