"""Casoratians: determinants of integer-shifted grid functions.

W[f_1..f_n](x) = det( f_k(x+j) )_{j=0..n-1, k=1..n}, the discrete analogue
of a Wronskian; W[](x) = 1.  Everything is exact: small determinants expand
by cofactors, larger ones use Bareiss elimination (fraction-free in spirit;
over a field the exact divisions are just exact).

Three identities drive all later constructions, so they get a randomized
exact verifier here:

  1. gauge covariance: multiplying every entry function by g(x) pulls out
     prod_{k<n} g(x+k),
  2. a two-level nesting rule expressing W[W[f..,g], W[f..,h]] through
     W[f..](x+1) and W[f..,g,h](x),
  3. complementary minors: the Casoratian of the n omit-one minors equals
     (-1)^(n(n-1)/2) prod_{k=0}^{n-2} W[f_1..f_n](x+k).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .polynomials import Polynomial
from .report import Report

__all__ = ["LatticeFunction", "exact_det", "casoratian", "verify_identities"]

GridFunction = Callable[[int], object]


class LatticeFunction:
    """Memoizing wrapper for a pure integer-argument function.

    Casoratian columns revisit the same lattice points constantly; caching
    keeps repeated determinant evaluation linear in fresh points.  Purity of
    the wrapped function is assumed, which keeps results reproducible.
    """

    __slots__ = ("fn", "cache")

    def __init__(self, fn: GridFunction):
        self.fn = fn
        self.cache: dict[int, object] = {}

    def __call__(self, x: int):
        if x not in self.cache:
            self.cache[x] = self.fn(x)
        return self.cache[x]


def exact_det(rows: Sequence[Sequence]):
    """Determinant over an exact field; int 1 for the empty matrix."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n <= 4:
        # cofactor expansion along the first row
        total = None
        for k in range(n):
            if rows[0][k] == 0:
                continue
            minor = [[row[j] for j in range(n) if j != k] for row in rows[1:]]
            term = rows[0][k] * exact_det(minor)
            if k % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else rows[0][0] - rows[0][0]
    # Bareiss elimination with row pivoting and exact divisions
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return m[i][i]  # zero column, zero determinant
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev
            m[r][i] = 0 * m[r][i]
        prev = m[i][i]
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def casoratian(fs: Sequence[GridFunction], x: int):
    """W[f_1..f_n](x); exact field scalar, 1 for the empty list."""
    n = len(fs)
    if n == 0:
        return 1
    rows = [[f(x + j) for f in fs] for j in range(n)]
    return exact_det(rows)


def _random_poly_grid(rng: random.Random, degree: int) -> GridFunction:
    coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(degree + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[0] = Fraction(1)
    p = Polynomial(coeffs)
    return lambda x: p(Fraction(x))


def verify_identities(n_max: int = 4, trials: int = 100, seed: int = 20240901) -> Report:
    """Exact check of the three Casoratian identities on random instances.

    Grid functions are random integer polynomials of degree <= 3; x ranges
    over a small window including negative points.  Every comparison is
    Fraction equality.
    """
    rng = random.Random(seed)
    rep = Report("casoratian.identities", "determinant identities for shifted grids")
    for trial in range(trials):
        n = rng.randint(1, n_max)
        fs = [_random_poly_grid(rng, rng.randint(0, 3)) for _ in range(n)]
        g = _random_poly_grid(rng, rng.randint(0, 2))
        h = _random_poly_grid(rng, rng.randint(0, 2))
        x = rng.randint(-3, 5)

        scaled = [lambda y, f=f: g(y) * f(y) for f in fs]
        gauge = Fraction(1)
        for k in range(n):
            gauge *= g(x + k)
        ok1 = casoratian(scaled, x) == gauge * casoratian(fs, x)
        rep.add(f"trial {trial} gauge n={n}", ok1, "" if ok1 else f"x={x}")

        wg = lambda y: casoratian(fs + [g], y)
        wh = lambda y: casoratian(fs + [h], y)
        lhs = casoratian([wg, wh], x)
        rhs = casoratian(fs, x + 1) * casoratian(fs + [g, h], x)
        rep.add(f"trial {trial} nesting n={n}", lhs == rhs, "" if lhs == rhs else f"x={x}")

        minors = [
            (lambda y, k=k: casoratian([f for j, f in enumerate(fs) if j != k], y))
            for k in range(n)
        ]
        lhs4 = casoratian(minors, x)
        rhs4 = Fraction(1) if n % 4 in (0, 1) else Fraction(-1)
        for k in range(n - 1):
            rhs4 *= casoratian(fs, x + k)
        rep.add(f"trial {trial} minors n={n}", lhs4 == rhs4, "" if lhs4 == rhs4 else f"x={x}")
    return rep
