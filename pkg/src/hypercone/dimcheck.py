"""Dimension counting and the 2x2 pencil counterexample for n > 3 variables.

Determinants of n-matrix pencils of size d sweep out an algebraic image of a
space of dimension n * C(d+1, 2), while the homogeneous polynomials of degree
d in n variables form a space of dimension C(n+d-1, d).  Once the latter is
strictly larger, some hyperbolic polynomial has no pencil representation; the
second-order (Lorentz) quadratic witnesses this concretely for n > 3 with a
kernel vector computed exactly from the pencil's first rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from hypercone.laxrep import Pencil
from hypercone.poly import Polynomial, Vector


@dataclass(frozen=True)
class DimReport:
    n: int
    d: int
    det_image_dim: int
    poly_space_dim: int
    det_smaller: bool


def dimension_report(n: int, d: int) -> DimReport:
    """Compare the pencil-image dimension bound with the polynomial-space dimension."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    det_dim = n * math.comb(d + 1, 2)
    poly_dim = math.comb(n + d - 1, d)
    return DimReport(n, d, det_dim, poly_dim, det_dim < poly_dim)


def lorentz_polynomial(n: int) -> Polynomial:
    """The quadratic w_1^2 - w_2^2 - ... - w_n^2 of the second-order cone."""
    if n < 2:
        raise ValueError("the Lorentz polynomial needs at least 2 variables")
    terms = {}
    for j in range(n):
        exps = [0] * n
        exps[j] = 2
        terms[tuple(exps)] = Fraction(1) if j == 0 else Fraction(-1)
    return Polynomial(n, terms)


def refute_2x2_pencil(pencil: Pencil) -> Vector:
    """A witness showing a 2x2 pencil cannot represent the Lorentz polynomial.

    Returns a nonzero w with w_1 = 0 making the first row of sum_j w_j G_j
    vanish, so the pencil's determinant is 0 at w while the Lorentz value
    -(w_2^2 + ... + w_n^2) is strictly negative.  The 2x(n-1) first-row
    system always has a nontrivial kernel when n > 3; the canonical witness
    sets the first free variable of its reduced form to 1.
    """
    n = pencil.n
    if n <= 3:
        raise ValueError("no witness guaranteed for n <= 3: the kernel may be trivial")
    if pencil.d != 2:
        raise ValueError("pencil matrices must be 2x2")
    system = [
        [pencil.matrices[j].entries[0][col] for j in range(1, n)] for col in (0, 1)
    ]
    tail = _canonical_kernel_vector(system)
    return (Fraction(0),) + tail


def _canonical_kernel_vector(rows: list[list[Fraction]]) -> tuple[Fraction, ...]:
    m = len(rows[0])
    a = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(m):
        pivot_row = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        piv = a[rank][col]
        a[rank] = [x / piv for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(a):
            break
    free = next(c for c in range(m) if c not in pivots)
    x = [Fraction(0)] * m
    x[free] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        x[col] = -a[row_idx][free]
    return tuple(x)
