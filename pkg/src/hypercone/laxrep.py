"""Determinantal representations of polynomials by symmetric matrix pencils.

A pencil (G_1, ..., G_n) of d-by-d symmetric rational matrices represents the
polynomial det(sum_j w_j G_j); the trivariate certificate form fixes G_1 = I
and calls the remaining pair (B, C).  This module expands such determinants
symbolically, verifies certificates exactly, tests positive definiteness of
slices by Sylvester's criterion, builds the diagonal representation available
for bivariate hyperbolic polynomials, and moves certificates back and forth
across the homogenize/dehomogenize bridge.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from hypercone.hyperbolic import NotHyperbolicError
from hypercone.poly import (
    Polynomial,
    Scalar,
    Vector,
    dehomogenize,
    homogenize,
    restrict_line,
    vector,
)
from hypercone.realroots import (
    RootIsolation,
    all_roots_real,
    isolate_real_roots,
    refine_isolation,
)

# Relative interval width at which a double-rounded midpoint is still safely
# interior to its bracket (2^-53 float slop vs 2^-49 half-width).
_FLOAT_TIGHT = Fraction(1, 2**48)


class CertificateError(ValueError):
    """A determinantal certificate failed exact verification."""


@dataclass(frozen=True)
class SymMatrix:
    """Immutable d-by-d symmetric matrix with exact rational entries."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        d = len(self.entries)
        if d < 1:
            raise ValueError("matrix must have positive dimension")
        if any(len(row) != d for row in self.entries):
            raise ValueError("matrix is not square")
        for i in range(d):
            for j in range(i + 1, d):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]]) -> SymMatrix:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, d: int) -> SymMatrix:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))

    @classmethod
    def zeros(cls, d: int) -> SymMatrix:
        return cls(tuple((Fraction(0),) * d for _ in range(d)))

    @classmethod
    def diagonal(cls, values: Iterable[Scalar]) -> SymMatrix:
        vals = [Fraction(v) for v in values]
        d = len(vals)
        return cls(
            tuple(
                tuple(vals[i] if i == j else Fraction(0) for j in range(d))
                for i in range(d)
            )
        )

    @property
    def d(self) -> int:
        return len(self.entries)

    def scaled(self, c: Scalar) -> SymMatrix:
        cf = Fraction(c)
        return SymMatrix(tuple(tuple(cf * x for x in row) for row in self.entries))

    def __add__(self, other: SymMatrix) -> SymMatrix:
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        return SymMatrix(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            )
        )


@dataclass(frozen=True)
class Pencil:
    """A tuple (G_1, ..., G_n) of symmetric matrices of one common size."""

    matrices: tuple[SymMatrix, ...]

    def __post_init__(self):
        if not self.matrices:
            raise ValueError("pencil needs at least one matrix")
        d = self.matrices[0].d
        if any(m.d != d for m in self.matrices):
            raise ValueError("pencil matrices must share one dimension")

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def d(self) -> int:
        return self.matrices[0].d

    def combine(self, w: Iterable[Scalar]) -> SymMatrix:
        """The slice matrix sum_j w_j G_j."""
        wv = vector(w)
        if len(wv) != self.n:
            raise ValueError("dimension mismatch between pencil and point")
        acc = SymMatrix.zeros(self.d)
        for c, g in zip(wv, self.matrices):
            if c != 0:
                acc = acc + g.scaled(c)
        return acc


@dataclass(frozen=True)
class LaxTriple:
    """The pair (B, C) of a certificate p(x,y,z) = det(xI + yB + zC)."""

    B: SymMatrix
    C: SymMatrix

    def __post_init__(self):
        if self.B.d != self.C.d:
            raise ValueError("B and C must have the same dimension")

    @property
    def d(self) -> int:
        return self.B.d

    def as_pencil(self) -> Pencil:
        return Pencil((SymMatrix.identity(self.d), self.B, self.C))


@dataclass(frozen=True)
class NumericDiagonal:
    """Double-precision diagonal entries backed by exact isolating intervals.

    ``diag`` is sorted ascending with one entry per root counted with
    multiplicity; ``isolation`` holds one exact interval per distinct root;
    ``residual`` is the largest coefficient gap between the input polynomial
    and the numeric expansion of det(xI + yG) at the interval midpoints.
    """

    diag: tuple[float, ...]
    isolation: RootIsolation
    residual: float

    @property
    def d(self) -> int:
        return len(self.diag)


def expand_det(pencil: Pencil) -> Polynomial:
    """The exact polynomial det(sum_j w_j G_j) in n variables.

    Cofactor expansion along rows, memoized on the set of still-unused
    columns, keeps the work at 2^d polynomial minors with no division.
    """
    n, d = pencil.n, pencil.d
    unit = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    entry = [
        [
            Polynomial(
                n,
                {
                    unit[j]: pencil.matrices[j].entries[r][c]
                    for j in range(n)
                    if pencil.matrices[j].entries[r][c] != 0
                },
            )
            for c in range(d)
        ]
        for r in range(d)
    ]
    memo: dict[int, Polynomial] = {}

    def minor(mask: int) -> Polynomial:
        if mask == 0:
            return Polynomial.constant(n, 1)
        got = memo.get(mask)
        if got is not None:
            return got
        row = d - bin(mask).count("1")
        acc = Polynomial.zero(n)
        sign = 1
        for c in range(d):
            if not mask & (1 << c):
                continue
            cell = entry[row][c]
            if not cell.is_zero:
                term = cell * minor(mask & ~(1 << c))
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[mask] = acc
        return acc

    return minor((1 << d) - 1)


def verify_representation(p: Polynomial, pencil: Pencil) -> bool:
    """Exact coefficient-wise equality of p with the pencil's determinant."""
    if p.nvars != pencil.n:
        raise ValueError(
            f"dimension mismatch: polynomial has {p.nvars} variables, pencil has {pencil.n}"
        )
    return p == expand_det(pencil)


def verify_lax(p: Polynomial, triple: LaxTriple) -> bool:
    """Check the trivariate certificate p(x,y,z) = det(xI + yB + zC) exactly."""
    if p.nvars != 3:
        raise ValueError("certificate form applies to polynomials in 3 variables")
    return verify_representation(p, triple.as_pencil())


def verify_real_zero_rep(q: Polynomial, triple: LaxTriple) -> bool:
    """Check the bivariate form q(y,z) = det(I + yB + zC) via homogenization."""
    if q.nvars != 2:
        raise ValueError("this certificate form applies to bivariate polynomials")
    if q.is_zero or q.degree() > triple.d:
        return False
    return verify_lax(homogenize(q, triple.d), triple)


def pad_block_diag(m: SymMatrix, d: int) -> SymMatrix:
    """Embed m as the leading block of a d-by-d symmetric matrix, zero elsewhere."""
    if d < m.d:
        raise ValueError(f"cannot pad a {m.d}x{m.d} matrix down to {d}x{d}")
    rows = [
        [
            m.entries[i][j] if i < m.d and j < m.d else Fraction(0)
            for j in range(d)
        ]
        for i in range(d)
    ]
    return SymMatrix.from_rows(rows)


def pad_triple(triple: LaxTriple, d: int) -> LaxTriple:
    return LaxTriple(pad_block_diag(triple.B, d), pad_block_diag(triple.C, d))


def pd_check(m: SymMatrix) -> bool:
    """Positive definiteness by Sylvester's criterion, in exact arithmetic.

    Symmetric elimination produces pivots whose prefix products are exactly
    the leading principal minors, so all pivots > 0 iff all minors > 0.
    """
    d = m.d
    a = [list(row) for row in m.entries]
    for k in range(d):
        piv = a[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, d):
            f = a[i][k] / piv
            if f == 0:
                continue
            for j in range(k, d):
                a[i][j] -= f * a[k][j]
    return True


def slice_membership(pencil: Pencil, w: Iterable[Scalar]) -> bool:
    """True iff sum_j w_j G_j is positive definite (exact)."""
    return pd_check(pencil.combine(w))


def bivariate_representation(p: Polynomial, width: Scalar = Fraction(1, 10**6)) -> NumericDiagonal:
    """Diagonal G with p(x,y) = det(xI + yG), to double precision.

    Requires a homogeneous bivariate p with p(1,0) = 1 whose restriction
    t -> p(-t, 1) is real-rooted; the diagonal entries are that restriction's
    roots with multiplicity.  They are generally irrational, so the result is
    numeric, backed by exact isolating intervals refined well below the
    requested width so the double-rounded midpoints carry full precision.
    """
    wv = Fraction(width)
    if wv <= 0:
        raise ValueError("width must be positive")
    if p.nvars != 2:
        raise ValueError("diagonal representation applies to bivariate polynomials")
    if p.is_zero or not p.is_homogeneous():
        raise ValueError("p must be homogeneous and nonzero")
    if p.evaluate((1, 0)) != 1:
        raise ValueError("p(1,0) = 1 required; normalize the direction first")
    d = p.degree()
    u = restrict_line(p, (Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))
    if not all_roots_real(u):
        raise NotHyperbolicError(
            "restriction t -> p(-t, 1) has non-real roots; no diagonal representation"
        )
    isolation = isolate_real_roots(u, wv)
    if isolation.total_multiplicity() != d:
        raise NotHyperbolicError("root multiplicities do not sum to the degree")
    targets = [
        min(wv, _FLOAT_TIGHT * max(Fraction(1), abs(lo), abs(hi)))
        for lo, hi in isolation.intervals
    ]
    isolation = refine_isolation(u, isolation, targets)
    diag: list[float] = []
    for mid, mult in zip(isolation.midpoints(), isolation.multiplicities):
        diag.extend([float(mid)] * mult)
    residual = _expansion_residual(p, d, diag)
    return NumericDiagonal(tuple(diag), isolation, residual)


def _expansion_residual(p: Polynomial, d: int, diag: Sequence[float]) -> float:
    # float coefficients of prod_j (x + g_j y), i.e. coeff[k] on x^(d-k) y^k
    coeff = [1.0]
    for g in diag:
        nxt = [0.0] * (len(coeff) + 1)
        for k, c in enumerate(coeff):
            nxt[k] += c
            nxt[k + 1] += c * g
        coeff = nxt
    gap = 0.0
    for k in range(d + 1):
        exact = p.terms.get((d - k, k), Fraction(0))
        gap = max(gap, abs(coeff[k] - float(exact)))
    return gap


def transport_rz_to_lax(
    q: Polynomial, triple: LaxTriple, degree: int | None = None
) -> tuple[Polynomial, LaxTriple]:
    """Lift a bivariate certificate q = det(I + yB + zC) to the trivariate form.

    The target degree defaults to the triple's size; a larger target pads B
    and C with zero blocks, which leaves the certificate valid while raising
    the homogenization degree (the route around a degree drop at x = 0).
    """
    if q.nvars != 2:
        raise ValueError("expected a bivariate polynomial")
    if q.is_zero or q.evaluate((0, 0)) != 1:
        raise CertificateError("q(0,0) = 1 required for this certificate form")
    d = triple.d if degree is None else degree
    if d < triple.d:
        raise ValueError("target degree is below the certificate size")
    padded = pad_triple(triple, d) if d > triple.d else triple
    if q.degree() > d:
        raise CertificateError("degree of q exceeds the certificate size")
    p = homogenize(q, d)
    if not verify_lax(p, padded):
        raise CertificateError("input certificate invalid: determinant does not match q")
    return p, padded


def transport_lax_to_rz(p: Polynomial, triple: LaxTriple) -> tuple[Polynomial, LaxTriple]:
    """Project a trivariate certificate down to the bivariate form at x = 1."""
    if p.nvars != 3:
        raise ValueError("expected a polynomial in 3 variables")
    if not verify_lax(p, triple):
        raise CertificateError("input certificate invalid: determinant does not match p")
    return dehomogenize(p), triple


def random_pencil(
    n: int,
    d: int,
    rng: random.Random,
    bound: int = 3,
    first_identity: bool = True,
) -> Pencil:
    """Random integer pencil for probing; G_1 = I keeps (1,0,...,0) a slice point."""
    mats = []
    start = 0
    if first_identity:
        mats.append(SymMatrix.identity(d))
        start = 1
    for _ in range(start, n):
        entries = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                v = Fraction(rng.randint(-bound, bound))
                entries[i][j] = v
                entries[j][i] = v
        mats.append(SymMatrix.from_rows(entries))
    return Pencil(tuple(mats))
