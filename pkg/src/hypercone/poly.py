"""Exact sparse multivariate polynomials over the rationals.

``Polynomial`` maps exponent tuples (one nonnegative integer per variable) to
nonzero ``Fraction`` coefficients; the zero polynomial stores no terms, so
``==`` is exact structural equality.  ``UniPoly`` is a dense univariate
polynomial, ``coeffs[i]`` holding the coefficient of ``t**i``.  Vectors and
matrices are plain tuples of ``Fraction``.

Every value here is immutable and every operation is a pure function, so all
of it can be shared between threads without synchronization.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Scalar = Fraction | int | str
Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


class ZeroPolynomialError(ValueError):
    """The zero polynomial has no degree; operations that need one reject it."""


def vector(entries: Iterable[Scalar]) -> Vector:
    """Coerce an iterable of rationals (or rational strings) to a Vector."""
    return tuple(Fraction(x) for x in entries)


def matrix(rows: Iterable[Iterable[Scalar]]) -> Matrix:
    """Coerce nested iterables to a rectangular tuple-of-tuples of Fractions."""
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("rows of unequal length")
    return out


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class Polynomial:
    """Sparse polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[tuple[int, ...], Scalar] | None = None,
    ):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coef in (terms or {}).items():
            key = tuple(int(a) for a in exps)
            if len(key) != nvars:
                raise ValueError(
                    f"exponent vector {key} has length {len(key)}, expected {nvars}"
                )
            if any(a < 0 for a in key):
                raise ValueError(f"negative exponent in {key}")
            c = Fraction(coef)
            if c != 0:
                clean[key] = c
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> Polynomial:
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximum total degree over stored terms; rejects the zero polynomial."""
        if self.is_zero:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        """True iff all terms share the same total degree."""
        if self.is_zero:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        degrees = {sum(e) for e in self.terms}
        return len(degrees) == 1

    def evaluate(self, w: Iterable[Scalar]) -> Fraction:
        """Exact value at the point ``w``."""
        point = vector(w)
        if len(point) != self.nvars:
            raise ValueError(
                f"dimension mismatch: point has {len(point)} entries, polynomial has {self.nvars} variables"
            )
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for x, a in zip(point, exps):
                if a:
                    v *= x**a
            total += v
        return total

    def canonical_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lexicographic order (deterministic)."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_grlex_key, reverse=True)]

    def _check_compatible(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"dimension mismatch: {self.nvars} vs {other.nvars} variables"
            )

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            out: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return Polynomial(self.nvars, out)
        c = Fraction(other)
        return Polynomial(self.nvars, {e: k * c for e, k in self.terms.items()})

    def __rmul__(self, other: Scalar) -> Polynomial:
        return self * other

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Polynomial({self.nvars}, 0)"
        parts = []
        for exps, c in self.canonical_terms():
            mono = "*".join(
                f"w{i + 1}^{a}" if a > 1 else f"w{i + 1}"
                for i, a in enumerate(exps)
                if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        joined = " + ".join(parts).replace("+ -", "- ")
        return f"Polynomial({self.nvars}, {joined})"


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of t**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> UniPoly:
        """Monic product of (t - r) over the given roots."""
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if self.is_zero:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def evaluate(self, x: Scalar) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> UniPoly:
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs])

    def __add__(self, other: UniPoly) -> UniPoly:
        if not isinstance(other, UniPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return UniPoly(a)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other: UniPoly | Scalar) -> UniPoly:
        if isinstance(other, UniPoly):
            if self.is_zero or other.is_zero:
                return UniPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UniPoly(out)
        c = Fraction(other)
        return UniPoly([k * c for k in self.coeffs])

    def __rmul__(self, other: Scalar) -> UniPoly:
        return self * other

    def __pow__(self, exponent: int) -> UniPoly:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly([1])
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        dlead = other.coeffs[-1]
        dn = len(other.coeffs)
        while len(r) >= dn:
            while r and r[-1] == 0:
                r.pop()
            if len(r) < dn:
                break
            f = r[-1] / dlead
            shift = len(r) - dn
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                r[shift + i] -= f * c
            r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "UniPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if c == 1 else f"-{t}" if c == -1 else f"{c}*{t}")
        return f"UniPoly({' + '.join(reversed(parts)).replace('+ -', '- ')})"


def restrict_line(p: Polynomial, w: Iterable[Scalar], e: Iterable[Scalar]) -> UniPoly:
    """Exact coefficients of the univariate restriction t -> p(w - t*e).

    For homogeneous p of degree d with p(e) != 0, the result has degree
    exactly d with leading coefficient (-1)**d * p(e).
    """
    wv, ev = vector(w), vector(e)
    if len(wv) != p.nvars or len(ev) != p.nvars:
        raise ValueError("dimension mismatch between polynomial and vectors")
    # (w_i - t e_i)^k cache, filled by repeated multiplication
    powers: dict[tuple[int, int], UniPoly] = {}

    def var_power(i: int, k: int) -> UniPoly:
        got = powers.get((i, k))
        if got is not None:
            return got
        if k == 0:
            res = UniPoly([1])
        else:
            res = var_power(i, k - 1) * UniPoly([wv[i], -ev[i]])
        powers[(i, k)] = res
        return res

    acc = UniPoly()
    for exps, c in p.terms.items():
        term = UniPoly([c])
        for i, k in enumerate(exps):
            if k:
                term = term * var_power(i, k)
        acc = acc + term
    return acc


def dehomogenize(p: Polynomial) -> Polynomial:
    """Substitute 1 for the first variable of a polynomial on R^3: q(y,z) = p(1,y,z)."""
    if p.nvars != 3:
        raise ValueError("dehomogenize expects a polynomial in 3 variables")
    out: dict[tuple[int, ...], Fraction] = {}
    for (a, b, c), coef in p.terms.items():
        key = (b, c)
        out[key] = out.get(key, Fraction(0)) + coef
    return Polynomial(2, out)


def homogenize(q: Polynomial, degree: int) -> Polynomial:
    """Lift a bivariate q to a homogeneous trivariate of the given degree.

    Each term y^a z^b becomes x^(degree-a-b) y^a z^b, so the result restricts
    back to q at x = 1.
    """
    if q.nvars != 2:
        raise ValueError("homogenize expects a polynomial in 2 variables")
    if q.is_zero:
        return Polynomial(3)
    if degree < q.degree():
        raise ValueError(
            f"target degree {degree} is below degree(q) = {q.degree()}"
        )
    return Polynomial(
        3, {(degree - a - b, a, b): c for (a, b), c in q.terms.items()}
    )


def matrix_det(a: Matrix) -> Fraction:
    """Exact determinant of a square rational matrix (Gaussian elimination)."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    m = [list(row) for row in a]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f == 0:
                continue
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


def matrix_inverse(a: Matrix) -> Matrix:
    """Exact inverse of a square rational matrix; raises on singular input."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        m[k], m[pivot_row] = m[pivot_row], m[k]
        piv = m[k][k]
        m[k] = [x / piv for x in m[k]]
        for i in range(n):
            if i == k or m[i][k] == 0:
                continue
            f = m[i][k]
            m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return tuple(tuple(row[n:]) for row in m)


def apply_linear_change(p: Polynomial, a: Iterable[Iterable[Scalar]]) -> Polynomial:
    """Compose p with an invertible linear change of variables: returns p(A u)."""
    am = matrix(a)
    n = p.nvars
    if len(am) != n or any(len(row) != n for row in am):
        raise ValueError(f"change-of-variables matrix must be {n}x{n}")
    if matrix_det(am) == 0:
        raise ValueError("singular change-of-variables matrix")
    # row i of A gives the image of variable i as a linear form in the new ones
    images = [
        Polynomial(n, {tuple(int(j == k) for k in range(n)): am[i][j] for j in range(n)})
        for i in range(n)
    ]
    powers: dict[tuple[int, int], Polynomial] = {}

    def image_power(i: int, k: int) -> Polynomial:
        got = powers.get((i, k))
        if got is not None:
            return got
        res = Polynomial.constant(n, 1) if k == 0 else image_power(i, k - 1) * images[i]
        powers[(i, k)] = res
        return res

    acc = Polynomial.zero(n)
    for exps, c in p.terms.items():
        term = Polynomial.constant(n, c)
        for i, k in enumerate(exps):
            if k:
                term = term * image_power(i, k)
        acc = acc + term
    return acc


def normalize_direction(p: Polynomial, e: Iterable[Scalar]) -> tuple[Polynomial, Matrix]:
    """Change variables so the direction e becomes the first unit vector.

    Returns (p', A) with A invertible, A @ (1,0,...,0) = e and
    p' = p(A u) / p(e), so p' takes the value 1 at the first unit vector.
    The basis is completed with standard unit vectors, dropping the one
    indexed by the largest-magnitude entry of e (ties: smallest index).
    """
    ev = vector(e)
    if len(ev) != p.nvars:
        raise ValueError("dimension mismatch between polynomial and direction")
    if not p.is_homogeneous():
        raise ValueError("normalize_direction expects a homogeneous polynomial")
    pe = p.evaluate(ev)
    if pe == 0:
        raise ValueError("p(e) = 0: not a valid direction for normalization")
    if all(x == 0 for x in ev):
        raise ValueError("direction is the zero vector")
    n = p.nvars
    drop = max(range(n), key=lambda i: (abs(ev[i]), -i))
    cols = [ev] + [
        tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n) if j != drop
    ]
    a = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    changed = apply_linear_change(p, a)
    return changed * (Fraction(1) / pe), a
