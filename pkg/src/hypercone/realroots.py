"""Exact real-root certification for univariate rational polynomials.

The workhorse is the signed-remainder (Sturm) chain

    s_0 = u,  s_1 = u',  s_{k+1} = -(s_{k-1} mod s_k)

whose sign-variation difference between two non-root points counts the
distinct real roots of u in the half-open interval between them.  Combined
with repeated gcd decomposition for multiplicities and a Cauchy bound to
seed bisection, this gives exact counting, positivity certificates, and
isolating intervals, entirely over the rationals.  No floating point enters
any decision here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from hypercone.poly import Scalar, UniPoly, ZeroPolynomialError


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint open rational intervals, one per distinct real root.

    ``intervals[i]`` strictly brackets one distinct real root (endpoints are
    never roots) and ``multiplicities[i]`` is that root's multiplicity in the
    polynomial that was isolated.  Intervals are sorted ascending.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.intervals) != len(self.multiplicities):
            raise ValueError("intervals and multiplicities misaligned")

    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)

    def midpoints(self) -> tuple[Fraction, ...]:
        return tuple((lo + hi) / 2 for lo, hi in self.intervals)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: list[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def sturm_chain(u: UniPoly) -> tuple[UniPoly, ...]:
    """The signed-remainder chain of u, ending at the last nonzero entry."""
    if u.is_zero:
        raise ZeroPolynomialError("Sturm chain of the zero polynomial")
    chain = [u]
    d = u.derivative()
    if not d.is_zero:
        chain.append(d)
        while True:
            r = -(chain[-2] % chain[-1])
            if r.is_zero:
                break
            chain.append(r)
    return tuple(chain)


def _variations_at(chain: tuple[UniPoly, ...], x: Fraction | None, positive_inf: bool) -> int:
    # x = None means an endpoint at infinity; its sign pattern comes from the
    # leading coefficients (and degree parity on the negative side).
    if x is None:
        if positive_inf:
            signs = [_sign(f.lc) for f in chain]
        else:
            signs = [_sign(f.lc) * (-1) ** f.degree() for f in chain]
    else:
        signs = [_sign(f.evaluate(x)) for f in chain]
    return _variations(signs)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (monic-normalized remainders)."""
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_part(u: UniPoly) -> UniPoly:
    """u divided by gcd(u, u'), normalized monic: same distinct roots, all simple."""
    if u.is_zero:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    if u.degree() == 0:
        return UniPoly([1])
    g = poly_gcd(u, u.derivative())
    q, r = divmod(u, g)
    if not r.is_zero:
        raise ArithmeticError("gcd does not divide its polynomial; exact arithmetic bug")
    return q.monic()


def cauchy_root_bound(u: UniPoly) -> Fraction:
    """1 + max |c_i| / |c_lead|: every real root lies strictly inside (-B, B)."""
    if u.is_zero:
        raise ZeroPolynomialError("root bound of the zero polynomial")
    if u.degree() == 0:
        return Fraction(1)
    lead = abs(u.lc)
    rest = [abs(c) for c in u.coeffs[:-1]]
    return 1 + (max(rest) / lead if rest else Fraction(0))


def _resultant(f: UniPoly, g: UniPoly) -> Fraction:
    if f.is_zero or g.is_zero:
        return Fraction(0)
    m = f.degree()
    if m == 0:
        return Fraction(1) if g.degree() == 0 else f.lc ** g.degree()
    n = g.degree()
    if n == 0:
        return g.lc**m
    if m < n:
        return Fraction(-1) ** (m * n) * _resultant(g, f)
    r = f % g
    if r.is_zero:
        return Fraction(0)
    return Fraction(-1) ** (m * n) * g.lc ** (m - r.degree()) * _resultant(g, r)


def root_separation_squared(u: UniPoly) -> Fraction:
    """A positive rational lower bound on the squared gap between distinct roots.

    Uses the discriminant-based separation inequality

        sep(s)^2  >  3 |disc(s)| / (m^(m+2) * ||s||_2^(2(m-1)))

    applied to the monic square-free part s of u (degree m >= 2).  The bound
    is scale invariant, so rational coefficients need no integer scaling.
    """
    s = squarefree_part(u)
    m = s.degree()
    if m < 2:
        raise ValueError("separation bound needs at least two distinct roots")
    disc = abs(_resultant(s, s.derivative()))  # s monic, so |disc| = |res(s, s')|
    l2sq = sum(c * c for c in s.coeffs)
    return 3 * disc / (Fraction(m) ** (m + 2) * l2sq ** (m - 1))


def _endpoint_shift(u: UniPoly) -> Fraction:
    # A rational no larger than half the minimal gap between distinct roots,
    # used to nudge a counting endpoint off a root.
    s = squarefree_part(u)
    if s.degree() < 2:
        return Fraction(1, 2)
    sep_sq = root_separation_squared(u)
    # if sep_sq <= 1 then sqrt(sep_sq) >= sep_sq, so sep_sq/2 <= sep/2
    return min(sep_sq, Fraction(1)) / 2


def count_distinct_real_roots(
    u: UniPoly, lo: Scalar | None = None, hi: Scalar | None = None
) -> int:
    """Number of distinct real roots of u in (lo, hi]; None means an infinite end.

    Endpoints that happen to be roots are shifted upward by half a root-gap
    bound, which leaves the counted root set unchanged: the shift excludes a
    root sitting exactly at ``lo`` (the interval is open there) and keeps one
    sitting at ``hi``.
    """
    if u.is_zero:
        raise ZeroPolynomialError("root count of the zero polynomial")
    if u.degree() == 0:
        return 0
    lov = None if lo is None else Fraction(lo)
    hiv = None if hi is None else Fraction(hi)
    if lov is not None and hiv is not None and not lov < hiv:
        raise ValueError("lo must be strictly less than hi")
    if lov is not None and u.evaluate(lov) == 0:
        shift = _endpoint_shift(u)
        if hiv is not None:
            shift = min(shift, (hiv - lov) / 2)
        lov += shift
    if hiv is not None and u.evaluate(hiv) == 0:
        hiv += _endpoint_shift(u)
    chain = sturm_chain(u)
    v_lo = _variations_at(chain, lov, positive_inf=False)
    v_hi = _variations_at(chain, hiv, positive_inf=True)
    return v_lo - v_hi


def count_real_roots_with_multiplicity(
    u: UniPoly, lo: Scalar | None = None, hi: Scalar | None = None
) -> int:
    """Total root count (with multiplicity) in (lo, hi], via the gcd chain.

    Each step of g -> gcd(g, g') drops every root's multiplicity by one, so
    summing distinct-root counts over the chain totals the multiplicities.
    """
    if u.is_zero:
        raise ZeroPolynomialError("root count of the zero polynomial")
    total = 0
    g = u
    while g.degree() >= 1:
        total += count_distinct_real_roots(g, lo, hi)
        g = poly_gcd(g, g.derivative())
    return total


def all_roots_real(u: UniPoly) -> bool:
    """True iff every complex root of u is real (constants pass vacuously)."""
    s = squarefree_part(u)
    return count_distinct_real_roots(s) == s.degree()


def all_roots_positive(u: UniPoly) -> bool:
    """True iff u is real-rooted and every root is strictly positive.

    A root at 0 fails (u(0) != 0 is required): positivity here is the open
    condition used for cone membership.
    """
    if u.is_zero:
        raise ZeroPolynomialError("root positivity of the zero polynomial")
    if u.evaluate(0) == 0:
        return False
    if not all_roots_real(u):
        return False
    s = squarefree_part(u)
    if s.degree() == 0:
        return True
    return count_distinct_real_roots(s, Fraction(0), None) == s.degree()


def _nonroot_split_point(s: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    if s.evaluate(mid) != 0:
        return mid
    step = (hi - lo) / 4
    while True:
        for cand in (mid + step, mid - step):
            if lo < cand < hi and s.evaluate(cand) != 0:
                return cand
        step /= 2


def _refine_bracket(
    s: UniPoly, lo: Fraction, hi: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    # s is square-free and changes sign exactly once on (lo, hi); plain sign
    # bisection narrows the bracket.  Hitting the root exactly collapses to a
    # tight interval centered on it.
    sign_lo = _sign(s.evaluate(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = s.evaluate(mid)
        if v == 0:
            h = min(width, hi - mid, mid - lo) / 2
            return (mid - h, mid + h)
        if _sign(v) == sign_lo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def isolate_real_roots(u: UniPoly, width: Scalar) -> RootIsolation:
    """Disjoint isolating intervals of width <= width, with multiplicities.

    Sturm-guided bisection starts from the Cauchy bound; interval endpoints
    are always chosen off the roots, so every returned bracket is strict.
    """
    wv = Fraction(width)
    if wv <= 0:
        raise ValueError("width must be positive")
    if u.is_zero:
        raise ZeroPolynomialError("root isolation of the zero polynomial")
    s = squarefree_part(u)
    if s.degree() == 0:
        return RootIsolation((), ())
    chain = sturm_chain(s)

    def var(x: Fraction) -> int:
        return _variations_at(chain, x, positive_inf=True)

    bound = cauchy_root_bound(s)
    brackets: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, var(-bound) - var(bound))]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            brackets.append(_refine_bracket(s, lo, hi, wv))
            continue
        mid = _nonroot_split_point(s, lo, hi)
        v_lo, v_mid, v_hi = var(lo), var(mid), var(hi)
        stack.append((lo, mid, v_lo - v_mid))
        stack.append((mid, hi, v_mid - v_hi))
    brackets.sort()
    return RootIsolation(tuple(brackets), _multiplicities(u, brackets))


def _multiplicities(u: UniPoly, brackets: list[tuple[Fraction, Fraction]]) -> tuple[int, ...]:
    mults = [1] * len(brackets)
    g = poly_gcd(u, u.derivative())
    while g.degree() >= 1:
        chain = sturm_chain(g)
        for i, (lo, hi) in enumerate(brackets):
            hits = _variations_at(chain, lo, True) - _variations_at(chain, hi, True)
            mults[i] += hits
        g = poly_gcd(g, g.derivative())
    return tuple(mults)


def refine_isolation(
    u: UniPoly, isolation: RootIsolation, width: Scalar | list[Fraction]
) -> RootIsolation:
    """Narrow each isolating interval to the requested width (scalar or per-root)."""
    if isinstance(width, (list, tuple)):
        targets = [Fraction(w) for w in width]
        if len(targets) != len(isolation.intervals):
            raise ValueError("one target width per interval required")
    else:
        targets = [Fraction(width)] * len(isolation.intervals)
    s = squarefree_part(u)
    refined = tuple(
        _refine_bracket(s, lo, hi, t)
        for (lo, hi), t in zip(isolation.intervals, targets)
    )
    return RootIsolation(refined, isolation.multiplicities)
