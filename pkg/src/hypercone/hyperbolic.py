"""Refutation-style hyperbolicity testing and exact cone membership.

A homogeneous p is hyperbolic in direction e when p(e) != 0 and every line
restriction t -> p(w - t e) splits over the reals; the associated open cone
collects the w whose restriction roots are all strictly positive.  The
universal quantifier over w is probed by seeded integer-grid sampling, but
each individual sample is certified exactly by Sturm counting: a refutation
is a theorem, a pass is evidence bounded by the trial budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from hypercone.poly import Polynomial, Scalar, UniPoly, Vector, restrict_line, vector
from hypercone.realroots import all_roots_positive, all_roots_real


class NotHyperbolicError(ValueError):
    """A line restriction had non-real roots where hyperbolicity was assumed."""


@dataclass(frozen=True)
class SamplerConfig:
    """Seeded integer-grid sampler: points drawn from [-radius, radius]^n."""

    radius: int = 10
    trials: int = 1000
    seed: int = 42

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a randomized refutation run.

    A refuted verdict carries a witness that deterministically re-fails; a
    pass carries only the trial count and seed, never a universal guarantee.
    """

    outcome: str  # "pass" or "refuted"
    witness: Vector | None
    trials: int
    seed: int

    def __post_init__(self):
        if self.outcome not in ("pass", "refuted"):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if (self.outcome == "refuted") != (self.witness is not None):
            raise ValueError("witness must be present exactly when refuted")

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"


def _collinear(w: Vector, e: Vector) -> bool:
    n = len(w)
    return all(
        w[i] * e[j] == w[j] * e[i] for i in range(n) for j in range(i + 1, n)
    )


def _sample_points(
    nvars: int, cfg: SamplerConfig, avoid_direction: Vector | None = None
) -> Iterator[Vector]:
    # Skips the zero vector and (when given) scalar multiples of the
    # direction, whose restrictions are trivially real-rooted.
    rng = random.Random(cfg.seed)
    produced = 0
    while produced < cfg.trials:
        w = tuple(
            Fraction(rng.randint(-cfg.radius, cfg.radius)) for _ in range(nvars)
        )
        if all(x == 0 for x in w):
            continue
        if avoid_direction is not None and _collinear(w, avoid_direction):
            continue
        produced += 1
        yield w


def _check_direction(p: Polynomial, e: Iterable[Scalar]) -> Vector:
    ev = vector(e)
    if len(ev) != p.nvars:
        raise ValueError("dimension mismatch between polynomial and direction")
    if not p.is_homogeneous():
        raise ValueError("hyperbolicity is defined for homogeneous polynomials")
    if p.evaluate(ev) == 0:
        raise ValueError("p(e) = 0: hyperbolicity precondition violated")
    return ev


def test_hyperbolic(
    p: Polynomial, e: Iterable[Scalar], cfg: SamplerConfig | None = None
) -> Verdict:
    """Probe real-rootedness of the restrictions t -> p(w - t e) over sampled w.

    p(e) = 0 raises immediately (a precondition failure, not a refutation).
    The witness, when present, is the lowest-index failing sample.
    """
    cfg = cfg or SamplerConfig()
    ev = _check_direction(p, e)
    executed = 0
    for w in _sample_points(p.nvars, cfg, avoid_direction=ev):
        executed += 1
        if not all_roots_real(restrict_line(p, w, ev)):
            return Verdict("refuted", w, executed, cfg.seed)
    return Verdict("pass", None, cfg.trials, cfg.seed)


def cone_contains(p: Polynomial, e: Iterable[Scalar], w: Iterable[Scalar]) -> bool:
    """Exact membership of w in the open hyperbolicity cone of p at e.

    True iff every root of the restriction is real and strictly positive.  A
    non-real root is not non-membership but a broken hyperbolicity premise,
    reported as NotHyperbolicError.
    """
    ev = _check_direction(p, e)
    wv = vector(w)
    if len(wv) != p.nvars:
        raise ValueError("dimension mismatch between polynomial and point")
    u = restrict_line(p, wv, ev)
    if not all_roots_real(u):
        raise NotHyperbolicError(
            f"restriction at {wv} has non-real roots; p is not hyperbolic for this direction"
        )
    return all_roots_positive(u)


def _ray_restriction(q: Polynomial, y: Fraction, z: Fraction) -> UniPoly:
    # coefficients of t -> q(t*y, t*z), grouped by total degree
    coeffs = [Fraction(0)] * (q.degree() + 1)
    for (a, b), c in q.terms.items():
        coeffs[a + b] += c * y**a * z**b
    return UniPoly(coeffs)


def is_real_zero(q: Polynomial, cfg: SamplerConfig | None = None) -> Verdict:
    """Probe whether every ray restriction t -> q(t y, t z) is real-rooted."""
    cfg = cfg or SamplerConfig()
    if q.nvars != 2:
        raise ValueError("real zero testing applies to bivariate polynomials")
    if q.is_zero:
        raise ValueError("q must not be identically zero")
    executed = 0
    for w in _sample_points(2, cfg):
        executed += 1
        if not all_roots_real(_ray_restriction(q, w[0], w[1])):
            return Verdict("refuted", w, executed, cfg.seed)
    return Verdict("pass", None, cfg.trials, cfg.seed)


def cone_convexity_probe(
    p: Polynomial, e: Iterable[Scalar], cfg: SamplerConfig | None = None
) -> Verdict:
    """Sample cone members and check midpoints and positive scalings stay inside.

    Convexity of the cone is a theorem, so a refutation here flags an
    implementation bug rather than a mathematical discovery; the witness is
    the offending midpoint or scaled point.
    """
    cfg = cfg or SamplerConfig()
    ev = _check_direction(p, e)
    members: list[Vector] = [ev]
    for w in _sample_points(p.nvars, cfg, avoid_direction=ev):
        if cone_contains(p, ev, w):
            members.append(w)
    for u in members:
        for s in (Fraction(1, 2), Fraction(2), Fraction(3)):
            scaled = tuple(s * x for x in u)
            if not cone_contains(p, ev, scaled):
                return Verdict("refuted", scaled, cfg.trials, cfg.seed)
    checked = 0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if checked >= cfg.trials:
                break
            mid = tuple((a + b) / 2 for a, b in zip(members[i], members[j]))
            checked += 1
            if not cone_contains(p, ev, mid):
                return Verdict("refuted", mid, cfg.trials, cfg.seed)
    return Verdict("pass", None, cfg.trials, cfg.seed)
