"""Exact rho invariants of lens spaces and eta invariants of flip-spun
lens spaces, Fourier coefficients of the eta sequence, and the matching
condition that separates components of the psc moduli space.

All sums are evaluated inside a single cyclotomic field per computation
(Q(zeta_2p), or Q(zeta_p) for the odd-p variant) and only then collapsed
to exact rationals, so comparisons downstream are exact equality of
Fractions, never tolerance-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import Cyclotomic, root_of_unity
from .errors import ParameterError, ResourceBoundError

__all__ = [
    "DEFAULT_MAX_P",
    "LensSpace",
    "FlipSpun",
    "MatchingResult",
    "rho_lens",
    "rho_table",
    "eta_flipspun",
    "eta_table",
    "eta_variant",
    "fourier_coefficient",
    "fourier_closed_form",
    "fourier_unit_ratio",
    "distinguish_metrics",
    "component_classes",
]

# Fields of degree up to phi(2*DEFAULT_MAX_P); larger inputs are rejected
# with a resource error instead of running unbounded.
DEFAULT_MAX_P = 50

ETA_FORMULAS = ("pinc-difference", "half-roots", "odd-p")


def _check_budget(p: int, max_p: int | None) -> None:
    bound = DEFAULT_MAX_P if max_p is None else max_p
    if p > bound:
        raise ResourceBoundError(
            f"p={p} exceeds the size budget {bound}; raise max_p explicitly to override"
        )


@dataclass(frozen=True)
class LensSpace:
    """L(n, q): cyclic fundamental group of order n, rotation parameter q."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"lens space order must be positive, got {self.n}")
        q = self.q % self.n if self.n > 1 else 0
        if self.n > 1 and gcd(q, self.n) != 1:
            raise ParameterError(f"q={self.q} is not coprime to n={self.n}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class FlipSpun:
    """X(p) built from L(2p, q); q odd and coprime to 2p."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise ParameterError(f"p must be positive, got {self.p}")
        q = self.q % (2 * self.p)
        if q % 2 == 0:
            raise ParameterError(f"q={self.q} must be odd")
        if gcd(q, 2 * self.p) != 1:
            raise ParameterError(f"q={self.q} is not coprime to 2p={2 * self.p}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class MatchingResult:
    p: int
    q: int
    q_prime: int
    matches: tuple[int, ...]
    distinguishable: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "distinguishable", not self.matches)


@lru_cache(maxsize=None)
def _unit_inverse(n: int, m: int) -> Cyclotomic:
    """1 / (zeta_n^m - 1), cached per order; m must be nonzero mod n."""
    return (root_of_unity(n, m) - 1).inverse()


@lru_cache(maxsize=None)
def _plus_one_inverse(n: int, m: int) -> Cyclotomic:
    """1 / (zeta_n^m + 1), cached; nonvanishing whenever n is odd."""
    return (root_of_unity(n, m) + 1).inverse()


@lru_cache(maxsize=None)
def rho_table(n: int, q: int, max_p: int | None = None) -> tuple[Fraction, ...]:
    """Reduced eta invariants of L(n, q) for every character s = 0..n-1.

    Entry s is (1/n) * sum over lam with lam^n = 1, lam != 1 of
    (lam^s - 1) lam^q / ((lam^q - 1)(lam - 1)), collapsed to an exact
    rational.  The per-root base factors are shared across all s.
    """
    space = LensSpace(n, q)
    _check_budget((n + 1) // 2, max_p)
    n, q = space.n, space.q
    if n == 1:
        return (Fraction(0),)
    base = []
    for k in range(1, n):
        b = _unit_inverse(n, (k * q) % n) * _unit_inverse(n, k)
        base.append(b.times_root(k * q))
    total = Cyclotomic.zero(n)
    for b in base:
        total = total + b
    values = []
    for s in range(n):
        acc = Cyclotomic.zero(n)
        for k, b in enumerate(base, start=1):
            acc = acc + b.times_root(k * s)
        # NotRationalError here would mean an arithmetic bug: the summation
        # set is Galois-stable, so the value is forced into Q.
        values.append((acc - total).as_rational() / n)
    return tuple(values)


def rho_lens(n: int, q: int, s: int, max_p: int | None = None) -> Fraction:
    """rho_{alpha_s}(L(n, q)) as an exact rational."""
    return rho_table(n, q, max_p)[s % n if n > 1 else 0]


@lru_cache(maxsize=None)
def eta_table(p: int, q: int, max_p: int | None = None) -> tuple[Fraction, ...]:
    """eta(X(p), g_{p,q}, alpha_s) for s = 0..2p-1, via the difference of
    lens-space rho invariants at characters s and s+p."""
    space = FlipSpun(p, q)
    _check_budget(space.p, max_p)
    rho = rho_table(2 * space.p, space.q, max_p)
    n = 2 * space.p
    return tuple(rho[s] - rho[(s + space.p) % n] for s in range(n))


def eta_flipspun(p: int, q: int, s: int, max_p: int | None = None) -> Fraction:
    return eta_table(p, q, max_p)[s % (2 * p)]


def eta_variant(p: int, q: int, s: int, formula: str, max_p: int | None = None) -> Fraction:
    """The same eta invariant through one of the rewritten sums.

    "pinc-difference" is the defining difference of rho invariants;
    "half-roots" sums lam^(s+q)/((lam^q-1)(lam-1)) over the 2p-th roots
    with lam^p = -1; "odd-p" (p odd only) substitutes -lam to land in
    Q(zeta_p).  All three agree exactly wherever defined.
    """
    space = FlipSpun(p, q)
    _check_budget(space.p, max_p)
    p, q = space.p, space.q
    s %= 2 * p
    if formula == "pinc-difference":
        return eta_flipspun(p, q, s, max_p)
    if formula == "half-roots":
        n = 2 * p
        acc = Cyclotomic.zero(n)
        for k in range(1, n, 2):  # zeta_2p^k with k odd are exactly lam^p = -1
            b = _unit_inverse(n, (k * q) % n) * _unit_inverse(n, k)
            acc = acc + b.times_root(k * (s + q))
        return acc.as_rational() / p
    if formula == "odd-p":
        if p % 2 == 0:
            raise ParameterError("the odd-p formula requires p odd")
        sign = -1 if s % 2 == 0 else 1
        acc = Cyclotomic.zero(p)
        for k in range(p):
            term = _plus_one_inverse(p, (k * q) % p) * _plus_one_inverse(p, k)
            acc = acc + term.times_root(k * (s + q))
        return sign * acc.as_rational() / p
    raise ParameterError(f"unknown eta formula {formula!r}; expected one of {ETA_FORMULAS}")


def _fourier_args(p: int, q: int, j: int) -> tuple[int, int, int]:
    space = FlipSpun(p, q)
    if space.p % 2 == 0:
        raise ParameterError("Fourier coefficients are defined for odd p only")
    if not 1 <= j <= space.p - 1:
        raise ParameterError(f"j={j} outside 1..{space.p - 1}")
    return space.p, space.q, j


def fourier_coefficient(p: int, q: int, j: int, max_p: int | None = None) -> Cyclotomic:
    """DFT of the alternating eta sequence:
    sum_{s=0}^{p-1} (-1)^(s+1) eta(X(p), g_{p,q}, alpha_s) omega^(-js)."""
    p, q, j = _fourier_args(p, q, j)
    _check_budget(p, max_p)
    etas = eta_table(p, q, max_p)
    acc = Cyclotomic.zero(p)
    for s in range(p):
        sign = 1 if s % 2 == 1 else -1
        acc = acc + (root_of_unity(p, (-j * s) % p) * (sign * etas[s]))
    return acc


def fourier_closed_form(p: int, q: int, j: int) -> Cyclotomic:
    """omega^(jq) / ((omega^(jq) + 1)(omega^j + 1)) in Q(zeta_p)."""
    p, q, j = _fourier_args(p, q, j)
    return (
        root_of_unity(p, j * q)
        * _plus_one_inverse(p, (j * q) % p)
        * _plus_one_inverse(p, j % p)
    )


def fourier_unit_ratio(p: int, q: int, j: int) -> Cyclotomic:
    """The closed form as a ratio of cyclotomic units:
    ((omega^(-jq) - 1)(omega^j - 1)) / ((omega^(-2jq) - 1)(omega^(2j) - 1)).

    Each doubled-exponent factor is (x^2-1) = (x-1)(x+1) for the matching
    single-exponent root, so this equals 1/((omega^(-jq)+1)(omega^j+1)).
    """
    p, q, j = _fourier_args(p, q, j)
    num = (root_of_unity(p, -j * q) - 1) * (root_of_unity(p, j) - 1)
    return num * _unit_inverse(p, (-2 * j * q) % p) * _unit_inverse(p, (2 * j) % p)


def _odd_units(n: int) -> list[int]:
    return [a for a in range(1, n) if a % 2 == 1 and gcd(a, n) == 1]


def distinguish_metrics(
    p: int,
    q: int,
    q_prime: int,
    max_p: int | None = None,
    *,
    experimental_even_p: bool = False,
) -> MatchingResult:
    """Decide whether the metrics g_{p,q} and g_{p,q'} on X(p) can share a
    moduli-space component, by exhaustive exact comparison of eta tables.

    matches collects every unit a mod 2p with
    eta(p, q, s) = eta(p, q', a*s) for all s; the metrics are
    distinguishable iff no such a exists.  For odd p a match exists iff
    q' = q^(+-1) mod 2p.  Even p is rejected unless the experimental flag
    is set, in which case the match set is computed with no equivalence
    asserted.
    """
    a_space = FlipSpun(p, q)
    b_space = FlipSpun(p, q_prime)
    if p % 2 == 0 and not experimental_even_p:
        raise ParameterError(
            "p must be odd (pass experimental_even_p=True to compute anyway)"
        )
    _check_budget(p, max_p)
    n = 2 * p
    table_q = eta_table(p, a_space.q, max_p)
    table_qp = eta_table(p, b_space.q, max_p)
    matches = tuple(
        a
        for a in _odd_units(n)
        if all(table_q[s] == table_qp[(a * s) % n] for s in range(n))
    )
    return MatchingResult(p, a_space.q, b_space.q, matches)


def component_classes(p: int, max_p: int | None = None) -> list[list[int]]:
    """Partition of the valid rotation parameters q under the matching
    relation; the class count is a lower bound for the number of psc
    moduli-space components of X(p)."""
    if p % 2 == 0:
        raise ParameterError("p must be odd")
    _check_budget(p, max_p)
    remaining = _odd_units(2 * p)
    classes: list[list[int]] = []
    while remaining:
        rep = remaining[0]
        cls = [
            q for q in remaining if not distinguish_metrics(p, rep, q, max_p).distinguishable
        ]
        classes.append(cls)
        remaining = [q for q in remaining if q not in cls]
    return classes
