"""Signed wall-crossing bookkeeping for one-parameter families of period
points in the positive cone of a signature (1,2) lattice.

Period points are rational rays in the cone (never normalized to the
hyperboloid, so every decision stays exact); the orbit of a starting ray
under the dual action of an isometry crosses the wall of reducibles, and
the signed count of crossings times the oracle invariant of the closed
piece is the total one-parameter invariant.  Walls and period points use
dual (H^2) coordinates throughout: an isometry f acts on them by the
pairing-adjoint gram^-1 f^T gram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConeError,
    GenericityError,
    ParameterError,
    StabilizationError,
    UniquenessViolationError,
)
from .lattice import (
    STANDARD_GRAM,
    IntegralLattice,
    Isometry,
    alpha_invariant,
    sw_formal_dimension,
)

__all__ = [
    "WallClass",
    "SpinCData",
    "OrbitSummary",
    "OrbitStatus",
    "cone_point",
    "wall_evaluate",
    "segment_crossing",
    "orbit_swtot",
    "unique_crossing_index",
    "power_swtot",
    "finite_orbit_swtot",
    "spinc_orbit",
    "classify_isometry",
    "disc_project",
]


@dataclass(frozen=True)
class WallClass:
    """The class defining the wall of reducibles: the first Chern class of
    the spin-c structure plus a rational perturbation class."""

    c1: tuple[int, ...]
    perturbation: tuple[Fraction, ...] | None = None

    def vector(self) -> tuple[Fraction, ...]:
        if self.perturbation is None:
            vec = tuple(Fraction(x) for x in self.c1)
        else:
            if len(self.perturbation) != len(self.c1):
                raise ParameterError("perturbation length does not match c1")
            vec = tuple(Fraction(a) + Fraction(b) for a, b in zip(self.c1, self.perturbation))
        if all(x == 0 for x in vec):
            raise ParameterError("effective wall class is zero")
        return vec


@dataclass(frozen=True)
class SpinCData:
    """The spin-c bookkeeping: c1 on the b+=1 summand, the oracle value of
    the closed-piece invariant, and the (necessarily zero) formal dimension
    of the closed piece."""

    c1: tuple[int, ...]
    sw_x: int
    dim_x: int = 0

    def validate(self, lattice: IntegralLattice) -> None:
        if self.dim_x != 0:
            raise ParameterError(f"closed-piece moduli dimension must be 0, got {self.dim_x}")
        c1_square = lattice.norm(self.c1)
        # chi = 5 and sigma = -1 for the b+=1 summand carrying the wall
        if sw_formal_dimension(c1_square, 5, -1) != -2:
            raise ParameterError(
                f"c1 with square {c1_square} does not give formal dimension -2 "
                "on the wall-carrying summand"
            )


@dataclass(frozen=True)
class OrbitSummary:
    """Crossing record of one orbit sweep.  crossings maps step index n to
    the signed contribution of the segment from orbit point n to n+1
    (already multiplied by the oracle value); indices with zero
    contribution are omitted.  total is their sum."""

    crossings: dict[int, int]
    total: int = field(init=False)
    stabilized: bool = True
    steps_used: int = 0

    def __post_init__(self):
        object.__setattr__(self, "total", sum(self.crossings.values()))


@dataclass(frozen=True)
class OrbitStatus:
    """Result of iterating a spin-c class: finite with a period, or no
    return within the inspected bound (treated as infinite downstream)."""

    finite: bool
    period: int | None
    bound: int


def cone_point(lattice: IntegralLattice, coords) -> tuple[Fraction, ...]:
    """Validate that coords is a ray in the positive cone (positive square,
    positive pairing with the designated class) and return it as Fractions."""
    if lattice.positive_class is None:
        raise ParameterError("lattice needs a designated positive class for cone checks")
    vec = tuple(Fraction(x) for x in coords)
    if len(vec) != lattice.rank:
        raise ParameterError(f"period point length {len(vec)} does not match rank {lattice.rank}")
    if lattice.norm(vec) <= 0:
        raise ConeError(f"period point {coords} has non-positive square")
    if lattice.pairing(vec, lattice.positive_class) <= 0:
        raise ConeError(f"period point {coords} pairs non-positively with the positive class")
    return vec


def _integerize(vec) -> tuple[int, ...]:
    denom = math.lcm(*(Fraction(x).denominator for x in vec))
    return tuple(int(Fraction(x) * denom) for x in vec)


def wall_evaluate(lattice: IntegralLattice, wall: WallClass, omega) -> Fraction:
    """Pairing of a cone point against the effective wall class; zero means
    the point lies on the wall.  The sign is scale-invariant on rays."""
    vec = cone_point(lattice, omega)
    return Fraction(lattice.pairing(vec, wall.vector()))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def segment_crossing(lattice: IntegralLattice, wall: WallClass, u, v) -> int:
    """Signed crossing count of the straight segment from u to v:
    +1 for a negative-to-positive wall transition, -1 for the reverse,
    0 when both endpoints are on the same side.  Endpoints on the wall are
    rejected as non-generic."""
    a = wall_evaluate(lattice, wall, u)
    b = wall_evaluate(lattice, wall, v)
    if a == 0 or b == 0:
        raise GenericityError("segment endpoint lies on the wall; choose a generic point")
    return (_sign(b) - _sign(a)) // 2


def _orbit_pairings(lattice, f, wall, omega0, n_max):
    """Pairings <A^n omega0, w> for n = -n_max .. n_max+1 with A the dual
    action of f; all integer arithmetic after clearing denominators."""
    omega = _integerize(cone_point(lattice, omega0))
    w = _integerize(wall.vector())
    forward = f.adjoint().matrix
    backward = f.matrix  # inverse of the adjoint
    pair = lambda v: lattice.pairing(v, w)

    def step(mat, v):
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in mat)

    values = {0: pair(omega)}
    v = omega
    for n in range(1, n_max + 2):
        v = step(forward, v)
        values[n] = pair(v)
    v = omega
    for n in range(1, n_max + 1):
        v = step(backward, v)
        values[-n] = pair(v)
    for n in range(-n_max, n_max + 2):
        if values[n] == 0:
            raise GenericityError(
                f"orbit point at step {n} lies on the wall; perturb the starting ray"
            )
    return values


def orbit_swtot(
    lattice: IntegralLattice,
    f: Isometry,
    spinc: SpinCData,
    omega0,
    wall: WallClass,
    n_max: int = 1000,
    stab_window: int = 16,
) -> OrbitSummary:
    """Total signed wall-crossing count of the orbit of omega0, times the
    oracle invariant of the closed piece.

    Sums the segment crossings for n in [-n_max, n_max] and certifies the
    tails: the wall side must be constant over the last stab_window steps
    at both ends, otherwise StabilizationError is raised (no total is
    reported for an uncertified sweep).
    """
    if alpha_invariant(f) != 1:
        raise ParameterError("orbit sums require an orientation-coherent map (alpha = +1)")
    spinc.validate(lattice)
    if n_max < 1:
        raise ParameterError("n_max must be positive")
    window = min(stab_window, n_max)
    values = _orbit_pairings(lattice, f, wall, omega0, n_max)
    signs = {n: _sign(v) for n, v in values.items()}
    crossings = {}
    for n in range(-n_max, n_max + 1):
        c = (signs[n + 1] - signs[n]) // 2
        if c and spinc.sw_x:
            crossings[n] = c * spinc.sw_x
    low = [signs[n] for n in range(-n_max, -n_max + window)]
    high = [signs[n] for n in range(n_max + 2 - window, n_max + 2)]
    if len(set(low)) != 1 or len(set(high)) != 1:
        raise StabilizationError(
            f"wall side has not stabilized within {n_max} steps; "
            "the map may not be parabolic for this wall"
        )
    return OrbitSummary(crossings=crossings, steps_used=2 * n_max + 1)


def unique_crossing_index(
    lattice: IntegralLattice,
    f: Isometry,
    spinc: SpinCData,
    omega0,
    wall: WallClass,
    n_max: int = 1000,
    stab_window: int = 16,
) -> int:
    """Index n of the single segment where the orbit crosses the wall.

    Raises UniquenessViolationError when the orbit crosses zero times or
    more than once (the configuration is not parabolic-with-one-crossing).
    """
    summary = orbit_swtot(lattice, f, spinc, omega0, wall, n_max, stab_window)
    hits = sorted(summary.crossings)
    if spinc.sw_x == 0:
        raise ParameterError("crossing index is undefined when the oracle value is zero")
    if len(hits) != 1:
        raise UniquenessViolationError(
            f"expected exactly one wall crossing, found {len(hits)} at {hits}"
        )
    return hits[0]


def power_swtot(
    lattice: IntegralLattice,
    f: Isometry,
    d: int,
    spinc: SpinCData,
    omega0,
    wall: WallClass,
    n_max: int = 1000,
    stab_window: int = 16,
) -> int:
    """Total for the d-th power of the map, in the infinite-orbit regime.

    Requires the spin-c orbit to show no return within n_max steps; the
    result provably equals the total for f itself, and both sweeps are run
    so the equality is checked rather than assumed.
    """
    if d < 1:
        raise ParameterError(f"power must be a positive integer, got {d}")
    status = spinc_orbit(lattice, f, spinc.c1, bound=n_max)
    if status.finite:
        raise ParameterError(
            f"spin-c orbit is finite (period {status.period}); "
            "use finite_orbit_swtot for the cyclic bookkeeping"
        )
    base = orbit_swtot(lattice, f, spinc, omega0, wall, n_max, stab_window)
    powered = orbit_swtot(lattice, f.power(d), spinc, omega0, wall, n_max, stab_window)
    assert powered.total == base.total, "power invariance violated: arithmetic bug"
    return powered.total


def finite_orbit_swtot(orbit_size: int, edge_values, d: int) -> int:
    """Cyclic bookkeeping when the spin-c orbit is finite with N elements.

    edge_values[k] is the contribution of the k-th segment around the
    orbit cycle.  The d-step concatenated path is walked explicitly and
    each edge counted with its multiplicity; the result is checked against
    the closed form lcm(d, N)/N * sum(edge_values) before returning.
    """
    if orbit_size < 1 or d < 1:
        raise ParameterError("orbit size and power must be positive")
    edges = [int(x) for x in edge_values]
    if len(edges) != orbit_size:
        raise ParameterError(f"expected {orbit_size} edge values, got {len(edges)}")
    n = orbit_size
    counts = [0] * n
    period_d = n // math.gcd(d, n)  # orbit size under the d-th power
    for k in range(period_d):
        for j in range(d):
            counts[(d * k + j) % n] += 1
    total = sum(c * e for c, e in zip(counts, edges))
    multiplicity = math.lcm(d, n) // n
    assert all(c == multiplicity for c in counts)
    assert total == multiplicity * sum(edges)
    return total


def spinc_orbit(lattice: IntegralLattice, f: Isometry, c1, bound: int = 1000) -> OrbitStatus:
    """Iterate c1 under the dual action of f; report the period if the
    class returns within the bound, else no-return-within-bound."""
    if bound < 1:
        raise ParameterError("bound must be positive")
    start = tuple(int(x) for x in c1)
    mat = f.adjoint().matrix
    v = start
    for n in range(1, bound + 1):
        v = tuple(sum(row[j] * v[j] for j in range(len(v))) for row in mat)
        if v == start:
            return OrbitStatus(finite=True, period=n, bound=bound)
    return OrbitStatus(finite=False, period=None, bound=bound)


# Roots of unity that can occur as eigenvalues of an integer matrix of size
# <= 3 have order in {1, 2, 3, 4, 6}, so any finite-order element satisfies
# f^12 = id, and all eigenvalues lie on the unit circle iff f^12 is unipotent.
_FINITE_ORDER_EXPONENT = 12


def classify_isometry(lattice: IntegralLattice, f: Isometry) -> str:
    """Elliptic (finite order), parabolic (infinite order, all eigenvalues
    on the unit circle) or hyperbolic (spectral radius > 1), decided with
    exact integer arithmetic on a signature (1,2) lattice."""
    if lattice.signature() != (1, 2, 0):
        raise ParameterError(f"classification needs signature (1,2), got {lattice.signature()}")
    g = f.power(_FINITE_ORDER_EXPONENT)
    if g.is_identity():
        return "elliptic"
    n = lattice.rank
    delta = tuple(
        tuple(g.matrix[i][j] - int(i == j) for j in range(n)) for i in range(n)
    )
    cube = _mat_cube(delta)
    if all(x == 0 for row in cube for x in row):
        return "parabolic"
    return "hyperbolic"


def _mat_cube(m):
    def mul(a, b):
        n = len(a)
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )

    return mul(mul(m, m), m)


def disc_project(lattice: IntegralLattice, omega) -> tuple[float, float]:
    """Project a cone ray to the open unit disc: normalize to the
    hyperboloid x^2 - y^2 - z^2 = 1, then (x, y, z) -> (y/(1+x), z/(1+x)).

    Only defined in the standard diag(1,-1,-1) coordinates, where the
    hyperboloid equation matches the gram."""
    if lattice.gram != STANDARD_GRAM:
        raise ParameterError("disc projection needs the standard diag(1,-1,-1) coordinates")
    vec = cone_point(lattice, omega)
    scale = math.sqrt(float(lattice.norm(vec)))
    x, y, z = (float(c) / scale for c in vec)
    return (y / (1.0 + x), z / (1.0 + x))
