"""SVG figures in the unit disc model: the wall geodesic, orbit points,
and the crossing segment.

The wall is sampled at exact rational rays on the wall plane inside the
positive cone and only projected to floats for drawing; output is
deterministic byte-for-byte for fixed inputs (fixed sample grid, fixed
float formatting).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ParameterError
from .lattice import IntegralLattice
from .wallcross import WallClass, disc_project

__all__ = ["sample_wall_points", "wall_ideal_endpoints", "render_disc_svg"]


def _wall_plane_basis(lattice: IntegralLattice, wall: WallClass):
    """Two independent integer vectors spanning the plane <v, w> = 0."""
    w = wall.vector()
    denom = math.lcm(*(x.denominator for x in w))
    w_int = tuple(int(x * denom) for x in w)
    # <v, w> = v . (G w)
    u = tuple(
        sum(lattice.gram[i][j] * w_int[j] for j in range(lattice.rank))
        for i in range(lattice.rank)
    )
    candidates = [
        (-u[1], u[0], 0),
        (-u[2], 0, u[0]),
        (0, -u[2], u[1]),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    ]
    basis = []
    for cand in candidates:
        if sum(c * x for c, x in zip(cand, u)) != 0 or not any(cand):
            continue
        if basis and _parallel(basis[0], cand):
            continue
        basis.append(cand)
        if len(basis) == 2:
            return basis
    raise AssertionError("wall plane basis not found")


def _parallel(a, b):
    return all(a[i] * b[j] == a[j] * b[i] for i in range(3) for j in range(3))


def _orient(lattice, v):
    if lattice.pairing(v, lattice.positive_class) < 0:
        return tuple(-x for x in v)
    return tuple(v)


def sample_wall_points(lattice: IntegralLattice, wall: WallClass, depth: int = 12):
    """Exact rational rays on the wall inside the positive cone.

    Rays are taken along b0 + t*b1 for t on a two-sided dyadic grid (plus
    the b1 direction itself), so the samples accumulate at the wall's
    ideal endpoints.  Returns [] when the wall misses the cone.
    """
    if lattice.rank != 3:
        raise ParameterError("wall sampling needs a rank-3 lattice")
    b0, b1 = _wall_plane_basis(lattice, wall)
    points = []
    ts = [Fraction(0)]
    for k in range(-depth, depth + 1):
        ts.append(Fraction(2) ** k)
        ts.append(-(Fraction(2) ** k))
        ts.append(Fraction(3, 2) * Fraction(2) ** k)
        ts.append(-Fraction(3, 2) * Fraction(2) ** k)
    for t in sorted(set(ts)):
        v = tuple(Fraction(a) + t * b for a, b in zip(b0, b1))
        if lattice.norm(v) > 0:
            points.append(_orient(lattice, v))
    if lattice.norm(b1) > 0:
        points.append(_orient(lattice, tuple(Fraction(x) for x in b1)))
    return points


def wall_ideal_endpoints(lattice: IntegralLattice, wall: WallClass):
    """The two boundary points of the wall geodesic in the disc (floats).

    Solves for the null directions of the pairing restricted to the wall
    plane; returns [] when the plane carries no cone directions.
    """
    b0, b1 = _wall_plane_basis(lattice, wall)
    a = lattice.norm(b0)
    b = lattice.pairing(b0, b1)
    c = lattice.norm(b1)
    # null rays of a*t^2 + 2*b*t*u + c*u^2 along b0*t + b1*u
    disc = b * b - a * c
    if disc <= 0:
        return []
    endpoints = []
    if a != 0:
        roots = [(-b + s * math.sqrt(disc)) / a for s in (1, -1)]
        dirs = [(1.0, r) for r in roots]  # (t, u) with t = 1
    else:
        dirs = [(1.0, 0.0), (-c / (2 * b), 1.0)]
    for t, u in dirs:
        v = tuple(t * x + u * y for x, y in zip(b0, b1))
        # limit of the disc projection along a null ray with x > 0
        x, y, z = v if v[0] > 0 else tuple(-c_ for c_ in v)
        endpoints.append((y / x, z / x))
    return endpoints


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def render_disc_svg(
    lattice: IntegralLattice,
    wall: WallClass,
    orbit_points=(),
    crossing_index: int | None = None,
) -> str:
    """SVG text: unit circle, wall geodesic, labeled orbit points, and the
    crossing segment highlighted.  orbit_points is a sequence of
    (step index, cone point) pairs."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.15 -1.15 2.3 2.3" '
        'width="480" height="480">',
        '<rect x="-1.15" y="-1.15" width="2.3" height="2.3" fill="white"/>',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#202020" stroke-width="0.012"/>',
    ]
    ends = wall_ideal_endpoints(lattice, wall)
    if len(ends) == 2:
        (ax, ay), (bx, by) = ends
        chord = (bx - ax, by - ay)
        # the geodesic arc is a graph over its chord, so chord projection
        # orders the samples monotonically along the arc
        samples = sorted(
            (disc_project(lattice, v) for v in sample_wall_points(lattice, wall)),
            key=lambda p: (p[0] - ax) * chord[0] + (p[1] - ay) * chord[1],
        )
        arc = [ends[0], *samples, ends[1]]
        path = " ".join(f"{_fmt(u)},{_fmt(-v)}" for u, v in arc)
        lines.append(
            f'<polyline points="{path}" fill="none" stroke="#1f4e9c" stroke-width="0.015"/>'
        )
    projected = {n: disc_project(lattice, v) for n, v in orbit_points}
    if crossing_index is not None:
        a = projected.get(crossing_index)
        b = projected.get(crossing_index + 1)
        if a and b:
            lines.append(
                f'<line x1="{_fmt(a[0])}" y1="{_fmt(-a[1])}" '
                f'x2="{_fmt(b[0])}" y2="{_fmt(-b[1])}" '
                'stroke="#e07b00" stroke-width="0.02"/>'
            )
    for n in sorted(projected):
        u, v = projected[n]
        lines.append(
            f'<circle cx="{_fmt(u)}" cy="{_fmt(-v)}" r="0.018" fill="#a01515"/>'
        )
        lines.append(
            f'<text x="{_fmt(u + 0.025)}" y="{_fmt(-v - 0.025)}" '
            f'font-size="0.07" fill="#303030">{n}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
