"""Integral lattices with symmetric pairings, their isometries, sphere
reflections, the orientation sign on the positive part, metabolizers of
doubled structures, and the index-theoretic formal dimension formula.

Vectors are plain integer tuples; matrices are tuples of rows acting on
column coordinate vectors, so the columns of an isometry matrix are the
images of the basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import ParameterError, ResourceBoundError

__all__ = [
    "IntegralLattice",
    "Isometry",
    "IsometricStructure",
    "reflection_sphere",
    "alpha_invariant",
    "double_structure",
    "metabolizer_check",
    "metabolizer_search",
    "sw_formal_dimension",
    "STANDARD_GRAM",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
]

# The rank-3 form diag(1,-1,-1) on (S, E1, E2) and the square -1 spheres
# S +- E1 + E2 used throughout the wall-crossing scenarios.
STANDARD_GRAM = ((1, 0, 0), (0, -1, 0), (0, 0, -1))
SIGMA_PLUS = (1, 1, 1)
SIGMA_MINUS = (1, -1, 1)


def _as_vector(v, rank: int) -> tuple[int, ...]:
    vec = tuple(int(x) for x in v)
    if len(vec) != rank:
        raise ParameterError(f"vector length {len(vec)} does not match rank {rank}")
    return vec


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _transpose(m):
    return tuple(zip(*m))


def _det(m) -> int:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def _mat_inverse(m):
    """Exact inverse of a square matrix via Gauss-Jordan over Fraction."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ParameterError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _row_space(vectors):
    """Reduced row-echelon basis of the rational span of integer/rational rows."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    basis = []
    pivots = []
    for row in rows:
        for b, p in zip(basis, pivots):
            if row[p] != 0:
                factor = row[p]
                row = [x - factor * y for x, y in zip(row, b)]
        pivot = next((i for i, x in enumerate(row) if x != 0), None)
        if pivot is None:
            continue
        row = [x / row[pivot] for x in row]
        basis.append(row)
        pivots.append(pivot)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [basis[i] for i in order], sorted(pivots)


def _in_span(basis, pivots, v):
    row = [Fraction(x) for x in v]
    for b, p in zip(basis, pivots):
        if row[p] != 0:
            factor = row[p]
            row = [x - factor * y for x, y in zip(row, b)]
    return all(x == 0 for x in row)


class IntegralLattice:
    """A free abelian group with a symmetric integer pairing.

    A distinguished positive class may be designated when the signature
    has a single positive square; it selects the positive-cone component
    used for orientation bookkeeping.
    """

    def __init__(self, gram, positive_class=None):
        gram = tuple(tuple(int(x) for x in row) for row in gram)
        rank = len(gram)
        if any(len(row) != rank for row in gram):
            raise ParameterError("gram matrix must be square")
        if gram != _transpose(gram):
            raise ParameterError("gram matrix must be symmetric")
        self.gram = gram
        self.rank = rank
        if positive_class is not None:
            positive_class = _as_vector(positive_class, rank)
            if self.pairing(positive_class, positive_class) <= 0:
                raise ParameterError("designated positive class must have positive square")
        self.positive_class = positive_class

    def pairing(self, u, v):
        if len(u) != self.rank or len(v) != self.rank:
            raise ParameterError(
                f"vectors of length {len(u)}, {len(v)} on a rank-{self.rank} lattice"
            )
        return sum(u[i] * self.gram[i][j] * v[j] for i in range(self.rank) for j in range(self.rank))

    def norm(self, v):
        return self.pairing(v, v)

    def signature(self) -> tuple[int, int, int]:
        """(positive, negative, zero) inertia, by rational diagonalization."""
        n = self.rank
        a = [[Fraction(self.gram[i][j]) for j in range(n)] for i in range(n)]
        pos = neg = zero = 0
        idx = list(range(n))
        while idx:
            k = idx[0]
            if a[k][k] == 0:
                other = next((j for j in idx[1:] if a[k][j] != 0), None)
                if other is None:
                    zero += 1
                    idx.pop(0)
                    continue
                # make the diagonal entry nonzero by a row+col operation;
                # one of adding or subtracting `other` always works
                sign = 1 if 2 * a[k][other] + a[other][other] != 0 else -1
                for j in range(n):
                    a[k][j] += sign * a[other][j]
                for i in range(n):
                    a[i][k] += sign * a[i][other]
            d = a[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            for i in idx[1:]:
                f = a[i][k] / d
                if f:
                    for j in range(n):
                        a[i][j] -= f * a[k][j]
                    for j in range(n):
                        a[j][i] -= f * a[j][k]  # a stays symmetric
            idx.pop(0)
        return pos, neg, zero

    def __eq__(self, other):
        return (
            isinstance(other, IntegralLattice)
            and self.gram == other.gram
            and self.positive_class == other.positive_class
        )

    def __repr__(self):
        return f"IntegralLattice(rank={self.rank}, gram={self.gram})"


def standard_lattice() -> IntegralLattice:
    """diag(1,-1,-1) with the positive cone chosen so s = (1,0,0) is positive."""
    return IntegralLattice(STANDARD_GRAM, positive_class=(1, 0, 0))


class Isometry:
    """An integer matrix preserving the lattice pairing exactly."""

    def __init__(self, lattice: IntegralLattice, matrix):
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(matrix) != lattice.rank or any(len(r) != lattice.rank for r in matrix):
            raise ParameterError("isometry matrix does not match lattice rank")
        g = lattice.gram
        mt = _transpose(matrix)
        if _mat_mul(_mat_mul(mt, g), matrix) != g:
            raise ParameterError("matrix does not preserve the pairing")
        if _det(matrix) not in (1, -1):
            raise ParameterError("isometry must have determinant +-1")
        self.lattice = lattice
        self.matrix = matrix

    def apply(self, v):
        return _mat_vec(self.matrix, _as_vector(v, self.lattice.rank))

    def __call__(self, v):
        return self.apply(v)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other, as function composition."""
        if self.lattice.gram != other.lattice.gram:
            raise ParameterError("isometries live on different lattices")
        return Isometry(self.lattice, _mat_mul(self.matrix, other.matrix))

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self) -> "Isometry":
        inv = _mat_inverse(self.matrix)
        assert all(x.denominator == 1 for row in inv for x in row)
        return Isometry(self.lattice, tuple(tuple(int(x) for x in row) for row in inv))

    def power(self, d: int) -> "Isometry":
        if d < 0:
            return self.inverse().power(-d)
        result = Isometry(self.lattice, _identity(self.lattice.rank))
        base = self
        while d:
            if d & 1:
                result = result * base
            base = base * base
            d >>= 1
        return result

    def adjoint(self) -> "Isometry":
        """The pairing-adjoint gram^-1 f^T gram, the action induced on the
        dual coordinates; equals the inverse for isometries."""
        g = self.lattice.gram
        ginv = _mat_inverse(g)
        mt = _transpose(self.matrix)
        prod = _mat_mul(_mat_mul(ginv, mt), tuple(tuple(Fraction(x) for x in row) for row in g))
        assert all(x.denominator == 1 for row in prod for x in row)
        return Isometry(self.lattice, tuple(tuple(int(x) for x in row) for row in prod))

    def is_identity(self) -> bool:
        return self.matrix == _identity(self.lattice.rank)

    def __eq__(self, other):
        return (
            isinstance(other, Isometry)
            and self.matrix == other.matrix
            and self.lattice.gram == other.lattice.gram
        )

    def __repr__(self):
        return f"Isometry({self.matrix})"


def identity_isometry(lattice: IntegralLattice) -> Isometry:
    return Isometry(lattice, _identity(lattice.rank))


def reflection_sphere(lattice: IntegralLattice, sigma) -> Isometry:
    """The reflection x -> x + 2(x . sigma) sigma in a square -1 class."""
    sigma = _as_vector(sigma, lattice.rank)
    if lattice.norm(sigma) != -1:
        raise ParameterError(f"reflection class must have square -1, got {lattice.norm(sigma)}")
    cols = []
    for j in range(lattice.rank):
        e = tuple(int(i == j) for i in range(lattice.rank))
        coef = 2 * lattice.pairing(e, sigma)
        cols.append(tuple(e[i] + coef * sigma[i] for i in range(lattice.rank)))
    matrix = tuple(zip(*cols))
    return Isometry(lattice, matrix)


def alpha_invariant(f: Isometry) -> int:
    """+1 when f preserves the positive-cone component of the designated
    positive class, -1 when it swaps the components."""
    lattice = f.lattice
    v = lattice.positive_class
    if v is None:
        raise ParameterError("lattice has no designated positive class")
    value = lattice.pairing(f.apply(v), v)
    if value == 0:
        raise AssertionError("isometry sent the positive class orthogonal to itself")
    return 1 if value > 0 else -1


@dataclass(frozen=True)
class IsometricStructure:
    """(L + L, f + id, q + -q): the doubled lattice with block-diagonal
    pairing q + -q and the block map f + id."""

    lattice: IntegralLattice
    map: Isometry

    def __post_init__(self):
        if self.lattice.rank % 2 != 0:
            raise ParameterError("doubled structure must have even rank")


def double_structure(lattice: IntegralLattice, f: Isometry) -> IsometricStructure:
    """Build (H + H, f + id, q + -q) from a lattice and an isometry of it."""
    if f.lattice.gram != lattice.gram:
        raise ParameterError("isometry does not act on the given lattice")
    n = lattice.rank
    gram = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                row.append(lattice.gram[i][j])
            elif i >= n and j >= n:
                row.append(-lattice.gram[i - n][j - n])
            else:
                row.append(0)
        gram.append(tuple(row))
    doubled = IntegralLattice(tuple(gram))
    matrix = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                row.append(f.matrix[i][j])
            elif i >= n and j >= n:
                row.append(int(i == j))
            else:
                row.append(0)
        matrix.append(tuple(row))
    return IsometricStructure(doubled, Isometry(doubled, tuple(matrix)))


def metabolizer_check(structure: IsometricStructure, vectors) -> bool:
    """True iff the rational span of the vectors is half-rank, the doubled
    form vanishes on it, and it is invariant under the doubled map.

    The criterion is a subspace condition, so it is unchanged by row
    operations on the spanning set; integral primitivity is not required.
    """
    lat = structure.lattice
    vecs = [_as_vector(v, lat.rank) for v in vectors]
    basis, pivots = _row_space(vecs)
    if 2 * len(basis) != lat.rank:
        return False
    for i, u in enumerate(basis):
        for v in basis[i:]:
            if lat.pairing(u, v) != 0:
                return False
    for u in basis:
        if not _in_span(basis, pivots, _mat_vec(structure.map.matrix, u)):
            return False
    return True


def metabolizer_search(
    structure: IsometricStructure,
    coefficient_bound: int = 1,
    budget: int = 2_000_000,
) -> list[tuple[int, ...]] | None:
    """Bounded exhaustive search for a metabolizer.

    Candidates are primitive vectors with coordinates in
    [-coefficient_bound, coefficient_bound], enumerated lexicographically;
    a depth-first search keeps partial families independent and isotropic
    and accepts once a half-rank family passes metabolizer_check.  Returns
    None when no metabolizer exists within the bound.  The budget caps the
    number of extension steps examined.
    """
    if coefficient_bound < 1:
        raise ParameterError("coefficient bound must be >= 1")
    lat = structure.lattice
    rank = lat.rank
    half = rank // 2
    span = range(-coefficient_bound, coefficient_bound + 1)
    candidates = []
    for coords in product(span, repeat=rank):
        vec = tuple(coords)
        nonzero = [abs(x) for x in vec if x]
        if not nonzero:
            continue
        if next(x for x in vec if x) < 0:  # keep one vector per +-pair
            continue
        if gcd(*nonzero) != 1:
            continue
        if lat.norm(vec) != 0:
            continue
        candidates.append(vec)

    steps = 0

    def extend(start: int, chosen: list[tuple[int, ...]]):
        nonlocal steps
        if len(chosen) == half:
            return list(chosen) if metabolizer_check(structure, chosen) else None
        basis, pivots = _row_space(chosen) if chosen else ([], [])
        for idx in range(start, len(candidates)):
            steps += 1
            if steps > budget:
                raise ResourceBoundError(
                    f"metabolizer search exceeded its budget of {budget} steps"
                )
            v = candidates[idx]
            if chosen:
                if any(lat.pairing(v, u) != 0 for u in chosen):
                    continue
                if _in_span(basis, pivots, v):
                    continue
            found = extend(idx + 1, chosen + [v])
            if found is not None:
                return found
        return None

    return extend(0, [])


def sw_formal_dimension(c1_square: int, euler: int, signature: int) -> int:
    """(c1^2 - 2*chi - 3*sigma) / 4, defined only when the characteristic
    congruence c1^2 = 2*chi + 3*sigma (mod 4) holds."""
    num = c1_square - 2 * euler - 3 * signature
    if num % 4 != 0:
        raise ParameterError(
            f"c1^2={c1_square} violates c1^2 = 2chi+3sigma (mod 4) "
            f"for chi={euler}, sigma={signature}: inconsistent spin-c datum"
        )
    return num // 4
