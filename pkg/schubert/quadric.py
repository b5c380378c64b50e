"""Schubert varieties of the odd quadric SO(2n+1)/P_1.

The quadric is Q = x_{n+1}^2 + 2 sum_{k<=n} x_k x_{2n+2-k} = 0 in P^{2n}. The
Schubert variety X_i lives on the coordinates 1..i and the opposite X^j on
j..2n+1; index n+1 names no Schubert variety.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import logging

import sympy as sp

from algebra.local import local_invariants
from algebra.polynomials import PolyIdeal, PolyRing, format_rational, parse_rational

from .engine import QUADRIC, MultiplicityReport, SweepResult
from .exceptions import MembershipError, QuadricError, ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadricShape:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise QuadricError(f"Need n >= 1, got {self.n}")

    @property
    def size(self):
        return 2 * self.n + 1

    def partner(self, k):
        """The coordinate paired with x_k by the form: 2n + 2 - k."""
        return 2 * self.n + 2 - k

    def __str__(self):
        return f"Q^{2 * self.n - 1} in P^{2 * self.n}"


@dataclass(frozen=True)
class SchubertIndex:
    n: int
    i: int

    def __post_init__(self):
        if not 1 <= self.i <= 2 * self.n + 1:
            raise QuadricError(f"Index {self.i} outside [1, {2 * self.n + 1}]")
        if self.i == self.n + 1:
            raise QuadricError(f"Index n+1 = {self.i} names no Schubert variety")

    def __int__(self):
        return self.i

    def __str__(self):
        return str(self.i)


@dataclass(frozen=True)
class QuadricPoint:
    coords: tuple

    def __post_init__(self):
        coords = tuple(parse_rational(c) if not isinstance(c, Fraction) else c for c in self.coords)
        object.__setattr__(self, 'coords', coords)
        if not any(coords):
            raise QuadricError("The zero vector is not a projective point")

    def check(self, shape):
        if len(self.coords) != shape.size:
            raise ShapeMismatchError(f"Expected {shape.size} coordinates, got {len(self.coords)}")
        return self

    def __getitem__(self, k):
        """1-based coordinate access."""
        return self.coords[k - 1]

    def support(self):
        return [k for k, c in enumerate(self.coords, start=1) if c]

    def normalized(self):
        """Scaled so the last nonzero coordinate is 1."""
        last = self.coords[self.support()[-1] - 1]
        return QuadricPoint(tuple(c / last for c in self.coords))

    def to_json(self):
        return [format_rational(c) for c in self.coords]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(parse_rational(c) for c in data))

    def __str__(self):
        return '[' + ':'.join(format_rational(c) for c in self.coords) + ']'


def _index(shape, i):
    return i if isinstance(i, SchubertIndex) else SchubertIndex(shape.n, int(i))


def q_eval(shape, x):
    x = x if isinstance(x, QuadricPoint) else QuadricPoint(tuple(x))
    x.check(shape)
    n = shape.n
    return x[n + 1] ** 2 + 2 * sum(x[k] * x[shape.partner(k)] for k in range(1, n + 1))


def _zero_outside(x, lo, hi):
    return all(x[k] == 0 for k in range(1, len(x.coords) + 1) if not lo <= k <= hi)


def schubert_member(shape, i, x):
    i = _index(shape, i).i
    return _zero_outside(x.check(shape), 1, i) and q_eval(shape, x) == 0


def opposite_member(shape, j, x):
    j = _index(shape, j).i
    return _zero_outside(x.check(shape), j, shape.size) and q_eval(shape, x) == 0


def mult_schubert_quadric(shape, i, x):
    i = _index(shape, i).i
    if not schubert_member(shape, i, x):
        raise MembershipError(f"{x} is not on X_{i}")
    if i < shape.n + 1:
        return 1
    window = range(shape.partner(i), i + 1)
    return 2 if all(x[k] == 0 for k in window) else 1


def mult_opposite_quadric(shape, j, x):
    j = _index(shape, j).i
    if not opposite_member(shape, j, x):
        raise MembershipError(f"{x} is not on X^{j}")
    if j > shape.n + 1:
        return 1
    window = range(j, shape.partner(j) + 1)
    return 2 if all(x[k] == 0 for k in window) else 1


def singular_locus_index(shape, i):
    """Sing X_i = X_{2n+1-i} for n+1 < i < 2n+1; None when X_i is smooth."""
    i = _index(shape, i).i
    if i > shape.n + 1 and i < shape.size:
        return SchubertIndex(shape.n, shape.size - i)
    return None


def opposite_singular_locus_index(shape, j):
    """Sing X^j = X^{2n+3-j} for 1 < j < n+1; None when X^j is smooth."""
    j = _index(shape, j).i
    if 1 < j < shape.n + 1:
        return SchubertIndex(shape.n, shape.size + 2 - j)
    return None


def b_matrix(shape, i, x):
    """Upper triangular b in SO(V) with b e_i = x, for x in cell form [x_1:...:x_{i-1}:1:0:...:0]."""
    i = _index(shape, i).i
    x.check(shape)
    if x[i] != 1 or any(x[k] for k in range(i + 1, shape.size + 1)):
        raise QuadricError(f"{x} is not in the cell form of C_{i}")
    if q_eval(shape, x) != 0:
        raise MembershipError(f"{x} is not on the quadric")
    size = shape.size
    pivot = shape.partner(i)
    b = sp.zeros(size, size)
    for j in range(1, size + 1):
        if j == i:
            for k in range(1, size + 1):
                b[k - 1, j - 1] = sp.Rational(x[k].numerator, x[k].denominator)
        elif j <= pivot:
            b[j - 1, j - 1] = 1
        else:
            value = x[shape.partner(j)]
            b[j - 1, j - 1] = 1
            b[pivot - 1, j - 1] = -sp.Rational(value.numerator, value.denominator)
    return b


def form_matrix(shape):
    """The anti-diagonal matrix E of the symmetric form."""
    size = shape.size
    return sp.Matrix(size, size, lambda r, c: 1 if r + c == size - 1 else 0)


def b_matrix_holds(shape, i, x, b):
    """Triangularity, b^T E b = E, det b = 1 and b e_i = x."""
    i = _index(shape, i).i
    E = form_matrix(shape)
    column = b[:, i - 1]
    return (
        b.is_upper
        and b.T * E * b == E
        and b.det() == 1
        and all(column[k - 1] == sp.Rational(x[k].numerator, x[k].denominator) for k in range(1, shape.size + 1))
    )


def verify_disjoint_sing(shape, i, j, grid=(-1, 0, 1)):
    """Sing X_i and Sing X^j share no point: by index arithmetic and on a grid."""
    i, j = _index(shape, i).i, _index(shape, j).i
    if j > i:
        raise QuadricError(f"X_{i}^{j} is empty: need j <= i")
    sing_i = singular_locus_index(shape, i)
    sing_j = opposite_singular_locus_index(shape, j)
    if sing_i is None or sing_j is None:
        return True
    # Sing X_i lives on 1..2n+1-i, Sing X^j on 2n+3-j..2n+1
    by_index = not sing_j.i <= sing_i.i
    lo, hi = sing_j.i, sing_i.i
    by_grid = lo > hi or not quadric_points(shape, (lo, hi), grid, limit=1)
    if by_index != by_grid:
        raise QuadricError(f"Singular loci of X_{i} and X^{j}: index test {by_index}, grid test {by_grid}")
    return by_index


def richardson_mult_quadric(shape, i, j, x):
    mu_i = mult_schubert_quadric(shape, i, x)
    mu_j = mult_opposite_quadric(shape, j, x)
    if mu_i == 2 and mu_j == 2:
        raise QuadricError(f"{x} is singular on both X_{i} and X^{j}")
    return mu_i * mu_j


# affine charts

def _restricted_form(shape, lo, hi):
    """(k, l, coefficient) terms of Q on the coordinates lo..hi."""
    terms = []
    if lo <= shape.n + 1 <= hi:
        terms.append((shape.n + 1, shape.n + 1, Fraction(1)))
    for k in range(max(lo, 1), shape.n + 1):
        partner = shape.partner(k)
        if lo <= partner <= hi:
            terms.append((k, partner, Fraction(2)))
    return terms


def quadric_chart_ideal(shape, support, x):
    """Ideal of the quadric restricted to ``support`` in the affine chart around x, translated to x.

    The chart sets the last nonzero coordinate of x to 1.
    """
    lo, hi = support
    x = x.check(shape)
    if not _zero_outside(x, lo, hi) or q_eval(shape, x) != 0:
        raise MembershipError(f"{x} is not on the quadric restricted to {lo}..{hi}")
    x = x.normalized()
    top = x.support()[-1]
    coords = [k for k in range(lo, hi + 1) if k != top]
    ring = PolyRing(tuple(f"x_{k}" for k in coords))
    gens = ring.gens()

    def coordinate(k):
        return ring.one() if k == top else gens[coords.index(k)]

    q = ring.zero()
    for k, l, c in _restricted_form(shape, lo, hi):
        q = q + coordinate(k) * coordinate(l) * c
    ideal = PolyIdeal(ring, (q,))
    return ideal.translated([x[k] for k in coords]).canonical()


def quadric_oracle(shape, support, x):
    """(multiplicity, local dimension) of the restricted quadric at x from its tangent cone."""
    return local_invariants(quadric_chart_ideal(shape, support, x))


def mult_richardson_quadric_oracle(shape, i, j, x):
    i, j = _index(shape, i).i, _index(shape, j).i
    multiplicity, _ = quadric_oracle(shape, (j, i), x)
    return multiplicity


def jacobian_singular(shape, support, x):
    """Jacobian criterion for the quadric restricted to ``support`` at x."""
    lo, hi = support
    terms = _restricted_form(shape, lo, hi)
    if not terms:
        return False
    gradient = {}
    for k, l, c in terms:
        if k == l:
            gradient[k] = gradient.get(k, 0) + 2 * c * x[k]
        else:
            gradient[k] = gradient.get(k, 0) + c * x[l]
            gradient[l] = gradient.get(l, 0) + c * x[k]
    return all(value == 0 for value in gradient.values())


def random_cell_point(shape, i, rng):
    """A random rational point [x_1:...:x_{i-1}:1:0:...:0] on the quadric."""
    i = _index(shape, i).i
    coords = [Fraction(0)] * shape.size
    for k in range(1, i):
        coords[k - 1] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    coords[i - 1] = Fraction(1)
    if i > shape.n + 1:
        pivot = shape.partner(i)
        coords[pivot - 1] = Fraction(0)
        rest = q_eval(shape, QuadricPoint(tuple(coords)))
        # Q is linear in x_pivot with coefficient 2 x_i = 2
        coords[pivot - 1] = -rest / 2
    return QuadricPoint(tuple(coords))


def quadric_points(shape, support, grid, limit=None):
    """Grid points of the quadric supported on ``support``, one per projective class."""
    lo, hi = support
    grid = [parse_rational(g) for g in grid]
    seen = set()
    points = []
    for combo in product(grid, repeat=hi - lo + 1):
        if not any(combo):
            continue
        coords = [Fraction(0)] * shape.size
        coords[lo - 1:hi] = combo
        point = QuadricPoint(tuple(coords))
        if q_eval(shape, point) != 0:
            continue
        normal = point.normalized()
        if normal.coords in seen:
            continue
        seen.add(normal.coords)
        points.append(normal)
        if limit is not None and len(points) >= limit:
            break
    return points


def quadric_report(shape, i, j, x):
    i, j = _index(shape, i), _index(shape, j)
    size = shape.size
    mu_i = mult_schubert_quadric(shape, i, x)
    mu_j = mult_opposite_quadric(shape, j, x)
    fast = richardson_mult_quadric(shape, i, j, x)
    oracle, local_dim = quadric_oracle(shape, (j.i, i.i), x)
    oracle_i, _ = quadric_oracle(shape, (1, i.i), x)
    oracle_j, _ = quadric_oracle(shape, (j.i, size), x)
    agreement = fast == oracle and mu_i == oracle_i and mu_j == oracle_j
    if not agreement:
        logger.error(f"Disagreement on X_{i}^{j} at {x}: closed forms {mu_i}*{mu_j}, "
                     f"tangent cones {oracle_i}, {oracle_j}, {oracle}")
    return MultiplicityReport(
        family=QUADRIC,
        n=shape.n,
        w=str(i),
        v=str(j),
        point=x.to_json(),
        mu_w=mu_i,
        mu_v=mu_j,
        mu_wv_fast=fast,
        mu_wv_oracle=oracle,
        smooth_w=not jacobian_singular(shape, (1, i.i), x),
        smooth_v=not jacobian_singular(shape, (j.i, size), x),
        smooth_wv=not jacobian_singular(shape, (j.i, i.i), x),
        local_dim=local_dim,
        agreement=agreement,
    )


def quadric_indices(shape):
    return [SchubertIndex(shape.n, k) for k in range(1, shape.size + 1) if k != shape.n + 1]


def verify_quadric(shape, grid=(-1, 0, 1), limit=None, i=None, j=None):
    """Closed forms against tangent cones on every X_i^j (j <= i) and grid point."""
    reports = []
    for top in quadric_indices(shape):
        if i is not None and top.i != int(i):
            continue
        for bottom in quadric_indices(shape):
            if bottom.i > top.i or (j is not None and bottom.i != int(j)):
                continue
            verify_disjoint_sing(shape, top, bottom)
            for x in quadric_points(shape, (bottom.i, top.i), grid, limit):
                reports.append(quadric_report(shape, top, bottom, x))
    result = SweepResult(reports=sorted(reports, key=MultiplicityReport.sort_key))
    logger.info(f"{shape}: {result.summary()}")
    return result
