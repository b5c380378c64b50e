"""Affine charts O_tau of G(d, n) and the rank-condition ideals living on them.

A point of O_tau is the column span of an n x d matrix whose rows tau_1..tau_d
form the identity. Row q outside tau carries the coordinate x_q_p in the
column of pivot p.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import json
import logging

import sympy as sp

from algebra.exceptions import UnitIdealError
from algebra.groebner import minimal_generators
from algebra.local import is_homogeneous_ideal
from algebra.polynomials import PolyIdeal, PolyRing, format_rational, parse_rational, polynomial_from_expr

from .combinatorics import (
    CosetRep,
    GrassShape,
    RootIndex,
    bruhat_leq,
    chart_index_set,
    length,
    opposite_descents,
    positive_root_indices,
    schubert_descents,
)
from .exceptions import SchubertError, ShapeMismatchError

logger = logging.getLogger(__name__)

X_PREFIX = 'x'
Y_PREFIX = 'y'

ZERO = 'zero'
ONE = 'one'
VARIABLE = 'var'


def variable_name(idx, prefix=X_PREFIX):
    return f"{prefix}_{idx.q}_{idx.p}"


def index_of_variable(name):
    try:
        _, q, p = name.split('_')
        return RootIndex(int(q), int(p))
    except ValueError:
        raise SchubertError(f"'{name}' is not a chart variable") from None


@dataclass(frozen=True)
class Chart:
    shape: GrassShape
    tau: CosetRep
    indices: tuple
    ring: PolyRing
    y_ring: PolyRing

    @property
    def nvars(self):
        return len(self.indices)

    def position(self, idx):
        return self.indices.index(idx)

    def layout(self):
        """Entry kinds per (row, column slot), rows and slots 1-based."""
        cells = {}
        for row in range(1, self.shape.n + 1):
            for slot, p in enumerate(self.tau, start=1):
                if row in self.tau:
                    cells[(row, slot)] = (ONE, None) if row == p else (ZERO, None)
                else:
                    cells[(row, slot)] = (VARIABLE, RootIndex(row, p))
        return cells

    def matrix(self, values):
        """The chart matrix at the point with coordinate ``values``, as rationals."""
        cells = self.layout()
        return [
            [_fraction(values[self.position(idx)]) if kind == VARIABLE else Fraction(int(kind == ONE))
             for kind, idx in (cells[(row, slot)] for slot in range(1, self.shape.d + 1))]
            for row in range(1, self.shape.n + 1)
        ]

    def symbolic_matrix(self):
        """The chart matrix over sympy symbols named like the ring variables."""
        cells = self.layout()
        return sp.Matrix([
            [sp.Symbol(variable_name(idx)) if kind == VARIABLE else int(kind == ONE)
             for kind, idx in (cells[(row, slot)] for slot in range(1, self.shape.d + 1))]
            for row in range(1, self.shape.n + 1)
        ])

    def origin(self):
        return AffinePoint.from_values(self, [0] * self.nvars)

    def __str__(self):
        return f"O_{self.tau} in {self.shape}"


def _fraction(value):
    return value if isinstance(value, Fraction) else parse_rational(value)


@lru_cache(maxsize=None)
def build_chart(shape, tau):
    indices = tuple(chart_index_set(shape, tau))
    ring = PolyRing(tuple(variable_name(idx) for idx in indices))
    y_ring = PolyRing(tuple(variable_name(idx, Y_PREFIX) for idx in indices))
    return Chart(shape=shape, tau=tau, indices=indices, ring=ring, y_ring=y_ring)


@dataclass(frozen=True)
class AffinePoint:
    """Rational chart coordinates, stored as sorted (RootIndex, Fraction) pairs."""
    coords: tuple

    def __post_init__(self):
        pairs = tuple(sorted((idx, _fraction(value)) for idx, value in self.coords))
        object.__setattr__(self, 'coords', pairs)

    @classmethod
    def from_mapping(cls, mapping):
        return cls(tuple(mapping.items()))

    @classmethod
    def from_values(cls, chart, values):
        values = list(values)
        if len(values) != chart.nvars:
            raise ShapeMismatchError(f"{chart} has {chart.nvars} coordinates, got {len(values)}")
        return cls(tuple(zip(chart.indices, values)))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple((RootIndex.parse(key), parse_rational(value)) for key, value in data.items()))

    def as_dict(self):
        return dict(self.coords)

    def keys(self):
        return tuple(idx for idx, _ in self.coords)

    def values(self, chart):
        mapping = self.as_dict()
        if set(mapping) != set(chart.indices):
            raise ShapeMismatchError(f"Point coordinates do not match the index set of {chart}")
        return [mapping[idx] for idx in chart.indices]

    def is_origin(self):
        return all(value == 0 for _, value in self.coords)

    def to_json(self):
        return {str(idx): format_rational(value) for idx, value in self.coords}

    def __str__(self):
        return json.dumps(self.to_json(), sort_keys=True)


# cells and matrices

def _sympy_matrix(rows):
    return sp.Matrix([[sp.Rational(c.numerator, c.denominator) for c in map(_fraction, row)] for row in rows])


def rank_table(shape, matrix):
    """dim(V cap E_j) for j = 0..n, V the column span of ``matrix``."""
    mat = _sympy_matrix(matrix)
    if mat.shape != (shape.n, shape.d):
        raise ShapeMismatchError(f"Expected a {shape.n}x{shape.d} matrix, got {mat.shape[0]}x{mat.shape[1]}")
    if mat.rank() != shape.d:
        raise SchubertError("Matrix columns do not span a d-dimensional subspace")
    table = []
    for j in range(shape.n + 1):
        tail = mat[j:, :]
        table.append(shape.d - (tail.rank() if j < shape.n else 0))
    return table


def cell_of_point(shape, matrix):
    """The tau with dim(V cap E_j) = #{k : tau_k <= j} for every j."""
    table = rank_table(shape, matrix)
    return CosetRep(tuple(j for j in range(1, shape.n + 1) if table[j] > table[j - 1]))


def point_from_matrix(shape, matrix):
    """Chart and chart coordinates of the column span of ``matrix``."""
    tau = cell_of_point(shape, matrix)
    chart = build_chart(shape, tau)
    mat = _sympy_matrix(matrix)
    pivots = mat.extract([p - 1 for p in tau], list(range(shape.d)))
    reduced = mat * pivots.inv()
    coords = {}
    for slot, p in enumerate(tau):
        for q in range(1, shape.n + 1):
            if q not in tau:
                entry = reduced[q - 1, slot]
                coords[RootIndex(q, p)] = Fraction(int(entry.p), int(entry.q))
    return chart, AffinePoint.from_mapping(coords)


def in_cell(chart, point):
    mapping = point.as_dict()
    point.values(chart)
    return all(mapping[idx] == 0 for idx in positive_root_indices(chart.shape, chart.tau))


def schubert_rank_holds(shape, w, matrix):
    """Membership of span(matrix) in X_w by its rank table."""
    table = rank_table(shape, matrix)
    return all(table[j] >= sum(1 for wk in w if wk <= j) for j in range(shape.n + 1))


def opposite_rank_holds(shape, v, matrix):
    """Membership of span(matrix) in X^v: rows 1..j-1 have rank <= d - #{k : v_k >= j}."""
    mat = _sympy_matrix(matrix)
    for j in range(2, shape.n + 1):
        bound = shape.d - sum(1 for vk in v if vk >= j)
        if mat[:j - 1, :].rank() > bound:
            return False
    return True


# rank conditions

def rank_condition_minors(chart, rows, rank):
    """All (rank + 1)-minors of the chart matrix restricted to ``rows`` (1-based)."""
    size = rank + 1
    if size > min(len(rows), chart.shape.d):
        return []
    matrix = chart.symbolic_matrix()
    minors = []
    for row_set in combinations(rows, size):
        for col_set in combinations(range(chart.shape.d), size):
            sub = matrix.extract([r - 1 for r in row_set], list(col_set))
            det = polynomial_from_expr(sub.det(method='berkowitz'), chart.ring)
            if not det.is_zero():
                minors.append(det)
    return minors


def _finish(chart, generators, minimal):
    ideal = PolyIdeal(chart.ring, tuple(generators)).canonical()
    return minimal_generators(ideal) if minimal else ideal


@lru_cache(maxsize=None)
def schubert_ideal(chart, w, minimal=False):
    """Ideal of Y_w = X_w cap O_tau; the unit marker when tau is not below w."""
    w.check(chart.shape)
    if not bruhat_leq(chart.tau, w):
        return PolyIdeal.unit(chart.ring)
    n, d = chart.shape.n, chart.shape.d
    generators = []
    for j in schubert_descents(chart.shape, w):
        rank = d - sum(1 for wk in w if wk <= j)
        generators.extend(rank_condition_minors(chart, range(j + 1, n + 1), rank))
    return _finish(chart, generators, minimal)


@lru_cache(maxsize=None)
def opposite_ideal(chart, v, minimal=False):
    """Ideal of Y^v = X^v cap O_tau; the unit marker when v is not below tau."""
    v.check(chart.shape)
    if not bruhat_leq(v, chart.tau):
        return PolyIdeal.unit(chart.ring)
    d = chart.shape.d
    generators = []
    for j in opposite_descents(chart.shape, v):
        rank = d - sum(1 for vk in v if vk >= j)
        generators.extend(rank_condition_minors(chart, range(1, j), rank))
    return _finish(chart, generators, minimal)


@lru_cache(maxsize=None)
def richardson_ideal(chart, w, v, minimal=False):
    if not (bruhat_leq(v, chart.tau) and bruhat_leq(chart.tau, w)):
        return PolyIdeal.unit(chart.ring)
    combined = schubert_ideal(chart, w, minimal) + opposite_ideal(chart, v, minimal)
    return combined.canonical()


def translate_to_origin(ideal, point):
    """Substitute x = y + m so that the point m becomes the origin of the y-coordinates."""
    indices = [index_of_variable(name) for name in ideal.ring.names]
    mapping = point.as_dict()
    if set(mapping) != set(indices):
        raise ShapeMismatchError("Point coordinates do not match the ideal's variables")
    y_ring = PolyRing(tuple(variable_name(idx, Y_PREFIX) for idx in indices))
    return ideal.translated([mapping[idx] for idx in indices], y_ring).canonical()


def _same_keys(x, m):
    if x.keys() != m.keys():
        raise ShapeMismatchError("Points live on different charts")


def c_action(xi, x, m):
    """The additive action x -> x - xi*m moving m along its line to the origin."""
    _same_keys(x, m)
    xi = _fraction(xi)
    mv = m.as_dict()
    return AffinePoint(tuple((idx, value - xi * mv[idx]) for idx, value in x.coords))


def scale_action(xi, x):
    xi = _fraction(xi)
    return AffinePoint(tuple((idx, xi * value) for idx, value in x.coords))


def is_cone_over_origin(ideal):
    if ideal.is_unit_marker():
        raise UnitIdealError("The empty variety is not a cone")
    return is_homogeneous_ideal(ideal)


def expected_dimension(shape, w=None, v=None):
    """Dimension of X_w^v near any of its points: length(w) - length(v)."""
    top = length(w) if w is not None else shape.dimension
    bottom = length(v) if v is not None else 0
    return top - bottom


