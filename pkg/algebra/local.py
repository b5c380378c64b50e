"""Local algebra at the origin: tangent cones, multiplicities, degrees, Jacobians."""
from itertools import combinations_with_replacement
import logging

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from .exceptions import AlgebraError, NonHomogeneousError, PointNotOnVarietyError, UnitIdealError
from .groebner import groebner_basis, normal_form
from .hilbert import hilbert_series, ideal_hilbert_data, leading_monomials
from .polynomials import DEFAULT_ORDER, GREVLEX, MonomialOrder, PolyIdeal

logger = logging.getLogger(__name__)

HOMOGENIZED_ORDER = MonomialOrder(kind=GREVLEX, homogenizing=True)


def _require_origin(ideal):
    for g in ideal.generators:
        if g.constant_coeff() != 0:
            raise PointNotOnVarietyError(f"Generator {g} does not vanish at the origin")


def is_homogeneous_ideal(ideal):
    """True iff the ideal is homogeneous (not merely its generators)."""
    basis = groebner_basis(ideal.generators, ideal.order)
    if basis and basis[0].is_constant():
        raise UnitIdealError("The unit ideal has no cone structure")
    for g in basis:
        for part in g.homogeneous_components().values():
            if not normal_form(part, basis, ideal.order).is_zero():
                return False
    return True


def tangent_cone(ideal):
    """Ideal of lowest-degree forms of ``ideal`` at the origin.

    Generators are homogenized with ``t``, a Gröbner basis is taken under the
    order ranking powers of ``t`` first after degree, and the lowest forms of
    the dehomogenized basis generate the cone.
    """
    _require_origin(ideal)
    if ideal.is_zero_ideal():
        return PolyIdeal.zero(ideal.ring, ideal.order)
    hring = ideal.ring.homogenization()
    homogenized = [g.homogenize(hring) for g in ideal.generators]
    basis = groebner_basis(homogenized, HOMOGENIZED_ORDER)
    forms = [g.dehomogenize(ideal.ring).lowest_form() for g in basis]
    cone = groebner_basis(forms, ideal.order)
    return PolyIdeal(ideal.ring, cone, ideal.order).canonical()


def affine_dimension(ideal):
    data = ideal_hilbert_data(ideal)
    if data.dimension < 0:
        raise UnitIdealError("The unit ideal defines the empty variety")
    return data.dimension


def projective_degree(ideal):
    """Degree of the projectivization of a homogeneous (cone) ideal."""
    if not ideal.is_homogeneous_generated():
        raise NonHomogeneousError("projective_degree needs homogeneous generators")
    data = ideal_hilbert_data(ideal)
    if data.dimension < 0:
        raise UnitIdealError("The unit ideal has no degree")
    return data.degree


def cone_hilbert_data(ideal):
    cone = tangent_cone(ideal)
    basis = groebner_basis(cone.generators, cone.order)
    return hilbert_series(leading_monomials(basis, cone.order), ideal.ring.ngens)


def multiplicity_at_origin(ideal):
    return cone_hilbert_data(ideal).degree


def local_dimension(ideal):
    return cone_hilbert_data(ideal).dimension


def local_invariants(ideal):
    """(multiplicity, local dimension) at the origin from a single tangent cone."""
    data = cone_hilbert_data(ideal)
    return data.degree, data.dimension


def _monomials_below(nvars, bound):
    """All exponent tuples of total degree < bound, graded then lexicographic."""
    monos = []
    for deg in range(bound):
        for combo in combinations_with_replacement(range(nvars), deg):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            monos.append(tuple(exps))
    return monos


def hilbert_samuel_oracle(ideal, k_max):
    """dim O/(I + m^k) for k = 1..k_max, by exact linear algebra on truncations."""
    if k_max < 1:
        raise AlgebraError("k_max must be at least 1")
    _require_origin(ideal)
    nvars = ideal.ring.ngens
    values = []
    for k in range(1, k_max + 1):
        monos = _monomials_below(nvars, k)
        index = {m: i for i, m in enumerate(monos)}
        rows = {}
        for g in ideal.generators:
            low = g.low_degree()
            for shift in monos:
                if sum(shift) + low >= k:
                    continue
                row = {}
                for m, c in g.terms.items():
                    target = tuple(a + b for a, b in zip(m, shift))
                    if sum(target) < k:
                        row[index[target]] = sp.QQ(c.numerator, c.denominator)
                if row:
                    rows[len(rows)] = row
        rank = DomainMatrix(rows, (len(rows), len(monos)), sp.QQ).rank() if rows else 0
        values.append(len(monos) - rank)
    return values


def fitted_multiplicity(values, delta):
    """delta-th forward difference of the tail of a Hilbert-Samuel sequence."""
    if len(values) < delta + 1:
        raise AlgebraError(f"Need at least {delta + 1} values to fit degree {delta}")
    tail = list(values[-(delta + 1):])
    for _ in range(delta):
        tail = [b - a for a, b in zip(tail, tail[1:])]
    return tail[0]


def jacobian_rank(ideal, point):
    """Rank of the Jacobian matrix of the generators at ``point``."""
    if not ideal.generators:
        return 0
    nvars = ideal.ring.ngens
    entries = []
    for g in ideal.generators:
        row = []
        for i in range(nvars):
            value = g.derivative(i).evaluate(point)
            row.append(sp.Rational(value.numerator, value.denominator))
        entries.append(row)
    return sp.Matrix(entries).rank()


def samuel_multiplicity(ideal):
    """Multiplicity at the origin read off the Hilbert-Samuel sequence alone.

    The cone's Hilbert data only fixes how many terms to compute: the sequence
    is polynomial of degree dim from k = deg(numerator) - dim + 1 on.
    """
    data = cone_hilbert_data(ideal)
    start = max(len(data.numerator) - data.dimension, 1)
    values = hilbert_samuel_oracle(ideal, start + data.dimension + 1)
    return fitted_multiplicity(values, data.dimension)
