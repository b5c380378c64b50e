from fractions import Fraction
import random

import numpy as np
from django.core.cache import caches
from django.test import SimpleTestCase

from .exceptions import (
    AlgebraError,
    NonHomogeneousError,
    PointNotOnVarietyError,
    ReservedVariableError,
    UnitIdealError,
)
from .groebner import (
    contains,
    groebner_basis,
    is_groebner,
    is_reduced,
    minimal_generators,
    normal_form,
)
from .hilbert import _cache_key, hilbert_numerator, hilbert_series, ideal_hilbert_data, minimalize
from .local import (
    affine_dimension,
    fitted_multiplicity,
    hilbert_samuel_oracle,
    is_homogeneous_ideal,
    jacobian_rank,
    local_dimension,
    multiplicity_at_origin,
    projective_degree,
    samuel_multiplicity,
    tangent_cone,
)
from .polynomials import (
    GRLEX,
    MonomialOrder,
    PolyIdeal,
    PolyRing,
    format_polynomial,
    format_rational,
    parse_polynomial,
    parse_rational,
)


def ideal(text, names):
    ring = PolyRing(tuple(names))
    return PolyIdeal.from_text(text, ring)


def random_polynomial(rng, ring, terms=4, max_degree=3):
    gens = ring.gens()
    poly = ring.zero()
    for _ in range(terms):
        term = ring.constant(Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
        for _ in range(rng.randint(0, max_degree)):
            term = term * gens[rng.randrange(ring.ngens)]
        poly = poly + term
    return poly


class PolynomialTests(SimpleTestCase):
    def setUp(self):
        self.ring = PolyRing(('x', 'y', 'z'))
        self.x, self.y, self.z = self.ring.gens()

    def test_arithmetic(self):
        p = (self.x + self.y) ** 2
        self.assertEqual(p, self.x * self.x + 2 * self.x * self.y + self.y * self.y)
        self.assertTrue((p - p).is_zero())
        self.assertEqual((self.x - 1).degree(), 1)
        self.assertEqual(self.ring.zero().degree(), -1)

    def test_format_and_parse(self):
        p = parse_polynomial('x^2 - 3/2*x*y + 1', self.ring)
        self.assertEqual(format_polynomial(p), 'x**2 - 3/2*x*y + 1')
        self.assertEqual(parse_polynomial(format_polynomial(p), self.ring), p)
        self.assertEqual(format_polynomial(-self.z), '-z')
        self.assertEqual(format_polynomial(self.ring.zero()), '0')

    def test_rationals(self):
        self.assertEqual(format_rational(Fraction(-6, 4)), '-3/2')
        self.assertEqual(format_rational(Fraction(4, 2)), '2')
        self.assertEqual(parse_rational(' -3/6 '), Fraction(-1, 2))
        with self.assertRaises(AlgebraError):
            parse_rational('1/0')

    def test_t_is_reserved(self):
        with self.assertRaises(ReservedVariableError):
            PolyRing(('x', 't'))
        with self.assertRaises(ReservedVariableError):
            parse_polynomial('t*x', self.ring)

    def test_unknown_variable(self):
        with self.assertRaises(AlgebraError):
            parse_polynomial('x*w', self.ring)

    def test_translate_is_substitution(self):
        rng = random.Random(7)
        for _ in range(30):
            g = random_polynomial(rng, self.ring)
            shift = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3)]
            z = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
            moved = g.translate(shift)
            self.assertEqual(g.evaluate(z), moved.evaluate([a - b for a, b in zip(z, shift)]))

    def test_translate_by_zero(self):
        g = parse_polynomial('x*y - z^3 + 2', self.ring)
        self.assertEqual(g.translate([0, 0, 0]), g)

    def test_normalized(self):
        g = parse_polynomial('-2/3*x*y + 4/3*z', self.ring)
        self.assertEqual(format_polynomial(g.normalized()), 'x*y - 2*z')

    def test_lowest_form(self):
        g = parse_polynomial('y - x^2', self.ring)
        self.assertEqual(g.lowest_form(), self.y)

    def test_homogenize_round_trip(self):
        hring = self.ring.homogenization()
        g = parse_polynomial('x*y - z^3 + x', self.ring)
        h = g.homogenize(hring)
        self.assertTrue(h.is_homogeneous())
        self.assertEqual(h.dehomogenize(self.ring), g)

    def test_canonical_ideal(self):
        I = ideal('2*x*y - 2*z\n-x*y + z\nz', 'xyz')
        self.assertEqual(I.canonical().to_text(), 'z\nx*y - z')


class GroebnerTests(SimpleTestCase):
    def test_single_generator(self):
        I = ideal('x', 'xy')
        self.assertEqual(groebner_basis(I.generators), I.generators)

    def test_zero_dimensional_system(self):
        I = ideal('x^2 - y\nx*y - 1', 'xy')
        data = ideal_hilbert_data(I)
        self.assertEqual(data.dimension, 0)
        self.assertEqual(data.degree, 3)

    def test_unit_ideal(self):
        I = ideal('x\nx - 1', 'xy')
        basis = groebner_basis(I.generators)
        self.assertEqual(len(basis), 1)
        self.assertTrue(basis[0].is_constant())

    def test_zero_ideal(self):
        self.assertEqual(groebner_basis(()), ())

    def test_idempotent_and_reduced(self):
        rng = random.Random(11)
        ring = PolyRing(('a', 'b', 'c'))
        for _ in range(10):
            gens = [random_polynomial(rng, ring, terms=3, max_degree=2) for _ in range(2)]
            basis = groebner_basis(gens)
            self.assertEqual(groebner_basis(basis), basis)
            self.assertTrue(is_groebner(basis))
            self.assertTrue(is_reduced(basis))
            for g in gens:
                self.assertTrue(normal_form(g, basis).is_zero())

    def test_normal_form_of_one(self):
        I = ideal('x^2 - y\nx*y', 'xy')
        basis = groebner_basis(I.generators)
        self.assertEqual(normal_form(I.ring.one(), basis), I.ring.one())

    def test_grlex_order(self):
        order = MonomialOrder(kind=GRLEX)
        I = PolyIdeal(PolyRing(('x', 'y')), ideal('x^2 - y\nx*y - 1', 'xy').generators, order)
        self.assertEqual(ideal_hilbert_data(I).degree, 3)

    def test_syzygy_membership(self):
        # Laplace expansion along the first column
        names = ('a1', 'a2', 'a3', 'b1', 'b2', 'b3', 'c1', 'c2', 'c3')
        ring = PolyRing(names)
        I = PolyIdeal.from_text('a2*b3 - a3*b2\na2*c3 - a3*c2\nb2*c3 - b3*c2', ring)
        det = parse_polynomial(
            'a1*(b2*c3 - b3*c2) - b1*(a2*c3 - a3*c2) + c1*(a2*b3 - a3*b2)', ring
        )
        self.assertTrue(contains(I, det))
        self.assertFalse(contains(I, parse_polynomial('a2', ring)))

    def test_minimal_generators(self):
        I = ideal('x*y\nx\nx^2 + x*y', 'xy')
        self.assertEqual(minimal_generators(I).to_text(), 'x')


class HilbertTests(SimpleTestCase):
    def test_zero_ideal(self):
        data = hilbert_series([], 3)
        self.assertEqual(data.numerator, (1,))
        self.assertEqual(data.dimension, 3)
        self.assertEqual(data.degree, 1)

    def test_square_in_one_variable(self):
        data = hilbert_series([(2,)], 1)
        self.assertEqual(data.numerator, (1, 1))
        self.assertEqual(data.dimension, 0)
        self.assertEqual(data.degree, 2)
        self.assertEqual([data.series_value(k) for k in range(3)], [1, 1, 0])

    def test_unit_monomial(self):
        data = hilbert_series([(0, 0)], 2)
        self.assertEqual(data.dimension, -1)

    def test_determinantal_minors(self):
        # rank <= 1 in a generic 3x2 matrix: dimension 4, degree 3
        names = ('a', 'b', 'c', 'd', 'e', 'f')
        I = PolyIdeal.from_text('a*d - b*c\na*f - b*e\nc*f - d*e', PolyRing(names))
        data = ideal_hilbert_data(I)
        self.assertEqual(data.dimension, 4)
        self.assertEqual(data.degree, 3)

    def test_hilbert_function_by_counting(self):
        I = PolyIdeal.from_text('a*d - b*c\na*f - b*e\nc*f - d*e', PolyRing(tuple('abcdef')))
        data = ideal_hilbert_data(I)
        basis = groebner_basis(I.generators)
        leads = [g.leading_monomial() for g in basis]
        for degree in range(6):
            standard = 0
            for exps in _monomials_of_degree(6, degree):
                if not any(all(a <= b for a, b in zip(lead, exps)) for lead in leads):
                    standard += 1
            self.assertEqual(data.series_value(degree), standard)

    def test_minimalize(self):
        gens = np.array([[2, 0], [1, 1], [2, 1], [0, 3]])
        self.assertEqual(minimalize(gens).tolist(), [[1, 1], [2, 0], [0, 3]])

    def test_numerator_is_cached(self):
        cache = caches['hilbert']
        cache.clear()
        gens = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.int64)
        numerator = hilbert_numerator(gens)
        self.assertEqual(list(cache.get(_cache_key(gens))), numerator)


def _monomials_of_degree(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in _monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


class LocalAlgebraTests(SimpleTestCase):
    def test_tangent_cone_of_smooth_curve(self):
        cone = tangent_cone(ideal('y - x^2', 'xy'))
        self.assertEqual(cone.to_text(), 'y')

    def test_tangent_cone_lowest_form(self):
        cone = tangent_cone(ideal('x*y - z^3', 'xyz'))
        self.assertEqual(cone.to_text(), 'x*y')

    def test_tangent_cone_needs_origin(self):
        with self.assertRaises(PointNotOnVarietyError):
            tangent_cone(ideal('x - 1', 'xy'))

    def test_tangent_cone_is_homogeneous(self):
        cone = tangent_cone(ideal('y^2 - x^2 - x^3\nx*z - y^2', 'xyz'))
        self.assertTrue(cone.is_homogeneous_generated())
        self.assertTrue(is_homogeneous_ideal(cone))

    def test_multiplicities(self):
        self.assertEqual(multiplicity_at_origin(ideal('y - x^2', 'xy')), 1)
        self.assertEqual(multiplicity_at_origin(ideal('y^2 - x^2 - x^3', 'xy')), 2)
        self.assertEqual(multiplicity_at_origin(ideal('x*y - z^3', 'xyz')), 2)
        self.assertEqual(multiplicity_at_origin(ideal('x', 'xy')), 1)

    def test_local_dimension(self):
        self.assertEqual(local_dimension(ideal('x*y - z^3', 'xyz')), 2)
        self.assertEqual(local_dimension(ideal('x\ny', 'xy')), 0)

    def test_affine_dimension(self):
        self.assertEqual(affine_dimension(ideal('x*y', 'xyz')), 2)
        with self.assertRaises(UnitIdealError):
            affine_dimension(ideal('x\nx + 1', 'xy'))

    def test_projective_degree(self):
        self.assertEqual(projective_degree(ideal('x^2 + y*z', 'xyz')), 2)
        self.assertEqual(projective_degree(ideal('x + y', 'xyz')), 1)
        with self.assertRaises(NonHomogeneousError):
            projective_degree(ideal('y - x^2', 'xy'))
        with self.assertRaises(UnitIdealError):
            projective_degree(ideal('x\n1', 'xy'))

    def test_degree_multiplies_on_disjoint_variables(self):
        left = ideal('x^2 - y^2', 'xyzw')
        right = ideal('z^3 - w^3', 'xyzw')
        self.assertEqual(projective_degree(left + right), projective_degree(left) * projective_degree(right))
        self.assertEqual(projective_degree(left + right), 6)

    def test_homogeneity_of_ideal_not_generators(self):
        self.assertTrue(is_homogeneous_ideal(ideal('x + y^2\ny', 'xy')))
        self.assertFalse(is_homogeneous_ideal(ideal('x + y^2', 'xy')))
        with self.assertRaises(UnitIdealError):
            is_homogeneous_ideal(ideal('x\nx - 1', 'xy'))

    def test_hilbert_samuel_values(self):
        self.assertEqual(hilbert_samuel_oracle(PolyIdeal.zero(PolyRing(('x', 'y'))), 4), [1, 3, 6, 10])
        self.assertEqual(hilbert_samuel_oracle(ideal('y - x^2', 'xy'), 4), [1, 2, 3, 4])
        self.assertEqual(hilbert_samuel_oracle(ideal('y^2 - x^2 - x^3', 'xy'), 4), [1, 3, 5, 7])
        with self.assertRaises(AlgebraError):
            hilbert_samuel_oracle(ideal('y', 'xy'), 0)

    def test_fitted_multiplicity(self):
        self.assertEqual(fitted_multiplicity([1, 2, 3, 4], 1), 1)
        self.assertEqual(fitted_multiplicity([1, 3, 5, 7], 1), 2)
        self.assertEqual(fitted_multiplicity([1, 3, 6, 10], 2), 1)
        with self.assertRaises(AlgebraError):
            fitted_multiplicity([1], 2)

    def test_samuel_agrees_with_tangent_cone(self):
        for text, names in [
            ('y^2 - x^2 - x^3', 'xy'),
            ('x*y - z^3', 'xyz'),
            ('x*z - y^2\nx*w - y*z\ny*w - z^2', 'xyzw'),
            ('y - x^2', 'xy'),
        ]:
            I = ideal(text, names)
            self.assertEqual(samuel_multiplicity(I), multiplicity_at_origin(I), text)

    def test_jacobian_rank(self):
        I = ideal('x - y^2\nz', 'xyz')
        self.assertEqual(jacobian_rank(I, [0, 0, 0]), 2)
        self.assertEqual(jacobian_rank(ideal('x*y', 'xy'), [0, 0]), 0)
