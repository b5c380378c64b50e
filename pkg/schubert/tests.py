from fractions import Fraction
from itertools import product
import random
from unittest.mock import patch

from django.test import SimpleTestCase, override_settings

from algebra.exceptions import UnitIdealError
from algebra.groebner import contains
from algebra.local import affine_dimension, samuel_multiplicity
from algebra.polynomials import PolyIdeal, parse_polynomial

from .budget import SweepBudget
from .charts import (
    AffinePoint,
    build_chart,
    c_action,
    cell_of_point,
    expected_dimension,
    in_cell,
    is_cone_over_origin,
    opposite_ideal,
    opposite_rank_holds,
    point_from_matrix,
    rank_table,
    richardson_ideal,
    scale_action,
    schubert_ideal,
    schubert_rank_holds,
    translate_to_origin,
)
from .combinatorics import (
    CosetRep,
    GrassShape,
    RootIndex,
    bruhat_interval,
    bruhat_leq,
    chart_index_set,
    coset_reps,
    length,
    maximal_rep,
    minimal_rep,
    opposite_descents,
    positive_root_indices,
    richardson_triples,
    schubert_descents,
)
from .engine import (
    Instance,
    SweepConfig,
    build_report,
    degree_product_check,
    jacobian_corank,
    mult_opposite_at,
    mult_richardson_fast,
    mult_richardson_oracle,
    mult_schubert_at,
    sample_points,
    verify_theorem,
)
from .exceptions import (
    BruhatOrderError,
    BudgetExceeded,
    MembershipError,
    PointNotInCellError,
    QuadricError,
    SchubertError,
    ShapeMismatchError,
)
from .quadric import (
    QuadricPoint,
    QuadricShape,
    SchubertIndex,
    b_matrix,
    b_matrix_holds,
    jacobian_singular,
    mult_opposite_quadric,
    mult_richardson_quadric_oracle,
    mult_schubert_quadric,
    opposite_member,
    opposite_singular_locus_index,
    q_eval,
    quadric_oracle,
    quadric_points,
    quadric_report,
    random_cell_point,
    richardson_mult_quadric,
    schubert_member,
    singular_locus_index,
    verify_disjoint_sing,
    verify_quadric,
)

G37 = GrassShape(3, 7)
G24 = GrassShape(2, 4)

# a point of the cell C_256 in G(3, 7): x_1_2 = 1, x_1_6 = 1, x_3_6 = -1
SAMPLE_MATRIX = [
    [1, 0, 1],
    [1, 0, 0],
    [0, 0, -1],
    [0, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [0, 0, 0],
]


def rep(text):
    return CosetRep.parse(text)


def quadric_point(*coords):
    return QuadricPoint(tuple(Fraction(c) for c in coords))


class CombinatoricsTests(SimpleTestCase):
    def test_parse_and_render(self):
        self.assertEqual(rep('256').entries, (2, 5, 6))
        self.assertEqual(rep('2,5,10').entries, (2, 5, 10))
        self.assertEqual(str(rep('2,5,10')), '2,5,10')
        self.assertEqual(rep('2,5,6').serialize(7), '256')
        self.assertEqual(rep('2,5,6').serialize(12), '2,5,6')

    def test_round_trip_beyond_nine(self):
        for shape, entries in [(GrassShape(1, 12), (10,)), (GrassShape(3, 12), (2, 5, 10)), (GrassShape(1, 12), (3,))]:
            tau = CosetRep(entries)
            self.assertEqual(CosetRep.parse(tau.serialize(shape.n), shape).check(shape), tau)
        self.assertEqual(CosetRep.parse('10', GrassShape(1, 12)).entries, (10,))
        with self.assertRaises(SchubertError):
            CosetRep.parse('210', GrassShape(2, 12))

    def test_invalid_reps(self):
        with self.assertRaises(SchubertError):
            CosetRep((2, 1))
        with self.assertRaises(SchubertError):
            rep('ab')
        with self.assertRaises(ShapeMismatchError):
            rep('12').check(G37)
        with self.assertRaises(ShapeMismatchError):
            rep('128').check(G37)
        with self.assertRaises(SchubertError):
            GrassShape(3, 3)

    def test_bruhat_order(self):
        self.assertTrue(bruhat_leq(rep('125'), rep('256')))
        self.assertTrue(bruhat_leq(rep('256'), rep('356')))
        self.assertFalse(bruhat_leq(rep('14'), rep('23')))
        self.assertFalse(bruhat_leq(rep('23'), rep('14')))
        with self.assertRaises(ShapeMismatchError):
            bruhat_leq(rep('12'), rep('123'))

    def test_bruhat_is_partial_order(self):
        for shape in (G24, GrassShape(2, 5), GrassShape(3, 6)):
            reps = coset_reps(shape)
            for a in reps:
                self.assertTrue(bruhat_leq(a, a))
                for b in reps:
                    if a != b and bruhat_leq(a, b):
                        self.assertFalse(bruhat_leq(b, a))
                    for c in reps:
                        if bruhat_leq(a, b) and bruhat_leq(b, c):
                            self.assertTrue(bruhat_leq(a, c))

    def test_length_is_cell_dimension(self):
        self.assertEqual(length(minimal_rep(G37)), 0)
        self.assertEqual(length(maximal_rep(G37)), G37.dimension)
        self.assertEqual(length(rep('356')), 8)
        self.assertEqual(length(rep('125')), 2)

    def test_cell_codimension_is_length(self):
        for shape in (G24, GrassShape(2, 5), GrassShape(3, 6), G37):
            for tau in coset_reps(shape):
                indices = chart_index_set(shape, tau)
                positive = positive_root_indices(shape, tau)
                self.assertEqual(len(indices), shape.dimension)
                self.assertTrue(set(positive) <= set(indices))
                self.assertEqual(len(indices) - len(positive), length(tau))

    def test_enumeration(self):
        self.assertEqual(len(coset_reps(G37)), 35)
        self.assertEqual(len(bruhat_interval(G24, rep('12'), rep('34'))), 6)
        self.assertEqual(
            [(str(v), str(t), str(w)) for v, t, w in richardson_triples(GrassShape(1, 2))],
            [('1', '1', '1'), ('1', '1', '2'), ('1', '2', '2'), ('2', '2', '2')],
        )

    def test_index_sets(self):
        self.assertEqual(
            [str(idx) for idx in chart_index_set(G24, rep('13'))],
            ['2.1', '2.3', '4.1', '4.3'],
        )
        self.assertEqual([str(idx) for idx in positive_root_indices(G24, rep('13'))], ['2.1', '4.1', '4.3'])
        self.assertEqual(len(chart_index_set(G37, rep('256'))), G37.dimension)
        self.assertTrue(RootIndex.parse('7.2').positive)
        with self.assertRaises(SchubertError):
            RootIndex.parse('72')

    def test_descents(self):
        self.assertEqual(schubert_descents(G37, rep('356')), [3, 6])
        self.assertEqual(schubert_descents(G37, rep('567')), [])
        self.assertEqual(opposite_descents(G37, rep('125')), [5])
        self.assertEqual(opposite_descents(G37, rep('123')), [])


class ChartTests(SimpleTestCase):
    def setUp(self):
        self.chart = build_chart(G37, rep('256'))

    def test_point_from_matrix(self):
        chart, point = point_from_matrix(G37, SAMPLE_MATRIX)
        self.assertEqual(chart.tau, rep('256'))
        mapping = point.to_json()
        self.assertEqual(mapping['1.2'], '1')
        self.assertEqual(mapping['1.6'], '1')
        self.assertEqual(mapping['3.6'], '-1')
        self.assertEqual(sum(1 for value in mapping.values() if value != '0'), 3)
        self.assertTrue(in_cell(chart, point))

    def test_point_from_scaled_matrix(self):
        # column operations do not change the subspace
        scaled = [[2 * a + b, b, 3 * c] for a, b, c in SAMPLE_MATRIX]
        _, point = point_from_matrix(G37, scaled)
        _, expected = point_from_matrix(G37, SAMPLE_MATRIX)
        self.assertEqual(point, expected)

    def test_cell_of_identity_rows(self):
        self.assertEqual(cell_of_point(G24, [[0, 0], [1, 0], [0, 0], [0, 1]]), rep('24'))
        self.assertEqual(rank_table(G24, [[0, 0], [1, 0], [0, 0], [0, 1]]), [0, 0, 1, 1, 2])
        with self.assertRaises(SchubertError):
            rank_table(G24, [[1, 1], [1, 1], [0, 0], [0, 0]])
        with self.assertRaises(ShapeMismatchError):
            rank_table(G24, [[1, 0], [0, 1]])

    def test_rank_membership(self):
        self.assertTrue(schubert_rank_holds(G37, rep('356'), SAMPLE_MATRIX))
        self.assertFalse(schubert_rank_holds(G37, CosetRep((1, 2, 3)), SAMPLE_MATRIX))
        self.assertTrue(opposite_rank_holds(G37, rep('125'), SAMPLE_MATRIX))
        self.assertFalse(opposite_rank_holds(G37, rep('256'), SAMPLE_MATRIX))

    def test_point_json(self):
        point = AffinePoint.from_json({'1.2': '1/2', '3.2': '-2'})
        self.assertEqual(point.to_json(), {'1.2': '1/2', '3.2': '-2'})
        self.assertFalse(point.is_origin())
        with self.assertRaises(ShapeMismatchError):
            point.values(self.chart)
        with self.assertRaises(ShapeMismatchError):
            AffinePoint.from_values(self.chart, [0, 0])

    def test_layout_and_matrix(self):
        layout = self.chart.layout()
        self.assertEqual(layout[(2, 1)][0], 'one')
        self.assertEqual(layout[(5, 1)][0], 'zero')
        self.assertEqual(layout[(7, 3)], ('var', RootIndex(7, 6)))
        values = self.chart.matrix(self.chart.origin().values(self.chart))
        self.assertEqual(values[4], [0, 1, 0])
        symbolic = self.chart.symbolic_matrix()
        self.assertEqual(str(symbolic[6, 2]), 'x_7_6')
        self.assertEqual(symbolic[4, 1], 1)

    def test_schubert_generators(self):
        ideal = schubert_ideal(self.chart, rep('356'), minimal=True)
        self.assertEqual(ideal.to_text().split('\n'), ['x_4_2', 'x_7_2', 'x_7_5', 'x_7_6'])

    def test_opposite_generators(self):
        ideal = opposite_ideal(self.chart, rep('125'), minimal=True)
        expected = PolyIdeal.from_text(
            'x_1_6*x_3_5 - x_1_5*x_3_6\nx_1_6*x_4_5 - x_1_5*x_4_6\nx_3_6*x_4_5 - x_3_5*x_4_6',
            self.chart.ring,
        ).canonical()
        self.assertEqual(ideal, expected)

    def test_cubic_minor_is_redundant(self):
        quadrics = opposite_ideal(self.chart, rep('125'), minimal=True)
        cubic = parse_polynomial(
            'x_1_2*(x_3_5*x_4_6 - x_3_6*x_4_5) - x_3_2*(x_1_5*x_4_6 - x_1_6*x_4_5)'
            ' + x_4_2*(x_1_5*x_3_6 - x_1_6*x_3_5)',
            self.chart.ring,
        )
        self.assertTrue(contains(quadrics, cubic))

    def test_unit_marker_outside_interval(self):
        self.assertTrue(schubert_ideal(self.chart, rep('156')).is_unit_marker())
        self.assertTrue(opposite_ideal(self.chart, rep('345')).is_unit_marker())
        self.assertTrue(richardson_ideal(self.chart, rep('567'), rep('345')).is_unit_marker())
        with self.assertRaises(UnitIdealError):
            is_cone_over_origin(opposite_ideal(self.chart, rep('345')))

    def test_translation_to_point(self):
        _, point = point_from_matrix(G37, SAMPLE_MATRIX)
        translated = translate_to_origin(opposite_ideal(self.chart, rep('125'), minimal=True), point)
        expected = PolyIdeal.from_text(
            'y_1_5*(y_3_6 - 1) - y_3_5*(y_1_6 + 1)\n'
            'y_1_5*y_4_6 - y_4_5*(y_1_6 + 1)\n'
            'y_3_5*y_4_6 - y_4_5*(y_3_6 - 1)',
            self.chart.y_ring,
        ).canonical()
        self.assertEqual(translated, expected)

    def test_translation_keeps_origin_on_variety(self):
        _, point = point_from_matrix(G37, SAMPLE_MATRIX)
        translated = translate_to_origin(richardson_ideal(self.chart, rep('356'), rep('125')), point)
        self.assertTrue(translated.vanishes_at([0] * self.chart.nvars))

    def test_cones(self):
        _, point = point_from_matrix(G37, SAMPLE_MATRIX)
        self.assertTrue(is_cone_over_origin(schubert_ideal(self.chart, rep('356'))))
        self.assertTrue(is_cone_over_origin(translate_to_origin(schubert_ideal(self.chart, rep('356')), point)))
        self.assertFalse(is_cone_over_origin(translate_to_origin(opposite_ideal(self.chart, rep('125')), point)))

    def test_actions(self):
        _, point = point_from_matrix(G37, SAMPLE_MATRIX)
        self.assertTrue(c_action(1, point, point).is_origin())
        self.assertEqual(c_action(0, point, point), point)
        doubled = scale_action(2, point)
        self.assertEqual(doubled.to_json()['3.6'], '-2')
        # the additive action preserves Y_w on its cell
        ideal = schubert_ideal(self.chart, rep('356'))
        for xi in (Fraction(1, 2), Fraction(-3)):
            moved = c_action(xi, point, point)
            self.assertTrue(ideal.vanishes_at(moved.values(self.chart)))

    def test_action_composes(self):
        _, m = point_from_matrix(G37, SAMPLE_MATRIX)
        x = scale_action(3, m)
        for a, b in [(1, 2), (Fraction(1, 2), Fraction(-3, 4))]:
            self.assertEqual(c_action(a, c_action(b, x, m), m), c_action(a + b, x, m))

    def test_richardson_locus_is_intersection(self):
        rng = random.Random(5)
        w, v = rep('356'), rep('125')
        both = richardson_ideal(self.chart, w, v)
        left, right = schubert_ideal(self.chart, w), opposite_ideal(self.chart, v)
        _, m = point_from_matrix(G37, SAMPLE_MATRIX)
        samples = [m.values(self.chart), [0] * self.chart.nvars]
        samples += [[rng.randint(-1, 1) for _ in range(self.chart.nvars)] for _ in range(40)]
        for values in samples:
            self.assertEqual(both.vanishes_at(values), left.vanishes_at(values) and right.vanishes_at(values))

    def test_expected_dimension(self):
        self.assertEqual(expected_dimension(G37, rep('356'), rep('125')), 6)
        self.assertEqual(expected_dimension(G37), G37.dimension)

    def test_factor_dimensions(self):
        for shape in (G24, GrassShape(2, 5), GrassShape(3, 6)):
            for tau in coset_reps(shape):
                chart = build_chart(shape, tau)
                for other in coset_reps(shape):
                    if bruhat_leq(tau, other):
                        self.assertEqual(affine_dimension(schubert_ideal(chart, other)),
                                         expected_dimension(shape, w=other))
                    if bruhat_leq(other, tau):
                        self.assertEqual(affine_dimension(opposite_ideal(chart, other)),
                                         expected_dimension(shape, v=other))

    def test_ideals_are_cones_over_fixed_point(self):
        shapes = [GrassShape(d, n) for n in range(2, 10) for d in range(1, n) if d * (n - d) <= 8]
        for shape in shapes:
            for tau in coset_reps(shape):
                chart = build_chart(shape, tau)
                for other in coset_reps(shape):
                    if bruhat_leq(tau, other):
                        self.assertTrue(is_cone_over_origin(schubert_ideal(chart, other)), (shape, tau, other))
                    if bruhat_leq(other, tau):
                        self.assertTrue(is_cone_over_origin(opposite_ideal(chart, other)), (shape, tau, other))
        for shape in (G24, GrassShape(2, 5), GrassShape(3, 5)):
            for v, tau, w in richardson_triples(shape):
                self.assertTrue(is_cone_over_origin(richardson_ideal(build_chart(shape, tau), w, v)))

    def test_additive_action_keeps_schubert_locus(self):
        rng = random.Random(11)
        ideal = schubert_ideal(self.chart, rep('356'))
        cut = {RootIndex(4, 2), RootIndex(7, 2), RootIndex(7, 5), RootIndex(7, 6)}
        cell = set(positive_root_indices(G37, rep('256')))

        def random_point(zeros):
            return AffinePoint(tuple(
                (idx, Fraction(0) if idx in zeros else Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                for idx in self.chart.indices
            ))

        for _ in range(100):
            x, m = random_point(cut), random_point(cell)
            xi = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            self.assertTrue(ideal.vanishes_at(x.values(self.chart)))
            self.assertTrue(ideal.vanishes_at(c_action(xi, x, m).values(self.chart)), (xi, str(x), str(m)))

    def test_schubert_ideal_matches_rank_table(self):
        chart = build_chart(G24, rep('12'))
        ideal = schubert_ideal(chart, rep('13'))
        for values in product((-1, 0, 1), repeat=chart.nvars):
            self.assertEqual(ideal.vanishes_at(values),
                             schubert_rank_holds(G24, rep('13'), chart.matrix(values)), values)

    def test_opposite_ideal_matches_rank_table(self):
        chart = build_chart(G24, rep('34'))
        for v in (rep('13'), rep('14'), rep('24')):
            ideal = opposite_ideal(chart, v)
            for values in product((-1, 0, 1), repeat=chart.nvars):
                self.assertEqual(ideal.vanishes_at(values),
                                 opposite_rank_holds(G24, v, chart.matrix(values)), (str(v), values))


class MultiplicityTests(SimpleTestCase):
    def setUp(self):
        self.chart, self.point = point_from_matrix(G37, SAMPLE_MATRIX)
        self.w, self.v, self.tau = rep('356'), rep('125'), rep('256')

    def test_determinantal_quadric(self):
        origin = build_chart(G24, rep('12')).origin()
        self.assertEqual(mult_schubert_at(G24, rep('24'), rep('12'), origin), 2)
        ideal = schubert_ideal(build_chart(G24, rep('12')), rep('24'))
        self.assertEqual(len(ideal.generators), 1)
        self.assertEqual(samuel_multiplicity(ideal), 2)

    def test_sample_instance(self):
        self.assertEqual(mult_schubert_at(G37, self.w, self.tau, self.point), 1)
        self.assertEqual(mult_opposite_at(G37, self.v, self.tau, self.point), 1)
        self.assertEqual(mult_richardson_fast(G37, self.w, self.v, self.tau, self.point), 1)
        self.assertEqual(mult_richardson_oracle(G37, self.w, self.v, self.tau, self.point), 1)

    def test_sample_instance_at_cell_center(self):
        origin = self.chart.origin()
        fast = mult_richardson_fast(G37, self.w, self.v, self.tau, origin)
        self.assertEqual(fast, mult_richardson_oracle(G37, self.w, self.v, self.tau, origin))
        self.assertEqual(fast, 3)

    def test_scaling_keeps_multiplicities(self):
        for xi in (2, Fraction(-1, 3)):
            scaled = scale_action(xi, self.point)
            self.assertEqual(mult_opposite_at(G37, self.v, self.tau, scaled), 1)
            self.assertEqual(mult_richardson_oracle(G37, self.w, self.v, self.tau, scaled), 1)

    def test_degree_product(self):
        self.assertEqual(degree_product_check(G37, self.w, self.v, self.tau), (1, 3, 3, True))

    def test_order_errors(self):
        origin = build_chart(G24, rep('24')).origin()
        with self.assertRaises(BruhatOrderError):
            mult_schubert_at(G24, rep('13'), rep('24'), origin)
        with self.assertRaises(BruhatOrderError):
            degree_product_check(G24, rep('34'), rep('24'), rep('13'))

    def test_point_outside_cell(self):
        chart = build_chart(G24, rep('12'))
        point = AffinePoint.from_values(chart, [1, 0, 0, 0])
        with self.assertRaises(PointNotInCellError):
            mult_schubert_at(G24, rep('24'), rep('12'), point)

    def test_point_off_variety(self):
        # Y^13 on O_13 is x_2_3 = 0
        chart = build_chart(G24, rep('13'))
        point = AffinePoint.from_values(chart, [0, 1, 0, 0])
        with self.assertRaises(MembershipError):
            mult_opposite_at(G24, rep('13'), rep('13'), point)

    def test_jacobian_corank(self):
        chart = build_chart(G24, rep('12'))
        origin = chart.origin()
        self.assertEqual(jacobian_corank(schubert_ideal(chart, rep('24')), origin), 1)
        self.assertEqual(jacobian_corank(schubert_ideal(self.chart, self.w), self.point), 0)

    def test_sample_points(self):
        chart = build_chart(G24, rep('13'))
        ideal = schubert_ideal(chart, rep('24'))
        self.assertEqual(len(sample_points(ideal, chart, (-1, 0, 1))), 3)
        self.assertEqual(len(sample_points(ideal, chart, (-1, 0, 1), cell_only=False)), 27)
        self.assertEqual(len(sample_points(ideal, chart, (-1, 0, 1), cell_only=False, limit=5)), 5)
        self.assertEqual(sample_points(richardson_ideal(chart, rep('12'), rep('34')), chart, (0, 1)), [])


class ReportTests(SimpleTestCase):
    def setUp(self):
        self.chart, self.point = point_from_matrix(G37, SAMPLE_MATRIX)

    def test_sample_report(self):
        report = build_report(Instance(G37, rep('356'), rep('125'), rep('256'), self.point))
        self.assertTrue(report.agreement)
        self.assertEqual((report.mu_w, report.mu_v, report.mu_wv_fast, report.mu_wv_oracle), (1, 1, 1, 1))
        self.assertEqual(report.tau, '256')
        self.assertEqual(report.point['1.6'], '1')
        self.assertTrue(report.cone_w_at_point)
        self.assertFalse(report.cone_v_at_point)
        self.assertTrue(report.cone_at_origin)
        self.assertTrue(report.degree_identity)
        self.assertEqual(report.local_dim, 6)
        self.assertTrue(report.dimension_ok)
        self.assertTrue(report.smooth_wv)
        self.assertTrue(report.smoothness_consistent)
        self.assertIsNone(report.mu_wv_samuel)

    def test_samuel_on_small_charts(self):
        origin = build_chart(G24, rep('12')).origin()
        report = build_report(Instance(G24, rep('24'), rep('12'), rep('12'), origin, samuel=True))
        self.assertEqual(report.mu_wv_samuel, 2)
        self.assertTrue(report.agreement)

    @override_settings(MULTIPLICITY={
        'MAX_VARIABLES': 12,
        'MAX_GRID_VALUES': 5,
        'MAX_INSTANCES': 5000,
        'MAX_POINTS_PER_INSTANCE': 200,
        'SAMUEL_MAX_VARIABLES': 3,
        'DEFAULT_WORKERS': 1,
    })
    def test_samuel_skipped_on_large_charts(self):
        origin = build_chart(G24, rep('12')).origin()
        report = build_report(Instance(G24, rep('24'), rep('12'), rep('12'), origin, samuel=True))
        self.assertIsNone(report.mu_wv_samuel)

    @patch('schubert.engine.mult_opposite_at')
    def test_disagreement_is_logged(self, mock_opposite):
        mock_opposite.return_value = 2
        origin = build_chart(G24, rep('12')).origin()
        with self.assertLogs('schubert.engine', level='ERROR') as logs:
            report = build_report(Instance(G24, rep('24'), rep('12'), rep('12'), origin))
        self.assertFalse(report.agreement)
        self.assertEqual(report.mu_wv_fast, 4)
        self.assertIn('Disagreement', logs.output[0])


    def test_factor_dimension_mismatch_is_flagged(self):
        # on O_13 in G(2, 4): Y_24 is x_4_1 = 0 and Y^13 is x_2_3 = 0
        chart = build_chart(G24, rep('13'))
        i_w = schubert_ideal(chart, rep('24'))

        def shifted(ideal):
            return -1 if ideal == i_w else affine_dimension(ideal)

        instance = Instance(G24, rep('24'), rep('13'), rep('13'), chart.origin())
        self.assertTrue(build_report(instance).dimension_ok)
        with patch('schubert.engine._dimension', side_effect=shifted):
            with self.assertLogs('schubert.engine', level='WARNING') as logs:
                report = build_report(instance)
        self.assertFalse(report.dimension_ok)
        self.assertTrue(report.agreement)
        self.assertIn('unexpected dimension', logs.output[0])


class SweepTests(SimpleTestCase):
    def assertAllChecksHold(self, result):
        self.assertGreater(result.checked, 0)
        self.assertEqual(result.failed, 0)
        for r in result.reports:
            label = (r.d, r.n, r.w, r.v, r.tau, str(r.point))
            self.assertEqual(r.mu_wv_fast, r.mu_wv_oracle, label)
            self.assertEqual(r.mu_wv_fast, r.mu_w * r.mu_v, label)
            self.assertTrue(r.degree_identity, label)
            self.assertEqual(r.deg_zwv, r.deg_zw * r.deg_zv, label)
            self.assertTrue(r.cone_at_origin, label)
            self.assertTrue(r.cone_w_at_point, label)
            self.assertTrue(r.dimension_ok, label)
            self.assertEqual(r.mu_wv_oracle == 1, r.smooth_wv, label)
            self.assertEqual(r.smooth_wv, r.smooth_w and r.smooth_v, label)
            if r.mu_wv_samuel is not None:
                self.assertEqual(r.mu_wv_samuel, r.mu_wv_oracle, label)

    def test_fixed_points(self):
        for shape in (G24, GrassShape(2, 5)):
            result = verify_theorem(shape, SweepConfig(workers=1))
            self.assertEqual(result.checked, len(richardson_triples(shape)))
            self.assertTrue(all(r.point == build_chart(shape, rep(r.tau)).origin().to_json() for r in result.reports))
            self.assertAllChecksHold(result)

    def test_wide_grid(self):
        result = verify_theorem(G24, SweepConfig(grid=(-2, -1, 0, 1, 2), workers=1))
        self.assertFalse(result.truncated)
        self.assertAllChecksHold(result)
        self.assertTrue(any(not r.cone_v_at_point for r in result.reports))

    def test_selected_instances(self):
        selected = [
            (GrassShape(2, 5), '35', '12', '24'),
            (GrassShape(2, 5), '45', '13', '24'),
            (GrassShape(2, 5), '34', '23', '24'),
            (GrassShape(3, 6), '246', '124', '135'),
            (GrassShape(3, 6), '356', '134', '245'),
        ]
        for shape, w, v, tau in selected:
            config = SweepConfig(w=rep(w), v=rep(v), tau=rep(tau), grid=(-2, -1, 0, 1, 2), limit=25, workers=1)
            result = verify_theorem(shape, config)
            self.assertGreater(result.checked, 1, (shape, w, v, tau))
            self.assertAllChecksHold(result)

    def test_samuel_matches_oracle(self):
        result = verify_theorem(G24, SweepConfig(grid=(-1, 0, 1), samuel=True, workers=1))
        self.assertTrue(all(r.mu_wv_samuel is not None for r in result.reports))
        self.assertAllChecksHold(result)

    def test_small_grassmannian(self):
        result = verify_theorem(G24, SweepConfig(grid=(0, 1), workers=1))
        self.assertGreater(result.checked, 20)
        self.assertEqual(result.failed, 0)
        self.assertFalse(result.truncated)
        self.assertEqual(result.summary(), f"checked={result.checked} agreed={result.checked} failed=0")
        keys = [r.sort_key() for r in result.reports]
        self.assertEqual(keys, sorted(keys))

    def test_projective_line_sweep(self):
        result = verify_theorem(GrassShape(1, 3), SweepConfig(grid=(-1, 0, 1), workers=1, samuel=True))
        self.assertEqual(result.failed, 0)
        self.assertTrue(all(r.mu_wv_oracle == 1 for r in result.reports))

    def test_selection(self):
        config = SweepConfig(w=rep('24'), v=rep('12'), tau=rep('12'), workers=1)
        result = verify_theorem(G24, config)
        self.assertEqual(result.checked, 1)
        self.assertEqual(result.reports[0].mu_wv_oracle, 2)

    def test_truncation(self):
        with self.assertLogs('schubert.budget', level='WARNING'):
            result = verify_theorem(G24, SweepConfig(grid=(0, 1), max_instances=3, workers=1))
        self.assertEqual(result.checked, 3)
        self.assertTrue(result.truncated)
        self.assertTrue(result.summary().endswith(' truncated=true'))

    def test_chart_budget(self):
        with self.assertRaises(BudgetExceeded):
            verify_theorem(G24, SweepConfig(max_variables=3, workers=1))

    def test_grid_budget(self):
        with self.assertRaises(BudgetExceeded):
            SweepBudget(max_grid_values=5).check_grid((-2, -1, 0, 1, 2, 3))

    def test_budget_counts(self):
        budget = SweepBudget(max_instances=2)
        self.assertTrue(budget.admit('a'))
        self.assertTrue(budget.admit('b'))
        self.assertFalse(budget.admit('c'))
        self.assertEqual(budget.refused, 1)
        self.assertTrue(budget.truncated)


class QuadricTests(SimpleTestCase):
    def setUp(self):
        self.shape = QuadricShape(2)
        self.big = QuadricShape(3)

    def test_indices(self):
        self.assertEqual(self.shape.size, 5)
        self.assertEqual(self.shape.partner(1), 5)
        self.assertEqual(self.shape.partner(3), 3)
        with self.assertRaises(QuadricError):
            SchubertIndex(2, 3)
        with self.assertRaises(QuadricError):
            SchubertIndex(2, 6)
        with self.assertRaises(QuadricError):
            QuadricShape(0)

    def test_points(self):
        with self.assertRaises(QuadricError):
            quadric_point(0, 0, 0, 0, 0)
        with self.assertRaises(ShapeMismatchError):
            quadric_point(1, 0, 0).check(self.shape)
        x = quadric_point(0, 2, 0, 0, 4)
        self.assertEqual(x.normalized().to_json(), ['0', '1/2', '0', '0', '1'])
        self.assertEqual(x.support(), [2, 5])

    def test_form(self):
        # x_3^2 + 2 (x_1 x_5 + x_2 x_4)
        self.assertEqual(q_eval(self.shape, quadric_point(1, 0, 2, 0, -2)), 0)
        self.assertEqual(q_eval(self.shape, quadric_point(1, 1, 0, 1, 0)), 2)

    def test_membership(self):
        e1 = quadric_point(1, 0, 0, 0, 0)
        self.assertTrue(schubert_member(self.shape, 1, e1))
        self.assertTrue(opposite_member(self.shape, 1, e1))
        self.assertFalse(opposite_member(self.shape, 2, e1))
        with self.assertRaises(MembershipError):
            mult_opposite_quadric(self.shape, 2, e1)

    def test_singular_loci(self):
        self.assertEqual(singular_locus_index(self.shape, 4), SchubertIndex(2, 1))
        self.assertIsNone(singular_locus_index(self.shape, 5))
        self.assertIsNone(singular_locus_index(self.shape, 2))
        self.assertEqual(opposite_singular_locus_index(self.shape, 2), SchubertIndex(2, 5))
        self.assertIsNone(opposite_singular_locus_index(self.shape, 1))
        self.assertIsNone(opposite_singular_locus_index(self.shape, 4))
        self.assertEqual(singular_locus_index(self.big, 5).i, 2)
        self.assertEqual(singular_locus_index(self.big, 6).i, 1)
        self.assertEqual(opposite_singular_locus_index(self.big, 2).i, 7)
        self.assertEqual(opposite_singular_locus_index(self.big, 3).i, 6)

    def test_closed_forms(self):
        e1 = quadric_point(1, 0, 0, 0, 0)
        e2 = quadric_point(0, 1, 0, 0, 0)
        self.assertEqual(mult_schubert_quadric(self.shape, 4, e1), 2)
        self.assertEqual(mult_schubert_quadric(self.shape, 4, e2), 1)
        self.assertEqual(mult_schubert_quadric(self.shape, 5, e1), 1)
        self.assertEqual(mult_schubert_quadric(self.shape, 2, e1), 1)
        e5 = quadric_point(0, 0, 0, 0, 1)
        self.assertEqual(mult_opposite_quadric(self.shape, 2, e5), 2)
        self.assertEqual(mult_opposite_quadric(self.shape, 1, e5), 1)

    def test_tangent_cone_agrees(self):
        e1 = quadric_point(1, 0, 0, 0, 0)
        self.assertEqual(quadric_oracle(self.shape, (1, 4), e1), (2, 2))
        self.assertEqual(mult_richardson_quadric_oracle(self.shape, 4, 1, e1), 2)
        self.assertEqual(richardson_mult_quadric(self.shape, 4, 1, e1), 2)
        self.assertTrue(jacobian_singular(self.shape, (1, 4), e1))
        self.assertFalse(jacobian_singular(self.shape, (1, 5), e1))

    def test_cell_representatives(self):
        rng = random.Random(3)
        for n in (1, 2, 3, 4):
            shape = QuadricShape(n)
            for _ in range(100):
                for i in (k for k in range(1, shape.size + 1) if k != n + 1):
                    x = random_cell_point(shape, i, rng)
                    self.assertEqual(q_eval(shape, x), 0)
                    self.assertTrue(b_matrix_holds(shape, i, x, b_matrix(shape, i, x)))

    def test_b_matrix(self):
        # Q(x) = 2^2 + 2 (3*0 + (-2)*1) = 0
        x = quadric_point(3, -2, 2, 1, 0)
        b = b_matrix(self.shape, 4, x)
        self.assertTrue(b_matrix_holds(self.shape, 4, x, b))
        self.assertEqual(b[1, 4], -3)
        with self.assertRaises(QuadricError):
            b_matrix(self.shape, 4, quadric_point(3, -2, 2, 2, 0))

    def test_singular_loci_disjoint(self):
        for shape in (self.shape, self.big, QuadricShape(4)):
            indices = [k for k in range(1, shape.size + 1) if k != shape.n + 1]
            for i in indices:
                for j in indices:
                    if j <= i:
                        self.assertTrue(verify_disjoint_sing(shape, i, j))
        with self.assertRaises(QuadricError):
            verify_disjoint_sing(self.shape, 2, 4)

    def test_grid_points(self):
        points = quadric_points(self.shape, (1, 5), (-1, 0, 1))
        self.assertTrue(all(q_eval(self.shape, x) == 0 for x in points))
        self.assertEqual(len({x.coords for x in points}), len(points))
        self.assertEqual(len(quadric_points(self.shape, (1, 5), (-1, 0, 1), limit=2)), 2)

    def test_report(self):
        report = quadric_report(self.shape, SchubertIndex(2, 4), SchubertIndex(2, 1), quadric_point(1, 0, 0, 0, 0))
        self.assertTrue(report.agreement)
        self.assertEqual(report.mu_wv_fast, 2)
        self.assertFalse(report.smooth_w)
        self.assertIsNone(report.deg_zw)
        self.assertIsNone(report.cone_at_origin)

    def test_sweep(self):
        for n in (1, 2, 3, 4):
            result = verify_quadric(QuadricShape(n))
            self.assertGreater(result.checked, 0)
            self.assertEqual(result.failed, 0)
            for r in result.reports:
                self.assertLessEqual(r.mu_wv_fast, 2)
                self.assertEqual(r.mu_w == 1, r.smooth_w, (n, r.w, r.point))
                self.assertEqual(r.mu_v == 1, r.smooth_v, (n, r.v, r.point))

    def test_singular_locus_matches_jacobian(self):
        for n in (2, 3, 4):
            shape = QuadricShape(n)
            for index in (k for k in range(1, shape.size + 1) if k != n + 1):
                sing = singular_locus_index(shape, index)
                for x in quadric_points(shape, (1, index), (-1, 0, 1)):
                    expected = sing is not None and schubert_member(shape, sing, x)
                    self.assertEqual(jacobian_singular(shape, (1, index), x), expected, (n, index, str(x)))
                sing = opposite_singular_locus_index(shape, index)
                for x in quadric_points(shape, (index, shape.size), (-1, 0, 1)):
                    expected = sing is not None and opposite_member(shape, sing, x)
                    self.assertEqual(jacobian_singular(shape, (index, shape.size), x), expected, (n, index, str(x)))
