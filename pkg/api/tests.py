from io import StringIO
import json
from pathlib import Path
import tempfile
from unittest.mock import patch

import jsonschema
import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APISimpleTestCase

from schubert.engine import SweepResult, build_report, Instance
from schubert.charts import build_chart
from schubert.combinatorics import CosetRep, GrassShape

from .reports import render_csv, render_json, render_text
from .serializers import RunConfigSerializer

SCHEMA = json.loads((Path(__file__).parent / 'schemas' / 'multiplicity_report.schema.json').read_text())

SAMPLE_MATRIX = [[1, 0, 1], [1, 0, 0], [0, 0, -1], [0, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]


def origin_report():
    shape = GrassShape(2, 4)
    tau = CosetRep.parse('12')
    return build_report(Instance(shape, CosetRep.parse('24'), tau, tau, build_chart(shape, tau).origin()))


class RunConfigSerializerTests(SimpleTestCase):
    def test_matrix_point_sets_tau(self):
        serializer = RunConfigSerializer(data={'d': 3, 'n': 7, 'w': '356', 'v': '125', 'point': SAMPLE_MATRIX})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        config = serializer.validated_data
        self.assertEqual(str(config['tau']), '256')
        self.assertEqual(config['point'].to_json()['3.6'], '-1')
        self.assertEqual(config['format'], 'text')

    def test_matrix_in_other_cell(self):
        serializer = RunConfigSerializer(data={'d': 3, 'n': 7, 'tau': '356', 'point': SAMPLE_MATRIX})
        self.assertFalse(serializer.is_valid())
        self.assertIn('point', serializer.errors)

    def test_chart_coordinates_need_tau(self):
        serializer = RunConfigSerializer(data={'d': 2, 'n': 4, 'point': {'3.1': '0'}})
        self.assertFalse(serializer.is_valid())
        self.assertIn('tau', serializer.errors)

    def test_chart_coordinates(self):
        point = {'3.1': '0', '3.2': '0', '4.1': '0', '4.2': '0'}
        serializer = RunConfigSerializer(data={'d': 2, 'n': 4, 'tau': '12', 'point': point})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertTrue(serializer.validated_data['point'].is_origin())

    def test_rejects_bad_input(self):
        for data in [
            {'n': 4},
            {'d': 2, 'n': 4, 'w': '125'},
            {'d': 2, 'n': 4, 'w': '21'},
            {'d': 2, 'n': 4, 'grid': ['0', '0']},
            {'d': 2, 'n': 4, 'grid': ['1/0']},
            {'d': 2, 'n': 4, 'format': 'xml'},
            {'family': 'quadric', 'n': 2, 'w': '3'},
            {'family': 'quadric', 'n': 2, 'point': ['1', '0', '0']},
        ]:
            serializer = RunConfigSerializer(data=data)
            self.assertFalse(serializer.is_valid(), data)

    def test_single_entry_beyond_nine(self):
        serializer = RunConfigSerializer(data={'d': 1, 'n': 12, 'w': '12', 'tau': '10'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['tau'], CosetRep((10,)))
        self.assertEqual(serializer.validated_data['w'], CosetRep((12,)))
        serializer = RunConfigSerializer(data={'d': 2, 'n': 12, 'w': '5,12', 'tau': '2,10'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['tau'], CosetRep((2, 10)))
        self.assertFalse(RunConfigSerializer(data={'d': 2, 'n': 12, 'tau': '210'}).is_valid())

    def test_quadric_config(self):
        serializer = RunConfigSerializer(data={
            'family': 'quadric', 'n': 2, 'w': '4', 'v': '1', 'point': ['1', '0', '0', '0', '0'],
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['w'].i, 4)


class ReportRenderingTests(SimpleTestCase):
    def setUp(self):
        self.report = origin_report()

    def test_json_matches_schema(self):
        rows = json.loads(render_json([self.report]))
        jsonschema.validate(rows, SCHEMA)
        self.assertEqual(rows[0]['mu_wv_oracle'], 2)
        self.assertEqual(rows[0]['point'], {'3.1': '0', '3.2': '0', '4.1': '0', '4.2': '0'})

    def test_csv_has_one_row_per_report(self):
        frame = pd.read_csv(StringIO(render_csv([self.report, self.report])))
        self.assertEqual(len(frame), 2)
        self.assertEqual(frame.loc[0, 'tau'], 12)
        self.assertEqual(json.loads(frame.loc[0, 'point'])['4.2'], '0')

    def test_text(self):
        text = render_text([self.report])
        self.assertIn('X_24^12 on O_12 in G(2,4)', text)
        self.assertIn('fast=2 oracle=2', text)
        self.assertTrue(text.rstrip().endswith('agree'))
        self.assertEqual(render_text([]), '')

    def test_empty_sweep_summary(self):
        self.assertEqual(SweepResult().summary(), 'checked=0 agreed=0 failed=0')


class EquationsCommandTests(SimpleTestCase):
    def test_text_output(self):
        out = StringIO()
        call_command('equations', d=3, n=7, w='356', v='125', tau='256', stdout=out)
        output = out.getvalue()
        self.assertIn('chart O_256 in G(3,7)', output)
        self.assertIn('X_356: 4 generators', output)
        self.assertIn('X^125: 3 generators', output)
        self.assertIn('x_7_6', output)

    def test_json_output_with_point(self):
        out = StringIO()
        call_command('equations', d=3, n=7, w='356', v='125', point=json.dumps(SAMPLE_MATRIX),
                     format='json', stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data['chart'], 'O_256')
        self.assertEqual(len(data['indices']), 12)
        self.assertEqual(data['systems'][0]['generators'], ['x_4_2', 'x_7_2', 'x_7_5', 'x_7_6'])
        self.assertEqual(data['translated'][0]['generators'], ['y_4_2', 'y_7_2', 'y_7_5', 'y_7_6'])
        self.assertEqual(data['point']['1.2'], '1')

    def test_tau_above_w(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('equations', d=3, n=7, w='256', tau='356', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_tau(self):
        with self.assertRaises(CommandError):
            call_command('equations', d=3, n=7, stdout=StringIO())


class MultCommandTests(SimpleTestCase):
    def test_sample_point(self):
        out = StringIO()
        call_command('mult', d=3, n=7, w='356', v='125', point=json.dumps(SAMPLE_MATRIX),
                     format='json', stdout=out)
        rows = json.loads(out.getvalue())
        jsonschema.validate(rows, SCHEMA)
        self.assertEqual(rows[0]['tau'], '256')
        self.assertEqual((rows[0]['mu_wv_fast'], rows[0]['mu_wv_oracle']), (1, 1))
        self.assertTrue(rows[0]['agreement'])

    def test_fixed_point(self):
        out = StringIO()
        call_command('mult', d=2, n=4, w='24', tau='12', point='fixed', stdout=out)
        self.assertIn('fast=2 oracle=2', out.getvalue())

    def test_point_file_and_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            point_file = Path(tmp) / 'point.json'
            point_file.write_text(json.dumps(SAMPLE_MATRIX))
            target = Path(tmp) / 'reports' / 'mult.json'
            out = StringIO()
            call_command('mult', d=3, n=7, w='356', v='125', point=str(point_file),
                         format='json', out=str(target), stdout=out)
            self.assertEqual(out.getvalue(), '')
            rows = json.loads(target.read_text())
        self.assertEqual(rows[0]['mu_wv_oracle'], 1)

    def test_point_file_without_json_suffix(self):
        with tempfile.TemporaryDirectory() as tmp:
            point_file = Path(tmp) / 'point.txt'
            point_file.write_text(json.dumps(SAMPLE_MATRIX))
            out = StringIO()
            call_command('mult', d=3, n=7, w='356', v='125', point=str(point_file), format='json', stdout=out)
        self.assertEqual(json.loads(out.getvalue())[0]['tau'], '256')

    def test_report_tau_round_trips_beyond_nine(self):
        out = StringIO()
        call_command('mult', d=1, n=12, w='12', tau='10', point='fixed', format='json', stdout=out)
        row = json.loads(out.getvalue())[0]
        shape = GrassShape(1, 12)
        self.assertEqual(CosetRep.parse(row['tau'], shape), CosetRep((10,)))
        self.assertEqual(CosetRep.parse(row['w'], shape), CosetRep((12,)))
        self.assertEqual(row['mu_wv_oracle'], 1)

    @patch('schubert.engine.mult_opposite_at')
    def test_disagreement_exit_code(self, mock_opposite):
        mock_opposite.return_value = 2
        with self.assertRaises(CommandError) as ctx:
            call_command('mult', d=2, n=4, w='24', tau='12', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 1)

    def test_point_off_variety(self):
        point = json.dumps({'2.1': '0', '2.3': '1', '4.1': '0', '4.3': '0'})
        with self.assertRaises(CommandError) as ctx:
            call_command('mult', d=2, n=4, v='13', tau='13', point=point, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_invalid_configuration(self):
        with self.assertRaises(CommandError):
            call_command('mult', d=3, n=7, w='12', stdout=StringIO())

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = Path(tmp) / 'run.json'
            config.write_text(json.dumps({'d': 2, 'n': 4, 'w': '24', 'tau': '12', 'format': 'text'}))
            out = StringIO()
            # flags override the file
            call_command('mult', config=str(config), format='json', stdout=out)
        self.assertEqual(json.loads(out.getvalue())[0]['mu_w'], 2)


class SweepCommandTests(SimpleTestCase):
    def test_small_grassmannian(self):
        out = StringIO()
        call_command('sweep', d=2, n=4, grid='0,1', workers=1, stdout=out)
        lines = out.getvalue().strip().splitlines()
        summary = lines[-1]
        self.assertTrue(summary.startswith('checked='))
        self.assertTrue(summary.endswith('failed=0'))
        self.assertEqual(len(lines) - 1, int(summary.split()[0].split('=')[1]))

    def test_csv_to_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / 'sweep.csv'
            out = StringIO()
            call_command('sweep', d=1, n=3, grid='-1,0,1', workers=1, format='csv', out=str(target), stdout=out)
            frame = pd.read_csv(target)
        checked = int(out.getvalue().split()[0].split('=')[1])
        self.assertEqual(len(frame), checked)
        self.assertTrue(frame['agreement'].all())

    def test_truncation(self):
        out = StringIO()
        call_command('sweep', d=2, n=4, grid='0,1', workers=1, max_instances=3, stdout=out)
        self.assertIn('checked=3 agreed=3 failed=0 truncated=true', out.getvalue())

    def test_budget_exceeded(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('sweep', d=2, n=4, max_variables=3, workers=1, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_grid_too_large(self):
        with self.assertRaises(CommandError):
            call_command('sweep', d=2, n=4, grid='-3,-2,-1,0,1,2', workers=1, stdout=StringIO())


class QuadricCommandTests(SimpleTestCase):
    def test_singular_loci_and_sweep(self):
        out = StringIO()
        call_command('quadric', n=2, singular_loci=True, stdout=out)
        output = out.getvalue()
        self.assertIn('i=4 sing X_i=1 sing X^i=-', output)
        self.assertIn('i=2 sing X_i=- sing X^i=5', output)
        self.assertIn('failed=0', output.strip().splitlines()[-1])

    def test_single_point(self):
        out = StringIO()
        call_command('quadric', n=2, w='4', v='1', point='["1", "0", "0", "0", "0"]', format='json', stdout=out)
        rows = json.loads(out.getvalue())
        jsonschema.validate(rows, SCHEMA)
        self.assertEqual(rows[0]['family'], 'quadric')
        self.assertEqual(rows[0]['mu_wv_fast'], 2)
        self.assertIsNone(rows[0]['tau'])

    def test_point_needs_indices(self):
        with self.assertRaises(CommandError):
            call_command('quadric', n=2, point='["1", "0", "0", "0", "0"]', stdout=StringIO())


class EquationsAPITests(APISimpleTestCase):
    def test_equations(self):
        url = reverse('api:equations')
        response = self.client.post(url, {'d': 3, 'n': 7, 'w': '356', 'v': '125', 'tau': '256'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['systems'][1]['variety'], 'X^125')
        self.assertEqual(len(response.data['systems'][1]['generators']), 3)

    def test_missing_tau(self):
        response = self.client.post(reverse('api:equations'), {'d': 3, 'n': 7}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('tau', response.data['error'])

    def test_invalid_shape(self):
        response = self.client.post(reverse('api:equations'), {'d': 7, 'n': 7, 'tau': '1'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class MultiplicityAPITests(APISimpleTestCase):
    def test_sample_point(self):
        response = self.client.post(reverse('api:mult'), {
            'd': 3, 'n': 7, 'w': '356', 'v': '125', 'point': SAMPLE_MATRIX,
        }, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        jsonschema.validate([response.data], SCHEMA)
        self.assertTrue(response.data['agreement'])
        self.assertFalse(response.data['cone_v_at_point'])

    def test_order_error(self):
        response = self.client.post(reverse('api:mult'), {'d': 2, 'n': 4, 'w': '13', 'tau': '24'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('Bruhat', response.data['error'])

    def test_get_not_allowed(self):
        response = self.client.get(reverse('api:mult'))
        self.assertEqual(response.status_code, status.HTTP_405_METHOD_NOT_ALLOWED)


class QuadricAPITests(APISimpleTestCase):
    def test_point(self):
        response = self.client.post(reverse('api:quadric'), {
            'n': 2, 'w': '4', 'v': '1', 'point': ['0', '1', '0', '0', '0'],
        }, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['mu_w'], 1)
        self.assertTrue(response.data['agreement'])

    def test_sweep(self):
        response = self.client.post(reverse('api:quadric'), {'n': 1}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data['summary'].endswith('failed=0'))
        jsonschema.validate(response.data['reports'], SCHEMA)

    def test_index_n_plus_one(self):
        response = self.client.post(reverse('api:quadric'), {'n': 2, 'w': '3'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
